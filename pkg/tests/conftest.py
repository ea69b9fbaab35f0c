import pytest

from meanext import (Exp, Heronian2, Log, MeanSpec, MidRange, NonSymQuad4, PairwiseSqrtAvg, Power,
                     QuasiArithmetic, SqrtPairAvg, WeightedTwo)

QA_GENERATORS = [Power(1.0), Log(), Power(-1.0), Power(2.0), Exp(1.0)]


def catalog():
    means = []
    for gen in QA_GENERATORS:
        for arity in (2, 3, 4):
            means.append(MeanSpec(QuasiArithmetic(gen), arity))
    means += [MeanSpec(MidRange(), k) for k in (2, 3, 5)]
    means += [MeanSpec(SqrtPairAvg(), k) for k in (3, 4)]
    means += [MeanSpec(PairwiseSqrtAvg(), k) for k in (3, 4)]
    means += [MeanSpec(NonSymQuad4(), 4), MeanSpec(WeightedTwo(1 / 3), 2), MeanSpec(Heronian2(), 2)]
    return means


def mean_id(spec):
    return spec.family.key + "-" + str(spec.arity) + (
        "-" + str(spec.family.gen.to_json()["kind"]) + str(spec.family.gen.to_json().get("p", ""))
        if isinstance(spec.family, QuasiArithmetic) else "")


# --------------------------------------------------------------------------
# acceptance reporting: one line per criterion in the terminal summary
# --------------------------------------------------------------------------

_ACCEPTANCE: dict[str, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(id, text): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = getattr(report, "_acceptance", None)
    if marker is None:
        return
    cid, text = marker
    prev = _ACCEPTANCE.get(cid, (text, True))[1]
    _ACCEPTANCE[cid] = (text, prev and report.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        report._acceptance = marker.args


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_ACCEPTANCE, key=lambda c: int(c.lstrip("AC"))):
        text, ok = _ACCEPTANCE[cid]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {cid:<5} {text}")
