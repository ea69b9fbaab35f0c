"""Command-line front end.

Every subcommand prints one JSON object on stdout.  Exit codes: 0 success,
1 validation or usage error, 2 non-convergence, 3 repro failure.

Mean grammar::

    qa:power:<p>[:<arity>]  qa:log[:<arity>]  qa:exp:<t>[:<arity>]
    midrange:<arity>  sqrtpair:<arity>  pairwisesqrt:<arity>
    nonsymquad4  weighted2:<w>  heronian2

System forms: ``auto:<n>:<m>`` (recursive construction), ``two:<m>``,
``shrink:<m>:<n>``, or an explicit ``--tuples "1,2;1,3;2,4;3,4"`` /
``--system-file`` holding ``{"n":..,"m":..,"tuples":[..]}``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, Sequence

import numpy as np

from .errors import MeanError, NonConvergence
from .index_system import (IndexSystem, check_admissible, construct_admissible,
                           enumerate_admissible, shrink_system, unique_two_system)
from .iteration import DEFAULT_MAX_ITER, DEFAULT_TOL, compound, extend, iterate, shrink_general
from .markov import check_chain, transition_matrix, uniform_limit_error
from .means import (Exp, Heronian2, Log, MeanSpec, MidRange, NonSymQuad4, PairwiseSqrtAvg,
                    Power, QuasiArithmetic, SqrtPairAvg, WeightedTwo)
from .repro import repro_suite
from .shrink_ops import DEFAULT_GRID, shrink_s1, shrink_s2, shrink_s3
from .symmetrize import symmetrize

EXIT_OK, EXIT_INVALID, EXIT_NONCONVERGENCE, EXIT_REPRO = 0, 1, 2, 3


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------


def _fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return "null"
    s = format(x, ".17g")
    return s if any(c in s for c in ".e") else s + ".0"


def dumps(obj: Any) -> str:
    """JSON text with every float printed to 17 significant digits."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if hasattr(obj, "to_json"):
        return dumps(obj.to_json())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# --------------------------------------------------------------------------
# parsing helpers
# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def parse_mean(text: str, arity: int | None = None) -> MeanSpec:
    """Parse the command-line mean grammar; ``arity`` fills in a missing arity."""
    parts = text.strip().lower().split(":")
    head, rest = parts[0], parts[1:]

    def need_arity(explicit: list[str]) -> int:
        if explicit:
            return int(explicit[0])
        if arity is None:
            raise MeanError(f"mean {text!r} needs an arity")
        return arity

    try:
        if head == "qa":
            kind, *args = rest
            if kind == "power":
                return MeanSpec(QuasiArithmetic(Power(float(args[0]))), need_arity(args[1:]))
            if kind == "log":
                return MeanSpec(QuasiArithmetic(Log()), need_arity(args))
            if kind == "exp":
                return MeanSpec(QuasiArithmetic(Exp(float(args[0]))), need_arity(args[1:]))
            raise MeanError(f"unknown generator {kind!r}")
        simple = {"midrange": MidRange, "sqrtpair": SqrtPairAvg, "pairwisesqrt": PairwiseSqrtAvg}
        if head in simple:
            return MeanSpec(simple[head](), need_arity(rest))
        if head == "nonsymquad4":
            return MeanSpec(NonSymQuad4(), 4)
        if head == "heronian2":
            return MeanSpec(Heronian2(), 2)
        if head == "weighted2":
            return MeanSpec(WeightedTwo(float(rest[0])), 2)
    except (IndexError, ValueError) as exc:
        if isinstance(exc, MeanError):
            raise
        raise MeanError(f"cannot parse mean {text!r}: {exc}") from None
    raise MeanError(f"unknown mean family in {text!r}")


def parse_values(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise MeanError(f"cannot parse values {text!r}") from None


def parse_system(text: str) -> IndexSystem:
    parts = text.split(":")
    try:
        if parts[0] == "auto":
            return construct_admissible(int(parts[1]), int(parts[2]))
        if parts[0] == "two":
            return unique_two_system(int(parts[1]))
        if parts[0] == "shrink":
            return shrink_system(int(parts[1]), int(parts[2]))
    except (IndexError, ValueError) as exc:
        if isinstance(exc, MeanError):
            raise
        raise MeanError(f"cannot parse system {text!r}") from None
    raise MeanError(f"unknown system form {text!r}")


def parse_tuples(text: str) -> IndexSystem:
    try:
        rows = [[int(j) for j in row.split(",")] for row in text.split(";") if row.strip()]
    except ValueError:
        raise MeanError(f"cannot parse tuples {text!r}") from None
    return IndexSystem.from_tuples(rows)


def _load_json(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MeanError(f"cannot read {path}: {exc}") from None


def _system(args) -> IndexSystem:
    if getattr(args, "system_file", None):
        return IndexSystem.from_json(_load_json(args.system_file))
    if getattr(args, "tuples", None):
        return parse_tuples(args.tuples)
    if getattr(args, "system", None):
        return parse_system(args.system)
    raise MeanError("one of --system, --tuples or --system-file is required")


def _mean(args, arity: int | None = None) -> MeanSpec:
    if getattr(args, "spec_file", None):
        return MeanSpec.from_json(_load_json(args.spec_file))
    if not args.mean:
        raise MeanError("--mean or --spec-file is required")
    return parse_mean(args.mean, arity)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def _report_exit(report) -> int:
    return EXIT_OK if report.converged else EXIT_NONCONVERGENCE


def cmd_check_system(args, out):
    system = _system(args)
    verdict = check_admissible(system)
    out({"system": system.to_json(), "admissible": verdict.admissible,
         "failed_properties": sorted(verdict.failed),
         "witnesses": {str(k): v for k, v in verdict.failed.items()}})


def cmd_construct(args, out):
    out(construct_admissible(args.n, args.m).to_json())


def cmd_enumerate(args, out):
    systems = enumerate_admissible(args.n, args.m, args.limit)
    out({"n": args.n, "m": args.m, "count": len(systems), "systems": [s.tuples for s in systems]})


def cmd_iterate(args, out):
    system = _system(args)
    state = iterate(_mean(args, system.n), system, parse_values(args.values), args.k,
                    False if args.no_sort else None)
    out(state.to_json())


def cmd_extend(args, out):
    system = _system(args)
    report = extend(_mean(args, system.n), system, parse_values(args.values), args.tol,
                    args.max_iter, trace=args.trace)
    out(report.to_json())
    return _report_exit(report)


def cmd_shrink(args, out):
    mean = _mean(args, args.m)
    report = shrink_general(mean, args.n, parse_values(args.values), args.tol, args.max_iter,
                            trace=args.trace)
    out(report.to_json())
    return _report_exit(report)


def cmd_s1(args, out):
    r = shrink_s1(_mean(args, args.arity), args.a, args.b, args.tol, args.grid)
    out({"x": r.x, "residual": r.residual, "bracket": list(r.bracket)})


def cmd_s2(args, out):
    out({"value": shrink_s2(_mean(args, args.arity), args.a, args.b)})


def cmd_s3(args, out):
    values = parse_values(args.values)
    out({"value": shrink_s3(_mean(args, 2 * len(values)), values)})


def cmd_compound(args, out):
    system = _system(args)
    means = [parse_mean(t, system.n) for t in args.means.split(";") if t.strip()]
    report = compound(means, system, parse_values(args.values), args.tol, args.max_iter,
                      seed=args.seed, trace=args.trace)
    out(report.to_json())
    return _report_exit(report)


def cmd_symmetrize(args, out):
    out(symmetrize(_mean(args, 2), args.a, args.b, args.tol, args.max_iter).to_json())


def cmd_markov(args, out):
    M = transition_matrix(_system(args))
    out({"matrix": M.tolist(), "verdict": check_chain(M).to_json(), "k": args.k,
         "uniform_limit_error": uniform_limit_error(M, args.k)})


def cmd_repro(args, out):
    cases = repro_suite()
    failed = [c.id for c in cases if not c.passed]
    out({"passed": len(cases) - len(failed), "failed": failed, "cases": [c.to_json() for c in cases]})
    return EXIT_REPRO if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="meanext", description="Extend and shrink means by coupled iteration.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_system(sp):
        sp.add_argument("--system", help="auto:<n>:<m> | two:<m> | shrink:<m>:<n>")
        sp.add_argument("--tuples", help='explicit tuples, e.g. "1,2;1,3;2,4;3,4"')
        sp.add_argument("--system-file")

    def with_mean(sp):
        sp.add_argument("--mean")
        sp.add_argument("--spec-file")

    def with_run(sp):
        sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
        sp.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
        sp.add_argument("--trace", action="store_true")

    sp = sub.add_parser("check-system")
    with_system(sp)
    sp.set_defaults(func=cmd_check_system)

    sp = sub.add_parser("construct")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("enumerate")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--limit", type=int)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("iterate")
    with_mean(sp)
    with_system(sp)
    sp.add_argument("--values", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--no-sort", action="store_true")
    sp.set_defaults(func=cmd_iterate)

    sp = sub.add_parser("extend")
    with_mean(sp)
    with_system(sp)
    with_run(sp)
    sp.add_argument("--values", required=True)
    sp.set_defaults(func=cmd_extend)

    sp = sub.add_parser("shrink")
    with_mean(sp)
    with_run(sp)
    sp.add_argument("--m", type=int, help="arity of a quasi-arithmetic mean")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--values", required=True)
    sp.set_defaults(func=cmd_shrink)

    for name, func in (("s1", cmd_s1), ("s2", cmd_s2)):
        sp = sub.add_parser(name)
        with_mean(sp)
        sp.add_argument("--arity", type=int)
        sp.add_argument("--a", type=float, required=True)
        sp.add_argument("--b", type=float, required=True)
        if name == "s1":
            sp.add_argument("--tol", type=float, default=1e-12)
            sp.add_argument("--grid", type=int, default=DEFAULT_GRID)
        sp.set_defaults(func=func)

    sp = sub.add_parser("s3")
    with_mean(sp)
    sp.add_argument("--values", required=True)
    sp.set_defaults(func=cmd_s3)

    sp = sub.add_parser("compound")
    sp.add_argument("--means", required=True, help='";"-separated list, one mean per tuple')
    with_system(sp)
    with_run(sp)
    sp.add_argument("--values", required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_compound)

    sp = sub.add_parser("symmetrize")
    with_mean(sp)
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--b", type=float, required=True)
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
    sp.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    sp.set_defaults(func=cmd_symmetrize)

    sp = sub.add_parser("markov")
    with_system(sp)
    sp.add_argument("--k", type=int, default=1024)
    sp.set_defaults(func=cmd_markov)

    sp = sub.add_parser("repro")
    sp.set_defaults(func=cmd_repro)
    return p


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    def out(obj):
        stdout.write(dumps(obj) + "\n")

    try:
        code = args.func(args, out)
    except NonConvergence as exc:
        stderr.write(f"meanext: {exc}\n")
        if exc.report is not None:
            out(exc.report.to_json())
        return EXIT_NONCONVERGENCE
    except (MeanError, ValueError) as exc:
        stderr.write(f"meanext: error: {exc}\n")
        return EXIT_INVALID
    return EXIT_OK if code is None else code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
