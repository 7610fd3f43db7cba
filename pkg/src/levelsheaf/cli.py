"""Command-line entry point.

Exit codes: 0 success, 1 a check reported failures, 2 malformed input,
3 precondition violated, 4 oracle budget exceeded.  Every error prints a
single ``levelsheaf: error=<code> reason=<text>`` line on stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Callable, Sequence

from .barcodes import barcode_convolve, bottleneck_distance
from .errors import MalformedInput, OracleBudgetExceeded, PreconditionError
from .exact import fmt, rational
from .functors import psi_barcode, xi_system
from .levelset import default_grid, levelset_mv, pushforward_barcode, verify_pointwise_dims
from .mvsystems import mv_interleaving_distance
from .serialize import (
    barcode_from_json,
    barcode_to_json,
    mesh_from_json,
    mv_from_json,
    mv_to_json,
    report_to_json,
)

EXIT_CHECK_FAILED = 1
EXIT_MALFORMED = 2
EXIT_PRECONDITION = 3
EXIT_BUDGET = 4

SEED_ENV = "LEVELSHEAF_SEED"


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from exc


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_levelset(args: argparse.Namespace) -> int:
    f = mesh_from_json(_read(args.mesh))
    barcode = pushforward_barcode(f)
    _write(args.out, barcode_to_json(barcode))
    system = None
    if args.mv or args.verify_grid:
        system = levelset_mv(f)
    if args.mv:
        _write(args.mv, mv_to_json(system))
    if args.verify_grid:
        grid = default_grid(f, args.verify_grid)
        mismatches = verify_pointwise_dims(f, system, grid)
        if args.report:
            _write(args.report, report_to_json(grid, mismatches))
        print(f"verify points={len(grid)} mismatches={len(mismatches)}")
        if mismatches:
            return EXIT_CHECK_FAILED
    return 0


def cmd_distance(args: argparse.Namespace) -> int:
    if args.kind == "mv":
        d = mv_interleaving_distance(mv_from_json(_read(args.a)), mv_from_json(_read(args.b)))
    else:
        d = bottleneck_distance(barcode_from_json(_read(args.a)), barcode_from_json(_read(args.b)))
    print(fmt(d))
    return 0


def cmd_interleaved(args: argparse.Namespace) -> int:
    from .oracle import mv_eps_interleaved_oracle

    eps = _eps(args.eps)
    found = mv_eps_interleaved_oracle(mv_from_json(_read(args.a)), mv_from_json(_read(args.b)), eps)
    print("true" if found else "false")
    return 0


def cmd_xi(args: argparse.Namespace) -> int:
    _write(args.out, barcode_to_json(xi_system(mv_from_json(_read(args.system)))))
    return 0


def cmd_psi(args: argparse.Namespace) -> int:
    _write(args.out, mv_to_json(psi_barcode(barcode_from_json(_read(args.barcode)))))
    return 0


def _eps(text: str):
    try:
        return rational(text)
    except (ValueError, TypeError) as exc:
        raise MalformedInput(f"--eps: {exc}") from exc


def cmd_convolve(args: argparse.Namespace) -> int:
    eps = _eps(args.eps)
    _write(args.out, barcode_to_json(barcode_convolve(barcode_from_json(_read(args.barcode)), eps)))
    return 0


def cmd_plot(args: argparse.Namespace) -> int:
    from .plotting import save_barcode_svg

    save_barcode_svg(barcode_from_json(_read(args.barcode)), args.svg, args.title)
    return 0


def cmd_selftest(args: argparse.Namespace) -> int:
    from .selftest import SUITES, run_selftest

    seed = args.seed
    if seed is None:
        seed = int(os.environ.get(SEED_ENV, "0"))
    if not 0 <= seed < 2**64:
        raise PreconditionError(f"seed must be an unsigned 64-bit integer, got {seed}")
    names = args.suite or list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise PreconditionError(f"unknown suite {unknown[0]!r}")
    results = run_selftest(seed, args.cases, names)
    for r in results:
        print(r.line())
        for bad in r.failures[:3]:
            print("  counterexample", *bad)
    failed = sum(not r.passed for r in results)
    print(f"selftest seed={seed} suites={len(results)} failed={failed}")
    return EXIT_CHECK_FAILED if failed else 0


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # one-line diagnostics for usage errors too
        self.print_usage(sys.stderr)
        _fail("usage", message, EXIT_MALFORMED)


def _fail(code: str, reason: str, status: int) -> None:
    reason = " ".join(str(reason).split())
    print(f"levelsheaf: error={code} reason={reason}", file=sys.stderr)
    raise SystemExit(status)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="levelsheaf", description="Level-set barcodes, block systems and their distances.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("levelset", help="barcode (and block system) of a PL function on a mesh")
    s.add_argument("--mesh", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--mv", help="also write the block system here")
    s.add_argument("--verify-grid", type=int, metavar="N", help="check pointwise dimensions on N sample levels")
    s.add_argument("--report", help="write the verification report here")
    s.set_defaults(run=cmd_levelset)

    s = sub.add_parser("distance", help="bottleneck or interleaving distance, exact")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--kind", choices=("barcode", "mv"), default="barcode")
    s.set_defaults(run=cmd_distance)

    s = sub.add_parser("interleaved", help="exhaustive search for an eps-interleaving of two small block systems")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--eps", required=True)
    s.set_defaults(run=cmd_interleaved)

    s = sub.add_parser("xi", help="block system to barcode")
    s.add_argument("system")
    s.add_argument("--out", required=True)
    s.set_defaults(run=cmd_xi)

    s = sub.add_parser("psi", help="barcode to block system")
    s.add_argument("barcode")
    s.add_argument("--out", required=True)
    s.set_defaults(run=cmd_psi)

    s = sub.add_parser("convolve", help="convolve a barcode with the eps kernel")
    s.add_argument("barcode")
    s.add_argument("--eps", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(run=cmd_convolve)

    s = sub.add_parser("plot", help="render a barcode as SVG")
    s.add_argument("barcode")
    s.add_argument("--svg", required=True)
    s.add_argument("--title")
    s.set_defaults(run=cmd_plot)

    s = sub.add_parser("selftest", help="run the randomized invariant suites")
    s.add_argument("--seed", type=int)
    s.add_argument("--cases", type=int, default=50)
    s.add_argument("--suite", action="append", help="limit to this suite (repeatable)")
    s.set_defaults(run=cmd_selftest)
    return p


_HANDLERS: Sequence[tuple[type, str, int]] = (
    (MalformedInput, "malformed-input", EXIT_MALFORMED),
    (PreconditionError, "precondition", EXIT_PRECONDITION),
    (OracleBudgetExceeded, "budget-exceeded", EXIT_BUDGET),
)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    run: Callable[[argparse.Namespace], int] = args.run
    try:
        return run(args)
    except tuple(h[0] for h in _HANDLERS) as exc:
        for kind, code, status in _HANDLERS:
            if isinstance(exc, kind):
                _fail(code, str(exc), status)
        raise  # pragma: no cover
    except OSError as exc:
        _fail("io", f"{exc.filename}: {exc.strerror}", EXIT_PRECONDITION)
    return 0  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
