"""Command-line entry point: ``doublecover <command> ...``.

Exit codes: 0 success, 1 failed check (certificate or battery), 2 usage,
otherwise the ``exit_code`` of the raised error class.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import documents
from ._backend import BACKEND
from .arrangements import pipeline
from .battery import run_battery, trial_to_json
from .chain import EquivariantComplex, IntComplex, double_cover_complex, homology, specialize, unit_reduce
from .covers import oracle_report, verify_theorem
from .errors import DoubleCoverError, NotMinimal, ParseError
from .exact_linalg import render_group, snf


class _Out:
    def __init__(self, path):
        self.path = path
        self.chunks = []

    def write(self, text: str):
        self.chunks.append(text if text.endswith("\n") else text + "\n")

    def flush(self):
        data = "".join(self.chunks)
        if self.path:
            Path(self.path).write_text(data, encoding="utf-8", newline="\n")
        else:
            sys.stdout.write(data)
            sys.stdout.flush()


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _profile_lines(label, prof):
    yield f"{label}:"
    for i, g in enumerate(prof):
        yield f"  H_{i} = {render_group(g)}"


def cmd_snf(args, out) -> int:
    a = documents.parse_int_matrix(_read(args.input))
    sf = snf(a)
    ok = sf.check(a)
    if args.json:
        out.write(documents.dump_json({
            "diag": list(sf.diag), "left": sf.left.tolist(), "right": sf.right.tolist(),
            "certificate_ok": ok,
        }))
    else:
        out.write(" ".join(str(d) for d in sf.diag))
        out.write(f"certificate: {'ok' if ok else 'FAILED'}")
    return 0 if ok else 1


def cmd_homology(args, out) -> int:
    c = documents.load_complex(_read(args.input))
    if isinstance(c, IntComplex):
        profiles = {"homology": homology(c)}
    else:
        profiles = {
            "t=+1": homology(specialize(c, 1)),
            "t=-1": homology(specialize(c, -1)),
            "doubled": homology(double_cover_complex(c)),
        }
    if args.json:
        out.write(documents.dump_json({k: p.to_json() for k, p in profiles.items()}))
    else:
        for k, p in profiles.items():
            for line in _profile_lines(k, p):
                out.write(line)
    return 0


def _emit_report(rep, args, out):
    if args.json:
        out.write(documents.dump_json(rep.to_json()))
    else:
        out.write(rep.render())


def _require_laurent(c):
    if not isinstance(c, EquivariantComplex):
        raise ParseError("expected a 'laurent' complex document")
    return c


def cmd_cover(args, out) -> int:
    c = _require_laurent(documents.load_complex(_read(args.input)))
    try:
        rep = verify_theorem(c)
    except NotMinimal:
        _emit_report(oracle_report(c), args, out)
        raise
    _emit_report(rep, args, out)
    return 0


def cmd_arrangement(args, out) -> int:
    arr, omega = documents.load_arrangement(_read(args.input))
    rep = pipeline(arr, omega)
    if args.json:
        out.write(documents.dump_json({
            "arrangement": documents.arrangement_to_json(arr, omega), **rep.to_json(),
        }))
    else:
        out.write(rep.render())
        b = rep.extra["combinatorial_betti"]
        s = rep.extra["salvetti_betti"]
        out.write(f"betti check: combinatorial {tuple(b)} salvetti {tuple(s)} "
                  f"{'agree' if b == s else 'DISAGREE'}")
    return 0


def cmd_reduce(args, out) -> int:
    c = _require_laurent(documents.load_complex(_read(args.input)))
    out.write(documents.dump_json(documents.complex_to_json(unit_reduce(c))))
    return 0


def cmd_verify(args, out) -> int:
    summary, results = run_battery(
        args.seed, args.trials, args.max_degree, args.max_rank, args.coeff_bound, args.workers
    )
    if args.json:
        out.write(documents.dump_json({
            "seed": args.seed,
            "trials": args.trials,
            "passed": summary.passed,
            "results": [trial_to_json(r) for r in results],
        }))
    else:
        for line in summary.lines():
            out.write(line)
        for r in summary.failures:
            out.write(f"FAILED trial {r.index} seed {r.seed}: {trial_to_json(r)}")
    return 0 if summary.ok else 1


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--output", metavar="PATH", help="write output to PATH instead of stdout")

    parser = argparse.ArgumentParser(
        prog="doublecover",
        description="Integral homology of double covers and sign local systems.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 ({BACKEND} kernel)")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func, helptext in (
        ("snf", cmd_snf, "Smith normal form of an integer matrix file"),
        ("homology", cmd_homology, "homology of a complex document"),
        ("cover", cmd_cover, "double cover pipeline on a laurent complex document"),
        ("arrangement", cmd_arrangement, "pipeline on a line arrangement document"),
        ("reduce", cmd_reduce, "unit-pivot reduction of a laurent complex document"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("input", metavar="PATH")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", parents=[common], help="seeded random verification battery")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=_positive, default=200)
    p.add_argument("--max-degree", type=_positive, default=4)
    p.add_argument("--max-rank", type=_positive, default=6)
    p.add_argument("--coeff-bound", type=_positive, default=5)
    p.add_argument("--workers", type=_positive, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = _Out(args.output)
    try:
        code = args.func(args, out)
    except DoubleCoverError as exc:
        out.flush()
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
