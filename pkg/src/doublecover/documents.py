"""JSON/text documents read and written by the command line."""

from __future__ import annotations

import json
from fractions import Fraction

from .chain import EquivariantComplex, IntComplex
from .errors import ParseError
from .exact_linalg import IntMatrix
from .laurent import LaurentMatrix, LaurentPoly


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None


def _int(v, where: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"{where}: expected an integer, got {v!r}")
    return v


def parse_int_matrix(text: str) -> IntMatrix:
    """A JSON array of rows, or whitespace-separated integers one row per line."""
    if text.lstrip().startswith("["):
        data = _load_json(text)
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise ParseError("expected a list of rows")
        if not data:
            return IntMatrix(0, 0, [])
        width = len(data[0])
        for i, row in enumerate(data):
            if len(row) != width:
                raise ParseError(f"row {i} has {len(row)} entries, expected {width}")
        return IntMatrix(len(data), width, [[_int(v, f"row {i}") for v in r] for i, r in enumerate(data)])
    rows = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"non-integer entry in {line!r}", lineno) from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(f"row has {len(row)} entries, expected {width}", lineno)
        rows.append(row)
    return IntMatrix(len(rows), width or 0, rows)


def _poly(obj, where: str) -> LaurentPoly:
    if isinstance(obj, int) and not isinstance(obj, bool):
        return LaurentPoly.const(obj)
    if not isinstance(obj, list):
        raise ParseError(f"{where}: expected a list of [exponent, coefficient] pairs")
    pairs = []
    for p in obj:
        if not (isinstance(p, list) and len(p) == 2):
            raise ParseError(f"{where}: bad term {p!r}")
        pairs.append((_int(p[0], where), _int(p[1], where)))
    exps = [e for e, _ in pairs]
    if len(set(exps)) != len(exps):
        raise ParseError(f"{where}: repeated exponent")
    return LaurentPoly(pairs)


def complex_from_json(obj):
    if not isinstance(obj, dict):
        raise ParseError("complex document must be a JSON object")
    ring = obj.get("ring")
    ranks = obj.get("ranks")
    bds = obj.get("boundaries")
    if ring not in ("int", "laurent"):
        raise ParseError(f"ring must be 'int' or 'laurent', got {ring!r}")
    if not isinstance(ranks, list) or not ranks or not all(isinstance(r, int) and r >= 0 for r in ranks):
        raise ParseError("ranks must be a nonempty list of nonnegative integers")
    if not isinstance(bds, list) or len(bds) != len(ranks) - 1:
        raise ParseError(f"expected {len(ranks) - 1} boundaries")
    mats = []
    for i, d in enumerate(bds, start=1):
        rows, cols = ranks[i - 1], ranks[i]
        if not isinstance(d, list) or len(d) != rows or any(not isinstance(r, list) or len(r) != cols for r in d):
            raise ParseError(f"d_{i} must be a {rows}x{cols} array")
        if ring == "int":
            mats.append(IntMatrix(rows, cols, [[_int(v, f"d_{i}") for v in r] for r in d]))
        else:
            mats.append(LaurentMatrix(rows, cols, [[_poly(v, f"d_{i}") for v in r] for r in d]))
    cls = IntComplex if ring == "int" else EquivariantComplex
    return cls(tuple(ranks), tuple(mats))


def complex_to_json(c) -> dict:
    if isinstance(c, IntComplex):
        return {"ring": "int", "ranks": list(c.ranks), "boundaries": [d.tolist() for d in c.boundaries]}
    return {
        "ring": "laurent",
        "ranks": list(c.ranks),
        "boundaries": [[[f.to_pairs() for f in r] for r in d.entries] for d in c.boundaries],
    }


def load_complex(text: str):
    return complex_from_json(_load_json(text))


def dump_json(obj) -> str:
    return json.dumps(obj, ensure_ascii=False) + "\n"


def _rational(v, where: str) -> Fraction:
    if isinstance(v, bool):
        raise ParseError(f"{where}: expected a rational, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"{where}: bad rational {v!r}") from None
    raise ParseError(f"{where}: expected an integer or 'p/q' string, got {v!r}")


def load_arrangement(text: str):
    """Return ``(LineArrangement, OmegaSubset)``; errors from validation propagate."""
    from .arrangements import LineArrangement, OmegaSubset

    obj = _load_json(text)
    if not isinstance(obj, dict) or "lines" not in obj:
        raise ParseError("arrangement document needs a 'lines' list")
    lines = obj["lines"]
    if not isinstance(lines, list) or any(not isinstance(ln, list) or len(ln) != 3 for ln in lines):
        raise ParseError("each line must be [a, b, c]")
    parsed = [[_rational(v, f"line {k}") for v in ln] for k, ln in enumerate(lines)]
    omega = obj.get("omega", [])
    if not isinstance(omega, list):
        raise ParseError("omega must be a list of line indices")
    omega = [_int(i, "omega") for i in omega]
    try:
        arr = LineArrangement(parsed)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    try:
        om = OmegaSubset(omega, len(arr))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return arr, om


def arrangement_to_json(arr, omega) -> dict:
    return {"lines": [list(ln) for ln in arr.lines], "omega": sorted(omega.indices)}
