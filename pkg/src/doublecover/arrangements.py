"""Complexified real line arrangements: face poset, Salvetti complex and its
lift to the infinite cyclic cover that winds once around each chosen line.

Conventions
-----------
* Line ``(a, b, c)`` is ``{a x + b y + c = 0}``; its positive side is where
  ``a x + b y + c > 0`` and it is traversed in direction ``(-b, a)``.
* Salvetti cells are pairs (face F, chamber C adjacent to F), dimension
  ``codim F``. A 1-cell ``[C, E]`` runs from ``C`` to the chamber across ``E``.
  The boundary of a 2-cell ``[C, p]`` is the counter-clockwise gallery from
  ``C`` to its opposite chamber at ``p`` minus the clockwise one.
* Lift: crossing a chosen line from its negative to its positive side adds
  one to the sheet; chamber ``C`` is lifted to sheet ``level(C)``, the number
  of chosen lines with the base chamber on the negative side and ``C`` on the
  positive side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from .chain import EquivariantComplex, IntComplex, homology, is_minimal, unit_reduce
from .covers import PipelineReport, oracle_report, verify_theorem
from .errors import DuplicateLine, EmptyOmega
from .exact_linalg import IntMatrix
from .laurent import LaurentMatrix, LaurentPoly

Sign = tuple[int, ...]


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def normalize_line(a, b, c) -> tuple[int, int, int]:
    """Coprime integer coefficients, first nonzero coefficient positive."""
    fa, fb, fc = (Fraction(v) for v in (a, b, c))
    if fa == 0 and fb == 0:
        raise ValueError(f"degenerate line ({a}, {b}, {c})")
    den = lcm(fa.denominator, fb.denominator, fc.denominator)
    ints = [int(v * den) for v in (fa, fb, fc)]
    g = reduce(gcd, ints)
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


@dataclass(frozen=True)
class LineArrangement:
    lines: tuple[tuple[int, int, int], ...]

    def __init__(self, lines: Iterable[Sequence]):
        norm = []
        for k, ln in enumerate(lines):
            if len(ln) != 3:
                raise ValueError(f"line {k} needs three coefficients")
            t = normalize_line(*ln)
            if t in norm:
                raise DuplicateLine(f"line {k} repeats line {norm.index(t)}")
            norm.append(t)
        if not norm:
            raise ValueError("arrangement has no lines")
        object.__setattr__(self, "lines", tuple(norm))

    def __len__(self):
        return len(self.lines)

    def sign_vector(self, x, y) -> Sign:
        return tuple(_sgn(a * x + b * y + c) for a, b, c in self.lines)


@dataclass(frozen=True)
class OmegaSubset:
    indices: frozenset[int]

    def __init__(self, indices: Iterable[int], n_lines: int | None = None):
        idx = frozenset(int(i) for i in indices)
        if not idx:
            raise EmptyOmega("omega must contain at least one line")
        if n_lines is not None and any(not 0 <= i < n_lines for i in idx):
            raise ValueError(f"omega indices {sorted(idx)} out of range for {n_lines} lines")
        object.__setattr__(self, "indices", idx)

    def __contains__(self, i):
        return i in self.indices


@dataclass(frozen=True)
class Edge:
    line: int
    sign: Sign
    chambers: tuple[Sign, Sign]  # (negative side, positive side)


@dataclass(frozen=True)
class Vertex:
    point: tuple[Fraction, Fraction]
    sign: Sign
    lines: tuple[int, ...]
    # cyclic counter-clockwise order: edges[j] separates chambers[j-1] and chambers[j]
    edges: tuple[int, ...]
    chambers: tuple[Sign, ...]


@dataclass(frozen=True)
class FacePoset:
    arrangement: LineArrangement
    chambers: tuple[Sign, ...]
    edges: tuple[Edge, ...]
    vertices: tuple[Vertex, ...]

    def faces(self) -> list[tuple[Sign, int]]:
        """All faces as ``(sign vector, dimension)``."""
        out = [(c, 2) for c in self.chambers]
        out += [(e.sign, 1) for e in self.edges]
        out += [(v.sign, 0) for v in self.vertices]
        return out

    @staticmethod
    def is_face_of(f: Sign, g: Sign) -> bool:
        """``f`` lies in the closure of ``g``: every zero of ``f`` may relax to a sign of ``g``."""
        return all(x == 0 or x == y for x, y in zip(f, g))

    def counts(self) -> tuple[int, int, int]:
        return (len(self.chambers), len(self.edges), len(self.vertices))


def _direction_cmp(u, w) -> int:
    def half(v):
        return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1

    hu, hw = half(u), half(w)
    if hu != hw:
        return hu - hw
    cross = u[0] * w[1] - u[1] * w[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def face_poset(arr: LineArrangement) -> FacePoset:
    lines = arr.lines
    n = len(lines)
    points: dict[tuple[Fraction, Fraction], set[int]] = {}
    for i in range(n):
        a1, b1, c1 = lines[i]
        for j in range(i + 1, n):
            a2, b2, c2 = lines[j]
            det = a1 * b2 - a2 * b1
            if det == 0:
                continue
            x = Fraction(-c1 * b2 + c2 * b1, det)
            y = Fraction(-a1 * c2 + a2 * c1, det)
            points.setdefault((x, y), set()).update((i, j))

    edges: list[Edge] = []
    # edge_at[(line, index of point along line, +1/-1)] -> edge id
    edge_at: dict[tuple[int, tuple, int], int] = {}
    for k, (a, b, c) in enumerate(lines):
        v = (-b, a)
        on = sorted((p for p, ls in points.items() if k in ls), key=lambda p: v[0] * p[0] + v[1] * p[1])
        if on:
            samples = [(on[0][0] - v[0], on[0][1] - v[1])]
            samples += [((p[0] + q[0]) / 2, (p[1] + q[1]) / 2) for p, q in zip(on, on[1:])]
            samples.append((on[-1][0] + v[0], on[-1][1] + v[1]))
        else:
            nrm = a * a + b * b
            samples = [(Fraction(-a * c, nrm), Fraction(-b * c, nrm))]
        first = len(edges)
        for x, y in samples:
            s = arr.sign_vector(x, y)
            neg = s[:k] + (-1,) + s[k + 1:]
            pos = s[:k] + (1,) + s[k + 1:]
            edges.append(Edge(k, s, (neg, pos)))
        for m, p in enumerate(on):
            edge_at[(k, p, -1)] = first + m
            edge_at[(k, p, 1)] = first + m + 1

    chambers = sorted({c for e in edges for c in e.chambers})
    chamber_set = set(chambers)

    vertices = []
    for p in sorted(points):
        ls = tuple(sorted(points[p]))
        psign = arr.sign_vector(*p)
        dirs = []
        for k in ls:
            a, b, _ = lines[k]
            dirs.append(((-b, a), edge_at[(k, p, 1)]))
            dirs.append(((b, -a), edge_at[(k, p, -1)]))
        dirs.sort(key=cmp_to_key(lambda u, w: _direction_cmp(u[0], w[0])))
        m2 = len(dirs)
        ring_chambers = []
        for j in range(m2):
            (dx0, dy0), _ = dirs[j]
            (dx1, dy1), _ = dirs[(j + 1) % m2]
            dx, dy = dx0 + dx1, dy0 + dy1
            s = list(psign)
            for k in ls:
                a, b, _ = lines[k]
                s[k] = _sgn(a * dx + b * dy)
            s = tuple(s)
            if s not in chamber_set:
                raise AssertionError(f"chamber {s} at vertex {p} was not enumerated")
            ring_chambers.append(s)
        # edges[j] lies along dirs[j] and separates ring chamber j-1 from j
        vertices.append(Vertex(p, psign, ls, tuple(e for _, e in dirs), tuple(ring_chambers)))

    return FacePoset(arr, tuple(chambers), tuple(edges), tuple(vertices))


def combinatorial_betti(arr: LineArrangement) -> tuple[int, int, int]:
    poset = face_poset(arr)
    return (1, len(arr), sum(len(v.lines) - 1 for v in poset.vertices))


@dataclass(frozen=True)
class SalvettiCells:
    cells0: tuple[Sign, ...]
    cells1: tuple[tuple[int, Sign], ...]  # (edge id, start chamber)
    cells2: tuple[tuple[int, int], ...]  # (vertex id, position of start chamber in its ring)


def salvetti_cells(poset: FacePoset) -> SalvettiCells:
    cells1 = []
    for eid, e in enumerate(poset.edges):
        cells1.extend((eid, ch) for ch in e.chambers)
    cells2 = [(vid, s) for vid, v in enumerate(poset.vertices) for s in range(len(v.chambers))]
    return SalvettiCells(poset.chambers, tuple(cells1), tuple(cells2))


def generic_base_chamber(arr: LineArrangement) -> Sign:
    """Chamber containing the first point ``(k/3, k^2/7)``, ``k = 0, 1, ...``, off every line."""
    k = 0
    while True:
        s = arr.sign_vector(Fraction(k, 3), Fraction(k * k, 7))
        if 0 not in s:
            return s
        k += 1


def _build(poset: FacePoset, omega: OmegaSubset | None, base: Sign | None):
    """Return boundary matrices as dicts ``(row, col) -> LaurentPoly``."""
    cells = salvetti_cells(poset)
    idx0 = {c: i for i, c in enumerate(cells.cells0)}
    idx1 = {c: i for i, c in enumerate(cells.cells1)}
    chosen = omega.indices if omega is not None else frozenset()
    if base is None:
        base = generic_base_chamber(poset.arrangement)
    if base not in idx0:
        raise ValueError(f"{base} is not a chamber")

    def level(ch: Sign) -> int:
        return sum(1 for k in chosen if base[k] == -1 and ch[k] == 1)

    def weight(line: int, start: Sign) -> int:
        return 1 if line in chosen and start[line] == -1 else 0

    def across(eid: int, start: Sign) -> Sign:
        neg, pos = poset.edges[eid].chambers
        return pos if start == neg else neg

    d1: dict[tuple[int, int], LaurentPoly] = {}
    for col, (eid, start) in enumerate(cells.cells1):
        line = poset.edges[eid].line
        end = across(eid, start)
        e = level(start) + weight(line, start) - level(end)
        d1[(idx0[end], col)] = LaurentPoly.monomial(e, 1)
        d1[(idx0[start], col)] = LaurentPoly.monomial(0, -1)

    d2: dict[tuple[int, int], LaurentPoly] = {}
    for col, (vid, s) in enumerate(cells.cells2):
        v = poset.vertices[vid]
        ring, ring_edges = v.chambers, v.edges
        m2 = len(ring)
        m = m2 // 2
        top = level(ring[s])
        for sign, stepdir in ((1, 1), (-1, -1)):
            cum = 0
            pos = s
            for _ in range(m):
                if stepdir == 1:
                    eid, nxt = ring_edges[(pos + 1) % m2], (pos + 1) % m2
                else:
                    eid, nxt = ring_edges[pos], (pos - 1) % m2
                start = ring[pos]
                row = idx1[(eid, start)]
                term = LaurentPoly.monomial(top + cum - level(start), sign)
                d2[(row, col)] = d2.get((row, col), LaurentPoly()) + term
                cum += weight(poset.edges[eid].line, start)
                pos = nxt
    ranks = (len(cells.cells0), len(cells.cells1), len(cells.cells2))
    return ranks, d1, d2


def _dense(rows: int, cols: int, sparse: dict, conv):
    m = [[conv(None)] * cols for _ in range(rows)]
    for (i, j), v in sparse.items():
        m[i][j] = conv(v)
    return m


def equivariant_salvetti(poset: FacePoset, omega: OmegaSubset, base: Sign | None = None) -> EquivariantComplex:
    if omega is None or not omega.indices:
        raise EmptyOmega("omega must contain at least one line")
    ranks, d1, d2 = _build(poset, omega, base)

    def conv(v):
        return v if v is not None else LaurentPoly()

    return EquivariantComplex(
        ranks,
        (
            LaurentMatrix(ranks[0], ranks[1], _dense(ranks[0], ranks[1], d1, conv)),
            LaurentMatrix(ranks[1], ranks[2], _dense(ranks[1], ranks[2], d2, conv)),
        ),
    )


def salvetti_complex(poset: FacePoset) -> IntComplex:
    ranks, d1, d2 = _build(poset, None, None)

    def conv(v):
        return 0 if v is None else v.eval_at_unit(1)

    return IntComplex(
        ranks,
        (
            IntMatrix(ranks[0], ranks[1], _dense(ranks[0], ranks[1], d1, conv)),
            IntMatrix(ranks[1], ranks[2], _dense(ranks[1], ranks[2], d2, conv)),
        ),
    )


def pipeline(arr: LineArrangement, omega: OmegaSubset, base: Sign | None = None) -> PipelineReport:
    """Salvetti lift -> unit reduction -> theorem check (or oracle-only report)."""
    omega = OmegaSubset(omega.indices, len(arr))
    poset = face_poset(arr)
    betti = combinatorial_betti(arr)
    salvetti_betti = tuple(g.rank for g in homology(salvetti_complex(poset)))
    eq = equivariant_salvetti(poset, omega, base)
    reduced = unit_reduce(eq)
    extra = {
        "combinatorial_betti": list(betti),
        "salvetti_betti": list(salvetti_betti),
        "salvetti_ranks": list(eq.ranks),
        "reduced_ranks": list(reduced.ranks),
    }
    if not is_minimal(reduced):
        report = oracle_report(reduced)
    else:
        if reduced.ranks != betti:
            raise AssertionError(f"minimal ranks {reduced.ranks} differ from Betti numbers {betti}")
        report = verify_theorem(reduced)
    return PipelineReport(**{**report.__dict__, "extra": extra})
