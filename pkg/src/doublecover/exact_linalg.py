"""Exact integer linear algebra: dense integer matrices, Smith normal form,
finitely generated abelian groups and homology of a composable pair."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from ._backend import snf_kernel
from .errors import CompositionNonzero, ShapeMismatch


class IntMatrix:
    """Immutable dense matrix of Python ints. Empty shapes are allowed."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[Sequence[int]]):
        if rows < 0 or cols < 0:
            raise ShapeMismatch(f"negative shape {rows}x{cols}")
        entries = tuple(tuple(int(v) for v in r) for r in entries)
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ShapeMismatch(f"entries do not form a {rows}x{cols} array")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ShapeMismatch("column count of a 0-row matrix must be given")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, rows: int, cols: int, diag: Iterable[int]) -> IntMatrix:
        m = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            m[i][i] = d
        return cls(rows, cols, m)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"IntMatrix({self.rows}, {self.cols}, {[list(r) for r in self.entries]})"

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def transpose(self) -> IntMatrix:
        return IntMatrix(
            self.cols, self.rows, [[r[j] for r in self.entries] for j in range(self.cols)]
        )

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, [[-v for v in r] for r in self.entries])

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        return IntMatrix(
            self.rows,
            self.cols,
            [[x + y for x, y in zip(r, s)] for r, s in zip(self.entries, other.entries)],
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        ocols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = []
        for r in self.entries:
            out.append([sum(x * y for x, y in zip(r, c) if x) for c in ocols])
        return IntMatrix(self.rows, other.cols, out)

    def scale(self, k: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, [[k * v for v in r] for r in self.entries])

    def first_nonzero(self):
        """``(row, col, value)`` of the first nonzero entry in row-major order, or None."""
        for i, r in enumerate(self.entries):
            for j, v in enumerate(r):
                if v:
                    return i, j, v
        return None


@dataclass(frozen=True)
class SmithForm:
    """``left @ A @ right`` equals the ``rows x cols`` diagonal matrix of ``diag``."""

    diag: tuple[int, ...]
    left: IntMatrix
    right: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d)

    def check(self, a: IntMatrix) -> bool:
        expected = IntMatrix.diagonal(a.rows, a.cols, self.diag)
        return self.left @ a @ self.right == expected


def snf(a: IntMatrix) -> SmithForm:
    """Smith normal form with unimodular certificates.

    Pivots on the nonzero entry of least absolute value (lowest row, then
    column, on ties). Invariant factors are nonnegative and form a
    divisibility chain, zeros last.
    """
    diag, left, right = snf_kernel(a.entries, a.rows, a.cols, True)
    return SmithForm(
        tuple(diag),
        IntMatrix(a.rows, a.rows, left),
        IntMatrix(a.cols, a.cols, right),
    )


def invariant_factors(a: IntMatrix) -> tuple[int, ...]:
    """Diagonal of the Smith form, without computing certificates."""
    diag, _, _ = snf_kernel(a.entries, a.rows, a.cols, False)
    return tuple(diag)


def rank(a: IntMatrix) -> int:
    return sum(1 for d in invariant_factors(a) if d)


def rank_mod2(a: IntMatrix) -> int:
    """Rank over the field with two elements (rows packed as bitmasks)."""
    pivots: dict[int, int] = {}
    r = 0
    for row in a.entries:
        v = 0
        for j, x in enumerate(row):
            if x & 1:
                v |= 1 << j
        while v:
            top = v.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = v
                r += 1
                break
            v ^= p
    return r


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Columns form a basis of the integer kernel lattice of ``a``."""
    sf = snf(a)
    k = sf.rank
    return IntMatrix(
        a.cols,
        a.cols - k,
        [[sf.right[i, j] for j in range(k, a.cols)] for i in range(a.cols)],
    )


def _normalize_torsion(factors: Iterable[int]) -> tuple[int, ...]:
    """Invariant-factor chain of a direct sum of cyclic groups ``Z/f``."""
    fs = sorted(abs(f) for f in factors if abs(f) > 1)
    # pairwise (gcd, lcm) exchange until every entry divides the next
    changed = True
    while changed:
        changed = False
        for i in range(len(fs)):
            for j in range(i + 1, len(fs)):
                a, b = fs[i], fs[j]
                if b % a:
                    g = gcd(a, b)
                    fs[i], fs[j] = g, a // g * b
                    changed = True
        fs = sorted(f for f in fs if f > 1)
    return tuple(fs)


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^rank + Z/torsion[0] + ...`` with ``1 < torsion[0] | torsion[1] | ...``."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        for i, d in enumerate(self.torsion):
            if d <= 1:
                raise ValueError(f"torsion factor {d} must exceed 1")
            if i and d % self.torsion[i - 1]:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")

    @classmethod
    def from_factors(cls, rank: int, factors: Iterable[int]) -> AbelianGroup:
        """Build from arbitrary cyclic orders; zeros count toward the rank, 1s vanish."""
        factors = list(factors)
        rank += sum(1 for f in factors if f == 0)
        return cls(rank, _normalize_torsion(f for f in factors if f))

    @classmethod
    def free(cls, rank: int) -> AbelianGroup:
        return cls(rank, ())

    def __add__(self, other: AbelianGroup) -> AbelianGroup:
        return AbelianGroup(self.rank + other.rank, _normalize_torsion(self.torsion + other.torsion))

    @property
    def is_torsion_free(self) -> bool:
        return not self.torsion

    def count_even_torsion(self) -> int:
        return sum(1 for d in self.torsion if d % 2 == 0)

    def __str__(self) -> str:
        return render_group(self)

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, obj) -> AbelianGroup:
        return cls(int(obj["rank"]), tuple(int(d) for d in obj["torsion"]))


def render_group(g: AbelianGroup) -> str:
    """``Z^r`` then torsion factors joined by " ⊕ "; runs of equal factors as ``(Z/d)^k``."""
    parts = []
    if g.rank == 1:
        parts.append("Z")
    elif g.rank > 1:
        parts.append(f"Z^{g.rank}")
    i = 0
    tors = g.torsion
    while i < len(tors):
        j = i
        while j < len(tors) and tors[j] == tors[i]:
            j += 1
        parts.append(f"Z/{tors[i]}" if j - i == 1 else f"(Z/{tors[i]})^{j - i}")
        i = j
    return " ⊕ ".join(parts) if parts else "0"


def homology_pair(d_in: IntMatrix, d_out: IntMatrix) -> AbelianGroup:
    """Homology ``ker(d_out) / im(d_in)`` at the middle module.

    Torsion comes from the invariant factors of ``d_in`` alone: the kernel of
    ``d_out`` is a pure sublattice containing the image of ``d_in``.
    """
    if d_out.cols != d_in.rows:
        raise ShapeMismatch(
            f"d_out has {d_out.cols} columns but d_in has {d_in.rows} rows"
        )
    prod = d_out @ d_in
    bad = prod.first_nonzero()
    if bad is not None:
        i, j, v = bad
        raise CompositionNonzero(0, i, j, v)
    f_in = invariant_factors(d_in)
    r_in = sum(1 for d in f_in if d)
    r_out = rank(d_out)
    return AbelianGroup(
        d_in.rows - r_out - r_in,
        _normalize_torsion(d for d in f_in if d > 1),
    )
