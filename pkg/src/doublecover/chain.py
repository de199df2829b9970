"""Bounded chain complexes of free modules over Z and over Z[t, 1/t].

Indexing: ``boundaries[i - 1]`` is ``d_i : C_i -> C_{i-1}``, a matrix of
shape ``ranks[i - 1] x ranks[i]``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .errors import CompositionNonzero, ShapeMismatch
from .exact_linalg import AbelianGroup, IntMatrix, homology_pair, rank_mod2, render_group
from .laurent import ONE, T_MINUS_1, ZERO, LaurentMatrix, LaurentPoly, companion_embed, specialize_matrix


def _check_shapes(ranks, boundaries, kind):
    if len(boundaries) != max(len(ranks) - 1, 0):
        raise ShapeMismatch(
            f"{len(ranks)} ranks need {max(len(ranks) - 1, 0)} boundaries, got {len(boundaries)}"
        )
    for i, d in enumerate(boundaries, start=1):
        if not isinstance(d, kind):
            raise TypeError(f"d_{i} must be a {kind.__name__}")
        if d.shape != (ranks[i - 1], ranks[i]):
            raise ShapeMismatch(
                f"d_{i} has shape {d.shape}, expected {(ranks[i - 1], ranks[i])}"
            )


@dataclass(frozen=True)
class IntComplex:
    ranks: tuple[int, ...]
    boundaries: tuple[IntMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))
        object.__setattr__(self, "boundaries", tuple(self.boundaries))
        if any(r < 0 for r in self.ranks):
            raise ShapeMismatch("ranks must be nonnegative")
        _check_shapes(self.ranks, self.boundaries, IntMatrix)

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def d(self, i: int) -> IntMatrix:
        """``d_i`` with zero maps outside ``1..N``."""
        if 1 <= i <= self.length:
            return self.boundaries[i - 1]
        if i == 0:
            return IntMatrix.zeros(0, self.ranks[0] if self.ranks else 0)
        if i == self.length + 1:
            return IntMatrix.zeros(self.ranks[-1] if self.ranks else 0, 0)
        raise IndexError(i)

    @classmethod
    def zero(cls, ranks: Sequence[int]) -> IntComplex:
        return cls(tuple(ranks), tuple(IntMatrix.zeros(ranks[i - 1], ranks[i]) for i in range(1, len(ranks))))


@dataclass(frozen=True)
class EquivariantComplex:
    ranks: tuple[int, ...]
    boundaries: tuple[LaurentMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))
        object.__setattr__(self, "boundaries", tuple(self.boundaries))
        if any(r < 0 for r in self.ranks):
            raise ShapeMismatch("ranks must be nonnegative")
        _check_shapes(self.ranks, self.boundaries, LaurentMatrix)

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    @classmethod
    def from_int(cls, c: IntComplex, factor: LaurentPoly = ONE) -> EquivariantComplex:
        return cls(c.ranks, tuple(LaurentMatrix.from_int(d, factor) for d in c.boundaries))


@dataclass(frozen=True)
class HomologyProfile:
    groups: tuple[AbelianGroup, ...]

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(self.groups))

    def __getitem__(self, i):
        return self.groups[i]

    def __len__(self):
        return len(self.groups)

    def __iter__(self):
        return iter(self.groups)

    def __str__(self):
        return ", ".join(f"H_{i} = {render_group(g)}" for i, g in enumerate(self.groups))

    def to_json(self) -> list[dict]:
        return [g.to_json() for g in self.groups]


def validate_int(c: IntComplex) -> IntComplex:
    _check_shapes(c.ranks, c.boundaries, IntMatrix)
    for i in range(1, c.length):
        prod = c.boundaries[i - 1] @ c.boundaries[i]
        bad = prod.first_nonzero()
        if bad is not None:
            raise CompositionNonzero(i, *bad)
    return c


def validate_equivariant(c: EquivariantComplex) -> EquivariantComplex:
    _check_shapes(c.ranks, c.boundaries, LaurentMatrix)
    for i in range(1, c.length):
        prod = c.boundaries[i - 1] @ c.boundaries[i]
        bad = prod.first_nonzero()
        if bad is not None:
            raise CompositionNonzero(i, *bad)
    return c


def homology(c: IntComplex) -> HomologyProfile:
    validate_int(c)
    return HomologyProfile(
        tuple(homology_pair(c.d(i + 1), c.d(i)) for i in range(c.length + 1))
    )


def homology_mod2(c: IntComplex) -> tuple[int, ...]:
    """Betti numbers over the two-element field."""
    ranks2 = [rank_mod2(c.d(i)) for i in range(c.length + 2)]
    return tuple(c.ranks[i] - ranks2[i] - ranks2[i + 1] for i in range(c.length + 1))


def specialize(c: EquivariantComplex, u: int) -> IntComplex:
    """Tensor with ``Z[t, 1/t] / (t - u)``."""
    validate_equivariant(c)
    return IntComplex(c.ranks, tuple(specialize_matrix(d, u) for d in c.boundaries))


def double_cover_complex(c: EquivariantComplex) -> IntComplex:
    """Tensor with ``Z[t, 1/t] / (t^2 - 1)`` viewed over Z (basis ``1, t`` per generator)."""
    validate_equivariant(c)
    return IntComplex(tuple(2 * r for r in c.ranks), tuple(companion_embed(d) for d in c.boundaries))


def first_non_minimal(c: EquivariantComplex):
    """``(degree, row, col, value_at_1)`` of the first entry not divisible by ``t - 1``."""
    for i, d in enumerate(c.boundaries, start=1):
        for r, row in enumerate(d.entries):
            for k, f in enumerate(row):
                v = f.eval_at_unit(1)
                if v:
                    return i, r, k, v
    return None


def is_minimal(c: EquivariantComplex) -> bool:
    validate_equivariant(c)
    return first_non_minimal(c) is None


def direct_sum(a, b):
    """Block-diagonal sum of two complexes of the same kind and length."""
    if type(a) is not type(b) or a.length != b.length:
        raise ShapeMismatch("direct sum needs complexes of one kind and equal length")
    zero = 0 if isinstance(a, IntComplex) else ZERO
    mat = IntMatrix if isinstance(a, IntComplex) else LaurentMatrix
    out = []
    for da, db in zip(a.boundaries, b.boundaries):
        rows = [list(r) + [zero] * db.cols for r in da.entries]
        rows += [[zero] * da.cols + list(r) for r in db.entries]
        out.append(mat(da.rows + db.rows, da.cols + db.cols, rows))
    return type(a)(tuple(x + y for x, y in zip(a.ranks, b.ranks)), tuple(out))


# -- mutable working form for basis changes and reduction ---------------------


class _Work:
    """Boundaries as nested lists so basis changes stay cheap."""

    def __init__(self, c: EquivariantComplex):
        self.ranks = list(c.ranks)
        self.d = [None] + [[list(r) for r in m.entries] for m in c.boundaries]

    @property
    def length(self):
        return len(self.ranks) - 1

    def freeze(self) -> EquivariantComplex:
        return EquivariantComplex(
            tuple(self.ranks),
            tuple(
                LaurentMatrix(self.ranks[i - 1], self.ranks[i], self.d[i])
                for i in range(1, len(self.ranks))
            ),
        )

    def add_multiple(self, j: int, a: int, b: int, p: LaurentPoly):
        """New basis ``e_a + p e_b`` of ``C_j`` in place of ``e_a``."""
        if j >= 1:
            for row in self.d[j]:
                if row[b]:
                    row[a] = row[a] + p * row[b]
        if j + 1 <= self.length:
            m = self.d[j + 1]
            src = m[a]
            m[b] = [x - p * y if y else x for x, y in zip(m[b], src)]

    def scale(self, j: int, a: int, u: LaurentPoly):
        """New basis ``u e_a`` of ``C_j`` for a unit ``u``."""
        inv = u.unit_inverse()
        if j >= 1:
            for row in self.d[j]:
                row[a] = row[a] * u
        if j + 1 <= self.length:
            m = self.d[j + 1]
            m[a] = [x * inv for x in m[a]]

    def permute(self, j: int, perm: Sequence[int]):
        """Reorder the basis of ``C_j``: new position ``k`` holds old ``perm[k]``."""
        if j >= 1:
            self.d[j] = [[row[p] for p in perm] for row in self.d[j]]
        if j + 1 <= self.length:
            m = self.d[j + 1]
            self.d[j + 1] = [m[p] for p in perm]

    def eliminate(self, i: int, r: int, c: int):
        """Cancel the acyclic pair ``(e_c in C_i, e_r in C_{i-1})`` through unit ``d_i[r][c]``."""
        m = self.d[i]
        uinv = m[r][c].unit_inverse()
        pivot_row = m[r]
        scaled = [uinv * v if v else ZERO for v in pivot_row]
        new = []
        for p, row in enumerate(m):
            if p == r:
                continue
            f = row[c]
            if f:
                row = [x - f * y if y else x for x, y in zip(row, scaled)]
            new.append(row[:c] + row[c + 1:])
        self.d[i] = new
        if i + 1 <= self.length:
            del self.d[i + 1][c]
        if i - 1 >= 1:
            self.d[i - 1] = [row[:r] + row[r + 1:] for row in self.d[i - 1]]
        self.ranks[i] -= 1
        self.ranks[i - 1] -= 1


def unit_reduce(c: EquivariantComplex) -> EquivariantComplex:
    """Cancel acyclic pairs through unit entries ``+-t^k`` until none remain.

    Each step picks the unit minimising (nonzeros in its row) x (nonzeros in
    its column), ties broken by degree, row, column. The result is chain
    homotopy equivalent to the input over ``Z[t, 1/t]``; it need not be
    minimal.
    """
    validate_equivariant(c)
    w = _Work(c)
    while True:
        best = None
        for i in range(1, w.length + 1):
            m = w.d[i]
            row_nnz = [sum(1 for v in row if v) for row in m]
            col_nnz = [0] * w.ranks[i]
            for row in m:
                for k, v in enumerate(row):
                    if v:
                        col_nnz[k] += 1
            for r, row in enumerate(m):
                for k, v in enumerate(row):
                    if v and v.is_unit():
                        key = (row_nnz[r] * col_nnz[k], i, r, k)
                        if best is None or key < best:
                            best = key
        if best is None:
            return w.freeze()
        _, i, r, k = best
        w.eliminate(i, r, k)


# -- random instances ---------------------------------------------------------


def _small_poly(rng: random.Random, bound: int = 2) -> LaurentPoly:
    terms = {}
    for _ in range(rng.randint(1, 2)):
        terms[rng.randint(-2, 2)] = rng.randint(-bound, bound)
    return LaurentPoly(terms)


def _random_unit(rng: random.Random) -> LaurentPoly:
    return LaurentPoly.monomial(rng.randint(-3, 3), rng.choice((1, -1)))


def _max_coeff(w: _Work) -> int:
    return max(
        (abs(c) for i in range(1, w.length + 1) for row in w.d[i] for f in row for _, c in f),
        default=0,
    )


def _bounded_add(w: _Work, j: int, a: int, b: int, p: LaurentPoly, bound: int) -> bool:
    """Apply the basis change ``e_a + p e_b`` only if no coefficient exceeds ``bound``."""
    saved = [None] + [[list(r) for r in m] for m in w.d[1:]]
    w.add_multiple(j, a, b, p)
    if _max_coeff(w) <= bound:
        return True
    w.d = saved
    return False


def random_minimal(seed: int, max_degree: int = 4, max_rank: int = 6, coeff_bound: int = 5) -> EquivariantComplex:
    """Seeded random minimal complex with ``C_0`` of rank 1 and nonzero character.

    Starts from an integer complex in Smith block form (``d_1`` of rank 1 with
    invariant factor 1, later invariant factors drawn from ``1..coeff_bound``),
    multiplies it by ``t - 1`` and conjugates by random unit rescalings and
    elementary basis changes over ``Z[t, 1/t]``. Every coefficient of every
    boundary entry stays within ``coeff_bound``.
    """
    if min(max_degree, max_rank, coeff_bound) < 1:
        raise ValueError("bounds must be positive")
    rng = random.Random(seed)
    n = rng.randint(1, max_degree)
    ranks = [1] + [rng.randint(1, max_rank) for _ in range(n)]
    # rho[i] = rank of d_i; rho[i] + rho[i+1] <= ranks[i]
    rho = [0, 1] + [0] * n
    for i in range(2, n + 1):
        rho[i] = rng.randint(0, min(ranks[i - 1] - rho[i - 1], ranks[i]))
    # C_i basis: [0, rho[i+1]) are hit by d_{i+1}; the next rho[i] map onto C_{i-1}
    mats = [None]
    for i in range(1, n + 1):
        m = [[ZERO] * ranks[i] for _ in range(ranks[i - 1])]
        hit = rho[i + 1] if i + 1 <= n else 0
        for k in range(rho[i]):
            f = 1 if i == 1 else rng.choice((1, 1, rng.randint(1, coeff_bound)))
            m[k][hit + k] = T_MINUS_1 * f
        mats.append(m)
    w = _Work(EquivariantComplex(
        tuple(ranks),
        tuple(LaurentMatrix(ranks[i - 1], ranks[i], mats[i]) for i in range(1, n + 1)),
    ))
    for j in range(n + 1):
        for a in range(ranks[j]):
            w.scale(j, a, _random_unit(rng))
    for _ in range(4 * sum(ranks)):
        j = rng.randint(0, n)
        if ranks[j] < 2:
            continue
        a, b = rng.sample(range(ranks[j]), 2)
        p = LaurentPoly.monomial(rng.randint(-2, 2), rng.choice((1, -1, 2, -2)))
        if rng.random() < 0.25:
            p = p + LaurentPoly.monomial(rng.randint(-2, 2), rng.choice((1, -1)))
        _bounded_add(w, j, a, b, p, coeff_bound)
    for j in range(n + 1):
        perm = list(range(ranks[j]))
        rng.shuffle(perm)
        w.permute(j, perm)
    return w.freeze()


def disguise(c: EquivariantComplex, seed: int, ops: int = 6) -> EquivariantComplex:
    """Stabilise by one acyclic pair, then scramble with Laurent basis changes.

    The pair is ``x in C_i``, ``y in C_{i-1}`` with ``d_i x = u y`` for a unit
    ``u``. Basis changes never replace ``x`` in ``C_i`` nor ``y`` in ``C_{i-1}``,
    so the entry ``u`` survives and the result stays reducible.
    """
    validate_equivariant(c)
    if c.length < 1:
        raise ValueError("need a complex of length at least 1")
    rng = random.Random(seed)
    i = rng.randint(1, c.length)
    w = _Work(c)
    x, y = w.ranks[i], w.ranks[i - 1]
    u = _random_unit(rng)
    # new generator y in C_{i-1}
    if i - 1 >= 1:
        for row in w.d[i - 1]:
            row.append(ZERO)
    w.d[i].append([ZERO] * w.ranks[i])
    w.ranks[i - 1] += 1
    # new generator x in C_i
    for r, row in enumerate(w.d[i]):
        row.append(u if r == y else ZERO)
    if i + 1 <= w.length:
        w.d[i + 1].append([ZERO] * w.ranks[i + 1])
    w.ranks[i] += 1
    for _ in range(ops):
        j = rng.randint(0, w.length)
        if w.ranks[j] < 2:
            continue
        a, b = rng.sample(range(w.ranks[j]), 2)
        if (j == i and a == x) or (j == i - 1 and b == y):
            a, b = b, a
        w.add_multiple(j, a, b, _small_poly(rng))
    for j in range(w.length + 1):
        perm = list(range(w.ranks[j]))
        rng.shuffle(perm)
        w.permute(j, perm)
    return w.freeze()
