"""Sparse one-variable integer Laurent polynomials and matrices over them.

The quotient ``Z[t, 1/t] / (t^2 - 1)`` is identified with ``Z.1 + Z.t`` in
the fixed ordered basis ``(1, t)``; every block embedding uses that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ShapeMismatch
from .exact_linalg import IntMatrix


class LaurentPoly:
    """Immutable ``sum c_e t^e`` with no zero coefficients stored."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict[int, int] = {}
        for e, c in items:
            e, c = int(e), int(c)
            acc[e] = acc.get(e, 0) + c
        object.__setattr__(self, "_terms", {e: c for e, c in sorted(acc.items()) if c})
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def _raw(cls, terms: dict[int, int]) -> LaurentPoly:
        # terms must already be pruned and sorted
        self = object.__new__(cls)
        object.__setattr__(self, "_terms", terms)
        object.__setattr__(self, "_hash", None)
        return self

    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls._raw({0: int(c)} if c else {})

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> LaurentPoly:
        return cls._raw({int(e): int(c)} if c else {})

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> LaurentPoly:
        return cls((e, c) for e, c in pairs)

    def to_pairs(self) -> list[list[int]]:
        """Canonical form: ``[exponent, coefficient]`` pairs, exponents ascending."""
        return [[e, c] for e, c in self._terms.items()]

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(tuple(self._terms.items())))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly._raw({e: acc[e] for e in sorted(acc) if acc[e]})

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._raw({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: acc[e] for e in sorted(acc) if acc[e]})

    __rmul__ = __mul__

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``t^k``."""
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    def eval_at_unit(self, u: int) -> int:
        if u == 1:
            return sum(self._terms.values())
        if u == -1:
            return sum(-c if e & 1 else c for e, c in self._terms.items())
        raise ValueError("u must be +1 or -1")

    def reduce_mod_t2(self) -> ResidueLinear:
        b = a = 0
        for e, c in self._terms.items():
            if e & 1:
                a += c
            else:
                b += c
        return ResidueLinear(b, a)

    def is_unit(self) -> bool:
        """Units of ``Z[t, 1/t]`` are exactly ``+-t^k``."""
        if len(self._terms) != 1:
            return False
        (c,) = self._terms.values()
        return c in (1, -1)

    def unit_inverse(self) -> LaurentPoly:
        if not self.is_unit():
            raise ValueError(f"{self} is not a unit")
        ((e, c),) = self._terms.items()
        return LaurentPoly._raw({-e: c})

    def divide_by_t_minus_1(self) -> tuple[LaurentPoly, int]:
        """Synthetic division by ``t - 1``.

        Returns ``(q, r)`` with ``self = (t - 1) q + r t^v``, ``v`` the lowest
        exponent of ``self``; ``t - 1`` divides ``self`` iff ``r == 0``.
        """
        if not self._terms:
            return ZERO, 0
        lo = min(self._terms)
        hi = max(self._terms)
        # work on t^-lo * self, an ordinary polynomial; divide from the top
        coeffs = [self._terms.get(e, 0) for e in range(lo, hi + 1)]
        q = [0] * (len(coeffs) - 1)
        carry = 0
        for i in range(len(coeffs) - 1, 0, -1):
            carry += coeffs[i]
            q[i - 1] = carry
        r = carry + coeffs[0]
        return LaurentPoly((lo + i, c) for i, c in enumerate(q)), r

    def __repr__(self):
        return f"LaurentPoly({self.to_pairs()})"

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for e, c in sorted(self._terms.items(), reverse=True):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "t" if e == 1 else f"t^{e}"
                body = var if mag == 1 else f"{mag}{var}"
            if not out:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(out)


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({0: 1})
T = LaurentPoly._raw({1: 1})
T_MINUS_1 = LaurentPoly._raw({0: -1, 1: 1})


def add(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return f + g


def mul(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return f * g


def neg(f: LaurentPoly) -> LaurentPoly:
    return -f


def shift(f: LaurentPoly, k: int) -> LaurentPoly:
    return f.shift(k)


def eval_at_unit(f: LaurentPoly, u: int) -> int:
    return f.eval_at_unit(u)


def reduce_mod_t2(f: LaurentPoly) -> ResidueLinear:
    return f.reduce_mod_t2()


@dataclass(frozen=True)
class ResidueLinear:
    """The class ``b + a t`` in ``Z[t, 1/t] / (t^2 - 1)``."""

    b: int
    a: int

    def __mul__(self, other: ResidueLinear) -> ResidueLinear:
        return ResidueLinear(self.b * other.b + self.a * other.a, self.a * other.b + other.a * self.b)

    def at(self, u: int) -> int:
        return self.b + self.a * u

    def block(self) -> tuple[tuple[int, int], tuple[int, int]]:
        # column k is the image of the k-th basis vector of (1, t)
        return ((self.b, self.a), (self.a, self.b))


def mult_block(f: LaurentPoly) -> IntMatrix:
    """Matrix of multiplication by ``f`` on ``Z[t]/(t^2 - 1)`` in basis ``(1, t)``."""
    return IntMatrix(2, 2, f.reduce_mod_t2().block())


class LaurentMatrix:
    """Immutable ``rows x cols`` matrix of :class:`LaurentPoly`."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[Sequence]):
        entries = tuple(tuple(_coerce(v) for v in r) for r in entries)
        if rows < 0 or cols < 0 or len(entries) != rows or any(len(r) != cols for r in entries):
            raise ShapeMismatch(f"entries do not form a {rows}x{cols} array")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentMatrix is immutable")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> LaurentMatrix:
        return cls(rows, cols, [[ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> LaurentMatrix:
        return cls(n, n, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_int(cls, m: IntMatrix, factor: LaurentPoly = ONE) -> LaurentMatrix:
        return cls(m.rows, m.cols, [[factor * v for v in r] for r in m.entries])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = [[str(v) for v in r] for r in self.entries]
        return f"LaurentMatrix({self.rows}, {self.cols}, {body})"

    def tolist(self) -> list[list[LaurentPoly]]:
        return [list(r) for r in self.entries]

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def __add__(self, other: LaurentMatrix) -> LaurentMatrix:
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        return LaurentMatrix(
            self.rows, self.cols,
            [[x + y for x, y in zip(r, s)] for r, s in zip(self.entries, other.entries)],
        )

    def __matmul__(self, other: LaurentMatrix) -> LaurentMatrix:
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for r in self.entries:
            row = []
            for j in range(other.cols):
                acc = ZERO
                for k, x in enumerate(r):
                    if x:
                        y = other.entries[k][j]
                        if y:
                            acc = acc + x * y
                row.append(acc)
            out.append(row)
        return LaurentMatrix(self.rows, other.cols, out)

    def scale(self, f: LaurentPoly) -> LaurentMatrix:
        return LaurentMatrix(self.rows, self.cols, [[f * v for v in r] for r in self.entries])

    def first_nonzero(self):
        for i, r in enumerate(self.entries):
            for j, v in enumerate(r):
                if v:
                    return i, j, v
        return None


def _coerce(v) -> LaurentPoly:
    if isinstance(v, LaurentPoly):
        return v
    if isinstance(v, int):
        return LaurentPoly.const(v)
    raise TypeError(f"cannot use {v!r} as a Laurent polynomial")


def specialize_matrix(m: LaurentMatrix, u: int) -> IntMatrix:
    """Entrywise evaluation at ``t = u`` for ``u`` in ``{+1, -1}``."""
    return IntMatrix(m.rows, m.cols, [[f.eval_at_unit(u) for f in r] for r in m.entries])


def companion_embed(m: LaurentMatrix) -> IntMatrix:
    """Replace each entry by its 2x2 :func:`mult_block`.

    Row/column ``2k`` is the ``1`` component of basis vector ``k`` and
    ``2k + 1`` its ``t`` component.
    """
    out = [[0] * (2 * m.cols) for _ in range(2 * m.rows)]
    for i, r in enumerate(m.entries):
        top, bot = out[2 * i], out[2 * i + 1]
        for j, f in enumerate(r):
            if f:
                res = f.reduce_mod_t2()
                top[2 * j], top[2 * j + 1] = res.b, res.a
                bot[2 * j], bot[2 * j + 1] = res.a, res.b
    return IntMatrix(2 * m.rows, 2 * m.cols, out)
