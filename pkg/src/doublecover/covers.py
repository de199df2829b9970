"""Homology of the double cover and of the sign local system.

For a minimal equivariant complex ``C`` (every entry divisible by ``t - 1``):

* the sign local system is computed by ``E = C|_{t=-1}``, whose entries are
  all even;
* the double cover is computed by ``C (x) Z[t]/(t^2 - 1)``;
* ``H_i(cover) = Z^{rank C_i} + H_i(E, E/2)``, where ``E/2`` halves every
  boundary entry.

``verify_theorem`` computes both sides independently and compares them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chain import (
    EquivariantComplex,
    HomologyProfile,
    IntComplex,
    double_cover_complex,
    first_non_minimal,
    homology,
    homology_mod2,
    specialize,
    validate_equivariant,
)
from .errors import NotMinimal, OddEntry, ShapeViolation, ZeroOmega
from .exact_linalg import AbelianGroup, IntMatrix, render_group


def local_system_complex(c: EquivariantComplex) -> IntComplex:
    return specialize(c, -1)


def halved_complex(e: IntComplex) -> IntComplex:
    out = []
    for i, d in enumerate(e.boundaries, start=1):
        for r, row in enumerate(d.entries):
            for k, v in enumerate(row):
                if v & 1:
                    raise OddEntry(i, r, k, v)
        out.append(IntMatrix(d.rows, d.cols, [[v // 2 for v in row] for row in d.entries]))
    return IntComplex(e.ranks, tuple(out))


def require_minimal(c: EquivariantComplex) -> None:
    validate_equivariant(c)
    bad = first_non_minimal(c)
    if bad is not None:
        raise NotMinimal(*bad)


def check_character(h_local: HomologyProfile) -> None:
    """Reject a character that is trivial on some component.

    A component with trivial character contributes a free summand to ``H_0``
    with sign coefficients; a nonzero character contributes ``Z/2``.
    """
    h0 = h_local[0]
    if h0.rank:
        raise ZeroOmega(f"H_0 with sign coefficients is {render_group(h0)}; the character is trivial")


def cover_homology_formula(c: EquivariantComplex) -> HomologyProfile:
    require_minimal(c)
    e = local_system_complex(c)
    check_character(homology(e))
    halved = homology(halved_complex(e))
    return HomologyProfile(
        tuple(AbelianGroup.free(r) + g for r, g in zip(c.ranks, halved))
    )


def cover_homology_direct(c: EquivariantComplex) -> HomologyProfile:
    return homology(double_cover_complex(c))


def uct_mod2_dims(h: HomologyProfile) -> tuple[int, ...]:
    dims = []
    for i, g in enumerate(h):
        prev = h[i - 1].count_even_torsion() if i else 0
        dims.append(g.rank + g.count_even_torsion() + prev)
    return tuple(dims)


def corollary1_forward(h1_local: AbelianGroup, b1: int) -> AbelianGroup:
    """``Z^r + Z/2d_1 + ... + Z/2d_k + (Z/2)^(b1-r-k-1)``  ->  ``Z^(b1+r) + Z/d_1 + ... + Z/d_k``."""
    if any(f % 2 for f in h1_local.torsion):
        raise ShapeViolation(f"{render_group(h1_local)} has odd torsion")
    twos = sum(1 for f in h1_local.torsion if f == 2)
    ds = tuple(f // 2 for f in h1_local.torsion if f > 2)
    r, k = h1_local.rank, len(ds)
    if twos != b1 - r - k - 1:
        raise ShapeViolation(
            f"{render_group(h1_local)} needs {b1 - r - k - 1} factors Z/2 for b1 = {b1}, has {twos}"
        )
    return AbelianGroup(b1 + r, ds)


def corollary1_backward(h1_cover: AbelianGroup, b1: int) -> AbelianGroup:
    r = h1_cover.rank - b1
    if r < 0:
        raise ShapeViolation(f"rank of {render_group(h1_cover)} is below b1 = {b1}")
    k = len(h1_cover.torsion)
    twos = b1 - r - k - 1
    if twos < 0:
        raise ShapeViolation(f"{render_group(h1_cover)} has too many summands for b1 = {b1}")
    return AbelianGroup(r, (2,) * twos + tuple(2 * d for d in h1_cover.torsion))


def corollary2_check(h_local: HomologyProfile, h_cover: HomologyProfile) -> bool:
    """Sign-local-system torsion is only ``Z/2``'s iff the cover is torsion-free."""
    if len(h_local) != len(h_cover):
        raise ValueError("profiles differ in length")
    elementary = all(f == 2 for g in h_local for f in g.torsion)
    torsion_free = all(g.is_torsion_free for g in h_cover)
    return elementary == torsion_free


@dataclass(frozen=True)
class PipelineReport:
    """All computed profiles plus consistency flags.

    When ``non_minimal_residue`` is set only the oracle-side profiles
    (``h_base``, ``h_local``, ``h_cover_direct``) are populated.
    """

    h_base: HomologyProfile
    h_local: HomologyProfile
    h_cover_direct: HomologyProfile
    h_cover_formula: HomologyProfile | None = None
    h_halved: HomologyProfile | None = None
    theorem_holds: bool | None = None
    corollary1_consistent: bool | None = None
    corollary2_consistent: bool | None = None
    mod2_consistent: bool | None = None
    non_minimal_residue: bool = False
    extra: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        def prof(p):
            return None if p is None else p.to_json()

        out = {
            "h_base": prof(self.h_base),
            "h_local": prof(self.h_local),
            "h_cover_formula": prof(self.h_cover_formula),
            "h_cover_direct": prof(self.h_cover_direct),
            "h_halved": prof(self.h_halved),
            "theorem_holds": self.theorem_holds,
            "corollary1_consistent": self.corollary1_consistent,
            "corollary2_consistent": self.corollary2_consistent,
            "mod2_consistent": self.mod2_consistent,
            "non_minimal_residue": self.non_minimal_residue,
        }
        out.update(self.extra)
        return out

    def render(self) -> str:
        rows = [
            ("H_*(X, Z)", self.h_base),
            ("H_*(X, L)", self.h_local),
            ("H_*(X^w, Z) formula", self.h_cover_formula),
            ("H_*(X^w, Z) direct", self.h_cover_direct),
        ]
        lines = []
        for label, prof in rows:
            if prof is None:
                continue
            lines.append(f"{label}:")
            lines.extend(f"  H_{i} = {render_group(g)}" for i, g in enumerate(prof))
        if self.non_minimal_residue:
            lines.append("NonMinimalResidue: reduction did not reach a minimal complex")
        for name in ("theorem_holds", "corollary1_consistent", "corollary2_consistent", "mod2_consistent"):
            value = getattr(self, name)
            if value is not None:
                lines.append(f"{name}: {str(value).lower()}")
        for key, value in self.extra.items():
            lines.append(f"{key}: {value}")
        return "\n".join(lines)


def oracle_report(c: EquivariantComplex) -> PipelineReport:
    """Profiles that need no minimality: t = +1, t = -1 and the doubled complex."""
    direct = cover_homology_direct(c)
    return PipelineReport(
        h_base=homology(specialize(c, 1)),
        h_local=homology(local_system_complex(c)),
        h_cover_direct=direct,
        mod2_consistent=homology_mod2(double_cover_complex(c)) == uct_mod2_dims(direct),
        non_minimal_residue=True,
    )


def verify_theorem(c: EquivariantComplex) -> PipelineReport:
    require_minimal(c)
    e = local_system_complex(c)
    h_local = homology(e)
    check_character(h_local)
    h_halved = homology(halved_complex(e))
    formula = HomologyProfile(tuple(AbelianGroup.free(r) + g for r, g in zip(c.ranks, h_halved)))
    doubled = double_cover_complex(c)
    direct = homology(doubled)
    cor1 = True
    if c.length >= 1:
        b1 = c.ranks[1]
        try:
            cor1 = (
                corollary1_forward(h_local[1], b1) == direct[1]
                and corollary1_backward(direct[1], b1) == h_local[1]
            )
        except ShapeViolation:
            cor1 = False
    return PipelineReport(
        h_base=homology(specialize(c, 1)),
        h_local=h_local,
        h_cover_direct=direct,
        h_cover_formula=formula,
        h_halved=h_halved,
        theorem_holds=formula == direct,
        corollary1_consistent=cor1,
        corollary2_consistent=corollary2_check(h_local, direct),
        mod2_consistent=homology_mod2(doubled) == uct_mod2_dims(direct),
    )
