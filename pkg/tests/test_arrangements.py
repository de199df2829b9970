import random
from fractions import Fraction

import pytest

from doublecover.arrangements import (
    LineArrangement,
    OmegaSubset,
    combinatorial_betti,
    equivariant_salvetti,
    face_poset,
    generic_base_chamber,
    normalize_line,
    pipeline,
    salvetti_complex,
)
from doublecover.chain import double_cover_complex, homology, specialize, validate_equivariant
from doublecover.errors import DuplicateLine, EmptyOmega
from doublecover.exact_linalg import AbelianGroup as G

SINGLE = [(1, 0, 0)]
CROSSING = [(1, 0, 0), (0, 1, 0)]
GENERIC3 = [(1, 0, 0), (0, 1, 0), (1, 1, -1)]
CONCURRENT3 = [(1, 0, 0), (0, 1, 0), (1, 1, 0)]
PARALLEL = [(1, 0, 0), (1, 0, -1), (0, 1, 0)]
PENCIL4 = [(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, -1, 0)]
GENERIC4 = [(1, 0, 0), (0, 1, 0), (1, 1, -1), (1, -2, 3)]

CASES = {
    "single": (SINGLE, (2, 1, 0), (1, 1, 0)),
    "crossing": (CROSSING, (4, 4, 1), (1, 2, 1)),
    "generic3": (GENERIC3, (7, 9, 3), (1, 3, 3)),
    "concurrent3": (CONCURRENT3, (6, 6, 1), (1, 3, 2)),
    "parallel": (PARALLEL, (6, 7, 2), (1, 3, 2)),
    "pencil4": (PENCIL4, (8, 8, 1), (1, 4, 3)),
    "generic4": (GENERIC4, (11, 16, 6), (1, 4, 6)),
}


def _random_arrangement(rng, n):
    while True:
        lines = [(rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(n)]
        try:
            return LineArrangement(lines)
        except (DuplicateLine, ValueError):
            continue


RANDOM = [_random_arrangement(random.Random(s), random.Random(s + 7).randint(1, 5)) for s in range(12)]


def test_normalize_line():
    assert normalize_line(2, 4, -6) == (1, 2, -3)
    assert normalize_line(-1, 0, 3) == (1, 0, -3)
    assert normalize_line(0, -2, 1) == (0, 2, -1)
    assert normalize_line(Fraction(1, 2), "1/3", 0) == (3, 2, 0)
    with pytest.raises(ValueError):
        normalize_line(0, 0, 1)


def test_arrangement_errors():
    with pytest.raises(DuplicateLine):
        LineArrangement([(1, 0, 0), (-2, 0, 0)])
    with pytest.raises(ValueError):
        LineArrangement([])
    with pytest.raises(EmptyOmega):
        OmegaSubset([])
    with pytest.raises(ValueError):
        OmegaSubset([3], n_lines=2)
    poset = face_poset(LineArrangement(SINGLE))
    with pytest.raises(EmptyOmega):
        equivariant_salvetti(poset, None)


@pytest.mark.parametrize("name", CASES)
def test_counts_and_betti(name):
    lines, counts, betti = CASES[name]
    arr = LineArrangement(lines)
    poset = face_poset(arr)
    assert poset.counts() == counts
    # affine line arrangements: chambers - edges + vertices = 1
    c, e, v = counts
    assert c - e + v == 1
    assert combinatorial_betti(arr) == betti
    assert tuple(g for g in homology(salvetti_complex(poset))) == tuple(G.free(b) for b in betti)


@pytest.mark.parametrize("arr", RANDOM)
def test_random_arrangements_betti(arr):
    poset = face_poset(arr)
    c, e, v = poset.counts()
    assert c - e + v == 1
    betti = combinatorial_betti(arr)
    s = salvetti_complex(poset)
    assert tuple(g.rank for g in homology(s)) == betti
    assert all(g.is_torsion_free for g in homology(s))
    # Euler characteristic of the Salvetti complex
    assert s.ranks[0] - s.ranks[1] + s.ranks[2] == betti[0] - betti[1] + betti[2]


def test_face_incidence():
    poset = face_poset(LineArrangement(GENERIC3))
    for e in poset.edges:
        for ch in e.chambers:
            assert poset.is_face_of(e.sign, ch)
    for v in poset.vertices:
        for ch in v.chambers:
            assert poset.is_face_of(v.sign, ch)
        assert len(v.chambers) == 2 * len(v.lines)


def _omegas(n):
    return [OmegaSubset(s) for s in ({0}, set(range(n)), {n - 1})]


@pytest.mark.parametrize("name", CASES)
def test_equivariant_salvetti(name):
    arr = LineArrangement(CASES[name][0])
    poset = face_poset(arr)
    for omega in _omegas(len(arr)):
        eq = validate_equivariant(equivariant_salvetti(poset, omega))
        assert specialize(eq, 1) == salvetti_complex(poset)


def test_single_line_lift():
    poset = face_poset(LineArrangement(SINGLE))
    eq = equivariant_salvetti(poset, OmegaSubset([0]))
    assert homology(specialize(eq, -1)).groups == (G(0, (2,)), G(0), G(0))
    assert homology(double_cover_complex(eq)).groups == (G(1), G(1), G(0))


@pytest.mark.parametrize("name", CASES)
def test_base_chamber_invariance(name):
    arr = LineArrangement(CASES[name][0])
    poset = face_poset(arr)
    omega = OmegaSubset(range(len(arr)))
    default = generic_base_chamber(arr)
    ref = None
    for base in poset.chambers:
        eq = equivariant_salvetti(poset, omega, base)
        profiles = (homology(specialize(eq, -1)), homology(double_cover_complex(eq)))
        if ref is None:
            ref = profiles
        assert profiles == ref
    assert default in poset.chambers


@pytest.mark.parametrize("name", CASES)
def test_pipeline(name):
    lines, _, betti = CASES[name]
    arr = LineArrangement(lines)
    for omega in _omegas(len(arr)):
        r = pipeline(arr, omega)
        assert not r.non_minimal_residue
        assert tuple(r.extra["reduced_ranks"]) == betti
        assert r.theorem_holds and r.mod2_consistent
        assert r.corollary1_consistent and r.corollary2_consistent
        # the reduction never changes the oracle side
        eq = equivariant_salvetti(face_poset(arr), omega)
        assert r.h_cover_direct == homology(double_cover_complex(eq))
        assert r.h_local == homology(specialize(eq, -1))
        assert r.h_cover_direct[1].rank >= betti[1]


def test_pipeline_single_line():
    r = pipeline(LineArrangement(SINGLE), OmegaSubset([0]))
    assert r.h_cover_direct.groups == (G(1), G(1), G(0))


@pytest.mark.parametrize("arr", RANDOM)
def test_pipeline_random(arr):
    rng = random.Random(len(arr.lines) * 1000 + sum(map(sum, arr.lines)))
    omega = OmegaSubset(rng.sample(range(len(arr)), rng.randint(1, len(arr))))
    r = pipeline(arr, omega)
    assert r.mod2_consistent
    assert r.h_cover_direct[1].rank >= len(arr)
    if not r.non_minimal_residue:
        assert r.theorem_holds
