"""Acceptance criteria, one test each. Every test records a PASS/FAIL line
that is printed in the terminal summary (``pytest tests/test_acceptance.py``)."""

import random
import time

import pytest

import conftest
from oracles import minor_gcd

from doublecover.arrangements import (
    LineArrangement,
    OmegaSubset,
    combinatorial_betti,
    face_poset,
    pipeline,
    salvetti_complex,
)
from doublecover.battery import trial_seeds
from doublecover.chain import (
    disguise,
    double_cover_complex,
    homology,
    is_minimal,
    random_minimal,
    specialize,
    unit_reduce,
)
from doublecover.covers import (
    corollary1_backward,
    corollary1_forward,
    corollary2_check,
    cover_homology_direct,
    cover_homology_formula,
    halved_complex,
    local_system_complex,
)
from doublecover.exact_linalg import AbelianGroup, IntMatrix, invariant_factors

pytestmark = pytest.mark.acceptance

SEED = 42
BATTERY = 200
DISGUISED = 100


def record(n, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def battery():
    return [random_minimal(s) for s in trial_seeds(SEED, BATTERY)]


def _max_coeff(c):
    return max((abs(v) for d in c.boundaries for row in d.entries for f in row for _, v in f), default=0)


def test_1_theorem_battery(battery):
    start = time.perf_counter()
    agree = 0
    for s in trial_seeds(SEED, BATTERY):
        c = random_minimal(s)
        if cover_homology_formula(c) == cover_homology_direct(c):
            agree += 1
    elapsed = time.perf_counter() - start
    in_bounds = all(
        c.length <= 4 and max(c.ranks) <= 6 and _max_coeff(c) <= 5 and is_minimal(c) for c in battery
    )
    record(1, agree == BATTERY and elapsed < 60 and in_bounds,
           f"{agree}/{BATTERY} formula == direct, {elapsed:.1f}s (< 60s), bounds respected: {in_bounds}")


def _profiles(c):
    return (homology(specialize(c, 1)), homology(specialize(c, -1)), homology(double_cover_complex(c)))


def test_2_reduction_battery(battery):
    ok = 0
    disguised_non_minimal = 0
    for c, s in zip(battery[:DISGUISED], trial_seeds(SEED + 1, DISGUISED)):
        d = disguise(c, s)
        disguised_non_minimal += not is_minimal(d)
        r = unit_reduce(d)
        if is_minimal(r) and _profiles(r) == _profiles(c):
            ok += 1
    record(2, ok == DISGUISED and disguised_non_minimal == DISGUISED,
           f"{ok}/{DISGUISED} reduced to minimal with profiles unchanged "
           f"({disguised_non_minimal}/{DISGUISED} disguises were non-minimal)")


def test_3_corollary1(battery):
    ok = 0
    for c in battery:
        b1 = c.ranks[1]
        h_local = homology(local_system_complex(c))[1]
        h_cover = cover_homology_direct(c)[1]
        if corollary1_forward(h_local, b1) == h_cover and corollary1_backward(h_cover, b1) == h_local:
            ok += 1
    translation = (corollary1_forward(AbelianGroup(0, (2,) * 9), 10) == AbelianGroup(10)
             and corollary1_backward(AbelianGroup(10), 10) == AbelianGroup(0, (2,) * 9))
    record(3, ok == BATTERY and translation,
           f"{ok}/{BATTERY} forward and backward exact; (Z/2)^9 <-> Z^10 with b1 = 10: {translation}")


def test_4_corollary2(battery):
    ok = sum(
        corollary2_check(homology(local_system_complex(c)), cover_homology_direct(c)) for c in battery
    )
    torsion = sum(any(g.torsion for g in cover_homology_direct(c)) for c in battery)
    record(4, ok == BATTERY, f"{ok}/{BATTERY} biconditional holds ({torsion} covers with torsion)")


def test_5_snf_oracle():
    rng = random.Random(SEED)
    ok = 0
    total = 500
    for _ in range(total):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        diag = invariant_factors(IntMatrix.from_rows(rows))
        good = True
        prod = 1
        for k in range(1, min(m, n) + 1):
            prod *= diag[k - 1]
            if prod != minor_gcd(rows, k):
                good = False
        ok += good
    record(5, ok == total, f"{ok}/{total} invariant-factor products equal k x k minor gcds")


def test_6_h0_contract(battery):
    ok = 0
    for c in battery:
        e = local_system_complex(c)
        if homology(e)[0] == AbelianGroup(0, (2,)) and homology(halved_complex(e))[0] == AbelianGroup():
            ok += 1
    record(6, ok == BATTERY, f"{ok}/{BATTERY} H_0(X, L) = Z/2 and H_0(E, alpha/2) = 0")


ARRANGEMENTS = {
    "single line": [(1, 0, 0)],
    "two crossing lines": [(1, 0, 0), (0, 1, 0)],
    "3 generic lines": [(1, 0, 0), (0, 1, 0), (1, 1, -1)],
    "3 concurrent lines": [(1, 0, 0), (0, 1, 0), (1, 1, 0)],
}


def test_7_arrangements():
    start = time.perf_counter()
    notes = []
    good = True
    for name, lines in ARRANGEMENTS.items():
        arr = LineArrangement(lines)
        betti = combinatorial_betti(arr)
        salvetti = tuple(g.rank for g in homology(salvetti_complex(face_poset(arr))))
        ok = salvetti == betti
        for omega in {frozenset([0]), frozenset(range(len(lines)))}:
            r = pipeline(arr, OmegaSubset(omega))
            ok = ok and bool(r.mod2_consistent)
            if not r.non_minimal_residue:
                ok = ok and bool(r.theorem_holds)
            else:
                notes.append(f"{name}: residue")
        good = good and ok
        notes.append(f"{name} {'ok' if ok else 'FAILED'}")
    elapsed = time.perf_counter() - start
    record(7, good and elapsed < 10, f"{'; '.join(notes)}; {elapsed:.2f}s (< 10s)")


def test_8_double_star_waived():
    line = ("WAIVED criterion 8: double star coordinates are not available in the source material; "
            "the (Z/2)^9 <-> Z^10 translation is checked under criterion 3")
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    pytest.skip(line)
