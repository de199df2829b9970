"""Seeded verification battery over random minimal complexes.

Trial seeds are the successive ``getrandbits(64)`` draws of
``random.Random(seed)`` (Mersenne Twister), so a transcript is fixed by the
master seed alone.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields

from .chain import disguise, double_cover_complex, homology, is_minimal, random_minimal, specialize, unit_reduce
from .covers import verify_theorem
from .exact_linalg import AbelianGroup

CHECKS = ("theorem", "corollary1", "corollary2", "h0", "mod2", "reduction")


def trial_seeds(seed: int, trials: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.getrandbits(64) for _ in range(trials)]


@dataclass(frozen=True)
class TrialResult:
    index: int
    seed: int
    ranks: tuple[int, ...]
    theorem: bool
    corollary1: bool
    corollary2: bool
    h0: bool
    mod2: bool
    reduction: bool


def _profiles(c):
    return (
        homology(specialize(c, 1)),
        homology(specialize(c, -1)),
        homology(double_cover_complex(c)),
    )


def run_trial(index: int, seed: int, max_degree: int = 4, max_rank: int = 6, coeff_bound: int = 5) -> TrialResult:
    c = random_minimal(seed, max_degree, max_rank, coeff_bound)
    rep = verify_theorem(c)
    h0 = rep.h_local[0] == AbelianGroup(0, (2,)) and rep.h_halved[0] == AbelianGroup()
    d = disguise(c, seed)
    r = unit_reduce(d)
    reduction = is_minimal(r) and _profiles(r) == _profiles(d) == _profiles(c)
    return TrialResult(
        index, seed, c.ranks,
        rep.theorem_holds, rep.corollary1_consistent, rep.corollary2_consistent,
        h0, rep.mod2_consistent, reduction,
    )


def _run(args):
    return run_trial(*args)


@dataclass(frozen=True)
class BatterySummary:
    trials: int
    passed: dict
    failures: tuple[TrialResult, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        p, n = self.passed, self.trials
        return [
            f"{p['theorem']}/{n} theorem, {p['corollary1']}/{n} corollary1, {p['corollary2']}/{n} corollary2",
            f"{p['h0']}/{n} h0, {p['mod2']}/{n} mod2, {p['reduction']}/{n} reduction",
        ]


def run_battery(seed: int, trials: int, max_degree: int = 4, max_rank: int = 6,
                coeff_bound: int = 5, workers: int = 1) -> tuple[BatterySummary, list[TrialResult]]:
    jobs = [(i, s, max_degree, max_rank, coeff_bound) for i, s in enumerate(trial_seeds(seed, trials))]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run, jobs, chunksize=8))
    else:
        results = [_run(j) for j in jobs]
    passed = {k: sum(1 for r in results if getattr(r, k)) for k in CHECKS}
    failures = tuple(r for r in results if not all(getattr(r, k) for k in CHECKS))
    return BatterySummary(trials, passed, failures), results


def trial_to_json(r: TrialResult) -> dict:
    return {f.name: (list(v) if isinstance(v := getattr(r, f.name), tuple) else v) for f in fields(r)}
