"""Executable acceptance criteria.

Each criterion returns a ``CriterionResult``; ``run`` times it.  ``quick``
shrinks the ranges for a smoke run and is never used by the test suite.
"""

from __future__ import annotations

import contextlib
import io
import math
import random
import time
from dataclasses import dataclass
from math import gcd

import mpmath

from . import asymptotics, primes, theorems
from .digits import rebase
from .discrepancy import (
    DiscrepancyQuery,
    bruteforce_table,
    character_vector,
    eval_bruteforce,
    eval_recursive,
    power_column,
    recursive_vector,
)
from .ntheory import primes_up_to


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:>2} {self.name}: {self.detail}"


def _result(n: int, passed: bool, detail: str) -> CriterionResult:
    return CriterionResult(n, CRITERIA[n][0], bool(passed), detail)


def oracle_equivalence(quick: bool = False, jobs: int = 1) -> CriterionResult:
    digits = 8 if quick else 12
    count = 1 << digits
    mismatches, checked = [], 0
    for b in range(2, 11):
        for q in range(2, 31):
            table = bruteforce_table(b, q, count)
            for j in range(1, count):
                bound = rebase(j, b)
                brute = table[j].tolist()
                if recursive_vector(b, q, bound) != brute or character_vector(b, q, bound) != brute:
                    mismatches.append((b, q, bound.value))
                checked += 1
    return _result(1, not mismatches,
                   f"{checked} bounds x all residues, {len(mismatches)} mismatches"
                   + (f", first {mismatches[0]}" if mismatches else ""))


def newman_positivity(quick: bool = False, jobs: int = 1) -> CriterionResult:
    limit = 10**4 if quick else 10**5
    bad = [n for n in range(1, limit + 1)
           if eval_recursive(DiscrepancyQuery.make(2, 3, 0, n)) <= 0]
    rng = random.Random(20240531)
    spots = [rng.randint(1, limit) for _ in range(1000)]
    spot_bad = [n for n in spots
                if eval_bruteforce(DiscrepancyQuery.make(2, 3, 0, n))
                != eval_recursive(DiscrepancyQuery.make(2, 3, 0, n))]
    return _result(2, not bad and not spot_bad,
                   f"n <= {limit}: {len(bad)} non-positive; {len(spots)} brute spot checks, "
                   f"{len(spot_bad)} disagree")


def theorem1_scans(quick: bool = False, jobs: int = 1) -> CriterionResult:
    from .cli import main

    digits = 12 if quick else 16
    notes, ok = [], True
    for b, q in ((4, 5), (4, 10), (6, 7), (8, 9)):
        thresholds = []
        for fam in ("center", "plus"):
            rep = theorems.scan_theorem1(b, q, 0, fam, digits, jobs=jobs)
            thresholds.append(rep.threshold_digits)
            ok &= not rep.inconclusive and rep.threshold_digits <= 6
        with contextlib.redirect_stdout(io.StringIO()), contextlib.redirect_stderr(io.StringIO()):
            code = main(["scan", "--theorem", "1", "--base", str(b), "--mod", str(q),
                         "--digits", str(digits), "--jobs", str(jobs)])
        ok &= code == 0
        notes.append(f"({b},{q}) thresholds {thresholds} exit {code}")
    return _result(3, ok, "; ".join(notes))


def theorem2_scans(quick: bool = False, jobs: int = 1) -> CriterionResult:
    digits = 10 if quick else 12
    notes, ok = [], True
    for b, d in ((8, 3), (8, 9), (14, 5), (14, 15)):
        reps = theorems.scan_theorem2(b, d, digits, jobs=jobs)
        ok &= not any(r.inconclusive for r in reps)
        notes.append(f"({b},{d}) thresholds {[r.threshold_digits for r in reps]}")
    return _result(4, ok, "; ".join(notes))


def asymptotic_envelope(quick: bool = False, jobs: int = 1) -> CriterionResult:
    k_fit, k_max = 40, (60 if quick else 80)
    notes, ok = [], True
    for b, q in ((2, 3), (4, 5), (6, 7)):
        m40 = asymptotics.fit_envelope(b, q, k_fit)
        res = asymptotics.residuals(b, q, k_max)
        m_full = max(r.ratio for r in res)
        out = sum(r.ratio > m40 for r in res)
        stable = m_full <= 1.1 * m40 if m40 else m_full == 0
        ok &= out == 0 and stable
        if (b, q) == (2, 3):
            nonzero = sum(r.diff != 0 for r in res)
            ok &= nonzero == 0
            notes.append(f"(2,3) nonzero differences {nonzero}")
        else:
            notes.append(f"({b},{q}) M40={m40:.6g} M{k_max}={m_full:.6g} outside {out}")
    return _result(5, ok, "; ".join(notes))


def gamma_strictness(quick: bool = False, jobs: int = 1) -> CriterionResult:
    worst, pairs, bad = math.inf, 0, []
    for q in range(3, 61):
        for b in range(2, q, 2):
            if q % (b + 1) or gcd(b, q) != 1:
                continue
            s = asymptotics.multiplicative_order(b, q)
            gap = asymptotics.beta(b // 2) ** s - asymptotics.gamma(b, q)
            pairs += 1
            worst = min(worst, gap)
            if not gap > asymptotics.MARGIN:
                bad.append((b, q))
    return _result(6, not bad, f"{pairs} pairs, smallest gap {worst:.6g}, failures {bad}")


def trig_sweep(quick: bool = False, jobs: int = 1) -> CriterionResult:
    reports = [asymptotics.check_trig_lemma(l, 10_000) for l in range(1, 9)]
    failed = [r.l for r in reports if not r.passed]
    margin = min(r.min_margin for r in reports)
    return _result(7, not failed, f"l=1..8, min margin {margin:.3g}, failing l {failed}")


def corollary_decay(quick: bool = False, jobs: int = 1) -> CriterionResult:
    target = math.log(asymptotics.beta(1) / asymptotics.beta(2))
    steps = theorems.corollary_decay(4, 2, 40, 60)
    worst = max(abs(v - target) / abs(target) for _, v in steps)
    r40 = theorems.power_ratio(4, 2, 40)
    return _result(8, worst <= 0.05 and r40 < 0.05,
                   f"target {target:.6f}, worst relative deviation {worst:.4f}, ratio(k=40) {r40:.4f}")


def coset_identities(quick: bool = False, jobs: int = 1) -> CriterionResult:
    limit = 200 if quick else 500
    checked, bad = 0, []
    for b in range(2, 11):
        for p in primes_up_to(limit):
            if p == 2 or b % p == 0:
                continue
            s = primes.order_mod(b, p)
            cs = primes.cosets(b, p)
            binv = pow(b, -1, p)
            if s * len(cs) != p - 1 or sorted(x for L in cs for x in L) != list(range(1, p)):
                bad.append((b, p, "st"))
            for L in cs:
                direct = primes.coset_sum(L, p, b).real
                closed = s / 4 - primes.tangent_sum(L, p, b)
                if not math.isclose(direct, closed, rel_tol=1e-9, abs_tol=1e-9):
                    bad.append((b, p, "real part"))
                P1, _, P3, _ = primes.partition_P(L, p, b)
                if sorted(l * binv % p for l in P1) != sorted(P3):
                    bad.append((b, p, "bijection"))
                checked += 1
    return _result(9, not bad, f"{checked} cosets, failures {bad[:5]}")


def decomposition_consistency(quick: bool = False, jobs: int = 1) -> CriterionResult:
    limit = 41 if quick else 101
    fails = {False: 0, True: 0}
    cases = 0
    for b in (2, 3, 4):
        for p in primes_up_to(limit):
            if p == 2 or b % p == 0:
                continue
            s = primes.order_mod(b, p)
            for k in (1, 2, 3):
                exact = power_column(b, p, 0, 4 * k * s - 2)
                cases += 1
                for doubled in (False, True):
                    approx = primes.decomposition_value(b, p, k, doubled)
                    if abs(approx - exact) > mpmath.mpf(1e-6) * max(abs(exact), 1):
                        fails[doubled] += 1
    chosen = [name for name, d in (("m", False), ("2m", True)) if fails[d] == 0]
    return _result(10, bool(chosen),
                   f"{cases} cases; mismatches m:{fails[False]} 2m:{fails[True]}; selected {chosen}")


def density_trend(quick: bool = False, jobs: int = 1) -> CriterionResult:
    xs = (10**3, 10**4) if quick else (10**3, 10**4, 10**5)
    rows = primes.classify_primes(2, xs[-1], (1, 2), jobs=jobs)
    pts = primes.density_table(rows, xs)
    fr = [d.fraction for d in pts]
    ok = all(a >= b for a, b in zip(fr, fr[1:])) and fr[-1] < 0.5
    return _result(11, ok, ", ".join(f"x={d.x}: {d.candidates}/{d.primes}={d.fraction:.4f}" for d in pts))


CRITERIA = {
    1: ("oracle equivalence", oracle_equivalence),
    2: ("positivity of S_{3,0} in base 2", newman_positivity),
    3: ("base-b scans for q divisible by b+1", theorem1_scans),
    4: ("divisor scans", theorem2_scans),
    5: ("asymptotic envelope", asymptotic_envelope),
    6: ("gamma strictness", gamma_strictness),
    7: ("trigonometric sweep", trig_sweep),
    8: ("cross-base ratio decay", corollary_decay),
    9: ("coset identities", coset_identities),
    10: ("decomposition consistency", decomposition_consistency),
    11: ("candidate-positive density trend", density_trend),
}


def run(n: int, quick: bool = False, jobs: int = 1) -> CriterionResult:
    start = time.perf_counter()
    res = CRITERIA[n][1](quick=quick, jobs=jobs)
    res.seconds = time.perf_counter() - start
    return res
