import math

import mpmath
import pytest

from newman_lab.discrepancy import power_column
from newman_lab.errors import DomainError
from newman_lab.ntheory import primes_up_to
from newman_lab.primes import (
    CANDIDATE,
    NEGATIVE,
    ZERO,
    centered,
    classify_prime,
    classify_primes,
    coset_sum,
    cosets,
    decomposition_sign,
    decomposition_value,
    density_table,
    exact_sign,
    fitted_c1,
    order_mod,
    partition_P,
    power_factor,
    profile,
    pv_coset_count,
    sign_criterion,
    tangent_sum,
)


def test_order_examples():
    assert order_mod(4, 5) == 2
    assert order_mod(2, 7) == 3
    assert order_mod(2, 3) == 2
    with pytest.raises(DomainError):
        order_mod(10, 5)


def test_coset_examples():
    assert cosets(2, 7) == [[1, 2, 4], [3, 5, 6]]
    assert cosets(2, 3) == [[1, 2]]
    assert cosets(4, 5) == [[1, 4], [2, 3]]


def test_tangent_sum_example():
    assert tangent_sum([1, 2], 3, 2) == pytest.approx(-1 / 6, abs=1e-15)
    assert coset_sum([1, 2], 3, 2).real == pytest.approx(2 / 3, abs=1e-12)


def test_centered():
    assert centered(5, 7) == -2 and centered(3, 7) == 3 and centered(0, 7) == 0


@pytest.mark.parametrize("b", [2, 3, 5, 10])
def test_profile_invariants(b):
    for p in primes_up_to(2000):
        if p == 2 or b % p == 0:
            continue
        pr = profile(b, p)
        assert pr.s * pr.t == p - 1
        assert sorted(x for L in pr.cosets for x in L) == list(range(1, p))
        for L in pr.cosets:
            assert {l * b % p for l in L} == set(L)
        for re_direct, tan in zip(pr.real_parts, pr.tangent_sums):
            assert math.isclose(re_direct, pr.s / 4 - tan, rel_tol=1e-9, abs_tol=1e-9)


def test_real_parts_add_up():
    for b, p in [(2, 31), (3, 61), (10, 101)]:
        total = sum(coset_sum(range(1, p), p, b).real for _ in [0])
        assert sum(profile(b, p).real_parts) == pytest.approx(total, abs=1e-9)


def test_partition_examples():
    L = [1, 2, 4, 8, 16, 15, 13, 9]
    parts = partition_P(L, 17, 2)
    assert sorted(x for P in parts for x in P) == sorted(L)
    # direct application of the definition
    small = lambda r: abs(centered(r, 17)) <= 17 / 8
    inv = pow(2, -1, 17)
    assert parts[0] == [l for l in L if small(l) and not small(l * inv)]
    assert parts[2] == [l for l in L if not small(l) and small(l * 2)]


def test_partition_bijection_up_to_1000():
    for b in range(2, 11):
        for p in primes_up_to(1000):
            if p == 2 or b % p == 0:
                continue
            binv = pow(b, -1, p)
            for L in cosets(b, p):
                P1, P2, P3, P4 = partition_P(L, p, b)
                assert len(P1) + len(P2) + len(P3) + len(P4) == len(L)
                assert sorted(l * binv % p for l in P1) == sorted(P3)


def test_decomposition_matches_exact():
    for b in (2, 3, 4):
        for p in primes_up_to(60):
            if p == 2 or b % p == 0:
                continue
            s = order_mod(b, p)
            for k in (1, 2):
                exact = power_column(b, p, 0, 4 * k * s - 2)
                assert abs(decomposition_value(b, p, k) - exact) <= 1e-6 * max(1, abs(exact))
                assert decomposition_sign(b, p, k)[0] == (exact > 0) - (exact < 0)


def test_doubled_variant_disagrees_somewhere():
    misses = []
    for b, p in [(4, 3), (4, 5), (3, 37), (2, 7)]:
        s = order_mod(b, p)
        exact = power_column(b, p, 0, 4 * s - 2)
        if abs(decomposition_value(b, p, 1, doubled=True) - exact) > 1e-6 * max(1, abs(exact)):
            misses.append((b, p))
    assert misses == [(4, 3), (4, 5), (3, 37)]


def test_power_factor_nonnegative():
    # a real non-negative factor needs b != 1 (mod p)
    for b in (2, 3, 5):
        for p in primes_up_to(80):
            if p == 2 or b % p == 0 or (b - 1) % p == 0:
                continue
            for L in cosets(b, p):
                for k in (1, 2, 3):
                    with mpmath.workdps(40):
                        f = power_factor(b, p, L[0], k)
                        assert abs(f.imag) <= 1e-25 * max(1, abs(f))
                        assert f.real >= -1e-25


def test_sign_criterion_examples():
    for v in sign_criterion(2, 3, [1, 2, 3]):
        assert v.sign == 1 and v.agrees
    vs = sign_criterion(2, 31, [1, 2, 3])
    assert [v.exponent for v in vs] == [18, 38, 58]
    assert all(v.agrees for v in vs)
    assert exact_sign(2, 31, 1) == vs[0].sign
    with pytest.raises(DomainError):
        sign_criterion(2, 7, [0])


def test_pv_counts():
    for p in primes_up_to(3000):
        if p < 11:
            continue
        for b in (2, 3, 5, 10):
            if b % p == 0:
                continue
            counts = pv_coset_count(b, p)
            w = counts[0].window
            assert sum(c.count for c in counts) == min(p - 1, math.floor(w))
            if len(counts) == 1:
                assert counts[0].exceeds


def test_classification_examples():
    rows = classify_primes(2, 10**4, (1, 2), jobs=1)
    by_p = {r.p: r for r in rows}
    assert by_p[3].verdict == CANDIDATE
    assert by_p[11].verdict == ZERO
    assert all(r.s * r.t == r.p - 1 for r in rows)
    c1 = fitted_c1(rows)
    assert all(r.verdict == NEGATIVE for r in rows if r.t == 1 and r.p > max(c1, 11))
    with pytest.raises(DomainError):
        classify_primes(2, 100, (1,))


def test_exact_and_decomposition_routes_agree():
    for p in (257, 263, 331):
        a = classify_prime(2, p, (1, 2), exact_limit=10**6)
        d = classify_prime(2, p, (1, 2), exact_limit=0)
        assert a.signs == d.signs and a.method == "exact" and "decomposition" in d.method


def test_density_table_and_jobs_independence():
    serial = classify_primes(2, 3000, (1, 2), jobs=1)
    parallel = classify_primes(2, 3000, (1, 2), jobs=2)
    assert serial == parallel
    pts = density_table(serial, [1000, 3000])
    assert pts[0].primes == 167 and pts[0].candidates == 27
    assert pts[1].fraction <= pts[0].fraction
