import math

import pytest

from newman_lab.asymptotics import beta
from newman_lab.discrepancy import power_column
from newman_lab.errors import DomainError
from newman_lab.theorems import (
    corollary_decay,
    corollary_ratio,
    power_ratio,
    recheck_violations,
    scan_theorem1,
    scan_theorem2,
    sign_scan,
)


@pytest.mark.parametrize("b,q", [(4, 5), (4, 10), (6, 7), (8, 9)])
def test_theorem1_center_and_plus(b, q):
    c = scan_theorem1(b, q, 0, "center", 14)
    p = scan_theorem1(b, q, 0, "plus", 14)
    assert c.evaluated == p.evaluated == 2**14 - 1
    assert c.threshold_digits <= 6 and not c.inconclusive
    assert p.threshold_digits <= 6 and not p.inconclusive
    assert c.hypotheses_met == (math.gcd(b, q) == 1)


def test_newman_scan_has_no_violations():
    assert scan_theorem1(2, 3, 0, "center", 18).violations == []
    assert scan_theorem2(2, 3, 16)[0].violations == []


def test_base2_minus_family_only_nonpositive():
    # the class 2 mod 3 count vanishes exactly at odd powers of 2
    rep = scan_theorem1(2, 3, 0, "minus", 14)
    assert rep.asserted and rep.inconclusive
    assert all(s == 0 for _, s in rep.violations)
    assert all(power_column(2, 3, 2, k) == 0 for k in range(1, 40, 2))
    assert sign_scan(2, 3, 2, "<=0", 14).violations == []


def test_minus_family_recorded_for_larger_b():
    rep = scan_theorem1(4, 5, 0, "minus", 12)
    assert not rep.asserted


def test_odd_base_parity_scan():
    assert scan_theorem1(3, 4, 0, "center", 12).violations == []
    assert scan_theorem1(3, 4, 0, "plus", 12).threshold_digits <= 2


@pytest.mark.parametrize("b,d", [(8, 3), (8, 9), (14, 5), (14, 15)])
def test_theorem2(b, d):
    reps = scan_theorem2(b, d, 10)
    assert [r.expected_sign for r in reps] == ["+", "-", "<=0" if d <= 3 else "-"]
    assert not any(r.inconclusive for r in reps)
    if d == 3:
        assert reps[2].violations == []


def test_domain_errors():
    with pytest.raises(DomainError):
        scan_theorem1(4, 7)
    with pytest.raises(DomainError):
        scan_theorem2(8, 4)
    with pytest.raises(DomainError):
        scan_theorem1(4, 5, digit_limit=25)
    with pytest.raises(DomainError):
        corollary_ratio(2, 2)


def test_violations_recheck_by_brute_force():
    for rep in (scan_theorem1(4, 10, 0, "minus", 12), scan_theorem1(6, 7, 0, "plus", 12),
                scan_theorem2(14, 15, 10)[2]):
        assert rep.violations
        assert recheck_violations(rep) == []


def test_threshold_stable_under_extension():
    for b, q, fam in [(4, 5, "plus"), (4, 10, "minus"), (8, 9, "minus")]:
        short = scan_theorem1(b, q, 0, fam, 10)
        long = scan_theorem1(b, q, 0, fam, 14)
        assert long.violations[: len(short.violations)] == short.violations
        assert long.violations_from(short.threshold_digits) == []


def test_report_serialization():
    d = scan_theorem1(4, 5, 0, "plus", 8).to_dict()
    assert d["violation_count"] == len(d["violations"]) > 0
    assert d["scan_to"] == 4**8


def test_corollary_ratio_table():
    rows = corollary_ratio(4, 2, k_limit=30, sample_digits=8)
    assert all(r.ratio is not None and r.ratio > 0 for r in rows if r.k >= 3)
    big = [r for r in rows if r.n == 1 << 30][0]
    assert big.ratio == pytest.approx(power_ratio(4, 2, 30))


def test_corollary_decay_rate():
    target = math.log(beta(1) / beta(2))
    steps = corollary_decay(4, 2, 40, 60)
    assert all(abs(v - target) <= 0.05 * abs(target) for _, v in steps)
    assert power_ratio(4, 2, 40) < 0.05
