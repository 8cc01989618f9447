"""Exhaustive sign scans over bounds in A_b, and the cross-base ratio.

A scan evaluates S_{q,i}(N) at every N in A_b with at most ``digit_limit``
base-b digits.  S only changes at elements of A_b, so this covers every
integer bound below ``b**digit_limit``.  "Sufficiently large" becomes an
empirical threshold: the number of digits past which no violation of the
expected sign was seen.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd

from .asymptotics import beta
from .digits import BaseBNumeral, ResidueClass, rebase
from .discrepancy import (
    DiscrepancyQuery,
    eval_bruteforce,
    eval_recursive,
    power_column,
    recursive_column,
)
from .errors import DomainError

MAX_SCAN_DIGITS = 24

FAMILIES = {
    "center": 0, "v(b+1)": 0,
    "plus": 1, "v(b+1)+1": 1,
    "minus": -1, "v(b+1)-1": -1,
}

_CHECKS = {
    "+": lambda s: s > 0,
    "-": lambda s: s < 0,
    "<=0": lambda s: s <= 0,
}


@dataclass
class SignScanReport:
    base: int
    modulus: int
    family: str
    residue: int
    expected_sign: str
    asserted: bool
    digit_limit: int
    evaluated: int
    violations: list[tuple[int, int]] = field(default_factory=list)
    hypotheses_met: bool = True

    @property
    def scan_from(self) -> int:
        return 1

    @property
    def scan_to(self) -> int:
        return self.base**self.digit_limit

    @property
    def threshold_digits(self) -> int:
        """Least digit count D such that no N with >= D digits violates."""
        if not self.violations:
            return 1
        return BaseBNumeral.from_int(self.violations[-1][0], self.base).length + 1

    @property
    def threshold(self) -> int:
        """Least N_0 in A_b past the last violation (1 when there is none)."""
        if not self.violations:
            return 1
        last = BaseBNumeral.from_int(self.violations[-1][0], self.base)
        return rebase(last.binary_index + 1, self.base).value

    @property
    def inconclusive(self) -> bool:
        return self.threshold_digits > self.digit_limit

    def violations_from(self, digits: int) -> list[tuple[int, int]]:
        b = self.base
        return [(n, s) for n, s in self.violations if BaseBNumeral.from_int(n, b).length >= digits]

    def summary(self) -> dict:
        return {
            "base": self.base, "modulus": self.modulus, "family": self.family,
            "residue": self.residue, "expected_sign": self.expected_sign,
            "asserted": self.asserted, "digit_limit": self.digit_limit,
            "scan_from": self.scan_from, "scan_to": self.scan_to,
            "evaluated": self.evaluated, "violation_count": len(self.violations),
            "threshold": self.threshold, "threshold_digits": self.threshold_digits,
            "inconclusive": self.inconclusive, "hypotheses_met": self.hypotheses_met,
        }

    def to_dict(self) -> dict:
        d = self.summary()
        d["violations"] = [list(v) for v in self.violations]
        return d


def _scan_block(args) -> tuple[int, list[tuple[int, int]]]:
    """Numerals whose leading exponent is ``top``: there are ``2**top`` of them."""
    b, q, i, top, expected = args
    ok = _CHECKS[expected]
    bpow = [pow(b, k, q) for k in range(top + 1)]
    cols = [recursive_column(b, q, k) for k in range(top + 1)]
    lead = cols[top][i]
    off0 = bpow[top]
    top_value = b**top
    bval = [b**k for k in range(top)]
    bad = []
    for low in range(1 << top):
        total, off, sign = lead, off0, -1
        value = top_value
        x = low
        # walk remaining exponents from high to low
        while x:
            hb = x.bit_length() - 1
            total += sign * cols[hb][(i - off) % q]
            off = (off + bpow[hb]) % q
            value += bval[hb]
            sign = -sign
            x ^= 1 << hb
        if not ok(total):
            bad.append((value, total))
    bad.sort()
    return 1 << top, bad


def sign_scan(b: int, q: int, i: int, expected: str, digit_limit: int, *,
              family: str = "", asserted: bool = True, hypotheses_met: bool = True,
              jobs: int = 1) -> SignScanReport:
    """Check the sign of ``S_{q,i}(N)`` for all ``N`` in A_b below ``b**digit_limit``."""
    if b < 2 or q < 1:
        raise DomainError("need b >= 2 and q >= 1")
    if not 1 <= digit_limit <= MAX_SCAN_DIGITS:
        raise DomainError(f"digit_limit must be in [1, {MAX_SCAN_DIGITS}]")
    if expected not in _CHECKS:
        raise DomainError(f"unknown expected sign {expected!r}")
    i %= q
    tasks = [(b, q, i, top, expected) for top in range(digit_limit)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan_block, tasks))
    else:
        parts = [_scan_block(t) for t in tasks]
    evaluated = sum(n for n, _ in parts)
    violations = [v for _, bad in parts for v in bad]
    return SignScanReport(b, q, family or str(i), i, expected, asserted, digit_limit,
                          evaluated, violations, hypotheses_met)


def scan_theorem1(b: int, q: int, v: int = 0, family: str = "center",
                  digit_limit: int = 16, jobs: int = 1) -> SignScanReport:
    """Scan one residue family of the base-b theorem for moduli divisible by b+1.

    ``center`` (i = v(b+1)) expects S > 0, ``plus`` expects S < 0, and
    ``minus`` expects S < 0 but is only asserted for b <= 3; for larger b
    the minus family is recorded as data.  Moduli sharing a factor with b
    are scanned but flagged via ``hypotheses_met``.
    """
    if b < 2:
        raise DomainError("base must be >= 2")
    if q % (b + 1):
        raise DomainError(f"{b + 1} does not divide {q}")
    if family not in FAMILIES:
        raise DomainError(f"unknown family {family!r}; use one of {sorted(FAMILIES)}")
    shift = FAMILIES[family]
    i = v * (b + 1) + shift
    if shift == 0:
        expected, asserted = "+", True
    elif shift == 1:
        expected, asserted = "-", True
    else:
        expected, asserted = "-", b <= 3
    return sign_scan(b, q, i, expected, digit_limit, family=family, asserted=asserted,
                     hypotheses_met=gcd(b, q) == 1, jobs=jobs)


def scan_theorem2(b: int, d: int, digit_limit: int = 12, jobs: int = 1) -> list[SignScanReport]:
    """Residues 0, 1, -1 modulo a divisor ``d > 1`` of ``b + 1``."""
    if d <= 1 or (b + 1) % d:
        raise DomainError(f"d={d} must be a divisor > 1 of b+1={b + 1}")
    minus = "<=0" if d <= 3 else "-"
    return [
        sign_scan(b, d, 0, "+", digit_limit, family="0", jobs=jobs),
        sign_scan(b, d, 1, "-", digit_limit, family="1", jobs=jobs),
        sign_scan(b, d, -1, minus, digit_limit, family="-1", jobs=jobs),
    ]


def recheck_violations(report: SignScanReport) -> list[tuple[int, int, int]]:
    """Re-evaluate each violation by brute force; returns mismatches ``(N, S, brute)``."""
    out = []
    for n, s in report.violations:
        brute = eval_bruteforce(DiscrepancyQuery.make(report.base, report.modulus, report.residue, n))
        if brute != s:
            out.append((n, s, brute))
    return out


# ---------------------------------------------------------------- cross-base ratio

@dataclass
class RatioRow:
    n: int
    k: int
    numerator: int
    denominator: int
    ratio: float | None
    num_scaled: float
    den_scaled: float
    flagged: bool


def _eval_numeral(b: int, bound: BaseBNumeral) -> int:
    return eval_recursive(DiscrepancyQuery(b, b + 1, ResidueClass(b + 1, 0), bound))


def corollary_ratio(b1: int, b2: int, k_limit: int = 60, sample_digits: int = 16) -> list[RatioRow]:
    """``S^{(b2)}_{b2+1,0}(b2(n)) / S^{(b1)}_{b1+1,0}(b1(n))`` over sampled ``n``.

    ``b(n)`` reads the binary digits of ``n`` in base b.  Samples are every
    ``n`` with at most ``sample_digits`` binary digits, then ``n = 2**k`` for
    larger ``k`` up to ``k_limit``.  ``num_scaled``/``den_scaled`` divide each
    side by ``beta**k`` with ``k`` the binary length of ``n``; bounded, positive
    columns there are the two-sided growth constants.
    """
    if b1 <= b2:
        raise DomainError("need b1 > b2")
    if b1 % 2 or b2 % 2 or b2 < 2:
        raise DomainError("both bases must be even")
    ns = list(range(1, 1 << sample_digits)) + [1 << k for k in range(sample_digits, k_limit + 1)]
    beta1, beta2 = beta(b1 // 2), beta(b2 // 2)
    rows = []
    for n in ns:
        k = n.bit_length()
        num = _eval_numeral(b2, rebase(n, b2))
        den = _eval_numeral(b1, rebase(n, b1))
        rows.append(RatioRow(
            n, k, num, den,
            num / den if den else None,
            num / beta2**k, den / beta1**k,
            den == 0,
        ))
    return rows


def power_ratio(b1: int, b2: int, k: int) -> float:
    """The ratio along ``n = 2**k``, straight from the power columns."""
    return power_column(b2, b2 + 1, 0, k) / power_column(b1, b1 + 1, 0, k)


def corollary_decay(b1: int, b2: int, k_from: int = 40, k_to: int = 60) -> list[tuple[int, float]]:
    """Per-step decay of the ratio along ``n = 2**k``, averaged over two steps.

    Main terms alternate between even- and odd-``k`` forms, so single steps
    swing around the rate; the two-step average ``log(r_{k+2}/r_k) / 2``
    is compared with ``log(beta(b2/2) / beta(b1/2))``.
    """
    out = []
    for k in range(k_from, k_to - 1):
        out.append((k, (math.log(power_ratio(b1, b2, k + 2)) - math.log(power_ratio(b1, b2, k))) / 2))
    return out
