"""Growth rates and error envelopes for S_{q,i}(b**k) with b = 2l even.

The dominant characters are ``m = +-q*l/(2l+1)``; their contribution grows
like ``beta**k`` with ``beta = 2 sin(pi*l/(2l+1))``.  Every other character
contributes at most ``C * gamma**(k/s)`` where ``gamma`` is the largest
modulus of the one-period product over non-dominant ``m``.  The constant is
not given in closed form; ``fit_envelope`` measures it from exact values.

Floating-point routines return doubles.  Comparisons against exact
integers (fits, bounds) run in mpmath at a precision scaled to ``k``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from math import gcd

import mpmath

from .discrepancy import power_product
from .errors import DomainError, PropertyViolation
from .ntheory import multiplicative_order

MARGIN = 1e-9


def beta(l: int) -> float:
    if l < 1:
        raise DomainError("l must be >= 1")
    return 2 * math.sin(math.pi * l / (2 * l + 1))


def _validate(b: int, q: int) -> int:
    if b < 2 or b % 2:
        raise DomainError(f"base must be even and >= 2, got {b}")
    if q % (b + 1):
        raise DomainError(f"{b + 1} does not divide {q}")
    if gcd(b, q) != 1:
        raise DomainError(f"gcd({b}, {q}) != 1")
    return b // 2


def dominant_residues(b: int, q: int) -> tuple[int, int]:
    l = _validate(b, q)
    m = q * l // (2 * l + 1)
    return m, (-m) % q


def cycle_modulus(b: int, q: int, m: int) -> float:
    """``|prod_{p<s} (1 - zeta_q**(m b**p))|`` over one period ``s = ord_q(b)``."""
    s = multiplicative_order(b, q)
    prod = 1.0 + 0j
    x = m % q
    for _ in range(s):
        prod *= 1 - cmath.exp(2j * math.pi * x / q)
        x = x * b % q
    return abs(prod)


def gamma(b: int, q: int) -> float:
    """Largest one-period product modulus over the non-dominant characters.

    ``m = 0`` always gives 0 and is skipped, so the value is exactly 0.0
    when every nonzero ``m`` is dominant.
    """
    dom = set(dominant_residues(b, q))
    return max((cycle_modulus(b, q, m) for m in range(1, q) if m not in dom), default=0.0)


def _main_term(b: int, q: int, i: int, k: int, pi, sin, cos):
    l = b // 2
    bt = 2 * sin(pi * l / (2 * l + 1))
    c0 = cos(2 * pi * i * l / (2 * l + 1))
    if k % 2 == 0:
        return 2 * c0 * bt**k / q
    c1 = cos(2 * pi * (i - 1) * l / (2 * l + 1))
    return 2 * (c0 - c1) * bt ** (k - 1) / q


def main_term(b: int, q: int, i: int, k: int) -> float:
    """Contribution of the two dominant characters to ``S_{q,i}(b**k)``."""
    _validate(b, q)
    if k < 0:
        raise DomainError("k must be >= 0")
    return _main_term(b, q, i, k, math.pi, math.sin, math.cos)


def main_term_mp(b: int, q: int, i: int, k: int):
    """``main_term`` at the current mpmath precision."""
    _validate(b, q)
    return _main_term(b, q, i, k, mpmath.pi, mpmath.sin, mpmath.cos)


def _dps_for(k: int) -> int:
    return 40 + int(k * math.log10(2))


@dataclass
class Residual:
    k: int
    i: int
    exact: int
    main: float
    diff: float
    scale: float  # gamma ** (k/s)

    @property
    def ratio(self) -> float:
        if self.scale == 0:
            return 0.0 if self.diff == 0 else math.inf
        return abs(self.diff) / self.scale


def residuals(b: int, q: int, k_max: int, k_min: int = 1) -> list[Residual]:
    """Exact ``S(b**k)`` against the main term for ``k_min <= k <= k_max``, all ``i``.

    When ``gamma == 0`` a difference below the working precision is reported
    as exactly 0.
    """
    _validate(b, q)
    s = multiplicative_order(b, q)
    g = gamma(b, q)
    out = []
    for k in range(k_min, k_max + 1):
        col = power_product(b, q, k).coefficients
        with mpmath.workdps(_dps_for(k)):
            scale = mpmath.mpf(g) ** (mpmath.mpf(k) / s) if g else mpmath.mpf(0)
            for i in range(q):
                main = main_term_mp(b, q, i, k)
                diff = col[i] - main
                if abs(diff) < mpmath.mpf(10) ** (-20):
                    diff = mpmath.mpf(0)
                out.append(Residual(k, i, col[i], float(main), float(diff), float(scale)))
    return out


def fit_envelope(b: int, q: int, k_max: int) -> float:
    """Smallest M with ``|S(b**k) - main_term| <= M gamma**(k/s)`` for ``1 <= k <= k_max``."""
    _validate(b, q)
    s = multiplicative_order(b, q)
    if k_max < 4 * s:
        raise DomainError(f"k_max must be >= 4s = {4 * s}")
    worst = 0.0
    for r in residuals(b, q, k_max):
        if r.scale == 0 and r.diff != 0:
            raise PropertyViolation(
                f"gamma = 0 but S - main_term = {r.diff} at k={r.k}, i={r.i}"
            )
        worst = max(worst, r.ratio)
    return worst


@dataclass
class AsymptoticProfile:
    b: int
    l: int
    q: int
    s: int
    beta: float
    gamma: float
    fitted_m: float

    def __post_init__(self) -> None:
        if self.b != 2 * self.l:
            raise DomainError("b must equal 2l")
        if not self.gamma < self.beta**self.s:
            raise PropertyViolation(f"gamma {self.gamma} is not below beta**s")
        if not math.isfinite(self.fitted_m) or self.fitted_m < 0:
            raise DomainError("fitted M must be finite and non-negative")


def asymptotic_profile(b: int, q: int, k_max: int = 40) -> AsymptoticProfile:
    l = _validate(b, q)
    return AsymptoticProfile(
        b=b, l=l, q=q, s=multiplicative_order(b, q),
        beta=beta(l), gamma=gamma(b, q), fitted_m=fit_envelope(b, q, k_max),
    )


# ---------------------------------------------------------------- sign and size bounds

def envelope_bounds(b: int, q: int, i: int, k: int, fitted_m: float):
    """Tightest lower/upper bound on ``S_{q,i}(b**k)`` for the class of ``i``.

    Returns mpmath numbers.  The generic two-sided bound always applies; the
    others depend on ``i mod (b+1)``:

    * ``0``: ``S >= beta**(k+1)/q - E``
    * ``1``: ``S <= 2 cos(2 pi l/(2l+1)) beta**k / q + E``
    * ``-1``: ``S <= 2 (cos(2 pi l/(2l+1)) - cos(4 pi l/(2l+1))) beta**(k-1) / q + E``
    * any: ``|S| <= 2 beta**k / q + E``
    * ``+-1`` with ``l >= 2``: ``S <= E``
    * ``0, +-2`` with ``l >= 2``: ``S >= -E``

    where ``E = M gamma**(k/s)``.
    """
    l = _validate(b, q)
    if k < 1:
        raise DomainError("bounds are stated for k >= 1")
    s = multiplicative_order(b, q)
    n = 2 * l + 1
    c = i % n
    with mpmath.workdps(_dps_for(k)):
        pi = mpmath.pi
        bt = 2 * mpmath.sin(pi * l / n)
        a = 2 * pi * l / n
        E = mpmath.mpf(fitted_m) * mpmath.mpf(gamma(b, q)) ** (mpmath.mpf(k) / s)
        generic = 2 * bt**k / q + E
        lowers, uppers = [-generic], [generic]
        if c == 0:
            lowers.append(bt ** (k + 1) / q - E)
        if c == 1:
            uppers.append(2 * mpmath.cos(a) * bt**k / q + E)
        if c == n - 1:
            uppers.append(2 * (mpmath.cos(a) - mpmath.cos(2 * a)) * bt ** (k - 1) / q + E)
        if l >= 2:
            if c in (1, n - 1):
                uppers.append(E)
            if c in (0, 2, n - 2):
                lowers.append(-E)
        return max(lowers), min(uppers)


def positivity_threshold(b: int, q: int, fitted_m: float, k_limit: int = 10_000) -> int | None:
    """Least ``k`` from which ``beta**(k+1)/q > M gamma**(k/s)`` holds for good."""
    l = _validate(b, q)
    s = multiplicative_order(b, q)
    lb, lg = math.log(beta(l)), gamma(b, q)
    if fitted_m == 0 or lg == 0:
        return 1
    # log of lhs minus log of rhs is increasing in k because beta**s > gamma
    for k in range(1, k_limit):
        if (k + 1) * lb - math.log(q) > math.log(fitted_m) + k / s * math.log(lg):
            return k
    return None


# ---------------------------------------------------------------- trigonometric lemma

# (l parity, side) -> expected signs of sin(l t), cos(l t), sin(t/2), cos(t/2), delta, f'(t)
SIGN_TABLE = {
    ("even", "left"): ("<=0", ">=0", ">0", ">0", -1, "<0"),
    ("even", "right"): (">0", ">0", ">0", "<0", 1, ">0"),
    ("odd", "left"): (">0", "<0", ">0", ">0", 1, "<0"),
    ("odd", "right"): ("<0", "<0", ">0", "<0", -1, ">0"),
}


def _holds(x: float, cond: str) -> bool:
    return {"<0": x < 0, ">0": x > 0, "<=0": x <= 0, ">=0": x >= 0}[cond]


@dataclass
class TrigLemmaReport:
    l: int
    grid: int
    bound: float
    max_value: float
    min_margin: float
    endpoint_values: tuple[float, float]
    counterexamples: list[float] = field(default_factory=list)
    sign_mismatches: list[tuple[float, str]] = field(default_factory=list)
    tangent_chain_failures: list[float] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (self.counterexamples or self.sign_mismatches or self.tangent_chain_failures)


def check_trig_lemma(l: int, grid: int = 10_000, margin: float = MARGIN) -> TrigLemmaReport:
    """Sweep ``|1 - z| |1 - z**b|`` over the arc where ``|1 - z| > beta``.

    Points sit at cell midpoints, so both endpoints (where the bound is
    attained) are avoided by half a step.  Each point also has its row of
    the derivative sign table checked, with ``f'`` taken from a central
    difference of the directly computed product.
    """
    if l < 1:
        raise DomainError("l must be >= 1")
    if grid < 1000:
        raise DomainError("grid must have at least 1000 points")
    b = 2 * l
    lo = 2 * math.pi * l / (2 * l + 1)
    hi = 2 * math.pi * (l + 1) / (2 * l + 1)
    h = (hi - lo) / grid
    bound = beta(l) ** 2

    def f(t: float) -> float:
        return abs(1 - cmath.exp(1j * t)) * abs(1 - cmath.exp(1j * b * t))

    report = TrigLemmaReport(l, grid, bound, 0.0, math.inf, (f(lo), f(hi)))
    parity = "even" if l % 2 == 0 else "odd"
    tan_ref = abs(math.tan(math.pi * l / (2 * l + 1)))
    eps = h / 8
    for j in range(grid):
        t = lo + (j + 0.5) * h
        v = f(t)
        report.max_value = max(report.max_value, v)
        report.min_margin = min(report.min_margin, bound - v)
        if not v < bound - margin:
            report.counterexamples.append(t)
        side = "left" if t <= math.pi else "right"
        expect = SIGN_TABLE[(parity, side)]
        sl, cl = math.sin(l * t), math.cos(l * t)
        sh, ch = math.sin(t / 2), math.cos(t / 2)
        delta = 1 if sl * sh > 0 else -1
        fd = f(t + eps) - f(t - eps)
        closed = 4 * delta * (l * cl * sh + 0.5 * sl * ch)
        for name, x, cond in zip(("sin lt", "cos lt", "sin t/2", "cos t/2"), (sl, cl, sh, ch), expect):
            if not _holds(x, cond):
                report.sign_mismatches.append((t, name))
        if delta != expect[4]:
            report.sign_mismatches.append((t, "delta"))
        if not (_holds(fd, expect[5]) and _holds(closed, expect[5])):
            report.sign_mismatches.append((t, "f'"))
        if not abs(math.tan(l * t)) <= tan_ref <= abs(math.tan(t / 2)):
            report.tangent_chain_failures.append(t)
    return report


def trig_identities(l: int) -> dict[str, bool]:
    """Sign facts about cosines at multiples of ``2 pi l/(2l+1)`` (meaningful for l >= 2)."""
    a = 2 * math.pi * l / (2 * l + 1)
    return {
        "cos(a) < 0": math.cos(a) < 0,
        "cos(2a) > 0": math.cos(2 * a) > 0,
        # equality at l = 2, so allow rounding
        "cos(2a) - cos(3a) >= 0": math.cos(2 * a) - math.cos(3 * a) >= -1e-12,
        "2(1 - cos a) == beta^2": math.isclose(2 * (1 - math.cos(a)), beta(l) ** 2, rel_tol=1e-12),
    }
