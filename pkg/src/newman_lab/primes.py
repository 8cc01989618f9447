"""Prime moduli: cosets of <b>, tangent sums, and the sign of S_{p,0}(b**(4ks-2)).

For a prime ``p`` not dividing ``b`` let ``s`` be the order of ``b`` mod p and
``t = (p-1)/s``.  With ``K = 4ks - 2`` the roots-of-unity filter collapses
coset by coset:

    p * S_{p,0}(b**K) = sum_r  F_r**(4k) * T_r
    F_r = prod_{l in L_r} (1 - zeta**l)
    T_r = sum_{l in L_r} 1 / ((1 - zeta**l) (1 - zeta**(l*b)))

and ``Re T_r = s/4 - sum_{l in L_r} 1 / (4 tan(pi*l*b/p) tan(pi*l/p))``.

Signs are taken from the exact integer evaluator when that is affordable
and from the coset decomposition otherwise; each verdict records which.
"""

from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import mpmath
import numpy as np

from .discrepancy import power_column
from .errors import DomainError
from .ntheory import factorize, is_prime, primes_up_to, primitive_root

EXACT_BIT_BUDGET = 2_000_000


def _check(b: int, p: int) -> None:
    if p < 3 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")
    if b % p == 0:
        raise DomainError(f"{p} divides {b}")


def order_mod(b: int, p: int) -> int:
    """Order of ``b`` in ``(Z/pZ)*``, by factoring ``p - 1``."""
    _check(b, p)
    s = p - 1
    for r in factorize(p - 1):
        while s % r == 0 and pow(b, s // r, p) == 1:
            s //= r
    return s


def cosets(b: int, p: int) -> list[list[int]]:
    """Cosets of ``<b>`` in ``(Z/pZ)*``, each sorted, ordered by least element."""
    _check(b, p)
    seen = bytearray(p)
    out = []
    for m in range(1, p):
        if seen[m]:
            continue
        coset, x = [], m
        while not seen[x]:
            seen[x] = 1
            coset.append(x)
            x = x * b % p
        out.append(sorted(coset))
    return out


def centered(r: int, p: int) -> int:
    r %= p
    return r - p if r > p / 2 else r


def tangent_sum(L: Iterable[int], p: int, b: int) -> float:
    terms = []
    for l in L:
        lc, lbc = centered(l, p), centered(l * b, p)
        assert lc and lbc, "residue 0 inside a coset"
        terms.append(1.0 / (4.0 * math.tan(math.pi * lbc / p) * math.tan(math.pi * lc / p)))
    return math.fsum(terms)


def coset_sum(L: Iterable[int], p: int, b: int) -> complex:
    """``sum_{l in L} 1/((1 - zeta**l)(1 - zeta**(lb)))`` in double precision."""
    terms = []
    for l in L:
        z1 = 1 - cmath.exp(2j * math.pi * l / p)
        z2 = 1 - cmath.exp(2j * math.pi * (l * b % p) / p)
        terms.append(1 / (z1 * z2))
    return complex(math.fsum(z.real for z in terms), math.fsum(z.imag for z in terms))


def partition_P(L: Iterable[int], p: int, b: int) -> tuple[list[int], list[int], list[int], list[int]]:
    """Split a coset by the size of ``l`` against ``p/(4b)``, on centered residues.

    P1: ``|l| <= p/4b`` and ``|l/b| > p/4b``;  P2: both ``<=``;
    P3: ``|l| > p/4b`` and ``|lb| <= p/4b``;   P4: ``|l| > p/4b`` and ``|lb| > p/4b``.
    """
    binv = pow(b, -1, p)

    def small(r: int) -> bool:
        return 4 * b * abs(centered(r, p)) <= p

    P1, P2, P3, P4 = [], [], [], []
    for l in L:
        if small(l):
            (P2 if small(l * binv) else P1).append(l)
        else:
            (P3 if small(l * b) else P4).append(l)
    return P1, P2, P3, P4


# ---------------------------------------------------------------- profiles

@dataclass
class SignVerdict:
    k: int
    exponent: int
    sign: int
    method: str
    decomposition_sign: int | None = None

    @property
    def agrees(self) -> bool | None:
        if self.decomposition_sign is None:
            return None
        return self.decomposition_sign == self.sign


@dataclass
class PrimeProfile:
    p: int
    b: int
    s: int
    t: int
    cosets: list[list[int]]
    tangent_sums: list[float]
    real_parts: list[float]
    sign_verdicts: list[SignVerdict] = field(default_factory=list)


def profile(b: int, p: int, k_list: Sequence[int] = ()) -> PrimeProfile:
    s = order_mod(b, p)
    cs = cosets(b, p)
    tans = [tangent_sum(L, p, b) for L in cs]
    return PrimeProfile(
        p=p, b=b, s=s, t=(p - 1) // s, cosets=cs,
        tangent_sums=tans,
        real_parts=[coset_sum(L, p, b).real for L in cs],
        sign_verdicts=sign_criterion(b, p, k_list) if k_list else [],
    )


# ---------------------------------------------------------------- decomposition

def power_factor(b: int, p: int, m: int, k: int, doubled: bool = False):
    """``prod_{j<s} (1 - zeta**(c*m*b**j))**(4k)`` with ``c = 2 if doubled else 1``."""
    s = order_mod(b, p)
    c = 2 if doubled else 1
    prod = mpmath.mpc(1)
    x = c * m % p
    for _ in range(s):
        prod *= 1 - mpmath.expjpi(mpmath.mpf(2 * x) / p)
        x = x * b % p
    return prod ** (4 * k)


def decomposition_value(b: int, p: int, k: int, doubled: bool = False, dps: int | None = None):
    """``S_{p,0}(b**(4ks-2))`` from the coset decomposition, in mpmath.

    ``doubled`` selects the variant with ``zeta**(2m b**j)`` in the power factor.
    """
    s = order_mod(b, p)
    if dps is None:
        dps = 40 + int(4 * k * s * math.log10(2)) + len(str(p))
    with mpmath.workdps(dps):
        total = mpmath.mpc(0)
        for L in cosets(b, p):
            T = mpmath.mpc(0)
            for l in L:
                z1 = 1 - mpmath.expjpi(mpmath.mpf(2 * l) / p)
                z2 = 1 - mpmath.expjpi(mpmath.mpf(2 * (l * b % p)) / p)
                T += 1 / (z1 * z2)
            total += power_factor(b, p, L[0], k, doubled) * T
        return +(total.real / p)


def _coset_arrays(b: int, p: int):
    """Per-coset log|F_r|, phase numerators and T_r sums, vectorized."""
    s = order_mod(b, p)
    t = (p - 1) // s
    g = primitive_root(p)
    pw = np.empty(p - 1, dtype=np.int64)
    pw[0] = 1
    n = 1
    while n < p - 1:
        m = min(n, p - 1 - n)
        pw[n:n + m] = pw[:m] * pow(g, n, p) % p
        n += m
    dlog = np.empty(p, dtype=np.int64)
    dlog[pw] = np.arange(p - 1, dtype=np.int64)
    l = np.arange(1, p, dtype=np.int64)
    coset_id = dlog[1:] % t
    lb = l * (b % p) % p
    s1 = np.sin(np.pi * l / p)
    s2 = np.sin(np.pi * lb / p)
    log_abs = np.bincount(coset_id, weights=np.log(2 * s1), minlength=t)
    phase_num = np.rint(np.bincount(coset_id, weights=(2 * l - p).astype(np.float64), minlength=t)).astype(np.int64)
    denom = 4 * s1 * s2
    ang = np.pi * (l + lb) / p
    re = np.bincount(coset_id, weights=-np.cos(ang) / denom, minlength=t)
    im = np.bincount(coset_id, weights=np.sin(ang) / denom, minlength=t)
    mag = np.bincount(coset_id, weights=1 / denom, minlength=t)
    return s, t, log_abs, phase_num, re, im, mag


def decomposition_sign(b: int, p: int, k: int) -> tuple[int, str]:
    """Sign of ``S_{p,0}(b**(4ks-2))`` from the coset decomposition.

    Works in log space in double precision; falls back to mpmath when the
    result is within the rounding envelope.
    """
    s, t, log_abs, phase_num, re, im, mag = _coset_arrays(b, p)
    e = 4 * k * (log_abs - log_abs.max())
    w = np.exp(e)
    # arg F_r**(4k) = pi * (2k * phase_num mod 2p) / p, reduced exactly
    ph = np.pi * ((2 * k * phase_num) % (2 * p)) / p
    contrib = w * (np.cos(ph) * re - np.sin(ph) * im)
    total = float(contrib.sum())
    envelope = float((w * mag).sum()) * 1e-9
    if abs(total) > envelope:
        return (1 if total > 0 else -1), "decomposition"
    # Precision covers the largest term, so rounding recovers the integer.
    value = int(mpmath.nint(decomposition_value(b, p, k)))
    return (value > 0) - (value < 0), "decomposition-mp"


def exact_sign(b: int, p: int, k: int) -> int:
    s = order_mod(b, p)
    v = power_column(b, p, 0, 4 * k * s - 2)
    return (v > 0) - (v < 0)


def sign_criterion(b: int, p: int, k_list: Sequence[int], method: str = "auto",
                   cross_check: bool = True) -> list[SignVerdict]:
    """Sign of ``S_{p,0}(b**(4ks-2))`` for each ``k``.

    ``method`` is ``exact``, ``decomposition`` or ``auto`` (exact while
    ``p * (4ks - 2)`` stays within ``EXACT_BIT_BUDGET``).
    """
    _check(b, p)
    s = order_mod(b, p)
    out = []
    for k in k_list:
        if k < 1:
            raise DomainError("k must be >= 1")
        K = 4 * k * s - 2
        use_exact = method == "exact" or (method == "auto" and p * K <= EXACT_BIT_BUDGET)
        if use_exact:
            v = SignVerdict(k, K, exact_sign(b, p, k), "exact")
            if cross_check:
                v.decomposition_sign = decomposition_sign(b, p, k)[0]
        elif method in ("auto", "decomposition"):
            sign, how = decomposition_sign(b, p, k)
            v = SignVerdict(k, K, sign, how)
        else:
            raise DomainError(f"unknown method {method!r}")
        out.append(v)
    return out


# ---------------------------------------------------------------- Polya-Vinogradov counts

@dataclass
class CosetCount:
    coset_index: int
    least: int
    size: int
    count: int
    window: float
    threshold: float

    @property
    def exceeds(self) -> bool:
        return self.count > self.threshold


def pv_coset_count(b: int, p: int) -> list[CosetCount]:
    """Per coset, how many members lie in ``(0, 2t sqrt(p) log p]``."""
    s = order_mod(b, p)
    t = (p - 1) // s
    window = 2 * t * math.sqrt(p) * math.log(p)
    threshold = math.sqrt(p) * math.log(p)
    out = []
    for r, L in enumerate(cosets(b, p)):
        count = sum(1 for l in L if l <= window)
        out.append(CosetCount(r, L[0], len(L), count, window, threshold))
    return out


# ---------------------------------------------------------------- classification

NEGATIVE = "eventually-negative-evidence"
CANDIDATE = "candidate-positive"
ZERO = "zero-probe"


@dataclass
class PrimeRow:
    p: int
    s: int
    t: int
    signs: tuple[int, ...]
    method: str

    @property
    def verdict(self) -> str:
        if any(x < 0 for x in self.signs):
            return NEGATIVE
        if all(x > 0 for x in self.signs):
            return CANDIDATE
        return ZERO


def classify_prime(b: int, p: int, k_probes: Sequence[int], exact_limit: int = 256) -> PrimeRow:
    method = "exact" if p <= exact_limit else "decomposition"
    verdicts = sign_criterion(b, p, k_probes, method=method, cross_check=False)
    methods = sorted({v.method for v in verdicts})
    s = order_mod(b, p)
    return PrimeRow(p, s, (p - 1) // s, tuple(v.sign for v in verdicts), "+".join(methods))


def _classify_chunk(args) -> list[PrimeRow]:
    b, chunk, k_probes, exact_limit = args
    return [classify_prime(b, p, k_probes, exact_limit) for p in chunk]


def default_jobs() -> int:
    env = os.environ.get("NEWMAN_LAB_JOBS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def classify_primes(b: int, x: int, k_probes: Sequence[int] = (1, 2), jobs: int | None = None,
                    exact_limit: int = 256) -> list[PrimeRow]:
    """Classify every odd prime ``p <= x`` with ``p`` not dividing ``b``; rows sorted by p."""
    if x > 10**6:
        raise DomainError("classification is limited to x <= 10**6")
    if len(k_probes) < 2:
        raise DomainError("need at least two probes")
    ps = [p for p in primes_up_to(x) if p > 2 and b % p]
    jobs = jobs or default_jobs()
    if jobs <= 1 or len(ps) < 64:
        return _classify_chunk((b, ps, tuple(k_probes), exact_limit))
    # Interleave so every shard mixes small and large primes.
    shards = [ps[j::jobs * 4] for j in range(jobs * 4)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = pool.map(_classify_chunk, [(b, sh, tuple(k_probes), exact_limit) for sh in shards])
        rows = [r for part in parts for r in part]
    rows.sort(key=lambda r: r.p)
    return rows


@dataclass
class DensityPoint:
    x: int
    primes: int
    candidates: int
    small_order: int

    @property
    def fraction(self) -> float:
        return self.candidates / self.primes if self.primes else 0.0


def density_table(rows: Sequence[PrimeRow], xs: Sequence[int], eps: float = 0.05) -> list[DensityPoint]:
    """Cumulative candidate-positive counts at each cut-off in ``xs``."""
    out = []
    for x in sorted(xs):
        sel = [r for r in rows if r.p <= x]
        out.append(DensityPoint(
            x=x,
            primes=len(sel),
            candidates=sum(r.verdict == CANDIDATE for r in sel),
            small_order=sum(r.s <= r.p ** (0.5 + eps) for r in sel),
        ))
    return out


def fitted_c1(rows: Sequence[PrimeRow]) -> int:
    """Largest candidate-positive prime with ``t = 1`` (0 if none)."""
    return max((r.p for r in rows if r.t == 1 and r.verdict == CANDIDATE), default=0)
