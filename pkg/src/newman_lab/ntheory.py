"""Small elementary number theory helpers (trial division scale)."""

from __future__ import annotations

from math import gcd, isqrt

import numpy as np

from .errors import DomainError


def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise DomainError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def totient(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def multiplicative_order(b: int, n: int) -> int:
    """Least ``s >= 1`` with ``b**s == 1 (mod n)``.

    Starts from Euler's totient and strips prime factors while the power
    stays congruent to 1.
    """
    if n < 1:
        raise DomainError("modulus must be positive")
    if n == 1:
        return 1
    if gcd(b, n) != 1:
        raise DomainError(f"{b} is not invertible modulo {n}")
    s = totient(n)
    for r in factorize(s):
        while s % r == 0 and pow(b, s // r, n) == 1:
            s //= r
    return s


def power_cycle(b: int, q: int) -> tuple[int, int]:
    """Preperiod and period of the sequence ``b**p mod q`` for p = 0, 1, ...

    Returns ``(mu, lam)`` with ``b**(p + lam) == b**p (mod q)`` for all
    ``p >= mu``.  When ``gcd(b, q) == 1`` this is ``(0, ord_q(b))``.
    """
    if q < 1:
        raise DomainError("modulus must be positive")
    if gcd(b, q) == 1:
        return 0, multiplicative_order(b, q)
    seen: dict[int, int] = {}
    x, p = 1 % q, 0
    while x not in seen:
        seen[x] = p
        x = x * b % q
        p += 1
    mu = seen[x]
    return mu, p - mu


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, isqrt(n) + 1, 2))


def primes_up_to(x: int) -> list[int]:
    if x < 2:
        return []
    sieve = np.ones(x + 1, dtype=bool)
    sieve[:2] = False
    for d in range(2, isqrt(x) + 1):
        if sieve[d]:
            sieve[d * d::d] = False
    return np.flatnonzero(sieve).tolist()


def primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = list(factorize(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in factors):
            return g
    raise DomainError(f"{p} has no primitive root")
