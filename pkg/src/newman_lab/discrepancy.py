"""Evaluators for the signed count S_{q,i}(N).

    S_{q,i}(N) = sum of (-1)**s_b(n) over n in A_b, n < N, n == i (mod q)

Three routes are provided and are expected to agree exactly:

* ``eval_bruteforce`` enumerates A_b below the bound (the oracle).
* ``eval_recursive`` splits the bound along its digits and reads each
  power-of-b column from a table built by the one-digit recursion
  ``S_i(b**(k+1)) = S_i(b**k) - S_{i - b**k}(b**k)``.
* ``eval_character`` splits the bound the same way but reads each column
  off the product of ``(1 - x**(b**p mod q))`` modulo ``x**q - 1``, which is
  the integer form of the roots-of-unity filter.  The product is assembled
  from one period of ``b**p mod q`` raised by binary exponentiation.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np

from .digits import BaseBNumeral, ResidueClass, ceiling_in_Ab
from .errors import DomainError, ResourceLimitError
from .ntheory import power_cycle
from .polynomial import CyclicPolynomial

BRUTE_FORCE_LIMIT = 1 << 24

Method = Literal["auto", "brute", "recursive", "character"]


@dataclass(frozen=True)
class DiscrepancyQuery:
    base: int
    modulus: int
    residue: ResidueClass
    bound: BaseBNumeral

    def __post_init__(self) -> None:
        if self.residue.modulus != self.modulus:
            raise DomainError("residue class modulus does not match query modulus")
        if self.bound.base != self.base:
            raise DomainError("bound is written in a different base")
        if self.bound.value < 1:
            raise DomainError("bound must be >= 1")

    @classmethod
    def make(cls, b: int, q: int, i: int, N: int | BaseBNumeral) -> DiscrepancyQuery:
        """Build a query, reducing ``i`` mod ``q`` and lifting ``N`` into A_b."""
        if isinstance(N, BaseBNumeral):
            bound = N
        else:
            bound = ceiling_in_Ab(N, b)
        return cls(b, q, ResidueClass.of(i, q), bound)

    @property
    def i(self) -> int:
        return self.residue.value


# ---------------------------------------------------------------- columns

@lru_cache(maxsize=1024)
def power_product(b: int, q: int, k: int) -> CyclicPolynomial:
    """``prod_{p<k} (1 - x**(b**p mod q))`` reduced modulo ``x**q - 1``."""
    if k < 0:
        raise DomainError("k must be >= 0")
    if q < 1:
        raise DomainError("modulus must be >= 1")
    mu, lam = power_cycle(b, q)
    poly = CyclicPolynomial.one(q)
    head = min(k, mu)
    for p in range(head):
        poly = poly.times_one_minus(pow(b, p, q))
    if k <= mu:
        return poly
    reps, tail = divmod(k - mu, lam)
    if reps:
        cycle = CyclicPolynomial.one(q)
        for p in range(mu, mu + lam):
            cycle = cycle.times_one_minus(pow(b, p, q))
        poly = poly * cycle**reps
    for p in range(mu, mu + tail):
        poly = poly.times_one_minus(pow(b, p, q))
    return poly


def power_column(b: int, q: int, i: int, k: int) -> int:
    """Exact ``S_{q,i}(b**k)``."""
    return power_product(b, q, k)[i % q]


class _ColumnTable:
    def __init__(self, b: int, q: int) -> None:
        self.b, self.q = b, q
        self.rows: list[tuple[int, ...]] = [(1,) + (0,) * (q - 1)]
        self.lock = threading.Lock()

    def get(self, k: int) -> tuple[int, ...]:
        rows = self.rows
        if k >= len(rows):
            with self.lock:
                q = self.q
                while len(rows) <= k:
                    prev = rows[-1]
                    a = pow(self.b, len(rows) - 1, q)
                    rows.append(tuple(prev[j] - prev[(j - a) % q] for j in range(q)))
        return rows[k]


@lru_cache(maxsize=256)
def _column_table(b: int, q: int) -> _ColumnTable:
    return _ColumnTable(b, q)


def recursive_column(b: int, q: int, k: int) -> tuple[int, ...]:
    """``(S_{q,0}(b**k), ..., S_{q,q-1}(b**k))`` by the one-digit recursion."""
    if k < 0:
        raise DomainError("k must be >= 0")
    return _column_table(b, q).get(k)


# ---------------------------------------------------------------- expansion

def expansion_terms(b: int, q: int, bound: BaseBNumeral) -> list[tuple[int, int, int]]:
    """Digit split of the bound as ``(sign, offset, k)`` triples.

    ``S_{q,i}(N) = sum(sign * S_{q, i - offset}(b**k))`` over the triples,
    where ``N = b**k_1 + ... + b**k_r`` and ``offset`` is the sum of the
    higher powers taken modulo ``q``.
    """
    terms = []
    offset = 0
    for j, k in enumerate(bound.exponents):
        terms.append((-1 if j % 2 else 1, offset, k))
        offset = (offset + pow(b, k, q)) % q
    return terms


def eval_recursive(query: DiscrepancyQuery) -> int:
    b, q, i = query.base, query.modulus, query.i
    return sum(
        sign * recursive_column(b, q, k)[(i - off) % q]
        for sign, off, k in expansion_terms(b, q, query.bound)
    )


def eval_character(query: DiscrepancyQuery) -> int:
    b, q, i = query.base, query.modulus, query.i
    return sum(
        sign * power_column(b, q, i - off, k)
        for sign, off, k in expansion_terms(b, q, query.bound)
    )


def _combine(columns, q: int, terms) -> list[int]:
    out = [0] * q
    for (sign, off, _), col in zip(terms, columns):
        # rotated[j] = col[(j - off) mod q]
        rot = col[q - off:] + col[:q - off] if off else col
        if sign > 0:
            out = [x + y for x, y in zip(out, rot)]
        else:
            out = [x - y for x, y in zip(out, rot)]
    return out


def recursive_vector(b: int, q: int, bound: BaseBNumeral) -> list[int]:
    """All residues at once via the one-digit recursion columns."""
    terms = expansion_terms(b, q, bound)
    return _combine([recursive_column(b, q, k) for _, _, k in terms], q, terms)


def character_vector(b: int, q: int, bound: BaseBNumeral) -> list[int]:
    """All residues at once: the coefficient vector of the signed generating
    polynomial of A_b below the bound, modulo ``x**q - 1``."""
    terms = expansion_terms(b, q, bound)
    return _combine([power_product(b, q, k).coefficients for _, _, k in terms], q, terms)


# ---------------------------------------------------------------- brute force

def _elements_and_parity(b: int, count: int):
    """Elements of A_b with binary index < count, and their digit-sum parity.

    The digit sums are recomputed from the values themselves.
    """
    top = max(count - 1, 0).bit_length()
    if b ** max(top, 1) < 2**62:
        j = np.arange(count, dtype=np.int64)
        n = np.zeros(count, dtype=np.int64)
        for t in range(top):
            n += ((j >> t) & 1) * (b**t)
        m = n.copy()
        ds = np.zeros(count, dtype=np.int64)
        while m.any():
            d = m % b
            if (d > 1).any():
                raise AssertionError("enumeration produced a digit > 1")
            ds += d
            m //= b
        return n, ds & 1
    values = []
    parity = []
    for j in range(count):
        v, x, s, pw = 0, j, 0, 1
        while x:
            if x & 1:
                v += pw
            x >>= 1
            pw *= b
        m = v
        while m:
            m, d = divmod(m, b)
            s += d
        values.append(v)
        parity.append(s & 1)
    return values, parity


def _guard(count: int) -> None:
    if count > BRUTE_FORCE_LIMIT:
        raise ResourceLimitError(
            f"brute force would enumerate {count} elements (limit {BRUTE_FORCE_LIMIT})"
        )


def eval_bruteforce(query: DiscrepancyQuery) -> int:
    count = query.bound.binary_index
    _guard(count)
    b, q, i = query.base, query.modulus, query.i
    n, par = _elements_and_parity(b, count)
    if isinstance(n, np.ndarray):
        mask = n % q == i
        return int(np.count_nonzero(par[mask] == 0)) - int(np.count_nonzero(par[mask] == 1))
    return sum(1 - 2 * s for v, s in zip(n, par) if v % q == i)


def bruteforce_vector(b: int, q: int, bound: BaseBNumeral) -> list[int]:
    count = bound.binary_index
    _guard(count)
    n, par = _elements_and_parity(b, count)
    out = [0] * q
    for v, s in zip(n, par):
        out[int(v) % q] += 1 - 2 * int(s)
    return out


def bruteforce_table(b: int, q: int, count: int) -> np.ndarray:
    """Row ``j`` holds ``S_{q,.}`` at the ``j``-th element of A_b.

    Shape ``(count + 1, q)``; row 0 is the empty sum, row ``count`` covers
    all elements with binary index below ``count``.
    """
    _guard(count)
    n, par = _elements_and_parity(b, count)
    res = np.asarray([int(v) % q for v in n], dtype=np.int64)
    sign = 1 - 2 * np.asarray(par, dtype=np.int64)
    table = np.zeros((count + 1, q), dtype=np.int64)
    table[np.arange(1, count + 1), res] = sign
    return np.cumsum(table, axis=0)


# ---------------------------------------------------------------- dispatch

_RECURSIVE_TABLE_CELLS = 1 << 20


def eval(query: DiscrepancyQuery, method: Method = "auto") -> int:  # noqa: A001
    if method == "auto":
        if query.bound.binary_index <= 64:
            method = "brute"
        elif (query.bound.exponents[0] + 1) * query.modulus <= _RECURSIVE_TABLE_CELLS:
            method = "recursive"
        else:
            method = "character"
    if method == "brute":
        return eval_bruteforce(query)
    if method == "recursive":
        return eval_recursive(query)
    if method == "character":
        return eval_character(query)
    raise DomainError(f"unknown method {method!r}")


def discrepancy(b: int, q: int, i: int, N: int, method: Method = "auto") -> int:
    """Convenience wrapper: ``S^{(b)}_{q,i}(N)`` for a plain integer bound."""
    return eval(DiscrepancyQuery.make(b, q, i, N), method)
