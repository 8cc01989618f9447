"""Numbers whose base-b digits are all 0 or 1.

The set of such numbers is written ``A_b`` throughout the package.  An
element is stored as the strictly decreasing tuple of exponents carrying a
digit 1, so ``b**10 + 1`` is ``(10, 0)``.  The k-th element of ``A_b`` in
increasing order is the binary expansion of k read in base b, which is what
``rebase`` computes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .errors import DomainError


def _check_base(b: int) -> None:
    if b < 2:
        raise DomainError(f"base must be >= 2, got {b}")


def base_digits(n: int, b: int) -> list[int]:
    """Base-b digits of ``n``, least significant first (``[]`` for 0)."""
    _check_base(b)
    if n < 0:
        raise DomainError("negative integers have no base-b expansion here")
    digits = []
    while n:
        n, d = divmod(n, b)
        digits.append(d)
    return digits


def digit_sum(n: int, b: int) -> int:
    return sum(base_digits(n, b))


def is_member_Ab(n: int, b: int) -> bool:
    _check_base(b)
    if n < 0:
        raise DomainError("A_b membership is defined for n >= 0 only")
    if b == 2:
        return True
    return all(d <= 1 for d in base_digits(n, b))


@dataclass(frozen=True)
class BaseBNumeral:
    """An element of ``A_b`` given by its exponents ``k_1 > ... > k_r``."""

    base: int
    exponents: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        _check_base(self.base)
        exps = tuple(int(k) for k in self.exponents)
        object.__setattr__(self, "exponents", exps)
        if any(k < 0 for k in exps):
            raise DomainError("exponents must be non-negative")
        if any(a <= b for a, b in zip(exps, exps[1:])):
            raise DomainError(f"exponents must be strictly decreasing: {exps}")

    @classmethod
    def from_int(cls, n: int, base: int) -> BaseBNumeral:
        digits = base_digits(n, base)
        if any(d > 1 for d in digits):
            raise DomainError(f"{n} is not in A_{base}")
        return cls(base, tuple(k for k in reversed(range(len(digits))) if digits[k]))

    @classmethod
    def from_binary_index(cls, j: int, base: int) -> BaseBNumeral:
        """The ``j``-th element of ``A_base`` (counting from 0)."""
        if j < 0:
            raise DomainError("index must be non-negative")
        return cls(base, tuple(k for k in reversed(range(j.bit_length())) if j >> k & 1))

    @cached_property
    def value(self) -> int:
        b = self.base
        return sum(b**k for k in self.exponents)

    @property
    def binary_index(self) -> int:
        """Position of this numeral in ``A_b``; also ``#{n in A_b : n < self}``."""
        return sum(1 << k for k in self.exponents)

    @property
    def digit_count(self) -> int:
        """Number of digits equal to 1, i.e. the base-b digit sum."""
        return len(self.exponents)

    @property
    def length(self) -> int:
        """Number of base-b digits (0 for the number 0)."""
        return self.exponents[0] + 1 if self.exponents else 0

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __str__(self) -> str:
        if not self.exponents:
            return "0"
        top = self.exponents[0]
        ones = set(self.exponents)
        return "".join("1" if k in ones else "0" for k in range(top, -1, -1)) + f"_{self.base}"


@dataclass(frozen=True)
class ResidueClass:
    modulus: int
    value: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise DomainError(f"modulus must be >= 1, got {self.modulus}")
        if not 0 <= self.value < self.modulus:
            raise DomainError(f"residue {self.value} not in [0, {self.modulus})")

    @classmethod
    def of(cls, i: int, q: int) -> ResidueClass:
        """Normalize any integer ``i`` (negative allowed) into ``[0, q)``."""
        if q < 1:
            raise DomainError(f"modulus must be >= 1, got {q}")
        return cls(q, i % q)


def rebase(n: int, b: int) -> BaseBNumeral:
    """Read the binary digits of ``n`` as base-b digits."""
    _check_base(b)
    if n < 0:
        raise DomainError("rebase needs n >= 0")
    return BaseBNumeral.from_binary_index(n, b)


def ceiling_in_Ab(N: int, b: int) -> BaseBNumeral:
    """Least element ``M`` of ``A_b`` with ``M >= N``.

    No element of ``A_b`` lies in ``[N, M)``, so counting ``n < N`` and
    ``n < M`` over ``A_b`` give the same set.
    """
    _check_base(b)
    if N < 1:
        raise DomainError("bound must be >= 1 (nothing lies below 0)")
    digits = base_digits(N, b)
    big = [k for k, d in enumerate(digits) if d > 1]
    if not big:
        return BaseBNumeral.from_int(N, b)
    top = max(big)
    # Digits above `top` are 0/1; bump that prefix to its successor in A_b
    # and clear everything below.
    prefix = sum(1 << (k - top - 1) for k in range(top + 1, len(digits)) if digits[k])
    succ = rebase(prefix + 1, b)
    return BaseBNumeral(b, tuple(k + top + 1 for k in succ.exponents))


def count_below(N: int, b: int) -> int:
    """``#{n in A_b : n < N}``."""
    if N <= 0:
        return 0
    return ceiling_in_Ab(N, b).binary_index


def enumerate_Ab(b: int, N: int) -> Iterator[BaseBNumeral]:
    """Yield the elements of ``A_b`` below ``N`` in increasing order."""
    _check_base(b)
    for j in range(count_below(N, b)):
        yield BaseBNumeral.from_binary_index(j, b)


def transplant(n: int, source: int, target: int) -> int:
    """Rewrite an element of ``A_source`` with the same digits in base ``target``."""
    exps = BaseBNumeral.from_int(n, source).exponents
    return sum(target**k for k in exps)
