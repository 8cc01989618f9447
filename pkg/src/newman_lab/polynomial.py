"""Integer polynomials modulo ``x**q - 1``.

Coefficients are Python ints of unbounded size.  Products use Kronecker
substitution: both operands are packed into single integers at a bit width
wide enough for every coefficient of the linear product, multiplied with
the interpreter's bignum routine and unpacked, then folded modulo
``x**q - 1``.  ``cyclic_mul_naive`` is the schoolbook reference.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError


def cyclic_mul_naive(a: Sequence[int], b: Sequence[int]) -> list[int]:
    q = len(a)
    if len(b) != q:
        raise DomainError("operands must have the same length")
    out = [0] * q
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[(i + j) % q] += x * y
    return out


def _pack(coeffs: Sequence[int], nbytes: int) -> int:
    pos = b"".join(max(c, 0).to_bytes(nbytes, "little") for c in coeffs)
    neg = b"".join(max(-c, 0).to_bytes(nbytes, "little") for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack(value: int, count: int, nbytes: int) -> list[int]:
    half = 1 << (8 * nbytes - 1)
    # Shift every digit into [0, 2**w) so plain byte slicing recovers it.
    offset = int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * count, "little")
    raw = (value + offset).to_bytes(count * nbytes, "little")
    return [
        int.from_bytes(raw[j * nbytes:(j + 1) * nbytes], "little") - half
        for j in range(count)
    ]


def cyclic_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Product of ``a`` and ``b`` modulo ``x**q - 1`` (Kronecker substitution)."""
    q = len(a)
    if len(b) != q:
        raise DomainError("operands must have the same length")
    amax = max((abs(c) for c in a), default=0)
    bmax = max((abs(c) for c in b), default=0)
    if amax == 0 or bmax == 0:
        return [0] * q
    # Trim trailing zeros; the linear product is shorter and cheaper.
    la = max(j for j, c in enumerate(a) if c) + 1
    lb = max(j for j, c in enumerate(b) if c) + 1
    bits = amax.bit_length() + bmax.bit_length() + min(la, lb).bit_length() + 1
    nbytes = (bits + 7) // 8
    prod = _pack(a[:la], nbytes) * _pack(b[:lb], nbytes)
    linear = _unpack(prod, la + lb - 1, nbytes)
    out = list(linear[:q])
    out.extend([0] * (q - len(out)))
    for j in range(q, len(linear)):
        out[j % q] += linear[j]
    return out


@dataclass(frozen=True)
class CyclicPolynomial:
    """Residue class of an integer polynomial modulo ``x**modulus - 1``."""

    modulus: int
    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise DomainError(f"modulus must be >= 1, got {self.modulus}")
        if len(self.coefficients) != self.modulus:
            raise DomainError(
                f"expected {self.modulus} coefficients, got {len(self.coefficients)}"
            )

    @classmethod
    def one(cls, q: int) -> CyclicPolynomial:
        return cls.monomial(q, 0)

    @classmethod
    def monomial(cls, q: int, exponent: int, coeff: int = 1) -> CyclicPolynomial:
        c = [0] * q
        c[exponent % q] = coeff
        return cls(q, tuple(c))

    def __getitem__(self, i: int) -> int:
        return self.coefficients[i % self.modulus]

    def __add__(self, other: CyclicPolynomial) -> CyclicPolynomial:
        self._check(other)
        return CyclicPolynomial(
            self.modulus, tuple(x + y for x, y in zip(self.coefficients, other.coefficients))
        )

    def __neg__(self) -> CyclicPolynomial:
        return CyclicPolynomial(self.modulus, tuple(-x for x in self.coefficients))

    def __sub__(self, other: CyclicPolynomial) -> CyclicPolynomial:
        return self + (-other)

    def __mul__(self, other: CyclicPolynomial) -> CyclicPolynomial:
        self._check(other)
        return CyclicPolynomial(self.modulus, tuple(cyclic_mul(self.coefficients, other.coefficients)))

    def __pow__(self, e: int) -> CyclicPolynomial:
        if e < 0:
            raise DomainError("negative powers are not defined")
        result = CyclicPolynomial.one(self.modulus)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, a: int) -> CyclicPolynomial:
        """Multiply by ``x**a``."""
        q = self.modulus
        a %= q
        c = self.coefficients
        return CyclicPolynomial(q, c[q - a:] + c[:q - a])

    def times_one_minus(self, a: int) -> CyclicPolynomial:
        """Multiply by ``1 - x**a`` in O(q)."""
        rot = self.shift(a).coefficients
        return CyclicPolynomial(self.modulus, tuple(x - y for x, y in zip(self.coefficients, rot)))

    def mass(self) -> int:
        """Sum of absolute values of the coefficients."""
        return sum(abs(c) for c in self.coefficients)

    def at_one(self) -> int:
        return sum(self.coefficients)

    def _check(self, other: CyclicPolynomial) -> None:
        if self.modulus != other.modulus:
            raise DomainError("moduli differ")
