"""Exact arithmetic in Z[w], w a primitive complex p-th root of unity.

Elements are stored in the power basis w^0, ..., w^(p-2); w^(p-1) is
rewritten as -(1 + w + ... + w^(p-2)), so the representation is unique and
equality is coefficient equality.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath


class CyclotomicError(ValueError):
    pass


class NotQuadraticError(CyclotomicError):
    """Value is not in Q(sqrt p): it cannot be one of the expected correlation classes."""


@dataclass(frozen=True)
class CycInt:
    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.p - 1:
            raise CyclotomicError(f"need {self.p - 1} coefficients, got {len(self.coeffs)}")

    @classmethod
    def from_int(cls, p: int, k: int) -> "CycInt":
        return cls(p, (int(k),) + (0,) * (p - 2))

    @classmethod
    def zero(cls, p: int) -> "CycInt":
        return cls.from_int(p, 0)

    @classmethod
    def from_counts(cls, counts) -> "CycInt":
        """``sum_k counts[k] * w^k`` for a length-p histogram of exponents."""
        counts = [int(c) for c in counts]
        top = counts[-1]
        return cls(len(counts), tuple(c - top for c in counts[:-1]))

    @classmethod
    def from_unreduced(cls, p: int, coeffs) -> "CycInt":
        """Reduce an arbitrary-length coefficient list (exponents taken mod p)."""
        counts = [0] * p
        for k, c in enumerate(coeffs):
            counts[k % p] += int(c)
        return cls.from_counts(counts)

    def _check(self, other) -> "CycInt":
        if isinstance(other, int):
            return CycInt.from_int(self.p, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        if other.p != self.p:
            raise CyclotomicError(f"mismatched roots of unity: {self.p} vs {other.p}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CycInt(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.p
        full = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        full[(i + j) % p] += a * b
        return CycInt.from_counts(full)

    __rmul__ = __mul__

    def half(self) -> "CycInt":
        """Exact division by 2; raises if some coefficient is odd."""
        if any(c % 2 for c in self.coeffs):
            raise CyclotomicError("value is not divisible by 2 in Z[w]")
        return CycInt(self.p, tuple(c // 2 for c in self.coeffs))

    def conjugate(self) -> "CycInt":
        """Image under w -> w^(-1)."""
        full = [0] * self.p
        for k, c in enumerate(self.coeffs):
            full[(-k) % self.p] += c
        return CycInt.from_counts(full)

    def is_real(self) -> bool:
        return self.conjugate() == self

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def omega_pow(p: int, k: int) -> CycInt:
    if not 0 <= k < p:
        raise CyclotomicError(f"exponent {k} out of range [0, {p})")
    if k == p - 1:
        return CycInt(p, (-1,) * (p - 1))
    return CycInt(p, tuple(1 if i == k else 0 for i in range(p - 1)))


def cyc_arith(x: CycInt, y: CycInt | None, op: str) -> CycInt:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    raise ValueError(f"unknown op {op!r}")


def _legendre(t: int, p: int) -> int:
    t %= p
    if t == 0:
        return 0
    return 1 if pow(t, (p - 1) // 2, p) == 1 else -1


@lru_cache(maxsize=None)
def sqrt_p_element(p: int) -> CycInt:
    """Quadratic Gauss sum over F_p, which equals +sqrt(p) for p = 1 (mod 4)."""
    if p % 4 != 1:
        raise CyclotomicError(f"p = {p} is not 1 mod 4")
    g = CycInt.from_counts([_legendre(t, p) for t in range(p)])
    if g * g != CycInt.from_int(p, p):
        raise CyclotomicError("Gauss sum does not square to p")  # pragma: no cover
    return g


@dataclass(frozen=True)
class QuadValue:
    """The real number ``u + v*sqrt(p)`` with rational u, v."""

    u: Fraction
    v: Fraction
    p: int

    def __post_init__(self):
        object.__setattr__(self, "u", Fraction(self.u))
        object.__setattr__(self, "v", Fraction(self.v))

    @classmethod
    def of(cls, p: int, u=0, v=0) -> "QuadValue":
        return cls(Fraction(u), Fraction(v), p)

    def _check(self, other) -> "QuadValue":
        if isinstance(other, (int, Fraction)):
            return QuadValue(Fraction(other), Fraction(0), self.p)
        if other.p != self.p:
            raise CyclotomicError("mismatched p")
        return other

    def __add__(self, other):
        o = self._check(other)
        return QuadValue(self.u + o.u, self.v + o.v, self.p)

    __radd__ = __add__

    def __neg__(self):
        return QuadValue(-self.u, -self.v, self.p)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._check(other)
        return QuadValue(self.u * o.u + self.p * self.v * o.v, self.u * o.v + self.v * o.u, self.p)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = QuadValue.of(self.p, 1)
        for _ in range(k):
            out = out * self
        return out

    def __float__(self):
        return float(self.u) + float(self.v) * self.p**0.5

    def to_cycint(self) -> CycInt:
        """Inverse of :func:`recognize_quadratic`; requires 2u, 2v integral."""
        if (2 * self.u).denominator != 1 or (2 * self.v).denominator != 1:
            raise CyclotomicError(f"{self} has denominators beyond 2")
        g = sqrt_p_element(self.p)
        twice = CycInt.from_int(self.p, int(2 * self.u)) + int(2 * self.v) * g
        return twice.half()

    def pair(self) -> tuple[str, str]:
        return str(self.u), str(self.v)

    def __str__(self):
        if self.v == 0:
            return str(self.u)
        root = f"{abs(self.v)}*sqrt({self.p})"
        if self.u == 0:
            return root if self.v > 0 else f"-{root}"
        return f"{self.u}{'+' if self.v > 0 else '-'}{root}"


def recognize_quadratic(x: CycInt) -> QuadValue:
    """Write ``x`` as ``u + v*g`` with g the square root of p in Z[w].

    Raises:
        NotQuadraticError: no such rationals exist.
    """
    p = x.p
    g = sqrt_p_element(p)
    # g_0 = -1; g_k = eta(k) - 1, so the first nonresidue k gives g_k = -2
    k = next(i for i in range(1, p - 1) if g.coeffs[i] != 0)
    v = Fraction(x.coeffs[k], g.coeffs[k])
    u = x.coeffs[0] - v * g.coeffs[0]
    for i in range(p - 1):
        if x.coeffs[i] != u * (1 if i == 0 else 0) + v * g.coeffs[i]:
            raise NotQuadraticError(f"value is not in Q(sqrt {p}): {x.coeffs}")
    return QuadValue(u, v, p)


def to_complex(x: CycInt, precision: int = 53) -> complex:
    """Numerical value of ``x``; ``precision`` is the working precision in bits."""
    if precision < 53:
        raise CyclotomicError("precision must be at least 53 bits")
    if precision == 53:
        return sum(c * cmath.exp(2j * cmath.pi * k / x.p) for k, c in enumerate(x.coeffs) if c) + 0j
    with mpmath.workprec(precision):
        z = mpmath.fsum(c * mpmath.expjpi(mpmath.mpf(2 * k) / x.p) for k, c in enumerate(x.coeffs) if c)
        return complex(z)
