"""Exact integer/rational helpers and a small univariate polynomial ring over Z.

Integers are plain Python ``int`` and rationals are ``fractions.Fraction``;
both are arbitrary precision and immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Exact = Union[int, Fraction]


def factorial(k: int) -> int:
    if k < 0:
        raise ValueError(f"factorial of negative number {k}")
    return math.factorial(k)


def binomial(a: int, b: int) -> int:
    """C(a, b), with the convention C(a, b) = 0 outside 0 <= b <= a."""
    if a < 0:
        raise ValueError(f"binomial needs a >= 0, got {a}")
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


def double_factorial(k: int) -> int:
    if k < -1:
        raise ValueError(f"double factorial undefined for {k}")
    return math.prod(range(k, 0, -2))


def double_factorial_product(m: int) -> int:
    """Return 3!! * 5!! * ... * (2m-3)!!."""
    if m < 3:
        raise ValueError(f"need m >= 3, got {m}")
    return math.prod(double_factorial(2 * k - 1) for k in range(2, m))


def integer_mth_root(n: int, m: int) -> int | None:
    """Exact integer m-th root of ``n``, or None if ``n`` is not a perfect m-th power.

    Uses integer Newton iteration from above, so no floating point is involved.
    """
    if n <= 0:
        raise ValueError(f"need n > 0, got {n}")
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    if m == 1:
        return n
    # 2**ceil(bits/m) is an upper bound on the root
    x = 1 << -(-n.bit_length() // m)
    while True:
        y = ((m - 1) * x + n // x ** (m - 1)) // m
        if y >= x:
            break
        x = y
    return x if x**m == n else None


@lru_cache(maxsize=8)
def primes_up_to(bound: int) -> tuple[int, ...]:
    if bound < 2:
        return ()
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, bound + 1, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


@dataclass(frozen=True)
class Factorization:
    """Prime powers found by trial division plus the unfactored cofactor."""

    factors: tuple[tuple[int, int], ...]
    residual: int = 1

    def value(self) -> int:
        return math.prod(p**e for p, e in self.factors) * self.residual

    @property
    def complete(self) -> bool:
        return self.residual == 1

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def __str__(self) -> str:
        parts = [str(p) if e == 1 else f"{p}^{e}" for p, e in self.factors]
        if self.residual != 1 or not parts:
            parts.append(str(self.residual))
        return " * ".join(parts)


def factor_smooth(n: int, bound: int = 10**6) -> Factorization:
    if n <= 0:
        raise ValueError(f"need n > 0, got {n}")
    if bound < 2:
        raise ValueError(f"need bound >= 2, got {bound}")
    factors = []
    for p in primes_up_to(bound):
        if n == 1:
            break
        if n % p:
            continue
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        factors.append((p, e))
    return Factorization(tuple(factors), n)


def parse_exact(text: str) -> Exact:
    """Parse "-123" or "7/3"; integers come back as int."""
    value = Fraction(text.strip())
    return value.numerator if value.denominator == 1 else value


def format_exact(value: Exact) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class ExactDivisionError(ArithmeticError):
    """An exact division left a remainder."""


class IntPolynomial:
    """Polynomial in one indeterminate with integer coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def constant(cls, a: int) -> IntPolynomial:
        return cls((a,))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> IntPolynomial:
        return cls((0,) * degree + (coeff,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, a in enumerate(self.coeffs):
            if a == 0:
                continue
            if k == 0:
                terms.append(str(a))
            else:
                mono = "x" if k == 1 else f"x^{k}"
                terms.append(mono if a == 1 else f"-{mono}" if a == -1 else f"{a}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    @staticmethod
    def _coerce(other: IntPolynomial | int) -> IntPolynomial:
        if isinstance(other, IntPolynomial):
            return other
        if isinstance(other, int):
            return IntPolynomial.constant(other)
        raise TypeError(f"cannot combine IntPolynomial with {type(other).__name__}")

    def __add__(self, other: IntPolynomial | int) -> IntPolynomial:
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial([x + y for x, y in zip(a, b)] + list(a[len(b) :]))

    __radd__ = __add__

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-a for a in self.coeffs)

    def __sub__(self, other: IntPolynomial | int) -> IntPolynomial:
        return self + (-self._coerce(other))

    def __rsub__(self, other: int) -> IntPolynomial:
        return self._coerce(other) - self

    def __mul__(self, other: IntPolynomial | int) -> IntPolynomial:
        if isinstance(other, int):
            return IntPolynomial(a * other for a in self.coeffs)
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPolynomial:
        result = IntPolynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_div(self, divisor: IntPolynomial | int) -> IntPolynomial:
        """Quotient of an exact division in Z[x]; raises ExactDivisionError otherwise."""
        divisor = self._coerce(divisor)
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dd, lead = divisor.degree, divisor.leading
        if len(rem) - 1 < dd:
            if rem:
                raise ExactDivisionError(f"{self} is not divisible by {divisor}")
            return IntPolynomial()
        quot = [0] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            a = rem[k]
            if a == 0:
                continue
            q, r = divmod(a, lead)
            if r:
                raise ExactDivisionError(f"{self} is not divisible by {divisor}")
            quot[k - dd] = q
            for j, b in enumerate(divisor.coeffs):
                rem[k - dd + j] -= q * b
        if any(rem):
            raise ExactDivisionError(f"{self} is not divisible by {divisor}")
        return IntPolynomial(quot)

    def __call__(self, x: Exact | float):
        """Horner evaluation; exact for int/Fraction arguments."""
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(k * a for k, a in enumerate(self.coeffs) if k)


def rational_poly_divmod(
    num: Sequence[Fraction], den: Sequence[Fraction]
) -> tuple[list[Fraction], list[Fraction]]:
    """Division with remainder of rational coefficient lists (lowest degree first)."""
    num = [Fraction(a) for a in num]
    den = [Fraction(a) for a in den]
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    quot = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    for k in range(len(num) - 1, len(den) - 2, -1):
        q = num[k] / den[-1]
        if q:
            quot[k - len(den) + 1] = q
            for j, b in enumerate(den):
                num[k - len(den) + 1 + j] -= q * b
    rem = num[: len(den) - 1]
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem
