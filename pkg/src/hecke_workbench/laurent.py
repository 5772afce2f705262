"""
Exact arithmetic in Z[q^(1/2), q^(-1/2)] and its specializations.

Exponents are stored as integer half-counts: the monomial q^(k/2) is stored
under the key k, so no floating point ever enters the algebra layer.

>>> h = HalfLaurent.q_half()
>>> h * h == HalfLaurent.q_power(1)
True
>>> print(HalfLaurent.q_power(1) - 1)
-1*q^(0/2) + 1*q^(2/2)
>>> specialize(HalfLaurent.q_power(-1), Real(4))
Fraction(1, 4)
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "HalfLaurent", "SpecTarget", "ModP", "ModC", "Real",
    "NotIntegralError", "specialize", "abs_lt_one", "is_prime",
]


class NotIntegralError(ValueError):
    """Raised when a specialization would need to invert a non-unit."""


class HalfLaurent:
    """An element of Z[q^(1/2), q^(-1/2)], stored sparsely and canonically."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for k, c in items:
                if c:
                    clean[int(k)] = clean.get(int(k), 0) + int(c)
            clean = {k: c for k, c in clean.items() if c}
        self._terms = clean
        self._hash = None

    # constructors -------------------------------------------------------

    @classmethod
    def const(cls, c: int) -> HalfLaurent:
        return cls({0: c})

    @classmethod
    def q_half(cls) -> HalfLaurent:
        return cls({1: 1})

    @classmethod
    def q_power(cls, e, coeff: int = 1) -> HalfLaurent:
        """``coeff * q^e`` for integer or half-integer e."""
        k = Fraction(e) * 2
        if k.denominator != 1:
            raise ValueError(f"exponent {e} is not a half-integer")
        return cls({int(k): coeff})

    @classmethod
    def monomial(cls, half_exp: int, coeff: int = 1) -> HalfLaurent:
        return cls({half_exp: coeff})

    @classmethod
    def coerce(cls, x) -> HalfLaurent:
        if isinstance(x, HalfLaurent):
            return x
        if isinstance(x, int):
            return cls.const(x)
        raise TypeError(f"cannot coerce {x!r} to HalfLaurent")

    # inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_half_exp(self) -> int:
        return min(self._terms)

    def max_half_exp(self) -> int:
        return max(self._terms)

    def monomial_parts(self) -> tuple[int, int]:
        """(half-exponent, coefficient) of a monomial."""
        if len(self._terms) != 1:
            raise ValueError(f"{self} is not a monomial")
        (k, c), = self._terms.items()
        return k, c

    def is_integral(self) -> bool:
        """True when no negative q-exponent occurs (p-integral)."""
        return not self._terms or min(self._terms) >= 0

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        try:
            other = HalfLaurent.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return _raw(out)

    __radd__ = __add__

    def __neg__(self):
        return _raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = HalfLaurent.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return HalfLaurent.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return _raw({})
            return _raw({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, HalfLaurent):
            return NotImplemented
        out: dict[int, int] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + c1 * c2
        return _raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = HalfLaurent.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> HalfLaurent:
        """Inverse of a unit, i.e. of a monomial with coefficient +-1."""
        k, c = self.monomial_parts()
        if c not in (1, -1):
            raise ZeroDivisionError(f"{self} is not a unit in Z[q^(+-1/2)]")
        return _raw({-k: c})

    def exact_div(self, other: HalfLaurent) -> HalfLaurent:
        """Divide by a monomial, requiring exact integer quotients."""
        k, c = other.monomial_parts()
        out = {}
        for k1, c1 in self._terms.items():
            qt, r = divmod(c1, c)
            if r:
                raise ArithmeticError(f"{self} is not divisible by {other}")
            out[k1 - k] = qt
        return _raw(out)

    # comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = HalfLaurent.const(other)
        if not isinstance(other, HalfLaurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # printing / parsing -------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*q^({k}/2)" for k, c in sorted(self._terms.items()))

    def __repr__(self):
        return f"HalfLaurent({str(self)!r})"

    _TERM = re.compile(r"^\s*(-?\d+)\s*\*\s*q\^\(\s*(-?\d+)\s*/\s*2\s*\)\s*$")

    @classmethod
    def parse(cls, text: str) -> HalfLaurent:
        """Parse the canonical print form."""
        text = text.strip()
        if text == "0":
            return cls()
        out = {}
        for chunk in text.split(" + "):
            m = cls._TERM.match(chunk)
            if not m:
                raise ValueError(f"cannot parse term {chunk!r}")
            c, k = int(m.group(1)), int(m.group(2))
            out[k] = out.get(k, 0) + c
        return cls(out)

    def evaluate(self, q_half):
        """Substitute a value for q^(1/2) (any field element supporting ** and +)."""
        total = 0
        for k, c in self._terms.items():
            total = total + c * q_half ** k
        return total


def _raw(terms: dict) -> HalfLaurent:
    obj = HalfLaurent.__new__(HalfLaurent)
    obj._terms = terms
    obj._hash = None
    return obj


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# specialization targets ---------------------------------------------------


@dataclass(frozen=True)
class ModP:
    """Reduction modulo the prime above p: q^(1/2) -> 0, coefficients mod p."""
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"ModP needs a prime, got {self.p}")


@dataclass(frozen=True)
class ModC:
    """Reduction to F_c with q^(1/2) -> r (r a unit of F_c)."""
    c: int
    r: int

    def __post_init__(self):
        if not is_prime(self.c):
            raise ValueError(f"ModC needs a prime, got {self.c}")
        if self.r % self.c == 0:
            raise ValueError("ModC needs q^(1/2) to map to a unit")


@dataclass(frozen=True)
class Real:
    """Evaluation at a real q0 > 1 with the positive square root."""
    q0: Fraction

    def __init__(self, q0):
        object.__setattr__(self, "q0", Fraction(q0))
        if self.q0 <= 1:
            raise ValueError("Real specialization needs q0 > 1")

    def sqrt(self):
        """Exact square root when rational, else a float."""
        n, d = self.q0.numerator, self.q0.denominator
        rn, rd = math.isqrt(n), math.isqrt(d)
        if rn * rn == n and rd * rd == d:
            return Fraction(rn, rd)
        return math.sqrt(float(self.q0))


SpecTarget = Union[ModP, ModC, Real]


def specialize(a: HalfLaurent, t: SpecTarget):
    """Ring homomorphism from Z[q^(+-1/2)] to F_p, F_c or R.

    Finite targets return a canonical residue in ``range(c)``.
    """
    a = HalfLaurent.coerce(a)
    if isinstance(t, ModP):
        if not a.is_integral():
            raise NotIntegralError(f"{a} is not p-integral")
        return a._terms.get(0, 0) % t.p
    if isinstance(t, ModC):
        total = 0
        for k, c in a._terms.items():
            total += c * pow(t.r, k, t.c)
        return total % t.c
    if isinstance(t, Real):
        return a.evaluate(t.sqrt())
    raise TypeError(f"unknown specialization target {t!r}")


def abs_lt_one(a: HalfLaurent) -> str:
    """Decide |a| < 1 for every real q > 1: 'always', 'never' or 'depends'.

    Only monomials +-c q^(k/2) are decided; anything else needs a
    concrete specialization.
    """
    a = HalfLaurent.coerce(a)
    if a.is_zero():
        return "always"
    if not a.is_monomial():
        return "depends"
    k, c = a.monomial_parts()
    c = abs(c)
    if k < 0 and c == 1:
        return "always"
    if k > 0 or (k == 0 and c >= 1):
        return "never"
    return "depends"
