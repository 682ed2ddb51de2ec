"""Exact integer polynomials in one variable.

Coefficients are Python ints stored constant term first, so arithmetic,
gcd, divisibility, and squarefree decomposition are all exact. Floating
point enters only through evaluation.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable

import numpy as np

from .errors import ZeroPolynomial


class IntPolynomial:
    """Integer-coefficient polynomial ``a_0 + a_1 u + ... + a_n u^n``.

    Trailing zero coefficients are trimmed at construction; the zero
    polynomial is represented by an empty coefficient tuple and has
    degree -1. Instances are immutable and hashable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls((1,))

    @classmethod
    def monomial(cls, power: int, coeff: int = 1) -> "IntPolynomial":
        return cls([0] * power + [coeff])

    @classmethod
    def geometric(cls, length: int) -> "IntPolynomial":
        """1 + u + ... + u^(length-1), the unit-coefficient column polynomial."""
        return cls([1] * length)

    @classmethod
    def from_support(cls, positions: Iterable[int]) -> "IntPolynomial":
        """0/1 polynomial with unit coefficients exactly on ``positions``."""
        pos = set(int(p) for p in positions)
        if not pos:
            return cls.zero()
        return cls([1 if i in pos else 0 for i in range(max(pos) + 1)])

    # -- structure ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monomial(self) -> bool:
        return len(self.coeffs) >= 1 and sum(1 for c in self.coeffs if c) == 1

    @property
    def leading(self) -> int:
        if self.is_zero:
            return 0
        return self.coeffs[-1]

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == IntPolynomial((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero

    def __repr__(self) -> str:
        if self.is_zero:
            return "IntPolynomial(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mag = "" if abs(c) == 1 else str(abs(c)) + "*"
                sign = "-" if c < 0 else ""
                power = "u" if i == 1 else f"u^{i}"
                terms.append(f"{sign}{mag}{power}" if not terms else f"{'- ' if c < 0 else '+ '}{mag}{power}")
        return "IntPolynomial(" + " ".join(terms) + ")"

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPolynomial(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return IntPolynomial.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i >= 1)

    def shift(self, power: int) -> "IntPolynomial":
        """Multiply by u^power."""
        if self.is_zero:
            return self
        return IntPolynomial((0,) * power + self.coeffs)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, abs(c))
        return g if g else 1

    def primitive_part(self) -> "IntPolynomial":
        g = self.content()
        return IntPolynomial(c // g for c in self.coeffs)

    def monomial_split(self) -> tuple[int, "IntPolynomial"]:
        """Largest j with u^j | self, and the cofactor with nonzero constant term."""
        if self.is_zero:
            raise ZeroPolynomial("cannot split the zero polynomial")
        j = 0
        while self.coeffs[j] == 0:
            j += 1
        return j, IntPolynomial(self.coeffs[j:])

    # -- exact division and gcd ----------------------------------------

    def divmod_exact(self, other: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Quotient and remainder over the rationals, both integral or a ValueError."""
        q, r = _frac_divmod([Fraction(c) for c in self.coeffs], [Fraction(c) for c in other.coeffs])
        return _to_int_poly(q), _to_int_poly(r)

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial":
        q, r = self.divmod_exact(other)
        if not r.is_zero:
            raise ValueError(f"{other!r} does not divide {self!r}")
        return q

    def divides(self, other: "IntPolynomial") -> bool:
        """True iff self divides other over the rationals with integral quotient."""
        if self.is_zero:
            return other.is_zero
        try:
            other.exact_div(self)
        except ValueError:
            return False
        return True

    def gcd(self, other: "IntPolynomial") -> "IntPolynomial":
        """Primitive gcd over the integers, positive leading coefficient."""
        fa = [Fraction(c) for c in self.coeffs]
        fb = [Fraction(c) for c in other.coeffs]
        while _trimmed(fb):
            _, r = _frac_divmod(fa, fb)
            fa, fb = fb, r
        g = _to_int_poly(fa, clear_denominators=True).primitive_part()
        if g.leading < 0:
            g = -g
        return g

    def squarefree_decomposition(self) -> tuple[int, list[tuple["IntPolynomial", int]]]:
        """Yun decomposition ``self = unit * prod h_i^i`` with squarefree h_i.

        Returns (unit, [(h_i, i), ...]) where unit carries the integer
        content and sign, each h_i is primitive with positive leading
        coefficient, and the h_i are pairwise coprime.
        """
        if self.is_zero:
            raise ZeroPolynomial("zero polynomial has no squarefree decomposition")
        unit = self.content() * (1 if self.leading > 0 else -1)
        f = IntPolynomial(c // unit for c in self.coeffs)
        if f.degree == 0:
            return unit, []
        g = f.gcd(f.derivative())
        if g.degree == 0:
            return unit, [(f, 1)]
        out: list[tuple[IntPolynomial, int]] = []
        w = f.exact_div(g)
        y = f.derivative().exact_div(g)
        i = 1
        while w.degree > 0:
            z = y - w.derivative()
            h = w.gcd(z) if not z.is_zero else w
            if h.degree > 0:
                out.append((h, i))
            w = w.exact_div(h)
            y = z.exact_div(h) if not z.is_zero else IntPolynomial.zero()
            i += 1
        return unit, out

    # -- evaluation -----------------------------------------------------

    def __call__(self, z):
        """Evaluate at a complex point or ndarray of points (Horner)."""
        if self.is_zero:
            z = np.asarray(z)
            return np.zeros(z.shape, dtype=complex) if z.shape else 0j
        return np.polyval(np.array(self.coeffs[::-1], dtype=complex), z)

    def on_circle(self, k):
        """Evaluate at u = exp(2 pi i k); k may be a scalar or array."""
        return self(np.exp(2j * np.pi * np.asarray(k, dtype=float)))


def _trimmed(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _frac_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a, b = _trimmed(list(a)), _trimmed(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        coef = a[-1] / b[-1]
        shift = len(a) - len(b)
        q[shift] = coef
        for i, bi in enumerate(b):
            a[shift + i] -= coef * bi
        a.pop()
        a = _trimmed(a)
    return q, a


def _to_int_poly(fracs: list[Fraction], clear_denominators: bool = False) -> IntPolynomial:
    fracs = _trimmed(list(fracs))
    if not fracs:
        return IntPolynomial.zero()
    if clear_denominators:
        den = 1
        for x in fracs:
            den = den * x.denominator // gcd(den, x.denominator)
        return IntPolynomial(int(x * den) for x in fracs)
    if any(x.denominator != 1 for x in fracs):
        raise ValueError("quotient is not integral")
    return IntPolynomial(int(x) for x in fracs)
