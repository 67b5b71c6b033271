"""
Exact Laurent polynomial arithmetic in one variable, and the degree-4
cyclotomic ring Z[x]/(x^4 - x^2 + 1) whose generator plays the primitive
12th root of unity e^(i*pi/6).

Polynomials carry a variable tag so that bracket values (in A) and Jones
values (in s, the square root of t) cannot be mixed up silently.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass


@dataclass(frozen=True)
class LaurentPoly:
    """Sparse Laurent polynomial with integer coefficients.

    coeffs maps exponent to a nonzero integer; var is a display/safety tag.
    """

    var: str
    coeffs: tuple[tuple[int, int], ...]  # sorted (exponent, coefficient)

    @staticmethod
    def make(var: str, items) -> "LaurentPoly":
        acc: dict[int, int] = {}
        pairs = items.items() if isinstance(items, dict) else items
        for e, c in pairs:
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(var, tuple(sorted((e, c) for e, c in acc.items() if c)))

    @staticmethod
    def const(var: str, c: int) -> "LaurentPoly":
        return LaurentPoly.make(var, [(0, c)])

    @staticmethod
    def term(var: str, c: int, e: int) -> "LaurentPoly":
        return LaurentPoly.make(var, [(e, c)])

    def _need_same(self, other: "LaurentPoly"):
        if self.var != other.var:
            raise ValueError(f"mixed variables {self.var!r} and {other.var!r}")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._need_same(other)
        return LaurentPoly.make(self.var, list(self.coeffs) + list(other.coeffs))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.var, tuple((e, -c) for e, c in self.coeffs))

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._need_same(other)
        acc: dict[int, int] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly.make(self.var, acc)

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = LaurentPoly.const(self.var, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c: int, e: int = 0) -> "LaurentPoly":
        """Multiply by the monomial c*var^e."""
        if c == 0:
            return LaurentPoly(self.var, ())
        return LaurentPoly(
            self.var, tuple((ee + e, cc * c) for ee, cc in self.coeffs)
        )

    def mirror(self) -> "LaurentPoly":
        """Substitute var -> var^(-1)."""
        return LaurentPoly(self.var, tuple(sorted((-e, c) for e, c in self.coeffs)))

    def substitute_square(self, new_var: str) -> "LaurentPoly":
        """Rewrite in new_var = var^(-2); all exponents must be even.

        This is the A to s step of the Jones normalization; odd exponents
        mean the writhe bookkeeping went wrong somewhere upstream.
        """
        out = []
        for e, c in self.coeffs:
            if e % 2:
                raise ValueError(f"odd exponent {e} cannot be halved exactly")
            out.append((-e // 2, c))
        return LaurentPoly(new_var, tuple(sorted(out)))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, e: int) -> int:
        return dict(self.coeffs).get(e, 0)

    def exponents(self) -> list[int]:
        return [e for e, _ in self.coeffs]

    def eval_complex(self, z: complex) -> complex:
        return sum(c * z**e for e, c in self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*{self.var}^{e}" for e, c in self.coeffs)


def divides(div: LaurentPoly, poly: LaurentPoly) -> bool:
    """Exact Laurent divisibility test.

    Monomials are units here, so both inputs are first shifted to lowest
    exponent zero; after that it is ordinary long division with the loop
    bounded below by the divisor's degree.
    """
    div._need_same(poly)
    if div.is_zero:
        return poly.is_zero
    if poly.is_zero:
        return True
    dcoef = {e - div.coeffs[0][0]: c for e, c in div.coeffs}
    top_e = max(dcoef)
    top_c = dcoef[top_e]
    rem = {e - poly.coeffs[0][0]: c for e, c in poly.coeffs}
    while rem:
        e = max(rem)
        c = rem[e]
        if e < top_e or c % top_c:
            return False
        q = c // top_c
        for de, dc in dcoef.items():
            key = e - top_e + de
            val = rem.get(key, 0) - q * dc
            if val:
                rem[key] = val
            else:
                rem.pop(key, None)
    return True


# -- the cyclotomic ring -----------------------------------------------------


@dataclass(frozen=True)
class Cyclotomic12:
    """Element c0 + c1*x + c2*x^2 + c3*x^3 of Z[x]/(x^4 - x^2 + 1)."""

    c0: int = 0
    c1: int = 0
    c2: int = 0
    c3: int = 0

    def __add__(self, o: "Cyclotomic12") -> "Cyclotomic12":
        return Cyclotomic12(
            self.c0 + o.c0, self.c1 + o.c1, self.c2 + o.c2, self.c3 + o.c3
        )

    def __sub__(self, o: "Cyclotomic12") -> "Cyclotomic12":
        return self + (-o)

    def __neg__(self) -> "Cyclotomic12":
        return Cyclotomic12(-self.c0, -self.c1, -self.c2, -self.c3)

    def __mul__(self, o: "Cyclotomic12") -> "Cyclotomic12":
        a = (self.c0, self.c1, self.c2, self.c3)
        b = (o.c0, o.c1, o.c2, o.c3)
        raw = [0] * 7
        for i in range(4):
            if a[i]:
                for j in range(4):
                    raw[i + j] += a[i] * b[j]
        # reduce with x^4 = x^2 - 1, highest degree first
        for deg in (6, 5, 4):
            if raw[deg]:
                raw[deg - 2] += raw[deg]
                raw[deg - 4] -= raw[deg]
                raw[deg] = 0
        return Cyclotomic12(raw[0], raw[1], raw[2], raw[3])

    def __pow__(self, n: int) -> "Cyclotomic12":
        if n < 0:
            # x is a unit of order 12; general inverses are not needed here
            raise ValueError("negative powers not supported; use x_power")
        out = Cyclotomic12(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "Cyclotomic12":
        """Complex conjugation: the generator maps to its inverse x^11."""
        out = Cyclotomic12(self.c0)
        for k, c in ((1, self.c1), (2, self.c2), (3, self.c3)):
            if c:
                xp = x_power(-k)
                out = out + Cyclotomic12(c * xp.c0, c * xp.c1, c * xp.c2, c * xp.c3)
        return out

    def norm_squared(self) -> int:
        """|z|^2 as a plain integer; the product with the conjugate must
        have no x component left or the input was not closed under
        conjugation (a bug in the caller's arithmetic)."""
        prod = self * self.conj()
        if (prod.c1, prod.c2, prod.c3) != (0, 0, 0):
            raise ArithmeticError(f"norm is not rational: {prod}")
        return prod.c0

    @property
    def is_rational(self) -> bool:
        return (self.c1, self.c2, self.c3) == (0, 0, 0)

    def as_complex(self) -> complex:
        x = cmath.exp(1j * cmath.pi / 6)
        return self.c0 + self.c1 * x + self.c2 * x**2 + self.c3 * x**3

    def __str__(self) -> str:
        return f"({self.c0}) + ({self.c1})x + ({self.c2})x^2 + ({self.c3})x^3"


X = Cyclotomic12(0, 1, 0, 0)

_X_POWERS: list[Cyclotomic12] = []
_acc = Cyclotomic12(1)
for _ in range(12):
    _X_POWERS.append(_acc)
    _acc = _acc * X
del _acc


def x_power(e: int) -> Cyclotomic12:
    """x^e for any integer e; x has multiplicative order 12."""
    return _X_POWERS[e % 12]


def eval_at_zeta(poly: LaurentPoly) -> Cyclotomic12:
    """
    Substitute the primitive 12th root x for the variable. For a Jones
    value in s this evaluates at t = x^2 = e^(i*pi/3), the root where
    coloring counts and Jones norms meet.
    """
    out = Cyclotomic12()
    for e, c in poly.coeffs:
        xp = x_power(e)
        out = out + Cyclotomic12(c * xp.c0, c * xp.c1, c * xp.c2, c * xp.c3)
    return out
