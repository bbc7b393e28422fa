"""Exact dense univariate polynomials over the rationals.

Coefficients are `fractions.Fraction`, stored dense and ascending:
``Poly([28, 17])`` is ``17*x + 28``.  The same class serves both the formal
parameter of the constant-term identities (conventionally printed as ``t``)
and the weight variable of the relation polynomials (printed as ``x``); the
variable name is purely presentational.

Invariants: the stored tuple never has a trailing zero, so the zero
polynomial is the empty tuple and ``degree`` is the last index otherwise.
All arithmetic is exact; nothing in this module (or anywhere downstream)
touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

Scalar = Union[int, Fraction]


def _frac(v: Scalar) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"expected int or Fraction, got {type(v).__name__}")


class Poly:
    """Univariate polynomial with Fraction coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_frac(v) for v in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.c: tuple[Fraction, ...] = tuple(cs)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def const(v: Scalar) -> "Poly":
        return Poly([v])

    @staticmethod
    def variable() -> "Poly":
        """The monic degree-one polynomial x."""
        return Poly([0, 1])

    @staticmethod
    def from_roots(roots: Iterable[Scalar]) -> "Poly":
        """Monic polynomial with the given root multiset."""
        out = Poly([1])
        for root in roots:
            out = out * Poly([-_frac(root), 1])
        return out

    @staticmethod
    def monomial(coeff: Scalar, degree: int) -> "Poly":
        return Poly([0] * degree + [coeff])

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial reported as -1."""
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self) -> bool:
        return bool(self.c)

    def leading_coefficient(self) -> Fraction:
        if not self.c:
            return Fraction(0)
        return self.c[-1]

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.c):
            return self.c[k]
        return Fraction(0)

    def monic(self) -> "Poly":
        if not self.c:
            return self
        lead = self.c[-1]
        return Poly([v / lead for v in self.c])

    # -- ring operations ---------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c == Poly([other]).c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.c)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.c), len(other.c))
        return Poly([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-v for v in self.c])

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.c), len(other.c))
        return Poly([self.coeff(k) - other.coeff(k) for k in range(n)])

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly()
            return Poly([v * other for v in self.c])
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.c or not other.c:
            return Poly()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j, b in enumerate(other.c):
                if b:
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([v / other for v in self.c])
        return NotImplemented

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Poly([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        other = _coerce(other)
        if other is None or other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        q = [Fraction(0)] * max(len(rem) - len(other.c) + 1, 0)
        d = other.degree
        lead = other.c[-1]
        for k in range(len(rem) - 1, d - 1, -1):
            if rem[k] == 0:
                continue
            f = rem[k] / lead
            q[k - d] = f
            for j, b in enumerate(other.c):
                rem[k - d + j] -= f * b
        return Poly(q), Poly(rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    # -- evaluation --------------------------------------------------------

    def __call__(self, x):
        """Evaluate by Horner; accepts rationals or another Poly (composition)."""
        acc = Fraction(0) if not isinstance(x, Poly) else Poly()
        for v in reversed(self.c):
            acc = acc * x + v
        return acc

    # -- presentation ------------------------------------------------------

    def format(self, var: str = "x") -> str:
        if not self.c:
            return "0"
        parts = []
        for k in range(len(self.c) - 1, -1, -1):
            v = self.c[k]
            if v == 0:
                continue
            sign = "-" if v < 0 else "+"
            mag = abs(v)
            if k == 0:
                body = f"{mag}"
            else:
                xk = var if k == 1 else f"{var}^{k}"
                body = xk if mag == 1 else f"{mag}*{xk}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Poly({self.format()})"


def _coerce(v) -> Poly | None:
    if isinstance(v, Poly):
        return v
    if isinstance(v, (int, Fraction)):
        return Poly([v])
    return None


def poly_divmod_exact(f: Poly, g: Poly) -> Poly | None:
    """Quotient f/g when division is exact, else None."""
    q, r = divmod(f, g)
    return q if r.is_zero() else None


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm; rejects the (0, 0) input."""
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()
