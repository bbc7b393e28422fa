"""Generalized binomial coefficients and Pochhammer symbols.

Both functions accept an exact rational (or int) argument, or a `Poly`, and
return a value of the same kind.  The binomial uses the falling-factorial
definition C(x, n) = x(x-1)...(x-n+1)/n!, which is total for every rational
or polynomial x and every n >= 0; negative rational upper arguments are
evaluated by the same product.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Union

from .poly import Poly

Arg = Union[int, Fraction, Poly]


def falling_factorial(x: Arg, n: int) -> Arg:
    """x(x-1)...(x-n+1); empty product for n = 0."""
    if n < 0:
        raise ValueError("falling_factorial needs n >= 0")
    out: Arg = Poly([1]) if isinstance(x, Poly) else Fraction(1)
    for j in range(n):
        out = out * (x - j)
    return out


def binom_general(x: Arg, n: int) -> Arg:
    """Generalized binomial coefficient C(x, n) for n >= 0."""
    if n < 0:
        raise ValueError("binom_general needs n >= 0")
    if isinstance(x, int) and 0 <= x:
        return Fraction(comb(x, n)) if n <= x else Fraction(0)
    return falling_factorial(x, n) / factorial(n)


def pochhammer(x: Arg, a: int) -> Arg:
    """Rising factorial (x)_a = x(x+1)...(x+a-1); (x)_0 = 1."""
    if a < 0:
        raise ValueError("pochhammer needs a >= 0")
    out: Arg = Poly([1]) if isinstance(x, Poly) else Fraction(1)
    for j in range(a):
        out = out * (x + j)
    return out
