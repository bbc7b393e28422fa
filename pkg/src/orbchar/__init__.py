"""orbchar: exact verification of constant-term, character and Zhu-algebra identities.

Everything is computed over exact rationals (`fractions.Fraction`); there is
no floating point on any verification path.  See README.md for the library
tour and the `orbchar` command line.
"""

__version__ = "0.1.0"

from .poly import Poly, poly_gcd
from .binomial import binom_general, pochhammer

__all__ = ["Poly", "poly_gcd", "binom_general", "pochhammer", "__version__"]
