"""Sparse multivariate Laurent expansions with per-variable exponent windows.

A `MultiSeries` is a finite window onto a (possibly infinite) Laurent
expansion: a fixed ordered variable tuple, per-variable inclusive exponent
bounds, and a sparse map from exponent vectors to coefficients.  Coefficients
are `Fraction` or `Poly` (for expansions whose exponents carry the formal
parameter t), mixed freely inside one series.

Window semantics: every stored exponent vector lies inside the window, and
arithmetic is exact within it.  A product can push terms outside the window;
the caller must say whether that is legitimate truncation (the window was
inferred large enough that dropped terms cannot influence the residues being
extracted) by passing ``allow_truncation=True``, otherwise a `WindowError` is
raised.  This is what separates certified-exact computations from
exploratory ones.

Residue extraction (`residue`, `constant_term`) requires the relevant
exponent (-1 or 0) to lie inside the window of the chosen variable, so a
result can never silently depend on clipped data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .binomial import binom_general
from .errors import BudgetExceededError, ExpansionError, WindowError
from .poly import Poly

Coeff = Union[Fraction, Poly]
Exponents = tuple[int, ...]
Window = tuple[tuple[int, int], ...]


def _coerce_coeff(c) -> Coeff:
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, (Fraction, Poly)):
        return c
    raise TypeError(f"bad coefficient type {type(c).__name__}")


def _is_zero(c: Coeff) -> bool:
    if isinstance(c, Poly):
        return c.is_zero()
    return c == 0


@dataclass(frozen=True)
class ExpansionDirection:
    """Which monomial a binomial series is expanded in positive powers of.

    ``numerator`` and ``denominator`` name the variables of the monomial
    u = numerator/denominator; either may be None (absent).  The expansion of
    (1 + sign*u)^e runs over nonnegative powers of u, matching the convention
    that (1 + x/y)^s is always expanded in positive powers of x.
    """

    numerator: str | None
    denominator: str | None = None

    def monomial(self, variables: tuple[str, ...]) -> Exponents:
        exps = [0] * len(variables)
        if self.numerator is not None:
            exps[variables.index(self.numerator)] += 1
        if self.denominator is not None:
            exps[variables.index(self.denominator)] -= 1
        if not any(exps):
            raise ExpansionError("expansion direction names no variable")
        return tuple(exps)


class MultiSeries:
    __slots__ = ("variables", "window", "terms")

    def __init__(self, variables: Iterable[str], window: Iterable[tuple[int, int]],
                 terms: Mapping[Exponents, Coeff] | None = None):
        self.variables: tuple[str, ...] = tuple(variables)
        self.window: Window = tuple((int(lo), int(hi)) for lo, hi in window)
        if len(self.window) != len(self.variables):
            raise ValueError("window length does not match variable count")
        for lo, hi in self.window:
            if lo > hi:
                raise WindowError(f"empty window [{lo}, {hi}]")
        self.terms: dict[Exponents, Coeff] = {}
        if terms:
            for exps, c in terms.items():
                c = _coerce_coeff(c)
                if _is_zero(c):
                    continue
                if not self.in_window(exps):
                    raise WindowError(f"term {exps} outside window {self.window}")
                self.terms[tuple(exps)] = c

    # -- basics ------------------------------------------------------------

    @staticmethod
    def zero(variables, window) -> "MultiSeries":
        return MultiSeries(variables, window)

    @staticmethod
    def constant(variables, window, c) -> "MultiSeries":
        zero_vec = (0,) * len(tuple(variables))
        return MultiSeries(variables, window, {zero_vec: c})

    @staticmethod
    def monomial(variables, window, exps, c=1) -> "MultiSeries":
        return MultiSeries(variables, window, {tuple(exps): c})

    def in_window(self, exps: Exponents) -> bool:
        return all(lo <= e <= hi for e, (lo, hi) in zip(exps, self.window))

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        raise TypeError("MultiSeries is not hashable")

    def copy_with_window(self, window) -> "MultiSeries":
        """Same terms under a new window (every term must fit)."""
        return MultiSeries(self.variables, window, self.terms)

    def sorted_terms(self) -> list[tuple[Exponents, Coeff]]:
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        n = len(self.terms)
        return f"MultiSeries(vars={self.variables}, {n} terms)"

    # -- linear operations ---------------------------------------------------

    def _check_compatible(self, other: "MultiSeries") -> None:
        if self.variables != other.variables:
            raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")

    def __add__(self, other: "MultiSeries") -> "MultiSeries":
        self._check_compatible(other)
        window = intersect_windows(self.window, other.window)
        out = MultiSeries(self.variables, window)
        for src in (self.terms, other.terms):
            for exps, c in src.items():
                if not out.in_window(exps):
                    raise WindowError(f"sum term {exps} outside window intersection")
                acc = out.terms.get(exps)
                acc = c if acc is None else acc + c
                if _is_zero(acc):
                    out.terms.pop(exps, None)
                else:
                    out.terms[exps] = acc
        return out

    def __neg__(self) -> "MultiSeries":
        return self.scale(Fraction(-1))

    def __sub__(self, other: "MultiSeries") -> "MultiSeries":
        return self + (-other)

    def scale(self, c) -> "MultiSeries":
        c = _coerce_coeff(c)
        out = MultiSeries(self.variables, self.window)
        if _is_zero(c):
            return out
        for exps, v in self.terms.items():
            w = v * c
            if not _is_zero(w):
                out.terms[exps] = w
        return out

    # -- extraction ----------------------------------------------------------

    def coefficient(self, assignment: Mapping[str, int]) -> "MultiSeries":
        """Series of the coefficient at the given exponents (partial extraction).

        Variables named in ``assignment`` are consumed; the result lives on the
        remaining variables.  Each requested exponent must lie in the window.
        """
        idx = {}
        for name, e in assignment.items():
            i = self.variables.index(name)
            lo, hi = self.window[i]
            if not lo <= e <= hi:
                raise WindowError(f"exponent {e} of {name} outside window [{lo}, {hi}]")
            idx[i] = e
        keep = [i for i in range(len(self.variables)) if i not in idx]
        out = MultiSeries(
            tuple(self.variables[i] for i in keep),
            tuple(self.window[i] for i in keep),
        )
        for exps, c in self.terms.items():
            if all(exps[i] == e for i, e in idx.items()):
                key = tuple(exps[i] for i in keep)
                acc = out.terms.get(key)
                acc = c if acc is None else acc + c
                if _is_zero(acc):
                    out.terms.pop(key, None)
                else:
                    out.terms[key] = acc
        return out

    def scalar(self) -> Coeff:
        """The value of a zero-variable series."""
        if self.variables:
            raise ValueError("series still has variables " + repr(self.variables))
        if not self.terms:
            return Fraction(0)
        return self.terms[()]

    def shift(self, deltas: Mapping[str, int]) -> "MultiSeries":
        """Multiply by the monomial prod(var^delta), shifting the window along."""
        dvec = [0] * len(self.variables)
        for name, d in deltas.items():
            dvec[self.variables.index(name)] = d
        window = tuple((lo + d, hi + d) for (lo, hi), d in zip(self.window, dvec))
        out = MultiSeries(self.variables, window)
        for exps, c in self.terms.items():
            out.terms[tuple(e + d for e, d in zip(exps, dvec))] = c
        return out

    def derivative(self, var: str) -> "MultiSeries":
        i = self.variables.index(var)
        lo, hi = self.window[i]
        window = list(self.window)
        window[i] = (lo - 1, hi - 1)
        out = MultiSeries(self.variables, window)
        for exps, c in self.terms.items():
            e = exps[i]
            if e == 0:
                continue
            key = exps[:i] + (e - 1,) + exps[i + 1:]
            acc = out.terms.get(key)
            add = c * Fraction(e)
            acc = add if acc is None else acc + add
            if _is_zero(acc):
                out.terms.pop(key, None)
            else:
                out.terms[key] = acc
        return out


def intersect_windows(a: Window, b: Window) -> Window:
    out = []
    for (alo, ahi), (blo, bhi) in zip(a, b):
        lo, hi = max(alo, blo), min(ahi, bhi)
        if lo > hi:
            raise WindowError("window intersection is empty")
        out.append((lo, hi))
    return tuple(out)


def multiply(a: MultiSeries, b: MultiSeries, *, allow_truncation: bool = False,
             max_terms: int | None = None) -> MultiSeries:
    """Exact product truncated to the window intersection.

    Terms falling outside the intersection raise `WindowError` unless the
    caller has marked the window sufficient by inference
    (``allow_truncation=True``).
    """
    a._check_compatible(b)
    window = intersect_windows(a.window, b.window)
    out = MultiSeries(a.variables, window)
    terms = out.terms
    lows = tuple(lo for lo, _ in window)
    highs = tuple(hi for _, hi in window)
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            exps = tuple(x + y for x, y in zip(ea, eb))
            if not all(lo <= e <= hi for e, lo, hi in zip(exps, lows, highs)):
                if allow_truncation:
                    continue
                raise WindowError(f"product term {exps} leaves window {window}")
            c = ca * cb
            acc = terms.get(exps)
            acc = c if acc is None else acc + c
            if _is_zero(acc):
                terms.pop(exps, None)
            else:
                terms[exps] = acc
        if max_terms is not None and len(terms) > max_terms:
            raise BudgetExceededError(
                f"series exceeded term budget {max_terms} (at {len(terms)} terms)")
    return out


def product(factors: Iterable[MultiSeries], *, allow_truncation: bool = False,
            max_terms: int | None = None) -> MultiSeries:
    it = iter(factors)
    try:
        acc = next(it)
    except StopIteration:
        raise ValueError("empty product")
    for f in it:
        acc = multiply(acc, f, allow_truncation=allow_truncation, max_terms=max_terms)
    return acc


def expand_power(variables, window, exponent, direction: ExpansionDirection,
                 sign: int = 1) -> MultiSeries:
    """Binomial series for (1 + sign * u)^exponent with u = direction monomial.

    The coefficient of u^j is C(exponent, j) * sign^j, carried exactly; a
    `Poly` exponent yields `Poly` coefficients of degree j.  The expansion is
    truncated by the window (the j-range is exactly the powers of u that fit),
    so a finite window is required: for genuinely infinite expansions
    (negative or t-dependent exponents) this is what makes the series a
    legitimate object.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    out = MultiSeries(variables, window)
    if not out.in_window((0,) * len(out.variables)):
        raise ExpansionError("window misses the constant term of the expansion")
    mono = direction.monomial(out.variables)
    jmax = None
    for e, (lo, hi) in zip(mono, out.window):
        if e > 0:
            jmax = hi // e if jmax is None else min(jmax, hi // e)
        elif e < 0:
            cap = lo // e  # need lo <= j*e, e < 0
            jmax = cap if jmax is None else min(jmax, cap)
    if jmax is None or jmax < 0:
        raise ExpansionError("window does not admit the expansion direction")
    for j in range(jmax + 1):
        if isinstance(exponent, int) and 0 <= exponent < j:
            break  # polynomial case: the series terminates
        c = binom_general(exponent, j)
        if sign == -1 and j % 2 == 1:
            c = -c
        if not _is_zero(c):
            out.terms[tuple(j * e for e in mono)] = c
    return out


def binomial_difference_power(variables, window, var_a: str, var_b: str, n: int,
                              *, allow_truncation: bool = False) -> MultiSeries:
    """(a - b)^n for two variables, exact; window clipping only if allowed."""
    if n < 0:
        raise ValueError("negative power of a polynomial")
    out = MultiSeries(variables, window)
    ia = out.variables.index(var_a)
    ib = out.variables.index(var_b)
    for k in range(n + 1):
        exps = [0] * len(out.variables)
        exps[ia] = k
        exps[ib] = n - k
        key = tuple(exps)
        if not out.in_window(key):
            if allow_truncation:
                continue
            raise WindowError(f"term {key} of ({var_a} - {var_b})^{n} leaves window")
        c = Fraction(binom_general(n, k))
        if (n - k) % 2 == 1:
            c = -c
        out.terms[key] = c
    return out


def exp_var(variables, window, var: str) -> MultiSeries:
    """exp(var) truncated to the window (coefficients 1/k!)."""
    out = MultiSeries(variables, window)
    i = out.variables.index(var)
    hi = out.window[i][1]
    if out.window[i][0] > 0:
        raise WindowError("window misses the constant term of exp")
    fact = Fraction(1)
    for k in range(hi + 1):
        if k:
            fact *= k
        exps = [0] * len(out.variables)
        exps[i] = k
        out.terms[tuple(exps)] = Fraction(1, 1) / fact
    return out


def residue(s: MultiSeries, var: str) -> MultiSeries:
    """Coefficient series of var^(-1); errors if -1 is outside the window."""
    return s.coefficient({var: -1})


def constant_term(s: MultiSeries, var: str) -> MultiSeries:
    """Coefficient series of var^0; errors if 0 is outside the window."""
    return s.coefficient({var: 0})
