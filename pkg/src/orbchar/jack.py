"""Partition-indexed machinery behind the two-row expansion of S(t, 3, p).

This module provides the second, fully independent route to S(t, 3, p): a
finite sum over partitions with at most two rows, assembled from Cauchy-kernel
coefficients, a principal specialization, and a Kadell-type constant-term
evaluation.  It also carries the Jack polynomials themselves (computed by
Gram-Schmidt orthogonalization in the power-sum inner product) so that the
constant-term building blocks can be cross-checked against brute-force
residues for small partitions, not just at the empty partition.

Conventions.  For a partition written in weakly decreasing parts, the arm of
a cell is the number of cells strictly to its right, the leg the number of
cells strictly below.  The inter-row gap product
``f_r(lam, p) = prod_{i<j} (lam_i - lam_j + (j-i)p)_p`` uses the positive gap
(j-i)p, so each Pochhammer base is >= p and the product never vanishes on
partitions; with this reading the two-row Cauchy coefficient formula agrees
with the hook formula everywhere (checked in the tests), and the Kadell
closed form reproduces the brute-force constant term.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .binomial import binom_general, pochhammer
from .laurent import MultiSeries, multiply, constant_term
from .poly import Poly


# ---------------------------------------------------------------------------
# Partitions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Partition:
    """Weakly decreasing nonnegative parts; trailing zeros are normalized away."""

    parts: tuple[int, ...]

    def __init__(self, parts=()):
        ps = [int(v) for v in parts]
        if any(v < 0 for v in ps):
            raise ValueError("negative part")
        if any(ps[i] < ps[i + 1] for i in range(len(ps) - 1)):
            raise ValueError("parts must be weakly decreasing")
        while ps and ps[-1] == 0:
            ps.pop()
        object.__setattr__(self, "parts", tuple(ps))

    def size(self) -> int:
        return sum(self.parts)

    def length(self) -> int:
        return len(self.parts)

    def part(self, i: int) -> int:
        """Part at 0-based index, zero-padded."""
        return self.parts[i] if i < len(self.parts) else 0

    def padded(self, n: int) -> tuple[int, ...]:
        if len(self.parts) > n:
            raise ValueError(f"partition longer than {n}")
        return self.parts + (0,) * (n - len(self.parts))

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition()
        return Partition(tuple(sum(1 for v in self.parts if v > j)
                               for j in range(self.parts[0])))

    def cells(self):
        """Yield (row, col), 0-based."""
        for i, v in enumerate(self.parts):
            for j in range(v):
                yield i, j

    def arm(self, i: int, j: int) -> int:
        return self.parts[i] - (j + 1)

    def leg(self, i: int, j: int) -> int:
        return sum(1 for v in self.parts[i + 1:] if v > j)

    def __repr__(self):
        return f"Partition{self.parts}"


def partitions_of(d: int, max_length: int | None = None):
    """All partitions of d (weakly decreasing tuples)."""
    out: list[tuple[int, ...]] = []

    def rec(remaining, cap, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        if max_length is not None and len(prefix) >= max_length:
            return
        for v in range(min(cap, remaining), 0, -1):
            rec(remaining - v, v, prefix + [v])

    rec(d, d, [])
    return out


# ---------------------------------------------------------------------------
# Cauchy coefficients and specializations
# ---------------------------------------------------------------------------

def alpha_coeff(lam: Partition, k: int) -> Fraction:
    """Cauchy-kernel coefficient from hooks: prod (A + kL + k)/(A + kL + 1)."""
    out = Fraction(1)
    for i, j in lam.cells():
        base = lam.arm(i, j) + k * lam.leg(i, j)
        out *= Fraction(base + k, base + 1)
    return out


def f_gap(lam: Partition, r: int, p: int) -> Fraction:
    """prod_{1<=i<j<=r} (lam_i - lam_j + (j-i)p)_p with zero-padded parts."""
    padded = lam.padded(r)
    out = Fraction(1)
    for i in range(r):
        for j in range(i + 1, r):
            out *= pochhammer(Fraction(padded[i] - padded[j] + (j - i) * p), p)
    return out


def alpha_closed_two_row(l1: int, l2: int, p: int) -> Fraction:
    """Closed two-row form of the Cauchy coefficient (r=3 gap product)."""
    if not 0 <= l2 <= l1:
        raise ValueError("need l1 >= l2 >= 0")
    num = (pochhammer(Fraction(p), l1 + 2 * p)
           * pochhammer(Fraction(p), l2 + p)
           * pochhammer(Fraction(l1 - l2 + 1), p)
           * pochhammer(Fraction(l2 + 1), p)
           * pochhammer(Fraction(l1 + p + 1), p))
    den = (factorial(l1 + 2 * p) * factorial(l2 + p)
           * f_gap(Partition((l1, l2) if l2 else ((l1,) if l1 else ())), 3, p))
    return num / den


def principal_spec(lam: Partition, n: int, k: int) -> Poly:
    """s_lam(z, ..., z) as the monomial c * z^|lam|, c from the gap-ratio product."""
    padded = lam.padded(n)  # raises if the partition is too long
    c = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            gap = (j - i) * k
            c *= pochhammer(Fraction(gap + padded[i] - padded[j]), k) / pochhammer(Fraction(gap), k)
    return Poly.monomial(c, lam.size())


def principal_spec_two_row_forms(l1: int, l2: int, p: int) -> tuple[Fraction, Fraction]:
    """Both printed shapes of the n=2 principal coefficient; they must agree."""
    a = pochhammer(Fraction(p + l1 - l2), p) / pochhammer(Fraction(p), p)
    b = binom_general(Fraction(l1 - l2 + 2 * p - 1), p) / binom_general(Fraction(2 * p - 1), p)
    return a, b


# ---------------------------------------------------------------------------
# Kadell constant term, summand coefficients, and the partition sum
# ---------------------------------------------------------------------------

def _t() -> Poly:
    return Poly.variable()


def kadell_ct(lam: Partition, p: int) -> Poly:
    """Closed form of CT{ s_lam * two-sided Vandermonde^p * prod (1-z_i)^(t-2p+1) (1-1/z_i)^(2p-1) }.

    Vanishes identically (zero polynomial) once l1 > 2p-1; that cutoff is what
    makes the partition sum finite.
    """
    if lam.length() > 2:
        raise ValueError("two-row partitions only")
    l1, l2 = lam.part(0), lam.part(1)
    if l1 > 2 * p - 1:
        return Poly()
    t = _t()
    f3 = f_gap(lam, 3, p)
    c = Fraction(6 * factorial(2 * p - 1) * factorial(2 * p - 1 - l2), 1) * f3
    c *= (-1) ** (l1 + l2)
    c /= factorial(4 * p - 1) * factorial(3 * p - 1 - l2)
    return (binom_general(t + 2 * p, 2 * p - 1 - l1)
            * binom_general(t + p, 2 * p - 1 - l2)
            * binom_general(t, 2 * p - 1)) * c


def kadell_ct_factorial_form(lam: Partition, p: int) -> Poly:
    """The same constant term assembled from the factorial-quotient shape."""
    if lam.length() > 2:
        raise ValueError("two-row partitions only")
    l1, l2 = lam.part(0), lam.part(1)
    if l1 > 2 * p - 1 or l2 > 3 * p - 1:
        return Poly()
    t = _t()
    out = Poly([1])
    for j in range(l1 + 2, 2 * p + 1):          # (t+2p)!/(t+1+l1)!
        out = out * (t + j)
    for j in range(2 - p + l2, p + 1):          # (t+p)!/(t+1-p+l2)!
        out = out * (t + j)
    for j in range(0, 2 * p - 1):               # t!/(t-2p+1)!
        out = out * (t - j)
    c = Fraction(6, 1) * f_gap(lam, 3, p) * (-1) ** (l1 + l2)
    c /= factorial(2 * p - 1 - l1) * factorial(3 * p - 1 - l2) * factorial(4 * p - 1)
    return out * c


def c_coeff(l1: int, l2: int, p: int) -> Fraction:
    """The partition-sum coefficient with the gap products already cancelled."""
    num = (Fraction(6 * factorial(2 * p - 1) * factorial(2 * p - 1 - l2), 1)
           * binom_general(Fraction(l1 - l2 + 2 * p - 1), p)
           * pochhammer(Fraction(p), l1 + 2 * p)
           * pochhammer(Fraction(p), l2 + p)
           * pochhammer(Fraction(l1 - l2 + 1), p)
           * pochhammer(Fraction(l2 + 1), p)
           * pochhammer(Fraction(l1 + p + 1), p))
    den = ((-1) ** (p + 1) * factorial(l1 + 2 * p) * factorial(l2 + p)
           * binom_general(Fraction(2 * p - 1), p)
           * factorial(4 * p - 1) * factorial(3 * p - 1 - l2))
    return num / den


def partition_pair_count(p: int) -> int:
    """Number of summands 0 <= l2 <= l1 <= 2p-1."""
    return p * (2 * p + 1)


def appendixB_sum(p: int) -> Poly:
    """S(t, 3, p) as the finite two-row partition sum (independent of the residue engine)."""
    t = _t()
    total = Poly()
    for l1 in range(0, 2 * p):
        for l2 in range(0, l1 + 1):
            term = (binom_general(t + l1 + l2 + 1, 2 * p + 1 + l1 + l2)
                    * binom_general(t + 2 * p, 2 * p - 1 - l1)
                    * binom_general(t + p, 2 * p - 1 - l2)
                    * binom_general(t, 2 * p - 1))
            total = total + term * (c_coeff(l1, l2, p) * (-1) ** (l1 + l2))
    return total


# ---------------------------------------------------------------------------
# Brute-force constant-term oracle for the Kadell closed form
# ---------------------------------------------------------------------------

def kadell_direct_ct(lam: Partition, p: int, *, max_terms: int | None = 4_000_000) -> Poly:
    """CT over z1,z2,z3 of the Kadell integrand, by windowed expansion.

    Window inference: per variable the available negative powers are bounded
    by p*(r-1) from the two-sided Vandermonde plus 2p-1 from (1-1/z_i), so no
    monomial with any exponent beyond +/-(4p-1) can return to exponent zero.
    """
    r = 3
    names = ("z1", "z2", "z3")
    bound = p * (r - 1) + 2 * p - 1
    window = tuple((-bound, bound) for _ in names)
    acc = _jack_multiseries(lam, names, window, p)
    t = _t()
    exponent = t - (2 * p - 1)
    for i in range(r):
        for j in range(i + 1, r):
            acc = multiply(acc, _ratio_power(names, window, i, j, p),
                           allow_truncation=True, max_terms=max_terms)
            acc = multiply(acc, _ratio_power(names, window, j, i, p),
                           allow_truncation=True, max_terms=max_terms)
    for i in range(r):
        fi = MultiSeries(names, window, {
            _unit(names, i, d): binom_general(exponent, d) * ((-1) ** d)
            for d in range(bound + 1)
        })
        acc = multiply(acc, fi, allow_truncation=True, max_terms=max_terms)
        gi = MultiSeries(names, window, {
            _unit(names, i, -a): binom_general(2 * p - 1, a) * ((-1) ** a)
            for a in range(0, min(2 * p - 1, bound) + 1)
        })
        acc = multiply(acc, gi, allow_truncation=True, max_terms=max_terms)
    for name in names:
        acc = constant_term(acc, name)
    value = acc.scalar()
    return value if isinstance(value, Poly) else Poly([value])


def _unit(names, i, e):
    v = [0] * len(names)
    v[i] = e
    return tuple(v)


def _ratio_power(names, window, i, j, p):
    """(1 - z_i/z_j)^p inside the window."""
    terms = {}
    for a in range(p + 1):
        v = [0] * len(names)
        v[i] = a
        v[j] = -a
        terms[tuple(v)] = binom_general(p, a) * ((-1) ** a)
    return MultiSeries(names, window, terms)


def _jack_multiseries(lam: Partition, names, window, p) -> MultiSeries:
    if lam.size() == 0:
        return MultiSeries.constant(names, window, 1)
    coeffs = jack_poly(lam, len(names), p)
    terms = {exps: c for exps, c in coeffs.items()}
    return MultiSeries(names, window, terms)


# ---------------------------------------------------------------------------
# Jack polynomials by Gram-Schmidt in the power-sum inner product
# ---------------------------------------------------------------------------

def _zee(mu: tuple[int, ...]) -> int:
    z = 1
    for v in set(mu):
        m = mu.count(v)
        z *= v ** m * factorial(m)
    return z


@lru_cache(maxsize=None)
def _power_in_monomials(mu: tuple[int, ...], d: int) -> dict[tuple[int, ...], Fraction]:
    """Coordinates of p_mu in the monomial basis of degree-d symmetric functions."""
    nvars = d  # enough variables to see every partition of d
    expanded: dict[tuple[int, ...], Fraction] = {(0,) * nvars: Fraction(1)}
    for part in mu:
        nxt: dict[tuple[int, ...], Fraction] = {}
        for exps, c in expanded.items():
            for v in range(nvars):
                key = list(exps)
                key[v] += part
                key = tuple(key)
                nxt[key] = nxt.get(key, Fraction(0)) + c
        expanded = nxt
    out: dict[tuple[int, ...], Fraction] = {}
    for lam in partitions_of(d):
        canonical = tuple(lam) + (0,) * (nvars - len(lam))
        c = expanded.get(canonical, Fraction(0))
        if c:
            out[lam] = c
    return out


@lru_cache(maxsize=None)
def _monomial_to_power(d: int) -> dict[tuple[int, ...], dict[tuple[int, ...], Fraction]]:
    """m_lam expressed in the power-sum basis, by inverting the p->m matrix."""
    parts = partitions_of(d)
    index = {lam: i for i, lam in enumerate(parts)}
    n = len(parts)
    # rows: p_mu in m-basis
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i, mu in enumerate(parts):
        for lam, c in _power_in_monomials(mu, d).items():
            rows[i][index[lam]] = c
    # invert by Gauss-Jordan
    aug = [row[:] + [Fraction(1) if j == i else Fraction(0) for j in range(n)]
           for i, row in enumerate(rows)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        lead = aug[col][col]
        aug[col] = [v / lead for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    inv = {}
    # with p = R m, row lam of R^-1 gives m_lam in the p-basis
    for i, lam in enumerate(parts):
        coords = {}
        for j, mu in enumerate(parts):
            v = aug[i][n + j]
            if v:
                coords[mu] = v
        inv[lam] = coords
    return inv


def _dominance_key(lam: tuple[int, ...], d: int) -> tuple[int, ...]:
    sums, acc = [], 0
    padded = list(lam) + [0] * (d - len(lam))
    for v in padded:
        acc += v
        sums.append(acc)
    return tuple(sums)


def _inner_in_p(a: dict, b: dict, k: int) -> Fraction:
    total = Fraction(0)
    inv_k = Fraction(1, k)
    for mu, ca in a.items():
        cb = b.get(mu)
        if cb:
            total += ca * cb * _zee(mu) * inv_k ** len(mu)
    return total


@lru_cache(maxsize=None)
def _jack_monomial_coords(d: int, k: int) -> dict[tuple[int, ...], dict[tuple[int, ...], Fraction]]:
    """Monic Jack basis of degree d at parameter k, in monomial coordinates."""
    if d == 0:
        return {(): {(): Fraction(1)}}
    parts = sorted(partitions_of(d), key=lambda lam: _dominance_key(lam, d))
    m2p = _monomial_to_power(d)
    built: dict[tuple[int, ...], dict[tuple[int, ...], Fraction]] = {}
    built_p: dict[tuple[int, ...], dict[tuple[int, ...], Fraction]] = {}
    for lam in parts:
        coords_m = {lam: Fraction(1)}
        coords_p: dict[tuple[int, ...], Fraction] = dict(m2p[lam])
        for mu in built:
            num = _inner_in_p(coords_p, built_p[mu], k)
            if num == 0:
                continue
            den = _inner_in_p(built_p[mu], built_p[mu], k)
            f = num / den
            for nu, c in built[mu].items():
                coords_m[nu] = coords_m.get(nu, Fraction(0)) - f * c
            for nu, c in built_p[mu].items():
                coords_p[nu] = coords_p.get(nu, Fraction(0)) - f * c
        built[lam] = {nu: c for nu, c in coords_m.items() if c}
        built_p[lam] = {nu: c for nu, c in coords_p.items() if c}
    return built


def _monomial_symmetric(lam: tuple[int, ...], n: int) -> dict[tuple[int, ...], Fraction]:
    if len(lam) > n:
        return {}
    padded = tuple(lam) + (0,) * (n - len(lam))
    return {perm: Fraction(1) for perm in set(itertools.permutations(padded))}


def jack_poly(lam: Partition, n: int, k: int) -> dict[tuple[int, ...], Fraction]:
    """The Jack polynomial s_lam in n variables, normalized by principal specialization.

    Returns a sparse exponent-vector dict.  The Gram-Schmidt construction is
    monic in m_lam; the result is rescaled so that substituting all variables
    equal reproduces `principal_spec` exactly, which pins the normalization
    without reference to any basis convention.
    """
    if lam.length() > n:
        raise ValueError("partition longer than variable count")
    d = lam.size()
    if d == 0:
        return {(0,) * n: Fraction(1)}
    coords = _jack_monomial_coords(d, k)[lam.parts]
    poly: dict[tuple[int, ...], Fraction] = {}
    for mu, c in coords.items():
        for exps, unit in _monomial_symmetric(mu, n).items():
            poly[exps] = poly.get(exps, Fraction(0)) + c * unit
    poly = {e: c for e, c in poly.items() if c}
    at_ones = sum(poly.values())
    target = principal_spec(lam, n, k).coeff(d)
    if at_ones == 0:
        raise ArithmeticError("degenerate principal value")
    scale = target / at_ones
    return {e: c * scale for e, c in poly.items()}


def cauchy_kernel_truncated(n: int, m: int, k: int, degree: int) -> dict[tuple[int, ...], Fraction]:
    """prod_{i<=n, j<=m} (1 - z_i y_j)^(-k) up to total degree `degree` in z.

    Exponent vectors are (z_1..z_n, y_1..y_m).
    """
    acc: dict[tuple[int, ...], Fraction] = {(0,) * (n + m): Fraction(1)}
    for i in range(n):
        for j in range(m):
            nxt: dict[tuple[int, ...], Fraction] = {}
            for exps, c in acc.items():
                zdeg = sum(exps[:n])
                for a in range(degree - zdeg + 1):
                    coeff = c * binom_general(k + a - 1, a)
                    key = list(exps)
                    key[i] += a
                    key[n + j] += a
                    key = tuple(key)
                    nxt[key] = nxt.get(key, Fraction(0)) + coeff
            acc = {e: v for e, v in nxt.items() if v}
    return acc


def cauchy_sum_truncated(n: int, m: int, k: int, degree: int) -> dict[tuple[int, ...], Fraction]:
    """sum_lam alpha_lam s_lam(z) s_lam(y) up to total z-degree `degree`."""
    out: dict[tuple[int, ...], Fraction] = {}
    for d in range(degree + 1):
        for lam_t in partitions_of(d) if d else [()]:
            lam = Partition(lam_t)
            if lam.length() > min(n, m):
                continue
            a = alpha_coeff(lam, k)
            sz = jack_poly(lam, n, k)
            sy = jack_poly(lam, m, k)
            for ez, cz in sz.items():
                for ey, cy in sy.items():
                    key = ez + ey
                    out[key] = out.get(key, Fraction(0)) + a * cz * cy
    return {e: v for e, v in out.items() if v}
