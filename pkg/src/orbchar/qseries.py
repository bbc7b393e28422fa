"""Sparse q-series with rational exponents, and the theta-function building blocks.

A `QSeries` stores exponents on a fixed grain D (all exponents in (1/D)*Z) as
integer keys, with Fraction coefficients.  `valid_below` is the absolute
exponent bound below which the stored coefficients are exact; None means the
series is exact everywhere (a finite q-polynomial).  Arithmetic unifies
grains via lcm and propagates validity bounds pessimistically, so `agree`
only ever compares coefficients both sides are certain about.

Theta conventions: Theta(lam, k) sums q^(k n^2) over n in Z + lam/(2k), and
dTheta weights each term by 2kn.  The eta-scaled combinations
p_hat = ((k-lam)*Theta + dTheta)/k and q_hat = (-lam*Theta + dTheta)/k are
eta times the printed P and Q families; all character identities downstream
are verified eta-scaled so eta never needs inverting (`eta` and `divide`
exist for presentation output only).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

Q = Fraction


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class QSeries:
    __slots__ = ("grain", "terms", "valid_below")

    def __init__(self, grain: int, terms: dict[int, Fraction] | None = None,
                 valid_below: Fraction | None = None):
        if grain <= 0:
            raise ValueError("grain must be positive")
        self.grain = grain
        self.valid_below = valid_below
        self.terms: dict[int, Fraction] = {}
        if terms:
            for key, c in terms.items():
                if c:
                    if valid_below is not None and Fraction(key, grain) >= valid_below:
                        continue
                    self.terms[key] = Fraction(c)

    # -- inspection ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def exponents(self) -> list[Fraction]:
        return [Fraction(k, self.grain) for k in sorted(self.terms)]

    def coeff(self, exponent) -> Fraction:
        e = Fraction(exponent)
        key = e * self.grain
        if key.denominator != 1:
            return Fraction(0)
        return self.terms.get(int(key), Fraction(0))

    def min_exponent(self) -> Fraction | None:
        if not self.terms:
            return None
        return Fraction(min(self.terms), self.grain)

    def leading(self) -> tuple[Fraction, Fraction] | None:
        if not self.terms:
            return None
        k = min(self.terms)
        return Fraction(k, self.grain), self.terms[k]

    def items(self):
        for k in sorted(self.terms):
            yield Fraction(k, self.grain), self.terms[k]

    def __repr__(self):
        head = ", ".join(f"q^({e}): {c}" for e, c in list(self.items())[:4])
        more = "" if len(self.terms) <= 4 else f", ... ({len(self.terms)} terms)"
        return f"QSeries({head}{more}; valid<{self.valid_below})"

    # -- grain handling ------------------------------------------------------

    def rescale(self, new_grain: int) -> "QSeries":
        if new_grain == self.grain:
            return self
        if new_grain % self.grain:
            raise ValueError("new grain must be a multiple of the old one")
        f = new_grain // self.grain
        return QSeries(new_grain, {k * f: c for k, c in self.terms.items()},
                       self.valid_below)

    @staticmethod
    def unified(a: "QSeries", b: "QSeries") -> tuple["QSeries", "QSeries"]:
        g = _lcm(a.grain, b.grain)
        return a.rescale(g), b.rescale(g)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "QSeries") -> "QSeries":
        a, b = QSeries.unified(self, other)
        vb = _min_valid(a.valid_below, b.valid_below)
        out = dict(a.terms)
        for k, c in b.terms.items():
            acc = out.get(k, Fraction(0)) + c
            if acc:
                out[k] = acc
            else:
                out.pop(k, None)
        return QSeries(a.grain, out, vb)

    def __neg__(self) -> "QSeries":
        return QSeries(self.grain, {k: -c for k, c in self.terms.items()},
                       self.valid_below)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def scale(self, c) -> "QSeries":
        c = Fraction(c)
        if c == 0:
            return QSeries(self.grain, {}, self.valid_below)
        return QSeries(self.grain, {k: v * c for k, v in self.terms.items()},
                       self.valid_below)

    def shift(self, delta) -> "QSeries":
        """Multiply by q^delta."""
        d = Fraction(delta)
        g = _lcm(self.grain, d.denominator)
        s = self.rescale(g)
        step = int(d * g)
        vb = None if s.valid_below is None else s.valid_below + d
        return QSeries(g, {k + step: c for k, c in s.terms.items()}, vb)

    def __mul__(self, other: "QSeries") -> "QSeries":
        a, b = QSeries.unified(self, other)
        vb = None
        if a.valid_below is not None:
            mb = b.min_exponent()
            vb = _min_valid(vb, None if mb is None else a.valid_below + mb)
        if b.valid_below is not None:
            ma = a.min_exponent()
            vb = _min_valid(vb, None if ma is None else b.valid_below + ma)
        out: dict[int, Fraction] = {}
        cap = None if vb is None else vb * a.grain
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                k = ka + kb
                if cap is not None and k >= cap:
                    continue
                acc = out.get(k, Fraction(0)) + ca * cb
                if acc:
                    out[k] = acc
                else:
                    out.pop(k, None)
        return QSeries(a.grain, out, vb)

    def truncate(self, bound) -> "QSeries":
        b = Fraction(bound)
        vb = b if self.valid_below is None else min(self.valid_below, b)
        return QSeries(self.grain, {k: c for k, c in self.terms.items()
                                    if Fraction(k, self.grain) < vb}, vb)

    # -- comparison ---------------------------------------------------------

    def agree(self, other: "QSeries") -> tuple[bool, Fraction | None]:
        """Coefficientwise equality below the common validity bound.

        Returns (True, common_bound) or (False, first mismatching exponent).
        """
        a, b = QSeries.unified(self, other)
        vb = _min_valid(a.valid_below, b.valid_below)
        keys = set(a.terms) | set(b.terms)
        for k in sorted(keys):
            if vb is not None and Fraction(k, a.grain) >= vb:
                continue
            if a.terms.get(k, Fraction(0)) != b.terms.get(k, Fraction(0)):
                return False, Fraction(k, a.grain)
        return True, vb


def _min_valid(a: Fraction | None, b: Fraction | None) -> Fraction | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


# ---------------------------------------------------------------------------
# Theta functions
# ---------------------------------------------------------------------------

def _theta_terms(lam: int, k: int, order) -> tuple[int, dict[int, Fraction], Fraction, bool]:
    """Shared enumeration: keys on grain 4k are (2kj+lam)^2, optionally weighted."""
    grain = 4 * k
    # minimal exponent over j
    j0 = -lam // (2 * k)
    lead_num = min((2 * k * j + lam) ** 2 for j in (j0 - 1, j0, j0 + 1))
    lead = Fraction(lead_num, grain)
    bound = lead + Fraction(order)
    cap = bound * grain
    terms: dict[int, int] = {}
    j = j0
    while (2 * k * j + lam) ** 2 < cap:
        j -= 1
    j += 1
    weights: dict[int, list[int]] = {}
    while True:
        w = 2 * k * j + lam
        if w * w >= cap and w > 0:
            break
        if w * w < cap:
            weights.setdefault(w * w, []).append(w)
        j += 1
    return grain, weights, bound, True


def theta(lam: int, k: int, order) -> QSeries:
    """Theta(lam, k) = sum over n in Z + lam/2k of q^(k n^2), to the given order.

    `order` counts exponent range beyond the minimal exponent.  The grain is
    4k; the index satisfies Theta(lam + 2k) = Theta(lam) = Theta(-lam).
    """
    grain, weights, bound, _ = _theta_terms(lam, k, order)
    terms = {key: Fraction(len(ws)) for key, ws in weights.items()}
    return QSeries(grain, terms, bound)


def dtheta(lam: int, k: int, order) -> QSeries:
    """dTheta(lam, k) = sum of 2kn q^(k n^2) over the same lattice."""
    grain, weights, bound, _ = _theta_terms(lam, k, order)
    terms = {key: Fraction(sum(ws)) for key, ws in weights.items()}
    return QSeries(grain, terms, bound)


def p_hat(lam: int, k: int, order) -> QSeries:
    """eta * P_{lam,k} = ((k - lam) Theta + dTheta)/k; all coefficients exact."""
    return (theta(lam, k, order).scale(Fraction(k - lam, k))
            + dtheta(lam, k, order).scale(Fraction(1, k)))


def q_hat(lam: int, k: int, order) -> QSeries:
    """eta * Q_{lam,k} = (-lam Theta + dTheta)/k."""
    return (theta(lam, k, order).scale(Fraction(-lam, k))
            + dtheta(lam, k, order).scale(Fraction(1, k)))


def eta(order) -> QSeries:
    """q^(1/24) prod_{n>=1} (1 - q^n), truncated at the given order past 1/24."""
    cap = int(Fraction(order)) + 1
    coeffs = {0: 1}
    for n in range(1, cap + 1):
        nxt = dict(coeffs)
        for e, c in coeffs.items():
            if e + n <= cap:
                nxt[e + n] = nxt.get(e + n, 0) - c
        coeffs = nxt
    series = QSeries(1, {e: Fraction(c) for e, c in coeffs.items()},
                     Fraction(cap + 1))
    return series.shift(Fraction(1, 24)).truncate(Fraction(1, 24) + Fraction(order))


def pentagonal(order) -> QSeries:
    """Euler's expansion sum_{j in Z} (-1)^j q^(j(3j-1)/2), the eta oracle."""
    cap = Fraction(order)
    terms: dict[int, Fraction] = {}
    grain = 2
    j = 0
    while True:
        done = True
        for jj in (j, -j) if j else (0,):
            e = Fraction(jj * (3 * jj - 1), 2)
            if e < cap:
                done = False
                terms[int(e * grain)] = Fraction((-1) ** abs(jj))
        if j and done:
            break
        j += 1
    return QSeries(grain, terms, cap)


def divide(a: QSeries, b: QSeries) -> QSeries:
    """Formal q-series division a/b (b with invertible leading coefficient).

    Presentation-layer helper (e.g. unscaled characters char/eta); identity
    verification never divides.
    """
    lb = b.leading()
    if lb is None:
        raise ZeroDivisionError("division by the zero series")
    e0, c0 = lb
    va = a.valid_below
    vbb = b.valid_below
    bound = _min_valid(None if va is None else va - e0,
                       None if vbb is None else vbb - 2 * e0 + (a.min_exponent() or e0))
    if bound is None:
        raise ValueError("cannot bound an exact division of infinite series")
    g = _lcm(a.grain, b.grain)
    a2, b2 = a.rescale(g), b.rescale(g)
    rem = dict(a2.terms)
    out: dict[int, Fraction] = {}
    shift0 = int(e0 * g)
    b_items = sorted(b2.terms.items())
    capk = bound * g
    while rem:
        k = min(rem)
        qk = k - shift0
        if Fraction(qk, g) >= bound:
            break
        qc = rem[k] / c0
        out[qk] = qc
        for kb, cb in b_items:
            kk = qk + kb
            acc = rem.get(kk, Fraction(0)) - qc * cb
            if acc:
                rem[kk] = acc
            else:
                rem.pop(kk, None)
    return QSeries(g, out, bound)


# ---------------------------------------------------------------------------
# tau-linear pairs and the weighted-theta rewriting identity
# ---------------------------------------------------------------------------

@dataclass
class TauVector:
    """a(q) + tau * b(q), the shape of generalized characters."""

    a: QSeries
    b: QSeries

    def agree(self, other: "TauVector") -> bool:
        return self.a.agree(other.a)[0] and self.b.agree(other.b)[0]


def dtheta_resummation(s: int, p: int, m: int, order, *, literal_index: bool = False):
    """(1/m) sum_{j=0}^{m-1} dTheta(m(s+2pj), pm^2) versus dTheta(s, p).

    The j-th summand's index steps by 2pm so the m sub-lattices tile
    Z + s/2p exactly; with `literal_index` the step is 2p instead (the
    printed form of the rewriting, which fails: the sub-lattices then do
    not tile and the mismatch is returned).
    """
    k = p * m * m
    total = QSeries(4 * k, {}, None)
    for j in range(m):
        lam = m * s + (2 * p * j if literal_index else 2 * p * m * j)
        total = total + dtheta(lam, k, order)
    total = total.scale(Fraction(1, m))
    return total.agree(dtheta(s, p, order))
