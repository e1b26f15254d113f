"""Newton polygons: eigenvalue valuations and the scale exponent.

Convention (fixed here once and exercised by the x^2 - p worked example in
the tests): the lower convex hull of the points (i, vp(a_i)) is computed
with exact rational arithmetic, and a hull segment of slope s with
horizontal length l contributes the root valuation -s with multiplicity l.
For x^2 - p the hull runs (0, 1) -> (2, 0), slope -1/2, so both roots have
valuation +1/2, matching v(sqrt(p)) = 1/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import SingularPolynomialError
from .linalg import MonicPoly
from .padic import INFINITY, require_prime, vp


@dataclass(frozen=True)
class NewtonSegment:
    slope: Fraction
    length: int


@dataclass(frozen=True)
class ValuationMultiset:
    """Multiset of p-adic valuations of the roots of a monic polynomial."""

    prime: int
    entries: tuple  # ((valuation: Fraction, multiplicity: int), ...) ascending

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.entries)

    def total(self) -> Fraction:
        """Sum of valuation * multiplicity over all entries."""
        return sum((v * m for v, m in self.entries), Fraction(0))

    def negate(self) -> "ValuationMultiset":
        """Valuations of the inverted roots (reciprocal polynomial)."""
        flipped = sorted(((-v, m) for v, m in self.entries))
        return ValuationMultiset(self.prime, tuple(flipped))

    def signs(self):
        """Set of signs (-1, 0, 1) occurring among the valuations."""
        return {(-1 if v < 0 else (1 if v > 0 else 0)) for v, _ in self.entries}


def newton_segments(f: MonicPoly, p: int):
    """Hull segments of the Newton polygon of f at p (slopes ascending)."""
    require_prime(p)
    if f.coeffs[0] == 0:
        raise SingularPolynomialError("polynomial has 0 as a root")
    points = []
    for i, c in enumerate(f.coeffs):
        v = vp(c, p) if c != 0 else INFINITY
        if v is not INFINITY:
            points.append((i, v))
    # monotone-chain lower hull over at most deg+1 points, exact arithmetic
    hull = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # keep hull[-1] only while slopes stay strictly increasing
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    segments = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segments.append(
            NewtonSegment(slope=Fraction(y2 - y1, x2 - x1) * 1, length=x2 - x1)
        )
    return segments


def eigenvalue_valuations(f: MonicPoly, p: int) -> ValuationMultiset:
    """Valuations of the roots of f in an algebraic closure of Q_p.

    Requires f(0) != 0 (the polygon must start at i = 0).
    """
    if f.degree == 0:
        return ValuationMultiset(p, ())
    entries = {}
    for seg in newton_segments(f, p):
        val = -seg.slope
        entries[val] = entries.get(val, 0) + seg.length
    ordered = tuple(sorted(entries.items()))
    ms = ValuationMultiset(p, ordered)
    assert ms.degree == f.degree
    return ms


def scale_exponent(vals: ValuationMultiset) -> int:
    """Exponent e such that the expanding part contributes p**e.

    Roots with |lambda|_p >= 1 are exactly those with valuation <= 0, so
    e = -sum of valuation*multiplicity over non-positive valuations; the
    result is a nonnegative integer because hull vertices are lattice
    points.
    """
    e = -sum((v * m for v, m in vals.entries if v <= 0), Fraction(0))
    if e.denominator != 1 or e < 0:
        raise AssertionError(f"scale exponent {e} not a nonnegative integer")
    return int(e)


def dim_nonpositive(vals: ValuationMultiset) -> int:
    """Number of roots with valuation <= 0 (dimension of E_p + E_0)."""
    return sum(m for v, m in vals.entries if v <= 0)


def dim_sign(vals: ValuationMultiset, sign: int) -> int:
    """Number of roots whose valuation has the given sign (-1, 0, 1)."""
    if sign < 0:
        return sum(m for v, m in vals.entries if v < 0)
    if sign > 0:
        return sum(m for v, m in vals.entries if v > 0)
    return sum(m for v, m in vals.entries if v == 0)
