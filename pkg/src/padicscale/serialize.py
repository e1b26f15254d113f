"""JSON-facing conversions.  Rationals travel as strings "num/den"
(denominator omitted when 1) so no interchange format ever rounds."""

from __future__ import annotations

from fractions import Fraction

from .linalg import MonicPoly, QMatrix


def rat_str(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_parse(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s))


def matrix_to_json(m: QMatrix):
    return [[rat_str(e) for e in row] for row in m.entries]


def matrix_from_json(rows) -> QMatrix:
    return QMatrix([[rat_parse(e) for e in row] for row in rows])


def poly_to_json(f: MonicPoly):
    return [rat_str(c) for c in f.coeffs]


def poly_from_json(coeffs) -> MonicPoly:
    return MonicPoly([rat_parse(c) for c in coeffs])


def vector_to_json(v):
    return [rat_str(e) for e in v]


def vector_from_json(v):
    return tuple(rat_parse(e) for e in v)
