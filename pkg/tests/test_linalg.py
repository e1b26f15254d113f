"""Exact matrices, polynomials, and rational factorization.

Determinants, characteristic polynomials, and irreducibility are checked
against sympy as an independent oracle on random inputs.
"""

import random
from fractions import Fraction

import pytest

from padicscale.errors import SingularMatrixError
from padicscale.linalg import MonicPoly, QMatrix, factor_over_q


def rand_matrix(rng, n, span=20):
    return QMatrix([
        [Fraction(rng.randint(-span, span), rng.randint(1, 5))
         for _ in range(n)]
        for _ in range(n)
    ])


def test_det_against_sympy():
    sympy = pytest.importorskip("sympy")
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 5)
        m = rand_matrix(rng, n)
        expected = sympy.Matrix(n, n, lambda i, j: sympy.Rational(
            m[i, j].numerator, m[i, j].denominator)).det()
        assert m.det() == Fraction(int(expected.p), int(expected.q))


def test_charpoly_against_sympy():
    sympy = pytest.importorskip("sympy")
    rng = random.Random(4)
    x = sympy.Symbol("x")
    for _ in range(30):
        n = rng.randint(1, 4)
        m = rand_matrix(rng, n)
        f = m.charpoly()
        sm = sympy.Matrix(n, n, lambda i, j: sympy.Rational(
            m[i, j].numerator, m[i, j].denominator))
        expected = sm.charpoly(x).as_expr()
        ours = sum(sympy.Rational(c.numerator, c.denominator) * x ** i
                   for i, c in enumerate(f.coeffs))
        assert sympy.expand(expected - ours) == 0


def test_inverse_roundtrip():
    rng = random.Random(5)
    done = 0
    while done < 40:
        n = rng.randint(1, 5)
        m = rand_matrix(rng, n)
        if m.det() == 0:
            continue
        assert m @ m.inverse() == QMatrix.identity(n)
        done += 1


def test_inverse_singular_raises():
    with pytest.raises(SingularMatrixError):
        QMatrix([[1, 2], [2, 4]]).inverse()


def test_kernel_dimension_and_membership():
    m = QMatrix([[1, 2, 3], [2, 4, 6], [1, 1, 1]])
    ker = m.kernel()
    assert len(ker) == 1
    v = ker[0]
    assert all(e == 0 for e in m.apply(v))


def test_power_negative_exponents():
    m = QMatrix([[Fraction(1, 2), 1], [0, 3]])
    assert m.power(3) == m @ m @ m
    assert m.power(-2) == (m @ m).inverse()
    assert m.power(0) == QMatrix.identity(2)


def test_cayley_hamilton():
    rng = random.Random(6)
    for _ in range(20):
        n = rng.randint(1, 4)
        m = rand_matrix(rng, n)
        f = m.charpoly()
        zero = f.at_matrix(m)
        assert all(e == 0 for row in zero.entries for e in row)


def test_factor_cyclotomic_products():
    # x^6 - 1 = (x-1)(x+1)(x^2+x+1)(x^2-x+1)
    f = MonicPoly([Fraction(-1), 0, 0, 0, 0, 0, Fraction(1)])
    factors = factor_over_q(f)
    degrees = sorted(g.degree for g, _ in factors)
    assert degrees == [1, 1, 2, 2]
    product = MonicPoly([Fraction(1)])
    for g, mult in factors:
        for _ in range(mult):
            product = product * g
    assert product.coeffs == f.coeffs


def test_factor_against_sympy_irreducibility():
    sympy = pytest.importorskip("sympy")
    rng = random.Random(7)
    x = sympy.Symbol("x")
    for _ in range(40):
        deg = rng.randint(1, 5)
        coeffs = [Fraction(rng.randint(-6, 6)) for _ in range(deg)]
        f = MonicPoly(coeffs + [Fraction(1)])
        if f.coeffs[0] == 0:
            continue
        ours = factor_over_q(f)
        expr = sum(sympy.Rational(c.numerator, c.denominator) * x ** i
                   for i, c in enumerate(f.coeffs))
        _, sympy_factors = sympy.factor_list(expr)
        assert sum(m for _, m in ours) == sum(int(m) for _, m in sympy_factors)
        for g, _ in ours:
            gexpr = sum(sympy.Rational(c.numerator, c.denominator) * x ** i
                        for i, c in enumerate(g.coeffs))
            assert sympy.Poly(gexpr, x).is_irreducible


def test_factor_remultiplication_random():
    rng = random.Random(8)
    for _ in range(60):
        pieces = []
        total = 0
        while total < 4:
            d = rng.randint(1, 2)
            pieces.append(MonicPoly(
                [Fraction(rng.randint(-4, 4)) for _ in range(d)]
                + [Fraction(1)]))
            total += d
        f = MonicPoly([Fraction(1)])
        for g in pieces:
            f = f * g
        if f.coeffs[0] == 0:
            continue
        product = MonicPoly([Fraction(1)])
        for g, mult in factor_over_q(f):
            for _ in range(mult):
                product = product * g
        assert product.coeffs == f.coeffs
