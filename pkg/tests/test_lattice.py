"""Lattices over Z_p inside Q_p^n: canonical form, membership, indices."""

import random
from fractions import Fraction

import pytest

from padicscale.errors import NotNestedError
from padicscale.lattice import (
    Lattice,
    apply_matrix,
    canonicalize,
    contains,
    coordinates,
    dual_lattice,
    index_exponent,
    intersect,
    intersect_kernel,
    lattice_sum,
    member,
    scale_lattice,
    standard_lattice,
)
from padicscale.linalg import QMatrix
from padicscale.padic import vp


def rand_vectors(rng, p, n, count, span=3):
    vecs = []
    for _ in range(count):
        vecs.append([
            Fraction(rng.randint(-9, 9)) * Fraction(p) ** rng.randint(-span, span)
            for _ in range(n)
        ])
    return vecs


def test_canonical_form_is_generator_independent():
    rng = random.Random(21)
    for _ in range(50):
        p = rng.choice([2, 3, 5])
        n = rng.randint(1, 4)
        vecs = rand_vectors(rng, p, n, n + 1)
        L = canonicalize(vecs, p, n)
        # shuffled generators, plus p-unit combinations, give the same form
        shuffled = vecs[:]
        rng.shuffle(shuffled)
        extra = [
            [a + p * b for a, b in zip(shuffled[0], shuffled[-1])]
        ]
        M = canonicalize(shuffled + extra, p, n)
        assert L == M


def test_membership_of_generators_and_combinations():
    rng = random.Random(22)
    for _ in range(50):
        p = rng.choice([2, 3, 5])
        n = rng.randint(1, 4)
        vecs = rand_vectors(rng, p, n, n)
        L = canonicalize(vecs, p, n)
        for v in vecs:
            assert member(L, v)
        combo = [sum(row) for row in zip(*vecs)]
        assert member(L, combo)
        # dividing a generator by p leaves the lattice unless it was divisible
        v = vecs[0]
        if any(e != 0 for e in v):
            smaller = [e / (p ** 5) for e in v]
            assert not member(L, smaller)


def test_coordinates_reproduce_vector():
    rng = random.Random(23)
    for _ in range(50):
        p = rng.choice([2, 3, 5])
        n = rng.randint(1, 4)
        L = canonicalize(rand_vectors(rng, p, n, n), p, n)
        coeffs = [Fraction(rng.randint(-20, 20)) for _ in range(L.rank)]
        v = [sum(c * col[i] for c, col in zip(coeffs, L.basis))
             for i in range(n)]
        got = coordinates(L, v)
        assert got is not None
        rebuilt = [sum(c * col[i] for c, col in zip(got, L.basis))
                   for i in range(n)]
        assert rebuilt == [Fraction(e) for e in v]


def test_dual_of_dual_is_identity():
    rng = random.Random(24)
    for _ in range(30):
        p = rng.choice([2, 3])
        n = rng.randint(1, 4)
        L = canonicalize(rand_vectors(rng, p, n, n), p, n)
        if L.rank < n:
            continue
        assert dual_lattice(dual_lattice(L)) == L


def test_intersection_routes_agree():
    rng = random.Random(25)
    for _ in range(40):
        p = rng.choice([2, 3, 5])
        n = rng.randint(1, 3)
        L = canonicalize(rand_vectors(rng, p, n, n), p, n)
        M = canonicalize(rand_vectors(rng, p, n, n), p, n)
        if L.rank < n or M.rank < n:
            continue
        assert intersect(L, M) == intersect_kernel(L, M)


def test_intersection_contained_in_both():
    rng = random.Random(26)
    for _ in range(40):
        p = rng.choice([2, 3])
        n = rng.randint(1, 3)
        L = canonicalize(rand_vectors(rng, p, n, n), p, n)
        M = canonicalize(rand_vectors(rng, p, n, n), p, n)
        if L.rank < n or M.rank < n:
            continue
        K = intersect(L, M)
        assert contains(L, K) and contains(M, K)
        S = lattice_sum(L, M)
        assert contains(S, L) and contains(S, M)


def test_index_multiplicativity_on_nested_triples():
    rng = random.Random(27)
    done = 0
    while done < 60:
        p = rng.choice([2, 3, 5])
        n = rng.randint(1, 3)
        L = canonicalize(rand_vectors(rng, p, n, n), p, n)
        if L.rank < n:
            continue
        M = canonicalize(
            [[e * p ** k for e in col]
             for col in L.basis
             for k in [rng.randint(0, 2)]],
            p, n)
        K = canonicalize(
            [[e * p ** k for e in col]
             for col in M.basis
             for k in [rng.randint(0, 2)]],
            p, n)
        a = index_exponent(L, M)
        b = index_exponent(M, K)
        c = index_exponent(L, K)
        assert a >= 0 and b >= 0
        assert c == a + b
        done += 1


def test_index_requires_nesting():
    L = standard_lattice(2, 2)
    M = canonicalize([[Fraction(1, 2), 0], [0, 2]], 2, 2)
    with pytest.raises(NotNestedError):
        index_exponent(L, M)


def test_apply_matrix_scales_index():
    rng = random.Random(28)
    for _ in range(30):
        p = rng.choice([2, 3])
        n = rng.randint(1, 3)
        L = standard_lattice(p, n)
        A = QMatrix.diagonal([Fraction(p) ** rng.randint(0, 2)
                              for _ in range(n)])
        M = apply_matrix(A, L)
        assert contains(L, M)
        assert index_exponent(L, M) == sum(vp(A[i, i], p) for i in range(n))


def test_json_roundtrip():
    L = canonicalize([[Fraction(1, 2), 3], [0, Fraction(9, 4)]], 2, 2)
    assert Lattice.from_json(L.to_json()) == L
