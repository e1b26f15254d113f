"""Finite nilpotent factors: closures, Sylow decomposition, hom search."""

import itertools
import random

import pytest

from padicscale.errors import CapExceededError, UnknownPrimeError
from padicscale.nilpotent import (
    FinitePGroup,
    ProductGroup,
    SubgroupHandle,
    close,
    cyclic,
    element_sylow_part,
    hom_search,
    quaternion8,
    sylow_decompose,
)


def test_cyclic_group_structure():
    g = cyclic(8)
    assert g.order == 8
    assert g.element_order(1) == 8
    assert g.element_order(2) == 4
    assert g.mul(5, 6) == 3
    assert g.inv(3) == 5


def test_cyclic_rejects_non_prime_power():
    with pytest.raises(ValueError):
        cyclic(6)


def test_quaternion_group_structure():
    q = quaternion8()
    assert q.order == 8
    orders = sorted(q.element_order(a) for a in range(8))
    assert orders == [1, 2, 4, 4, 4, 4, 4, 4]


def test_bad_cayley_table_rejected():
    # constant rows are not a latin square
    with pytest.raises(ValueError):
        FinitePGroup(2, [[0, 0], [1, 1]])


def test_closure_of_product_generators():
    group = ProductGroup([cyclic(4), cyclic(9)])
    s = close(group, [(1, 1)])
    assert len(s) == 36
    s2 = close(group, [(2, 0), (0, 3)])
    assert len(s2) == 6


def test_closure_cap_is_hard_error():
    group = ProductGroup([cyclic(16), cyclic(27)])
    with pytest.raises(CapExceededError):
        close(group, [(1, 1)], cap=10)


def test_sylow_decomposition_verified():
    group = ProductGroup([cyclic(4), cyclic(9)])
    handle = SubgroupHandle(group, ((1, 1),))
    dec = sylow_decompose(group, handle)
    assert dec.verified
    assert len(dec.part(2)) == 4
    assert len(dec.part(3)) == 9
    with pytest.raises(UnknownPrimeError):
        dec.part(5)


def test_sylow_matches_brute_force():
    rng = random.Random(61)
    for _ in range(20):
        factors = [cyclic(rng.choice([2, 4, 8])), cyclic(rng.choice([3, 9]))]
        if rng.random() < 0.3:
            factors[0] = quaternion8()
        group = ProductGroup(factors)
        gens = tuple(
            tuple(rng.randrange(f.order) for f in factors)
            for _ in range(rng.randint(1, 2)))
        handle = SubgroupHandle(group, gens)
        s = handle.closure()
        dec = sylow_decompose(group, handle)
        assert dec.verified
        for p in group.primes:
            brute = {x for x in s
                     if element_sylow_part(group, x, p) == x}
            assert dec.part(p) == brute
        assert len(s) == 1 or len(s) == len(dec.part(2)) * len(dec.part(3)) \
            if len(group.primes) == 2 else True


def test_element_sylow_parts_multiply_back():
    group = ProductGroup([cyclic(8), cyclic(3)])
    for x in group.elements():
        parts = [element_sylow_part(group, x, p) for p in group.primes]
        acc = group.identity
        for part in parts:
            acc = group.mul(acc, part)
        assert acc == tuple(x)
    assert element_sylow_part(group, (1, 1), 5) == group.identity


def test_hom_search_cyclic_counts():
    # Hom(C_4, C_8) has gcd(4, 8) = 4 elements
    homs = hom_search(cyclic(4), cyclic(8))
    assert len(homs) == 4
    # every map must actually be a homomorphism
    c4, c8 = cyclic(4), cyclic(8)
    for h in homs:
        for a, b in itertools.product(range(4), repeat=2):
            assert h[c4.mul(a, b)] == c8.mul(h[a], h[b])


def test_hom_search_quaternion_endomorphisms():
    # End(Q8) has 24 automorphisms plus 4 maps through the abelianization
    homs = hom_search(quaternion8(), quaternion8())
    assert len(homs) == 28


def test_hom_search_coprime_orders_trivial():
    homs = hom_search(cyclic(8), cyclic(9))
    assert len(homs) == 1
    assert all(image == 0 for image in homs[0])
