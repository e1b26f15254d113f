"""Acceptance gate: one test per contract criterion, all exact.

Every comparison below is tolerance-zero; the two timed tests also
enforce their runtime budgets.
"""

import random
import time
from fractions import Fraction

from padicscale.contraction import (
    adapted_lattice,
    contraction_split,
    split_with_retry,
)
from padicscale.lattice import (
    canonicalize,
    index_exponent,
    scale_lattice,
    standard_lattice,
)
from padicscale.linalg import MonicPoly, QMatrix
from padicscale.model import (
    GroupModel,
    ModelAutomorphism,
    Unbounded,
    invariant_lattice,
    local_prime_content,
    module_of,
    prime_spectrum,
    quotient_by_finite,
    scale,
)
from padicscale.newton import eigenvalue_valuations, scale_exponent
from padicscale.nilpotent import (
    ProductGroup,
    SubgroupHandle,
    cyclic,
    hom_search,
    quaternion8,
    sylow_decompose,
)
from padicscale.tidy import check_t1, tidy_ball, tidying


def rand_invertible(rng, p, n, span=3):
    """Invertible matrix with entry valuations in [-span, span]."""
    while True:
        m = QMatrix([
            [Fraction(rng.randint(-9, 9))
             * Fraction(p) ** rng.randint(-span, span)
             for _ in range(n)]
            for _ in range(n)
        ])
        if m.det() != 0:
            return m


def newton_scale(alpha, p):
    return scale_exponent(eigenvalue_valuations(alpha.charpoly(), p))


def rand_model_aut(rng, primes=(2, 3, 5), max_dim=3, span=2):
    chosen = rng.sample(primes, rng.randint(1, len(primes)))
    factors = {p: rng.randint(1, max_dim) for p in chosen}
    model = GroupModel(factors)
    blocks = {p: rand_invertible(rng, p, n, span)
              for p, n in factors.items()}
    return model, ModelAutomorphism(model, blocks)


def test_c01_tidying_matches_newton_formula():
    """200 random automorphisms per prime in {2, 3, 5}, dims 1-4:
    the tidying scale exponent equals the Newton-polygon exponent."""
    start = time.monotonic()
    for p, seed in ((2, 7), (3, 11), (5, 13)):
        rng = random.Random(seed)
        for _ in range(200):
            n = rng.randint(1, 4)
            alpha = rand_invertible(rng, p, n, span=3)
            cert = tidying(standard_lattice(p, n), alpha)
            assert cert.scale_exponent == newton_scale(alpha, p)
            assert cert.t1_verified
    assert time.monotonic() - start < 30.0


def test_c02_diagonal_closed_form():
    """diag(p^a_1, ..., p^a_n) has scale exponent -sum of the a_i <= 0."""
    rng = random.Random(17)
    for _ in range(100):
        p = rng.choice([2, 3, 5])
        n = rng.randint(1, 4)
        exps = [rng.randint(-4, 4) for _ in range(n)]
        alpha = QMatrix.diagonal([Fraction(p) ** a for a in exps])
        cert = tidying(standard_lattice(p, n), alpha)
        assert cert.scale_exponent == -sum(a for a in exps if a <= 0)


def test_c03_ramified_slope_companion():
    """Companion of x^2 - p: scale 1, inverse scale p."""
    for p in (2, 3, 5):
        alpha = QMatrix.companion(
            MonicPoly([Fraction(-p), Fraction(0), Fraction(1)]))
        model = GroupModel({p: 2})
        aut = ModelAutomorphism(model, {p: alpha})
        assert scale(model, aut).value() == 1
        assert scale(model, aut.inverse()).value() == p
        cert = tidying(standard_lattice(p, 2), alpha)
        assert cert.scale_exponent == 0
        cert_inv = tidying(standard_lattice(p, 2), alpha.inverse())
        assert cert_inv.scale_exponent == 1


def test_c04_module_identity():
    """module(alpha) * scale(alpha^-1) = scale(alpha), 200 instances."""
    rng = random.Random(19)
    for _ in range(200):
        model, aut = rand_model_aut(rng)
        lhs = module_of(model, aut) * scale(model, aut.inverse()).value()
        assert lhs == scale(model, aut).value()


def test_c05_power_law():
    """scale(alpha^n) = scale(alpha)^n for n in {2, 3, 4}, 100 instances."""
    rng = random.Random(23)
    for _ in range(100):
        model, aut = rand_model_aut(rng)
        s = scale(model, aut)
        for n in (2, 3, 4):
            assert scale(model, aut.power(n)).value() == s.value() ** n


def test_c06_similarity_invariance():
    """Conjugation by a rational invertible matrix preserves the scale."""
    rng = random.Random(29)
    for _ in range(100):
        p = rng.choice([2, 3, 5])
        n = rng.randint(1, 4)
        alpha = rand_invertible(rng, p, n)
        q = rand_invertible(rng, p, n, span=2)
        conj = q @ alpha @ q.inverse()
        assert newton_scale(conj, p) == newton_scale(alpha, p)


def test_c07_factorization_over_model_primes():
    """Every scale factors over exactly the model's primes; single-prime
    models never emit a foreign prime factor.  100 instances."""
    rng = random.Random(31)
    for _ in range(100):
        model, aut = rand_model_aut(rng)
        s = scale(model, aut)
        assert s.primes() <= set(model.factors)
        value = s.value()
        for p in s.primes():
            while value % p == 0:
                value //= p
        assert value == 1
    for _ in range(20):
        p = random.Random(37).choice([2, 3, 5])
        model = GroupModel({p: 2})
        aut = ModelAutomorphism(model, {p: rand_invertible(rng, p, 2)})
        assert scale(model, aut).primes() <= {p}
        assert scale(model, aut.inverse()).primes() <= {p}


def test_c08_tidy_balls_immediately_tidy():
    """p^k L for an adapted lattice L passes the sum condition with no
    tidying steps, k in {0, ..., 5}, over 100 exact splits."""
    rng = random.Random(41)
    done = 0
    while done < 100:
        p = rng.choice([2, 3, 5])
        n = rng.randint(1, 3)
        alpha = rand_invertible(rng, p, n, span=2)
        split = contraction_split(alpha, p)
        if not split.exact:
            continue
        adapted = adapted_lattice(split)
        for k in range(6):
            ball = scale_lattice(adapted.lattice, k)
            assert check_t1(ball, alpha, split)
            cert = tidy_ball(adapted, k)
            assert cert.steps == 0
        done += 1


def test_c09_index_multiplicativity_and_uniqueness():
    """500 nested lattice triples: indices multiply; regenerated bases
    give the identical canonical form."""
    rng = random.Random(43)
    done = 0
    while done < 500:
        p = rng.choice([2, 3, 5])
        n = rng.randint(1, 3)
        vecs = [[Fraction(rng.randint(-9, 9)) * Fraction(p) ** rng.randint(-3, 3)
                 for _ in range(n)] for _ in range(n)]
        L = canonicalize(vecs, p, n)
        if L.rank < n:
            continue
        M = canonicalize(
            [[e * p ** k for e in col]
             for col in L.basis for k in [rng.randint(0, 3)]], p, n)
        K = canonicalize(
            [[e * p ** k for e in col]
             for col in M.basis for k in [rng.randint(0, 3)]], p, n)
        assert index_exponent(L, K) == (
            index_exponent(L, M) + index_exponent(M, K))
        # uniqueness: unit-mixed regenerated generators, same canonical form
        mixed = [
            [a + p * b for a, b in zip(vecs[i], vecs[(i + 1) % n])]
            for i in range(n)
        ] + vecs
        rng.shuffle(mixed)
        assert canonicalize(mixed, p, n) == L
        done += 1


def test_c10_sylow_decomposition_brute_force():
    """50 random subgroups of p-group products of order <= 1728:
    verified decomposition, |S| = product |S_p|, parts match the
    order-filter brute force."""
    start = time.monotonic()
    rng = random.Random(47)
    two_choices = [cyclic(2), cyclic(4), cyclic(8), quaternion8()]
    three_choices = [cyclic(3), cyclic(9), cyclic(27)]
    done = 0
    while done < 50:
        factors = [rng.choice(two_choices), rng.choice(three_choices)]
        if rng.random() < 0.5:
            factors.append(cyclic(rng.choice([5, 25])))
        group = ProductGroup(factors)
        if group.order > 1728:
            continue
        done += 1
        gens = tuple(
            tuple(rng.randrange(f.order) for f in factors)
            for _ in range(rng.randint(1, 3)))
        handle = SubgroupHandle(group, gens)
        s = handle.closure()
        dec = sylow_decompose(group, handle)
        assert dec.verified
        product = 1
        for p in group.primes:
            part = dec.part(p)
            product *= len(part)
            orders = {x for x in s if _order_in(group, x) in
                      {p ** e for e in range(11)}}
            assert part == orders
        assert product == len(s)
    assert time.monotonic() - start < 20.0


def _order_in(group, x):
    acc = x
    order = 1
    while acc != group.identity:
        acc = group.mul(acc, x)
        order += 1
    return order


def test_c11_coprime_hom_search_trivial():
    """Homomorphism search between coprime-order groups finds exactly
    the trivial map, 10 pairs."""
    pairs = [
        (cyclic(2), cyclic(3)), (cyclic(4), cyclic(9)),
        (cyclic(8), cyclic(27)), (quaternion8(), cyclic(3)),
        (quaternion8(), cyclic(9)), (cyclic(3), cyclic(4)),
        (cyclic(9), quaternion8()), (cyclic(5), cyclic(2)),
        (cyclic(25), cyclic(27)), (cyclic(27), cyclic(25)),
    ]
    for source, target in pairs:
        homs = hom_search(source, target)
        assert len(homs) == 1
        assert all(image == target.identity for image in homs[0])


def test_c12_invariant_lattice_verdicts():
    """Conjugated integral-unit families have an exact invariant lattice;
    the unipotent pair with a 1/p entry, and any family containing [p],
    are unbounded."""
    rng = random.Random(53)
    for _ in range(50):
        p = rng.choice([2, 3, 5])
        n = rng.randint(1, 3)
        q = rand_invertible(rng, p, n, span=2)
        mats = []
        for _ in range(rng.randint(1, 3)):
            # product of elementary shears: determinant 1, so the raw
            # family preserves the standard lattice exactly
            u = QMatrix.identity(n)
            for _ in range(rng.randint(0, 2)):
                i, j = rng.randrange(n), rng.randrange(n)
                if i == j:
                    continue
                shear = [[Fraction(int(a == b)) for b in range(n)]
                         for a in range(n)]
                shear[i][j] = Fraction(rng.randint(-2, 2))
                u = u @ QMatrix(shear)
            mats.append(q @ u @ q.inverse())
        result = invariant_lattice(p, n, mats)
        assert not isinstance(result, Unbounded)
        from padicscale.lattice import apply_matrix
        for m in mats:
            assert apply_matrix(m, result) == result
    for p in (2, 3, 5):
        pair = [QMatrix([[1, 1], [0, 1]]),
                QMatrix([[1, 0], [Fraction(1, p), 1]])]
        assert isinstance(invariant_lattice(p, 2, pair), Unbounded)
        assert isinstance(
            invariant_lattice(p, 1, [QMatrix([[p]])]), Unbounded)


def test_c13_quotient_by_finite_factor():
    """50 models with finite factors: the scale is unchanged by the
    quotient, and the quotient's tidy lattice crossed with the whole
    finite factor satisfies the tidiness contract (the finite block maps
    the factor onto itself, so tidiness is carried by the vector part)."""
    rng = random.Random(59)
    for _ in range(50):
        finite = ProductGroup([rng.choice(
            [cyclic(2), cyclic(4), cyclic(9), quaternion8()])])
        elems = finite.elements()
        model_factors = {p: rng.randint(1, 2)
                         for p in rng.sample([2, 3, 5], rng.randint(1, 2))}
        model = GroupModel(model_factors, finite_factor=finite)
        blocks = {p: rand_invertible(rng, p, n, span=2)
                  for p, n in model_factors.items()}
        finite_block = _random_automorphism(rng, finite, elems)
        aut = ModelAutomorphism(model, blocks, finite_block=finite_block)
        q_model, q_aut = quotient_by_finite(model, aut)
        assert scale(q_model, q_aut).value() == scale(model, aut).value()
        # finite block is onto, so the pullback of each tidy lattice is
        # invariant exactly when the quotient lattice is; check tidiness
        # of the quotient certificate and surjectivity of the block
        assert sorted(finite_block.values()) == list(range(len(elems)))
        for p, block in q_aut.blocks.items():
            cert = tidying(standard_lattice(p, block.rows), block)
            assert cert.t1_verified
            split = split_with_retry(block, p)
            assert check_t1(cert.lattice, block, split)


def _random_automorphism(rng, finite, elems):
    """Index map of a random automorphism of a one-factor product."""
    factor = finite.factors[0]
    index = {e: i for i, e in enumerate(elems)}
    while True:
        if factor.order == 8 and factor.element_order(1) != 8:
            # quaternion group: conjugation by a random element
            g = rng.randrange(8)
            mapping = {
                i: index[(factor.mul(factor.mul(g, e[0]), factor.inv(g)),)]
                for i, e in enumerate(elems)
            }
        else:
            u = rng.choice([x for x in range(factor.order)
                            if factor.element_order(x) == factor.order])
            mapping = {}
            for i, e in enumerate(elems):
                acc = factor.identity
                for _ in range(e[0]):
                    acc = factor.mul(acc, u)
                mapping[i] = index[(acc,)]
        if sorted(mapping.values()) == list(range(len(elems))):
            return mapping


def test_c14_prime_spectrum_containment():
    """100 (model, family) pairs: the prime spectrum sits inside the
    local prime content, with equality when every supported prime has a
    block with a nonzero-valuation eigenvalue."""
    rng = random.Random(61)
    for _ in range(100):
        model, aut = rand_model_aut(rng)
        family = [aut]
        if rng.random() < 0.5:
            family.append(ModelAutomorphism(model, {
                p: rand_invertible(rng, p, n, span=2)
                for p, n in model.factors.items()}))
        spectrum = prime_spectrum(model, family)
        content = local_prime_content(model)
        assert spectrum <= content
        saturated = all(
            any(v != 0
                for member in family
                for v, _ in eigenvalue_valuations(
                    member.blocks[p].charpoly(), p).entries)
            for p in content)
        if saturated:
            assert spectrum == content
