"""Multi-prime product groups and their block automorphisms.

The group is a finite product of vector factors Q_p^{n_p} over distinct
primes, optionally times a finite nilpotent factor.  Automorphisms are
block-diagonal per prime: cross-prime maps restrict to compact open
subgroups as trivial homomorphisms, so the input format rejects mixing
outright instead of re-deriving that fact.

The scale of an automorphism factors over the primes; each exponent
comes from the Newton-polygon formula for the corresponding block, and
the finite factor contributes nothing (it is compact).  The reduced and
intermediate prime contents are deliberately not exposed as operations:
every vector factor here admits a discrete quotient by a full lattice,
so both collapse to the empty set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import BlockMismatchError, NoFiniteFactorError
from .lattice import apply_matrix, canonicalize, member, standard_lattice
from .linalg import QMatrix
from .newton import eigenvalue_valuations, scale_exponent
from .nilpotent import ProductGroup
from .padic import abs_p, require_prime, vp


class GroupModel:
    """Product of vector factors Q_p^{n_p} with an optional finite factor."""

    def __init__(self, factors, finite_factor: Optional[ProductGroup] = None):
        factors = {int(p): int(n) for p, n in dict(factors).items()}
        for p, n in factors.items():
            require_prime(p)
            if n < 0:
                raise ValueError(f"negative dimension {n} at prime {p}")
        if not any(n > 0 for n in factors.values()) and finite_factor is None:
            raise ValueError("model needs a vector factor or a finite factor")
        self.factors = dict(sorted(factors.items()))
        self.finite_factor = finite_factor

    @property
    def primes(self):
        return tuple(self.factors)

    def __repr__(self):
        tail = " x finite" if self.finite_factor is not None else ""
        return f"GroupModel({self.factors}{tail})"


class ModelAutomorphism:
    """Per-prime invertible blocks, plus an optional finite-factor map.

    The finite block is a permutation of the finite factor's elements
    (given as a tuple indexed by element) and is validated as a bijective
    homomorphism against the Cayley tables.
    """

    def __init__(self, model: GroupModel, blocks, finite_block=None):
        self.model = model
        blocks = {int(p): b for p, b in dict(blocks).items()}
        if set(blocks) != set(model.factors):
            raise BlockMismatchError(
                f"block primes {sorted(blocks)} != model primes "
                f"{sorted(model.factors)}")
        for p, b in blocks.items():
            if b.rows != b.cols or b.rows != model.factors[p]:
                raise BlockMismatchError(
                    f"block at {p} has size {b.rows}x{b.cols}, expected "
                    f"{model.factors[p]}")
            if b.det() == 0:
                raise BlockMismatchError(f"block at {p} is singular")
        self.blocks = dict(sorted(blocks.items()))
        if finite_block is not None:
            self._check_finite_block(finite_block)
        elif model.finite_factor is not None:
            finite_block = _identity_map(model.finite_factor)
        self.finite_block = finite_block

    def _check_finite_block(self, mapping):
        group = self.model.finite_factor
        if group is None:
            raise BlockMismatchError(
                "finite block given but the model has no finite factor")
        elems = group.elements()
        if sorted(mapping) != sorted(range(len(elems))):
            raise BlockMismatchError("finite block is not a bijection")
        index = {e: i for i, e in enumerate(elems)}
        for i, x in enumerate(elems):
            for j, y in enumerate(elems):
                prod = index[group.mul(x, y)]
                img = index[group.mul(elems[mapping[i]], elems[mapping[j]])]
                if mapping[prod] != img:
                    raise BlockMismatchError(
                        "finite block is not a homomorphism")

    def inverse(self) -> "ModelAutomorphism":
        blocks = {p: b.inverse() for p, b in self.blocks.items()}
        finite = None
        if self.finite_block is not None:
            finite = [0] * len(self.finite_block)
            for i, j in enumerate(self.finite_block):
                finite[j] = i
            finite = tuple(finite)
        return ModelAutomorphism(self.model, blocks, finite)

    def power(self, n: int) -> "ModelAutomorphism":
        blocks = {p: b.power(n) for p, b in self.blocks.items()}
        finite = None
        if self.finite_block is not None:
            base = self.finite_block
            if n < 0:
                base = self.inverse().finite_block
                n = -n
            finite = tuple(range(len(base)))
            for _ in range(n):
                finite = tuple(base[i] for i in finite)
        return ModelAutomorphism(self.model, blocks, finite)


def _identity_map(group: ProductGroup):
    return tuple(range(group.order))


@dataclass(frozen=True)
class FactoredScale:
    """Scale value as a map prime -> exponent, meaning the product of
    p^e_p over the entries."""

    exponents: tuple  # sorted tuple of (prime, exponent)

    @staticmethod
    def from_dict(d) -> "FactoredScale":
        return FactoredScale(tuple(sorted(
            (p, e) for p, e in d.items() if e != 0)))

    def exponent(self, p: int) -> int:
        return dict(self.exponents).get(p, 0)

    def value(self) -> int:
        out = 1
        for p, e in self.exponents:
            out *= p ** e
        return out

    def primes(self):
        return {p for p, _ in self.exponents}

    def power(self, n: int) -> "FactoredScale":
        return FactoredScale(tuple((p, e * n) for p, e in self.exponents))


def scale(model: GroupModel, aut: ModelAutomorphism) -> FactoredScale:
    """Factored scale: per prime, the Newton-polygon exponent of the block.

    The finite block never contributes, since finite factors are compact
    and scale is computed in the quotient by any compact invariant
    subgroup.
    """
    _require_match(model, aut)
    exponents = {}
    for p, block in aut.blocks.items():
        if block.rows == 0:
            continue
        vals = eigenvalue_valuations(block.charpoly(), p)
        exponents[p] = scale_exponent(vals)
    return FactoredScale.from_dict(exponents)


def module_of(model: GroupModel, aut: ModelAutomorphism) -> Fraction:
    """Module of the automorphism: product over p of |det block_p|_p."""
    _require_match(model, aut)
    out = Fraction(1)
    for p, block in aut.blocks.items():
        if block.rows == 0:
            continue
        out *= abs_p(block.det(), p)
    return out


def prime_spectrum(model: GroupModel, auts) -> set:
    """Primes dividing the scale of some family member or its inverse."""
    out = set()
    for aut in auts:
        out |= scale(model, aut).primes()
        out |= scale(model, aut.inverse()).primes()
    return out


def local_prime_content(model: GroupModel) -> set:
    """Primes with a nontrivial vector factor; the finite factor has
    finite Sylow subgroups and contributes nothing."""
    return {p for p, n in model.factors.items() if n > 0}


def uniscalar_check(model: GroupModel, auts) -> bool:
    """True iff every family member has trivial scale in both directions."""
    return not prime_spectrum(model, auts)


def quotient_by_finite(model: GroupModel, aut: ModelAutomorphism):
    """Quotient by the finite factor; the scale is unchanged.

    A tidy lattice for the quotient pulls back to (lattice x the whole
    finite factor): the finite block maps the finite factor onto itself,
    so the pullback is invariant to exactly the same extent and shares
    the certificate.
    """
    _require_match(model, aut)
    if model.finite_factor is None:
        raise NoFiniteFactorError("model has no finite factor")
    quotient = GroupModel(dict(model.factors))
    return quotient, ModelAutomorphism(quotient, dict(aut.blocks))


@dataclass(frozen=True)
class Unbounded:
    """Verdict that the generated group is unbounded, with a witness.

    The witness is a product word over the generators: a tuple of signed
    one-based indices, where -i means the inverse of generator i.  The
    witness vector, obtained by applying the word to a standard basis
    vector, has an entry valuation below the budget.
    """

    witness: tuple
    vector: tuple


def invariant_lattice(p: int, n: int, mats, budget: int = 32):
    """Common invariant lattice for a family of matrices, or Unbounded.

    Grows the standard lattice by generator images until it is fixed,
    in which case every generator maps it onto itself exactly (checked
    and returned as the certificate).  If an orbit vector acquires an
    entry of valuation below -budget first, the family generates an
    unbounded group relative to that budget and the offending word is
    returned.  Boundedness is only semi-decidable by iteration: all
    eigenvalue valuations being zero is necessary but not sufficient.
    """
    require_prime(p)
    gens = []
    for i, g in enumerate(mats):
        if g.rows != n or g.cols != n:
            raise BlockMismatchError("generator size mismatch")
        gens.append((i + 1, g))
        gens.append((-(i + 1), g.inverse()))
    lattice = standard_lattice(p, n)
    frontier = [(col, ()) for col in lattice.basis]
    while frontier:
        new_frontier = []
        for sig, g in gens:
            for vec, word in frontier:
                img = g.apply(list(vec))
                extended = word + (sig,)
                depth = min((vp(e, p) for e in img if e != 0), default=0)
                if depth < -budget:
                    return Unbounded(extended, tuple(img))
                if not member(lattice, img):
                    new_frontier.append((tuple(img), extended))
                    lattice = canonicalize(
                        list(lattice.basis) + [img], p, n)
        frontier = new_frontier
    for _, g in gens:
        if apply_matrix(g, lattice) != lattice:
            raise AssertionError(
                "fixed point is not invariant; this is a bug")
    return lattice


def _require_match(model: GroupModel, aut: ModelAutomorphism):
    if aut.model is not model and (
            aut.model.factors != model.factors
            or aut.model.finite_factor is not model.finite_factor):
        raise BlockMismatchError("automorphism built for a different model")
