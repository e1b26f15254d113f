"""Finite nilpotent groups as direct products of finite p-groups.

Groups are given by explicit Cayley tables, validated at construction
(latin-square property, identity, inverses, full associativity).  The
point of the module is the two structure results used by the product
model: every subgroup of a product of p-groups with distinct primes
splits as the product of its Sylow parts, and homomorphisms between
p-groups for different primes are trivial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import CapExceededError, NonPrimeError, UnknownPrimeError
from .padic import is_prime

CLOSURE_CAP = 4096


class FinitePGroup:
    """Finite group of prime-power order with an explicit Cayley table.

    Elements are indices 0..order-1; ``table[i][j]`` is the product of
    element i and element j.  The identity index is located during
    validation.
    """

    def __init__(self, p: int, table):
        if not is_prime(p):
            raise NonPrimeError(f"{p} is not prime")
        self.p = p
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.table)
        self._validate()

    def _validate(self):
        n = self.order
        if n == 0:
            raise ValueError("empty Cayley table")
        k = n
        power = 0
        while k % self.p == 0:
            k //= self.p
            power += 1
        if k != 1:
            raise ValueError(f"order {n} is not a power of {self.p}")
        for row in self.table:
            if len(row) != n or sorted(row) != list(range(n)):
                raise ValueError("Cayley table rows must be permutations")
        for j in range(n):
            if sorted(self.table[i][j] for i in range(n)) != list(range(n)):
                raise ValueError("Cayley table columns must be permutations")
        identity = None
        for e in range(n):
            if all(self.table[e][i] == i and self.table[i][e] == i
                   for i in range(n)):
                identity = e
                break
        if identity is None:
            raise ValueError("no identity element in the Cayley table")
        self.identity = identity
        self._inverse = [None] * n
        for i in range(n):
            for j in range(n):
                if self.table[i][j] == identity:
                    self._inverse[i] = j
                    break
            if (self._inverse[i] is None
                    or self.table[self._inverse[i]][i] != identity):
                raise ValueError(f"element {i} has no two-sided inverse")
        for a in range(n):
            for b in range(n):
                ab = self.table[a][b]
                for c in range(n):
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise ValueError("Cayley table is not associative")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inverse[a]

    def element_order(self, a: int) -> int:
        k = 1
        x = a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def __repr__(self):
        return f"FinitePGroup(p={self.p}, order={self.order})"


def cyclic(order: int) -> FinitePGroup:
    """Cyclic group of prime-power order with table (i, j) -> i + j."""
    p = None
    for q in range(2, order + 1):
        if order % q == 0:
            p = q
            break
    if p is None:
        raise ValueError("order must be at least 2")
    table = [[(i + j) % order for j in range(order)] for i in range(order)]
    return FinitePGroup(p, table)


def quaternion8() -> FinitePGroup:
    """The quaternion group of order 8, elements 1, -1, i, -i, j, -j, k, -k."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    sign = {name: (-1 if name.startswith("-") else 1) for name in names}
    base = {name: name.lstrip("-") for name in names}
    rules = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"),
        ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("j", "1"): (1, "j"), ("k", "1"): (1, "k"),
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "i"): (-1, "k"),
        ("j", "k"): (1, "i"), ("k", "j"): (-1, "i"),
        ("k", "i"): (1, "j"), ("i", "k"): (-1, "j"),
    }

    def multiply(a, b):
        s, word = rules[(base[a], base[b])]
        s *= sign[a] * sign[b]
        return names.index(word if s == 1 else "-" + word)

    table = [[multiply(a, b) for b in names] for a in names]
    return FinitePGroup(2, table)


class ProductGroup:
    """Direct product of finite p-groups with pairwise distinct primes.

    Elements are tuples of per-factor indices multiplied componentwise.
    """

    def __init__(self, factors):
        self.factors = tuple(factors)
        primes = [f.p for f in self.factors]
        if len(set(primes)) != len(primes):
            raise ValueError("factor primes must be pairwise distinct")
        self.primes = tuple(primes)
        self.order = 1
        for f in self.factors:
            self.order *= f.order
        self.identity = tuple(f.identity for f in self.factors)

    def mul(self, x, y):
        return tuple(f.mul(a, b) for f, a, b in zip(self.factors, x, y))

    def inv(self, x):
        return tuple(f.inv(a) for f, a in zip(self.factors, x))

    def elements(self):
        out = [()]
        for f in self.factors:
            out = [e + (i,) for e in out for i in range(f.order)]
        return out

    def __repr__(self):
        sizes = ", ".join(f"{f.order}@{f.p}" for f in self.factors)
        return f"ProductGroup({sizes})"


def close(group: ProductGroup, gens, cap: int = CLOSURE_CAP):
    """Smallest subgroup of the product containing the generators.

    Breadth-first closure under multiplication and inversion; a closure
    larger than ``cap`` is a hard error rather than a truncation, since a
    partial closure would invalidate every downstream check.
    """
    seen = {group.identity}
    gens = [tuple(g) for g in gens]
    frontier = []
    for g in gens:
        for x in (g, group.inv(g)):
            if x not in seen:
                seen.add(x)
                frontier.append(x)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                for y in (group.mul(x, g), group.mul(x, group.inv(g))):
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                        if len(seen) > cap:
                            raise CapExceededError(
                                f"subgroup closure exceeds cap {cap}")
        frontier = nxt
    return frozenset(seen)


@dataclass
class SubgroupHandle:
    """Generator list with a cached closure."""

    group: ProductGroup
    generators: tuple
    cap: int = CLOSURE_CAP
    _closure: frozenset = field(default=None, repr=False)

    def closure(self) -> frozenset:
        if self._closure is None:
            self._closure = close(self.group, self.generators, self.cap)
        return self._closure


@dataclass(frozen=True)
class SylowDecomposition:
    """Per-prime pieces of a subgroup, with the verification verdict."""

    parts: tuple  # list of (prime, frozenset of elements)
    verified: bool

    def part(self, p: int) -> frozenset:
        for prime, elems in self.parts:
            if prime == p:
                return elems
        raise UnknownPrimeError(f"no Sylow part at {p}")


def element_sylow_part(group: ProductGroup, x, p: int):
    """The p-component of x, embedded with identities elsewhere.

    A prime that is not a factor prime contributes the identity.  The
    parts commute and multiply back to x, and each has p-power order;
    this pins the factorization uniquely.
    """
    x = tuple(x)
    if p not in group.primes:
        return group.identity
    return tuple(
        a if f.p == p else f.identity
        for f, a in zip(group.factors, x)
    )


def sylow_decompose(group: ProductGroup, handle: SubgroupHandle,
                    ) -> SylowDecomposition:
    """Split a subgroup S as the product of its per-prime parts.

    S_p is the intersection of S with the embedded p-factor.  The
    verification flag asserts |S| equals the product of the |S_p| and
    that every element of S is the product of its own Sylow parts.
    """
    s = handle.closure()
    parts = []
    size_product = 1
    for f in group.factors:
        elems = frozenset(
            x for x in s
            if all(a == g.identity
                   for g, a in zip(group.factors, x) if g.p != f.p)
        )
        parts.append((f.p, elems))
        size_product *= len(elems)
    verified = size_product == len(s)
    if verified:
        for x in s:
            rebuilt = group.identity
            for f in group.factors:
                rebuilt = group.mul(rebuilt, element_sylow_part(group, x, f.p))
            if rebuilt != x:
                verified = False
                break
            for f in group.factors:
                if element_sylow_part(group, x, f.p) not in dict(parts)[f.p]:
                    verified = False
                    break
    return SylowDecomposition(tuple(parts), verified)


HOM_SEARCH_CAP = 1 << 20


def hom_search(source: FinitePGroup, target: FinitePGroup):
    """All homomorphisms from one finite p-group to another.

    Searches generator images depth-first, extending each partial map
    through the Cayley tables and rejecting conflicts immediately.  For
    coprime orders only the trivial map survives, since image orders
    must divide both group orders.
    """
    if source.order * target.order > HOM_SEARCH_CAP:
        raise CapExceededError("homomorphism search space exceeds the cap")
    if gcd(source.order, target.order) == 1:
        trivial = tuple(target.identity for _ in range(source.order))
        return [trivial]

    gens = _generating_sequence(source)
    results = []

    def extend(mapping, chosen):
        """Close a partial map under products; None on conflict."""
        mapping = dict(mapping)
        frontier = list(mapping)
        while frontier:
            a = frontier.pop()
            for b in list(mapping):
                for x, y in ((a, b), (b, a)):
                    prod = source.mul(x, y)
                    img = target.mul(mapping[x], mapping[y])
                    if prod in mapping:
                        if mapping[prod] != img:
                            return None
                    else:
                        mapping[prod] = img
                        frontier.append(prod)
        return mapping

    def search(idx, mapping):
        if idx == len(gens):
            if len(mapping) == source.order:
                results.append(tuple(mapping[i]
                                     for i in range(source.order)))
            return
        g = gens[idx]
        if g in mapping:
            search(idx + 1, mapping)
            return
        order = source.element_order(g)
        for image in range(target.order):
            if order % target.element_order(image) != 0:
                continue
            attempt = extend({**mapping, g: image}, g)
            if attempt is not None:
                search(idx + 1, attempt)

    search(0, {source.identity: target.identity})
    return sorted(set(results))


def _generating_sequence(group: FinitePGroup):
    """Greedy list of elements generating the whole group."""
    generated = {group.identity}
    gens = []
    while len(generated) < group.order:
        nxt = next(i for i in range(group.order) if i not in generated)
        gens.append(nxt)
        generated.add(nxt)
        stack = [nxt]
        while stack:
            a = stack.pop()
            for b in list(generated):
                for prod in (group.mul(a, b), group.mul(b, a)):
                    if prod not in generated:
                        generated.add(prod)
                        stack.append(prod)
    return gens
