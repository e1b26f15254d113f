"""Finitely generated Z_(p)-submodules of Q^n in canonical echelon form.

The base ring is the localization of the integers at p: denominators
coprime to p are allowed everywhere.  A lattice is stored through a
canonical column-echelon basis.  Pivot entries are powers of p; the pivot
is always the entry of minimal p-valuation among the rows not yet used,
ties broken by lowest row index, and entries in pivot rows of the other
basis columns are reduced to integer representatives in [0, p^e).  Two
generating sets of the same module canonicalize to the same basis, so
structural equality is module equality.

Sub-rank modules are first class; full-rank intersections go through the
dual-basis identity, sub-rank ones through an exact kernel computation
(`intersect_kernel`, kept as an independent route and cross-checked in
the tests).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    AmbientMismatchError,
    NotNestedError,
    RankMismatchError,
    SingularMatrixError,
)
from .linalg import QMatrix
from .padic import INFINITY, require_prime, vp_int

Fr = Fraction


def _vp_frac(x: Fraction, p: int):
    if x == 0:
        return INFINITY
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


def _mod_ppow(x: Fraction, pe: int) -> int:
    """Integer representative of x modulo pe * Z_(p), in [0, pe)."""
    num, den = x.numerator, x.denominator
    return num * pow(den, -1, pe) % pe


class Lattice:
    """Canonical Z_(p)-submodule of Q^n.  Immutable after construction."""

    __slots__ = ("p", "ambient", "basis", "pivot_rows", "pivot_exponents")

    def __init__(self, p, ambient, basis, pivot_rows, pivot_exponents):
        self.p = p
        self.ambient = ambient
        self.basis = basis  # tuple of column tuples
        self.pivot_rows = pivot_rows
        self.pivot_exponents = pivot_exponents

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Lattice)
            and self.p == other.p
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.p, self.ambient, self.basis))

    def __repr__(self):
        cols = [[str(e) for e in col] for col in self.basis]
        return f"Lattice(p={self.p}, ambient={self.ambient}, basis={cols})"

    def basis_matrix(self) -> QMatrix:
        return QMatrix.from_columns(self.basis, self.ambient)

    def to_json(self):
        from .serialize import rat_str

        return {
            "p": self.p,
            "ambient": self.ambient,
            "basis": [[rat_str(e) for e in col] for col in self.basis],
        }

    @staticmethod
    def from_json(obj) -> "Lattice":
        from .serialize import rat_parse

        cols = [[rat_parse(e) for e in col] for col in obj["basis"]]
        return canonicalize(cols, obj["p"], obj["ambient"])


def canonicalize(generators, p: int, ambient: int) -> Lattice:
    """Canonical echelon basis of the module spanned by the generators.

    ``generators`` is an iterable of length-``ambient`` vectors, or a
    QMatrix whose columns generate the module.
    """
    require_prime(p)
    if isinstance(generators, QMatrix):
        if generators.rows != ambient:
            raise AmbientMismatchError("generator rows != ambient dimension")
        work = [list(generators.column(j)) for j in range(generators.cols)]
    else:
        work = [[Fr(e) for e in g] for g in generators]
        for g in work:
            if len(g) != ambient:
                raise AmbientMismatchError("generator length != ambient dimension")
    work = [g for g in work if any(e != 0 for e in g)]
    result = []
    pivot_rows = []
    pivot_exps = []
    used = set()
    while work:
        # pivot: minimal valuation among unused rows, ties by lowest row
        best = None
        for ci, col in enumerate(work):
            for r in range(ambient):
                if r in used or col[r] == 0:
                    continue
                v = _vp_frac(col[r], p)
                if best is None or (v, r) < (best[0], best[1]):
                    best = (v, r, ci)
        if best is None:
            break
        v, r, ci = best
        col = work.pop(ci)
        pe = Fr(p) ** v
        unit = col[r] / pe
        col = [e / unit for e in col]
        for other in work:
            if other[r] != 0:
                f = other[r] / pe  # valuation >= 0 by pivot minimality
                for i in range(ambient):
                    other[i] -= f * col[i]
                other[r] = Fr(0)
        work = [g for g in work if any(e != 0 for e in g)]
        result.append(col)
        pivot_rows.append(r)
        pivot_exps.append(v)
        used.add(r)
    # Reduce the entries of each column at the later pivots' rows to the
    # canonical residue modulo p^e * Z_(p): with v = vp(entry), the residue
    # is 0 when v >= e and p^v * (unit(entry) mod p^(e-v)) otherwise.
    # Later columns have exact zeros at earlier pivot rows, so a single
    # ascending pass leaves all previously fixed entries untouched.
    for j in range(len(result) - 1, -1, -1):
        col = result[j]
        for k in range(j + 1, len(result)):
            r, e = pivot_rows[k], pivot_exps[k]
            entry = col[r]
            if entry == 0:
                continue
            v = _vp_frac(entry, p)
            if v >= e:
                rep = Fr(0)
            else:
                unit = entry / Fr(p) ** v
                rep = Fr(p) ** v * _mod_ppow(unit, p ** (e - v))
            f = (entry - rep) / (Fr(p) ** e)
            if f != 0:
                for i in range(ambient):
                    col[i] -= f * result[k][i]
    basis = tuple(tuple(e for e in col) for col in result)
    order = sorted(range(len(basis)), key=lambda j: pivot_rows[j])
    basis = tuple(basis[j] for j in order)
    return Lattice(
        p,
        ambient,
        basis,
        tuple(pivot_rows[j] for j in order),
        tuple(pivot_exps[j] for j in order),
    )


def standard_lattice(p: int, n: int) -> Lattice:
    """Z_(p)^n with the identity basis."""
    require_prime(p)
    cols = [tuple(Fr(int(i == j)) for i in range(n)) for j in range(n)]
    return Lattice(p, n, tuple(cols), tuple(range(n)), tuple([0] * n))


def scale_lattice(L: Lattice, exponent: int) -> Lattice:
    """p^exponent * L."""
    f = Fr(L.p) ** exponent
    return canonicalize([[f * e for e in col] for col in L.basis], L.p, L.ambient)


def _check_compatible(L: Lattice, M: Lattice):
    if L.p != M.p or L.ambient != M.ambient:
        raise AmbientMismatchError(
            f"lattices live over p={L.p},n={L.ambient} vs p={M.p},n={M.ambient}")


def lattice_sum(L: Lattice, M: Lattice) -> Lattice:
    """Smallest module containing both (the product U+·U- in the abelian
    model is this module sum)."""
    _check_compatible(L, M)
    return canonicalize(list(L.basis) + list(M.basis), L.p, L.ambient)


def dual_lattice(L: Lattice) -> Lattice:
    """Dual basis lattice of a full-rank lattice."""
    if L.rank != L.ambient:
        raise RankMismatchError("dual of a sub-rank lattice is not supported")
    inv_t = L.basis_matrix().inverse().transpose()
    return canonicalize(inv_t, L.p, L.ambient)


def intersect(L: Lattice, M: Lattice) -> Lattice:
    """Largest module contained in both.

    Full-rank pairs use the dual-basis identity (the dual of the
    intersection is the sum of the duals); sub-rank pairs fall back to
    the exact kernel route.
    """
    _check_compatible(L, M)
    if L.rank == L.ambient and M.rank == M.ambient:
        return dual_lattice(lattice_sum(dual_lattice(L), dual_lattice(M)))
    return intersect_kernel(L, M)


def intersect_kernel(L: Lattice, M: Lattice) -> Lattice:
    """Intersection via the kernel of [B_L | -B_M] plus saturation.

    Kept as an independent computation route from :func:`intersect`.
    """
    _check_compatible(L, M)
    if L.rank == 0 or M.rank == 0:
        return canonicalize([], L.p, L.ambient)
    cols = [list(c) for c in L.basis] + [[-e for e in c] for c in M.basis]
    stacked = QMatrix.from_columns(cols, L.ambient)
    ker = stacked.kernel()
    if not ker:
        return canonicalize([], L.p, L.ambient)
    sat = saturate_columns(ker, L.p)
    bl = L.basis_matrix()
    gens = [bl.apply(vec[: L.rank]) for vec in sat]
    return canonicalize(gens, L.p, L.ambient)


def saturate_columns(columns, p: int):
    """Z_(p)-basis of span(columns) intersected with Z_(p)^m.

    Full pivoting on minimal valuation; the returned columns have unit
    pivots and all entries of valuation >= 0.
    """
    cols = [list(Fr(e) for e in c) for c in columns]
    if not cols:
        return []
    m = len(cols[0])
    done_rows = []
    k = len(cols)
    for _ in range(k):
        best = None
        for ci in range(len(cols)):
            for r in range(m):
                if r in done_rows or cols[ci][r] == 0:
                    continue
                v = _vp_frac(cols[ci][r], p)
                if best is None or (v, r, ci) < best:
                    best = (v, r, ci)
        if best is None:
            break
        v, r, ci = best
        piv = cols[ci]
        pv = piv[r]
        piv[:] = [e / pv for e in piv]
        for cj in range(len(cols)):
            if cj != ci and cols[cj][r] != 0:
                f = cols[cj][r]
                cols[cj] = [a - f * b for a, b in zip(cols[cj], piv)]
        done_rows.append(r)
    return [tuple(c) for c in cols if any(e != 0 for e in c)]


def apply_matrix(A: QMatrix, L: Lattice) -> Lattice:
    """Image lattice A(L) for invertible A."""
    if A.rows != L.ambient or A.cols != L.ambient:
        raise AmbientMismatchError("matrix shape does not match ambient dim")
    if A.det() == 0:
        raise SingularMatrixError("lattice image under a singular matrix")
    return canonicalize([A.apply(col) for col in L.basis], L.p, L.ambient)


def member(L: Lattice, vector) -> bool:
    """Exact membership of a vector of rationals in the module."""
    coords = coordinates(L, vector)
    return coords is not None


def coordinates(L: Lattice, vector):
    """Z_(p)-coordinates of ``vector`` in L's basis, or None.

    The pivot-row submatrix of a canonical basis is invertible, so the
    candidate coordinates are forced; the vector is in the module iff
    they are p-integral and reproduce it on the remaining rows too.
    """
    v = [Fr(e) for e in vector]
    if len(v) != L.ambient:
        raise AmbientMismatchError("vector length != ambient dimension")
    if L.rank == 0:
        return [] if all(e == 0 for e in v) else None
    piv = QMatrix([[L.basis[j][r] for j in range(L.rank)]
                   for r in L.pivot_rows])
    rhs = QMatrix([[v[r]] for r in L.pivot_rows])
    sol = piv.inverse() @ rhs
    coords = [sol[j, 0] for j in range(L.rank)]
    for c in coords:
        vc = _vp_frac(c, L.p)
        if vc is not INFINITY and vc < 0:
            return None
    for i in range(L.ambient):
        if sum(c * col[i] for c, col in zip(coords, L.basis)) != v[i]:
            return None
    return coords


def contains(L: Lattice, M: Lattice) -> bool:
    """Module containment M subseteq L."""
    _check_compatible(L, M)
    return all(member(L, col) for col in M.basis)


def index_exponent(L: Lattice, M: Lattice) -> int:
    """log_p of the module index [L : M] for nested equal-span lattices."""
    _check_compatible(L, M)
    if L.rank != M.rank:
        raise RankMismatchError(f"ranks differ: {L.rank} vs {M.rank}")
    if L.rank == 0:
        return 0
    t_cols = []
    for col in M.basis:
        coords = coordinates(L, col)
        if coords is None:
            raise NotNestedError("M is not contained in L (or spans differ)")
        t_cols.append(coords)
    t = QMatrix.from_columns(t_cols, L.rank)
    d = t.det()
    if d == 0:
        raise RankMismatchError("spans differ despite equal ranks")
    e = _vp_frac(d, L.p)
    assert e is not INFINITY and e >= 0
    return e


def intersect_subspace(L: Lattice, subspace_basis) -> Lattice:
    """Sublattice of elements of L lying in the rational span of
    ``subspace_basis`` (a list of ambient vectors)."""
    w = [list(Fr(e) for e in b) for b in subspace_basis]
    if not w:
        return canonicalize([], L.p, L.ambient)
    if L.rank == 0:
        return L
    # rows annihilating the subspace: kernel of W^T
    wt = QMatrix(w)  # rows are the subspace basis vectors
    ann = wt.kernel()  # vectors c with W^T c = 0, i.e. c orthogonal to span
    if not ann:
        return L
    c_rows = QMatrix([list(a) for a in ann])
    comp = c_rows @ L.basis_matrix()
    ker = comp.kernel()
    if not ker:
        return canonicalize([], L.p, L.ambient)
    sat = saturate_columns(ker, L.p)
    bl = L.basis_matrix()
    return canonicalize([bl.apply(u) for u in sat], L.p, L.ambient)
