"""Contraction decomposition E = E_p + E_0 + E_m of Q_p^n for an
invertible rational matrix, with an adapted lattice.

Two-tier strategy.  When every rational-irreducible factor of the
characteristic polynomial has eigenvalue valuations of a single sign, the
three pieces are rational: each is a generalized kernel ker g(alpha)^mult
and everything is exact.  A factor with mixed valuation signs has pieces
that only exist over Q_p, not over Q; those are computed as
precision-qualified representatives modulo p^N through a truncated
lattice-chain iteration (the chain M <- (M intersect alpha(M)) + p^N Z^n
stabilizes, and its columns of small pivot valuation represent the
non-contracting space; a rank certificate against the Newton-polygon
dimension count guards the answer, with PrecisionExhausted signalled when
certification fails).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import (
    CertificateError,
    InexactSplitError,
    PrecisionExhaustedError,
    SingularMatrixError,
)
from .lattice import (
    Lattice,
    apply_matrix,
    canonicalize,
    contains,
    intersect,
    lattice_sum,
    member,
    saturate_columns,
    scale_lattice,
    standard_lattice,
)
from .linalg import (
    MonicPoly,
    QMatrix,
    _hensel_lift_pair,
    _zmod_bezout,
    factor_over_q,
)
from .newton import dim_sign, eigenvalue_valuations
from .padic import require_prime, vp

DEFAULT_PRECISION = 64
MAX_PRECISION = 1024
STABILITY_GAP = 8


@dataclass(frozen=True)
class ContractionSplit:
    """Invariant subspace bases for the expanding (valuation < 0), bounded
    (= 0) and contracting (> 0) parts of an automorphism of Q_p^n."""

    p: int
    alpha: QMatrix
    basis_p: tuple  # expanding: alpha^-n x -> 0
    basis_0: tuple
    basis_m: tuple  # contracting: alpha^n x -> 0
    exact: bool
    precision: Optional[int] = None

    @property
    def ambient(self) -> int:
        return self.alpha.rows

    @property
    def dims(self):
        return (len(self.basis_p), len(self.basis_0), len(self.basis_m))

    def basis_plus(self):
        """Basis of E_+ = E_p + E_0 (the non-contracting part)."""
        return self.basis_p + self.basis_0

    def basis_minus(self):
        """Basis of E_- = E_0 + E_m (the non-expanding part)."""
        return self.basis_0 + self.basis_m


@dataclass(frozen=True)
class AdaptedLattice:
    """Full-rank lattice split by the contraction decomposition, with
    alpha-stable pieces; theta is reported as the p-power p^theta_exponent
    (absent when every eigenvalue valuation is zero)."""

    lattice: Lattice
    split: ContractionSplit
    piece_p: Lattice
    piece_0: Lattice
    piece_m: Lattice
    theta_exponent: Optional[Fraction]


def _solve_in_span(basis_cols, images, ambient):
    """Coefficient matrix T with B * T = images for columns inside span(B)."""
    b = QMatrix.from_columns(basis_cols, ambient)
    r = len(basis_cols)
    # choose r independent rows greedily
    rows = []
    test = []
    for i in range(ambient):
        cand = test + [[b[i, j] for j in range(r)]]
        if QMatrix(cand).rank() == len(cand):
            test = cand
            rows.append(i)
        if len(rows) == r:
            break
    sub = QMatrix([[b[i, j] for j in range(r)] for i in rows])
    img = QMatrix([[images[j][i] for j in range(len(images))] for i in rows])
    return sub.inverse() @ img


def restrict_matrix(alpha: QMatrix, basis_cols) -> QMatrix:
    """Matrix of alpha restricted to the invariant span of basis_cols."""
    images = [alpha.apply(c) for c in basis_cols]
    return _solve_in_span(basis_cols, images, alpha.rows)


def generalized_kernel(alpha: QMatrix, factor: MonicPoly, mult: int):
    """Exact basis of ker factor(alpha)^mult."""
    m = factor.at_matrix(alpha)
    return m.power(mult).kernel()


def _truncate(L: Lattice, n_exp: int) -> Lattice:
    """L + p^n_exp * Z_(p)^ambient."""
    p, n = L.p, L.ambient
    extra = [
        tuple(Fraction(p) ** n_exp if i == j else Fraction(0) for i in range(n))
        for j in range(n)
    ]
    return canonicalize(list(L.basis) + extra, p, n)


def _int_rep(x: Fraction, p: int, level: int) -> int:
    """Integer representative of a p-integral rational modulo p^level."""
    modulus = p ** level
    return x.numerator * pow(x.denominator, -1, modulus) % modulus


def _eval_int_poly(coeffs, mat: QMatrix) -> QMatrix:
    """Horner evaluation of an integer-coefficient polynomial (constant
    term first) at a rational matrix."""
    n = mat.rows
    acc = QMatrix.identity(n).scale(Fraction(coeffs[-1]))
    for c in reversed(coeffs[:-1]):
        acc = acc @ mat + QMatrix.identity(n).scale(Fraction(c))
    return acc


def nonexpanding_representative(
    beta: QMatrix, p: int, precision: int, expected_dim: int,
    gap: int = STABILITY_GAP,
) -> Lattice:
    """Precision-qualified lattice representing E_+(beta) = the span of
    eigenvectors with valuation <= 0.

    Requires the spectrum to avoid the open valuation strip (0, 1);
    callers arrange this by powering and scaling beta.  The split then
    happens at a Newton-polygon vertex of the characteristic polynomial:
    a Hensel lift modulo p^N separates the monic factor carrying the
    valuation >= 1 eigenvalues, and the wanted space is the kernel of the
    complementary factor evaluated at beta, read off as the small-pivot
    columns of an exact preimage lattice.  The returned lattice has rank
    ``expected_dim``; a pivot-gap certificate plus an invariance check at
    half precision guard the answer, with PrecisionExhausted raised when
    they cannot be established.
    """
    n = beta.rows
    if expected_dim == n:
        return standard_lattice(p, n)
    if expected_dim == 0:
        return canonicalize([], p, n)
    f = beta.charpoly()
    vals = eigenvalue_valuations(f, p)
    if any(0 < v < 1 for v, _ in vals.entries):
        raise CertificateError(
            "eigenvalue valuations meet the excluded strip (0, 1)")
    k = sum(m for v, m in vals.entries if v >= 1)
    if k != n - expected_dim:
        raise CertificateError(
            "Newton polygon count disagrees with the expected dimension")
    drop = max(0, -min((vp(e, p) for row in beta.entries for e in row
                        if e != 0), default=0))
    level = 2 * precision + 2 * n * drop + 16
    # normalize at the hull vertex (k, c): p^-c f is p-integral and
    # reduces mod p to y^k times a unit polynomial
    c = vp(f.coeffs[k], p)
    ints = [_int_rep(x / Fraction(p) ** c, p, level) for x in f.coeffs]
    unit_part = [x % p for x in ints[k:]]
    while unit_part and unit_part[-1] == 0:
        unit_part.pop()
    low_factor = [0] * k + [1]
    s, t = _zmod_bezout(unit_part, low_factor, p)
    g, h = unit_part, low_factor
    modulus = p ** level
    m = p
    while m < modulus:
        g, h, s, t = _hensel_lift_pair(
            [x % (m * m) for x in ints], g, h, s, t, p, m)
        m *= m
    # g carries the valuation <= 0 eigenvalues; approximate its kernel
    gmat = _eval_int_poly(g, beta)
    if gmat.det() == 0:
        gmat = gmat + QMatrix.identity(n).scale(Fraction(p) ** level)
    kernel_level = precision + n * drop + 8
    cand = intersect(
        standard_lattice(p, n),
        apply_matrix(gmat.inverse(),
                     scale_lattice(standard_lattice(p, n), kernel_level)))
    exps = sorted(range(cand.rank), key=lambda j: cand.pivot_exponents[j])
    low_idx = exps[:expected_dim]
    low_max = max(cand.pivot_exponents[j] for j in low_idx)
    high_min = min(cand.pivot_exponents[j] for j in exps[expected_dim:])
    if high_min - low_max >= gap and low_max <= precision // 2:
        low = canonicalize([cand.basis[j] for j in low_idx], p, n)
        if (
            low.rank == expected_dim
            and _approx_span_invariant(low, beta.inverse(), precision // 2)
        ):
            return low
    raise PrecisionExhaustedError(
        f"subspace representative did not certify at precision p^{precision}",
        precision=precision,
    )


def _approx_span_invariant(S: Lattice, mat: QMatrix, level: int) -> bool:
    """Each image of a basis vector lies in the rational span of S up to
    an error divisible by p^level (coefficients need not be p-integral)."""
    if S.rank == 0:
        return True
    piv = QMatrix([[S.basis[j][r] for j in range(S.rank)]
                   for r in S.pivot_rows])
    piv_inv = piv.inverse()
    for col in S.basis:
        img = mat.apply(col)
        rhs = QMatrix([[img[r]] for r in S.pivot_rows])
        coords = piv_inv @ rhs
        for i in range(S.ambient):
            resid = img[i] - sum(
                coords[j, 0] * S.basis[j][i] for j in range(S.rank))
            if resid != 0 and vp(resid, S.p) < level:
                return False
    return True


def _approx_invariant(S: Lattice, mat: QMatrix, level: int) -> bool:
    """Each image of a basis vector lies in S modulo p^level."""
    if S.rank == 0:
        return True
    fuzz = _truncate(S, level)
    return all(member(fuzz, mat.apply(col)) for col in S.basis)


def _subspace_intersection(cols_a, cols_b, p, ambient):
    """Saturated basis of span(cols_a) intersect span(cols_b)."""
    if not cols_a or not cols_b:
        return []
    stacked = QMatrix.from_columns(
        list(cols_a) + [[-e for e in c] for c in cols_b], ambient)
    ker = stacked.kernel()
    if not ker:
        return []
    a_mat = QMatrix.from_columns(cols_a, ambient)
    vecs = [a_mat.apply(k[: len(cols_a)]) for k in ker]
    return [tuple(v) for v in saturate_columns(vecs, p)]


def contraction_split(
    alpha: QMatrix, p: int, precision: int = DEFAULT_PRECISION
) -> ContractionSplit:
    """Contraction decomposition of Q_p^n with respect to alpha.

    Exact whenever every rational-irreducible factor of the
    characteristic polynomial has single-sign eigenvalue valuations;
    otherwise the mixed factors contribute precision-qualified bases and
    the split is flagged inexact.
    """
    require_prime(p)
    alpha._require_square()
    n = alpha.rows
    if n == 0:
        return ContractionSplit(p, alpha, (), (), (), True)
    f = alpha.charpoly()
    if f.coeffs[0] == 0:
        raise SingularMatrixError("automorphism matrix is singular")
    basis_p, basis_0, basis_m = [], [], []
    exact = True
    for g, mult in factor_over_q(f):
        vals = eigenvalue_valuations(g, p)
        signs = vals.signs()
        w = generalized_kernel(alpha, g, mult)
        if len(w) != mult * g.degree:
            raise CertificateError("generalized kernel dimension mismatch")
        if signs == {-1}:
            basis_p.extend(w)
        elif signs == {0}:
            basis_0.extend(w)
        elif signs == {1}:
            basis_m.extend(w)
        else:
            exact = False
            sub_p, sub_0, sub_m = _split_mixed_factor(
                alpha, w, g, mult, p, precision)
            basis_p.extend(sub_p)
            basis_0.extend(sub_0)
            basis_m.extend(sub_m)
    split = ContractionSplit(
        p, alpha,
        tuple(tuple(v) for v in basis_p),
        tuple(tuple(v) for v in basis_0),
        tuple(tuple(v) for v in basis_m),
        exact,
        None if exact else precision,
    )
    if sum(split.dims) != n:
        raise CertificateError("piece dimensions do not sum to the ambient dim")
    return split


def _split_mixed_factor(alpha, w_basis, g, mult, p, precision):
    """Split the generalized kernel of a mixed-sign factor into
    precision-qualified sign pieces."""
    d = len(w_basis)
    a_w = restrict_matrix(alpha, w_basis)
    vals = eigenvalue_valuations(g, p)
    d_neg = dim_sign(vals, -1) * mult
    d_zero = dim_sign(vals, 0) * mult
    d_pos = dim_sign(vals, 1) * mult
    big_m = math.lcm(*range(1, d + 1))
    w_mat = QMatrix.from_columns(w_basis, alpha.rows)

    def lift(rep: Lattice):
        return [tuple(w_mat.apply(col)) for col in rep.basis]

    # v < 0 for a_w  <=>  valuation <= 0 for p * a_w^big_m
    scaled = a_w.power(big_m).scale(Fraction(p))
    rep_p = nonexpanding_representative(scaled, p, precision, d_neg)
    scaled_inv = a_w.power(-big_m).scale(Fraction(p))
    rep_m = nonexpanding_representative(scaled_inv, p, precision, d_pos)
    if d_zero:
        # powering by big_m turns the valuations into integers, keeping
        # the decomposition and clearing the strip (0, 1)
        rep_plus = nonexpanding_representative(
            a_w.power(big_m), p, precision, d_neg + d_zero)
        rep_minus = nonexpanding_representative(
            a_w.power(-big_m), p, precision, d_pos + d_zero)
        zero_cols = _subspace_intersection(
            [list(c) for c in rep_plus.basis],
            [list(c) for c in rep_minus.basis], p, d)
        if len(zero_cols) != d_zero:
            raise PrecisionExhaustedError(
                "bounded-part intersection failed the dimension certificate",
                precision=precision,
            )
    else:
        zero_cols = []
    return lift(rep_p), [tuple(w_mat.apply(c)) for c in zero_cols], lift(rep_m)


def split_with_retry(
    alpha: QMatrix, p: int, precision: int = DEFAULT_PRECISION
) -> ContractionSplit:
    """contraction_split, doubling the precision up to MAX_PRECISION on
    PrecisionExhausted."""
    while True:
        try:
            return contraction_split(alpha, p, precision)
        except PrecisionExhaustedError:
            if precision >= MAX_PRECISION:
                raise
            precision = min(2 * precision, MAX_PRECISION)


def adapted_lattice(split: ContractionSplit) -> AdaptedLattice:
    """Full-rank lattice adapted to an exact contraction split.

    The piece lattices satisfy alpha^-1(L_p) <= L_p, alpha(L_0) = L_0 and
    alpha(L_m) <= L_m; Cayley-Hamilton applied to the restricted maps
    makes the finite stabilizing sums below invariant.
    """
    if not split.exact:
        raise InexactSplitError("adapted lattice requires an exact split")
    p, n, alpha = split.p, split.ambient, split.alpha

    def stabilize(cols, powers):
        if not cols:
            return canonicalize([], p, n)
        gens = []
        for k in powers:
            mk = alpha.power(k)
            gens.extend(mk.apply(c) for c in cols)
        return canonicalize(gens, p, n)

    d_p, d_0, d_m = split.dims
    piece_p = stabilize(split.basis_p, range(0, -d_p, -1) or [0])
    piece_0 = stabilize(split.basis_0, range(-(d_0 - 1), d_0) if d_0 else [0])
    piece_m = stabilize(split.basis_m, range(0, d_m) or [0])
    lattice = canonicalize(
        list(piece_p.basis) + list(piece_0.basis) + list(piece_m.basis), p, n)
    vals = eigenvalue_valuations(alpha.charpoly(), p)
    nonzero = [abs(v) for v, _ in vals.entries if v != 0]
    theta = min(nonzero) if nonzero else None
    adapted = AdaptedLattice(lattice, split, piece_p, piece_0, piece_m, theta)
    _check_adapted(adapted)
    return adapted


def _check_adapted(adapted: AdaptedLattice):
    split = adapted.split
    alpha = split.alpha
    inv = alpha.inverse()
    ok = True
    if adapted.piece_p.rank:
        ok &= contains(adapted.piece_p, apply_matrix(inv, adapted.piece_p))
    if adapted.piece_0.rank:
        ok &= apply_matrix(alpha, adapted.piece_0) == adapted.piece_0
    if adapted.piece_m.rank:
        ok &= contains(adapted.piece_m, apply_matrix(alpha, adapted.piece_m))
    if not ok:
        raise CertificateError("adapted lattice failed its invariants")


def split_to_json(split: ContractionSplit):
    from .serialize import matrix_to_json, vector_to_json

    return {
        "p": split.p,
        "alpha": matrix_to_json(split.alpha),
        "dims": {"expanding": split.dims[0], "bounded": split.dims[1],
                 "contracting": split.dims[2]},
        "basis_expanding": [vector_to_json(v) for v in split.basis_p],
        "basis_bounded": [vector_to_json(v) for v in split.basis_0],
        "basis_contracting": [vector_to_json(v) for v in split.basis_m],
        "exact": split.exact,
        "precision": split.precision,
    }
