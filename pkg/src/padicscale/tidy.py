"""The tidying procedure: U+/U- computation, (T1) verification, and the
scale as a tidy index.

This is the independent route against the Newton-polygon formula: the
scale exponent produced here comes from exact lattice indices (or, in the
precision-qualified regime, from a certified change-of-basis solve), not
from eigenvalue valuations.

(T2) is discharged structurally, not dynamically: submodule chains of a
finitely generated module over the localization Z_(p) satisfy the
ascending chain condition, so a lattice satisfying (T1) satisfies (T2)
automatically.  The certificate carries a fixed note to that effect.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .contraction import (
    ContractionSplit,
    _approx_invariant,
    _solve_in_span,
    _truncate,
    adapted_lattice,
    split_with_retry,
)
from .errors import CertificateError, IterationCapError
from .lattice import (
    Lattice,
    apply_matrix,
    canonicalize,
    contains,
    index_exponent,
    intersect,
    intersect_subspace,
    lattice_sum,
    scale_lattice,
    standard_lattice,
)
from .linalg import QMatrix
from .padic import vp

T2_NOTE = (
    "T2 follows from T1: submodule chains in Z_(p)^n satisfy the "
    "ascending chain condition"
)

U_PLUS_CAP = 64
TIDYING_CAP = 128


@dataclass(frozen=True)
class TidyCertificate:
    p: int
    alpha: QMatrix
    steps: int
    lattice: Lattice  # the tidy lattice V
    v_plus: Lattice
    v_minus: Lattice
    scale_exponent: int
    t1_verified: bool
    exact: bool
    t2_note: str = T2_NOTE


def _chain_step(m: Lattice, alpha: QMatrix, precision: Optional[int]) -> Lattice:
    nxt = intersect(m, apply_matrix(alpha, m))
    if precision is not None:
        nxt = _truncate(nxt, precision)
    return nxt


def _largest_invariant_part(
    v: Lattice, alpha: QMatrix, subspace_basis, exact: bool,
    precision: Optional[int], cap: int = U_PLUS_CAP,
):
    """Largest submodule S of v with alpha^-1(S) <= S.

    Iterates M <- M intersect alpha(M) and tracks S = M intersect E_+
    (the span of ``subspace_basis``); the chain of S values is decreasing
    and bounded, and the fixed point certificate (stability plus
    alpha^-1-invariance) makes the answer exact in the exact regime.
    """
    inv = alpha.inverse()
    m = v
    prev = None
    stable = 0
    for _ in range(cap + 1):
        s = intersect_subspace(m, subspace_basis)
        if s == prev:
            stable += 1
        else:
            stable = 0
        if exact:
            if stable >= 1 and (
                s.rank == 0 or contains(s, apply_matrix(inv, s))
            ):
                return s
        else:
            if stable >= 2 and _approx_invariant(s, inv, precision // 2):
                return s
        prev = s
        m = _chain_step(m, alpha, precision)
    raise IterationCapError(
        "U+ chain failed to stabilize; this indicates a bug, since "
        "decreasing bounded lattice chains must stabilize")


def u_plus(v: Lattice, alpha: QMatrix, split: ContractionSplit,
           cap: int = U_PLUS_CAP) -> Lattice:
    """Largest submodule S <= v with alpha^-1(S) <= S (the module U+)."""
    return _largest_invariant_part(
        v, alpha, split.basis_plus(), split.exact, split.precision, cap)


def u_minus(v: Lattice, alpha: QMatrix, split: ContractionSplit,
            cap: int = U_PLUS_CAP) -> Lattice:
    """Mirror image of u_plus: alpha swapped with its inverse and E_+
    with E_- = E_0 + E_m."""
    return _largest_invariant_part(
        v, alpha.inverse(), split.basis_minus(), split.exact,
        split.precision, cap)


def check_t1(v: Lattice, alpha: QMatrix, split: ContractionSplit) -> bool:
    """(T1): the module sum of U+ and U- is all of v."""
    plus = u_plus(v, alpha, split)
    minus = u_minus(v, alpha, split)
    total = lattice_sum(plus, minus)
    if split.exact:
        return total == v
    level = split.precision // 2
    return _truncate(total, level) == _truncate(v, level)


def _scale_from_plus(v_plus: Lattice, alpha: QMatrix, exact: bool,
                     precision: Optional[int], p: int) -> int:
    """Index exponent [alpha(V+) : V+]."""
    if v_plus.rank == 0:
        return 0
    if exact:
        return index_exponent(apply_matrix(alpha, v_plus), v_plus)
    images = [alpha.apply(col) for col in v_plus.basis]
    t = _solve_in_span(list(v_plus.basis), images, v_plus.ambient)
    # certify the solve: residual entries must vanish to half precision
    b = QMatrix.from_columns(v_plus.basis, v_plus.ambient)
    residual = (b @ t) - QMatrix.from_columns(images, v_plus.ambient)
    level = precision // 2
    for row in residual.entries:
        for e in row:
            if e != 0 and vp(e, p) < level:
                raise CertificateError(
                    "scale solve residual above the certification level")
    e = -vp(t.det(), p)
    if e < 0:
        raise CertificateError("negative scale exponent from tidy route")
    return e


def tidying(u0: Lattice, alpha: QMatrix,
            split: Optional[ContractionSplit] = None,
            cap: int = TIDYING_CAP) -> TidyCertificate:
    """Smallest N such that V = intersection of alpha^n(U0), n = 0..N,
    satisfies (T1); returns the full certificate for that V."""
    p = u0.p
    if split is None:
        split = split_with_retry(alpha, p)
    v = u0
    for steps in range(cap + 1):
        plus = u_plus(v, alpha, split)
        minus = u_minus(v, alpha, split)
        total = lattice_sum(plus, minus)
        if split.exact:
            ok = total == v
        else:
            level = split.precision // 2
            ok = _truncate(total, level) == _truncate(v, level)
        if ok:
            exponent = _scale_from_plus(
                plus, alpha, split.exact, split.precision, p)
            return TidyCertificate(
                p=p, alpha=alpha, steps=steps, lattice=v,
                v_plus=plus, v_minus=minus, scale_exponent=exponent,
                t1_verified=True, exact=split.exact)
        v = intersect(v, apply_matrix(alpha, v))
        if not split.exact:
            v = _truncate(v, split.precision)
    raise IterationCapError(
        f"no tidy lattice within {cap} steps; this contradicts the "
        "tidying procedure's termination guarantee")


def tidy_ball(adapted, k: int) -> TidyCertificate:
    """The ball p^k * L of an adapted lattice, certified tidy with N = 0."""
    split = adapted.split
    ball = scale_lattice(adapted.lattice, k)
    try:
        cert = tidying(ball, split.alpha, split, cap=0)
    except IterationCapError as exc:
        raise CertificateError(
            "adapted ball is not immediately tidy; this is a bug") from exc
    return cert


def certificate_to_json(cert: TidyCertificate):
    from .serialize import matrix_to_json

    return {
        "p": cert.p,
        "alpha": matrix_to_json(cert.alpha),
        "steps": cert.steps,
        "tidy_lattice": cert.lattice.to_json(),
        "v_plus": cert.v_plus.to_json(),
        "v_minus": cert.v_minus.to_json(),
        "scale_exponent": cert.scale_exponent,
        "scale_value": str(cert.p ** cert.scale_exponent),
        "t1_verified": cert.t1_verified,
        "t2_note": cert.t2_note,
        "exact": cert.exact,
    }
