"""Exact arithmetic for scale functions of p-adic product-group
automorphisms: Newton polygons, canonical lattices, contraction
decompositions, tidy certificates, and finite nilpotent Sylow structure.
"""

from .contraction import (
    AdaptedLattice,
    ContractionSplit,
    adapted_lattice,
    contraction_split,
    split_with_retry,
)
from .errors import (
    BlockMismatchError,
    CapExceededError,
    CertificateError,
    InexactSplitError,
    IterationCapError,
    NoFiniteFactorError,
    NonPrimeError,
    PadicScaleError,
    PrecisionExhaustedError,
    UnknownPrimeError,
)
from .lattice import Lattice, canonicalize, intersect, standard_lattice
from .linalg import MonicPoly, QMatrix, factor_over_q
from .model import (
    FactoredScale,
    GroupModel,
    ModelAutomorphism,
    Unbounded,
    invariant_lattice,
    local_prime_content,
    module_of,
    prime_spectrum,
    quotient_by_finite,
    scale,
    uniscalar_check,
)
from .newton import (
    ValuationMultiset,
    eigenvalue_valuations,
    newton_segments,
    scale_exponent,
)
from .nilpotent import (
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
from .padic import INFINITY, abs_p, is_prime, vp
from .tidy import TidyCertificate, check_t1, tidy_ball, tidying, u_minus, u_plus

__all__ = [
    "AdaptedLattice",
    "BlockMismatchError",
    "CapExceededError",
    "CertificateError",
    "ContractionSplit",
    "FactoredScale",
    "FinitePGroup",
    "GroupModel",
    "INFINITY",
    "InexactSplitError",
    "IterationCapError",
    "Lattice",
    "ModelAutomorphism",
    "MonicPoly",
    "NoFiniteFactorError",
    "NonPrimeError",
    "PadicScaleError",
    "PrecisionExhaustedError",
    "ProductGroup",
    "QMatrix",
    "SubgroupHandle",
    "TidyCertificate",
    "Unbounded",
    "UnknownPrimeError",
    "ValuationMultiset",
    "abs_p",
    "adapted_lattice",
    "canonicalize",
    "check_t1",
    "close",
    "contraction_split",
    "cyclic",
    "eigenvalue_valuations",
    "element_sylow_part",
    "factor_over_q",
    "hom_search",
    "intersect",
    "invariant_lattice",
    "is_prime",
    "local_prime_content",
    "module_of",
    "newton_segments",
    "prime_spectrum",
    "quaternion8",
    "quotient_by_finite",
    "scale",
    "scale_exponent",
    "split_with_retry",
    "standard_lattice",
    "sylow_decompose",
    "tidy_ball",
    "tidying",
    "u_minus",
    "u_plus",
    "uniscalar_check",
    "vp",
]
