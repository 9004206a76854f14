"""Shoda-completion of block-diagonal complex semisimple algebras.

The package models algebras that are finite direct sums of full matrix
blocks, extends them by trace-pairing tensors between their minimal ideals
into one full matrix algebra, equips the extension with a submultiplicative
norm extending the block operator norm, and decides and repairs the failure
of traceless elements to be commutators.
"""

from .algebra import (
    AlgebraSpec,
    Element,
    SpectrumReport,
    commutator,
    conjugate_projections,
    frobenius,
    left_ideal_isomorphism,
    minimal_ideal_index,
    multiply,
    projection_path,
    rank,
    rank_preserving_path,
    riesz_projection,
    separating_element,
    spectrum,
    trace,
)
from .commutators import (
    CommutatorWitness,
    ShodaReport,
    commutator_decompose,
    decompose_in_completion,
    infeasibility_certificate,
    is_shoda_complete,
)
from .completion import CompletionResult, build_B, complete
from .norms import NormAudit, NormReport, a_norm, b_norm, isometry_check, pair_nuclear_norm, submultiplicativity_audit
from .structure import StructureConstantAlgebra, block_algebra, quotient, radical, wedderburn_identify
from .tensor import AJElement, AJPrimeElement, BElement, multiply_B, psi, split, tensor_multiply

__all__ = [
    "AlgebraSpec",
    "Element",
    "SpectrumReport",
    "AJElement",
    "AJPrimeElement",
    "BElement",
    "StructureConstantAlgebra",
    "CompletionResult",
    "ShodaReport",
    "CommutatorWitness",
    "NormReport",
    "NormAudit",
    "multiply",
    "commutator",
    "trace",
    "rank",
    "spectrum",
    "riesz_projection",
    "separating_element",
    "minimal_ideal_index",
    "conjugate_projections",
    "projection_path",
    "left_ideal_isomorphism",
    "rank_preserving_path",
    "frobenius",
    "tensor_multiply",
    "split",
    "multiply_B",
    "psi",
    "build_B",
    "complete",
    "block_algebra",
    "radical",
    "quotient",
    "wedderburn_identify",
    "a_norm",
    "pair_nuclear_norm",
    "b_norm",
    "submultiplicativity_audit",
    "isometry_check",
    "is_shoda_complete",
    "commutator_decompose",
    "infeasibility_certificate",
    "decompose_in_completion",
]

__version__ = "0.1.0"
