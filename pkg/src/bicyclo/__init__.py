"""Dual-containing bicyclic hyperbolic codes and the quantum codes they yield."""

from .cosets import (
    CodeShape,
    Coset,
    MinReport,
    Point,
    PointSet,
    all_cosets,
    close_under_multiplier,
    cyclotomic_coset,
    f_min_search,
    multiplicative_order,
    negate_set,
    q_ary_digits,
    scale_set,
)
from .errors import (
    BicycloError,
    CapacityError,
    NotDualContainingError,
    ParameterError,
    UnsupportedParameterError,
)
from .gf import FieldElement, FiniteField, build_field, expand_to_base, frobenius, root_of_unity
from .hyperbolic import (
    HyperbolicSpec,
    QuantumParams,
    Threshold,
    contains_euclidean_dual,
    contains_hermitian_dual,
    css_params,
    defining_set,
    delta_euclidean,
    delta_euclidean_np,
    delta_hermitian,
    delta_hermitian_np,
    designed_set,
    dimension,
    euclidean_dual_defining_set,
    hermitian_dual_defining_set,
    hermitian_params,
    verify_lemma,
    verify_theorem_boundary,
)

__version__ = "0.1.0"
