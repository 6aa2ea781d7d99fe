"""Exact computation of relative polar curves, delta invariants and vanishing-cycle stalk formulas."""

from .curves import (
    PrimaryComponent,
    component_intersection_number,
    decompose_curve_at_origin,
    puiseux_intersection_number,
)
from .delta import (
    DeltaReport,
    delta_generic_linear,
    delta_hat,
    delta_P,
    delta_plain,
    milnor_number,
    teissier_check,
)
from .errors import (
    ConstantOnStratum,
    DegreeMismatch,
    GenericityFailure,
    HypothesisViolated,
    IsolationCheckFailed,
    NonProperIntersection,
    NotACurve,
    ParseError,
    PolarError,
    PrecisionExhausted,
    ResourceLimit,
    RingMismatch,
    RingNotIntegralDomain,
    UnknownVariable,
)
from .ideals import (
    BasisResult,
    Ideal,
    cached_bases,
    dimension,
    eliminate,
    groebner,
    intersect,
    local_dimension,
    local_quotient_dim,
    maximal_ideal,
    normal_form,
    quotient,
    saturate,
    spolys_reduce_to_zero,
    standard_basis_local,
    step_budget,
    vanishes_on_component,
)
from .polar import (
    HypothesisReport,
    PolarCycle,
    StratumGeometry,
    check_hypothesis,
    critical_scheme,
    polar_cycle,
)
from .poly import (
    DEGREVLEX,
    LEX,
    LOCAL,
    MonomialOrder,
    Polynomial,
    elimination_order,
    parse,
    partial_derivative,
    random_linear_form,
)
from .puiseux import INFINITY, PuiseuxBranch, ord_along, puiseux_branches
from .strat import (
    ModuleDescription,
    StalkReport,
    StratifiedComplexSpec,
    StratumData,
    braden_conic_check,
    characteristic_cycle,
    constant_sheaf,
    coordinate_cross,
    discriminant_check,
    euler_index_isolated,
    stalk_general,
    stalk_generic_linear,
    stalk_isolated,
)

__version__ = "0.1.0"
