"""Desk-scale verification toolkit for scattered binomial subspaces of F_{q^6}^2."""

from .census import (
    CubicReport,
    GammaReport,
    basic_multiplier_check,
    conjecture_value,
    enumerate_gamma,
    lemma_ff_count,
    star_census_even,
    star_census_odd,
)
from .equiv_mrd import (
    MrdReport,
    OrbitReport,
    frobenius_orbits,
    gammal_equivalent,
    gl_equivalent,
    mrd_check,
)
from .field_tower import (
    Elt,
    FieldSpec,
    TowerCtx,
    arith,
    frobenius,
    in_subfield,
    is_square_in_Fq_star,
    norm_fiber_representative,
    norm_q6_q3,
    power_class_q2q1,
    solve_quadratic,
    tower,
    tower_for_q,
    trace_down,
)
from .linearized import (
    LinPoly,
    det,
    dickson,
    evaluate,
    kernel_dim_brute,
    kernel_dim_dickson,
    rank,
    submatrix_Mr,
)
from .scatter_criteria import (
    PhiQuadratic,
    RootPowerStatus,
    ScatterVerdict,
    brute_is_scattered,
    criterion_even,
    criterion_odd,
    is_scattered,
    mainlemma_check,
    phi_b,
    r_poly,
    root_power_status,
    substitution_identities_check,
)

__version__ = "0.1.0"
