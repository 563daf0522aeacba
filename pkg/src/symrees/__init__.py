"""Exact computations with saturated powers of monomial ideals.

Monomial ideal arithmetic, saturation by polynomial ideals, torsion lengths
and their polynomial fits, Newton polyhedra and analytic spread, and
Castelnuovo-Mumford regularity.
"""
from .asymptotics import (
    INFINITE,
    LengthTable,
    NumericalPolynomial,
    PreconditionError,
    QuasiPolynomial,
    check_bounds,
    closed_form_2d,
    count_quotient,
    epsilon_estimate,
    fit_polynomial,
    fit_quasipolynomial_ray,
    length_table,
)
from .dsl import ParseError, Workspace, format_workspace, parse_workspace
from .geometry import (
    Inclusion,
    NewtonPolyhedron,
    analytic_spread,
    closure_inclusion_check,
    closure_of_multi_power,
    integral_closure,
    newton_polyhedron,
)
from .ideal import (
    DimensionError,
    DomainError,
    MonomialIdeal,
    RingCtx,
    SparsePoly,
    colon,
    intersect,
    irreducible_decomposition,
    multi_power,
    power,
    project,
    radical,
)
from .regularity import ResourceError, d_of, koszul_betti, linear_bound_check, regularity, taylor_betti
from .saturation import (
    IdealFamily,
    PlanValidationError,
    SaturationPlan,
    alpha_stabilization,
    associated_squarefree,
    build_plan,
    colon_by_poly,
    double_saturation_check,
    rees_generation_degrees,
    saturate,
    saturate_by_poly,
    saturate_certified,
    saturate_planned,
    stabilization_index,
)

__version__ = "0.1.0"
