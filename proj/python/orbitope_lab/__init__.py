"""Gradient-map laboratory on matrix groups: Python bindings."""

from ._orbitope import (  # noqa: F401
    DiscreteMeasure,
    Facet,
    GroupModel,
    InverseResult,
    OrbitopeError,
    Polytope,
    ProjectivePoint,
    RayleighReport,
    Representation,
    RiemannMesh,
    SatakePoint,
    ToleranceProfile,
    abelian_gradient,
    balance,
    bly_evaluate,
    bly_inverse,
    boundary_component_count,
    build_model,
    build_representation,
    flow,
    flow_limit,
    gradient_map,
    haar_measure,
    height_function,
    max_locus,
    mesh_sphere,
    moment_polytope,
    moment_vector,
    ray_limit,
    rayleigh_bound,
    satake_embed,
)

__all__ = [name for name in dir() if not name.startswith("_")]
