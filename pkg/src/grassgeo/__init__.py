"""Coherent-state geometry on complex Grassmann manifolds and their duals."""

from .spaces import ChartPoint, Frame, GrassmannSpace, TangentVector, origin_frame
from .geometry import (
    chart_of_frame,
    chart_transition,
    distance,
    exp0,
    exp0_frame,
    frame_of_chart,
    geodesic_ode,
    log0,
    transport_to_origin,
)
from .kernels import (
    EnergySpec,
    OverlapValue,
    PluckerVector,
    cayley_distance,
    critical_points,
    diastasis,
    energy,
    energy_gradient,
    kernel,
    normalized_overlap,
    plucker_embed,
    plucker_overlap_oracle,
)
from .linalg import apply_spectral, principal_angles, rank_tol, svd
from .loci import (
    CartanVector,
    ConjugateTime,
    SchubertSymbol,
    cartan_to_tangent,
    conjugate_stratum_I,
    conjugate_stratum_W,
    cut_locus_test,
    dexp_min_singular,
    disjoint_union_check,
    is_conjugate,
    isoclinic_test,
    schubert_dims,
    schubert_membership,
    tangent_conjugate_times,
)
from .topology import (
    CharacteristicReport,
    characteristic_report,
    euler_characteristic,
    schubert_cells,
)

__version__ = "0.1.0"

__all__ = [
    "CartanVector",
    "ChartPoint",
    "CharacteristicReport",
    "ConjugateTime",
    "EnergySpec",
    "Frame",
    "GrassmannSpace",
    "OverlapValue",
    "PluckerVector",
    "SchubertSymbol",
    "TangentVector",
    "apply_spectral",
    "cartan_to_tangent",
    "cayley_distance",
    "characteristic_report",
    "chart_of_frame",
    "chart_transition",
    "conjugate_stratum_I",
    "conjugate_stratum_W",
    "critical_points",
    "cut_locus_test",
    "dexp_min_singular",
    "diastasis",
    "disjoint_union_check",
    "distance",
    "energy",
    "energy_gradient",
    "euler_characteristic",
    "exp0",
    "exp0_frame",
    "frame_of_chart",
    "geodesic_ode",
    "is_conjugate",
    "isoclinic_test",
    "kernel",
    "log0",
    "normalized_overlap",
    "origin_frame",
    "plucker_embed",
    "plucker_overlap_oracle",
    "principal_angles",
    "rank_tol",
    "schubert_cells",
    "schubert_dims",
    "schubert_membership",
    "svd",
    "tangent_conjugate_times",
    "transport_to_origin",
]
