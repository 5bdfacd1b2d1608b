"""starforge.gauge: the B-field action on formal Poisson structures.

``gauge_transform`` inverts the sharp map by a Neumann series and
``gauge_transform_ode`` integrates the Riccati flow; the two agree term by
term. ``omega_from_pi``/``pi_from_omega`` translate between nondegenerate
bivectors and shifted 2-form series.
"""

from starforge.gauge._action import (
    ExactEquivalenceResidual,
    bivector_matrix,
    check_gauge_input,
    exact_equivalence_residual,
    gauge_flow,
    gauge_matrix,
    gauge_transform,
    gauge_transform_ode,
    group_action_residual,
    jacobi_preservation_residual,
    riccati_flow,
)
from starforge.gauge._symplectic import (
    OmegaSeries,
    omega_from_pi,
    pi_from_omega,
    poisson_closed_agree,
    symplectic_gauge_residual,
)

__all__ = [
    "ExactEquivalenceResidual",
    "OmegaSeries",
    "bivector_matrix",
    "check_gauge_input",
    "exact_equivalence_residual",
    "gauge_flow",
    "gauge_matrix",
    "gauge_transform",
    "gauge_transform_ode",
    "group_action_residual",
    "jacobi_preservation_residual",
    "omega_from_pi",
    "pi_from_omega",
    "poisson_closed_agree",
    "riccati_flow",
    "symplectic_gauge_residual",
]
