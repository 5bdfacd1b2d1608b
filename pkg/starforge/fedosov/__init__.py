"""starforge.fedosov: the Weyl-bundle engine on a chart.

The fiber product is ``<> = exp(pi^(ij) <d/dy^i d/dy^j>)`` with no factor
1/2 and the symplectic data enters as ``Omega = (2 pi / hbar)^-1``.
``fedosov_recursion`` builds ``r`` (quantum or classical), ``flat_lift``
solves ``D tau = 0``, ``star_modified``/``star_original`` read off the two
products and ``fedosov_class_residual`` checks the characteristic class.
"""

from starforge.fedosov._cochains import (
    FiberCochain,
    cochain_flatness_residual,
    cochain_lift,
    interpolate_fiber,
    nu_eval,
    nu_inverse,
)
from starforge.fedosov._connection import (
    ConnectionData,
    WeylConnection,
    curvature,
    dx_omega_y,
    omega_form,
    symplectic_matrix,
)
from starforge.fedosov._fiber import (
    FiberProduct,
    delta,
    delta_inverse,
    fiber_products,
    hodge_residual,
    homogeneous_parts,
)
from starforge.fedosov._fixtures import FedosovFixture, fedosov_fixtures, scaled_j
from starforge.fedosov._original import (
    OriginalFedosov,
    original_fedosov,
    star_original,
    substitute_y,
)
from starforge.fedosov._recursion import (
    FedosovState,
    GeometricData,
    Mode,
    certificate_residual,
    fedosov_class_residual,
    fedosov_recursion,
    flat_lift,
    geometric_data,
    iteration_bound,
    star_modified,
    xi_bridge,
)

__all__ = [
    "ConnectionData",
    "FedosovFixture",
    "FedosovState",
    "FiberCochain",
    "FiberProduct",
    "GeometricData",
    "Mode",
    "OriginalFedosov",
    "WeylConnection",
    "certificate_residual",
    "cochain_flatness_residual",
    "cochain_lift",
    "curvature",
    "delta",
    "delta_inverse",
    "dx_omega_y",
    "fedosov_class_residual",
    "fedosov_fixtures",
    "fedosov_recursion",
    "fiber_products",
    "flat_lift",
    "geometric_data",
    "hodge_residual",
    "homogeneous_parts",
    "interpolate_fiber",
    "iteration_bound",
    "nu_eval",
    "nu_inverse",
    "omega_form",
    "original_fedosov",
    "scaled_j",
    "star_modified",
    "star_original",
    "substitute_y",
    "symplectic_matrix",
    "xi_bridge",
]
