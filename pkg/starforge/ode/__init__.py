"""starforge.ode: formal ODE solvers over truncated series.

``solve_linear`` handles ``v' = w + D v`` with ``D, w`` of positive
hbar-order, ``solve_picard`` the nonlinear contraction case, and
``solve_exp_prefactor``/``star_exponential`` the exponential-prefactor
equations with a scalar zeroth-order part.
"""

from starforge.ode._solvers import (
    ExpPrefactorSolution,
    StarExponential,
    check_raises_order,
    ode_residual,
    solve_exp_prefactor,
    solve_linear,
    solve_picard,
    star_exponential,
    star_product_t,
)
from starforge.ode._tpoly import TOperator, TPolySeries

__all__ = [
    "ExpPrefactorSolution",
    "StarExponential",
    "TOperator",
    "TPolySeries",
    "check_raises_order",
    "ode_residual",
    "solve_exp_prefactor",
    "solve_linear",
    "solve_picard",
    "star_exponential",
    "star_product_t",
]
