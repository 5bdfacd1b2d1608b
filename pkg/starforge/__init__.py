"""star-forge: exact computer algebra for formal deformation quantization.

Every construction works on a polynomial chart of R^d with all formal series
truncated by a ``TruncationProfile``. Coefficients are exact Gaussian
rationals, so each identity of the theory (associativity of a star product,
the Maurer-Cartan equation, Fedosov flatness, the characteristic-class
relation) is checked as a literally zero residual.

Subpackages, bottom-up:

  - ``core``        exact scalars, truncated series, the Weyl algebra
  - ``polyvector``  Schouten / Cartan / Courant calculus
  - ``hochschild``  polydifferential cochains and the Gerstenhaber bracket
  - ``dgla``        Maurer-Cartan elements, gauge action, twisting, L-infinity
  - ``ode``         formal ODE solvers in (V[t])[[hbar]]
  - ``star``        Moyal products, equivalences, normalizer, B-field flow
  - ``gauge``       the B-field action on formal Poisson structures
  - ``fedosov``     the Weyl-bundle recursions and Fedosov star products
  - ``flows``       selftest suites and scenario runs
"""

__version__ = "0.1.0"
