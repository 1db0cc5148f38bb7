"""projquant: exact computational projective geometry, Weierstrass torus
embeddings, Berezin-Toeplitz quantization on P^1, and moment-map/GIT
stability checks.
"""

from . import btquant, coordring, gitquot, projgeo, weierstrass
from .gaussrat import GaussianRational, exact_rank
from .poly import Polynomial, divides, format_polynomial, parse_polynomial
from .projgeo import (
    CubicClass,
    JacobiMatrix,
    PointNotOnVarietyError,
    ProjPoint,
    VarietyPresentation,
    cubic_classify,
    dehomogenize,
    evaluate,
    is_on_variety,
    is_singular_point,
    jacobian,
    rank_at,
    veronese_square,
    zariski_tangent_dim,
)
from .coordring import (
    GradedRingPresentation,
    graded_basis_hypersurface,
    hilbert_function,
    krull_dim,
    variety_dim,
)
from .weierstrass import EisensteinPair, Lattice, LatticePointError, eisenstein, embed, ode_residual, wp, wp_prime

__version__ = "0.1.0"
