"""Holomorphic section spaces of the level-m bundle over P^1.

In the chart, a basis of H^0 is the monomials 1, z, ..., z^m (degree-m
homogeneous polynomials in two variables restricted to the chart).  The
Gram matrix of the bundle inner product is diagonal with Beta-integral
entries 2*pi*k!(m-k)!/(m+1)!; the orthonormalizing transform comes from its
Cholesky factor.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import factorial, pi

import numpy as np

from .chart import hermitian_weight
from .quadrature import QuadratureRule, build_quadrature

log = logging.getLogger(__name__)


def gram_entry_closed_form(j: int, k: int, m: int) -> float:
    """<z^j, z^k> at level m: zero off the diagonal, Beta integral on it."""
    if j != k:
        return 0.0
    return 2.0 * pi * factorial(k) * factorial(m - k) / factorial(m + 1)


@dataclass(frozen=True)
class SectionBasis:
    """Monomial basis data of H^0(P^1, L^m) under a quadrature rule."""

    m: int
    quad: QuadratureRule
    values: np.ndarray          # (m+1, npts) monomial values at the nodes
    derivatives: np.ndarray     # (m+1, npts) chart derivatives d/dz z^k
    metric_weights: np.ndarray  # w * h_m at the nodes
    gram: np.ndarray
    chol: np.ndarray            # lower Cholesky factor L of the Gram matrix
    inv_chol: np.ndarray        # C = L^-1, the orthonormalizing transform

    @classmethod
    def build(cls, m: int, quad: QuadratureRule | None = None) -> "SectionBasis":
        if m < 0:
            raise ValueError("level must be nonnegative")
        quad = quad if quad is not None else build_quadrature(max(m, 1))
        z = quad.nodes
        k = np.arange(m + 1)
        values = z[None, :] ** k[:, None]
        derivatives = np.zeros_like(values)
        if m >= 1:
            derivatives[1:, :] = k[1:, None] * z[None, :] ** (k[1:, None] - 1)
        mw = quad.weights * hermitian_weight(z, m)
        gram = (values.conj() * mw) @ values.T
        chol = np.linalg.cholesky(gram)
        inv_chol = np.linalg.inv(chol)
        d = np.abs(np.diag(gram))
        log.debug("level %d Gram diagonal condition %.3e", m, d.max() / d.min())
        return cls(m=m, quad=quad, values=values, derivatives=derivatives,
                   metric_weights=mw, gram=gram, chol=chol, inv_chol=inv_chol)

    @property
    def dim(self) -> int:
        return self.m + 1

    def pairings(self, section_values: np.ndarray) -> np.ndarray:
        """Matrix <z^j, s_k> for a stack of section value rows s_k."""
        return (self.values.conj() * self.metric_weights) @ section_values.T

    def to_onb(self, mono_pairing_matrix: np.ndarray) -> np.ndarray:
        """Conjugate a pairing matrix into the orthonormal basis."""
        C = self.inv_chol
        return C @ mono_pairing_matrix @ C.conj().T
