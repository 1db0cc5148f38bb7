"""Quantization operators on the section spaces: multiplication-and-project
(Toeplitz), the covariant-derivative operator of geometric quantization, the
operator norm, and the graded family acting on the whole coordinate ring.

The level-m geometric-quantization operator uses the Hamiltonian field of f
taken with respect to m*omega (the symplectic form whose prequantum bundle
the level-m power is); with the divergence-form Laplacian of chart.py this
makes the identity Q_f = i T_{f - Delta f / 2m} hold to quadrature accuracy,
which the regression tests pin at build-determined tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chart import SmoothFunction, shifted_by_laplacian
from .quadrature import QuadratureRule, build_quadrature
from .sections import SectionBasis


class PowerIterationError(RuntimeError):
    pass


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense complex matrix of an endomorphism of H^0, in the orthonormal
    section basis."""

    m: int
    mat: np.ndarray

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check(other)
        return OperatorMatrix(self.m, self.mat @ other.mat)

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check(other)
        return OperatorMatrix(self.m, self.mat + other.mat)

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check(other)
        return OperatorMatrix(self.m, self.mat - other.mat)

    def __mul__(self, scalar) -> "OperatorMatrix":
        return OperatorMatrix(self.m, self.mat * scalar)

    __rmul__ = __mul__

    def adjoint(self) -> "OperatorMatrix":
        return OperatorMatrix(self.m, self.mat.conj().T)

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.mat - self.mat.conj().T)))

    def _check(self, other):
        if self.m != other.m:
            raise ValueError("operators at different levels")


def _basis(m: int, quad: QuadratureRule | None) -> SectionBasis:
    return SectionBasis.build(m, quad)


def toeplitz(f: SmoothFunction, m: int, quad: QuadratureRule | None = None,
             basis: SectionBasis | None = None) -> OperatorMatrix:
    """Compress multiplication by f onto the holomorphic sections.

    In the monomial basis the matrix of pairings is <z^j, f z^k>; returning
    C A C* with C the inverse Cholesky factor of the Gram matrix realizes
    the orthogonal projection in the orthonormal basis.
    """
    b = basis if basis is not None else _basis(m, quad)
    fvals = f(b.quad.nodes)
    A = b.pairings(fvals[None, :] * b.values)
    return OperatorMatrix(m, b.to_onb(A))


def geom_quant(f: SmoothFunction, m: int, quad: QuadratureRule | None = None,
               basis: SectionBasis | None = None) -> OperatorMatrix:
    """Project the prequantum operator -nabla_{X_f} + i f onto H^0.

    Applied to a holomorphic chart section s, the covariant derivative along
    X_f is X^z (s' + m s dlog h1) + X^zbar * 0; X_f is the Hamiltonian field
    of f for the level form m*omega, i.e. 1/m times the chart field.  The
    result is a smooth, generally non-holomorphic section, projected back
    through the Gram matrix.
    """
    if m < 1:
        raise ValueError("geometric quantization needs level m >= 1")
    b = basis if basis is not None else _basis(m, quad)
    z = b.quad.nodes
    factor = (1.0 + np.abs(z) ** 2) ** 2
    xz_level = -1j * factor * f.d_zbar(z) / m
    dlog_h1 = -np.conj(z) / (1.0 + np.abs(z) ** 2)
    nabla = xz_level[None, :] * (b.derivatives + m * dlog_h1[None, :] * b.values)
    pf = -nabla + 1j * f(z)[None, :] * b.values
    B = b.pairings(pf)
    return OperatorMatrix(m, b.to_onb(B))


def op_norm(M: OperatorMatrix | np.ndarray, tol: float = 1e-12,
            max_iter: int = 5000, block: int = 8) -> float:
    """Largest singular value by block power iteration on M* M.

    The iteration matrix is hermitian, so the top Ritz value's eigenpair
    residual ||H x - lambda x|| bounds the eigenvalue error; iterating a
    small deterministic block instead of one vector keeps convergence fast
    when the top of the spectrum is a near-degenerate cluster (which the
    symmetric spectra here routinely produce).  On stagnation the iteration
    restarts once from a shifted deterministic block before giving up.
    """
    a = M.mat if isinstance(M, OperatorMatrix) else np.asarray(M)
    if a.size == 0:
        return 0.0
    H = a.conj().T @ a
    n = H.shape[0]
    scale = float(np.max(np.abs(H)))
    if scale == 0.0:
        return 0.0
    b = min(n, block)

    def start_block(shift: float) -> np.ndarray:
        i = np.arange(1, n + 1)[:, None]
        j = np.arange(1, b + 1)[None, :]
        return np.cos(i * j + shift) + 1j * np.sin(0.5 * i * j + shift)

    def run(v0: np.ndarray):
        q, _ = np.linalg.qr(v0)
        for _ in range(max_iter):
            z = H @ q
            s = q.conj().T @ z
            w, u = np.linalg.eigh(s)
            lam = float(w[-1])
            x = q @ u[:, -1]
            if np.linalg.norm(H @ x - lam * x) <= tol * scale:
                return lam
            q, _ = np.linalg.qr(z)
        return None

    lam = run(start_block(0.0))
    if lam is None:
        lam = run(start_block(1.0))
    if lam is None:
        raise PowerIterationError("power iteration did not converge")
    return float(np.sqrt(max(lam, 0.0)))


def tuynman_residual(f: SmoothFunction, m: int,
                     quad: QuadratureRule | None = None) -> float:
    """Operator-norm distance between Q_f and i T_{f - Delta f / 2m}.

    The identity is exact on the sphere; the residual measures quadrature
    and rounding error only and does not decrease with m past that floor.
    """
    b = _basis(m, quad)
    q = geom_quant(f, m, basis=b)
    t = toeplitz(shifted_by_laplacian(f, m), m, basis=b)
    return op_norm(q - 1j * t)


@dataclass(frozen=True)
class ToeplitzFamily:
    """The graded family (T_f at every level up to m_max), block diagonal on
    the direct sum of the section spaces, i.e. on the truncated coordinate
    ring of the image of P^1."""

    function_name: str
    levels: tuple
    blocks: tuple  # OperatorMatrix per level, aligned with `levels`

    def block(self, m: int) -> OperatorMatrix:
        try:
            return self.blocks[self.levels.index(m)]
        except ValueError:
            raise KeyError(f"no block at level {m}") from None

    def graded_dim(self, m: int) -> int:
        return self.block(m).dim

    def apply(self, graded_vector: dict[int, np.ndarray]) -> dict[int, np.ndarray]:
        """Apply block-by-block to a vector given as {level: coefficients}.

        Grading is preserved: the output is supported on the same levels.
        """
        out = {}
        for m, v in graded_vector.items():
            blk = self.block(m)
            v = np.asarray(v, dtype=complex)
            if v.shape != (blk.dim,):
                raise ValueError(f"level-{m} component has wrong length")
            out[m] = blk.mat @ v
        return out


def total_toeplitz(f: SmoothFunction, m_max: int,
                   quad: QuadratureRule | None = None) -> ToeplitzFamily:
    """Build T_f on every level 1..m_max over one shared quadrature rule."""
    quad = quad if quad is not None else build_quadrature(m_max)
    levels = tuple(range(1, m_max + 1))
    blocks = tuple(toeplitz(f, m, quad=quad) for m in levels)
    return ToeplitzFamily(function_name=f.name, levels=levels, blocks=blocks)
