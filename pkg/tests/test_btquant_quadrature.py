import math
from functools import lru_cache

import numpy as np
import pytest

from projquant.btquant import build_quadrature
from projquant.btquant.chart import hermitian_weight
from projquant.btquant.sections import SectionBasis, gram_entry_closed_form


@lru_cache(maxsize=4)
def _gauss(nodes: int):
    u, w = np.polynomial.legendre.leggauss(nodes)
    return u, w


def radial_moment_oracle(k: int, m: int, nodes: int = 2000) -> float:
    """Independent 1-D quadrature for int_0^inf r^(2k+1) (1+r^2)^(-m-2) dr.

    Uses r = tan(u) on (0, pi/2) with a dense Gauss-Legendre rule; entirely
    separate from the production compactification, so it can certify the
    Beta-integral closed form and the Gram matrix at once.
    """
    u, w = _gauss(nodes)
    u = 0.25 * math.pi * (u + 1.0)
    w = 0.25 * math.pi * w
    r = np.tan(u)
    vals = r ** (2 * k + 1) * (1 + r ** 2) ** (-(m + 2)) / np.cos(u) ** 2
    return float(np.sum(w * vals))


def beta_closed_form(k: int, m: int) -> float:
    return 0.5 * math.factorial(k) * math.factorial(m - k) / math.factorial(m + 1)


def test_radial_oracle_matches_beta_function():
    for m in (2, 5, 9):
        for k in range(m + 1):
            assert abs(radial_moment_oracle(k, m) - beta_closed_form(k, m)) < 1e-12


def test_total_mass(quad64):
    assert abs(quad64.total_mass() - 2 * math.pi) < 1e-10


def test_angular_orthogonality(quad64):
    z = quad64.nodes
    m = 10
    hm = hermitian_weight(z, m)
    for j, k in [(0, 1), (2, 5), (1, 9), (0, 10)]:
        val = np.sum(quad64.weights * hm * np.conj(z) ** j * z ** k)
        assert abs(val) < 1e-12


def test_gram_matches_beta_oracle(quad64):
    for m in (3, 8, 16):
        basis = SectionBasis.build(m, quad64)
        for k in range(m + 1):
            target = 4 * math.pi * radial_moment_oracle(k, m)
            assert abs(basis.gram[k, k] - target) < 1e-10
            assert abs(basis.gram[k, k] - gram_entry_closed_form(k, k, m)) < 1e-10
        off = basis.gram - np.diag(np.diag(basis.gram))
        assert np.max(np.abs(off)) < 1e-12


def test_default_rule_exactness_flag(quad64):
    assert quad64.is_exact_for(64)
    coarse = build_quadrature(8, radial=3, angular=10)
    assert not coarse.is_exact_for(8)


def test_integrate_constant(quad16):
    ones = np.ones_like(quad16.nodes, dtype=complex)
    assert abs(quad16.integrate(ones) - 2 * math.pi) < 1e-10


def test_bad_parameters_rejected():
    with pytest.raises(ValueError):
        build_quadrature(0)
    with pytest.raises(ValueError):
        build_quadrature(4, radial=0)
    with pytest.raises(ValueError):
        build_quadrature(4, angular=1)


def test_weights_positive(quad64):
    assert np.all(quad64.weights > 0)
