import numpy as np
import pytest

from projquant.btquant import (
    GradientUnavailableError,
    SmoothFunction,
    chart_change_residual,
    curvature_residual,
    hamiltonian_vf,
    laplacian,
    omega_density,
    poisson,
    poisson_function,
)

RNG = np.random.default_rng(42)
GRID = RNG.normal(size=100) + 1j * RNG.normal(size=100)


def test_analytic_gradients_match_finite_differences(family):
    for name, f in family.items():
        bare = SmoothFunction(name=name, fn=f.fn, at_infinity=f.at_infinity)
        assert np.max(np.abs(f.d_z(GRID) - bare.d_z(GRID))) < 1e-6
        assert np.max(np.abs(f.d_zbar(GRID) - bare.d_zbar(GRID))) < 1e-6


def test_family_bounded_on_sphere(family):
    for f in family.values():
        assert f.sup_norm() <= 1.0 + 1e-9


def test_sup_norms(family):
    assert abs(family["x3"].sup_norm() - 1.0) < 1e-6
    assert abs(family["one"].sup_norm() - 1.0) < 1e-12
    assert abs(family["x1x2"].sup_norm() - 0.5) < 1e-4  # max of x1*x2 on the sphere


def test_hamiltonian_field_of_constant_vanishes(family):
    xz, xzbar = hamiltonian_vf(family["one"], GRID)
    assert np.max(np.abs(xz)) == 0.0
    assert np.max(np.abs(xzbar)) == 0.0


def test_hamiltonian_field_of_height_is_rotation(family):
    # X^z = 2 i z: rotation about the poles, fixed points z = 0 and infinity
    xz, xzbar = hamiltonian_vf(family["x3"], GRID)
    assert np.max(np.abs(xz - 2j * GRID)) < 1e-12
    assert np.max(np.abs(xzbar + 2j * np.conj(GRID))) < 1e-12
    xz0, _ = hamiltonian_vf(family["x3"], np.array([0.0 + 0j]))
    assert abs(xz0[0]) == 0.0


def test_hamiltonian_field_linearity(family):
    f, g = family["x1"], family["x2"]
    combo = SmoothFunction(name="combo", fn=lambda z: 2 * f.fn(z) - 3 * g.fn(z),
                           dz=lambda z: 2 * f.dz(z) - 3 * g.dz(z),
                           dzbar=lambda z: 2 * f.dzbar(z) - 3 * g.dzbar(z))
    a = hamiltonian_vf(combo, GRID)[0]
    b = 2 * hamiltonian_vf(f, GRID)[0] - 3 * hamiltonian_vf(g, GRID)[0]
    assert np.max(np.abs(a - b)) < 1e-12


def test_hamiltonian_field_contracts_form_to_df(family):
    # omega(X_f, .) = df: check both dz and dzbar components on a grid
    f = family["x1x2"]
    z = GRID
    lam = (1.0 + np.abs(z) ** 2) ** (-2.0)
    xz, xzbar = hamiltonian_vf(f, z)
    assert np.max(np.abs(1j * lam * xz - f.d_zbar(z))) < 1e-8
    assert np.max(np.abs(-1j * lam * xzbar - f.d_z(z))) < 1e-8


def test_gradient_unavailable_at_infinity(family):
    with pytest.raises(GradientUnavailableError):
        hamiltonian_vf(family["x3"], np.array([np.inf + 0j]))


def test_poisson_antisymmetry_and_self_bracket(family):
    f, g = family["x1"], family["x3"]
    assert np.max(np.abs(poisson(f, f, GRID))) < 1e-12
    assert np.max(np.abs(poisson(f, g, GRID) + poisson(g, f, GRID))) < 1e-12


def test_poisson_constant_regression(family):
    # {x1,x2} = 2*x3 cyclically: the constant 2 is pinned by the form's
    # normalization (total area 2*pi) and must never drift
    x1, x2, x3 = family["x1"], family["x2"], family["x3"]
    assert np.max(np.abs(poisson(x1, x2, GRID) - 2 * x3.fn(GRID))) < 1e-10
    assert np.max(np.abs(poisson(x2, x3, GRID) - 2 * x1.fn(GRID))) < 1e-10
    assert np.max(np.abs(poisson(x3, x1, GRID) - 2 * x2.fn(GRID))) < 1e-10


def test_poisson_leibniz_rule(family):
    # {f, g*h} = {f,g} h + g {f,h} with the product differentiated analytically
    f, g, h = family["x3"], family["x1"], family["x2"]
    gh = SmoothFunction(name="gh", fn=lambda z: g.fn(z) * h.fn(z),
                        dz=lambda z: g.dz(z) * h.fn(z) + g.fn(z) * h.dz(z),
                        dzbar=lambda z: g.dzbar(z) * h.fn(z) + g.fn(z) * h.dzbar(z))
    lhs = poisson(f, gh, GRID)
    rhs = poisson(f, g, GRID) * h.fn(GRID) + g.fn(GRID) * poisson(f, h, GRID)
    assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_poisson_function_wrapper(family):
    pf = poisson_function(family["x1"], family["x2"])
    assert np.max(np.abs(pf(GRID) - 2 * family["x3"].fn(GRID))) < 1e-10
    assert abs(pf.at_infinity - (-2.0)) < 1e-5


def test_laplacian_of_constant(family):
    assert np.max(np.abs(laplacian(family["one"], GRID))) == 0.0


def test_laplacian_eigenvalue_regression(family):
    # first spherical harmonics: Delta x_i = -4 x_i for this metric; the
    # analytic value is cross-checked by finite differences
    for name in ("x1", "x2", "x3"):
        f = family[name]
        assert np.max(np.abs(laplacian(f, GRID) + 4.0 * f.fn(GRID))) < 1e-10
        bare = SmoothFunction(name=name, fn=f.fn)
        fd = bare.laplacian_values(GRID)
        assert np.max(np.abs(fd + 4.0 * f.fn(GRID))) < 1e-5


def test_laplacian_additivity(family):
    f, g = family["x3"], family["x1"]
    combo = SmoothFunction(name="s", fn=lambda z: f.fn(z) + g.fn(z),
                           lap=lambda z: f.lap(z) + g.lap(z))
    assert np.max(np.abs(combo.laplacian_values(GRID)
                         - f.laplacian_values(GRID) - g.laplacian_values(GRID))) < 1e-12


def test_curvature_identity():
    assert curvature_residual() <= 1e-5


def test_curvature_scales_with_metric_power():
    # squaring the metric weight doubles the curvature density
    base = curvature_residual(metric_power=1)
    doubled = curvature_residual(metric_power=2)
    assert doubled <= 2 * base + 1e-9


def test_chart_change_consistency():
    assert chart_change_residual() < 1e-12


def test_omega_density_total_mass():
    # polar integration of the density recovers 2*pi (analytic tail beyond R)
    R = 300.0
    r = np.linspace(0, R, 400001)
    vals = omega_density(r) * 2 * np.pi * r
    trap = np.trapezoid if hasattr(np, "trapezoid") else np.trapz
    mass = trap(vals, r) + 2 * np.pi / (1 + R ** 2)
    assert abs(mass - 2 * np.pi) < 1e-6
