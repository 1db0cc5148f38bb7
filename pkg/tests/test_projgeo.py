import random
from fractions import Fraction

import numpy as np
import pytest

from projquant.gaussrat import GaussianRational
from projquant.poly import Polynomial
from projquant import projgeo
from projquant.projgeo import (
    CubicClass,
    PointNotOnVarietyError,
    ProjPoint,
    VarietyPresentation,
    cubic_classify,
    dehomogenize,
    evaluate,
    is_on_variety,
    is_singular_point,
    jacobian,
    parse_point,
    rank_at,
    singularity_report,
    veronese_quadric,
    veronese_square,
    weierstrass_cubic,
    weierstrass_cubic_singular_points,
    zariski_tangent_dim,
)

F = Fraction
X = lambda i, n=3: Polynomial.variable(n, i)


def pt(*coords):
    return ProjPoint(tuple(F(c) if isinstance(c, int) else c for c in coords))


# -- evaluation -------------------------------------------------------------

def test_evaluate_product_vanishes_at_intersection():
    f = X(0) * X(1)
    assert evaluate(f, pt(0, 0, 1)) == 0


def test_evaluate_degree_one_scaling():
    f = X(0, 3)
    lam = F(7, 3)
    assert evaluate(f, ProjPoint((lam, F(0), F(0)))) == lam * evaluate(f, pt(1, 0, 0))


def test_evaluate_cuspidal_cubic_at_point():
    # brute-force term summation fixes the value: 4 - 4 = 0
    f = X(1) ** 2 * X(2) - 4 * X(0) ** 3
    assert evaluate(f, pt(1, 2, 1)) == 0
    assert evaluate(f, pt(1, 1, 1)) == -3


def test_evaluate_dimension_mismatch():
    with pytest.raises(ValueError):
        evaluate(Polynomial.variable(2, 0), pt(1, 0, 0))


def test_float_homogeneity_scaling():
    f = 3 * X(0) ** 2 * X(1) - X(2) ** 3
    base = np.array([0.3 - 0.7j, 1.2, -0.5j])
    v0 = f.evaluate(tuple(base))
    for lam in (2.0, -0.37, 0.11 + 0.9j):
        v = f.evaluate(tuple(lam * base))
        assert abs(v - lam ** 3 * v0) <= 1e-12 * abs(v0) * abs(lam) ** 3


# -- membership -------------------------------------------------------------

def test_is_on_variety_examples():
    V = VarietyPresentation([X(0) * X(1)])
    assert is_on_variety(V, pt(0, 0, 1))
    assert not is_on_variety(VarietyPresentation([X(0, 3)]), pt(1, 0, 0))
    cubic = VarietyPresentation([X(1) ** 2 * X(2) - 4 * X(0) ** 3])
    assert is_on_variety(cubic, pt(1, 2, 1))


def test_is_on_variety_representative_independent():
    V = VarietyPresentation([X(1) ** 2 - X(0) * X(2)])
    base = np.array([1.0, 2.0, 4.0])
    for lam in (2.0, -0.3, 1e4, 1j, 0.5 - 0.1j):
        assert is_on_variety(V, ProjPoint(tuple(lam * base)), tol=1e-12)
    off = np.array([1.0, 2.0, 4.0001])
    for lam in (1.0, 1e6, 1e-6):
        assert not is_on_variety(V, ProjPoint(tuple(lam * off)), tol=1e-9)


def test_zero_generator_dropped_with_warning():
    with pytest.warns(UserWarning):
        V = VarietyPresentation([X(0), Polynomial.zero(3)])
    assert len(V.generators) == 1
    assert V.dropped_zero_generators


# -- jacobian ----------------------------------------------------------------

def test_jacobian_examples():
    assert jacobian(VarietyPresentation([X(0) * X(1)])).rows == \
        ((X(1), X(0), Polynomial.zero(3)),)
    cusp = X(1) ** 2 * X(2) - 4 * X(0) ** 3
    assert jacobian(VarietyPresentation([cusp])).rows == \
        ((-12 * X(0) ** 2, 2 * X(1) * X(2), X(1) ** 2),)
    quad = X(1) ** 2 - X(0) * X(2)
    assert jacobian(VarietyPresentation([quad])).rows == \
        ((-X(2), 2 * X(1), -X(0)),)


def test_jacobian_evaluation_commutes_with_substitution():
    # oracle: recompute each partial by independent term-by-term differentiation
    rng = random.Random(2)
    f = 3 * X(0) ** 2 * X(1) - F(5, 2) * X(1) * X(2) ** 2 + X(0) * X(1) * X(2)
    g = X(0) ** 3 + X(2) ** 3
    V = VarietyPresentation([f, g])
    J = jacobian(V)
    for _ in range(100):
        p = tuple(F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3))
        vals = J.evaluate(p)
        for l, poly in enumerate([f, g]):
            for i in range(3):
                oracle = sum(
                    c * m[i] * _mono_eval(tuple(e - (j == i) for j, e in enumerate(m)), p)
                    for m, c in poly.terms.items() if m[i] > 0)
                assert vals[l][i] == oracle


def _mono_eval(mono, p):
    v = F(1)
    for x, e in zip(p, mono):
        v *= x ** e
    return v


# -- rank and singularity ----------------------------------------------------

def test_rank_at_examples():
    assert rank_at(VarietyPresentation([X(0) * X(1)]), pt(0, 0, 1)) == 0
    cusp = VarietyPresentation([X(1) ** 2 * X(2) - 4 * X(0) ** 3])
    assert rank_at(cusp, pt(0, 0, 1)) == 0
    mixed = VarietyPresentation([X(1) ** 2 * X(2) - 4 * X(0) ** 3 + X(0) * X(2) ** 2])
    assert rank_at(mixed, pt(0, 1, 0)) == 1


def test_rank_at_requires_membership():
    with pytest.raises(PointNotOnVarietyError):
        rank_at(VarietyPresentation([X(0)]), pt(1, 1, 1))


def test_singular_points_of_classic_cubics():
    pair = VarietyPresentation([X(0) * X(1)], claimed_dim=1)
    assert is_singular_point(pair, pt(0, 0, 1))
    assert not is_singular_point(pair, pt(0, 1, 0))

    nodal = VarietyPresentation(
        [X(1) ** 2 * X(2) - 4 * X(0) ** 2 * (X(0) + X(2))], claimed_dim=1)
    assert is_singular_point(nodal, pt(0, 0, 1))
    assert not is_singular_point(nodal, pt(0, 1, 0))
    # second branch point through the node: (-1 : 0 : 1) is regular
    assert not is_singular_point(nodal, pt(-1, 0, 1))

    cuspidal = VarietyPresentation([X(1) ** 2 * X(2) - 4 * X(0) ** 3], claimed_dim=1)
    assert is_singular_point(cuspidal, pt(0, 0, 1))


def test_smooth_cubic_has_no_singular_candidates():
    for g2, g3 in [(F(4), F(0)), (F(1), F(1)), (F(-3), F(2))]:
        assert cubic_classify(g2, g3) is CubicClass.SMOOTH
        assert weierstrass_cubic_singular_points(g2, g3) == []


def test_rank_chart_consistency():
    # projective rank verdict agrees with the affine Jacobian in a chart
    f = X(1) ** 2 * X(2) - 4 * X(0) ** 2 * (X(0) + X(2))
    V = VarietyPresentation([f], claimed_dim=1)
    for p, expected in [(pt(0, 0, 1), True), (pt(-1, 0, 1), False)]:
        proj_singular = is_singular_point(V, p)
        chart = f.dehomogenize(2)
        a = (p.coords[0] / p.coords[2], p.coords[1] / p.coords[2])
        affine_dim = zariski_tangent_dim([chart], a)
        assert proj_singular == (affine_dim > 1) == expected


def test_float_rank_path():
    V = VarietyPresentation([X(1) ** 2 - X(0) * X(2)], claimed_dim=1)
    p = ProjPoint((1.0, 2.0, 4.0))
    assert rank_at(V, p) == 1
    assert not is_singular_point(V, p)


# -- Zariski tangent space ---------------------------------------------------

def _plane_cubic(a, b):
    x, y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    return y ** 2 - 4 * x * (x - a) * (x - b)


@pytest.mark.parametrize("a,b,expected", [
    (F(1), F(2), 1),   # a*b != 0: regular point, tangent line only
    (F(0), F(2), 2),   # repeated root at 0: singular, full tangent plane
    (F(3), F(0), 2),
])
def test_zariski_tangent_dim_plane_cubic(a, b, expected):
    assert zariski_tangent_dim([_plane_cubic(a, b)], (F(0), F(0))) == expected


def test_zariski_tangent_dim_linear_ideal():
    x, y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    assert zariski_tangent_dim([x, y], (F(0), F(0))) == 0


def test_zariski_tangent_requires_zero():
    with pytest.raises(PointNotOnVarietyError):
        zariski_tangent_dim([_plane_cubic(F(1), F(2))], (F(1), F(1)))


# -- dehomogenize --------------------------------------------------------------

def test_dehomogenize_examples():
    cubic = X(1) ** 2 * X(2) - 4 * X(0) ** 3
    assert dehomogenize(cubic, 2) == Polynomial(2, {(0, 2): 1, (3, 0): -4})
    assert dehomogenize(X(0, 3), 0) == Polynomial.constant(2, 1)
    quad = X(1) ** 2 - X(0) * X(2)
    assert dehomogenize(quad, 0) == Polynomial(2, {(2, 0): 1, (0, 1): -1})


# -- cubic classification -------------------------------------------------------

def test_cubic_classify_examples():
    assert cubic_classify(F(0), F(0)) is CubicClass.CUSPIDAL
    assert cubic_classify(F(3), F(1)) is CubicClass.NODAL
    assert cubic_classify(F(4), F(0)) is CubicClass.SMOOTH


def test_nodal_case_has_double_root():
    # oracle for (g2, g3) = (3, 1): 4x^3 - 3x - 1 factors with a double root
    roots = np.roots([4.0, 0.0, -3.0, -1.0])
    roots.sort()
    # a numerical double root splits by ~sqrt(eps); 1e-6 is the honest scale
    assert abs(roots[0] - roots[1]) < 1e-6
    assert abs(roots[0] + 0.5) < 1e-6
    assert abs(roots[2] - 1.0) < 1e-8           # the simple root stays sharp


def test_cubic_classify_float_tolerance():
    assert cubic_classify(3.0, 1.0 + 1e-15) is CubicClass.NODAL
    assert cubic_classify(1e-14, 1e-14) is CubicClass.CUSPIDAL
    assert cubic_classify(4.0, 0.0) is CubicClass.SMOOTH


def test_classification_matches_exact_singular_search():
    # smooth <=> the partial-derivative system has no solutions
    rng = random.Random(9)
    cases = [(F(0), F(0)), (F(3), F(1)), (F(4), F(0)), (F(-3), F(1)),
             (F(6, 5), F(2, 5)), (F(27), F(27))]
    for _ in range(14):
        cases.append((F(rng.randint(-8, 8)), F(rng.randint(-8, 8))))
    for g2, g3 in cases:
        pts = weierstrass_cubic_singular_points(g2, g3)
        cls = cubic_classify(g2, g3)
        assert (cls is CubicClass.SMOOTH) == (pts == [])
        V = VarietyPresentation([weierstrass_cubic(g2, g3)], claimed_dim=1)
        for p in pts:
            assert is_on_variety(V, p)
            assert is_singular_point(V, p)


# -- veronese -------------------------------------------------------------------

def test_veronese_examples():
    assert veronese_square(pt(1, 0)).coords == (F(1), F(0), F(0))
    assert veronese_square(pt(1, 1)).coords == (F(1), F(1), F(1))
    img = veronese_square(pt(2, 3))
    assert img.coords == (F(4), F(6), F(9))
    assert evaluate(veronese_quadric(), img) == 0


def test_veronese_image_always_on_quadric():
    rng = random.Random(4)
    Q = VarietyPresentation([veronese_quadric()])
    for _ in range(30):
        p = pt(F(rng.randint(-9, 9), rng.randint(1, 3)), F(rng.randint(1, 9)))
        assert is_on_variety(Q, veronese_square(p))


# -- text / JSON interfaces -------------------------------------------------------

def test_point_round_trip():
    p = parse_point("(1/2 : -3 : 5)")
    assert p.coords == (F(1, 2), F(-3), F(5))
    assert parse_point(projgeo.format_point(p)).coords == p.coords
    q = parse_point("(0.5 : 1.0 : 0.0)")
    assert isinstance(q.coords[0], float)


def test_singularity_report_shape():
    V = VarietyPresentation([X(0) * X(1)], claimed_dim=1)
    rep = singularity_report(V, [pt(0, 0, 1), pt(1, 0, 0), pt(1, 1, 1)])
    assert rep["generators"] == ["X0*X1"]
    assert rep["dim"] == 1
    assert rep["verdicts"][0] == {"rank": 0, "singular": True}
    assert rep["verdicts"][1]["singular"] is False
    assert rep["verdicts"][2]["error"] == "not on variety"
    projgeo.report_to_json(rep)  # must serialize


def test_proportional_to():
    p = ProjPoint((1.0, 2.0, -3.0))
    assert p.proportional_to(ProjPoint((2.0, 4.0, -6.0)))
    assert p.proportional_to(ProjPoint(((1 + 1j), (2 + 2j), (-3 - 3j))))
    assert not p.proportional_to(ProjPoint((1.0, 2.0, -3.0001)))
    assert not p.proportional_to(ProjPoint((1.0, 0.0, 0.0)))
    assert not p.proportional_to(ProjPoint((1.0, 2.0)))


def test_gaussian_rational_points():
    i = GaussianRational(0, 1)
    V = VarietyPresentation([X(0) ** 2 + X(1) ** 2], claimed_dim=1)
    assert is_on_variety(V, ProjPoint((GaussianRational(1), i, GaussianRational(0))))
