"""Projective and affine geometry over exact coordinates.

Varieties are given by homogeneous generator lists; singularity verdicts are
rank conditions on the Jacobi matrix, computed exactly (fraction-free
elimination) for exact points and by SVD thresholding for floating ones.
All verdicts are relative to the supplied presentation: the toolkit does not
certify that the generators generate the full vanishing ideal.
"""

from __future__ import annotations

import enum
import json
import re as _re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .gaussrat import GaussianRational, exact_rank, is_exact_scalar
from .poly import Polynomial, format_polynomial

#: singular values below this relative threshold count as zero (float rank)
FLOAT_RANK_RTOL = 1e-9

#: default scale-invariant membership tolerance for floating points
MEMBERSHIP_TOL = 1e-8


class PointNotOnVarietyError(ValueError):
    pass


class ProjPoint:
    """Point of P^n given by one homogeneous coordinate representative.

    Coordinates may be exact (int/Fraction/GaussianRational) or complex
    floats; exact and floating points follow the exact resp. numerical
    code paths throughout the module.
    """

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(coords)
        if not coords:
            raise ValueError("empty coordinate tuple")
        if all(_scalar_is_zero(c) for c in coords):
            raise ValueError("projective point needs a nonzero coordinate")
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, *_):
        raise AttributeError("ProjPoint is immutable")

    def __len__(self):
        return len(self.coords)

    @property
    def is_exact(self) -> bool:
        return all(is_exact_scalar(c) for c in self.coords)

    def to_complex(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coords])

    def norm(self) -> float:
        return float(np.linalg.norm(self.to_complex()))

    def proportional_to(self, other: "ProjPoint", tol: float = 1e-10) -> bool:
        """Projective equality: all 2x2 minors a_i b_j - a_j b_i vanish."""
        a, b = self.to_complex(), other.to_complex()
        if len(a) != len(b):
            return False
        minors = np.outer(a, b) - np.outer(b, a)
        scale = np.linalg.norm(a) * np.linalg.norm(b)
        return bool(np.max(np.abs(minors)) <= tol * scale)

    def __repr__(self):
        return f"ProjPoint({format_point(self)})"


def _scalar_is_zero(c):
    if is_exact_scalar(c):
        return GaussianRational.of(c) == 0 if isinstance(c, GaussianRational) else c == 0
    return complex(c) == 0


@dataclass(frozen=True)
class VarietyPresentation:
    """Zero set of finitely many homogeneous polynomials in P^n.

    Zero generators are accepted but dropped (with a warning flag) so they
    cannot distort rank or membership logic.
    """

    generators: tuple
    claimed_dim: int | None = None
    dropped_zero_generators: bool = field(default=False, compare=False)

    def __init__(self, generators, claimed_dim=None):
        gens = list(generators)
        if not gens:
            raise ValueError("need at least one generator")
        nvars = gens[0].nvars
        kept = []
        dropped = False
        for g in gens:
            if g.nvars != nvars:
                raise ValueError("generators over different variable counts")
            if g.is_zero:
                dropped = True
                continue
            if not g.is_homogeneous():
                raise ValueError(f"generator is not homogeneous: {g}")
            kept.append(g)
        if dropped:
            warnings.warn("zero generator dropped from variety presentation")
        if not kept:
            raise ValueError("all generators were zero")
        object.__setattr__(self, "generators", tuple(kept))
        object.__setattr__(self, "claimed_dim", claimed_dim)
        object.__setattr__(self, "dropped_zero_generators", dropped)

    @property
    def nvars(self) -> int:
        return self.generators[0].nvars

    @property
    def ambient_dim(self) -> int:
        """n for a variety sitting in P^n."""
        return self.nvars - 1


@dataclass(frozen=True)
class JacobiMatrix:
    """Formal matrix of partial derivatives d f_l / d X_i."""

    rows: tuple  # tuple of tuples of Polynomial

    def shape(self):
        return (len(self.rows), len(self.rows[0]))

    def evaluate(self, coords):
        return [[p.evaluate(coords) for p in row] for row in self.rows]


def evaluate(f: Polynomial, p: ProjPoint):
    """Value of f at the given representative.

    Only a zero value is representative-independent; use
    :func:`is_on_variety` for projective membership.
    """
    if f.nvars != len(p):
        raise ValueError(f"polynomial in {f.nvars} variables vs point in {len(p)}")
    return f.evaluate(p.coords)


def is_on_variety(V: VarietyPresentation, p: ProjPoint, tol: float = 0.0) -> bool:
    """Scale-invariant membership test |f(p)| <= tol * ||p||^deg(f).

    With exact coordinates and tol = 0 the test is exact.
    """
    if p.is_exact and tol == 0:
        return all(_exact_is_zero(evaluate(g, p)) for g in V.generators)
    norm = p.norm()
    vec = p.to_complex()
    for g in V.generators:
        val = g.evaluate(vec)
        if abs(val) > tol * norm ** g.degree():
            return False
    return True


def _exact_is_zero(v) -> bool:
    return GaussianRational.of(v) == GaussianRational(0)


def jacobian(V: VarietyPresentation) -> JacobiMatrix:
    rows = tuple(tuple(g.partial(i) for i in range(V.nvars)) for g in V.generators)
    return JacobiMatrix(rows)


def _exact_matrix_rank(values) -> int:
    return exact_rank(values)


def _float_matrix_rank(values, rtol: float = FLOAT_RANK_RTOL) -> int:
    a = np.array([[complex(v) for v in row] for row in values])
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def rank_at(V: VarietyPresentation, p: ProjPoint,
            membership_tol: float = MEMBERSHIP_TOL) -> int:
    """Rank of the Jacobi matrix at a point of the variety."""
    tol = 0.0 if p.is_exact else membership_tol
    if not is_on_variety(V, p, tol):
        raise PointNotOnVarietyError(f"{format_point(p)} is not on the variety")
    values = jacobian(V).evaluate(p.coords)
    if p.is_exact:
        return _exact_matrix_rank(values)
    return _float_matrix_rank(values)


def is_singular_point(V: VarietyPresentation, p: ProjPoint,
                      r: int | None = None) -> bool:
    """Rank test: singular iff rank J(p) < n - r for an r-dimensional variety.

    r defaults to the presentation's claimed_dim and must be supplied one
    way or the other; the verdict is relative to the given generators.
    """
    if r is None:
        r = V.claimed_dim
    if r is None:
        raise ValueError("variety dimension r is required for the singularity test")
    return rank_at(V, p) < V.ambient_dim - r


def zariski_tangent_dim(gens, point, membership_tol: float = MEMBERSHIP_TOL) -> int:
    """Dimension of the Zariski tangent space of an affine zero set.

    gens are polynomials in n affine variables; the result is
    n - rank(Jacobian at the point), the dimension of (M/M^2)*.
    """
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        raise ValueError("need at least one nonzero generator")
    n = gens[0].nvars
    point = tuple(point)
    if len(point) != n:
        raise ValueError("point dimension mismatch")
    exact = all(is_exact_scalar(c) for c in point)
    scale = max(1.0, float(np.linalg.norm([abs(complex(c)) for c in point])))
    for g in gens:
        val = g.evaluate(point)
        on_zero = (_exact_is_zero(val) if exact
                   else abs(complex(val)) <= membership_tol * scale ** max(g.degree(), 1))
        if not on_zero:
            raise PointNotOnVarietyError("point is not a common zero")
    values = [[g.partial(i).evaluate(point) for i in range(n)] for g in gens]
    rank = _exact_matrix_rank(values) if exact else _float_matrix_rank(values)
    return n - rank


def dehomogenize(f: Polynomial, i: int) -> Polynomial:
    """Restriction of f to the affine chart X_i = 1."""
    return f.dehomogenize(i)


class CubicClass(enum.Enum):
    SMOOTH = "smooth"
    NODAL = "nodal"
    CUSPIDAL = "cuspidal"


def discriminant(g2, g3):
    """g2^3 - 27*g3^2, exact when both inputs are exact."""
    if is_exact_scalar(g2) and is_exact_scalar(g3):
        a, b = GaussianRational.of(g2), GaussianRational.of(g3)
        d = a * a * a - 27 * b * b
        return d if d.im != 0 else d.re
    g2, g3 = complex(g2), complex(g3)
    return g2 ** 3 - 27 * g3 ** 2


def cubic_classify(g2, g3, tol: float = 1e-12) -> CubicClass:
    """Classify Y^2 Z = 4 X^3 - g2 X Z^2 - g3 Z^3 by its singularity type.

    Smooth iff the discriminant g2^3 - 27 g3^2 is nonzero.  In the
    degenerate case the right-hand cubic 4x^3 - g2 x - g3 has a repeated
    root; the root is triple exactly when g2 = g3 = 0, which separates the
    cusp (one tangent direction) from the node (two).
    """
    exact = is_exact_scalar(g2) and is_exact_scalar(g3)
    d = discriminant(g2, g3)
    if exact:
        if not _exact_is_zero(d):
            return CubicClass.SMOOTH
        if _exact_is_zero(GaussianRational.of(g2)) and _exact_is_zero(GaussianRational.of(g3)):
            return CubicClass.CUSPIDAL
        return CubicClass.NODAL
    scale = max(abs(complex(g2)) ** 3, 27 * abs(complex(g3)) ** 2, 1.0)
    if abs(complex(d)) > tol * scale:
        return CubicClass.SMOOTH
    if abs(complex(g2)) <= tol and abs(complex(g3)) <= tol:
        return CubicClass.CUSPIDAL
    return CubicClass.NODAL


def weierstrass_cubic(g2, g3) -> Polynomial:
    """The plane cubic X1^2 X2 - 4 X0^3 + g2 X0 X2^2 + g3 X2^3 in P^2.

    Floating g2, g3 are lifted exactly (every float is a binary rational),
    so the polynomial layer stays exact-coefficient.
    """
    return Polynomial(3, {
        (0, 2, 1): 1,
        (3, 0, 0): -4,
        (1, 0, 2): _exactify(g2),
        (0, 0, 3): _exactify(g3),
    })


def _exactify(c):
    if is_exact_scalar(c):
        return c
    z = complex(c)
    if z.imag == 0.0:
        return Fraction(z.real)
    return GaussianRational(Fraction(z.real), Fraction(z.imag))


def weierstrass_cubic_singular_points(g2, g3):
    """Exact singular locus of the cubic above, for exact g2, g3.

    Solving the partial-derivative system by hand: no solutions on Z = 0;
    on Z = 1 a singular point forces Y = 0 and either g2 = g3 = 0 with the
    point (0:0:1), or g2^3 = 27 g3^2 with the point (-3 g3 / (2 g2) : 0 : 1).
    """
    if not (is_exact_scalar(g2) and is_exact_scalar(g3)):
        raise TypeError("exact g2, g3 required")
    d = discriminant(g2, g3)
    if not _exact_is_zero(d):
        return []
    if _exact_is_zero(GaussianRational.of(g2)):
        return [ProjPoint((Fraction(0), Fraction(0), Fraction(1)))]
    x = GaussianRational.of(-3) * GaussianRational.of(g3) / (2 * GaussianRational.of(g2))
    x = x if x.im != 0 else x.re
    return [ProjPoint((x, Fraction(0), Fraction(1)))]


def veronese_square(p: ProjPoint) -> ProjPoint:
    """Degree-2 Veronese image of P^1 in P^2: (a:b) -> (a^2 : ab : b^2)."""
    if len(p) != 2:
        raise ValueError("veronese_square expects a point of P^1")
    a, b = p.coords
    if is_exact_scalar(a) and is_exact_scalar(b):
        ga, gb = GaussianRational.of(a), GaussianRational.of(b)
        coords = (ga * ga, ga * gb, gb * gb)
        coords = tuple(c if c.im != 0 else c.re for c in coords)
    else:
        a, b = complex(a), complex(b)
        coords = (a * a, a * b, b * b)
    return ProjPoint(coords)


def veronese_quadric() -> Polynomial:
    """Relation X1^2 - X0 X2 satisfied by every veronese_square image."""
    return Polynomial(3, {(0, 2, 0): 1, (1, 0, 1): -1})


# ---------------------------------------------------------------------------
# text and JSON interfaces
# ---------------------------------------------------------------------------

_POINT_ENTRY = _re.compile(r"^\s*(-?\d+(?:/\d+)?|-?\d*\.\d+(?:[eE][+-]?\d+)?)\s*$")


def format_point(p: ProjPoint) -> str:
    return "(" + " : ".join(_format_coord(c) for c in p.coords) + ")"


def _format_coord(c):
    if isinstance(c, (int, Fraction)):
        return str(c)
    if isinstance(c, GaussianRational):
        return str(c)
    z = complex(c)
    if z.imag == 0:
        return repr(z.real)
    return repr(z)


def parse_point(text: str) -> ProjPoint:
    """Parse "(a0 : a1 : ... : an)" with rational or decimal entries."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    coords = []
    for chunk in body.split(":"):
        m = _POINT_ENTRY.match(chunk)
        if not m:
            raise ValueError(f"cannot parse coordinate {chunk!r}")
        tok = m.group(1)
        if "/" in tok or ("." not in tok and "e" not in tok.lower()):
            coords.append(Fraction(tok))
        else:
            coords.append(float(tok))
    return ProjPoint(coords)


def variety_to_json(V: VarietyPresentation) -> dict:
    return {
        "generators": [format_polynomial(g) for g in V.generators],
        "dim": V.claimed_dim,
    }


def singularity_report(V: VarietyPresentation, points, r: int | None = None) -> dict:
    """JSON-ready singularity report for a list of points on V."""
    r_eff = V.claimed_dim if r is None else r
    report = dict(variety_to_json(V))
    report["dim"] = r_eff
    report["points"] = []
    report["verdicts"] = []
    for p in points:
        report["points"].append(format_point(p))
        try:
            rk = rank_at(V, p)
            report["verdicts"].append({
                "rank": rk,
                "singular": rk < V.ambient_dim - r_eff,
            })
        except PointNotOnVarietyError:
            report["verdicts"].append({"rank": None, "singular": None,
                                       "error": "not on variety"})
    return report


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)
