"""Semiclassical diagnostics: norm saturation, the commutator/Poisson
(Dirac) residual, the product residual, and the antisymmetrized first-order
star-product check, each reported per level with a log-log slope fit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chart import SmoothFunction, poisson_function
from .operators import op_norm, toeplitz
from .quadrature import QuadratureRule, build_quadrature
from .sections import SectionBasis


def doubling_levels(m_min: int, m_max: int) -> list[int]:
    """m_min, 2*m_min, ... capped so the last entry is m_max."""
    if m_min < 1 or m_max < m_min:
        raise ValueError("need 1 <= m_min <= m_max")
    levels = []
    m = m_min
    while m < m_max:
        levels.append(m)
        m *= 2
    levels.append(m_max)
    return levels


def fit_loglog_slope(ms, values) -> float:
    """Least-squares slope of log(value) against log(m)."""
    x = np.log(np.asarray(ms, dtype=float))
    y = np.log(np.asarray(values, dtype=float))
    return float(np.polyfit(x, y, 1)[0])


@dataclass(frozen=True)
class ConvergenceTable:
    check: str
    f_name: str
    g_name: str | None
    levels: tuple
    values: tuple
    slope: float | None

    def rows(self):
        return list(zip(self.levels, self.values))


def _shared_quad(levels, quad):
    return quad if quad is not None else build_quadrature(max(levels))


def norm_asymptotics(f: SmoothFunction, m_list,
                     quad: QuadratureRule | None = None) -> dict:
    """Per-level operator norms of T_f against the sup norm of f.

    Returns rows (m, norm, gap) with gap = sup|f| - norm, plus the log-log
    slope of the gap (the saturation rate of the norm from below).
    """
    quad = _shared_quad(m_list, quad)
    sup = f.sup_norm()
    rows = []
    for m in m_list:
        nrm = op_norm(toeplitz(f, m, quad=quad))
        rows.append((m, nrm, sup - nrm))
    gaps = [g for (_, _, g) in rows]
    slope = fit_loglog_slope(m_list, gaps) if all(g > 0 for g in gaps) else None
    return {"sup_norm": sup, "rows": rows, "gap_slope": slope}


def dirac_residual(f: SmoothFunction, g: SmoothFunction, m: int,
                   quad: QuadratureRule | None = None,
                   basis: SectionBasis | None = None) -> float:
    """|| m i [T_f, T_g] - T_{{f,g}} || at level m."""
    b = basis if basis is not None else SectionBasis.build(m, _shared_quad([m], quad))
    tf = toeplitz(f, m, basis=b)
    tg = toeplitz(g, m, basis=b)
    tb = toeplitz(poisson_function(f, g), m, basis=b)
    comm = tf @ tg - tg @ tf
    return op_norm(m * 1j * comm - tb)


def product_residual(f: SmoothFunction, g: SmoothFunction, m: int,
                     quad: QuadratureRule | None = None,
                     basis: SectionBasis | None = None) -> float:
    """|| T_f T_g - T_{f g} || at level m."""
    b = basis if basis is not None else SectionBasis.build(m, _shared_quad([m], quad))
    tf = toeplitz(f, m, basis=b)
    tg = toeplitz(g, m, basis=b)
    fg = SmoothFunction(name=f"{f.name}*{g.name}",
                        fn=lambda z: f(z) * g(z),
                        at_infinity=f.at_infinity * g.at_infinity)
    tfg = toeplitz(fg, m, basis=b)
    return op_norm(tf @ tg - tfg)


def star_c1_check(f: SmoothFunction, g: SmoothFunction, m_list,
                  quad: QuadratureRule | None = None) -> dict:
    """First-order structure of the induced star product, without knowing
    the first coefficient itself.

    Per level, form M1 = m (T_f T_g - T_{fg}) and its (f,g)-swap; the
    difference is m [T_f, T_g] and must approach T_{-i{f,g}}.  The zeroth
    order is checked alongside via ||T_f T_g - T_{fg}|| -> 0.
    """
    quad = _shared_quad(m_list, quad)
    rows = []
    for m in m_list:
        b = SectionBasis.build(m, quad)
        tf = toeplitz(f, m, basis=b)
        tg = toeplitz(g, m, basis=b)
        fg = SmoothFunction(name="fg", fn=lambda z: f(z) * g(z))
        gf = SmoothFunction(name="gf", fn=lambda z: g(z) * f(z))
        m1 = m * (tf @ tg - toeplitz(fg, m, basis=b))
        m1_swap = m * (tg @ tf - toeplitz(gf, m, basis=b))
        t_bracket = toeplitz(poisson_function(f, g), m, basis=b)
        antisym = op_norm((m1 - m1_swap) - (-1j) * t_bracket)
        c0 = op_norm(tf @ tg - toeplitz(fg, m, basis=b))
        rows.append((m, antisym, c0))
    antis = [a for (_, a, _) in rows]
    slope = fit_loglog_slope(m_list, antis) if all(a > 0 for a in antis) else None
    return {"rows": rows, "antisym_slope": slope}


def dirac_table(f, g, m_list, quad=None) -> ConvergenceTable:
    quad = _shared_quad(m_list, quad)
    vals = tuple(dirac_residual(f, g, m, quad=quad) for m in m_list)
    slope = fit_loglog_slope(m_list, vals) if all(v > 0 for v in vals) else None
    return ConvergenceTable("dirac", f.name, g.name, tuple(m_list), vals, slope)


def product_table(f, g, m_list, quad=None) -> ConvergenceTable:
    quad = _shared_quad(m_list, quad)
    vals = tuple(product_residual(f, g, m, quad=quad) for m in m_list)
    slope = fit_loglog_slope(m_list, vals) if all(v > 0 for v in vals) else None
    return ConvergenceTable("product", f.name, g.name, tuple(m_list), vals, slope)
