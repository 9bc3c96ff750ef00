"""Maximization of a bivariate polynomial over ``0 <= x <= 1, 0 <= y <= 1 - x^2``.

Interior critical points come from the resultant of the two partial
derivatives (exact, in ``y``) with Sturm isolation of its roots; a Newton
sweep from a grid of seeds must find the same interior points. The four
edges are univariate problems solved exactly. A dense grid plus a Lipschitz
margin then brackets the certified maximum from both sides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np
from scipy.optimize import brentq

from .polynomial import Polynomial
from .univariate import UPoly, isolate_real_roots, maximize_on_interval

__all__ = [
    "XY",
    "H_STARLIKE",
    "OmegaDomain",
    "NumericFailureError",
    "critical_curve",
    "critical_curve_roots",
    "resultant_x",
    "CandidatePoint",
    "CriticalPointAnalysis",
    "interior_critical_points",
    "EdgeMaximum",
    "boundary_maxima",
    "GridCertificate",
    "grid_certify",
    "omega_grid",
    "OmegaMaximum",
    "maximize_over_omega",
]

XY = ("x", "y")
_x, _y = Polynomial.gens(XY)
F = Fraction

H_STARLIKE = (
    -F(9, 8) * _x**2 * _y**2 - 9 * _x**2 * _y + 9 * _x**2 + 6 * _x**3 - 9 * _x**4 + 9 * _y - 9 * _y**3
)


class NumericFailureError(ArithmeticError):
    pass


@dataclass(frozen=True)
class OmegaDomain:
    """``{(x, y): 0 <= x <= 1, 0 <= y <= 1 - x^2}``."""

    def contains(self, x, y) -> bool:
        return 0 <= x <= 1 and 0 <= y <= 1 - x * x

    def contains_interior(self, x, y, margin: float = 0.0) -> bool:
        return margin < x < 1 - margin and margin < y < 1 - x * x - margin

    def mask(self, x: np.ndarray, y: np.ndarray, tol: float = 1e-12) -> np.ndarray:
        return (x >= 0) & (x <= 1) & (y >= 0) & (y <= 1 - x * x + tol)

    def slack(self) -> Polynomial:
        return 1 - _x**2 - _y


OMEGA = OmegaDomain()


def critical_curve(y: float) -> float | None:
    """Positive branch ``x = 2 sqrt((1 - 3y^2) / (4 + y))`` of ``dh/dy = 0``."""
    if not 0 <= y <= 1:
        raise ValueError("y must lie in [0, 1]")
    disc = 1 - 3 * y * y
    # float y = 1/sqrt(3) lands a rounding error below zero
    if disc < -1e-12:
        return None
    return 2 * math.sqrt(max(disc, 0.0) / (4 + y))


def critical_curve_roots(h: Polynomial = H_STARLIKE, samples: int = 20001) -> list[tuple[float, float]]:
    """Zeros of ``y -> dh/dx(g(y), y)`` on ``[0, 1/sqrt(3)]`` as ``(x, y)`` pairs.

    Sign changes on a uniform scan are polished with Brent's method. The
    endpoint ``y = 1/sqrt(3)`` is included when ``dh/dx`` vanishes there,
    which happens for any ``h`` whose ``x``-derivative carries a factor ``x``.
    """
    hx = h.diff("x")
    top = 1 / math.sqrt(3)

    def curve(y: float) -> float:
        return 2 * math.sqrt(max(1 - 3 * y * y, 0.0) / (4 + y))

    def along(y: float) -> float:
        return float(hx.evaluate(curve(y), y))

    ys = np.linspace(0.0, top, samples)
    vals = np.array([along(v) for v in ys])
    out: list[tuple[float, float]] = []
    for a, b, fa, fb in zip(ys, ys[1:], vals, vals[1:]):
        if fa == 0:
            out.append((curve(a), float(a)))
        elif fa * fb < 0:
            r = brentq(along, a, b, xtol=1e-15, maxiter=200)
            out.append((curve(r), float(r)))
    if abs(along(top)) < 1e-12 and not any(abs(r - top) < 1e-9 for _, r in out):
        out.append((0.0, top))
    return out


# elimination ---------------------------------------------------------------


def _in_x(p: Polynomial) -> list[UPoly]:
    """Coefficients of ``p`` as a polynomial in ``x`` over ``Q[y]``."""
    n = p.degree("x")
    rows: list[dict[int, Fraction]] = [dict() for _ in range(n + 1)]
    for (i, j), c in p.items():
        rows[i][j] = rows[i].get(j, 0) + c
    return [UPoly([r.get(k, 0) for k in range(max(r, default=-1) + 1)]) for r in rows]


def _bareiss_det(m: list[list[UPoly]]) -> UPoly:
    n = len(m)
    a = [row[:] for row in m]
    sign = 1
    prev = UPoly([1])
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return UPoly()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                q, r = divmod(num, prev)
                if not r.is_zero():
                    raise NumericFailureError("inexact division in Bareiss elimination")
                a[i][j] = q
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def resultant_x(p: Polynomial, q: Polynomial) -> UPoly:
    """``Res_x(p, q)`` as a polynomial in ``y`` (Sylvester determinant)."""
    pc, qc = _in_x(p), _in_x(q)
    m, n = len(pc) - 1, len(qc) - 1
    if m == 0 and n == 0:
        raise NumericFailureError("both polynomials are free of x; no elimination possible")
    if m == 0:
        return pc[0] ** n
    if n == 0:
        return qc[0] ** m
    size = m + n
    zero = UPoly()
    rows = []
    for i in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(pc)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(qc)):
            row[i + k] = c
        rows.append(row)
    return _bareiss_det(rows)


@dataclass(frozen=True)
class CandidatePoint:
    x: float
    y: float
    value: float
    interior: bool
    reason: str = ""

    def to_dict(self) -> dict:
        return {"x": self.x, "y": self.y, "value": self.value, "interior": self.interior, "reason": self.reason}


@dataclass
class CriticalPointAnalysis:
    interior: list[CandidatePoint]
    rejected: list[CandidatePoint]
    resultant: UPoly
    newton_points: list[tuple[float, float]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "interior": [p.to_dict() for p in self.interior],
            "rejected": [p.to_dict() for p in self.rejected],
            "resultant_degree": self.resultant.degree,
            "newton_interior_points": [list(p) for p in self.newton_points],
        }


def _newton(grad, hess, x: float, y: float, iters: int = 60) -> tuple[float, float, bool]:
    for _ in range(iters):
        g = np.array(grad(x, y))
        if np.max(np.abs(g)) < 1e-13:
            return x, y, True
        H = np.array(hess(x, y))
        try:
            step = np.linalg.solve(H, g)
        except np.linalg.LinAlgError:
            return x, y, False
        x, y = float(x - step[0]), float(y - step[1])
        if not (np.isfinite(x) and np.isfinite(y)) or abs(x) > 10 or abs(y) > 10:
            return x, y, False
    g = np.array(grad(x, y))
    return x, y, bool(np.max(np.abs(g)) < 1e-10)


def _snap(v: float, eps: float = 1e-12) -> float:
    for target in (0.0, 1.0):
        if abs(v - target) < eps:
            return target
    return v


def _reason(x: float, y: float) -> str:
    if x <= 0 or x >= 1:
        return f"x = {x:.6g} is not strictly inside (0, 1)"
    if y <= 0:
        return f"y = {y:.6g} is not positive"
    return f"y = {y:.6g} > 1 - x^2 = {1 - x * x:.6g}" if y >= 1 - x * x else "on the boundary"


def interior_critical_points(
    h: Polynomial, domain: OmegaDomain = OMEGA, tol: float = 1e-12, seeds: int = 30
) -> CriticalPointAnalysis:
    """Critical points of ``h`` strictly inside ``domain``.

    Candidates with ``(x, y)`` in the unit box that fail strict interior
    membership are returned in ``rejected`` with the violated constraint.
    """
    hx, hy = h.diff("x"), h.diff("y")
    hxx, hxy, hyy = hx.diff("x"), hx.diff("y"), hy.diff("y")
    res = resultant_x(hx, hy)
    if res.is_zero():
        raise NumericFailureError("partial derivatives share a factor; critical set is not finite")

    def grad(x, y):
        return float(hx.evaluate(x, y)), float(hy.evaluate(x, y))

    def hess(x, y):
        b = float(hxy.evaluate(x, y))
        return [[float(hxx.evaluate(x, y)), b], [b, float(hyy.evaluate(x, y))]]

    found: list[tuple[float, float]] = []
    for root in isolate_real_roots(res, 0, 1, tol) if res.degree > 0 else []:
        ys = float(root.exact) if root.exact is not None else root.value
        xs = _x_candidates(hx, hy, ys)
        for xc in xs:
            xp, yp, ok = _newton(grad, hess, xc, ys)
            xp, yp = _snap(float(xp)), _snap(float(yp))
            if not ok:
                raise NumericFailureError(f"Newton polish failed near ({xc}, {ys}) on bracket [{root.lo}, {root.hi}]")
            if -tol <= xp <= 1 + tol and not any(abs(xp - a) < 1e-9 and abs(yp - b) < 1e-9 for a, b in found):
                found.append((xp, yp))

    interior, rejected = [], []
    for x, y in found:
        value = float(h.evaluate(x, y))
        if domain.contains_interior(x, y, margin=tol):
            interior.append(CandidatePoint(x, y, value, True))
        else:
            rejected.append(CandidatePoint(x, y, value, False, _reason(x, y)))

    # independent sweep: Newton from seeds spread over the domain
    newton: list[tuple[float, float]] = []
    grid = np.linspace(0.0, 1.0, seeds + 2)[1:-1]
    for sx in grid:
        for sy in grid:
            if not domain.contains_interior(sx, sy):
                continue
            x, y, ok = _newton(grad, hess, float(sx), float(sy))
            if ok and domain.contains_interior(x, y, margin=tol):
                if not any(abs(x - a) < 1e-8 and abs(y - b) < 1e-8 for a, b in newton):
                    newton.append((x, y))
    elim = [(p.x, p.y) for p in interior]
    for a, b in newton:
        if not any(abs(a - u) < 1e-7 and abs(b - v) < 1e-7 for u, v in elim):
            raise NumericFailureError(f"Newton sweep found ({a}, {b}) missed by elimination")
    for u, v in elim:
        if not any(abs(a - u) < 1e-7 and abs(b - v) < 1e-7 for a, b in newton):
            raise NumericFailureError(f"elimination point ({u}, {v}) not reproduced by the Newton sweep")
    return CriticalPointAnalysis(interior, rejected, res, newton)


def _y_slice(p: Polynomial, y: float) -> dict[int, float]:
    out: dict[int, float] = {}
    for (i, j), c in p.items():
        out[i] = out.get(i, 0.0) + float(c) * y**j
    return out


def _x_candidates(hx: Polynomial, hy: Polynomial, y: float) -> list[float]:
    """Real ``x`` in a neighbourhood of ``[0, 1]`` where both partials vanish at this ``y``."""
    cands: list[float] = []
    for p in (hy, hx):
        coeffs = _y_slice(p, y)
        deg = max((k for k, v in coeffs.items() if abs(v) > 1e-14), default=-1)
        if deg < 1:
            continue
        roots = np.roots([coeffs.get(k, 0.0) for k in range(deg, -1, -1)])
        for r in roots:
            if abs(r.imag) < 1e-6 and -1e-6 <= r.real <= 1 + 1e-6:
                cands.append(float(r.real))
    scale = 1 + sum(abs(float(c)) for _, c in hx.items()) + sum(abs(float(c)) for _, c in hy.items())
    keep = []
    for x in cands:
        if abs(float(hx.evaluate(x, y))) < 1e-6 * scale and abs(float(hy.evaluate(x, y))) < 1e-6 * scale:
            if not any(abs(x - k) < 1e-9 for k in keep):
                keep.append(x)
    return keep


# boundary -------------------------------------------------------------------


@dataclass(frozen=True)
class EdgeMaximum:
    edge: str
    argmax: tuple[float, float]
    value: float
    restriction: str
    candidates: tuple[tuple[float, float], ...]

    def to_dict(self) -> dict:
        return {
            "edge": self.edge,
            "argmax": list(self.argmax),
            "value": self.value,
            "restriction": self.restriction,
            "candidates": [list(c) for c in self.candidates],
        }


def _restrict(h: Polynomial, var: str, value: Any) -> UPoly:
    p = h.substitute(var, value)
    other = 1 if var == "x" else 0
    return UPoly.from_polynomial(Polynomial({(e[other],): c for e, c in p.items()}, (XY[other],)))


def boundary_maxima(h: Polynomial, domain: OmegaDomain = OMEGA, tol: float = 1e-12) -> list[EdgeMaximum]:
    """Maxima of ``h`` on ``x = 0``, ``x = 1``, ``y = 0`` and ``y = 1 - x^2``.

    Corners are endpoints of the edge intervals, so they are always among
    the candidates. On the domain the edge ``x = 1`` is the single point
    ``(1, 0)``.
    """
    out = []
    edges = [
        ("x=0", "x", 0, (0, 1)),
        ("x=1", "x", 1, (0, 0)),
        ("y=0", "y", 0, (0, 1)),
    ]
    for name, var, value, (lo, hi) in edges:
        r = _restrict(h, var, value)
        arg, val, cands = maximize_on_interval(r, lo, hi, tol)
        point = (float(value), arg) if var == "x" else (arg, float(value))
        out.append(EdgeMaximum(name, point, float(val), r.format("y" if var == "x" else "x"), tuple(cands)))
    r = _restrict(h, "y", 1 - _x**2)
    arg, val, cands = maximize_on_interval(r, 0, 1, tol)
    out.append(EdgeMaximum("y=1-x^2", (arg, 1 - arg * arg), float(val), r.format("x"), tuple(cands)))
    return out


# grid certificate -----------------------------------------------------------


def omega_grid(resolution: int, domain: OmegaDomain = OMEGA) -> tuple[np.ndarray, np.ndarray]:
    """Row-major (x outer) grid points of ``[0, 1]^2`` lying in the domain."""
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    t = np.linspace(0.0, 1.0, resolution)
    X, Y = np.meshgrid(t, t, indexing="ij")
    keep = domain.mask(X, Y)
    return X[keep], Y[keep]


def lipschitz_constant(h: Polynomial) -> float:
    """Bound on ``|grad h|`` over the unit box: every monomial is at most 1 there."""
    lx = sum(abs(float(c)) for _, c in h.diff("x").items())
    ly = sum(abs(float(c)) for _, c in h.diff("y").items())
    return math.hypot(lx, ly)


@dataclass(frozen=True)
class GridCertificate:
    resolution: int
    points: int
    grid_max: float
    argmax: tuple[float, float]
    lipschitz: float
    slack: float
    certified_max: float
    ok: bool

    def to_dict(self) -> dict:
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.__dict__.items()}


def grid_certify(h: Polynomial, certified_max: float, resolution: int = 2000, domain: OmegaDomain = OMEGA) -> GridCertificate:
    """Check ``grid max <= certified_max <= grid max + slack``.

    Any point ``(x, y)`` of the domain has the grid point obtained by rounding
    both coordinates down inside the domain too (lowering ``x`` only relaxes
    ``y <= 1 - x^2``), at distance at most ``sqrt(2) * step``; hence the
    slack ``L * sqrt(2) * step``.
    """
    X, Y = omega_grid(resolution, domain)
    vals = h.evaluate(X, Y)
    i = int(np.argmax(vals))
    step = 1.0 / (resolution - 1)
    lip = lipschitz_constant(h)
    slack = lip * math.sqrt(2) * step
    gmax = float(vals[i])
    ok = gmax <= certified_max + 1e-12 and certified_max <= gmax + slack
    return GridCertificate(resolution, int(X.size), gmax, (float(X[i]), float(Y[i])), lip, slack, certified_max, ok)


@dataclass
class OmegaMaximum:
    value: float
    argmax: tuple[float, float]
    critical: CriticalPointAnalysis
    edges: list[EdgeMaximum]
    grid: GridCertificate | None

    def to_dict(self) -> dict:
        return {
            "certified_max": self.value,
            "argmax": list(self.argmax),
            "interior": self.critical.to_dict(),
            "boundary": [e.to_dict() for e in self.edges],
            "grid": None if self.grid is None else self.grid.to_dict(),
        }


def maximize_over_omega(h: Polynomial, resolution: int = 2000, domain: OmegaDomain = OMEGA) -> OmegaMaximum:
    crit = interior_critical_points(h, domain)
    edges = boundary_maxima(h, domain)
    cands = [(p.value, (p.x, p.y)) for p in crit.interior] + [(e.value, e.argmax) for e in edges]
    value, arg = max(cands, key=lambda t: t[0])
    grid = grid_certify(h, value, resolution, domain) if resolution else None
    return OmegaMaximum(value, arg, crit, edges, grid)
