import math
from fractions import Fraction as F

import numpy as np
import pytest

from hankel3.optimize import (
    H_STARLIKE,
    OMEGA,
    XY,
    NumericFailureError,
    boundary_maxima,
    critical_curve,
    critical_curve_roots,
    grid_certify,
    interior_critical_points,
    lipschitz_constant,
    maximize_over_omega,
    omega_grid,
)
from hankel3.polynomial import Polynomial

x, y = Polynomial.gens(XY)
H_MAX = 6.003764890074215


def test_h_coefficients():
    expected = -F(9, 8) * x**2 * y**2 - 9 * x**2 * y + 9 * x**2 + 6 * x**3 - 9 * x**4 + 9 * y - 9 * y**3
    assert H_STARLIKE == expected


def test_h_y_derivative_factorization():
    assert H_STARLIKE.diff("y") == -F(9, 4) * (x**2 * (y + 4) + 12 * y**2 - 4)


def test_parabolic_edge_restriction():
    r = H_STARLIKE.substitute("y", 1 - x**2)
    assert r == F(3, 8) * x**2 * (21 * x**4 - 66 * x**2 + 16 * x + 45)
    # positive leading factor; the root set is what matters for the maximum
    assert r.diff("x") == F(9, 4) * x * (x - 1) * (21 * x**3 + 21 * x**2 - 23 * x - 15)


@pytest.mark.parametrize(
    "yv, expected",
    [(1 / math.sqrt(3), 0.0), (0.0, 1.0), (0.1541, 0.94567)],
)
def test_critical_curve(yv, expected):
    assert critical_curve(yv) == pytest.approx(expected, abs=5e-5)


def test_critical_curve_absent_and_domain():
    assert critical_curve(0.9) is None
    with pytest.raises(ValueError):
        critical_curve(1.5)


def test_curve_roots():
    roots = critical_curve_roots()
    positive = [(a, b) for a, b in roots if b > 0]
    assert len(positive) == 2
    (x1, y1), (x2, y2) = positive
    assert abs(y1 - 0.1541) < 1e-4 and abs(x1 - 0.94567) < 1e-5
    assert y1 > 1 - x1**2 and abs(1 - x1**2 - 0.1057) < 1e-4
    assert abs(y2 - 1 / math.sqrt(3)) < 1e-9 and x2 == 0


def test_no_interior_critical_points():
    res = interior_critical_points(H_STARLIKE)
    assert res.interior == []
    assert res.newton_points == []
    match = [p for p in res.rejected if abs(p.x - 0.94567) < 1e-5]
    assert len(match) == 1
    p = match[0]
    assert abs(p.y - 0.1541) < 1e-4
    assert p.reason.startswith("y = 0.154106 > 1 - x^2 = 0.1057")


def test_paraboloid_has_interior_maximum():
    h = -((x - F(1, 2)) ** 2) - (y - F(1, 4)) ** 2
    res = interior_critical_points(h)
    assert len(res.interior) == 1
    p = res.interior[0]
    assert (p.x, p.y) == pytest.approx((0.5, 0.25), abs=1e-12)
    assert p.value == pytest.approx(0.0, abs=1e-15)
    assert res.newton_points


def test_shared_factor_is_an_error():
    with pytest.raises(NumericFailureError):
        interior_critical_points((x + y) ** 2)


def test_boundary_maxima():
    edges = {e.edge: e for e in boundary_maxima(H_STARLIKE)}
    assert edges["x=0"].value == pytest.approx(2 * math.sqrt(3), abs=1e-12)
    assert edges["x=0"].argmax[1] == pytest.approx(1 / math.sqrt(3), abs=1e-12)
    assert edges["x=1"].value == 6 and edges["x=1"].argmax == (1.0, 0.0)
    assert edges["y=0"].value == 6 and edges["y=0"].argmax == (1.0, 0.0)
    par = edges["y=1-x^2"]
    assert par.value == pytest.approx(6.00376, abs=1e-4)
    assert par.argmax[0] == pytest.approx(0.948542, abs=1e-5)


def test_corners_are_candidates():
    edges = {e.edge: e for e in boundary_maxima(H_STARLIKE)}
    pts = {c[0] for c in edges["y=1-x^2"].candidates}
    assert {0.0, 1.0} <= pts


def test_grid_is_row_major_and_inside():
    X, Y = omega_grid(3)
    assert list(zip(X, Y)) == [(0, 0), (0, 0.5), (0, 1), (0.5, 0), (0.5, 0.5), (1, 0)]
    X, Y = omega_grid(301)
    assert np.all(Y <= 1 - X**2 + 1e-12)
    with pytest.raises(ValueError):
        omega_grid(1)


def test_grid_certificate_at_full_resolution():
    cert = grid_certify(H_STARLIKE, H_MAX, 2000)
    assert cert.ok
    assert cert.grid_max <= H_MAX + 1e-12
    assert H_MAX <= cert.grid_max + cert.slack


def test_grid_certificate_rejects_wrong_claim():
    assert not grid_certify(H_STARLIKE, 5.9, 200).ok
    assert not grid_certify(H_STARLIKE, 7.0, 200).ok


def test_lipschitz_bounds_sampled_gradients():
    lip = lipschitz_constant(H_STARLIKE)
    rng = np.random.default_rng(0)
    X, Y = rng.random(2000), rng.random(2000)
    gx = H_STARLIKE.diff("x").evaluate(X, Y)
    gy = H_STARLIKE.diff("y").evaluate(X, Y)
    assert np.max(np.hypot(gx, gy)) <= lip


def test_global_maximum():
    m = maximize_over_omega(H_STARLIKE)
    assert m.value == pytest.approx(H_MAX, abs=1e-12)
    assert m.argmax[0] == pytest.approx(0.9485418861845574, abs=1e-12)
    assert OMEGA.contains(*m.argmax) or abs(m.argmax[1] - (1 - m.argmax[0] ** 2)) < 1e-15
