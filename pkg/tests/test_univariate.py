import math
from fractions import Fraction as F

import pytest

from hankel3.univariate import UPoly, certify_nonnegative, count_roots, isolate_real_roots, maximize_on_interval


def roots(p, lo, hi):
    return [r.value for r in isolate_real_roots(p, lo, hi)]


def test_parabolic_edge_root():
    r = roots(UPoly([-15, -23, 21, 21]), 0, 1)
    assert len(r) == 1
    assert abs(r[0] - 0.948542) < 1e-6


def test_sqrt_two():
    (r,) = isolate_real_roots(UPoly([-2, 0, 1]), 0, 2)
    assert abs(r.value - math.sqrt(2)) < 1e-12
    assert r.hi - r.lo <= F(1, 10**12)
    assert r.exact is None


def test_inverse_sqrt_three():
    assert roots(UPoly([2, 0, -6]), 0, 1) == pytest.approx([1 / math.sqrt(3)], abs=1e-12)


def test_degenerate_interval():
    with pytest.raises(ValueError):
        isolate_real_roots(UPoly([1, 1]), 1, 1)


def test_zero_polynomial():
    with pytest.raises(ValueError):
        isolate_real_roots(UPoly([]), 0, 1)


def test_rational_roots_hit_exactly_and_endpoints_included():
    p = UPoly([0, -1, 1]) * UPoly([-1, 2])  # x (x - 1) (2x - 1)
    rs = isolate_real_roots(p, 0, 1)
    assert [r.exact for r in rs] == [0, F(1, 2), 1]


def test_repeated_roots_reported_once():
    p = UPoly([F(-1, 3), 1]) ** 3
    assert roots(p, 0, 1) == pytest.approx([1 / 3])


def test_sturm_count():
    p = UPoly([-1, 0, 1])
    assert count_roots(p, F(-2), F(2)) == 2
    assert count_roots(p, F(-1), F(1)) == 1  # half-open (lo, hi]


def test_maximize_cubic():
    arg, val, _ = maximize_on_interval(UPoly([F(1, 4), F(1, 2), 0, F(-1, 2)]), 0, 1)
    assert abs(arg - 1 / math.sqrt(3)) < 1e-12
    assert abs(val - (0.25 + 1 / (3 * math.sqrt(3)))) < 1e-12


def test_maximize_prefers_endpoint():
    arg, val, _ = maximize_on_interval(UPoly([0, 1]), 0, 1)
    assert (arg, val) == (1.0, 1.0)


@pytest.mark.parametrize("b", [F(17, 27), F(11, 9)])
def test_negative_discriminant_certificate(b):
    cert = certify_nonnegative(UPoly([1, -b, 1]))
    assert cert.nonnegative and cert.strictly_positive
    assert cert.method == "discriminant"
    assert F(cert.discriminant) == b * b - 4


def test_sturm_certificate_linear():
    cert = certify_nonnegative(UPoly([1, F(-15, 32)]), 0, 1, "y")
    assert cert.nonnegative and cert.method == "sturm"


def test_certificate_detects_dip():
    # positive at both ends, negative in between
    cert = certify_nonnegative(UPoly([F(1, 10), -1, 1]))
    assert not cert.nonnegative


def test_touching_root_is_nonnegative_but_not_strict():
    cert = certify_nonnegative(UPoly([F(1, 4), -1, 1]))
    assert cert.nonnegative and not cert.strictly_positive
