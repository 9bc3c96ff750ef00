from fractions import Fraction as F

import numpy as np
import pytest
import sympy as sp

from hankel3.classes import (
    CLASSES,
    MAX_DEGREE,
    ClassId,
    DerivationError,
    derive_coefficients,
    eval_grouped,
    eval_hankel3,
    get_class,
    hankel3_polynomial,
)

from reference_forms import (
    CORRECTED_EXPONENTIAL_A5,
    CORRECTED_GROUPED,
    EXPONENTIAL_RAW,
    PRINTED_COEFFICIENTS,
    PRINTED_GROUPED,
    SYMMETRIC_RAW,
)
import sympy_oracle

ALL = list(ClassId)


@pytest.mark.parametrize("cid", ALL)
def test_coefficients_match_sympy(cid):
    expected = sympy_oracle.derive(cid)
    for a, got in zip(sympy_oracle.A, derive_coefficients(cid, 5)):
        assert sp.expand(sympy_oracle.to_sympy(got) - expected[a]) == 0


@pytest.mark.parametrize("cid", ALL)
def test_hankel_matches_sympy(cid):
    got = sympy_oracle.to_sympy(hankel3_polynomial(cid).polynomial)
    assert sp.expand(got - sympy_oracle.hankel3(cid)) == 0


@pytest.mark.parametrize(
    "cid, k",
    [(c, k) for c in ALL for k in range(4) if (c, k) != (ClassId.EXPONENTIAL, 3)],
)
def test_coefficients_match_printed(cid, k):
    assert derive_coefficients(cid, 5)[k] == PRINTED_COEFFICIENTS[cid][k]


def test_exponential_a5_printed_with_swapped_coefficients():
    a5 = derive_coefficients(ClassId.EXPONENTIAL, 5)[3]
    assert a5 == CORRECTED_EXPONENTIAL_A5
    assert a5 != PRINTED_COEFFICIENTS[ClassId.EXPONENTIAL][3]


def test_partial_derivation():
    a = derive_coefficients(ClassId.EXPONENTIAL, 3)
    assert len(a) == 2
    assert a == list(PRINTED_COEFFICIENTS[ClassId.EXPONENTIAL][:2])


@pytest.mark.parametrize("up_to", [1, 6])
def test_derivation_range(up_to):
    with pytest.raises(ValueError):
        derive_coefficients(ClassId.STARLIKE, up_to)


def test_derivation_error_is_arithmetic():
    assert issubclass(DerivationError, ArithmeticError)


@pytest.mark.parametrize("key", ["starlike", "symmetric", "exponential", "lune", ClassId.LUNE])
def test_get_class(key):
    assert get_class(key) is CLASSES[ClassId(key)]


def test_unknown_class():
    with pytest.raises(KeyError):
        get_class("bogus")


@pytest.mark.parametrize("cid", [ClassId.SYMMETRIC_POINTS, ClassId.LUNE])
def test_printed_grouped_forms_expand(cid):
    assert PRINTED_GROUPED[cid] == hankel3_polynomial(cid).polynomial


@pytest.mark.parametrize("cid", [ClassId.STARLIKE, ClassId.EXPONENTIAL])
def test_printed_grouped_slips_and_their_repair(cid):
    h = hankel3_polynomial(cid).polynomial
    assert PRINTED_GROUPED[cid] != h
    assert CORRECTED_GROUPED[cid] == h


def test_raw_forms():
    assert hankel3_polynomial(ClassId.SYMMETRIC_POINTS).polynomial == SYMMETRIC_RAW
    h = hankel3_polynomial(ClassId.EXPONENTIAL).polynomial
    assert h == EXPONENTIAL_RAW
    assert h.coefficient((6, 0, 0, 0)) == F(-13, 5184)


@pytest.mark.parametrize("cid", ALL)
def test_structured_grouping_expands(cid):
    expr = hankel3_polynomial(cid)
    assert expr.grouped.expand() == expr.polynomial
    assert expr.polynomial.total_degree() <= MAX_DEGREE


@pytest.mark.parametrize(
    "cid, c",
    [
        (ClassId.STARLIKE, (0, 0, 0, 0)),
        (ClassId.STARLIKE, (1, 0, 0, 0)),
        (ClassId.SYMMETRIC_POINTS, (1, 0, 0, 0)),
    ],
)
def test_trivial_evaluations(cid, c):
    assert eval_hankel3(cid, c) == 0


def test_koebe_coefficients():
    a = [p.evaluate(1, 0, 0, 0) for p in derive_coefficients(ClassId.STARLIKE, 5)]
    assert a == [2, 3, 4, 5]


@pytest.mark.parametrize("cid", ALL)
def test_grouped_and_determinant_routes_agree(cid):
    # relative to the sum of absolute monomial contributions, the scale of rounding error
    rng = np.random.default_rng(1234)
    c = np.sqrt(rng.random((10_000, 4))) * np.exp(2j * np.pi * rng.random((10_000, 4)))
    a = eval_hankel3(cid, c)
    b = eval_grouped(cid, c)
    poly = hankel3_polynomial(cid).polynomial
    scale = sum(abs(float(q)) * np.prod([np.abs(c[:, i]) ** e for i, e in enumerate(exps)], axis=0)
                for exps, q in poly.items())
    assert np.max(np.abs(a - b) / scale) < 1e-12


def test_exact_evaluation_is_rational():
    v = eval_hankel3(ClassId.LUNE, (F(1, 2), F(1, 3), F(-1, 5), F(1, 7)))
    assert isinstance(v, F)
    assert v == eval_grouped(ClassId.LUNE, (F(1, 2), F(1, 3), F(-1, 5), F(1, 7)))
