"""The four function classes, their Taylor coefficients and H3(1).

Every class is defined by a functional relation between ``f`` and a
Schwarz function ``w``. Writing the relation as ``residual(f, w) = 0`` and
expanding in ``z``, the coefficient of ``z**k`` is affine in the unknown
``a_k`` once ``a_2 .. a_{k-1}`` are known, so the coefficients are solved
one order at a time.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .polynomial import Polynomial
from .series import TruncatedSeries, exp_series, negate_argument, sqrt1p

__all__ = [
    "C_VARS",
    "ClassId",
    "ClassSpec",
    "CLASSES",
    "get_class",
    "DerivationError",
    "SymbolicInconsistencyError",
    "derive_coefficients",
    "hankel3_from_coefficients",
    "Factor",
    "GroupedTerm",
    "GroupedForm",
    "HankelExpression",
    "hankel3_polynomial",
    "eval_hankel3",
    "eval_grouped",
    "psi_polynomial",
    "MAX_DEGREE",
]

C_VARS = ("c1", "c2", "c3", "c4")
MAX_DEGREE = 6
DERIVATION_ORDER = 5

c1, c2, c3, c4 = Polynomial.gens(C_VARS)
F = Fraction


class DerivationError(ArithmeticError):
    """Coefficient equating hit a non-invertible leading factor."""


class SymbolicInconsistencyError(ArithmeticError):
    """A grouped decomposition does not expand to the determinant polynomial."""


class ClassId(str, enum.Enum):
    STARLIKE = "starlike"
    SYMMETRIC_POINTS = "symmetric"
    EXPONENTIAL = "exponential"
    LUNE = "lune"


Relation = Callable[[TruncatedSeries, TruncatedSeries], TruncatedSeries]


def _starlike(f: TruncatedSeries, w: TruncatedSeries) -> TruncatedSeries:
    # z f'(z) (1 - w) = f (1 + w)
    return f.z_derivative() * (1 - w) - f * (1 + w)


def _symmetric(f: TruncatedSeries, w: TruncatedSeries) -> TruncatedSeries:
    # 2 z f'(z) (1 - w) = (f(z) - f(-z)) (1 + w)
    return 2 * f.z_derivative() * (1 - w) - (f - negate_argument(f)) * (1 + w)


def _exponential(f: TruncatedSeries, w: TruncatedSeries) -> TruncatedSeries:
    return f.z_derivative() - f * exp_series(w)


def _lune(f: TruncatedSeries, w: TruncatedSeries) -> TruncatedSeries:
    # sqrt(1 + w^2) keeps the principal branch since w(0) = 0
    return f.z_derivative() - f * (w + sqrt1p(w * w))


@dataclass(frozen=True)
class ClassSpec:
    id: ClassId
    symbol: str
    target: str
    relation: Relation = field(repr=False)
    relation_text: str = ""

    @property
    def name(self) -> str:
        return self.id.value


CLASSES: dict[ClassId, ClassSpec] = {
    ClassId.STARLIKE: ClassSpec(
        ClassId.STARLIKE, "S*", "(1+z)/(1-z)", _starlike,
        "z f'(z) (1 - w(z)) = f(z) (1 + w(z))",
    ),
    ClassId.SYMMETRIC_POINTS: ClassSpec(
        ClassId.SYMMETRIC_POINTS, "S*_s", "(1+z)/(1-z)", _symmetric,
        "2 z f'(z) (1 - w(z)) = (f(z) - f(-z)) (1 + w(z))",
    ),
    ClassId.EXPONENTIAL: ClassSpec(
        ClassId.EXPONENTIAL, "S*_e", "exp(z)", _exponential,
        "z f'(z) = f(z) exp(w(z))",
    ),
    ClassId.LUNE: ClassSpec(
        ClassId.LUNE, "S*_q", "z + sqrt(1+z^2)", _lune,
        "z f'(z) = f(z) (w(z) + sqrt(1 + w(z)^2))",
    ),
}


def get_class(key: "ClassId | str | ClassSpec") -> ClassSpec:
    if isinstance(key, ClassSpec):
        return key
    try:
        return CLASSES[ClassId(key)]
    except ValueError:
        raise KeyError(f"unknown class {key!r}; choose from {[c.value for c in ClassId]}") from None


def _schwarz_series(order: int) -> TruncatedSeries:
    return TruncatedSeries.from_coeffs([0, c1, c2, c3, c4], order)


@lru_cache(maxsize=None)
def _derive(class_id: ClassId, up_to: int) -> tuple[Polynomial, ...]:
    spec = CLASSES[class_id]
    order = up_to
    w = _schwarz_series(order)
    known: list[Polynomial] = []
    for k in range(2, up_to + 1):

        def residual_k(trial: Polynomial) -> Polynomial:
            f = TruncatedSeries.from_coeffs([0, 1, *known, trial], order)
            r = spec.relation(f, w)[k]
            return r if isinstance(r, Polynomial) else Polynomial.constant(r, C_VARS)

        zero = Polynomial.constant(0, C_VARS)
        beta = residual_k(zero)
        alpha = residual_k(zero + 1) - beta
        if not alpha.is_constant() or alpha.is_zero():
            raise DerivationError(
                f"{spec.name}: coefficient of a_{k} at order {k} is {alpha}, cannot solve"
            )
        a_k = -beta / alpha
        if not residual_k(a_k).is_zero():
            raise DerivationError(f"{spec.name}: order {k} is not affine in a_{k}")
        known.append(a_k)
    return tuple(known)


def derive_coefficients(spec: "ClassSpec | ClassId | str", up_to: int = 5) -> list[Polynomial]:
    """``[a_2, ..., a_up_to]`` as exact polynomials in ``c1..c4``."""
    if not 2 <= up_to <= 5:
        raise ValueError("up_to must lie in 2..5 (c1..c4 determine a_2..a_5)")
    return list(_derive(get_class(spec).id, up_to))


def hankel3_from_coefficients(a2, a3, a4, a5):
    """``a3 (a2 a4 - a3^2) - a4 (a4 - a2 a3) + a5 (a3 - a2^2)``.

    Generic in the scalar type: polynomials, numbers or numpy arrays.
    """
    return a3 * (a2 * a4 - a3 * a3) - a4 * (a4 - a2 * a3) + a5 * (a3 - a2 * a2)


# grouped decompositions ----------------------------------------------------


def psi_polynomial(mu, nu) -> Polynomial:
    """``c3 + mu c1 c2 + nu c1^3``."""
    return c3 + F(mu) * c1 * c2 + F(nu) * c1**3


@dataclass(frozen=True)
class Factor:
    """One factor of a grouped term.

    ``kind`` is ``"psi"`` for a functional ``c3 + mu c1 c2 + nu c1^3`` bounded
    by the coefficient lemma, ``"c4"`` for the bare ``c4`` bounded by the
    coefficient inequality, and ``"poly"`` for anything else.
    """

    poly: Polynomial
    power: int = 1
    kind: str = "poly"
    mu: Fraction | None = None
    nu: Fraction | None = None

    @classmethod
    def psi(cls, mu, nu, power: int = 1) -> "Factor":
        return cls(psi_polynomial(mu, nu), power, "psi", F(mu), F(nu))

    @classmethod
    def c4(cls) -> "Factor":
        return cls(c4, 1, "c4")

    def expand(self) -> Polynomial:
        return self.poly**self.power

    def label(self) -> str:
        body = self.poly.format("unicode")
        if len(self.poly) > 1:
            body = f"({body})"
        return body + (f"^{self.power}" if self.power > 1 else "")


@dataclass(frozen=True)
class GroupedTerm:
    coeff: Fraction
    factors: tuple[Factor, ...]
    tag: str = ""

    def expand(self) -> Polynomial:
        out = Polynomial.constant(self.coeff, C_VARS)
        for fac in self.factors:
            out = out * fac.expand()
        return out

    def label(self) -> str:
        return f"{self.coeff} * " + " * ".join(f.label() for f in self.factors)


@dataclass(frozen=True)
class GroupedForm:
    terms: tuple[GroupedTerm, ...]

    def expand(self) -> Polynomial:
        out = Polynomial.constant(0, C_VARS)
        for t in self.terms:
            out = out + t.expand()
        return out

    def psi_factors(self) -> list[Factor]:
        return [f for t in self.terms for f in t.factors if f.kind == "psi"]


def _mono(var: Polynomial, power: int) -> Factor:
    return Factor(var, power, "poly")


# The decompositions below are exact; each one is re-expanded and compared
# against the determinant in hankel3_polynomial.
GROUPED_FORMS: dict[ClassId, GroupedForm] = {
    ClassId.STARLIKE: GroupedForm((
        GroupedTerm(F(-8, 18), (Factor.psi(F(-5, 8), 0, power=2),), "lemma"),
        GroupedTerm(F(-63, 8 * 18), (_mono(c1, 2), _mono(c2, 2)), "monomial"),
        GroupedTerm(F(6, 18), (_mono(c1, 3), Factor.psi(F(1, 2), 0)), "lemma"),
        GroupedTerm(F(9, 18), (Factor(c2 - c1**2), Factor.c4()), "c4"),
    )),
    ClassId.SYMMETRIC_POINTS: GroupedForm((
        GroupedTerm(F(-1, 4), (Factor.psi(-1, 0, power=2),), "lemma"),
        GroupedTerm(F(2, 4), (_mono(c1, 2), _mono(c2, 2)), "monomial"),
        GroupedTerm(F(2, 4), (_mono(c2, 1), Factor.c4()), "c4"),
    )),
    ClassId.EXPONENTIAL: GroupedForm((
        GroupedTerm(F(-1, 9), (Factor.psi(F(-5, 16), 0, power=2),), "lemma"),
        GroupedTerm(F(-15, 256), (_mono(c1, 2), _mono(c2, 2)), "monomial"),
        GroupedTerm(F(17, 432), (_mono(c1, 3), Factor.psi(F(13, 34), F(-13, 204))), "lemma"),
        GroupedTerm(F(1, 16), (Factor(2 * c2 - c1**2), Factor.c4()), "c4"),
    )),
    ClassId.LUNE: GroupedForm((
        GroupedTerm(F(-1, 9), (Factor.psi(F(-5, 16), 0, power=2),), "lemma"),
        GroupedTerm(F(-31, 256), (_mono(c1, 2), _mono(c2, 2)), "monomial"),
        GroupedTerm(F(11, 144), (_mono(c1, 3), Factor.psi(F(5, 11), F(-7, 44))), "lemma"),
        GroupedTerm(F(1, 8), (Factor(c2 - F(1, 2) * c1**2), Factor.c4()), "c4"),
    )),
}


@dataclass(frozen=True)
class HankelExpression:
    class_id: ClassId
    coefficients: tuple[Polynomial, ...]
    polynomial: Polynomial
    grouped: GroupedForm


@lru_cache(maxsize=None)
def _hankel(class_id: ClassId) -> HankelExpression:
    a = derive_coefficients(class_id, 5)
    h = hankel3_from_coefficients(*a)
    if h.total_degree() > MAX_DEGREE:
        raise SymbolicInconsistencyError(f"H3(1) has degree {h.total_degree()} > {MAX_DEGREE}")
    grouped = GROUPED_FORMS[class_id]
    diff = grouped.expand() - h
    if not diff.is_zero():
        raise SymbolicInconsistencyError(
            f"{class_id.value}: grouped form differs from the determinant by {diff}"
        )
    return HankelExpression(class_id, tuple(a), h, grouped)


def hankel3_polynomial(spec: "ClassSpec | ClassId | str") -> HankelExpression:
    return _hankel(get_class(spec).id)


def _split(c) -> tuple:
    c = np.asarray(c, dtype=complex) if not _is_exact(c) else c
    if isinstance(c, np.ndarray) and c.ndim == 2:
        return tuple(c[:, i] for i in range(4))
    if len(c) != 4:
        raise ValueError("need the four coefficients c1..c4")
    return tuple(c)


def _is_exact(c) -> bool:
    return not isinstance(c, np.ndarray) and all(isinstance(v, (int, Fraction)) for v in c)


def eval_hankel3(spec: "ClassSpec | ClassId | str", c):
    """H3(1) at ``c = (c1, c2, c3, c4)``, or row-wise for an ``(n, 4)`` array.

    Evaluates the derived ``a_k`` and then the 3x3 determinant expansion.
    """
    expr = hankel3_polynomial(spec)
    parts = _split(c)
    a = [p.evaluate(*parts) for p in expr.coefficients]
    return hankel3_from_coefficients(*a)


def eval_grouped(spec: "ClassSpec | ClassId | str", c):
    """H3(1) through the grouped decomposition; an independent numeric route."""
    expr = hankel3_polynomial(spec)
    parts = _split(c)
    total = 0
    for term in expr.grouped.terms:
        value = term.coeff if _is_exact(parts) else float(term.coeff)
        for fac in term.factors:
            value = value * fac.poly.evaluate(*parts) ** fac.power
        total = total + value
    return total
