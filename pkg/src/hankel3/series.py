"""Truncated power series with pluggable coefficient scalars.

A :class:`TruncatedSeries` of order ``N`` stores the coefficients of
``z**0 .. z**N``; everything beyond ``N`` is unknown and never touched.

The arithmetic only uses ``+``, ``-``, ``*`` and division by integers or by
the constant term, so the same code runs on

* :class:`fractions.Fraction` (exact derivations),
* ``complex`` (single numeric evaluation),
* :class:`hankel3.polynomial.Polynomial` (symbolic coefficients in c1..c4),
* 1-d :mod:`numpy` arrays (a batch of series evaluated elementwise).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

import numpy as np

__all__ = [
    "SeriesError",
    "OrderMismatchError",
    "NonInvertibleError",
    "CompositionDomainError",
    "TruncatedSeries",
    "add",
    "mul",
    "reciprocal",
    "compose",
    "sqrt1p",
    "exp_series",
    "negate_argument",
]


class SeriesError(ValueError):
    pass


class OrderMismatchError(SeriesError):
    pass


class NonInvertibleError(SeriesError):
    pass


class CompositionDomainError(SeriesError):
    pass


def _is_zero(value: Any) -> bool:
    if isinstance(value, np.ndarray):
        return not value.any()
    return value == 0


def _div(value: Any, n: Any) -> Any:
    # int / int must stay exact
    if isinstance(value, int) and isinstance(n, int):
        return Fraction(value, n)
    return value / n


def _inv(value: Any) -> Any:
    if isinstance(value, int):
        return Fraction(1, value)
    if hasattr(value, "inverse"):
        return value.inverse()
    return 1 / value


def _conj(value: Any) -> Any:
    if isinstance(value, (int, Fraction)):
        return value
    return value.conjugate()


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Coefficients ``coeffs[k]`` of ``z**k`` for ``k = 0..order``."""

    coeffs: tuple

    # let numpy scalars/arrays on the left defer to our reflected operators
    __array_ufunc__ = None

    def __post_init__(self) -> None:
        if len(self.coeffs) == 0:
            raise SeriesError("a series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    # construction ---------------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Any], order: int) -> "TruncatedSeries":
        """Pad with zeros (or cut) to exactly ``order + 1`` coefficients."""
        coeffs = list(coeffs)[: order + 1]
        coeffs += [0] * (order + 1 - len(coeffs))
        return cls(tuple(coeffs))

    @classmethod
    def constant(cls, value: Any, order: int) -> "TruncatedSeries":
        return cls.from_coeffs([value], order)

    @classmethod
    def variable(cls, order: int) -> "TruncatedSeries":
        """The identity series ``z``."""
        return cls.from_coeffs([0, 1], order)

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls.from_coeffs([], order)

    # basic accessors --------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Any:
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self) -> str:
        return f"TruncatedSeries({list(self.coeffs)!r})"

    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.order != other.order:
            return False
        return all(_is_zero(a - b) for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None  # type: ignore[assignment]

    def map(self, fn) -> "TruncatedSeries":
        return TruncatedSeries(tuple(fn(c) for c in self.coeffs))

    # arithmetic -------------------------------------------------------------

    def _check(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise OrderMismatchError(
                f"truncation orders differ: {self.order} != {other.order}"
            )

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self + TruncatedSeries.constant(other, self.order)
        self._check(other)
        return TruncatedSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return self.map(lambda c: -c)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.map(lambda c: c * other)
        self._check(other)
        a, b = self.coeffs, other.coeffs
        return TruncatedSeries(
            tuple(sum((a[i] * b[k - i] for i in range(k + 1)), 0) for k in range(len(a)))
        )

    def __rmul__(self, other):
        return self.map(lambda c: other * c)

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * reciprocal(other)
        return self.map(lambda c: _div(c, other))

    def __pow__(self, n: int):
        if n < 0:
            return reciprocal(self) ** (-n)
        out = TruncatedSeries.constant(1, self.order)
        for _ in range(n):
            out = out * self
        return out

    def shift(self) -> "TruncatedSeries":
        """Multiply by ``z``; the top coefficient falls off the truncation."""
        return TruncatedSeries((0,) + self.coeffs[:-1])

    def z_derivative(self) -> "TruncatedSeries":
        """``z * d/dz``, i.e. coefficient ``k`` scaled by ``k``."""
        return TruncatedSeries(tuple(k * c for k, c in enumerate(self.coeffs)))

    def conjugate_coeffs(self) -> "TruncatedSeries":
        return self.map(_conj)


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    a._check(b)
    return a + b


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    a._check(b)
    return a * b


def reciprocal(a: TruncatedSeries) -> TruncatedSeries:
    """``1/a`` via the triangular recurrence ``sum_i a_i b_{k-i} = [k == 0]``."""
    a0 = a[0]
    vanishes = not np.all(a0 != 0) if isinstance(a0, np.ndarray) else a0 == 0
    if vanishes:
        raise NonInvertibleError("constant term vanishes, series is not invertible")
    b: list[Any] = [_inv(a0)]
    for k in range(1, a.order + 1):
        acc = sum((a[i] * b[k - i] for i in range(1, k + 1)), 0)
        b.append(-acc * b[0])
    return TruncatedSeries(tuple(b))


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """``outer(inner(z))`` by Horner's rule; needs ``inner(0) == 0``."""
    outer._check(inner)
    if not _is_zero(inner[0]):
        raise CompositionDomainError("inner series must have zero constant term")
    n = outer.order
    out = TruncatedSeries.constant(outer[n], n)
    for k in range(n - 1, -1, -1):
        out = out * inner + outer[k]
    return out


def _require_no_constant(a: TruncatedSeries, what: str) -> None:
    if not _is_zero(a[0]):
        raise CompositionDomainError(f"{what} needs a series with zero constant term")


def sqrt1p(a: TruncatedSeries) -> TruncatedSeries:
    """Principal ``sqrt(1 + a)`` with value 1 at the origin."""
    _require_no_constant(a, "sqrt1p")
    s: list[Any] = [1]
    for k in range(1, a.order + 1):
        cross = sum((s[i] * s[k - i] for i in range(1, k)), 0)
        s.append(_div(a[k] - cross, 2))
    return TruncatedSeries(tuple(s))


def exp_series(a: TruncatedSeries) -> TruncatedSeries:
    """``exp(a)`` from ``b' = a' b``: ``k b_k = sum_j j a_j b_{k-j}``."""
    _require_no_constant(a, "exp_series")
    b: list[Any] = [1]
    for k in range(1, a.order + 1):
        acc = sum((j * a[j] * b[k - j] for j in range(1, k + 1)), 0)
        b.append(_div(acc, k))
    return TruncatedSeries(tuple(b))


def negate_argument(a: TruncatedSeries) -> TruncatedSeries:
    """``a(-z)``."""
    return TruncatedSeries(tuple(c if k % 2 == 0 else -c for k, c in enumerate(a.coeffs)))


def exact(coeffs: Sequence[Any], order: int) -> TruncatedSeries:
    """Series with every coefficient coerced to :class:`Fraction`."""
    return TruncatedSeries.from_coeffs([Fraction(c) for c in coeffs], order)
