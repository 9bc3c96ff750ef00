"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

__all__ = ["Polynomial", "format_rational", "SUBSCRIPTS", "SUPERSCRIPTS"]

SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _as_fraction(value: Any) -> Fraction:
    if isinstance(value, Rational):
        return Fraction(value)
    raise TypeError(f"exact polynomial arithmetic needs rationals, got {type(value).__name__}")


class Polynomial:
    """Polynomial over ``variables`` stored as ``{exponent tuple: Fraction}``.

    Zero coefficients are never stored. Instances are immutable and hashable.
    """

    __slots__ = ("variables", "_terms", "_hash")
    __array_ufunc__ = None

    def __init__(self, terms: Mapping[tuple[int, ...], Any], variables: Sequence[str]):
        variables = tuple(variables)
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(variables):
                raise ValueError(f"exponent {exps} does not fit variables {variables}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            q = _as_fraction(coeff)
            if q:
                clean[exps] = clean.get(exps, Fraction(0)) + q
                if not clean[exps]:
                    del clean[exps]
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # constructors -----------------------------------------------------------

    @classmethod
    def constant(cls, value: Any, variables: Sequence[str]) -> "Polynomial":
        return cls({(0,) * len(variables): value}, variables)

    @classmethod
    def var(cls, name: str, variables: Sequence[str]) -> "Polynomial":
        variables = tuple(variables)
        exps = tuple(1 if v == name else 0 for v in variables)
        if sum(exps) != 1:
            raise ValueError(f"{name!r} is not one of {variables}")
        return cls({exps: 1}, variables)

    @classmethod
    def gens(cls, variables: Sequence[str]) -> tuple["Polynomial", ...]:
        return tuple(cls.var(v, variables) for v in variables)

    # inspection -------------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * len(self.variables), Fraction(0))

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    def degree(self, var: str | int) -> int:
        i = var if isinstance(var, int) else self.variables.index(var)
        return max((e[i] for e in self._terms), default=0)

    # arithmetic -------------------------------------------------------------

    def _coerce(self, other: Any) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.variables != self.variables:
                raise ValueError(f"variable sets differ: {self.variables} vs {other.variables}")
            return other
        return Polynomial.constant(_as_fraction(other), self.variables)

    def __add__(self, other: Any) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(out, self.variables)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({e: -c for e, c in self._terms.items()}, self.variables)

    def __sub__(self, other: Any) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other: Any) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(out, self.variables)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "Polynomial":
        if isinstance(other, Polynomial):
            if not other.is_constant():
                return NotImplemented
            other = other.constant_term()
        q = _as_fraction(other)
        return Polynomial({e: c / q for e, c in self._terms.items()}, self.variables)

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out = Polynomial.constant(1, self.variables)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "Polynomial":
        if not self.is_constant() or self.is_zero():
            raise ZeroDivisionError("only nonzero constants are invertible")
        return Polynomial.constant(1 / self.constant_term(), self.variables)

    def conjugate(self) -> "Polynomial":
        # real coefficients; the variables are formal
        return self

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.variables == other.variables and self._terms == other._terms
        if isinstance(other, Rational):
            return self._terms == Polynomial.constant(other, self.variables)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.variables, frozenset(self._terms.items()))))
        return self._hash

    # calculus and substitution ---------------------------------------------

    def diff(self, var: str | int) -> "Polynomial":
        i = var if isinstance(var, int) else self.variables.index(var)
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        return Polynomial(out, self.variables)

    def substitute(self, var: str | int, value: "Polynomial | Any") -> "Polynomial":
        """Replace one variable by a polynomial (over the same variables) or a rational."""
        i = var if isinstance(var, int) else self.variables.index(var)
        value = self._coerce(value)
        out = Polynomial({}, self.variables)
        powers: dict[int, Polynomial] = {}
        for e, c in self._terms.items():
            k = e[i]
            if k not in powers:
                powers[k] = value**k
            rest = list(e)
            rest[i] = 0
            out = out + Polynomial({tuple(rest): c}, self.variables) * powers[k]
        return out

    def evaluate(self, *values: Any) -> Any:
        """Evaluate at ``values``; exact if all inputs are rational.

        Works elementwise on numpy arrays (a batch of points).
        """
        if len(values) != len(self.variables):
            raise ValueError(f"expected {len(self.variables)} values, got {len(values)}")
        exact = all(isinstance(v, Rational) for v in values)
        total: Any = Fraction(0) if exact else 0.0
        cache: dict[tuple[int, int], Any] = {}
        for e, c in self._terms.items():
            term: Any = c if exact else float(c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in cache:
                        cache[(i, k)] = values[i] ** k
                    term = term * cache[(i, k)]
            total = total + term
        if not exact and not isinstance(total, np.ndarray):
            shapes = [np.shape(v) for v in values if np.ndim(v)]
            if shapes:
                total = np.full(np.broadcast_shapes(*shapes), total)
        return total

    __call__ = evaluate

    # display ------------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        # higher-indexed variables first, then by descending exponents
        return sorted(self._terms.items(), key=lambda t: tuple(-x for x in reversed(t[0])))

    def _monomial(self, exps: tuple[int, ...], style: str) -> str:
        parts = []
        for name, k in zip(self.variables, exps):
            if not k:
                continue
            if style == "unicode":
                sym = name[0] + name[1:].translate(SUBSCRIPTS)
                parts.append(sym + (str(k).translate(SUPERSCRIPTS) if k > 1 else ""))
            elif style == "latex":
                sym = f"{name[0]}_{{{name[1:]}}}" if name[1:] else name
                parts.append(sym + (f"^{{{k}}}" if k > 1 else ""))
            else:
                parts.append(name + (f"^{k}" if k > 1 else ""))
        joiner = "*" if style == "ascii" else ""
        return joiner.join(parts)

    def _coeff_text(self, q: Fraction, style: str) -> str:
        if q.denominator == 1:
            return str(q.numerator)
        if style == "latex":
            return f"\\frac{{{q.numerator}}}{{{q.denominator}}}"
        return f"({q.numerator}/{q.denominator})"

    def format(self, style: str = "unicode") -> str:
        if not self._terms:
            return "0"
        out = []
        for i, (e, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            mono = self._monomial(e, style)
            if not mono:
                body = self._coeff_text(mag, style).strip("()")
            elif mag == 1:
                body = mono
            else:
                body = self._coeff_text(mag, style) + ("*" if style == "ascii" else "") + mono
            if i == 0:
                out.append(("-" if sign == "-" else "") + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __str__(self) -> str:
        return self.format("ascii")

    def __repr__(self) -> str:
        return f"Polynomial({self.format('ascii')!r}, variables={self.variables})"
