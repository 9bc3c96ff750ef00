"""Dense univariate rational polynomials, Sturm sequences and root isolation.

Roots are bracketed with exact rational arithmetic (Sturm counts and exact
bisection), so a bracket is never wrong because of rounding. Brackets are
then shrunk to the requested width and reported as floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Any, Iterable, Sequence

import numpy as np

from .polynomial import Polynomial

__all__ = [
    "UPoly",
    "RealRoot",
    "RootIsolationError",
    "sturm_sequence",
    "count_roots",
    "isolate_real_roots",
    "maximize_on_interval",
    "SignCertificate",
    "certify_nonnegative",
]


class RootIsolationError(ArithmeticError):
    pass


class UPoly:
    """Coefficients low to high, trailing zeros stripped; immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Any] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UPoly is immutable")

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "UPoly":
        if len(p.variables) != 1:
            raise ValueError("need a polynomial in exactly one variable")
        n = p.degree(0)
        cs = [Fraction(0)] * (n + 1)
        for (k,), c in p.items():
            cs[k] = c
        return cls(cs)

    @classmethod
    def x(cls) -> "UPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, Rational):
            return self.coeffs == UPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UPoly({[str(c) for c in self.coeffs]})"

    def _lift(self, other: Any) -> "UPoly":
        return other if isinstance(other, UPoly) else UPoly([other])

    def __add__(self, other: Any) -> "UPoly":
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> "UPoly":
        return UPoly(-c for c in self.coeffs)

    def __sub__(self, other: Any) -> "UPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other: Any) -> "UPoly":
        return self._lift(other) - self

    def __mul__(self, other: Any) -> "UPoly":
        other = self._lift(other)
        if self.is_zero() or other.is_zero():
            return UPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UPoly":
        out = UPoly([1])
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - other.degree, 1)
        lead = other.leading
        while len(rem) - 1 >= other.degree and any(rem):
            shift = len(rem) - 1 - other.degree
            factor = rem[-1] / lead
            q[shift] = factor
            for i, c in enumerate(other.coeffs):
                rem[shift + i] -= factor * c
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return UPoly(q), UPoly(rem)

    def __floordiv__(self, other: "UPoly") -> "UPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UPoly") -> "UPoly":
        return divmod(self, other)[1]

    def derivative(self) -> "UPoly":
        return UPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def monic(self) -> "UPoly":
        return UPoly(c / self.leading for c in self.coeffs) if self.coeffs else self

    def __call__(self, x: Any) -> Any:
        """Horner evaluation; exact for rationals, float otherwise."""
        if isinstance(x, Rational):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def compose(self, inner: "UPoly") -> "UPoly":
        out = UPoly()
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    def gcd(self, other: "UPoly") -> "UPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree(self) -> "UPoly":
        g = self.gcd(self.derivative())
        return (self // g).monic() if g.degree > 0 else self.monic()

    def discriminant(self) -> Fraction:
        if self.degree != 2:
            raise ValueError("discriminant implemented for quadratics only")
        c, b, a = self.coeffs
        return b * b - 4 * a * c

    def format(self, var: str = "x") -> str:
        p = Polynomial({(k,): c for k, c in enumerate(self.coeffs)}, (var,))
        return p.format("unicode")


def sturm_sequence(p: UPoly) -> list[UPoly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        seq.append(-(seq[-2] % seq[-1]))
    return [s for s in seq if not s.is_zero()]


def _variations(seq: Sequence[UPoly], x: Fraction) -> int:
    signs = [v for v in (s(x) for s in seq) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_roots(p: UPoly, lo: Fraction, hi: Fraction, seq: Sequence[UPoly] | None = None) -> int:
    """Distinct real roots in the half-open interval ``(lo, hi]``."""
    seq = seq if seq is not None else sturm_sequence(p.squarefree())
    return _variations(seq, lo) - _variations(seq, hi)


@dataclass(frozen=True)
class RealRoot:
    """A real root bracketed by ``[lo, hi]``; ``exact`` set when rational and hit."""

    value: float
    lo: Fraction
    hi: Fraction
    exact: Fraction | None = None

    def __float__(self) -> float:
        return self.value


def _to_fraction(x: Any) -> Fraction:
    return Fraction(x) if not isinstance(x, Fraction) else x


def isolate_real_roots(p: UPoly, lo: Any, hi: Any, tol: float = 1e-12) -> list[RealRoot]:
    """All distinct real roots of ``p`` in the closed interval ``[lo, hi]``.

    Each root ends up in a rational bracket of width ``<= tol`` whose
    endpoints are not roots (unless the root itself is rational and was
    hit exactly, in which case the bracket is degenerate).
    """
    lo, hi = _to_fraction(lo), _to_fraction(hi)
    if not lo < hi:
        raise ValueError(f"degenerate interval [{lo}, {hi}]")
    if p.is_zero():
        raise ValueError("the zero polynomial has no isolated roots")
    q = p.squarefree()
    if q.degree == 0:
        return []
    seq = sturm_sequence(q)
    width = Fraction(tol)

    roots: list[RealRoot] = []
    exact_hits: set[Fraction] = set()
    if q(lo) == 0:
        exact_hits.add(lo)
    # each stack entry is a half-open interval (a, b]
    stack = [(lo, hi)]
    found: list[tuple[Fraction, Fraction]] = []
    while stack:
        a, b = stack.pop()
        n = count_roots(q, a, b, seq)
        if q(b) == 0:
            exact_hits.add(b)
            n -= 1
        if n == 0:
            continue
        if n == 1 and q(a) != 0 and q(b) != 0:
            found.append((a, b))
            continue
        m = (a + b) / 2
        stack.append((a, m))
        stack.append((m, b))

    for h in sorted(exact_hits):
        roots.append(RealRoot(float(h), h, h, h))
    for a, b in found:
        sa = q(a) > 0
        for _ in range(400):
            if b - a <= width:
                break
            m = (a + b) / 2
            v = q(m)
            if v == 0:
                a = b = m
                break
            if (v > 0) == sa:
                a = m
            else:
                b = m
        else:
            raise RootIsolationError(f"bisection did not converge on [{a}, {b}]")
        exact = a if a == b else None
        roots.append(RealRoot(float((a + b) / 2), a, b, exact))
    roots.sort(key=lambda r: r.lo)
    return roots


def maximize_on_interval(p: UPoly, lo: Any, hi: Any, tol: float = 1e-12) -> tuple[float, float, list[tuple[float, float]]]:
    """Global maximum of ``p`` on ``[lo, hi]`` from its exact critical points.

    Returns ``(argmax, max, candidates)`` where candidates are every
    ``(point, value)`` pair compared (endpoints and critical roots).
    A degenerate interval ``lo == hi`` is a single evaluation.
    """
    lo, hi = _to_fraction(lo), _to_fraction(hi)
    cands: list[tuple[float, float]] = [(float(lo), float(p(lo))), (float(hi), float(p(hi)))]
    if lo < hi:
        dp = p.derivative()
        if not dp.is_zero():
            for r in isolate_real_roots(dp, lo, hi, tol):
                if r.exact is not None:
                    cands.append((float(r.exact), float(p(r.exact))))
                else:
                    cands.append((r.value, p(r.value)))
    unique: list[tuple[float, float]] = []
    for c in cands:
        if c not in unique:
            unique.append(c)
    cands = unique
    best = max(cands, key=lambda t: t[1])
    return best[0], best[1], cands


@dataclass(frozen=True)
class SignCertificate:
    """Outcome of an exact nonnegativity check of a polynomial on an interval."""

    polynomial: str
    interval: tuple[str, str]
    nonnegative: bool
    strictly_positive: bool
    roots_in_interval: int
    discriminant: str | None = None

    @property
    def method(self) -> str:
        if self.discriminant is not None:
            return "discriminant"
        return "sturm"


def certify_nonnegative(p: UPoly, lo: Any = 0, hi: Any = 1, var: str = "t") -> SignCertificate:
    """Decide ``p >= 0`` on ``[lo, hi]`` exactly.

    The sign is constant between consecutive distinct roots, so one rational
    probe per gap (plus the interval ends) decides it everywhere.
    """
    lo, hi = _to_fraction(lo), _to_fraction(hi)
    if p.degree == 2:
        disc = p.discriminant()
        if disc < 0 and p.leading > 0:
            return SignCertificate(p.format(var), (str(lo), str(hi)), True, True, 0, str(disc))
    if p.is_zero():
        return SignCertificate("0", (str(lo), str(hi)), True, False, 0)
    if p.degree == 0:
        ok = p.leading > 0
        return SignCertificate(p.format(var), (str(lo), str(hi)), ok, ok, 0)
    roots = isolate_real_roots(p, lo, hi, tol=1e-6)
    # inexact brackets have non-root endpoints, so these probes hit every gap
    probes = {lo, hi}
    for left, right in zip(roots, roots[1:]):
        probes.add((left.hi + right.lo) / 2)
    values = [p(t) for t in probes]
    nonneg = all(v >= 0 for v in values)
    strict = nonneg and not roots
    return SignCertificate(
        p.format(var),
        (str(lo), str(hi)),
        nonneg,
        strict,
        len(roots),
    )


def float_roots(p: UPoly) -> np.ndarray:
    """Complex roots from the companion matrix; numeric cross-check only."""
    if p.degree < 1:
        return np.array([], dtype=complex)
    return np.roots([float(c) for c in reversed(p.coeffs)])
