"""Coefficient inequalities for Schwarz functions and a sampler that realizes them.

``classify_region`` encodes the closed regions D1..D7 on which the sharp
bound ``Phi(mu, nu)`` of ``|c3 + mu c1 c2 + nu c1^3|`` is 1 or ``|nu|``.
Points outside the listed regions come back as ``UNCOVERED``; callers that
need a bound must treat that as a failure.

Schwarz functions are sampled through their Schur parameters: with
``phi_4 = 0`` and

    phi_k(z) = (g_k + z phi_{k+1}(z)) / (1 + conj(g_k) z phi_{k+1}(z)),

``w(z) = z phi_0(z)`` is a genuine Schwarz function for every
``(g_0..g_3)`` in the closed unit polydisk, and its first four
coefficients sweep the whole coefficient body.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, NamedTuple, Sequence

import numpy as np

from .series import TruncatedSeries, reciprocal

__all__ = [
    "Region",
    "RegionVerdict",
    "classify_region",
    "matching_regions",
    "SchwarzSample",
    "psi_eval",
    "CarlsonBounds",
    "carlson_bounds",
    "check_carlson",
    "carlson_violations",
    "schur_to_coefficients",
    "sample_schur_parameters",
    "sample_schwarz",
    "sample_schwarz_array",
    "INVOKED_LEMMA_PAIRS",
]

F = Fraction


class Region(str, enum.Enum):
    D1 = "D1"
    D2 = "D2"
    D3 = "D3"
    D4 = "D4"
    D5 = "D5"
    D6 = "D6"
    D7 = "D7"
    POINT_2_1 = "POINT_2_1"
    UNCOVERED = "UNCOVERED"


@dataclass(frozen=True)
class RegionVerdict:
    region: Region
    phi: Fraction | None
    mu: Fraction
    nu: Fraction
    matches: tuple[Region, ...] = ()

    @property
    def covered(self) -> bool:
        return self.region is not Region.UNCOVERED

    def to_dict(self) -> dict:
        return {
            "mu": str(self.mu),
            "nu": str(self.nu),
            "region": self.region.value,
            "phi": None if self.phi is None else str(self.phi),
            "matches": [r.value for r in self.matches],
        }


def _region_tests(mu: Fraction, nu: Fraction) -> list[tuple[Region, Callable[[], bool]]]:
    m = abs(mu)
    return [
        (Region.D1, lambda: m <= F(1, 2) and -1 <= nu <= 1),
        (Region.D2, lambda: F(1, 2) <= m <= 2 and F(4, 27) * (m + 1) ** 3 - (m + 1) <= nu <= 1),
        (Region.D3, lambda: m <= F(1, 2) and nu <= -1),
        (Region.D4, lambda: m >= F(1, 2) and nu <= -F(2, 3) * (m + 1)),
        (Region.D5, lambda: m <= 2 and nu >= 1),
        (Region.D6, lambda: 2 <= m <= 4 and nu >= F(1, 12) * (mu * mu + 8)),
        (Region.D7, lambda: m >= 4 and nu >= F(2, 3) * (m - 1)),
        (Region.POINT_2_1, lambda: mu == 2 and nu == 1),
    ]


def _phi(region: Region, nu: Fraction) -> Fraction:
    if region in (Region.D1, Region.D2, Region.POINT_2_1):
        return F(1)
    return abs(nu)


def matching_regions(mu, nu) -> tuple[Region, ...]:
    mu, nu = F(mu), F(nu)
    return tuple(r for r, test in _region_tests(mu, nu) if test())


def classify_region(mu, nu) -> RegionVerdict:
    """First matching region in the order D1..D7, (2, 1); exact in rationals.

    Floats are converted exactly (binary value), so boundary cases should
    be passed as :class:`Fraction`.
    """
    mu, nu = F(mu), F(nu)
    matches = matching_regions(mu, nu)
    if not matches:
        return RegionVerdict(Region.UNCOVERED, None, mu, nu, ())
    phis = {_phi(r, nu) for r in matches}
    if len(phis) != 1:
        # overlapping closed boundaries must agree on Phi
        raise AssertionError(f"regions {matches} disagree on Phi at ({mu}, {nu}): {phis}")
    return RegionVerdict(matches[0], _phi(matches[0], nu), mu, nu, matches)


# (mu, nu) pairs behind the bounded functionals, as usually quoted; the starlike one is superseded by (-5/8, 0) in the bounds
INVOKED_LEMMA_PAIRS: tuple[tuple[Fraction, Fraction], ...] = (
    (F(-5, 4), F(0)),
    (F(1, 2), F(0)),
    (F(-1), F(0)),
    (F(-5, 16), F(0)),
    (F(13, 34), F(-13, 204)),
    (F(5, 11), F(-7, 44)),
)


@dataclass(frozen=True)
class SchwarzSample:
    c: tuple[complex, complex, complex, complex]
    schur_params: tuple[complex, complex, complex, complex]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.c, dtype=complex)


def _coeffs(c) -> np.ndarray:
    if isinstance(c, SchwarzSample):
        return c.as_array()
    return np.asarray(c, dtype=complex)


def psi_eval(c, mu, nu):
    """``|c3 + mu c1 c2 + nu c1^3|`` for one sample or row-wise on ``(n, 4)``."""
    arr = _coeffs(c)
    c1, c2, c3 = arr[..., 0], arr[..., 1], arr[..., 2]
    return np.abs(c3 + float(mu) * c1 * c2 + float(nu) * c1**3)


class CarlsonBounds(NamedTuple):
    """Bounds given ``|c1|``: ``c2`` directly, ``c3`` and ``c4`` once ``|c2|`` is known."""

    c2: Any
    c3: Callable[[Any], Any]
    c4: Callable[[Any], Any]


def carlson_bounds(c1abs) -> CarlsonBounds:
    if not 0 <= c1abs <= 1:
        raise ValueError(f"|c1| must lie in [0, 1], got {c1abs}")
    one_minus = 1 - c1abs * c1abs
    return CarlsonBounds(
        one_minus,
        lambda c2abs: one_minus - c2abs * c2abs / (1 + c1abs),
        lambda c2abs: one_minus - c2abs * c2abs,
    )


def carlson_violations(c, tol: float = 1e-12) -> np.ndarray:
    """Boolean mask of rows violating any of the three inequalities by more than ``tol``."""
    arr = np.atleast_2d(_coeffs(c))
    x, y, t, w = (np.abs(arr[:, i]) for i in range(4))
    bad = y > 1 - x**2 + tol
    bad |= t > 1 - x**2 - y**2 / (1 + x) + tol
    bad |= w > 1 - x**2 - y**2 + tol
    return bad


def check_carlson(s, tol: float = 1e-12) -> bool:
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    return not bool(carlson_violations(s, tol).any())


def schur_to_coefficients(gammas) -> np.ndarray:
    """Map Schur parameters to ``(c1, c2, c3, c4)``.

    Accepts a single 4-vector or an ``(n, 4)`` array and returns the same
    shape. The recursion runs on series whose coefficients are numpy
    arrays, so a whole batch expands in one pass.
    """
    g = np.asarray(gammas, dtype=complex)
    single = g.ndim == 1
    g = np.atleast_2d(g)
    if g.shape[1] != 4:
        raise ValueError("need four Schur parameters per sample")
    order = 4
    phi = TruncatedSeries.zero(order)
    for k in range(3, -1, -1):
        gk = g[:, k]
        zphi = phi.shift()
        phi = (zphi + gk) * reciprocal(zphi * np.conj(gk) + 1)
    w = phi.shift()
    n = g.shape[0]
    out = np.stack([np.broadcast_to(np.asarray(w[k], dtype=complex), (n,)) for k in range(1, 5)], axis=1)
    return out[0] if single else out


def sample_schur_parameters(rng: np.random.Generator, count: int) -> np.ndarray:
    """Area-uniform points of the closed unit disk, shape ``(count, 4)``."""
    if count < 1:
        raise ValueError("count must be at least 1")
    r = np.sqrt(rng.random((count, 4)))
    theta = 2 * np.pi * rng.random((count, 4))
    return r * np.exp(1j * theta)


def sample_schwarz_array(rng: np.random.Generator, count: int) -> tuple[np.ndarray, np.ndarray]:
    """``(c, gammas)`` arrays of shape ``(count, 4)``."""
    gammas = sample_schur_parameters(rng, count)
    return schur_to_coefficients(gammas), gammas


def sample_schwarz(rng: np.random.Generator, count: int) -> list[SchwarzSample]:
    c, g = sample_schwarz_array(rng, count)
    return [SchwarzSample(tuple(ci), tuple(gi)) for ci, gi in zip(c, g)]


def sample_from_params(gammas: Sequence[complex]) -> SchwarzSample:
    g = tuple(complex(v) for v in gammas)
    if any(abs(v) > 1 for v in g):
        raise ValueError("Schur parameters must lie in the closed unit disk")
    return SchwarzSample(tuple(schur_to_coefficients(np.asarray(g))), g)
