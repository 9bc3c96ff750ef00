"""Empirical lower bounds for sup |H3(1)| by searching over Schur parameters.

The search spends a fixed evaluation budget: first area-uniform samples of
the closed unit polydisk (sample 0 is always the origin, i.e. w = 0), then
coordinate-wise local refinement of the incumbent with a geometrically
shrinking radius. Both phases draw from one seeded generator, so a given
configuration always reproduces the same result.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bounds import PRIOR_BOUNDS, TARGET_BOUNDS
from .classes import CLASSES, ClassId, eval_hankel3, get_class
from .lemmas import SchwarzSample, sample_from_params, sample_schur_parameters, schur_to_coefficients

__all__ = ["SearchConfig", "SearchResult", "GapRow", "search", "gap_report"]

CHUNK = 20_000
FINAL_RADIUS_RATIO = 1e-3
REEVAL_TOL = 1e-12


@dataclass(frozen=True)
class SearchConfig:
    class_id: ClassId
    budget: int = 100_000
    refine_iters: int = 200
    seed: int = 0
    step_scale: float = 0.25

    def __post_init__(self):
        object.__setattr__(self, "class_id", get_class(self.class_id).id)
        if int(self.budget) != self.budget or self.budget < 1:
            raise ValueError("budget must be a positive integer")
        if self.refine_iters < 0:
            raise ValueError("refine_iters must be nonnegative")
        if not 0 < self.step_scale <= 1:
            raise ValueError("step_scale must lie in (0, 1]")

    @property
    def refine_evaluations(self) -> int:
        return min(self.refine_iters, self.budget - 1)

    @property
    def sample_evaluations(self) -> int:
        return self.budget - self.refine_evaluations

    def to_dict(self) -> dict:
        return {
            "classId": self.class_id.value,
            "budget": self.budget,
            "refineIters": self.refine_iters,
            "seed": self.seed,
            "stepScale": self.step_scale,
        }


@dataclass
class SearchResult:
    config: SearchConfig
    best_value: float
    witness: SchwarzSample
    history: list[tuple[int, float]] = field(default_factory=list)
    class_upper_bound: float = 0.0

    @property
    def within_bound(self) -> bool:
        return self.best_value <= self.class_upper_bound

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "bestValue": self.best_value,
            "classUpperBound": self.class_upper_bound,
            "withinBound": self.within_bound,
            "witness": {
                "schurParams": [[v.real, v.imag] for v in self.witness.schur_params],
                "c": [[v.real, v.imag] for v in self.witness.c],
            },
            "history": [[i, v] for i, v in self.history],
        }


def _objective(cid: ClassId, gammas: np.ndarray) -> np.ndarray:
    return np.abs(eval_hankel3(cid, schur_to_coefficients(gammas)))


def _project(g: complex) -> complex:
    # dividing by the modulus can land one ulp outside the disk
    while abs(g) > 1:
        g = g / abs(g) * (1 - 2**-52)
    return g


def search(cfg: SearchConfig) -> SearchResult:
    rng = np.random.default_rng(cfg.seed)
    cid = cfg.class_id
    best = -1.0
    best_g = np.zeros(4, dtype=complex)
    history: list[tuple[int, float]] = []

    done = 0
    remaining = cfg.sample_evaluations
    while remaining:
        n = min(CHUNK, remaining)
        g = sample_schur_parameters(rng, n)
        if done == 0:
            g[0] = 0
        vals = _objective(cid, g)
        i = int(np.argmax(vals))
        if vals[i] > best:
            best, best_g = float(vals[i]), g[i].copy()
            history.append((done + i + 1, best))
        done += n
        remaining -= n

    iters = cfg.refine_evaluations
    for k in range(iters):
        radius = cfg.step_scale * FINAL_RADIUS_RATIO ** (k / max(iters - 1, 1))
        coord = k % 4
        trial = best_g.copy()
        step = radius * np.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
        trial[coord] = _project(trial[coord] + step)
        v = float(_objective(cid, trial[None, :])[0])
        done += 1
        if v > best:
            best, best_g = v, trial
            history.append((done, best))

    witness = sample_from_params(best_g)
    value = float(abs(eval_hankel3(cid, witness.as_array())))
    if abs(value - best) > REEVAL_TOL:
        raise ArithmeticError(f"witness re-evaluates to {value}, search recorded {best}")
    return SearchResult(cfg, best, witness, history, TARGET_BOUNDS[cid])


@dataclass(frozen=True)
class GapRow:
    class_id: ClassId
    lower: float
    upper: float
    prior: float | None

    @property
    def gap(self) -> float:
        return self.upper - self.lower

    @property
    def ratio(self) -> float:
        return self.lower / self.upper

    def to_dict(self) -> dict:
        return {
            "classId": self.class_id.value,
            "lower": self.lower,
            "upper": self.upper,
            "prior": self.prior,
            "gap": self.gap,
            "ratio": self.ratio,
        }


def gap_report(results: list[SearchResult], classes=None) -> list[GapRow]:
    """One row per requested class (all four by default), in the requested order."""
    wanted = [get_class(c).id for c in (classes if classes is not None else CLASSES)]
    by_class: dict[ClassId, SearchResult] = {}
    for r in results:
        if r.config.class_id in by_class:
            raise ValueError(f"duplicate result for {r.config.class_id.value}")
        by_class[r.config.class_id] = r
    missing = [c.value for c in wanted if c not in by_class]
    if missing:
        raise ValueError(f"missing search results for: {', '.join(missing)}")
    return [
        GapRow(c, by_class[c].best_value, TARGET_BOUNDS[c], PRIOR_BOUNDS.get(c))
        for c in wanted
    ]
