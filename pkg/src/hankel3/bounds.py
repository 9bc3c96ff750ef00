"""Upper bounds for |H3(1)| as chains of checked inequalities.

Every class follows the same front half:

1. triangle inequality over the grouped decomposition of H3(1);
2. each functional ``c3 + mu c1 c2 + nu c1^3`` replaced by ``Phi(mu, nu)``;
3. the remaining polynomial factors replaced by their monomial-wise moduli;
4. ``|c4|`` replaced by ``1 - |c1|^2 - |c2|^2``.

What is left is a polynomial in ``x = |c1|``, ``y = |c2|`` over the domain
``0 <= y <= 1 - x^2``, and each class finishes with its own exact
manipulations (dropped nonnegative terms, univariate maximization, or the
two-variable optimization of ``h`` for the starlike class).

Each step records how it was verified, and all chains are additionally
replayed on sampled Schwarz functions to confirm that every stage dominates
the one before it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .classes import ClassId, HankelExpression, eval_hankel3, get_class, hankel3_polynomial
from .lemmas import RegionVerdict, classify_region, sample_schwarz_array
from .optimize import H_STARLIKE, XY, critical_curve_roots, maximize_over_omega
from .polynomial import Polynomial, format_rational
from .univariate import SignCertificate, UPoly, certify_nonnegative, maximize_on_interval

__all__ = [
    "Verification",
    "InequalityStep",
    "LemmaInvocation",
    "BoundReport",
    "PipelineFailure",
    "TARGET_BOUNDS",
    "PRIOR_BOUNDS",
    "bound_starlike",
    "bound_symmetric_points",
    "bound_exponential",
    "bound_lune",
    "bound_class",
    "SYMMETRIC_CLOSED_FORM",
]

F = Fraction
ABS_VARS = ("x", "y", "t", "w")  # |c1|, |c2|, |c3|, |c4|
_x, _y = Polynomial.gens(XY)
MONOTONE_TOL = 1e-9

SYMMETRIC_CLOSED_FORM = "1/4 + 1/(3*sqrt(3))"
SYMMETRIC_VALUE = 0.25 + 1 / (3 * math.sqrt(3))

TARGET_BOUNDS: dict[ClassId, float] = {
    ClassId.STARLIKE: 0.777987,
    ClassId.SYMMETRIC_POINTS: SYMMETRIC_VALUE,
    ClassId.EXPONENTIAL: 17 / 72,
    ClassId.LUNE: 17 / 72,
}

# earlier bounds obtained through Caratheodory-function coefficient estimates
PRIOR_BOUNDS: dict[ClassId, float] = {
    ClassId.SYMMETRIC_POINTS: 5 / 2,
    ClassId.EXPONENTIAL: 0.50047781,
}


class Verification(str, enum.Enum):
    IDENTITY = "EXACT_IDENTITY"
    TRIANGLE = "TRIANGLE"
    LEMMA = "LEMMA"
    EXACT_SIGN = "EXACT_SIGN"
    GRID_CERTIFIED = "GRID_CERTIFIED"


class PipelineFailure(RuntimeError):
    def __init__(self, class_id: ClassId, step: str, reason: str):
        super().__init__(f"{class_id.value}: step '{step}' failed: {reason}")
        self.class_id = class_id
        self.step = step


@dataclass
class InequalityStep:
    description: str
    dominating_expression: str
    verification: Verification
    status: str
    detail: dict = field(default_factory=dict)
    sampled_excess: float | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {
            "description": self.description,
            "dominatingExpression": self.dominating_expression,
            "verification": self.verification.value,
            "status": self.status,
            "sampledExcess": self.sampled_excess,
            "detail": self.detail,
        }


@dataclass
class LemmaInvocation:
    expression: str
    verdict: RegionVerdict
    alternates: list[RegionVerdict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "expression": self.expression,
            **self.verdict.to_dict(),
            "alternates": [v.to_dict() for v in self.alternates],
        }


@dataclass
class Stage:
    label: str
    evaluate: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    poly: Polynomial | None = None


@dataclass
class BoundReport:
    class_id: ClassId
    upper_bound: float
    exact: Fraction | None
    closed_form: str | None
    steps: list[InequalityStep]
    lemma_invocations: list[LemmaInvocation]
    optimizer_evidence: dict | None = None
    notes: list[str] = field(default_factory=list)
    stages: list[Stage] = field(default_factory=list, repr=False)
    samples: int = 0

    @property
    def target_value(self) -> float:
        return TARGET_BOUNDS[self.class_id]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.steps)

    def to_dict(self) -> dict:
        if self.exact is not None:
            symbolic: str | float = format_rational(self.exact)
        elif self.closed_form is not None:
            symbolic = self.closed_form
        else:
            symbolic = self.upper_bound
        return {
            "classId": self.class_id.value,
            "upperBound": symbolic,
            "upperBoundFloat": self.upper_bound,
            "closedForm": self.closed_form,
            "targetValue": self.target_value,
            "stages": [s.label for s in self.stages],
            "steps": [s.to_dict() for s in self.steps],
            "lemmaInvocations": [l.to_dict() for l in self.lemma_invocations],
            "optimizerEvidence": self.optimizer_evidence,
            "notes": list(self.notes),
            "monotoneSamples": self.samples,
        }


# dropped nonnegative terms ---------------------------------------------------

OMEGA_SLACK = "omega_slack"  # the factor 1 - x^2 - y, nonnegative by definition of the domain


@dataclass(frozen=True)
class Dropped:
    """``coeff * prod(factors)`` with every factor nonnegative on the domain."""

    coeff: Fraction
    factors: tuple  # ("x" | "y", UPoly) pairs or OMEGA_SLACK

    def expand(self) -> Polynomial:
        out = Polynomial.constant(self.coeff, XY)
        for fac in self.factors:
            if fac == OMEGA_SLACK:
                out = out * (1 - _x**2 - _y)
                continue
            var, p = fac
            g = _x if var == "x" else _y
            out = out * sum((c * g**k for k, c in enumerate(p.coeffs)), Polynomial.constant(0, XY))
        return out

    def certify(self) -> list[SignCertificate | str]:
        out: list[SignCertificate | str] = []
        for fac in self.factors:
            if fac == OMEGA_SLACK:
                out.append("1 - x^2 - y >= 0 on the domain")
            else:
                var, p = fac
                out.append(certify_nonnegative(p, 0, 1, var))
        return out

    def ok(self, certs) -> bool:
        return self.coeff >= 0 and all(isinstance(c, str) or c.nonnegative for c in certs)


def _xp(*cs) -> UPoly:
    return UPoly(cs)


# chain machinery ---------------------------------------------------------------


class _Chain:
    def __init__(self, class_id: ClassId, samples: int, seed: int):
        self.class_id = class_id
        rng = np.random.default_rng(seed)
        self.c, _ = sample_schwarz_array(rng, samples)
        self.abs = np.abs(self.c)
        self.stages: list[Stage] = []
        self.values: list[np.ndarray] = []
        self.steps: list[InequalityStep] = []
        self.invocations: list[LemmaInvocation] = []
        self.n = samples

    def start(self, stage: Stage) -> None:
        self.stages.append(stage)
        self.values.append(stage.evaluate(self.c))

    def poly_stage(self, label: str, poly: Polynomial) -> Stage:
        return Stage(label, lambda c, p=poly: np.asarray(p.evaluate(np.abs(c[:, 0]), np.abs(c[:, 1])), dtype=float), poly)

    def step(self, stage: Stage, description: str, verification: Verification, ok: bool,
             detail: dict | None = None, dominating: str = "") -> InequalityStep:
        vals = stage.evaluate(self.c)
        vals = np.broadcast_to(np.asarray(vals, dtype=float), self.values[-1].shape)
        excess = float(np.max(self.values[-1] - vals))
        status = "pass" if ok and excess <= MONOTONE_TOL else "fail"
        if not dominating and stage.poly is not None and self.stages[-1].poly is not None:
            dominating = (stage.poly - self.stages[-1].poly).format("unicode")
        st = InequalityStep(description, dominating, verification, status, detail or {}, excess)
        self.steps.append(st)
        self.stages.append(stage)
        self.values.append(vals)
        return st

    def identity(self, new: Polynomial, label: str, description: str) -> InequalityStep:
        prev = self.stages[-1].poly
        ok = prev is not None and prev == new
        return self.step(self.poly_stage(label, new), description, Verification.IDENTITY, ok,
                         {"identical": ok}, dominating="0")

    def drop(self, new: Polynomial, label: str, description: str, dropped: Sequence[Dropped],
             verification: Verification = Verification.EXACT_SIGN) -> InequalityStep:
        prev = self.stages[-1].poly
        total = sum((d.expand() for d in dropped), Polynomial.constant(0, XY))
        matches = prev is not None and (new - prev) == total
        certs = [d.certify() for d in dropped]
        signs = all(d.ok(c) for d, c in zip(dropped, certs))
        detail = {
            "difference_matches_dropped_terms": matches,
            "dropped": [
                {
                    "coefficient": format_rational(d.coeff),
                    "certificates": [c if isinstance(c, str) else c.__dict__ | {"method": c.method} for c in cs],
                }
                for d, cs in zip(dropped, certs)
            ],
        }
        return self.step(self.poly_stage(label, new), description, verification, matches and signs, detail)

    def finish(self, upper: float, exact: Fraction | None, closed: str | None,
               evidence: dict | None = None, notes: list[str] | None = None) -> BoundReport:
        report = BoundReport(self.class_id, upper, exact, closed, self.steps, self.invocations,
                             evidence, notes or [], self.stages, self.n)
        for st in self.steps:
            if not st.passed:
                raise PipelineFailure(self.class_id, st.description,
                                      f"verification={st.verification.value}, sampled excess={st.sampled_excess}")
        for inv in self.invocations:
            if not inv.verdict.covered:
                raise PipelineFailure(self.class_id, inv.expression, "region UNCOVERED")
        return report


def _to_xy(p: Polynomial) -> Polynomial:
    if p.degree("t") or p.degree("w"):
        raise ValueError(f"{p} still depends on |c3| or |c4|")
    return Polynomial({(e[0], e[1]): c for e, c in p.items()}, XY)


def _majorant(p: Polynomial) -> Polynomial:
    """Monomial-wise modulus bound of ``p`` in the variables ``|c1|..|c4|``."""
    return Polynomial({e: abs(c) for e, c in p.items()}, ABS_VARS)


def _front(chain: _Chain, expr: HankelExpression, alternates: dict | None = None) -> Polynomial:
    """Stages 0..4, ending with a polynomial in ``x, y``."""
    cid = chain.class_id
    grouped = expr.grouped
    alternates = alternates or {}

    chain.start(Stage("|H3(1)|", lambda c: np.abs(eval_hankel3(cid, c))))

    def triangle(c: np.ndarray) -> np.ndarray:
        cols = [c[:, i] for i in range(4)]
        total = np.zeros(c.shape[0])
        for term in grouped.terms:
            v = np.full(c.shape[0], abs(float(term.coeff)))
            for fac in term.factors:
                v = v * np.abs(fac.poly.evaluate(*cols)) ** fac.power
            total = total + v
        return total

    ok = grouped.expand() == expr.polynomial
    chain.step(
        Stage("sum of |grouped terms|", triangle),
        "triangle inequality over the grouped decomposition",
        Verification.TRIANGLE, ok, {"grouped_expands_to_determinant": ok},
        dominating="sum |term| - |sum term| >= 0",
    )

    phis: dict[int, Fraction] = {}
    for term in grouped.terms:
        for fac in term.factors:
            if fac.kind != "psi" or id(fac) in phis:
                continue
            verdict = classify_region(fac.mu, fac.nu)
            alts = [classify_region(*a) for a in alternates.get((fac.mu, fac.nu), [])]
            chain.invocations.append(LemmaInvocation(f"|{fac.poly.format('unicode')}|", verdict, alts))
            phis[id(fac)] = verdict.phi if verdict.phi is not None else F(0)
    covered = all(i.verdict.covered for i in chain.invocations)

    def lemma(c: np.ndarray) -> np.ndarray:
        cols = [c[:, i] for i in range(4)]
        total = np.zeros(c.shape[0])
        for term in grouped.terms:
            v = np.full(c.shape[0], abs(float(term.coeff)))
            for fac in term.factors:
                base = float(phis[id(fac)]) if fac.kind == "psi" else np.abs(fac.poly.evaluate(*cols))
                v = v * base**fac.power
            total = total + v
        return total

    chain.step(
        Stage("functionals replaced by Phi", lemma),
        "coefficient functional bound |c3 + mu c1 c2 + nu c1^3| <= Phi(mu, nu)",
        Verification.LEMMA, covered,
        {"invocations": [i.to_dict() for i in chain.invocations]},
        dominating="Phi - |psi| >= 0 per functional",
    )

    maj = Polynomial.constant(0, ABS_VARS)
    for term in grouped.terms:
        t = Polynomial.constant(abs(term.coeff), ABS_VARS)
        for fac in term.factors:
            if fac.kind == "psi":
                t = t * phis[id(fac)] ** fac.power
            else:
                moved = Polynomial({e: c for e, c in fac.poly.items()}, ABS_VARS)
                t = t * _majorant(moved) ** fac.power
        maj = maj + t
    chain.step(
        Stage("polynomial factors replaced by monomial moduli",
              lambda c, m=maj: np.asarray(m.evaluate(*(np.abs(c[:, i]) for i in range(4))), dtype=float)),
        "triangle inequality inside the remaining factors",
        Verification.TRIANGLE, all(v >= 0 for _, v in maj.items()),
        {"majorant": maj.format("unicode")},
        dominating="sum |a_e||c|^e - |sum a_e c^e| >= 0",
    )

    w_part = Polynomial({e: c for e, c in maj.items() if e[3]}, ABS_VARS)
    linear_in_w = maj.degree("w") <= 1 and all(c >= 0 for _, c in w_part.items())
    xa, ya = Polynomial.var("x", ABS_VARS), Polynomial.var("y", ABS_VARS)
    carl = _to_xy(maj.substitute("w", 1 - xa**2 - ya**2))
    chain.step(
        chain.poly_stage("|c4| replaced by 1 - |c1|^2 - |c2|^2", carl),
        "|c4| <= 1 - |c1|^2 - |c2|^2 against a nonnegative multiplier",
        Verification.LEMMA, linear_in_w,
        {"multiplier_of_|c4|": w_part.format("unicode")},
        dominating="(1 - x^2 - y^2 - |c4|) * multiplier >= 0",
    )
    return carl


# the four pipelines -------------------------------------------------------------


def bound_starlike(samples: int = 10_000, seed: int = 0, resolution: int = 2000) -> BoundReport:
    cid = ClassId.STARLIKE
    expr = hankel3_polynomial(cid)
    chain = _Chain(cid, samples, seed)
    _front(chain, expr, alternates={(F(-5, 8), F(0)): [(F(-5, 4), F(0))]})

    h = H_STARLIKE
    chain.identity((8 + h) / 18, "(8 + h(x, y)) / 18", "regroup as (8 + h(x, y))/18")

    opt = maximize_over_omega(h, resolution=resolution)
    curve = critical_curve_roots(h)
    positive = [(x, y) for x, y in curve if y > 1e-12]
    found = opt.critical.interior + opt.critical.rejected
    curve_agrees = all(
        any(abs(p.x - x) < 1e-7 and abs(p.y - y) < 1e-7 for p in found) for x, y in positive
    )
    ok = (opt.grid is not None and opt.grid.ok) and not opt.critical.interior and curve_agrees
    hmax = opt.value
    upper = (8 + hmax) / 18
    evidence = opt.to_dict() | {
        "h": h.format("unicode"),
        "critical_curve_roots": [list(p) for p in positive],
        "curve_agrees_with_elimination": curve_agrees,
    }
    chain.step(
        Stage("(8 + max h) / 18", lambda c, u=upper: np.full(c.shape[0], u)),
        "maximum of h over the domain",
        Verification.GRID_CERTIFIED, ok,
        {"max_h": hmax, "argmax": list(opt.argmax)},
        dominating="max h - h(x, y) >= 0",
    )
    notes = [
        "the squared functional is c3 - (5/8)c1c2, fixed by re-expanding the grouped form; "
        "the variant mu = -5/4 is classified alongside it and also gives Phi = 1",
    ]
    return chain.finish(upper, None, None, evidence, notes)


def bound_symmetric_points(samples: int = 10_000, seed: int = 0) -> BoundReport:
    cid = ClassId.SYMMETRIC_POINTS
    expr = hankel3_polynomial(cid)
    chain = _Chain(cid, samples, seed)
    _front(chain, expr)

    target = F(1, 4) * (1 + 2 * _y - 2 * _y**3)
    chain.drop(
        target, "(1 + 2y - 2y^3) / 4", "drop 2x^2 y (1 - y) / 4",
        [Dropped(F(1, 2), (("x", _xp(0, 0, 1)), ("y", _xp(0, 1)), ("y", _xp(1, -1))))],
    )

    p = UPoly([F(1, 4), F(1, 2), 0, F(-1, 2)])
    arg, val, cands = maximize_on_interval(p, 0, 1)
    critical = [r for r in cands if 0 < r[0] < 1]
    ok = abs(val - SYMMETRIC_VALUE) <= 1e-12 and abs(arg - 1 / math.sqrt(3)) <= 1e-12
    chain.step(
        Stage(SYMMETRIC_CLOSED_FORM, lambda c: np.full(c.shape[0], SYMMETRIC_VALUE)),
        "maximum of (1 + 2y - 2y^3)/4 on [0, 1]",
        Verification.EXACT_SIGN, ok,
        {"argmax": arg, "max": val, "closed_form": SYMMETRIC_CLOSED_FORM,
         "derivative": p.derivative().format("y"), "candidates": [list(c) for c in cands],
         "interior_critical": [list(c) for c in critical]},
        dominating="closed form - (1 + 2y - 2y^3)/4 >= 0",
    )
    return chain.finish(SYMMETRIC_VALUE, None, SYMMETRIC_CLOSED_FORM, {"univariate_argmax": arg, "univariate_max": val})


def _tail_17_72(chain: _Chain, carl: Polynomial, expanded: Polynomial, final_dropped: list[Dropped],
                notes: list[str] | None = None) -> BoundReport:
    chain.identity(expanded, "expanded polynomial in x, y", "expand the |c4| substitution")
    substituted = expanded + F(1, 8) * (1 - _x**2 - _y)
    chain.drop(
        substituted, "(1/8)|c2| replaced by (1/8)(1 - |c1|^2)", "|c2| <= 1 - |c1|^2",
        [Dropped(F(1, 8), (OMEGA_SLACK,))], Verification.LEMMA,
    )
    final = Polynomial.constant(F(17, 72), XY)
    chain.drop(final, "17/72", "drop the nonpositive remainder", final_dropped)
    return chain.finish(17 / 72, F(17, 72), "17/72", None, notes)


def bound_exponential(samples: int = 10_000, seed: int = 0) -> BoundReport:
    cid = ClassId.EXPONENTIAL
    expr = hankel3_polynomial(cid)
    chain = _Chain(cid, samples, seed)
    carl = _front(chain, expr, alternates={(F(-5, 16), F(0)): [(F(-15, 16), F(0))]})
    x, y = _x, _y
    expanded = (F(1, 9) - F(1, 256) * x**2 * y**2 + F(17, 432) * x**3 + F(1, 8) * y - F(1, 8) * x**2 * y
                - F(1, 8) * y**3 + F(1, 16) * x**2 - F(1, 16) * x**4)
    dropped = [
        Dropped(F(1, 256), (("x", _xp(0, 0, 1)), ("y", _xp(0, 0, 1)))),
        Dropped(F(1, 16), (("x", _xp(0, 0, 1)), ("x", _xp(1, F(-17, 27), 1)))),
        Dropped(F(1, 8), (("x", _xp(0, 0, 1)), ("y", _xp(0, 1)))),
        Dropped(F(1, 8), (("y", _xp(0, 0, 0, 1)),)),
    ]
    notes = [
        "the squared functional is c3 - (5/16)c1c2, fixed by re-expanding the grouped form; "
        "the variant mu = -15/16 is classified alongside it (D2, Phi = 1), so the bound is unaffected",
    ]
    return _tail_17_72(chain, carl, expanded, dropped, notes)


def bound_lune(samples: int = 10_000, seed: int = 0) -> BoundReport:
    cid = ClassId.LUNE
    expr = hankel3_polynomial(cid)
    chain = _Chain(cid, samples, seed)
    carl = _front(chain, expr)
    x, y = _x, _y
    expanded = (F(1, 9) + F(15, 256) * x**2 * y**2 + F(11, 144) * x**3 + F(1, 8) * y - F(1, 8) * x**2 * y
                - F(1, 8) * y**3 + F(1, 16) * x**2 - F(1, 16) * x**4)
    dropped = [
        Dropped(F(1, 8), (("x", _xp(0, 0, 1)), ("y", _xp(0, 1)), ("y", _xp(1, F(-15, 32))))),
        Dropped(F(1, 16), (("x", _xp(0, 0, 1)), ("x", _xp(1, F(-11, 9), 1)))),
        Dropped(F(1, 8), (("y", _xp(0, 0, 0, 1)),)),
    ]
    return _tail_17_72(chain, carl, expanded, dropped)


_PIPELINES = {
    ClassId.STARLIKE: bound_starlike,
    ClassId.SYMMETRIC_POINTS: bound_symmetric_points,
    ClassId.EXPONENTIAL: bound_exponential,
    ClassId.LUNE: bound_lune,
}


def bound_class(key, samples: int = 10_000, seed: int = 0, **kwargs) -> BoundReport:
    cid = get_class(key).id
    return _PIPELINES[cid](samples=samples, seed=seed, **kwargs)
