"""Command-line front end: derive, bound, verify, search, grid-export.

Exit codes are 0 on success, 1 on a failed pipeline, violated check or I/O
error, and 2 on usage errors. Option precedence is: command-line flag, then
``--config`` file, then the ``HANKEL_SEED`` environment variable (seed only),
then the built-in default.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence

import numpy as np

from . import __version__
from .bounds import PipelineFailure, bound_class
from .classes import ClassId, derive_coefficients, eval_hankel3, get_class
from .lemmas import INVOKED_LEMMA_PAIRS, carlson_violations, classify_region, psi_eval, sample_schwarz_array
from .optimize import H_STARLIKE, omega_grid
from .polynomial import Polynomial, format_rational
from .search import SearchConfig, gap_report, search

CLASS_CHOICES = [c.value for c in ClassId]
CARLSON_TOL = 1e-12
LEMMA_TOL = 1e-9
BOUND_TOL = 1e-12
VERIFY_CHUNK = 100_000

# pairs checked by `verify`: the ones invoked in the bounds plus two variants of the same functionals
VERIFY_PAIRS = tuple(INVOKED_LEMMA_PAIRS) + ((Fraction(-5, 8), Fraction(0)), (Fraction(-15, 16), Fraction(0)))

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunManifest:
    command: str
    parameters: dict
    seed: int | None
    version: str
    timestamp: str | None

    @classmethod
    def create(cls, command: str, parameters: dict, seed: int | None = None) -> "RunManifest":
        return cls(command, parameters, seed, __version__, _timestamp())

    def to_dict(self) -> dict:
        return asdict(self)


def _timestamp() -> str | None:
    # wall-clock time would break byte-identical reruns
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is None:
        return None
    return datetime.fromtimestamp(int(epoch), tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


# formatting -----------------------------------------------------------------

_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def format_coefficient(p: Polynomial, k: int, style: str = "unicode") -> str:
    """``a_k`` with the coefficient of ``c_{k-1}`` pulled out front when it is not 1."""
    lead = p.coefficient(tuple(1 if i == k - 2 else 0 for i in range(4))) if k >= 4 else Fraction(1)
    if lead in (0, 1):
        return p.format(style)
    inner = (p / lead).format(style)
    if style == "latex":
        q = Fraction(lead)
        head = f"\\frac{{{q.numerator}}}{{{q.denominator}}}" if q.denominator != 1 else str(q.numerator)
        return f"{head}\\left({inner}\\right)"
    return f"({format_rational(Fraction(lead))})({inner})"


def derive_table(class_id: ClassId, latex: bool = False) -> str:
    coeffs = derive_coefficients(class_id, 5)
    if latex:
        rows = [f"  a_{k} &= {format_coefficient(p, k, 'latex')}" for k, p in enumerate(coeffs, 2)]
        return "\\begin{aligned}\n" + " \\\\\n".join(rows) + "\n\\end{aligned}\n"
    name = get_class(class_id)
    lines = [f"class: {class_id.value} ({name.symbol}), {name.relation_text}"]
    lines += [f"a{str(k).translate(_SUB)} = {format_coefficient(p, k)}" for k, p in enumerate(coeffs, 2)]
    return "\n".join(lines) + "\n"


def _json(obj: Any) -> str:
    return json.dumps(obj, indent=2, default=_json_default) + "\n"


def _json_default(o: Any) -> Any:
    if isinstance(o, Fraction):
        return format_rational(o)
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, (tuple, set)):
        return list(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def bound_text(report) -> str:
    lines = [f"class: {report.class_id.value}"]
    if report.exact is not None:
        lines.append(f"upper bound: {format_rational(report.exact)} = {report.upper_bound!r}")
    elif report.closed_form is not None:
        lines.append(f"upper bound: {report.closed_form} = {report.upper_bound!r}")
    else:
        lines.append(f"upper bound: {report.upper_bound!r}")
    lines.append("stages:")
    lines += [f"  {i}. {s.label}" for i, s in enumerate(report.stages)]
    lines.append("steps:")
    for i, s in enumerate(report.steps, 1):
        lines.append(f"  {i}. [{s.status}] {s.description} ({s.verification.value}; sampled excess {s.sampled_excess:.3g})")
    lines.append("lemma invocations:")
    for inv in report.lemma_invocations:
        v = inv.verdict
        alt = "".join(f"; alternate ({a.mu}, {a.nu}) -> {a.region.value}, Phi={a.phi}" for a in inv.alternates)
        lines.append(f"  {inv.expression}: (mu, nu) = ({v.mu}, {v.nu}) -> {v.region.value}, Phi={v.phi}{alt}")
    ev = report.optimizer_evidence
    if ev and "certified_max" in ev:
        lines.append(f"optimizer: max h = {ev['certified_max']!r} at {ev['argmax']}")
        for e in ev["boundary"]:
            lines.append(f"  edge {e['edge']}: {e['value']!r} at {e['argmax']}")
        for p in ev["interior"]["rejected"]:
            lines.append(f"  rejected critical point ({p['x']:.6g}, {p['y']:.6g}): {p['reason']}")
        g = ev["grid"]
        lines.append(f"  grid {g['resolution']}: max {g['grid_max']!r}, slack {g['slack']:.3g}, ok={g['ok']}")
    lines += [f"note: {n}" for n in report.notes]
    return "\n".join(lines) + "\n"


# verify ---------------------------------------------------------------------


@lru_cache(maxsize=None)
def certified_bound(class_id: ClassId) -> float:
    return bound_class(class_id).upper_bound


def run_verify(samples: int, seed: int) -> tuple[str, int]:
    """Monte-Carlo soundness suites; returns the summary text and the violation count."""
    rng = np.random.default_rng(seed)
    carlson_bad = 0
    lemma_max = {p: 0.0 for p in VERIFY_PAIRS}
    lemma_bad = {p: 0 for p in VERIFY_PAIRS}
    bound_max = {c: 0.0 for c in ClassId}
    bound_bad = {c: 0 for c in ClassId}
    first: list[str] = []
    phis = {p: classify_region(*p) for p in VERIFY_PAIRS}
    bounds = {c: certified_bound(c) for c in ClassId}

    def note(kind: str, idx: int, c: np.ndarray) -> None:
        if len(first) < 10:
            first.append(f"  {kind}: sample {idx}, c = {[complex(v) for v in c]}")

    done = 0
    while done < samples:
        n = min(VERIFY_CHUNK, samples - done)
        c, _ = sample_schwarz_array(rng, n)
        bad = carlson_violations(c, CARLSON_TOL)
        carlson_bad += int(bad.sum())
        for i in np.flatnonzero(bad)[:3]:
            note("carlson", done + int(i), c[i])
        for p in VERIFY_PAIRS:
            v = psi_eval(c, *p)
            lemma_max[p] = max(lemma_max[p], float(v.max()))
            phi = phis[p].phi
            over = v > float(phi) + LEMMA_TOL if phi is not None else np.ones(n, bool)
            lemma_bad[p] += int(over.sum())
            for i in np.flatnonzero(over)[:3]:
                note(f"psi({p[0]}, {p[1]})", done + int(i), c[i])
        for cid in ClassId:
            v = np.abs(eval_hankel3(cid, c))
            bound_max[cid] = max(bound_max[cid], float(v.max()))
            over = v > bounds[cid] + BOUND_TOL
            bound_bad[cid] += int(over.sum())
            for i in np.flatnonzero(over)[:3]:
                note(f"bound {cid.value}", done + int(i), c[i])
        done += n

    lines = [f"verify: samples={samples} seed={seed}"]
    lines.append(f"carlson inequalities (tol {CARLSON_TOL:g}): {carlson_bad} violations")
    for p in VERIFY_PAIRS:
        v = phis[p]
        lines.append(
            f"psi <= Phi at ({p[0]}, {p[1]}) [{v.region.value}, Phi={v.phi}] (tol {LEMMA_TOL:g}): "
            f"max psi {lemma_max[p]:.12f}, {lemma_bad[p]} violations"
        )
    for cid in ClassId:
        lines.append(
            f"|H3(1)| <= {bounds[cid]:.12f} for {cid.value}: max {bound_max[cid]:.12f}, {bound_bad[cid]} violations"
        )
    total = carlson_bad + sum(lemma_bad.values()) + sum(bound_bad.values())
    if first:
        lines.append("offending samples:")
        lines += first
    lines.append(f"total: {total} violations")
    return "\n".join(lines) + "\n", total


# grid export ----------------------------------------------------------------


def grid_csv(resolution: int, manifest: RunManifest | None = None) -> str:
    X, Y = omega_grid(resolution)
    H = np.asarray(H_STARLIKE.evaluate(X, Y), dtype=float)
    buf = io.StringIO()
    if manifest is not None:
        buf.write("# " + json.dumps(manifest.to_dict()) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y", "h"])
    for x, y, h in zip(X, Y, H):
        w.writerow([f"{x:.17g}", f"{y:.17g}", f"{h + 0.0:.17g}"])
    return buf.getvalue()


# argument handling ----------------------------------------------------------


def _positive_int(minimum: int):
    def parse(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
        if v < minimum:
            raise argparse.ArgumentTypeError(f"must be at least {minimum}, got {v}")
        return v

    return parse


def _unit_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not 0 < v <= 1:
        raise argparse.ArgumentTypeError("must lie in (0, 1]")
    return v


def _seed(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("seed must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hankel3", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", help="write output to this path instead of stdout")
        p.add_argument("--config", help="key=value file presetting options")

    p = sub.add_parser("derive", help="print a2..a5 in terms of the Schwarz coefficients")
    p.add_argument("--class", dest="class_id", choices=CLASS_CHOICES, required=True)
    p.add_argument("--latex", action="store_true")
    common(p)

    p = sub.add_parser("bound", help="run the inequality chain for one class")
    p.add_argument("--class", dest="class_id", choices=CLASS_CHOICES, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--samples", type=_positive_int(1), default=10_000, help="samples for the monotonicity replay")
    p.add_argument("--seed", type=_seed)
    common(p)

    p = sub.add_parser("verify", help="Monte-Carlo soundness suites")
    p.add_argument("--samples", type=_positive_int(1), default=100_000)
    p.add_argument("--seed", type=_seed)
    common(p)

    p = sub.add_parser("search", help="empirical lower bound by stochastic search")
    p.add_argument("--class", dest="class_id", choices=CLASS_CHOICES, required=True)
    p.add_argument("--budget", type=_positive_int(1), default=100_000)
    p.add_argument("--refine-iters", dest="refine_iters", type=_positive_int(0), default=200)
    p.add_argument("--step-scale", dest="step_scale", type=_unit_float, default=0.25)
    p.add_argument("--seed", type=_seed)
    common(p)

    p = sub.add_parser("grid-export", help="CSV of h(x, y) on a grid over the domain")
    p.add_argument("--resolution", type=_positive_int(2), default=201)
    common(p)
    return parser


def _read_config(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for n, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _config_argv(command: str, config: dict[str, str], parser: argparse.ArgumentParser) -> list[str]:
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction)).choices[command]
    dests = {a.dest: a for a in sub._actions if a.option_strings}
    argv: list[str] = []
    for key, value in config.items():
        if key == "class":
            key = "class_id"
        action = dests.get(key)
        if action is None or key in ("config", "help"):
            raise UsageError(f"unknown config key {key!r} for {command}")
        flag = action.option_strings[0]
        if isinstance(action, argparse._StoreTrueAction):
            if value.lower() in ("1", "true", "yes", "on"):
                argv.append(flag)
        else:
            argv += [flag, value]
    return argv


def parse_args(argv: Sequence[str]) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            config = _read_config(args.config)
        except OSError as exc:
            parser.error(f"cannot read config: {exc}")
        try:
            preset = _config_argv(args.command, config, parser)
        except UsageError as exc:
            parser.error(str(exc))
        # config first so explicit flags win
        args = parser.parse_args([args.command, *preset, *argv[argv.index(args.command) + 1:]])
    if getattr(args, "seed", "absent") is None:
        env = os.environ.get("HANKEL_SEED")
        try:
            args.seed = _seed(env) if env is not None else 0
        except argparse.ArgumentTypeError as exc:
            parser.error(f"HANKEL_SEED: {exc}")
    return args


def _params(args: argparse.Namespace) -> dict:
    skip = {"command", "out", "config", "json", "seed"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def run(args: argparse.Namespace) -> int:
    cmd = args.command
    if cmd == "derive":
        _emit(derive_table(ClassId(args.class_id), args.latex), args.out)
        return EXIT_OK

    if cmd == "bound":
        report = bound_class(args.class_id, samples=args.samples, seed=args.seed)
        if args.json:
            manifest = RunManifest.create(cmd, _params(args), args.seed)
            _emit(_json({"manifest": manifest.to_dict(), **report.to_dict()}), args.out)
        else:
            _emit(bound_text(report), args.out)
        return EXIT_OK

    if cmd == "verify":
        text, total = run_verify(args.samples, args.seed)
        _emit(text, args.out)
        return EXIT_OK if total == 0 else EXIT_FAIL

    if cmd == "search":
        cfg = SearchConfig(ClassId(args.class_id), args.budget, args.refine_iters, args.seed, args.step_scale)
        result = search(cfg)
        row = gap_report([result], [cfg.class_id])[0]
        manifest = RunManifest.create(cmd, _params(args), args.seed)
        _emit(_json({"manifest": manifest.to_dict(), "result": result.to_dict(), "gap": row.to_dict()}), args.out)
        return EXIT_OK if result.within_bound else EXIT_FAIL

    if cmd == "grid-export":
        manifest = RunManifest.create(cmd, _params(args))
        _emit(grid_csv(args.resolution, manifest), args.out)
        return EXIT_OK

    raise AssertionError(cmd)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return run(args)
    except PipelineFailure as exc:
        print(f"pipeline failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
