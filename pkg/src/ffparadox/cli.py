"""Command-line driver.

Subcommands:

* ``predict``    - closed-form prediction for one (alpha, k_min, k_max), as JSON.
* ``sweep``      - CSV grid of predictions over alpha and k_max values.
* ``experiment`` - CSV of simulated-vs-predicted variance-to-mean ratios for
                   networks generated under models A, B and KALISKY.
* ``generate``   - write one realized network as an edge-list file.
* ``analyze``    - full metrics bundle for an external edge-list file, as JSON.

Exit codes: 0 success, 1 usage error, 2 domain error.  All randomness comes
from explicit seed flags; identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import fit, metrics, netgen, powerlaw
from .errors import AllIsolatedError, DomainError
from .netgen import Model
from .powerlaw import Branch, PowerLawSpec

DEFAULT_KMAX_GRID = "10,32,100,316,1000"
DEFAULT_SEEDS = "0,1,2,3,4"

# Tags for deriving independent sub-streams from one user seed.  The degree
# sample (tag 0) depends only on (seed, k_max), so all models in a cell
# realize the same target sequence.
_TAG_SAMPLE = 0
_TAG_PARITY = 4
_MODEL_TAGS = {Model.A: 1, Model.B: 2, Model.KALISKY: 3}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass(frozen=True)
class SweepRow:
    alpha: float
    k_min: float
    k_max: float
    mean_k: float
    k_ff: float
    var_to_mean: float
    branch: Branch


@dataclass(frozen=True)
class ExperimentRow:
    model: Model
    seed: int
    n: int
    k_max: float
    alpha_hat: float | None
    empirical_mean: float | None
    empirical_variance: float | None
    empirical_ratio: float | None
    predicted_ratio: float
    predicted_lo: float | None
    predicted_hi: float | None
    components: int | None
    giant_fraction: float | None
    error: str | None = None


def _sub_seed(seed: int, k_max: float, tag: int) -> int:
    scaled = int(round(min(k_max, 2**40) * 1e6))
    ss = np.random.SeedSequence([seed, scaled, tag])
    return int(ss.generate_state(1)[0])


def _parse_values(text: str, name: str) -> list[float]:
    """Parse '1,2,3' lists or 'start:stop:step' ranges of floats."""
    text = text.strip()
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise ValueError
            start, stop, step = (float(p) for p in parts)
            if step <= 0 or stop < start:
                raise ValueError
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            return [start + i * step for i in range(count)]
        values = [float(p) for p in text.split(",") if p.strip()]
        if not values:
            raise ValueError
        return values
    except ValueError:
        raise UsageError(
            f"cannot parse {name} {text!r}: expected 'a,b,c' or 'start:stop:step'"
        ) from None


def _parse_kmax(text: str) -> float:
    if text.strip().lower() in ("inf", "infinite"):
        return powerlaw.INFINITE
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"cannot parse k_max {text!r}") from None


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return str(value)
    return str(value)


def _jsonable(value):
    if isinstance(value, float):
        if math.isnan(value):
            return None
        if math.isinf(value):
            return "inf"
    return value


def run_sweep(alphas, kmaxs, k_min: float) -> list[SweepRow]:
    rows = []
    for alpha in alphas:
        for k_max in kmaxs:
            result = powerlaw.predict(PowerLawSpec(alpha, k_min, k_max))
            rows.append(
                SweepRow(
                    alpha=alpha,
                    k_min=k_min,
                    k_max=k_max,
                    mean_k=result.mean_k,
                    k_ff=result.k_ff,
                    var_to_mean=result.var_to_mean,
                    branch=result.branch,
                )
            )
    return rows


def sweep_csv(rows) -> str:
    lines = ["alpha,k_min,k_max,mean_k,k_ff,var_to_mean,branch"]
    for r in rows:
        lines.append(
            f"{_fmt(r.alpha)},{_fmt(r.k_min)},{_fmt(r.k_max)},"
            f"{_fmt(r.mean_k)},{_fmt(r.k_ff)},{_fmt(r.var_to_mean)},{r.branch.value}"
        )
    return "\n".join(lines) + "\n"


def run_experiment(
    alpha: float,
    k_min: float,
    kmaxs,
    n: int,
    models,
    seeds,
    block_size: int = 32,
) -> list[ExperimentRow]:
    """Sample -> realize -> measure -> fit for every (k_max, seed, model) cell.

    Within a cell group (fixed k_max) the per-seed degree samples are shared
    by all models, the scaling parameter is fitted on the pre-rounding
    continuous sample, and the predicted band spans the fitted values across
    seeds.
    """
    if n < 100:
        raise UsageError("n must be at least 100")
    if not models:
        raise UsageError("at least one model is required")
    if not seeds:
        raise UsageError("at least one seed is required")

    rows: list[ExperimentRow] = []
    for k_max in kmaxs:
        spec = PowerLawSpec(alpha, k_min, k_max)
        predicted = powerlaw.predict(spec).var_to_mean
        alpha_hats: dict[int, float | None] = {}
        cell_stats: dict[tuple, dict] = {}
        for seed in seeds:
            sample = powerlaw.sample_continuous(
                spec, n, _sub_seed(seed, k_max, _TAG_SAMPLE)
            )
            fit_error = None
            try:
                alpha_hats[seed] = fit.fit_alpha(
                    sample, k_min=k_min, k_max=k_max
                ).alpha_hat
            except DomainError as exc:
                alpha_hats[seed] = None
                fit_error = exc.code
            degrees = np.floor(sample + 0.5).astype(np.int64)
            seq = netgen.make_graphical(
                degrees, seed=_sub_seed(seed, k_max, _TAG_PARITY)
            )
            for model in models:
                key = (model, seed)
                try:
                    g = netgen.generate(
                        seq, model, _sub_seed(seed, k_max, _MODEL_TAGS[model]),
                        block_size=block_size,
                    )
                    stats = metrics.stats_from_degrees(g.degrees())
                    comps = metrics.components(g)
                    cell_stats[key] = {
                        "stats": stats,
                        "components": len(comps),
                        "giant": comps[0] / g.n,
                        "error": fit_error,
                    }
                except DomainError as exc:
                    cell_stats[key] = {"error": exc.code}

        fitted = [a for a in alpha_hats.values() if a is not None]
        if fitted:
            band = [
                powerlaw.predict(PowerLawSpec(a, k_min, k_max)).var_to_mean
                for a in (min(fitted), max(fitted))
            ]
            lo, hi = min(band), max(band)
        else:
            lo = hi = None

        for model in models:
            for seed in seeds:
                cell = cell_stats[(model, seed)]
                if "stats" in cell:
                    stats = cell["stats"]
                    rows.append(
                        ExperimentRow(
                            model=model,
                            seed=seed,
                            n=n,
                            k_max=k_max,
                            alpha_hat=alpha_hats[seed],
                            empirical_mean=stats.mean_k,
                            empirical_variance=stats.variance,
                            empirical_ratio=stats.gap,
                            predicted_ratio=predicted,
                            predicted_lo=lo,
                            predicted_hi=hi,
                            components=cell["components"],
                            giant_fraction=cell["giant"],
                            error=cell["error"],
                        )
                    )
                else:
                    rows.append(
                        ExperimentRow(
                            model=model,
                            seed=seed,
                            n=n,
                            k_max=k_max,
                            alpha_hat=alpha_hats[seed],
                            empirical_mean=None,
                            empirical_variance=None,
                            empirical_ratio=None,
                            predicted_ratio=predicted,
                            predicted_lo=lo,
                            predicted_hi=hi,
                            components=None,
                            giant_fraction=None,
                            error=cell["error"],
                        )
                    )
    return rows


def experiment_csv(rows) -> str:
    header = (
        "kind,model,seed,n,k_max,alpha_hat,empirical_mean,empirical_variance,"
        "empirical_ratio,predicted_ratio,predicted_lo,predicted_hi,"
        "components,giant_fraction,error"
    )
    lines = [header]
    groups: dict[tuple, list[ExperimentRow]] = {}
    for r in rows:
        lines.append(
            f"cell,{r.model.value},{r.seed},{r.n},{_fmt(r.k_max)},"
            f"{_fmt(r.alpha_hat)},{_fmt(r.empirical_mean)},"
            f"{_fmt(r.empirical_variance)},{_fmt(r.empirical_ratio)},"
            f"{_fmt(r.predicted_ratio)},{_fmt(r.predicted_lo)},"
            f"{_fmt(r.predicted_hi)},{_fmt(r.components)},"
            f"{_fmt(r.giant_fraction)},{r.error or ''}"
        )
        groups.setdefault((r.model, r.k_max), []).append(r)
    for (model, k_max), members in groups.items():
        ok = [r for r in members if r.error is None]
        if ok:
            mean_of = lambda attr: sum(getattr(r, attr) for r in ok) / len(ok)
            lines.append(
                f"summary,{model.value},,{ok[0].n},{_fmt(k_max)},,"
                f"{_fmt(mean_of('empirical_mean'))},"
                f"{_fmt(mean_of('empirical_variance'))},"
                f"{_fmt(mean_of('empirical_ratio'))},"
                f"{_fmt(ok[0].predicted_ratio)},{_fmt(ok[0].predicted_lo)},"
                f"{_fmt(ok[0].predicted_hi)},{_fmt(mean_of('components'))},"
                f"{_fmt(mean_of('giant_fraction'))},"
            )
        else:
            lines.append(
                f"summary,{model.value},,{members[0].n},{_fmt(k_max)},"
                f",,,,{_fmt(members[0].predicted_ratio)},,,,,ALL_CELLS_FAILED"
            )
    return "\n".join(lines) + "\n"


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_predict(args) -> int:
    spec = PowerLawSpec(args.alpha, args.kmin, _parse_kmax(args.kmax))
    result = powerlaw.predict(spec)
    payload = {
        "alpha": spec.alpha,
        "k_min": spec.k_min,
        "k_max": _jsonable(spec.k_max),
        "c": _jsonable(result.c),
        "mean_k": result.mean_k,
        "second_moment": result.second_moment,
        "variance": result.variance,
        "var_to_mean": result.var_to_mean,
        "k_ff": result.k_ff,
        "branch": result.branch.value,
    }
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def _cmd_sweep(args) -> int:
    alphas = _parse_values(args.alphas, "--alphas")
    kmaxs = _parse_values(args.kmaxs, "--kmaxs")
    if args.kmin < 1:
        raise UsageError("--kmin must be >= 1")
    rows = run_sweep(alphas, kmaxs, args.kmin)
    _emit(sweep_csv(rows), args.out)
    return 0


def _cmd_experiment(args) -> int:
    kmaxs = _parse_values(args.kmaxs, "--kmaxs")
    if any(math.isinf(k) for k in kmaxs):
        raise UsageError("experiment requires finite k_max values")
    try:
        models = [Model(name.strip()) for name in args.models.split(",") if name.strip()]
    except ValueError:
        raise UsageError(f"unknown model in {args.models!r}") from None
    try:
        seeds = [int(s) for s in args.seeds.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"cannot parse --seeds {args.seeds!r}") from None
    if any(s < 0 for s in seeds):
        raise UsageError("seeds must be non-negative")
    rows = run_experiment(
        args.alpha, args.kmin, kmaxs, args.n, models, seeds, args.block_size
    )
    _emit(experiment_csv(rows), args.out)
    return 0


def _cmd_generate(args) -> int:
    spec = PowerLawSpec(args.alpha, args.kmin, _parse_kmax(args.kmax))
    if args.seed < 0:
        raise UsageError("--seed must be non-negative")
    model = Model(args.model)
    sample = powerlaw.sample_degrees(
        spec, args.n, _sub_seed(args.seed, spec.k_max, _TAG_SAMPLE)
    )
    seq = netgen.make_graphical(
        sample, seed=_sub_seed(args.seed, spec.k_max, _TAG_PARITY)
    )
    g = netgen.generate(
        seq, model, _sub_seed(args.seed, spec.k_max, _MODEL_TAGS[model]),
        block_size=args.block_size,
    )
    if args.out:
        netgen.write_edge_list(g, args.out)
        report = netgen.drop_report(g, seq)
        sys.stderr.write(
            f"wrote {len(g.edges)} edges on {g.n} vertices to {args.out} "
            f"({report.total} stubs dropped)\n"
        )
    else:
        for u, v in g.edges:
            sys.stdout.write(f"{u} {v}\n")
    return 0


def _cmd_analyze(args) -> int:
    g = netgen.read_edge_list(args.path)
    if g.n == 0:
        raise AllIsolatedError("edge list is empty")
    degrees = g.degrees()
    stats = metrics.stats_from_degrees(degrees)
    comps = metrics.components(g)
    payload = {
        "n": g.n,
        "edges": len(g.edges),
        "stats": {
            "mean_k": stats.mean_k,
            "second_moment": stats.second_moment,
            "variance": stats.variance,
            "k_ff": stats.k_ff,
            "gap": stats.gap,
        },
        "components": {"count": len(comps), "sizes": comps},
        "global_efficiency": metrics.global_efficiency(g) if g.n >= 2 else None,
        "central_point_dominance": (
            metrics.central_point_dominance(g) if g.n >= 3 else None
        ),
    }
    try:
        result = fit.fit_alpha(degrees)
        payload["fit"] = {
            "alpha_hat": result.alpha_hat,
            "stderr": result.stderr,
            "k_min_used": result.k_min_used,
            "n_tail": result.n_tail,
            "ks_distance": result.ks_distance,
        }
    except DomainError as exc:
        payload["fit"] = {"error": exc.code}
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="ffparadox", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("predict", help="closed-form prediction as JSON")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--kmin", type=float, default=1.0)
    p.add_argument("--kmax", type=str, required=True, help="number or 'inf'")
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("sweep", help="prediction grid as CSV")
    p.add_argument("--alphas", type=str, required=True,
                   help="'a,b,c' or 'start:stop:step'")
    p.add_argument("--kmaxs", type=str, required=True,
                   help="'a,b,c' or 'start:stop:step'")
    p.add_argument("--kmin", type=float, default=1.0)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("experiment", help="simulation vs prediction as CSV")
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--kmin", type=float, default=1.0)
    p.add_argument("--kmaxs", type=str, default=DEFAULT_KMAX_GRID)
    p.add_argument("--n", type=int, default=10000)
    p.add_argument("--models", type=str, default="A,B,KALISKY")
    p.add_argument("--seeds", type=str, default=DEFAULT_SEEDS)
    p.add_argument("--block-size", type=int, default=32)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("generate", help="realize one network as an edge list")
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--kmin", type=float, default=1.0)
    p.add_argument("--kmax", type=str, required=True)
    p.add_argument("--n", type=int, default=10000)
    p.add_argument("--model", type=str, default="A", choices=[m.value for m in Model])
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--block-size", type=int, default=32)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("analyze", help="metrics bundle for an edge-list file")
    p.add_argument("path", type=str)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=_cmd_analyze)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 1
    except (DomainError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
