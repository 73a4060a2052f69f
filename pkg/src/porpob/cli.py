"""Command-line frontend.

Subcommands:

  estimate    point estimates (RoE / PoR / PoB) from a CSV dataset, or the
              exact finite-population metrics of an outcome table (--oracle)
  bounds      distribution-free interval bounds for one ranking or action
  simulate    seeded replications of one metric under a built-in or
              user-configured synthetic family
  sweep-k     error-vs-K table for the K-parametric family C
  bootstrap   stratified percentile bootstrap intervals

Output is a human table (default) or a canonical JSON document (--format
json); identical flags and seed produce byte-identical JSON. Exit codes:
0 success, 2 usage error, 3 data validation error, 4 internal consistency
error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .bounds import GridConfig, pob_bounds, por_bounds
from .core import (
    InternalConsistencyError,
    ValidationError,
    all_rankings,
    order_statistic_index,
    validate_ranking,
)
from .estimators import (
    DEFAULT_FACTORIAL_CAP,
    estimate_pob,
    estimate_por,
    estimate_roe,
    exact_pob,
    exact_por,
)
from .inference import BootstrapConfig, bootstrap_ci
from .io import (
    LabelMap,
    MetricRecord,
    ResultDocument,
    dumps_results,
    load_csv,
    load_po_matrix_csv,
)
from .metrics import KINDS, POINT_KINDS, StatisticSpec
from .scm_sim import PRESET_NAMES, ScmSpec, analytic_truth, preset, run_replications

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_INTERNAL = 4


class _UsageError(Exception):
    pass


# ------------------------------------------------------------------ parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="porpob",
        description="Counterfactual decision metrics over potential outcomes.",
    )
    parser.add_argument("--version", action="version", version=f"porpob {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output_flags(p):
        p.add_argument("--format", choices=("table", "json"), default="table")
        p.add_argument("--out", default=None, help="write the report here instead of stdout")

    def add_grid_flags(p):
        p.add_argument("--grid", choices=("exact", "uniform"), default="exact")
        p.add_argument("--grid-size", type=int, default=101, metavar="M")
        p.add_argument(
            "--grid-range", type=float, nargs=2, default=None, metavar=("LO", "HI")
        )

    p = sub.add_parser("estimate", help="point estimates from a dataset")
    p.add_argument("--input", required=True)
    p.add_argument("--ranking", default=None, help="comma list of action labels")
    p.add_argument("--action", default=None, help="one action label")
    p.add_argument("--all", action="store_true", help="every ranking and action")
    p.add_argument("--oracle", action="store_true", help="input is an outcome table")
    p.add_argument("--factorial-cap", type=int, default=DEFAULT_FACTORIAL_CAP)
    add_output_flags(p)

    p = sub.add_parser("bounds", help="distribution-free interval bounds")
    p.add_argument("--input", required=True)
    p.add_argument("--ranking", default=None)
    p.add_argument("--action", default=None)
    add_grid_flags(p)
    add_output_flags(p)

    p = sub.add_parser("simulate", help="seeded replications of one metric")
    p.add_argument("--scm", choices=PRESET_NAMES, default=None)
    p.add_argument("--scm-config", default=None, help="JSON file holding a spec")
    p.add_argument("--k", type=int, default=None, help="K for the C preset")
    p.add_argument("--n-per-arm", type=int, required=True)
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--metric", choices=KINDS, default="por")
    p.add_argument("--ranking", default=None, help="comma list of action ids")
    p.add_argument("--action", default=None)
    add_grid_flags(p)
    add_output_flags(p)

    p = sub.add_parser("sweep-k", help="error vs K for the C preset")
    p.add_argument("--scm", choices=("C",), default="C")
    p.add_argument("--k-list", required=True, help="comma list, e.g. 3,5,10,20")
    p.add_argument("--n-per-arm", type=int, required=True)
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--metric", choices=("por", "pob"), default="por")
    add_output_flags(p)

    p = sub.add_parser("bootstrap", help="percentile bootstrap intervals")
    p.add_argument("--input", required=True)
    p.add_argument("--statistic", choices=KINDS, default=None)
    p.add_argument("--ranking", default=None)
    p.add_argument("--action", default=None)
    p.add_argument("--all", action="store_true", help="full RoE/PoR/PoB report")
    p.add_argument("--bootstrap", type=int, default=1000, metavar="B")
    p.add_argument("--level", type=float, default=0.95)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--factorial-cap", type=int, default=DEFAULT_FACTORIAL_CAP)
    add_grid_flags(p)
    add_output_flags(p)

    return parser


def _grid_from_args(args) -> GridConfig:
    if args.grid == "exact":
        return GridConfig.exact()
    span = None if args.grid_range is None else tuple(args.grid_range)
    return GridConfig.uniform(args.grid_size, span)


def _resolve_ranking(text: str, labels: LabelMap) -> tuple[int, ...]:
    try:
        ids = tuple(labels.id_for(token.strip()) for token in text.split(","))
        return validate_ranking(ids, len(labels))
    except ValidationError as exc:
        raise _UsageError(str(exc)) from None


def _resolve_action(text: str, labels: LabelMap) -> int:
    try:
        return labels.id_for(text.strip())
    except ValidationError as exc:
        raise _UsageError(str(exc)) from None


def _ranking_labels(ranking, labels: LabelMap) -> list[str]:
    return [labels.label_for(a) for a in ranking]


def _check_cap(k: int, cap: int) -> None:
    if k > cap:
        raise _UsageError(
            f"enumerating {k}! rankings exceeds the cap of {cap}!;"
            f" raise --factorial-cap to allow it"
        )


# ------------------------------------------------------------- subcommands


def _cmd_estimate(args) -> ResultDocument:
    records: list[MetricRecord] = []
    best_meta: dict = {}
    if args.oracle:
        matrix, labels = load_po_matrix_csv(args.input)
        k = matrix.k
        for action in range(1, k + 1):
            records.append(
                MetricRecord(
                    kind="roe",
                    arguments={"action": labels.label_for(action)},
                    point=float(matrix.outcomes[:, action - 1].mean()),
                )
            )
        rankings = []
        if args.ranking:
            rankings.append(_resolve_ranking(args.ranking, labels))
        if args.all:
            _check_cap(k, args.factorial_cap)
            rankings = list(all_rankings(k))
        for ranking in rankings:
            res = exact_por(matrix, ranking)
            records.append(
                MetricRecord(
                    kind="por",
                    arguments={"ranking": _ranking_labels(ranking, labels)},
                    point=res.value,
                    tie_rows=res.tie_rows,
                )
            )
        actions = []
        if args.action:
            actions.append(_resolve_action(args.action, labels))
        if args.all:
            actions = list(range(1, k + 1))
        for action in actions:
            res = exact_pob(matrix, action)
            records.append(
                MetricRecord(
                    kind="pob",
                    arguments={"action": labels.label_for(action)},
                    point=res.value,
                    tie_rows=res.tie_rows,
                )
            )
    else:
        study, labels = load_csv(args.input)
        roe = estimate_roe(study)
        for action in study.actions:
            records.append(
                MetricRecord(
                    kind="roe",
                    arguments={"action": labels.label_for(action)},
                    point=roe.means[action],
                )
            )
        best_meta["roe_ranking"] = _ranking_labels(roe.ranking_by_mean, labels)
        rankings = []
        if args.ranking:
            rankings.append(_resolve_ranking(args.ranking, labels))
        if args.all:
            _check_cap(study.k, args.factorial_cap)
            rankings = list(all_rankings(study.k))
        for ranking in rankings:
            est = estimate_por(study, ranking)
            records.append(
                MetricRecord(
                    kind="por",
                    arguments={"ranking": _ranking_labels(ranking, labels)},
                    point=est.value,
                )
            )
        actions = []
        if args.action:
            actions.append(_resolve_action(args.action, labels))
        if args.all:
            actions = list(study.actions)
        for action in actions:
            est = estimate_pob(study, action)
            records.append(
                MetricRecord(
                    kind="pob",
                    arguments={"action": labels.label_for(action)},
                    point=est.value,
                )
            )
        if args.all:
            por_records = [r for r in records if r.kind == "por"]
            pob_records = [r for r in records if r.kind == "pob"]
            best_meta["best_ranking"] = max(
                por_records, key=lambda r: r.point
            ).arguments["ranking"]
            best_meta["best_action"] = max(
                pob_records, key=lambda r: r.point
            ).arguments["action"]
    metadata = {
        "tool": "porpob",
        "version": __version__,
        "command": "estimate",
        "options": {
            "input": str(args.input),
            "ranking": args.ranking,
            "action": args.action,
            "all": args.all,
            "oracle": args.oracle,
        },
    }
    metadata.update(best_meta)
    return ResultDocument(metadata=metadata, records=records)


def _cmd_bounds(args) -> ResultDocument:
    study, labels = load_csv(args.input)
    grid = _grid_from_args(args)
    if bool(args.ranking) == bool(args.action):
        raise _UsageError("bounds needs exactly one of --ranking or --action")
    records = []
    if args.ranking:
        ranking = _resolve_ranking(args.ranking, labels)
        interval = por_bounds(study, ranking, grid)
        records.append(
            MetricRecord(
                kind="por",
                arguments={"ranking": _ranking_labels(ranking, labels)},
                interval=(interval.lower, interval.upper),
            )
        )
    else:
        action = _resolve_action(args.action, labels)
        interval = pob_bounds(study, action, grid)
        records.append(
            MetricRecord(
                kind="pob",
                arguments={"action": labels.label_for(action)},
                interval=(interval.lower, interval.upper),
            )
        )
    metadata = {
        "tool": "porpob",
        "version": __version__,
        "command": "bounds",
        "options": {
            "input": str(args.input),
            "ranking": args.ranking,
            "action": args.action,
            "grid": args.grid,
            "grid_size": args.grid_size,
            "grid_range": args.grid_range,
        },
    }
    return ResultDocument(metadata=metadata, records=records)


def _spec_from_args(args) -> ScmSpec:
    if (args.scm is None) == (args.scm_config is None):
        raise _UsageError("provide exactly one of --scm or --scm-config")
    if args.scm_config is not None:
        with open(args.scm_config) as fh:
            return ScmSpec.from_dict(json.load(fh))
    return preset(args.scm, k=args.k)


def _statistic_from_args(kind: str, args, labels: LabelMap) -> StatisticSpec:
    if kind in ("por", "por_lower", "por_upper"):
        if args.ranking is None:
            ranking = tuple(range(1, len(labels) + 1))
        else:
            ranking = _resolve_ranking(args.ranking, labels)
        return StatisticSpec(kind, ranking=ranking)
    action = 1 if args.action is None else _resolve_action(args.action, labels)
    return StatisticSpec(kind, action=action)


def _statistic_arguments(stat: StatisticSpec, labels: LabelMap) -> dict:
    if stat.ranking is not None:
        return {"ranking": _ranking_labels(stat.ranking, labels)}
    return {"action": labels.label_for(stat.action)}


def _cmd_simulate(args) -> ResultDocument:
    spec = _spec_from_args(args)
    labels = LabelMap.identity(spec.k)
    stat = _statistic_from_args(args.metric, args, labels)
    grid = _grid_from_args(args)
    summary = run_replications(
        spec, args.n_per_arm, args.runs, args.seed, stat, grid=grid
    )
    extra = {
        "runs": args.runs,
        "n_per_arm": args.n_per_arm,
        "values": [float(v) for v in summary.values],
    }
    if stat.kind in POINT_KINDS:
        try:
            truth = analytic_truth(spec, stat)
            extra["truth"] = truth.value
            extra["truth_method"] = truth.method
        except ValidationError:
            pass
    record = MetricRecord(
        kind=stat.kind,
        arguments=_statistic_arguments(stat, labels),
        point=summary.mean,
        ci={"level": 0.95, "lower": summary.ci_lower, "upper": summary.ci_upper},
        extra=extra,
    )
    metadata = {
        "tool": "porpob",
        "version": __version__,
        "command": "simulate",
        "seed": args.seed,
        "options": {
            "scm": args.scm,
            "scm_config": args.scm_config,
            "spec": spec.to_dict(),
            "metric": args.metric,
            "ranking": args.ranking,
            "action": args.action,
            "runs": args.runs,
            "n_per_arm": args.n_per_arm,
            "grid": args.grid,
        },
    }
    return ResultDocument(metadata=metadata, records=[record])


def _cmd_sweep_k(args) -> ResultDocument:
    try:
        k_list = [int(tok) for tok in args.k_list.split(",")]
    except ValueError:
        raise _UsageError(f"--k-list {args.k_list!r} is not a comma list of integers")
    records = []
    for k in k_list:
        spec = preset("C", k=k)
        labels = LabelMap.identity(k)
        if args.metric == "por":
            stat = StatisticSpec.por(tuple(range(1, k + 1)))
        else:
            stat = StatisticSpec.pob(1)
        truth = analytic_truth(spec, stat).value
        summary = run_replications(spec, args.n_per_arm, args.runs, args.seed, stat)
        errors = [abs(float(v) - truth) for v in summary.values]
        ordered = sorted(errors)

        def order_stat(q: float) -> float:
            return ordered[order_statistic_index(len(ordered), q) - 1]

        records.append(
            MetricRecord(
                kind=stat.kind,
                arguments={"k": k, **_statistic_arguments(stat, labels)},
                point=float(sum(errors) / len(errors)),
                ci={"level": 0.95, "lower": order_stat(0.025), "upper": order_stat(0.975)},
                extra={
                    "truth": truth,
                    "mean_estimate": summary.mean,
                    "values": errors,
                },
            )
        )
    metadata = {
        "tool": "porpob",
        "version": __version__,
        "command": "sweep-k",
        "seed": args.seed,
        "options": {
            "scm": args.scm,
            "k_list": k_list,
            "metric": args.metric,
            "runs": args.runs,
            "n_per_arm": args.n_per_arm,
        },
    }
    return ResultDocument(metadata=metadata, records=records)


def _cmd_bootstrap(args) -> ResultDocument:
    study, labels = load_csv(args.input)
    grid = _grid_from_args(args)
    cfg = BootstrapConfig(replicates=args.bootstrap, level=args.level, seed=args.seed)
    records = []
    if args.all:
        _check_cap(study.k, args.factorial_cap)
        stats = [StatisticSpec.roe(a) for a in study.actions]
        stats += [StatisticSpec.por(r) for r in all_rankings(study.k)]
        stats += [StatisticSpec.pob(a) for a in study.actions]
        for stat in stats:
            result = bootstrap_ci(study, stat, cfg, grid=grid)
            records.append(
                MetricRecord(
                    kind=stat.kind,
                    arguments=_statistic_arguments(stat, labels),
                    point=result.point,
                    ci={"level": cfg.level, "lower": result.lower, "upper": result.upper},
                    extra={"replicate_mean": result.replicate_mean},
                )
            )
    else:
        if args.statistic is None:
            raise _UsageError("bootstrap needs --statistic or --all")
        stat = _statistic_from_args(args.statistic, args, labels)
        result = bootstrap_ci(study, stat, cfg, grid=grid)
        records.append(
            MetricRecord(
                kind=stat.kind,
                arguments=_statistic_arguments(stat, labels),
                point=result.point,
                ci={"level": cfg.level, "lower": result.lower, "upper": result.upper},
                extra={
                    "replicate_mean": result.replicate_mean,
                    "replicates": [float(v) for v in result.replicates],
                },
            )
        )
    metadata = {
        "tool": "porpob",
        "version": __version__,
        "command": "bootstrap",
        "seed": args.seed,
        "options": {
            "input": str(args.input),
            "statistic": args.statistic,
            "ranking": args.ranking,
            "action": args.action,
            "all": args.all,
            "bootstrap": args.bootstrap,
            "level": args.level,
            "grid": args.grid,
        },
    }
    return ResultDocument(metadata=metadata, records=records)


# --------------------------------------------------------------- rendering


def _format_args(arguments: dict) -> str:
    parts = []
    for key, value in arguments.items():
        if isinstance(value, list):
            value = ",".join(str(v) for v in value)
        parts.append(f"{key}={value}")
    return " ".join(parts)


def render_table(doc: ResultDocument) -> str:
    lines = [f"porpob {doc.metadata.get('command', '')} report"]
    header = f"{'kind':<10} {'arguments':<34} {'point':>10} {'interval':>19} {'ci':>21}"
    lines.append(header)
    lines.append("-" * len(header))
    for record in doc.records:
        point = "" if record.point is None else f"{record.point:.6f}"
        interval = (
            ""
            if record.interval is None
            else f"[{record.interval[0]:.4f}, {record.interval[1]:.4f}]"
        )
        ci = (
            ""
            if record.ci is None
            else f"[{record.ci['lower']:.4f}, {record.ci['upper']:.4f}]"
        )
        tie = "" if not record.tie_rows else f"  ties={record.tie_rows}"
        lines.append(
            f"{record.kind:<10} {_format_args(record.arguments):<34} {point:>10}"
            f" {interval:>19} {ci:>21}{tie}"
        )
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------- main


_DISPATCH = {
    "estimate": _cmd_estimate,
    "bounds": _cmd_bounds,
    "simulate": _cmd_simulate,
    "sweep-k": _cmd_sweep_k,
    "bootstrap": _cmd_bootstrap,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = _DISPATCH[args.command](args)
    except _UsageError as exc:
        print(f"porpob: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalConsistencyError as exc:
        print(f"porpob: internal consistency error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValidationError, OSError) as exc:
        print(f"porpob: {exc}", file=sys.stderr)
        return EXIT_DATA
    text = dumps_results(doc) if args.format == "json" else render_table(doc)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
