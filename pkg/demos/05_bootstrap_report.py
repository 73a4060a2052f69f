"""From a CSV of labeled observations to a full uncertainty report.

A small three-treatment dataset is written in the long CSV form, loaded back
(labels map to action ids in first-appearance order), and every metric is
bootstrapped: arms are resampled with replacement to their own sizes and the
percentile interval of the replicates is reported next to the original-sample
point estimate. The report is then serialized as a canonical JSON document.
"""

import tempfile
from pathlib import Path

import numpy as np

from porpob import (
    BootstrapConfig,
    MetricRecord,
    ResultDocument,
    StatisticSpec,
    all_rankings,
    bootstrap_ci,
    dumps_results,
    load_csv,
)

workdir = Path(tempfile.mkdtemp(prefix="porpob_demo_"))
csv_path = workdir / "treatments.csv"

rng = np.random.Generator(np.random.PCG64(99))
rows = ["action,outcome"]
for label, scale in (("S", 0.9), ("H", 1.0), ("B", 1.1)):
    for value in rng.normal(scale, 0.15, size=12):
        rows.append(f"{label},{float(value)!r}")
csv_path.write_text("\n".join(rows) + "\n")

study, labels = load_csv(csv_path)
print(f"loaded {study.k} arms from {csv_path.name}; labels {labels.labels}\n")

cfg = BootstrapConfig(replicates=1000, level=0.95, seed=7)
statistics = [StatisticSpec.roe(a) for a in study.actions]
statistics += [StatisticSpec.por(r) for r in all_rankings(study.k)]
statistics += [StatisticSpec.pob(a) for a in study.actions]

records = []
print(f"{'metric':<26} {'point':>8} {'95% interval':>20} {'rep. mean':>10}")
for stat in statistics:
    result = bootstrap_ci(study, stat, cfg)
    if stat.ranking is not None:
        arguments = {"ranking": [labels.label_for(a) for a in stat.ranking]}
        shown = ">".join(arguments["ranking"])
    else:
        arguments = {"action": labels.label_for(stat.action)}
        shown = arguments["action"]
    print(
        f"{stat.kind + ' ' + shown:<26} {result.point:>8.3f}"
        f"     [{result.lower:.3f}, {result.upper:.3f}] {result.replicate_mean:>10.3f}"
    )
    records.append(
        MetricRecord(
            kind=stat.kind,
            arguments=arguments,
            point=result.point,
            ci={"level": cfg.level, "lower": result.lower, "upper": result.upper},
            extra={"replicate_mean": result.replicate_mean},
        )
    )

doc = ResultDocument(
    metadata={"tool": "porpob", "command": "demo-05", "seed": cfg.seed},
    records=records,
)
out_path = workdir / "report.json"
out_path.write_text(dumps_results(doc))
print(f"\nwrote {len(records)} records to {out_path}")
print("first lines of the canonical document:")
print("\n".join(dumps_results(doc).splitlines()[:12]))
