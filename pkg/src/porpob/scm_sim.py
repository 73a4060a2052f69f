"""Synthetic K-arm studies from three structural families, with analytic or
large-sample ground truths and a seeded replication harness.

Families (coefficients c(1..K), subject noise U, optional second noise U'):

    additive-shift                 Y_k = c(k) + U
    scaled-noise                   Y_k = c(k) * U
    scaled-noise-plus-independent  Y_k = c(k) * U + U'

The first two are driven by a single shared noise and strictly monotone in
it, so every subject occupies the same quantile in every arm; the third adds
an independent disturbance and breaks that coupling.

RNG: numpy PCG64 seeded through SeedSequence. Arm streams are spawned from
the study seed; replication-run seeds are derived by hashing (master seed,
run index). Identical inputs give identical outputs regardless of worker
count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._parallel import map_indexed
from .core import PoMatrix, StudyData, ValidationError, order_statistic_index
from .estimators import exact_pob, exact_por
from .bounds import GridConfig
from .metrics import StatisticSpec, evaluate_statistic

FAMILIES = (
    "additive-shift",
    "scaled-noise",
    "scaled-noise-plus-independent",
)

# Subjects and seed for the simulated-table fallback of analytic_truth.
ORACLE_SUBJECTS = 1_000_000
_ORACLE_SEED = 987_654_321


@dataclass(frozen=True)
class NoiseSpec:
    """A noise distribution: uniform(lo, hi) or normal(mean, sd)."""

    kind: str
    params: tuple[float, float]

    def __post_init__(self) -> None:
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        a, b = self.params
        if self.kind == "uniform":
            if not a < b:
                raise ValidationError(f"uniform noise needs lo < hi, got {self.params}")
        elif self.kind == "normal":
            if not b > 0:
                raise ValidationError(f"normal noise needs sd > 0, got {self.params}")
        else:
            raise ValidationError(f"noise kind {self.kind!r} not in {{uniform, normal}}")

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        a, b = self.params
        if self.kind == "uniform":
            return rng.uniform(a, b, size=size)
        return rng.normal(a, b, size=size)

    def p_positive(self) -> float:
        """P(U > 0); the distributions here are continuous so P(U = 0) = 0."""
        a, b = self.params
        if self.kind == "uniform":
            if a >= 0:
                return 1.0
            if b <= 0:
                return 0.0
            return b / (b - a)
        return 0.5 * (1.0 + math.erf(a / (b * math.sqrt(2.0))))

    def mean(self) -> float:
        a, b = self.params
        return (a + b) / 2.0 if self.kind == "uniform" else a

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": list(self.params)}

    @classmethod
    def from_dict(cls, data: dict) -> "NoiseSpec":
        return cls(kind=data["kind"], params=tuple(data["params"]))


@dataclass(frozen=True)
class ScmSpec:
    """One synthetic-study configuration.

    `coeffs[k-1]` is the coefficient c(k) for action k. The third family is
    the only one that takes (and requires) `extra_noise`.
    """

    family: str
    k: int
    coeffs: tuple[float, ...]
    noise: NoiseSpec
    extra_noise: NoiseSpec | None = None

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValidationError(f"unknown family {self.family!r}")
        if self.k < 2:
            raise ValidationError("need at least two actions")
        coeffs = tuple(float(c) for c in self.coeffs)
        if len(coeffs) != self.k or not all(math.isfinite(c) for c in coeffs):
            raise ValidationError(f"coeffs must be {self.k} finite values")
        object.__setattr__(self, "coeffs", coeffs)
        needs_extra = self.family == "scaled-noise-plus-independent"
        if needs_extra and self.extra_noise is None:
            raise ValidationError(f"family {self.family} requires extra_noise")
        if not needs_extra and self.extra_noise is not None:
            raise ValidationError(f"family {self.family} takes no extra_noise")

    def coeff(self, action: int) -> float:
        return self.coeffs[action - 1]

    def outcomes(self, action: int, u: np.ndarray, u2: np.ndarray | None) -> np.ndarray:
        c = self.coeff(action)
        if self.family == "additive-shift":
            return c + u
        if self.family == "scaled-noise":
            return c * u
        return c * u + u2

    def to_dict(self) -> dict:
        data = {
            "family": self.family,
            "k": self.k,
            "coeffs": list(self.coeffs),
            "noise": self.noise.to_dict(),
        }
        if self.extra_noise is not None:
            data["extra_noise"] = self.extra_noise.to_dict()
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "ScmSpec":
        extra = data.get("extra_noise")
        return cls(
            family=data["family"],
            k=int(data["k"]),
            coeffs=tuple(data["coeffs"]),
            noise=NoiseSpec.from_dict(data["noise"]),
            extra_noise=None if extra is None else NoiseSpec.from_dict(extra),
        )


def preset(name: str, k: int | None = None) -> ScmSpec:
    """Built-in benchmark configurations.

    A: three arms scaling Unif(-0.5, 1) by (3, 2, 1); rank-preserving.
    B: three arms scaling a standard normal by (-1, -2, -3) plus an
       independent Unif(-1, 1) disturbance; breaks rank preservation.
    C: K arms scaling Unif(-1, 1) by (-1, ..., -K); rank-preserving, the
       only preset where K is adjustable.
    example1: additive shifts (1, 2, 3) of Unif(-1, 1); homogeneous effects.
    example2: three arms scaling Unif(-0.8, 1.2) by (1, 2, 3), so the
       positive-noise share is 0.6; heterogeneous effects.
    """
    fixed_k = {"A": 3, "B": 3, "example1": 3, "example2": 3}
    if name in fixed_k:
        if k is not None and k != fixed_k[name]:
            raise ValidationError(f"preset {name} is fixed at K={fixed_k[name]}")
    if name == "A":
        return ScmSpec(
            "scaled-noise", 3, (3.0, 2.0, 1.0), NoiseSpec("uniform", (-0.5, 1.0))
        )
    if name == "B":
        return ScmSpec(
            "scaled-noise-plus-independent",
            3,
            (-1.0, -2.0, -3.0),
            NoiseSpec("normal", (0.0, 1.0)),
            extra_noise=NoiseSpec("uniform", (-1.0, 1.0)),
        )
    if name == "C":
        kk = 3 if k is None else int(k)
        return ScmSpec(
            "scaled-noise",
            kk,
            tuple(-float(a) for a in range(1, kk + 1)),
            NoiseSpec("uniform", (-1.0, 1.0)),
        )
    if name == "example1":
        return ScmSpec(
            "additive-shift", 3, (1.0, 2.0, 3.0), NoiseSpec("uniform", (-1.0, 1.0))
        )
    if name == "example2":
        return ScmSpec(
            "scaled-noise", 3, (1.0, 2.0, 3.0), NoiseSpec("uniform", (-0.8, 1.2))
        )
    raise ValidationError(f"unknown preset {name!r}")


PRESET_NAMES = ("A", "B", "C", "example1", "example2")


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if seed < 0:
        raise ValidationError("seed must be a nonnegative integer")
    return seed


def derive_run_seed(master_seed: int, index: int) -> int:
    """Deterministic 64-bit seed for one replication run, hashed from
    (master seed, run index)."""
    ss = np.random.SeedSequence((_check_seed(master_seed), int(index)))
    return int(ss.generate_state(1, np.uint64)[0])


def sample_study(spec: ScmSpec, n_per_arm: int, seed: int) -> StudyData:
    """Draw `n_per_arm` independent outcomes per action.

    Arms receive independent spawned RNG streams, matching a randomized
    assignment: the observed arms share no subject-level noise.
    """
    if n_per_arm < 2:
        raise ValidationError("n_per_arm must be >= 2")
    children = np.random.SeedSequence(_check_seed(seed)).spawn(spec.k)
    arrays = {}
    for action, child in zip(range(1, spec.k + 1), children):
        rng = np.random.Generator(np.random.PCG64(child))
        u = spec.noise.sample(rng, n_per_arm)
        u2 = spec.extra_noise.sample(rng, n_per_arm) if spec.extra_noise else None
        arrays[action] = spec.outcomes(action, u, u2)
    return StudyData.from_arrays(arrays)


def sample_po_matrix(spec: ScmSpec, n_subjects: int, seed: int) -> PoMatrix:
    """Draw the joint outcome table: one noise realization per subject, all K
    columns computed from it. This is the subject-level ground truth the
    observational sampling in `sample_study` never reveals."""
    if n_subjects < 1:
        raise ValidationError("n_subjects must be >= 1")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(_check_seed(seed))))
    u = spec.noise.sample(rng, n_subjects)
    u2 = spec.extra_noise.sample(rng, n_subjects) if spec.extra_noise else None
    cols = [spec.outcomes(action, u, u2) for action in range(1, spec.k + 1)]
    return PoMatrix(np.column_stack(cols))


@dataclass(frozen=True)
class TruthReport:
    """Ground-truth value of one metric under a spec."""

    metric: StatisticSpec
    value: float
    method: str  # "closed-form" | "large-N-oracle"


def _strictly_decreasing(seq) -> bool:
    return all(a > b for a, b in zip(seq, seq[1:]))


def _require_injective(spec: ScmSpec) -> None:
    if len(set(spec.coeffs)) != spec.k:
        raise ValidationError(
            "coefficients must be distinct for ground-truth computation"
        )


def analytic_truth(spec: ScmSpec, metric: StatisticSpec) -> TruthReport:
    """Ground truth for por/pob/roe metrics.

    additive-shift: rankings are deterministic, so por/pob are indicators of
    the coefficient ordering. scaled-noise: the shared noise's sign decides
    between the coefficient ordering and its reverse, so por/pob are mixtures
    weighted by P(U > 0). The two-noise family has no such closed form and is
    evaluated on a simulated table of ORACLE_SUBJECTS subjects (Monte Carlo
    error below ~0.002). roe means are closed-form for every family.
    """
    if metric.kind not in ("por", "pob", "roe"):
        raise ValidationError(f"no ground truth for statistic kind {metric.kind!r}")

    if metric.kind == "roe":
        base = spec.coeff(metric.action)
        if spec.family == "additive-shift":
            value = base + spec.noise.mean()
        else:
            value = base * spec.noise.mean()
            if spec.extra_noise is not None:
                value += spec.extra_noise.mean()
        return TruthReport(metric, float(value), "closed-form")

    _require_injective(spec)

    if spec.family == "scaled-noise-plus-independent":
        matrix = sample_po_matrix(spec, ORACLE_SUBJECTS, _ORACLE_SEED)
        if metric.kind == "por":
            value = exact_por(matrix, metric.ranking).value
        else:
            value = exact_pob(matrix, metric.action).value
        return TruthReport(metric, value, "large-N-oracle")

    if spec.family == "additive-shift":
        if metric.kind == "por":
            c = [spec.coeff(a) for a in metric.ranking]
            value = 1.0 if _strictly_decreasing(c) else 0.0
        else:
            value = 1.0 if spec.coeff(metric.action) == max(spec.coeffs) else 0.0
        return TruthReport(metric, value, "closed-form")

    # scaled-noise
    p_pos = spec.noise.p_positive()
    p_neg = 1.0 - p_pos
    if metric.kind == "por":
        c = [spec.coeff(a) for a in metric.ranking]
        value = 0.0
        if _strictly_decreasing(c):
            value += p_pos
        if _strictly_decreasing(c[::-1]):
            value += p_neg
    else:
        c_a = spec.coeff(metric.action)
        value = 0.0
        if c_a == max(spec.coeffs):
            value += p_pos
        if c_a == min(spec.coeffs):
            value += p_neg
    return TruthReport(metric, value, "closed-form")


@dataclass(frozen=True, eq=False)
class ReplicationSummary:
    """Per-run values of one metric across seeded replications, with their
    mean and empirical 2.5%/97.5% quantiles."""

    metric: StatisticSpec
    n_per_arm: int
    runs: int
    seed: int
    values: np.ndarray
    mean: float
    ci_lower: float
    ci_upper: float


def _order_statistic(sorted_values: np.ndarray, q: float) -> float:
    return float(sorted_values[order_statistic_index(sorted_values.size, q) - 1])


def run_replications(
    spec: ScmSpec,
    n_per_arm: int,
    runs: int,
    seed: int,
    metric: StatisticSpec,
    *,
    grid: GridConfig = GridConfig(),
    workers: int | None = None,
) -> ReplicationSummary:
    """Evaluate `metric` on `runs` freshly sampled studies.

    Run i uses the seed hashed from (seed, i), so any sub-range of runs and any
    worker count reproduce the same values.
    """
    if runs < 1:
        raise ValidationError("runs must be >= 1")

    def one_run(i: int) -> float:
        study = sample_study(spec, n_per_arm, derive_run_seed(seed, i))
        return evaluate_statistic(study, metric, grid)

    values = np.array(map_indexed(one_run, runs, workers))
    ordered = np.sort(values)
    return ReplicationSummary(
        metric=metric,
        n_per_arm=n_per_arm,
        runs=runs,
        seed=seed,
        values=values,
        mean=float(values.mean()),
        ci_lower=_order_statistic(ordered, 0.025),
        ci_upper=_order_statistic(ordered, 0.975),
    )
