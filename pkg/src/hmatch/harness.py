"""Monte-Carlo experiment runner: paired trials, aggregation and output."""

from __future__ import annotations

import csv
import io
import json
import math
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Iterable, Sequence as Seq

from .algorithms import SS_MAX_DENOM, make_packer, parse_algorithm
from .core import Sequence, lower_bound
from .generators import DistributionSpec, Seed, generate, lookup, mix64, name_key

CSV_COLUMNS = ["set_instance", "algorithm", "trial", "n", "cost", "total_size",
               "waste", "lower_bound", "ratio"]
AGG_COLUMNS = ["set_instance", "algorithm", "mean_cost", "std_cost", "mean_ratio",
               "mean_waste", "rank"]


class ConfigError(ValueError):
    pass


class ExperimentError(RuntimeError):
    def __init__(self, set_instance: str, algorithm: str, trial: int, cause: Exception):
        super().__init__(f"{set_instance} / {algorithm} / trial {trial}: {cause}")
        self.set_instance = set_instance
        self.algorithm = algorithm
        self.trial = trial


def _spec_from_json(obj) -> DistributionSpec:
    if isinstance(obj, str):
        try:
            return lookup(obj)
        except KeyError as e:
            raise ConfigError(str(e)) from None
    if isinstance(obj, dict):
        try:
            params = dict(obj.get("params", {}))
            if obj["kind"] == "WEIBULL":
                params.setdefault("scale", obj["E"] / 2)
            return DistributionSpec(obj.get("name", "custom"), obj["kind"], int(obj["E"]),
                                    int(obj["lo"]), int(obj["hi"]), params)
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigError(f"bad custom set-instance {obj!r}: {e}") from None
    raise ConfigError(f"set-instance must be a name or an object, got {obj!r}")


@dataclass
class ExperimentConfig:
    set_instances: list[DistributionSpec]
    algorithms: list[str]
    n: int = 100_000
    trials: int = 30
    master_seed: int = 1
    ss_enabled_max_D: int = SS_MAX_DENOM
    output: str | None = None

    def __post_init__(self):
        self.set_instances = [s if isinstance(s, DistributionSpec) else _spec_from_json(s)
                              for s in self.set_instances]
        if not self.set_instances:
            raise ConfigError("no set-instances")
        names = [s.name for s in self.set_instances]
        if len(set(names)) != len(names):
            raise ConfigError("set-instance names must be unique")
        if not self.algorithms:
            raise ConfigError("no algorithms")
        for a in self.algorithms:
            try:
                parse_algorithm(a)
            except ValueError as e:
                raise ConfigError(str(e)) from None
        if len(set(self.algorithms)) != len(self.algorithms):
            raise ConfigError("algorithm ids must be unique")
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ConfigError("trials must be a positive integer")
        if not isinstance(self.n, int) or self.n < 0:
            raise ConfigError("n must be a non-negative integer")
        if not isinstance(self.master_seed, int) or not 0 <= self.master_seed < 1 << 64:
            raise ConfigError("master_seed must be a 64-bit unsigned integer")

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        if not isinstance(doc, dict):
            raise ConfigError("config must be a JSON object")
        known = {"set_instances", "algorithms", "n", "trials", "master_seed",
                 "ss_enabled_max_D", "output"}
        extra = set(doc) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        for key in ("set_instances", "algorithms"):
            if not isinstance(doc.get(key), list):
                raise ConfigError(f"{key} must be an array")
        return cls(**doc)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError(f"invalid JSON: {e}") from None
        return cls.from_dict(doc)

    def pairs(self, spec: DistributionSpec) -> list[str]:
        """Algorithms run on this set-instance (SS only where E is small enough)."""
        return [a for a in self.algorithms
                if parse_algorithm(a)[0] != "ss" or spec.E <= self.ss_enabled_max_D]


@dataclass(frozen=True)
class TrialResult:
    set_instance: str
    algorithm: str
    trial: int
    n: int
    cost: int
    total_size: Fraction
    waste: Fraction
    lower_bound: int
    ratio: Fraction


def trial_seed(master_seed: int, spec_name: str, trial: int) -> Seed:
    return Seed(master_seed ^ name_key(spec_name), trial)


def evaluate(set_instance: str, algorithm: str, trial: int, s: Sequence) -> TrialResult:
    packer = make_packer(algorithm, s.denom)
    packer.feed(s.items)
    cost = packer.cost
    lb = lower_bound(s)
    total = s.total
    ratio = Fraction(cost, lb) if lb else Fraction(1)
    return TrialResult(set_instance, algorithm, trial, len(s), cost, total, cost - total, lb, ratio)


def _run_unit(args) -> list[TrialResult]:
    spec, trial, algorithms, n, master_seed = args
    s = generate(spec, n, trial_seed(master_seed, spec.name, trial))
    out = []
    for algo in algorithms:
        try:
            out.append(evaluate(spec.name, algo, trial, s))
        except Exception as e:  # noqa: BLE001 - reported with its coordinates
            raise ExperimentError(spec.name, algo, trial, e) from e
    return out


def run_experiment(cfg: ExperimentConfig, jobs: int = 1) -> list[TrialResult]:
    """Every configured algorithm sees the same sequence within a trial."""
    units = [(spec, t, cfg.pairs(spec), cfg.n, cfg.master_seed)
             for spec in cfg.set_instances for t in range(cfg.trials)]
    results: list[TrialResult] = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for chunk in pool.map(_run_unit, units):
                results.extend(chunk)
    else:
        for unit in units:
            results.extend(_run_unit(unit))
    results.sort(key=lambda r: (r.set_instance, r.algorithm, r.trial))
    return results


@dataclass(frozen=True)
class AggregateRow:
    set_instance: str
    algorithm: str
    mean_cost: Fraction
    std_cost: float
    mean_ratio: Fraction
    mean_waste: Fraction
    rank: int
    trials: int = field(default=0, compare=False)


def aggregate(results: Iterable[TrialResult]) -> list[AggregateRow]:
    groups: dict[tuple[str, str], list[TrialResult]] = defaultdict(list)
    for r in results:
        groups[(r.set_instance, r.algorithm)].append(r)
    if not groups:
        raise ValueError("nothing to aggregate")
    stats = {}
    for key, rows in groups.items():
        m = len(rows)
        mean = Fraction(sum(r.cost for r in rows), m)
        var = sum((r.cost - mean) ** 2 for r in rows) / (m - 1) if m > 1 else Fraction(0)
        stats[key] = (
            mean,
            math.sqrt(var),
            sum((r.ratio for r in rows), Fraction(0)) / m,
            sum((r.waste for r in rows), Fraction(0)) / m,
            m,
        )
    by_instance: dict[str, list[str]] = defaultdict(list)
    for inst, algo in stats:
        by_instance[inst].append(algo)
    out = []
    for inst in sorted(by_instance):
        algos = by_instance[inst]
        means = {a: stats[(inst, a)][0] for a in algos}
        for a in sorted(algos):
            rank = 1 + sum(1 for b in algos if means[b] < means[a])
            mean, std, ratio, w, m = stats[(inst, a)]
            out.append(AggregateRow(inst, a, mean, std, ratio, w, rank, m))
    return out


@dataclass
class WasteScaling:
    algorithm: str
    set_instance: str
    rows: list[tuple[int, Fraction]]
    factors: list[tuple[int, int, float]]  # (n, next n, waste growth factor)


def waste_scaling(algorithm: str, spec: DistributionSpec, n_list: Seq[int], trials: int,
                  seed: int) -> WasteScaling:
    """Mean waste at each length; sequences are shared by any algorithm run
    with the same spec and seed."""
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError("n_list must be strictly increasing")
    rows = []
    for n in n_list:
        master = seed ^ name_key(spec.name) ^ mix64(n)
        total = Fraction(0)
        for t in range(trials):
            s = generate(spec, n, Seed(master, t))
            total += evaluate(spec.name, algorithm, t, s).waste
        rows.append((n, total / trials))
    factors = [(a, b, float(wb / wa) if wa else math.inf)
               for (a, wa), (b, wb) in zip(rows, rows[1:])]
    return WasteScaling(algorithm, spec.name, rows, factors)


def fmt6(x: Fraction | int) -> str:
    """Decimal rendering with exactly six fractional digits (exact rounding)."""
    q = round(Fraction(x) * 1_000_000)
    sign = "-" if q < 0 else ""
    q = abs(q)
    return f"{sign}{q // 1_000_000}.{q % 1_000_000:06d}"


def _row_values(r: TrialResult) -> list:
    return [r.set_instance, r.algorithm, r.trial, r.n, r.cost, fmt6(r.total_size),
            fmt6(r.waste), r.lower_bound, fmt6(r.ratio)]


def _agg_values(r: AggregateRow) -> list:
    return [r.set_instance, r.algorithm, fmt6(r.mean_cost), f"{r.std_cost:.6f}",
            fmt6(r.mean_ratio), fmt6(r.mean_waste), r.rank]


def _timestamp() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def results_csv(rows: Iterable[TrialResult | AggregateRow], timestamp: bool = False) -> str:
    rows = list(rows)
    buf = io.StringIO()
    if timestamp:
        buf.write(f"# generated {_timestamp()}\n")
    w = csv.writer(buf, lineterminator="\n")
    agg = bool(rows) and isinstance(rows[0], AggregateRow)
    w.writerow(AGG_COLUMNS if agg else CSV_COLUMNS)
    for r in rows:
        w.writerow(_agg_values(r) if agg else _row_values(r))
    return buf.getvalue()


def results_json(rows: Iterable[TrialResult | AggregateRow]) -> str:
    out = []
    for r in rows:
        if isinstance(r, AggregateRow):
            keys, vals = AGG_COLUMNS, _agg_values(r)
        else:
            keys, vals = CSV_COLUMNS, _row_values(r)
        out.append({k: (float(v) if isinstance(v, str) and k not in ("set_instance", "algorithm") else v)
                    for k, v in zip(keys, vals)})
    return json.dumps(out, indent=1) + "\n"
