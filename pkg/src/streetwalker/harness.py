"""Experiment orchestration: batches of runs, competitive-ratio statistics,
and the CSV report format."""

from __future__ import annotations

import math
import os
import random
import time
from dataclasses import dataclass

from .generators import InstanceFamily, instance_streets
from .navigate import StrategyConfig, Trajectory, run
from .streets import Street, load_street, shortest_path

CSV_HEADER = ("instance,strategy,seed,path_len,geo_len,ratio,"
              "events_appear,events_disappear,events_split,events_merge")

SEED_ENV_VAR = "STREETWALKER_SEED"


@dataclass(frozen=True)
class RunReport:
    instance: str
    strategy: str
    seed: int
    path_len: float
    geo_len: float
    ratio: float
    events_appear: int
    events_disappear: int
    events_split: int
    events_merge: int
    wall_time: float = 0.0

    def csv_row(self) -> str:
        return "%s,%s,%d,%r,%r,%r,%d,%d,%d,%d" % (
            self.instance, self.strategy, self.seed, self.path_len,
            self.geo_len, self.ratio, self.events_appear,
            self.events_disappear, self.events_split, self.events_merge)


def report_from_run(instance_id, strategy, seed, trajectory: Trajectory,
                    geo_len, wall_time=0.0) -> RunReport:
    ratio = trajectory.total_length / geo_len
    if ratio < 1.0 - 1e-9:
        raise AssertionError(
            "run on %s beat the geodesic (ratio %r)" % (instance_id, ratio))
    counts = trajectory.event_counts()
    return RunReport(instance_id, strategy, seed, trajectory.total_length,
                     geo_len, ratio, counts["appearance"],
                     counts["disappearance"], counts["split"],
                     counts["merge"], wall_time)


def run_one(street: Street, config: StrategyConfig, instance_id="street",
            geo=None) -> RunReport:
    t0 = time.perf_counter()
    traj = run(street, config)
    elapsed = time.perf_counter() - t0
    geo_len = geo if geo is not None else shortest_path(street).length
    return report_from_run(instance_id, config.kind, config.rng_seed,
                           traj, geo_len, elapsed)


def derive_seeds(family_seed: int, trials: int):
    rng = random.Random(family_seed)
    return [rng.randrange(2 ** 63) for _ in range(trials)]


def default_family_seed(fallback=0) -> int:
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError("%s must be an integer, got %r"
                             % (SEED_ENV_VAR, env))
    return fallback


@dataclass(frozen=True)
class Aggregate:
    count: int
    mean_ratio: float
    max_ratio: float
    stddev_ratio: float


def aggregate(reports) -> Aggregate:
    ratios = [r.ratio for r in reports]
    n = len(ratios)
    if n == 0:
        return Aggregate(0, math.nan, math.nan, math.nan)
    mean = sum(ratios) / n
    var = sum((x - mean) ** 2 for x in ratios) / n
    return Aggregate(n, mean, max(ratios), math.sqrt(var))


def run_batch(family: InstanceFamily, strategy: StrategyConfig, trials: int,
              base_step=None):
    """Execute `trials` runs per family instance.

    Deterministic runs repeat identically; randomized runs draw fresh seeds
    from the family seed. Returns (reports, aggregate), reports sorted by
    (instance, seed) so output order is scheduling-independent.
    """
    pairs = instance_streets(family)
    reports = []
    for instance_id, street in pairs:
        geo = shortest_path(street).length
        step = base_step if base_step is not None else strategy.base_step
        if strategy.kind == "randomized":
            seeds = derive_seeds(family.seed, trials)
        else:
            seeds = [strategy.rng_seed] * trials
        for seed in seeds:
            cfg = StrategyConfig(kind=strategy.kind, base_step=step,
                                 rng_seed=seed, max_steps=strategy.max_steps)
            reports.append(run_one(street, cfg, instance_id, geo=geo))
    reports.sort(key=lambda r: (r.instance, r.seed))
    return reports, aggregate(reports)


def write_csv(reports, family: InstanceFamily = None) -> str:
    lines = []
    lines.append("# streetwalker bench report")
    if family is not None:
        lines.append("# family=%s seed=%d (instances are synthetic, built to "
                     "probe the doubling-search bounds)" % (family.kind,
                                                            family.seed))
    lines.append(CSV_HEADER)
    for r in reports:
        lines.append(r.csv_row())
    return "\n".join(lines) + "\n"


def read_csv(text: str):
    reports = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#") or line == CSV_HEADER:
            continue
        parts = line.split(",")
        if len(parts) != 10:
            raise ValueError("bad CSV row %r" % line)
        reports.append(RunReport(
            parts[0], parts[1], int(parts[2]), float(parts[3]),
            float(parts[4]), float(parts[5]), int(parts[6]), int(parts[7]),
            int(parts[8]), int(parts[9])))
    return reports
