"""
Simulated annealing over the flip graph of non-d-step prismatoids.

States are prismatoids of width at least ``min_width``; moves are uniformly
sampled flips; the cost is the vertex count plus a small power-mean
tie-breaker that favours states with small vertex neighborhoods.
"""
import csv
import io
import logging
import math
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from django.conf import settings

from .exceptions import AnnealError, NonpositiveTemperature, NoValidFlips
from .flips import apply_flip, insertion_flips, revert_flip, sample_flip
from .formats import parse_flip_line

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Schedule:
    t0: float = 1000.0
    rate: float = 0.99997
    iterations: int = 500000

    def __post_init__(self):
        if self.t0 <= 0:
            raise NonpositiveTemperature(f"t0 must be positive, got {self.t0}")
        if not 0 < self.rate < 1:
            raise AnnealError(f"rate must lie in (0, 1), got {self.rate}")
        if self.iterations < 0:
            raise AnnealError(f"iterations must be nonnegative, got {self.iterations}")

    def temperature(self, k):
        return self.t0 * self.rate**k

    @classmethod
    def from_settings(cls, **overrides):
        conf = settings.WORKBENCH
        values = {
            "t0": conf["ANNEAL_T0"],
            "rate": conf["ANNEAL_RATE"],
            "iterations": conf["ANNEAL_ITERATIONS"],
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass(frozen=True)
class Objective:
    epsilon: float = 0.01
    power: float = -3.0

    def __post_init__(self):
        if self.epsilon <= 0:
            raise AnnealError(f"epsilon must be positive, got {self.epsilon}")
        if self.power >= 0:
            raise AnnealError(f"power must be negative, got {self.power}")

    @classmethod
    def from_settings(cls, **overrides):
        conf = settings.WORKBENCH
        values = {"epsilon": conf["ANNEAL_EPSILON"], "power": conf["ANNEAL_POWER"]}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass(frozen=True)
class AnnealConfig:
    schedule: Schedule = field(default_factory=Schedule)
    objective: Objective = field(default_factory=Objective)
    # None means d + 1
    min_width: int = None
    exact_width: bool = False
    retry_cap: int = 64
    # None means settings.WORKBENCH["CHECK_INVARIANTS"]
    check_invariants: bool = None

    @classmethod
    def from_settings(cls, t0=None, rate=None, iterations=None, epsilon=None, power=None,
                      min_width=None, exact_width=False):
        conf = settings.WORKBENCH
        return cls(
            schedule=Schedule.from_settings(t0=t0, rate=rate, iterations=iterations),
            objective=Objective.from_settings(epsilon=epsilon, power=power),
            min_width=min_width if min_width is not None else conf["ANNEAL_MIN_WIDTH"],
            exact_width=exact_width,
            retry_cap=conf["SAMPLE_RETRY_CAP"],
            check_invariants=conf["CHECK_INVARIANTS"],
        )


def neighborhood_sizes(prismatoid):
    """Size of each vertex's neighborhood, the vertex itself included."""
    complex_ = prismatoid.complex
    return np.array([complex_.neighborhood_size({v}) for v in sorted(complex_.vertices)], dtype=float)


def power_mean(values, power):
    return float(np.mean(values**power) ** (1.0 / power))


def cost(prismatoid, objective):
    sizes = neighborhood_sizes(prismatoid)
    return len(sizes) + objective.epsilon * power_mean(sizes, objective.power)


def accept_probability(delta_cost, temperature):
    if temperature <= 0:
        raise NonpositiveTemperature(f"temperature must be positive, got {temperature}")
    if delta_cost < 0:
        return 1.0
    return math.exp(-delta_cost / temperature)


@dataclass
class AnnealRun:
    seed: int
    config: AnnealConfig
    min_width: int
    rng: random.Random = None
    trace: list = field(default_factory=list)
    best: object = None
    best_step: int = 0
    best_cost: float = math.inf
    current_cost: float = math.inf
    final: object = None
    iterations_done: int = 0
    accepted: int = 0
    rejected: int = 0
    constraint_rejections: int = 0
    lowest_width: float = math.inf

    def __post_init__(self):
        if self.rng is None:
            self.rng = random.Random(self.seed)

    def consider(self, prismatoid, value, step):
        key = (prismatoid.vertex_count, value)
        if self.best is None or key < (self.best.vertex_count, self.best_cost):
            self.best = prismatoid.copy()
            self.best_cost = value
            self.best_step = step

    def summary(self):
        return {
            "seed": self.seed,
            "iters": self.iterations_done,
            "best_v": self.best.vertex_count,
            "best_f": self.best.facet_count,
            "best_width": self.best.width,
            "final_v": self.final.vertex_count if self.final is not None else None,
            "final_f": self.final.facet_count if self.final is not None else None,
            "accepted": self.accepted,
            "rejected": self.rejected,
            "constraint_rejections": self.constraint_rejections,
        }

    def summary_line(self):
        return (
            f"run seed={self.seed} iters={self.iterations_done} best_v={self.best.vertex_count} "
            f"best_f={self.best.facet_count} best_width={self.best.width}"
        )


def anneal_step(run, prismatoid, k):
    """One proposal at step ``k``; mutates ``prismatoid`` and returns it with the verdict."""
    rng = run.rng
    check = run.config.check_invariants
    flip = sample_flip(prismatoid, rng, run.config.retry_cap)
    snapshot = prismatoid.label_snapshot()
    inverse = apply_flip(prismatoid, flip, check=check, validate=False)
    value = prismatoid.width
    if value < run.min_width or (run.config.exact_width and value != run.min_width):
        revert_flip(prismatoid, inverse, snapshot, check=check)
        run.constraint_rejections += 1
        return prismatoid, False
    new_cost = cost(prismatoid, run.config.objective)
    probability = accept_probability(new_cost - run.current_cost, run.config.schedule.temperature(k))
    if probability >= 1.0 or rng.random() < probability:
        run.current_cost = new_cost
        run.accepted += 1
        run.lowest_width = min(run.lowest_width, value)
        run.trace.append(flip.trace_line())
        run.consider(prismatoid, new_cost, k + 1)
        return prismatoid, True
    revert_flip(prismatoid, inverse, snapshot, check=check)
    run.rejected += 1
    return prismatoid, False


def anneal_run(start, config=None, seed=0):
    """Anneal from a copy of ``start``; the start prismatoid is left untouched."""
    config = config or AnnealConfig()
    min_width = config.min_width if config.min_width is not None else start.d + 1
    if config.exact_width:
        min_width = start.width
    if start.width < min_width:
        raise AnnealError(f"start width {start.width} is below the minimum {min_width}")
    run = AnnealRun(seed=seed, config=config, min_width=min_width)
    current = start.copy()
    run.current_cost = cost(current, config.objective)
    run.lowest_width = current.width
    run.consider(current, run.current_cost, 0)
    for k in range(config.schedule.iterations):
        current, _ = anneal_step(run, current, k)
        run.iterations_done = k + 1
        if (k + 1) % 10000 == 0:
            logger.debug(
                "seed %s step %d: vertices %d, best %d", seed, k + 1, current.vertex_count, run.best.vertex_count
            )
    run.final = current
    logger.info(run.summary_line())
    return run


def _chain(start, config, seed):
    return anneal_run(start, config, seed)


def anneal_chains(start, config, seeds, workers=None):
    """Independent chains, one per seed, optionally in worker processes."""
    seeds = list(seeds)
    if workers == 1 or len(seeds) <= 1:
        return [anneal_run(start, config, seed) for seed in seeds]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_chain, start, config, seed) for seed in seeds]
        return [future.result() for future in futures]


def histogram(runs):
    """Count of best states by (vertices, facets)."""
    return Counter((run.best.vertex_count, run.best.facet_count) for run in runs)


def histogram_csv(counts):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["vertices", "facets", "count"])
    for (vertices, facets), count in sorted(counts.items()):
        writer.writerow([vertices, facets, count])
    return buffer.getvalue()


def inflate_walk(prismatoid, steps, rng, min_width=None, insertion_bias=None, journal=None, attempts=64):
    """Random walk of ``steps`` width-preserving flips, biased toward inserting vertices.

    Applied flips are appended to ``journal`` when given, so the walk can be
    undone by applying their inverses in reverse order.
    """
    if insertion_bias is None:
        insertion_bias = settings.WORKBENCH["INSERTION_BIAS"]
    current = prismatoid.copy()
    if min_width is None:
        min_width = current.width
    for _ in range(steps):
        for _ in range(attempts):
            candidates = insertion_flips(current) if rng.random() < insertion_bias else None
            flip = rng.choice(candidates) if candidates else sample_flip(current, rng)
            snapshot = current.label_snapshot()
            inverse = apply_flip(current, flip, validate=False)
            if current.width >= min_width:
                if journal is not None:
                    journal.append(flip)
                break
            revert_flip(current, inverse, snapshot)
        else:
            raise NoValidFlips(f"no width-preserving flip found in {attempts} attempts")
    return current


def replay(start, trace_lines):
    """Re-apply a flip trace to a copy of ``start``."""
    current = start.copy()
    for number, line in enumerate(trace_lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        apply_flip(current, parse_flip_line(line, number))
    return current
