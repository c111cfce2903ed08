"""D-Bees: bee colony optimisation over sense paths.

Randomness
----------
Every stochastic choice of a run draws from one ``random.Random``
(MT19937) seeded with ``HiveConfig.seed``. The draw order is part of the
reproducibility contract:

1. per iteration, ``randrange(n)`` picks the hive word;
2. per forward pass, bees in their current order, each making its moves in
   sequence; a move draws ``randrange(len(pool))`` per probed candidate,
   removing the probed sense from the pool;
3. per backward pass, bees in sorted order; every non-recruiter draws one
   ``random()`` for loyalty and, if disloyal, one more ``random()`` that
   selects a recruiter by cumulative probability. Recruiters draw nothing.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .inventory import ProblemInstance
from .objective import Assignment, ranked_senses, total_pairwise_quality
from .relatedness import Relatedness

# minimum gain that counts as an improvement of the incumbent
IMPROVEMENT_EPS = 1e-6


@dataclass(frozen=True)
class HiveConfig:
    nc: int = 3
    r: int = 3
    max_iterations: int = 10
    beta: float = 0.8
    theta: float = 0.5
    candidate_cap: int = 5
    seed: int = 0

    def __post_init__(self) -> None:
        if self.nc < 1:
            raise ValueError("nc must be >= 1")
        if self.r < 1:
            raise ValueError("r must be >= 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.candidate_cap < 1:
            raise ValueError("candidate_cap must be >= 1")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError("beta must lie in [0, 1]")
        # theta above 1 is allowed: it disables the early exit of moves
        if self.theta < 0.0:
            raise ValueError("theta must be >= 0")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass
class BeeAgent:
    bee_id: int
    # (instance_id, sense_id) pairs; the hive word comes first
    path: list[tuple[str, str]]
    quality: float = 0.0
    loyal: bool = True

    @property
    def current_sense(self) -> str:
        return self.path[-1][1]

    def adopt(self, other: "BeeAgent") -> None:
        self.path = list(other.path)
        self.quality = other.quality


@dataclass
class RunResult:
    best: Assignment
    quality: float
    global_quality: float
    iterations_used: int
    forward_passes: int
    found_iteration: int
    trace: list[dict] | None = field(default=None, repr=False)


def path_quality(path: Sequence[tuple[str, str]], model: Callable[[str, str], float]) -> float:
    """Sum of relatedness along consecutive path edges."""
    q = 0.0
    for (_, a), (_, b) in zip(path, path[1:]):
        q += model(a, b)
    return q


def init_hive(
    instance: ProblemInstance, model: Relatedness, rng: random.Random
) -> tuple[int, list[BeeAgent], list[int]]:
    """Pick the hive word and create one bee per hive sense.

    Returns ``(hive_index, bees, food)`` where ``food`` lists the remaining
    target indices in visiting order (after the hive, wrapping around).
    """
    n = len(instance.targets)
    if n == 0:
        raise ValueError("cannot build a hive for an empty instance")
    hive = rng.randrange(n)
    target = instance.targets[hive]
    senses = ranked_senses(model.inv, target.lemma, target.pos)
    bees = [BeeAgent(b, [(target.instance_id, s)]) for b, s in enumerate(senses)]
    food = [(hive + k) % n for k in range(1, n)]
    return hive, bees, food


def constructive_move(
    current_sense: str,
    candidates: Sequence[str],
    model: Callable[[str, str], float],
    rng: random.Random,
    theta: float,
    candidate_cap: int,
) -> tuple[str, float, int]:
    """Probe random candidates until ``candidate_cap`` or one scores >= theta.

    ``candidates`` must be in freq_rank order; among equal scores the earlier
    candidate wins. Returns ``(sense, similarity, probes)``.
    """
    pool = list(range(len(candidates)))
    best_pos, best_sim = -1, -math.inf
    probes = 0
    while pool and probes < candidate_cap:
        pos = pool.pop(rng.randrange(len(pool)))
        sim = model(current_sense, candidates[pos])
        probes += 1
        if sim > best_sim or (sim == best_sim and pos < best_pos):
            best_pos, best_sim = pos, sim
        if sim >= theta:
            break
    return candidates[best_pos], best_sim, probes


def forward_pass(
    bees: list[BeeAgent],
    food: Sequence[int],
    cursor: int,
    instance: ProblemInstance,
    model: Relatedness,
    rng: random.Random,
    config: HiveConfig,
    trace: list[dict] | None = None,
    tag: dict | None = None,
) -> int:
    """Advance every bee by up to ``config.nc`` words; returns the new cursor."""
    steps = min(config.nc, len(food) - cursor)
    words = [instance.targets[food[cursor + k]] for k in range(steps)]
    candidate_lists = [ranked_senses(model.inv, t.lemma, t.pos) for t in words]
    for bee in bees:
        for target, candidates in zip(words, candidate_lists):
            origin = bee.current_sense
            sense, sim, probes = constructive_move(
                origin, candidates, model, rng, config.theta, config.candidate_cap
            )
            bee.path.append((target.instance_id, sense))
            bee.quality += sim
            if trace is not None:
                trace.append(
                    {
                        "event": "move",
                        **(tag or {}),
                        "bee": bee.bee_id,
                        "from": origin,
                        "word": target.instance_id,
                        "probes": probes,
                        "sense": sense,
                        "similarity": sim,
                    }
                )
    return cursor + steps


def loyalty_probability(o_b: float, o_max: float, u: int) -> float:
    """``exp(-(o_max - o_b) / u)`` for forward-pass count ``u >= 1``."""
    if u < 1:
        raise ValueError("forward-pass count u must be >= 1")
    return math.exp(-(o_max - o_b) / u)


def recruitment_distribution(qualities: Sequence[float]) -> list[float]:
    """Recruiter probabilities proportional to quality; uniform if all zero."""
    if not qualities:
        raise ValueError("need at least one recruiter")
    total = math.fsum(qualities)
    if total <= 0.0:
        return [1.0 / len(qualities)] * len(qualities)
    return [q / total for q in qualities]


def backward_pass(
    bees: list[BeeAgent],
    u: int,
    r: int,
    rng: random.Random,
    trace: list[dict] | None = None,
    tag: dict | None = None,
) -> list[BeeAgent]:
    """Normalise, sort, recruit. Returns the bees sorted best first."""
    if not bees:
        raise ValueError("backward pass needs at least one bee")
    ranked = sorted(bees, key=lambda b: (-b.quality, b.bee_id))
    q_max = ranked[0].quality
    norm = {b.bee_id: (b.quality / q_max if q_max > 0 else 0.0) for b in ranked}
    o_max = norm[ranked[0].bee_id]

    recruiters = ranked[: min(r, len(ranked))]
    probs = recruitment_distribution([norm[b.bee_id] for b in recruiters])
    snapshots = [BeeAgent(b.bee_id, list(b.path), b.quality) for b in recruiters]
    cumulative = []
    acc = 0.0
    for p in probs:
        acc += p
        cumulative.append(acc)

    records = []
    for pos, bee in enumerate(ranked):
        record = {"bee": bee.bee_id, "quality": bee.quality, "normalized": norm[bee.bee_id]}
        if pos < len(recruiters):
            bee.loyal = True
            record.update(p_loyal=1.0, draw=None, loyal=True, followed=None)
        else:
            p = loyalty_probability(norm[bee.bee_id], o_max, u)
            draw = rng.random()
            bee.loyal = draw < p
            record.update(p_loyal=p, draw=draw, loyal=bee.loyal, followed=None)
            if not bee.loyal:
                x = rng.random()
                k = next((i for i, c in enumerate(cumulative) if x < c), len(cumulative) - 1)
                bee.adopt(snapshots[k])
                record["followed"] = snapshots[k].bee_id
        records.append(record)

    if trace is not None:
        trace.append(
            {
                "event": "backward",
                **(tag or {}),
                "recruiters": [b.bee_id for b in recruiters],
                "recruit_probs": probs,
                "bees": records,
            }
        )
    return ranked


def _better(candidate: BeeAgent, incumbent: BeeAgent | None) -> bool:
    if incumbent is None or candidate.quality > incumbent.quality:
        return True
    # an equal-quality longer path supersedes a partial one
    return candidate.quality == incumbent.quality and len(candidate.path) > len(incumbent.path)


def run_dbees(
    instance: ProblemInstance,
    model: Relatedness,
    config: HiveConfig | None = None,
    trace: bool = False,
) -> RunResult:
    """Run the colony on an already POS-ordered instance."""
    config = config or HiveConfig()
    n = len(instance.targets)
    if n == 0:
        raise ValueError("cannot disambiguate an empty instance")
    for t in instance.targets:
        model.inv.word(t.lemma, t.pos)

    rng = random.Random(config.seed)
    log: list[dict] | None = [] if trace else None
    edges = max(1, n - 1)
    best: BeeAgent | None = None
    found_iteration = 0
    forward_passes = 0
    iterations_used = 0

    for iteration in range(1, config.max_iterations + 1):
        iterations_used = iteration
        hive, bees, food = init_hive(instance, model, rng)
        if log is not None:
            log.append(
                {
                    "event": "hive",
                    "iteration": iteration,
                    "hive": instance.targets[hive].instance_id,
                    "bees": len(bees),
                }
            )
        before = best.quality if best is not None else None
        cursor = 0
        u = 1
        while True:
            tag = {"iteration": iteration, "pass": u}
            cursor = forward_pass(bees, food, cursor, instance, model, rng, config, log, tag)
            forward_passes += 1
            bees = backward_pass(bees, u, config.r, rng, log, tag)
            u += 1
            top = bees[0]
            if _better(top, best):
                best = BeeAgent(top.bee_id, list(top.path), top.quality)
                found_iteration = iteration
                if log is not None:
                    log.append({"event": "best", **tag, "quality": best.quality})
            if cursor >= len(food):
                break

        assert best is not None
        colony_best = bees[0].quality / edges
        if log is not None:
            log.append(
                {
                    "event": "iteration_end",
                    "iteration": iteration,
                    "colony_best_normalized": colony_best,
                    "best_quality": best.quality,
                }
            )
        if before is not None and colony_best >= config.beta and best.quality - before <= IMPROVEMENT_EPS:
            break

    assert best is not None
    assignment = dict(best.path)
    return RunResult(
        best=assignment,
        quality=best.quality,
        global_quality=total_pairwise_quality(assignment, instance, model),
        iterations_used=iterations_used,
        forward_passes=forward_passes,
        found_iteration=found_iteration,
        trace=log,
    )
