"""Reference solvers: random sense, most frequent sense, simulated annealing."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .inventory import ProblemInstance, SenseInventory
from .objective import Assignment, ranked_senses, total_pairwise_quality
from .relatedness import Relatedness


@dataclass(frozen=True)
class SaConfig:
    initial_temperature: float = 1.0
    cooling_rate: float = 0.95
    steps_per_temperature: int = 50
    min_temperature: float = 1e-3
    seed: int = 0

    def __post_init__(self) -> None:
        if self.initial_temperature <= 0 or self.min_temperature <= 0:
            raise ValueError("temperatures must be positive")
        if not 0.0 < self.cooling_rate < 1.0:
            raise ValueError("cooling_rate must lie in (0, 1)")
        if self.steps_per_temperature < 1:
            raise ValueError("steps_per_temperature must be >= 1")


def random_sense_solve(
    instance: ProblemInstance, inv: SenseInventory, rng: random.Random
) -> Assignment:
    return {t.instance_id: rng.choice(inv.senses_of(t)) for t in instance.targets}


def mfs_solve(instance: ProblemInstance, inv: SenseInventory) -> Assignment:
    return {t.instance_id: ranked_senses(inv, t.lemma, t.pos)[0] for t in instance.targets}


def simulated_annealing_solve(
    instance: ProblemInstance,
    model: Relatedness,
    config: SaConfig | None = None,
    accepted: list[float] | None = None,
) -> tuple[Assignment, float]:
    """Anneal from the MFS assignment; returns the best state ever seen.

    Each step re-draws the sense of one random target. Worsening moves are
    accepted with probability ``exp(delta / T)``. When ``accepted`` is given,
    the quality after every accepted step is appended to it.
    """
    config = config or SaConfig()
    inv = model.inv
    rng = random.Random(config.seed)
    state = mfs_solve(instance, inv)
    quality = total_pairwise_quality(state, instance, model)
    best, best_q = dict(state), quality
    targets = instance.targets
    if not targets:
        return best, best_q
    senses = [ranked_senses(inv, t.lemma, t.pos) for t in targets]

    temperature = config.initial_temperature
    while True:
        for _ in range(config.steps_per_temperature):
            w = rng.randrange(len(targets))
            iid = targets[w].instance_id
            old = state[iid]
            new = rng.choice(senses[w])
            if new == old:
                continue
            state[iid] = new
            new_q = total_pairwise_quality(state, instance, model)
            delta = new_q - quality
            if delta >= 0 or rng.random() < math.exp(delta / temperature):
                quality = new_q
                if accepted is not None:
                    accepted.append(quality)
                if quality > best_q:
                    best, best_q = dict(state), quality
            else:
                state[iid] = old
        temperature *= config.cooling_rate
        if temperature < config.min_temperature:
            break
    return best, best_q
