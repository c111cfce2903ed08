"""Objective functions shared by every solver, and the exhaustive oracle."""

from __future__ import annotations

import math
from typing import Mapping

from . import kernels
from .inventory import ProblemInstance, SenseInventory
from .relatedness import Relatedness

DEFAULT_CAP = 10**6

Assignment = dict[str, str]


class CapExceeded(RuntimeError):
    """The Cartesian product of senses is too large to enumerate."""

    def __init__(self, size: int, cap: int) -> None:
        super().__init__(
            f"search space has {size} assignments (product of sense counts), "
            f"cap is {cap}; use a heuristic solver"
        )
        self.size = size
        self.cap = cap


def ranked_senses(inv: SenseInventory, lemma: str, pos: str) -> list[str]:
    """Senses of a word ordered by (freq_rank, id)."""
    ids = inv.word(lemma, pos).sense_ids
    return sorted(ids, key=lambda sid: (inv.senses[sid].freq_rank, sid))


def context_score(t: int, i: int, instance: ProblemInstance, model: Relatedness) -> float:
    """Sum over every target j (self included) of the best relatedness
    between sense ``i`` of target ``t`` and any sense of target j."""
    inv = model.inv
    target = instance.targets[t]
    s_ti = inv.senses_of(target)[i]
    total = 0.0
    for other in instance.targets:
        total += max(model(s_ti, s) for s in inv.senses_of(other))
    return total


def context_disambiguate(t: int, instance: ProblemInstance, model: Relatedness) -> int:
    """Index into the target's sense list maximising :func:`context_score`."""
    inv = model.inv
    senses = inv.senses_of(instance.targets[t])
    order = sorted(range(len(senses)), key=lambda k: (inv.senses[senses[k]].freq_rank, senses[k]))
    best_k, best_score = order[0], -math.inf
    for k in order:
        score = context_score(t, k, instance, model)
        if score > best_score:
            best_k, best_score = k, score
    return best_k


def total_pairwise_quality(
    assignment: Mapping[str, str], instance: ProblemInstance, model: Relatedness
) -> float:
    """Sum of relatedness over unordered target pairs ``i < j``."""
    chosen = [assignment[t.instance_id] for t in instance.targets]
    q = 0.0
    n = len(chosen)
    for i in range(n):
        for j in range(i + 1, n):
            q += model(chosen[i], chosen[j])
    return q


def search_space_size(instance: ProblemInstance, inv: SenseInventory) -> int:
    return math.prod(len(inv.senses_of(t)) for t in instance.targets)


def relatedness_matrix(
    instance: ProblemInstance, model: Relatedness
) -> tuple[list[list[str]], list[int], list[int], list[float], int]:
    """Flatten every candidate sense of the instance into one score matrix.

    Returns ``(candidates, counts, offsets, matrix, stride)``; candidates of
    each word are in (freq_rank, id) order.
    """
    inv = model.inv
    candidates = [ranked_senses(inv, t.lemma, t.pos) for t in instance.targets]
    counts = [len(c) for c in candidates]
    offsets = []
    flat: list[str] = []
    for c in candidates:
        offsets.append(len(flat))
        flat.extend(c)
    stride = len(flat)
    matrix = [0.0] * (stride * stride)
    owner = [w for w, c in enumerate(candidates) for _ in c]
    for r in range(stride):
        for c in range(r + 1, stride):
            if owner[r] != owner[c]:
                v = model(flat[r], flat[c])
                matrix[r * stride + c] = v
                matrix[c * stride + r] = v
    return candidates, counts, offsets, matrix, stride


def brute_force_solve(
    instance: ProblemInstance,
    model: Relatedness,
    cap: int = DEFAULT_CAP,
    backend: str | None = None,
) -> tuple[Assignment, float]:
    """Globally optimal assignment under :func:`total_pairwise_quality`.

    Ties go to the lexicographically smallest freq_rank vector. Raises
    :class:`CapExceeded` when the product of sense counts exceeds ``cap``.
    """
    size = search_space_size(instance, model.inv)
    if size > cap:
        raise CapExceeded(size, cap)
    candidates, counts, offsets, matrix, stride = relatedness_matrix(instance, model)
    quality, choice, _ = kernels.enumerate_best(counts, offsets, matrix, stride, backend)
    assignment = {
        t.instance_id: candidates[w][choice[w]] for w, t in enumerate(instance.targets)
    }
    return assignment, quality
