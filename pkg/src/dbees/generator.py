"""Seeded synthetic inventories and instances for desk-scale experiments.

Each part of speech (noun, verb) gets a complete binary taxonomy of
``depth`` levels whose nodes are concept senses. Every word sense hangs
under a random concept of its POS, lists that concept as a related gloss,
and has a gloss of random vocabulary tokens. Counts are random integers in
1..10, ranks a random permutation per word.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .inventory import ProblemInstance, Sense, SenseInventory, Target, WordEntry, validate_inventory
from .objective import DEFAULT_CAP, brute_force_solve, search_space_size
from .baselines import mfs_solve
from .relatedness import Relatedness

GEN_POS = ("noun", "verb")
MAX_DEPTH = 10


@dataclass
class Generated:
    inventory: SenseInventory
    instance: ProblemInstance
    gold: dict[str, str]
    gold_kind: str  # "oracle" or "mfs"


def _gloss(rng: random.Random, vocab: list[str], length: int) -> str:
    return " ".join(rng.choice(vocab) for _ in range(length))


def generate(
    n_words: int,
    max_senses: int,
    depth: int = 3,
    vocab_size: int = 40,
    seed: int = 0,
    gloss_length: int = 6,
    cap: int = DEFAULT_CAP,
    min_senses: int = 1,
) -> Generated:
    if n_words < 1:
        raise ValueError("need at least one word")
    if not 1 <= min_senses <= max_senses:
        raise ValueError("need 1 <= min_senses <= max_senses")
    if not 1 <= depth <= MAX_DEPTH:
        raise ValueError(f"depth must lie in 1..{MAX_DEPTH}")
    if vocab_size < 1 or gloss_length < 1:
        raise ValueError("vocabulary size and gloss length must be positive")

    rng = random.Random(seed)
    vocab = [f"tok{k}" for k in range(vocab_size)]
    inv = SenseInventory()
    concepts: dict[str, list[str]] = {}
    for pos in GEN_POS:
        level = [f"{pos}.root"]
        ids = list(level)
        for d in range(1, depth):
            level = [f"{parent}.{k}" for parent in level for k in range(2)]
            ids.extend(level)
        for cid in ids:
            parent = cid.rsplit(".", 1)[0] if cid.count(".") > 1 else None
            inv.senses[cid] = Sense(
                id=cid,
                gloss=_gloss(rng, vocab, gloss_length),
                pos=pos,
                parent=parent,
                count=float(rng.randint(1, 10)),
            )
        concepts[pos] = ids

    targets = []
    for i in range(n_words):
        pos = rng.choice(GEN_POS)
        lemma = f"w{i}"
        m = rng.randint(min_senses, max_senses)
        ranks = list(range(m))
        rng.shuffle(ranks)
        sense_ids = []
        for j in range(m):
            sid = f"{lemma}.{pos[0]}.{j:02d}"
            parent = rng.choice(concepts[pos])
            inv.senses[sid] = Sense(
                id=sid,
                gloss=_gloss(rng, vocab, gloss_length),
                pos=pos,
                related_gloss_ids=(parent,),
                parent=parent,
                freq_rank=ranks[j],
                count=float(rng.randint(1, 10)),
            )
            sense_ids.append(sid)
        inv.words[(lemma, pos)] = WordEntry(lemma, pos, tuple(sense_ids))
        targets.append(Target(f"t{i}", lemma, pos))

    validate_inventory(inv)
    inv.total_count = sum(s.count for s in inv.senses.values())
    instance = ProblemInstance(tuple(targets))
    if search_space_size(instance, inv) <= cap:
        gold, _ = brute_force_solve(instance, Relatedness(inv), cap=cap)
        kind = "oracle"
    else:
        gold = mfs_solve(instance, inv)
        kind = "mfs"
    return Generated(inv, instance, gold, kind)
