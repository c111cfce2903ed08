from __future__ import annotations

import json
import random

import pytest

from dbees.generator import generate
from dbees.inventory import SenseInventory, load_inventory, order_by_pos

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def sense(sid, gloss="", pos="noun", parent=None, related=(), rank=0, count=1.0):
    return json.dumps(
        {
            "type": "sense",
            "id": sid,
            "gloss": gloss,
            "pos": pos,
            "parent": parent,
            "related": list(related),
            "rank": rank,
            "count": count,
        }
    )


def word(lemma, pos, senses):
    return json.dumps({"type": "word", "lemma": lemma, "pos": pos, "senses": list(senses)})


def build(*records) -> SenseInventory:
    return load_inventory("\n".join(records) + "\n")


@pytest.fixture
def six_node():
    """root(1) -> a(2) -> {a1(3), a2(1)};  root -> b(1) -> b1(2).  Total 10."""
    return build(
        sense("root", "entity thing"),
        sense("a", "living organism", parent="root", count=2),
        sense("a1", "domestic cat", parent="a", count=3),
        sense("a2", "wild cat", parent="a", count=1),
        sense("b", "artifact object", parent="root", count=1),
        sense("b1", "stone tool", parent="b", count=2),
    )


class TableModel:
    """Relatedness double backed by a symmetric table; identical pairs score 1."""

    def __init__(self, inv, table, default=0.0):
        self.inv = inv
        self.table = {}
        for (a, b), v in table.items():
            self.table[(a, b)] = v
            self.table[(b, a)] = v
        self.default = default
        self.calls = 0

    def __call__(self, a, b):
        self.calls += 1
        if a == b:
            return 1.0
        return self.table.get((a, b), self.default)


def random_problem(seed: int, n_lo: int = 2, n_hi: int = 4, max_senses: int = 4):
    """Seeded instance drawn the same way by every property/acceptance test."""
    r = random.Random(seed)
    g = generate(n_words=r.randint(n_lo, n_hi), max_senses=max_senses, seed=seed)
    return g, order_by_pos(g.instance)
