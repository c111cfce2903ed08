"""Relatedness between senses: Lesk overlap variants, Lin, and the
POS dispatcher used by the solvers."""

from __future__ import annotations

import math
import re
import threading
import unicodedata

from .inventory import SenseInventory, compute_ic, lowest_common_subsumer

# Fixed list; changing it changes every gloss-overlap score.
STOPWORDS = frozenset(
    """
    a about above after again against all am an and any are as at be because
    been before being below between both but by can could did do does doing
    down during each few for from further had has have having he her here hers
    herself him himself his how i if in into is it its itself just me more most
    my myself no nor not now of off on once only or other our ours ourselves out
    over own same she should so some such than that the their theirs them
    themselves then there these they this those through to too under until up
    very was we were what when where which while who whom why will with would
    you your yours yourself yourselves
    """.split()
)

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def _ascii_fold(text: str) -> str:
    decomposed = unicodedata.normalize("NFKD", text)
    return decomposed.encode("ascii", "ignore").decode("ascii").lower()


def tokenize(gloss: str) -> frozenset[str]:
    """Lowercased, ASCII-folded, punctuation-free tokens minus stopwords."""
    return frozenset(t for t in _TOKEN_RE.findall(_ascii_fold(gloss)) if t not in STOPWORDS)


def lesk_overlap(a: frozenset[str] | set[str], b: frozenset[str] | set[str]) -> int:
    return len(a & b)


def extended_tokens(sense_id: str, inv: SenseInventory) -> frozenset[str]:
    """Own gloss tokens plus the gloss tokens of every related sense."""
    sense = inv.sense(sense_id)
    tokens = set(tokenize(sense.gloss))
    for rid in sense.related_gloss_ids:
        tokens |= tokenize(inv.sense(rid).gloss)
    return frozenset(tokens)


def extended_lesk(a: str, b: str, inv: SenseInventory) -> int:
    return lesk_overlap(extended_tokens(a, inv), extended_tokens(b, inv))


def normalized_lesk(a: str, b: str, inv: SenseInventory) -> float:
    ta, tb = extended_tokens(a, inv), extended_tokens(b, inv)
    return len(ta & tb) / max(1, min(len(ta), len(tb)))


def lin(a: str, b: str, inv: SenseInventory, ic: dict[str, float]) -> float:
    """``2 IC(lcs) / (IC(a) + IC(b))``, or 0 when undefined."""
    lcs = lowest_common_subsumer(a, b, inv)
    if lcs is None:
        return 0.0
    ic_a, ic_b, ic_lcs = ic[a], ic[b], ic[lcs]
    if math.isinf(ic_a) or math.isinf(ic_b) or math.isinf(ic_lcs):
        return 0.0
    denom = ic_a + ic_b
    if denom <= 0.0:
        return 0.0
    return min(1.0, 2.0 * ic_lcs / denom)


def relatedness(a: str, b: str, inv: SenseInventory, ic: dict[str, float]) -> float:
    """Lin for same-POS pairs, normalized extended Lesk otherwise."""
    if inv.sense(a).pos == inv.sense(b).pos:
        return lin(a, b, inv, ic)
    return normalized_lesk(a, b, inv)


class Relatedness:
    """Memoised :func:`relatedness` over one inventory.

    Keys are unordered pairs, so ``model(a, b) == model(b, a)`` holds by
    construction. Lookups are lock-free; insertions take a lock.
    """

    def __init__(self, inv: SenseInventory, ic: dict[str, float] | None = None) -> None:
        self.inv = inv
        self.ic = compute_ic(inv) if ic is None else ic
        self._cache: dict[tuple[str, str], float] = {}
        self._lock = threading.Lock()
        self.misses = 0

    def __call__(self, a: str, b: str) -> float:
        key = (a, b) if a <= b else (b, a)
        value = self._cache.get(key)
        if value is None:
            value = relatedness(key[0], key[1], self.inv, self.ic)
            with self._lock:
                self._cache.setdefault(key, value)
                self.misses += 1
        return value

    def clear(self) -> None:
        with self._lock:
            self._cache.clear()
