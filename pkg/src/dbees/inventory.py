"""Sense inventories, problem instances and gold keys.

File formats
------------
Inventory (JSON Lines, UTF-8). One JSON object per line, blank lines and
lines starting with ``#`` are ignored::

    {"type": "sense", "id": "bank.n.01", "gloss": "...", "pos": "noun",
     "parent": "entity.n.01", "related": ["entity.n.01"], "rank": 0, "count": 3.0}
    {"type": "word", "lemma": "bank", "pos": "noun", "senses": ["bank.n.01", "bank.n.02"]}

``parent`` may be omitted or ``null``; ``related`` defaults to ``[]``.

Instance (plain text)::

    window 3
    t0 bank noun
    t1 river noun
    t2 run verb

Gold key (plain text), one ``<instance_id> <sense_id>`` per line.
Both text formats accept ``#`` comment lines.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from typing import IO, Iterable, Mapping

POS_TAGS = ("noun", "verb", "adj", "adv")
POS_ORDER = {pos: i for i, pos in enumerate(POS_TAGS)}


class InventoryError(ValueError):
    """Raised when an inventory, instance or key file cannot be loaded."""

    def __init__(self, message: str, line: int | None = None) -> None:
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class Sense:
    id: str
    gloss: str
    pos: str
    related_gloss_ids: tuple[str, ...] = ()
    parent: str | None = None
    freq_rank: int = 0
    count: float = 0.0


@dataclass(frozen=True)
class WordEntry:
    lemma: str
    pos: str
    sense_ids: tuple[str, ...]


@dataclass(frozen=True)
class Target:
    instance_id: str
    lemma: str
    pos: str


@dataclass
class SenseInventory:
    senses: dict[str, Sense] = field(default_factory=dict)
    words: dict[tuple[str, str], WordEntry] = field(default_factory=dict)
    total_count: float = 0.0

    def sense(self, sense_id: str) -> Sense:
        try:
            return self.senses[sense_id]
        except KeyError:
            raise KeyError(f"unknown sense id {sense_id!r}") from None

    def word(self, lemma: str, pos: str) -> WordEntry:
        try:
            return self.words[(lemma, pos)]
        except KeyError:
            raise KeyError(f"unknown word ({lemma!r}, {pos!r})") from None

    def senses_of(self, target: Target) -> tuple[str, ...]:
        return self.word(target.lemma, target.pos).sense_ids

    def root_path(self, sense_id: str) -> list[str]:
        """Ids from ``sense_id`` up to its root, inclusive at both ends."""
        path = [sense_id]
        node = self.sense(sense_id).parent
        while node is not None:
            path.append(node)
            node = self.senses[node].parent
        return path

    def children(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {sid: [] for sid in self.senses}
        for s in self.senses.values():
            if s.parent is not None:
                out[s.parent].append(s.id)
        return out


@dataclass(frozen=True)
class ProblemInstance:
    targets: tuple[Target, ...]
    gold: Mapping[str, str] | None = None

    @property
    def window_size(self) -> int:
        return len(self.targets)

    def __len__(self) -> int:
        return len(self.targets)


# --------------------------------------------------------------------------
# inventory loading


def validate_inventory(inv: SenseInventory) -> None:
    for s in inv.senses.values():
        if s.pos not in POS_TAGS:
            raise InventoryError(f"sense {s.id!r} has unknown pos {s.pos!r}")
        if s.parent is not None and s.parent not in inv.senses:
            raise InventoryError(f"sense {s.id!r} has dangling parent {s.parent!r}")
        for rid in s.related_gloss_ids:
            if rid not in inv.senses:
                raise InventoryError(f"sense {s.id!r} has dangling related id {rid!r}")
        if s.count < 0 or s.freq_rank < 0:
            raise InventoryError(f"sense {s.id!r} has negative rank or count")

    # cycle detection with memoised "reaches a root" marks
    ok: set[str] = set()
    for start in inv.senses:
        seen: list[str] = []
        on_path: set[str] = set()
        node: str | None = start
        while node is not None and node not in ok:
            if node in on_path:
                raise InventoryError(f"cyclic parent chain through {node!r}")
            on_path.add(node)
            seen.append(node)
            node = inv.senses[node].parent
        ok.update(seen)

    for key, w in inv.words.items():
        if not w.sense_ids:
            raise InventoryError(f"word {key!r} has no senses")
        for sid in w.sense_ids:
            if sid not in inv.senses:
                raise InventoryError(f"word {key!r} has dangling sense {sid!r}")
        ranks = sorted(inv.senses[sid].freq_rank for sid in w.sense_ids)
        if ranks != list(range(len(w.sense_ids))):
            raise InventoryError(f"word {key!r}: sense ranks {ranks} are not a permutation")


def _parse_record(line: str, lineno: int) -> dict:
    try:
        rec = json.loads(line)
    except json.JSONDecodeError as exc:
        raise InventoryError(f"malformed record: {exc.msg}", lineno) from None
    if not isinstance(rec, dict) or rec.get("type") not in ("sense", "word"):
        raise InventoryError("record must be an object with type 'sense' or 'word'", lineno)
    return rec


def load_inventory(source: IO[bytes] | IO[str] | bytes | str) -> SenseInventory:
    """Parse an inventory from a byte/text stream or an in-memory document."""
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw

    inv = SenseInventory()
    for lineno, line in enumerate(io.StringIO(text), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rec = _parse_record(line, lineno)
        try:
            if rec["type"] == "sense":
                sense = Sense(
                    id=str(rec["id"]),
                    gloss=str(rec.get("gloss", "")),
                    pos=str(rec["pos"]),
                    related_gloss_ids=tuple(str(r) for r in rec.get("related", [])),
                    parent=None if rec.get("parent") is None else str(rec["parent"]),
                    freq_rank=int(rec.get("rank", 0)),
                    count=float(rec.get("count", 0.0)),
                )
                if sense.id in inv.senses:
                    raise InventoryError(f"duplicate sense id {sense.id!r}", lineno)
                inv.senses[sense.id] = sense
            else:
                entry = WordEntry(
                    lemma=str(rec["lemma"]),
                    pos=str(rec["pos"]),
                    sense_ids=tuple(str(s) for s in rec["senses"]),
                )
                key = (entry.lemma, entry.pos)
                if key in inv.words:
                    raise InventoryError(f"duplicate word {key!r}", lineno)
                inv.words[key] = entry
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InventoryError):
                raise
            raise InventoryError(f"malformed {rec['type']} record: {exc}", lineno) from None

    validate_inventory(inv)
    if not math.isfinite(sum(s.count for s in inv.senses.values())):
        raise InventoryError("sense counts must be finite")
    inv.total_count = sum(s.count for s in inv.senses.values())
    return inv


def load_inventory_file(path: str) -> SenseInventory:
    with open(path, "rb") as fh:
        return load_inventory(fh)


def dump_inventory(inv: SenseInventory) -> str:
    """Serialize ``inv``; the output reloads to an equal inventory."""
    lines = []
    for s in inv.senses.values():
        rec = {
            "type": "sense",
            "id": s.id,
            "gloss": s.gloss,
            "pos": s.pos,
            "parent": s.parent,
            "related": list(s.related_gloss_ids),
            "rank": s.freq_rank,
            "count": s.count,
        }
        lines.append(json.dumps(rec, ensure_ascii=False))
    for w in inv.words.values():
        rec = {"type": "word", "lemma": w.lemma, "pos": w.pos, "senses": list(w.sense_ids)}
        lines.append(json.dumps(rec, ensure_ascii=False))
    return "".join(line + "\n" for line in lines)


# --------------------------------------------------------------------------
# taxonomy


def lowest_common_subsumer(a: str, b: str, inv: SenseInventory) -> str | None:
    """Deepest sense shared by the root paths of ``a`` and ``b``.

    Returns ``None`` when the two senses live under different roots.
    """
    ancestors_a = set(inv.root_path(a))
    for node in inv.root_path(b):
        if node in ancestors_a:
            return node
    return None


def subtree_counts(inv: SenseInventory) -> dict[str, float]:
    totals = {sid: 0.0 for sid in inv.senses}
    for s in inv.senses.values():
        if s.count:
            for node in inv.root_path(s.id):
                totals[node] += s.count
    return totals


def compute_ic(inv: SenseInventory) -> dict[str, float]:
    """Information content ``-ln(subtree_count / total_count)`` per sense.

    Senses with zero subtree mass get ``math.inf``.
    """
    totals = subtree_counts(inv)
    ic: dict[str, float] = {}
    for sid, c in totals.items():
        if c <= 0 or inv.total_count <= 0:
            ic[sid] = math.inf
        else:
            # clamp the -0.0 produced when p == 1
            ic[sid] = max(0.0, -math.log(c / inv.total_count))
    return ic


# --------------------------------------------------------------------------
# instances and keys


def _text_lines(source: IO[bytes] | IO[str] | bytes | str) -> Iterable[tuple[int, str]]:
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def load_instance(
    source: IO[bytes] | IO[str] | bytes | str, inv: SenseInventory | None = None
) -> ProblemInstance:
    lines = list(_text_lines(source))
    if not lines:
        raise InventoryError("instance file is empty (missing 'window <n>' header)")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "window":
        raise InventoryError("expected header 'window <n>'", lineno)
    try:
        n = int(parts[1])
    except ValueError:
        raise InventoryError(f"bad window size {parts[1]!r}", lineno) from None

    targets = []
    seen: set[str] = set()
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 3:
            raise InventoryError("expected '<instance_id> <lemma> <pos>'", lineno)
        iid, lemma, pos = parts
        if iid in seen:
            raise InventoryError(f"duplicate instance id {iid!r}", lineno)
        if inv is not None and (lemma, pos) not in inv.words:
            raise InventoryError(f"word ({lemma!r}, {pos!r}) not in inventory", lineno)
        seen.add(iid)
        targets.append(Target(iid, lemma, pos))
    if n != len(targets):
        raise InventoryError(f"window {n} does not match {len(targets)} target lines")
    return ProblemInstance(tuple(targets))


def load_instance_file(path: str, inv: SenseInventory | None = None) -> ProblemInstance:
    with open(path, "rb") as fh:
        return load_instance(fh, inv)


def dump_instance(instance: ProblemInstance) -> str:
    out = [f"window {instance.window_size}\n"]
    out.extend(f"{t.instance_id} {t.lemma} {t.pos}\n" for t in instance.targets)
    return "".join(out)


def load_key(source: IO[bytes] | IO[str] | bytes | str) -> dict[str, str]:
    key: dict[str, str] = {}
    for lineno, line in _text_lines(source):
        parts = line.split()
        if len(parts) != 2:
            raise InventoryError("expected '<instance_id> <sense_id>'", lineno)
        if parts[0] in key:
            raise InventoryError(f"duplicate instance id {parts[0]!r}", lineno)
        key[parts[0]] = parts[1]
    return key


def load_key_file(path: str) -> dict[str, str]:
    with open(path, "rb") as fh:
        return load_key(fh)


def dump_key(assignment: Mapping[str, str], order: Iterable[str] | None = None) -> str:
    ids = list(order) if order is not None else list(assignment)
    return "".join(f"{iid} {assignment[iid]}\n" for iid in ids if iid in assignment)


def order_by_pos(instance: ProblemInstance) -> ProblemInstance:
    """Stable sort of the targets into noun, verb, adj, adv groups."""
    targets = sorted(instance.targets, key=lambda t: POS_ORDER.get(t.pos, len(POS_ORDER)))
    return ProblemInstance(tuple(targets), instance.gold)
