"""Pure-Python twin of ``_ckernels``; used when the extension is not built.

Both implementations must add pair scores in the same order so that the
chosen optimum and its quality agree bit for bit.
"""

from __future__ import annotations

from itertools import product
from typing import Sequence


def enumerate_best(
    counts: Sequence[int], offsets: Sequence[int], matrix: Sequence[float], stride: int
) -> tuple[float, tuple[int, ...], int]:
    """Exhaustively maximise the unordered-pair sum over a flat score matrix.

    ``counts[i]`` candidates of word ``i`` occupy rows ``offsets[i]`` ..
    ``offsets[i] + counts[i] - 1`` of the ``stride`` x ``stride`` matrix.
    Candidates are enumerated in lexicographic order (last word fastest) and
    the first strict maximum wins. Returns ``(quality, choice, evaluated)``.
    """
    n = len(counts)
    best_q = -1.0
    best: tuple[int, ...] = tuple(0 for _ in range(n))
    evaluated = 0
    for choice in product(*(range(c) for c in counts)):
        rows = [offsets[i] + choice[i] for i in range(n)]
        q = 0.0
        for i in range(n):
            base = rows[i] * stride
            for j in range(i + 1, n):
                q += matrix[base + rows[j]]
        evaluated += 1
        if q > best_q:
            best_q = q
            best = choice
    return best_q, best, evaluated
