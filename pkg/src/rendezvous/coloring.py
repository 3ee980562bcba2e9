"""2-Ramsey edge coloring of the linear order on channels 1..n.

Channel ``k`` is labelled by the bit set of ``k - 1`` (least-significant bit
is position 1). For ``a < b`` the label of ``b - 1`` has a 1 where ``a - 1``
has a 0, and the edge ``(a, b)`` gets the smallest such position. Two edges
``(a, b)``, ``(b, c)`` then never share a color: the first color is a 1 of
``b - 1`` and the second a 0 of it.

Labelling by ``k - 1`` rather than ``k`` keeps every label inside
``log_sharp(n)`` bits, so the palette has exactly ``max(1, log_sharp(n))``
colors even when ``n`` is a power of two.
"""
from __future__ import annotations

from typing import Callable, Optional

import numpy as np

from .strings import log_sharp

VERIFY_CAP = 512

ColorRule = Callable[[int, int, int], int]


def palette_size(n: int) -> int:
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return max(1, log_sharp(n))


def bit_set(k: int, n: int) -> frozenset[int]:
    """Positions (1-indexed, LSB first) of the 1-bits in the label of channel ``k``."""
    if not 1 <= k <= n:
        raise ValueError(f"channel {k} outside [1, {n}]")
    label = k - 1
    return frozenset(i + 1 for i in range(label.bit_length()) if label >> i & 1)


def color_edge(a: int, b: int, n: int) -> int:
    if not 1 <= a < b <= n:
        raise ValueError(f"need 1 <= a < b <= n, got a={a}, b={b}, n={n}")
    diff = (b - 1) & ~(a - 1)
    return (diff & -diff).bit_length()


def color_matrix(n: int, rule: Optional[ColorRule] = None) -> np.ndarray:
    """``C[a, b]`` = color of edge (a, b) for ``1 <= a < b <= n``; zero elsewhere.

    Without ``rule`` the matrix is computed in closed form; with one, each
    edge is colored by calling ``rule(a, b, n)``.
    """
    palette_size(n)
    C = np.zeros((n + 1, n + 1), dtype=np.int64)
    if rule is None:
        lab = np.arange(n + 1, dtype=np.int64) - 1
        diff = lab[None, :] & ~lab[:, None]
        low = diff & -diff
        col = np.zeros_like(low)
        pos = low > 0
        col[pos] = np.log2(low[pos]).astype(np.int64) + 1
        C[1:, 1:] = np.triu(col[1:, 1:], k=1)
    else:
        for a in range(1, n + 1):
            for b in range(a + 1, n + 1):
                C[a, b] = rule(a, b, n)
    return C


def find_monochromatic_path(n: int, rule: Optional[ColorRule] = None) -> Optional[tuple[int, int, int]]:
    """Return some ``(a, b, c)`` with ``a < b < c`` and equal colors on both edges, or None.

    Exhaustive: for each middle vertex ``b`` the incoming colors
    ``C[a, b]`` are compared against every outgoing color ``C[b, c]``.
    """
    if n > VERIFY_CAP:
        raise ValueError(f"n = {n} above verification cap {VERIFY_CAP}")
    C = color_matrix(n, rule)
    for b in range(2, n):
        incoming = C[1:b, b]
        outgoing = C[b, b + 1:]
        hit = incoming[:, None] == outgoing[None, :]
        if hit.any():
            i, j = np.argwhere(hit)[0]
            return 1 + int(i), b, b + 1 + int(j)
    return None


def verify_ramsey(n: int, rule: Optional[ColorRule] = None) -> bool:
    return find_monochromatic_path(n, rule) is None
