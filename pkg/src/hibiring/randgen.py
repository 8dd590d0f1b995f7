"""Seeded random posets for property testing.

A random DAG on n-1 labeled nodes (edge i -> j for i < j with the given
probability) is transitively reduced, then the designated minimum is added
below all minimal nodes.  Deterministic for a fixed (n, density, seed).
"""

from __future__ import annotations

import random

from .poset import Poset


def random_poset(n: int, density: float = 0.3, seed: int = 0) -> Poset:
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = random.Random(seed)
    k = n - 1
    edges = set()
    for i in range(k):
        for j in range(i + 1, k):
            if rng.random() < density:
                edges.add((i, j))

    reach = [set() for _ in range(k)]
    for i in range(k - 1, -1, -1):
        for (a, b) in sorted(edges):
            if a == i:
                reach[i].add(b)
                reach[i] |= reach[b]
    reduced = [
        (a, b)
        for (a, b) in sorted(edges)
        if not any(b in reach[m] for (a2, m) in edges if a2 == a and m != b)
    ]

    names = [f"v{i + 1}" for i in range(k)]
    has_in = {b for _, b in reduced}
    covers = [(names[a], names[b]) for a, b in reduced]
    covers += [("x0", names[i]) for i in range(k) if i not in has_in]
    return Poset(["x0"] + names, covers, "x0")
