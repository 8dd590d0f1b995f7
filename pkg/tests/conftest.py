"""Shared fixtures and independent combinatorial oracles.

The oracle helpers below deliberately avoid the package's own closure and
rank machinery: they recompute order-theoretic facts straight from cover
lists so that tests compare two genuinely different routes.
"""

from __future__ import annotations

import json
from itertools import combinations
from pathlib import Path

import pytest

from hibiring import Poset, load_poset

FIXTURES = Path(__file__).parent / "fixtures"
FIXTURE_NAMES = ["chain3", "vee", "l6", "n7", "p1", "p2"]


def fixture_doc(name: str) -> dict:
    with open(FIXTURES / f"{name}.json", "r", encoding="utf-8") as fh:
        return json.load(fh)


def fixture_poset(name: str) -> Poset:
    return load_poset(FIXTURES / f"{name}.json")


@pytest.fixture(scope="session")
def posets() -> dict[str, Poset]:
    return {name: fixture_poset(name) for name in FIXTURE_NAMES}


# -- independent oracles ---------------------------------------------------


def reach_from_covers(covers) -> dict[str, set[str]]:
    """Strict reachability by repeated sweeps over the cover list."""
    up: dict[str, set[str]] = {}
    for a, b in covers:
        up.setdefault(a, set()).add(b)
        up.setdefault(b, set())
    changed = True
    while changed:
        changed = False
        for a in up:
            grown = set().union(*(up[c] | {c} for c in up[a])) if up[a] else set()
            if not grown <= up[a]:
                up[a] |= grown
                changed = True
    return up


def oracle_chains(elements, covers, lo, hi):
    """All saturated chains from lo to hi walking cover steps."""
    succ: dict[str, list[str]] = {e: [] for e in elements}
    for a, b in covers:
        succ[a].append(b)
    chains = []

    def walk(path):
        if path[-1] == hi:
            chains.append(tuple(path))
            return
        for nxt in succ[path[-1]]:
            walk(path + [nxt])

    walk([lo])
    return chains


def oracle_rank(elements, covers, lo, hi) -> int | None:
    chains = oracle_chains(elements, covers, lo, hi)
    if not chains:
        return 0 if lo == hi else None
    return max(len(c) - 1 for c in chains)


def oracle_maximal_chain_lengths(elements, covers) -> set[int]:
    """Lengths of all maximal chains of the poset given by the covers."""
    up = reach_from_covers(covers)
    down: dict[str, set[str]] = {e: set() for e in elements}
    for a in up:
        for b in up[a]:
            down[b].add(a)
    minimals = [e for e in elements if not down[e]]
    maximals = [e for e in elements if not up[e]]
    lengths = set()
    for lo in minimals:
        for hi in maximals:
            if hi == lo or hi in up[lo]:
                for c in oracle_chains(elements, covers, lo, hi):
                    lengths.add(len(c) - 1)
    return lengths


def induced_covers(elements, reach, subset):
    """Cover pairs of the subposet induced on ``subset`` from reachability."""
    sub = [e for e in elements if e in subset]
    pairs = []
    for a in sub:
        for b in sub:
            if b in reach.get(a, set()):
                if not any(c in reach.get(a, set()) and b in reach.get(c, set()) for c in sub):
                    pairs.append((a, b))
    return pairs


def oracle_ideals(elements, covers, x0) -> set[frozenset]:
    """Downward-closed nonempty subsets by filtering the whole power set."""
    reach = reach_from_covers(covers)
    down = {e: {a for a in elements if e in reach.get(a, set())} for e in elements}
    out = set()
    pool = [e for e in elements]
    for k in range(1, len(pool) + 1):
        for combo in combinations(pool, k):
            s = set(combo)
            if all(down[e] <= s for e in s):
                out.add(frozenset(s))
    return out
