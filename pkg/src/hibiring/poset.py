"""Finite posets with a unique minimal element.

A :class:`Poset` is described by its transitively reduced cover relation.
:func:`extend` adjoins a synthetic top element above all maximal elements and
precomputes the full order relation together with the table of interval
ranks (longest-chain lengths), which everything downstream consumes.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import *  # noqa: F401,F403 -- small, closed exception set
from .errors import (
    CycleDetected,
    DuplicateElement,
    EmptySubset,
    InvalidDocument,
    NoUniqueMinimal,
    NonReducedCover,
    NotComparable,
    SizeGuard,
    UnknownElement,
    UnknownElementInCover,
)
from .limits import MAX_IDEALS

#: Name of the synthetic top element.  Deliberately outside the element-name
#: alphabet so it can never collide with a user-supplied name.
TOP = "∞"

_NAME_RE = re.compile(r"^[A-Za-z0-9_]+$")


class Poset:
    """Immutable finite poset given by covers, with unique minimal element.

    Raises the specific ``InputError`` subclasses on malformed input:
    duplicate elements, covers mentioning unknown elements, cycles,
    transitively redundant covers, or a minimal element other than ``x0``.
    """

    def __init__(self, elements: Iterable[str], covers: Iterable[Sequence[str]], x0: str):
        elems = tuple(str(e) for e in elements)
        seen = set()
        for e in elems:
            if e in seen:
                raise DuplicateElement(f"duplicate element {e!r}")
            seen.add(e)
        if x0 not in seen:
            raise NoUniqueMinimal(f"declared minimum {x0!r} is not an element")

        pairs = []
        pair_set = set()
        for pair in covers:
            a, b = pair
            if a not in seen:
                raise UnknownElementInCover(f"cover ({a!r}, {b!r}) uses unknown element {a!r}")
            if b not in seen:
                raise UnknownElementInCover(f"cover ({a!r}, {b!r}) uses unknown element {b!r}")
            if a == b:
                raise CycleDetected(f"self-cover ({a!r}, {b!r})")
            if (a, b) not in pair_set:
                pair_set.add((a, b))
                pairs.append((a, b))

        self.elements: tuple[str, ...] = elems
        self.covers: tuple[tuple[str, str], ...] = tuple(pairs)
        self.x0: str = x0
        self._validate()

    # -- construction helpers -------------------------------------------------

    def _validate(self) -> None:
        n = len(self.elements)
        idx = {e: i for i, e in enumerate(self.elements)}
        succ: list[list[int]] = [[] for _ in range(n)]
        indeg = [0] * n
        for a, b in self.covers:
            succ[idx[a]].append(idx[b])
            indeg[idx[b]] += 1

        # Kahn topological sort; leftovers mean a cycle.
        queue = [i for i in range(n) if indeg[i] == 0]
        topo = []
        deg = list(indeg)
        while queue:
            v = queue.pop()
            topo.append(v)
            for w in succ[v]:
                deg[w] -= 1
                if deg[w] == 0:
                    queue.append(w)
        if len(topo) != n:
            stuck = sorted(self.elements[i] for i in range(n) if deg[i] > 0)
            raise CycleDetected(f"cover relation is cyclic (involves {', '.join(stuck)})")

        minimals = sorted(self.elements[i] for i in range(n) if indeg[i] == 0)
        if minimals != [self.x0]:
            raise NoUniqueMinimal(
                f"minimal elements are {{{', '.join(minimals)}}}, expected exactly {{{self.x0}}}"
            )

        # Reachability for the reducedness check.
        reach = [set() for _ in range(n)]
        for v in reversed(topo):
            for w in succ[v]:
                reach[v].add(w)
                reach[v] |= reach[w]
        for a, b in self.covers:
            ia, ib = idx[a], idx[b]
            if any(ib in reach[m] for m in succ[ia] if m != ib):
                raise NonReducedCover(f"cover ({a}, {b}) is implied by other covers")

    # -- basic queries ---------------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return (
            set(self.elements) == set(other.elements)
            and set(self.covers) == set(other.covers)
            and self.x0 == other.x0
        )

    def __hash__(self) -> int:
        return hash((frozenset(self.elements), frozenset(self.covers), self.x0))

    def __repr__(self) -> str:
        return f"Poset({len(self.elements)} elements, min={self.x0!r})"

    @cached_property
    def extended(self) -> "ExtendedPoset":
        return extend(self)

    def to_dict(self) -> dict:
        return {
            "elements": sorted(self.elements),
            "min": self.x0,
            "covers": sorted([a, b] for a, b in self.covers),
        }


def parse_poset(doc: dict) -> Poset:
    """Validate a poset document against the input schema and build a Poset.

    Schema: ``{"elements": [...], "min": "x0", "covers": [["a","b"], ...]}``
    with element names matching ``[A-Za-z0-9_]+``.  Unknown extra keys are
    tolerated (fixtures may carry an ``expect`` block).
    """
    if not isinstance(doc, dict):
        raise InvalidDocument("document must be a JSON object")
    for key in ("elements", "min", "covers"):
        if key not in doc:
            raise InvalidDocument(f"missing required key {key!r}")
    elements = doc["elements"]
    if not isinstance(elements, list) or not elements:
        raise InvalidDocument("'elements' must be a nonempty list")
    for e in elements:
        if not isinstance(e, str) or not _NAME_RE.match(e):
            raise InvalidDocument(f"bad element name {e!r} (expected [A-Za-z0-9_]+)")
    if not isinstance(doc["min"], str):
        raise InvalidDocument("'min' must be a string")
    covers = doc["covers"]
    if not isinstance(covers, list):
        raise InvalidDocument("'covers' must be a list of pairs")
    for pair in covers:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise InvalidDocument(f"bad cover entry {pair!r} (expected a pair)")
    return Poset(elements, [tuple(p) for p in covers], doc["min"])


def load_poset(path) -> Poset:
    """Read and parse a poset JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidDocument(f"{path}: not valid JSON ({exc})") from exc
    return parse_poset(doc)


class RankTable:
    """Name-addressed view of the interval-rank matrix of an extended poset."""

    def __init__(self, names: tuple[str, ...], matrix: np.ndarray, r: int):
        self._names = names
        self._index = {e: i for i, e in enumerate(names)}
        self.matrix = matrix
        self.r = r

    def __getitem__(self, pair: tuple[str, str]) -> int:
        x, y = pair
        try:
            v = self.matrix[self._index[x], self._index[y]]
        except KeyError as exc:
            raise UnknownElement(str(exc)) from exc
        if v < 0:
            raise NotComparable(f"{x} and {y} are not comparable")
        return int(v)


class ExtendedPoset:
    """A poset together with its synthetic top element and rank table.

    ``names`` lists all elements of the extended poset; ``x0_name`` and
    ``top_name`` are its minimum and maximum.  ``rank[i, j]`` is the longest
    chain length from ``i`` to ``j`` (-1 when incomparable); the full order
    relation is exactly ``rank >= 0``.
    """

    def __init__(
        self,
        names: tuple[str, ...],
        covers_idx: tuple[tuple[int, int], ...],
        x0_i: int,
        top_i: int,
        base: Poset | None,
    ):
        self.names = names
        self.n = len(names)
        self.index = {e: i for i, e in enumerate(names)}
        self.covers_idx = covers_idx
        self.x0_i = x0_i
        self.top_i = top_i
        self._base = base
        self.rank = _rank_matrix(self.n, covers_idx)
        self.leq = self.rank >= 0
        self.rank.setflags(write=False)
        self.leq.setflags(write=False)

    # -- structure -------------------------------------------------------------

    @property
    def x0_name(self) -> str:
        return self.names[self.x0_i]

    @property
    def top_name(self) -> str:
        return self.names[self.top_i]

    @property
    def r(self) -> int:
        return int(self.rank[self.x0_i, self.top_i])

    @cached_property
    def ranks(self) -> RankTable:
        return RankTable(self.names, self.rank, self.r)

    @cached_property
    def base(self) -> Poset:
        if self._base is not None:
            return self._base
        elems = [e for i, e in enumerate(self.names) if i != self.top_i]
        covers = [
            (self.names[a], self.names[b])
            for a, b in self.covers_idx
            if a != self.top_i and b != self.top_i
        ]
        return Poset(elems, covers, self.x0_name)

    @cached_property
    def p_indices(self) -> tuple[int, ...]:
        """Indices of the base elements (everything except the top)."""
        return tuple(i for i in range(self.n) if i != self.top_i)

    @cached_property
    def covers_names(self) -> tuple[tuple[str, str], ...]:
        return tuple((self.names[a], self.names[b]) for a, b in self.covers_idx)

    def idx(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownElement(f"unknown element {name!r}") from None

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExtendedPoset):
            return NotImplemented
        return (
            set(self.names) == set(other.names)
            and self.x0_name == other.x0_name
            and self.top_name == other.top_name
            and set(self.covers_names) == set(other.covers_names)
        )

    def __hash__(self) -> int:
        return hash((frozenset(self.names), self.x0_name, self.top_name))

    def __repr__(self) -> str:
        return f"ExtendedPoset({self.n} elements, r={self.r})"


def _rank_matrix(n: int, covers: tuple[tuple[int, int], ...]) -> np.ndarray:
    """All-pairs longest-path lengths over the cover DAG (-1 = unreachable)."""
    rank = np.full((n, n), -1, dtype=np.int64)
    np.fill_diagonal(rank, 0)
    indeg = np.zeros(n, dtype=np.int64)
    succ: list[list[int]] = [[] for _ in range(n)]
    pred: list[list[int]] = [[] for _ in range(n)]
    for a, b in covers:
        succ[a].append(b)
        pred[b].append(a)
        indeg[b] += 1
    queue = [i for i in range(n) if indeg[i] == 0]
    deg = indeg.copy()
    topo = []
    while queue:
        v = queue.pop()
        topo.append(v)
        for w in succ[v]:
            deg[w] -= 1
            if deg[w] == 0:
                queue.append(w)
    for v in topo:
        for u in pred[v]:
            via = np.where(rank[:, u] >= 0, rank[:, u] + 1, -1)
            rank[:, v] = np.maximum(rank[:, v], via)
    return rank


def extend(p: Poset) -> ExtendedPoset:
    """Adjoin the top element above all maximal elements of ``p``."""
    names = tuple(sorted(p.elements)) + (TOP,)
    idx = {e: i for i, e in enumerate(names)}
    top_i = len(names) - 1
    has_up = {a for a, _ in p.covers}
    covers = [(idx[a], idx[b]) for a, b in p.covers]
    covers += [(idx[m], top_i) for m in sorted(p.elements) if m not in has_up]
    return ExtendedPoset(names, tuple(covers), idx[p.x0], top_i, p)


def dual(ep: ExtendedPoset) -> ExtendedPoset:
    """The order-reversed extended poset: minimum and top swap roles."""
    covers = tuple((b, a) for a, b in ep.covers_idx)
    return ExtendedPoset(ep.names, covers, ep.top_i, ep.x0_i, None)


def rank_interval(ep: ExtendedPoset, x: str, y: str) -> int:
    """Longest-chain length within [x, y]; NotComparable when x is not <= y."""
    return ep.ranks[x, y]


def global_rank(ep: ExtendedPoset) -> int:
    return ep.r


def interval(ep: ExtendedPoset, x: str, y: str) -> frozenset[str]:
    """The closed interval {z : x <= z <= y} as a set of names."""
    i, j = ep.idx(x), ep.idx(y)
    mask = ep.leq[i, :] & ep.leq[:, j]
    return frozenset(ep.names[k] for k in np.flatnonzero(mask))


# -- induced subposets ---------------------------------------------------------


@dataclass(frozen=True)
class _Induced:
    """Cover relation, grading and ranks of an induced subposet."""

    idxs: tuple[int, ...]          # indices into the parent, sorted
    lt: np.ndarray                 # strict order, m x m
    covers: tuple[tuple[int, int], ...]  # positions within idxs
    level: np.ndarray              # longest path from a minimal element
    graded: bool                   # every cover climbs exactly one level
    rank_total: int                # longest chain in the subposet
    top_levels: tuple[int, ...]    # levels of the maximal elements


def _induce(ep: ExtendedPoset, subset: Iterable[str]) -> _Induced:
    names = sorted(set(subset))
    if not names:
        raise EmptySubset("subset must be nonempty")
    idxs = tuple(ep.idx(e) for e in names)
    sub = np.ix_(idxs, idxs)
    m = len(idxs)
    lt = ep.leq[sub] & ~np.eye(m, dtype=bool)
    through = (lt.astype(np.int8) @ lt.astype(np.int8)) > 0
    cov = lt & ~through
    order = np.argsort(lt.sum(axis=0), kind="stable")  # fewer elements below first
    level = np.zeros(m, dtype=np.int64)
    for v in order:
        below = np.flatnonzero(cov[:, v])
        if below.size:
            level[v] = level[below].max() + 1
    graded = all(level[b] == level[a] + 1 for a, b in zip(*np.nonzero(cov)))
    sinks = np.flatnonzero(~cov.any(axis=1))
    covers = tuple((int(a), int(b)) for a, b in zip(*np.nonzero(cov)))
    return _Induced(
        idxs=idxs,
        lt=lt,
        covers=covers,
        level=level,
        graded=graded,
        rank_total=int(level.max()),
        top_levels=tuple(int(level[s]) for s in sinks),
    )


def is_pure(ep: ExtendedPoset, subset: Iterable[str]) -> bool:
    """True iff all maximal chains of the induced subposet have equal length."""
    ind = _induce(ep, subset)
    return ind.graded and len(set(ind.top_levels)) == 1


def subposet_rank(ep: ExtendedPoset, subset: Iterable[str]) -> int:
    """Longest chain length within the induced subposet."""
    return _induce(ep, subset).rank_total


@dataclass(frozen=True)
class ThreeSumResult:
    constant: int | None
    counterexample: tuple[str, str, str, str] | None

    @property
    def is_constant(self) -> bool:
        return self.constant is not None


def three_sum_check(ep: ExtendedPoset, subset: Iterable[str]) -> ThreeSumResult:
    """Scan rank[z0,z1] + rank[z1,z2] + rank[z2,z3] over chains of the subset.

    z0 runs over minimal and z3 over maximal elements of the induced
    subposet; ranks are taken within the subposet.  Returns the common value
    when the sum is constant, otherwise the first offending quadruple in
    name order.
    """
    ind = _induce(ep, subset)
    m = len(ind.idxs)
    leq = ind.lt | np.eye(m, dtype=bool)
    rank = _rank_matrix(m, ind.covers)
    names = [ep.names[i] for i in ind.idxs]
    mins = [i for i in range(m) if not ind.lt[:, i].any()]
    maxs = [i for i in range(m) if not ind.lt[i, :].any()]
    expected: int | None = None
    for z0 in mins:
        for z3 in maxs:
            if not leq[z0, z3]:
                continue
            for z1 in range(m):
                if not (leq[z0, z1] and leq[z1, z3]):
                    continue
                for z2 in range(m):
                    if not (leq[z1, z2] and leq[z2, z3]):
                        continue
                    s = int(rank[z0, z1] + rank[z1, z2] + rank[z2, z3])
                    if expected is None:
                        expected = s
                    elif s != expected:
                        return ThreeSumResult(
                            None, (names[z0], names[z1], names[z2], names[z3])
                        )
    return ThreeSumResult(expected, None)


def poset_ideals(p: Poset, cap: int = MAX_IDEALS) -> list[frozenset[str]]:
    """All nonempty downward-closed subsets, ordered by size then names.

    Every nonempty ideal contains the unique minimal element.  Guarded by
    the potential count 2**(|P|-1).
    """
    potential = 2 ** (len(p.elements) - 1)
    if potential > cap:
        raise SizeGuard("potential ideal count", potential, cap)
    ep = p.extended
    order = [i for i in _linear_extension(ep) if i != ep.x0_i]
    below: dict[int, list[int]] = {
        e: [a for a, b in ep.covers_idx if b == e and a != ep.x0_i] for e in order
    }
    ideals: list[frozenset[str]] = []
    member = {ep.x0_i}

    def walk(k: int) -> None:
        if k == len(order):
            ideals.append(frozenset(ep.names[i] for i in member))
            return
        e = order[k]
        walk(k + 1)
        if all(c in member for c in below[e]):
            member.add(e)
            walk(k + 1)
            member.remove(e)

    walk(0)
    ideals.sort(key=lambda s: (len(s), tuple(sorted(s))))
    return ideals


def _linear_extension(ep: ExtendedPoset) -> list[int]:
    """Base elements ordered by (rank from the minimum, name); minimum first."""
    keys = [(int(ep.rank[ep.x0_i, i]), ep.names[i]) for i in ep.p_indices]
    return [i for _, i in sorted(zip(keys, ep.p_indices))]
