"""Alternating zigzag sequences and the maximal generator degree.

A zigzag sequence ``y1, x1, ..., yt, xt`` (possibly empty) must satisfy:

1. ``x1`` is not the minimum,
2. ``y1 > x1 < y2 > x2 < ... < yt > xt``,
3. ``yi`` is never above or equal to a later ``xj`` (i < j).

Condition 3 forces the ``xi`` (and the ``yi``) to be pairwise distinct, so
only finitely many sequences exist.  Each sequence is scored by the
alternating rank sum

    sum_i (rank[x_{i-1}, y_i] - rank[x_i, y_i]) + rank[x_t, top]

with ``x_0`` the minimum; the empty sequence scores the global rank ``r``.
The maximum score over all sequences is the largest degree of a generator
of the canonical module, and a maximizing sequence yields explicit extremal
generators (see :func:`hibiring.valuations.lower_valuation`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import NotZigzag, SizeGuard, UnknownElement
from .limits import MAX_SEQUENCES
from .poset import ExtendedPoset


@dataclass(frozen=True)
class ZigzagSequence:
    ys: tuple[str, ...]
    xs: tuple[str, ...]

    def __post_init__(self):
        if len(self.ys) != len(self.xs):
            raise ValueError("ys and xs must have equal length")
        object.__setattr__(self, "ys", tuple(self.ys))
        object.__setattr__(self, "xs", tuple(self.xs))

    @property
    def t(self) -> int:
        return len(self.ys)

    @property
    def is_empty(self) -> bool:
        return not self.ys

    def interleaved(self) -> tuple[str, ...]:
        out: list[str] = []
        for y, x in zip(self.ys, self.xs):
            out.extend((y, x))
        return tuple(out)

    def __repr__(self) -> str:
        return f"ZigzagSequence({', '.join(self.interleaved()) or 'empty'})"


EMPTY = ZigzagSequence((), ())


def is_zigzag(ep: ExtendedPoset, seq: ZigzagSequence) -> bool:
    """Check the three zigzag conditions; elements must belong to the base poset."""
    idx = []
    for e in seq.interleaved():
        i = ep.idx(e)
        if i == ep.top_i:
            raise UnknownElement(f"{e!r} is the top element, not a base element")
        idx.append(i)
    if seq.is_empty:
        return True
    ys = [ep.idx(y) for y in seq.ys]
    xs = [ep.idx(x) for x in seq.xs]
    lt = ep.rank > 0
    if xs[0] == ep.x0_i:
        return False
    t = len(ys)
    for i in range(t):
        if not lt[xs[i], ys[i]]:
            return False
        if i + 1 < t and not lt[xs[i], ys[i + 1]]:
            return False
    for i in range(t):
        for j in range(i + 1, t):
            if ep.leq[xs[j], ys[i]]:
                return False
    return True


def zigzag_score(ep: ExtendedPoset, seq: ZigzagSequence) -> int:
    """The alternating rank sum of a zigzag sequence (may be negative inside)."""
    if not is_zigzag(ep, seq):
        raise NotZigzag(f"{seq!r} violates a zigzag condition")
    rank = ep.rank
    prev = ep.x0_i
    total = 0
    for y, x in zip(seq.ys, seq.xs):
        yi, xi = ep.idx(y), ep.idx(x)
        total += int(rank[prev, yi]) - int(rank[xi, yi])
        prev = xi
    return total + int(rank[prev, ep.top_i])


def _walk(ep: ExtendedPoset, max_nodes: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], int]]:
    """Yield every zigzag sequence as index tuples with its score, preorder,
    children ordered by the (y, x) pair names."""
    rank = ep.rank
    top = ep.top_i
    x0 = ep.x0_i
    by_name = sorted(ep.p_indices, key=lambda i: ep.names[i])
    lt = rank > 0
    ups = {e: [y for y in by_name if lt[e, y]] for e in ep.p_indices}
    downs = {e: [x for x in by_name if lt[x, e] and x != x0] for e in ep.p_indices}

    count = 1
    if count > max_nodes:
        raise SizeGuard("zigzag sequence count", count, max_nodes)
    yield (), (), int(rank[x0, top])

    ys: list[int] = []
    xs: list[int] = []

    def extend(last_x: int, partial: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], int]]:
        nonlocal count
        for y in ups[last_x]:
            for x in downs[y]:
                if x in xs:
                    continue
                if any(ep.leq[x, yk] for yk in ys):
                    continue
                ys.append(y)
                xs.append(x)
                s = partial + int(rank[last_x, y]) - int(rank[x, y])
                count += 1
                if count > max_nodes:
                    raise SizeGuard("zigzag sequence count", count, max_nodes)
                yield tuple(ys), tuple(xs), s + int(rank[x, top])
                yield from extend(x, s)
                ys.pop()
                xs.pop()

    yield from extend(x0, 0)


def enumerate_zigzags(ep: ExtendedPoset, max_nodes: int = MAX_SEQUENCES) -> list[ZigzagSequence]:
    """Every zigzag sequence of the poset, the empty one first."""
    out = []
    for ys, xs, _ in _walk(ep, max_nodes):
        out.append(ZigzagSequence(tuple(ep.names[i] for i in ys), tuple(ep.names[i] for i in xs)))
    return out


def max_zigzag_score(
    ep: ExtendedPoset, max_nodes: int = MAX_SEQUENCES
) -> tuple[int, ZigzagSequence]:
    """Maximal score over all zigzag sequences together with a canonical
    maximizing witness: shortest, then lexicographically least by names."""
    best = None
    best_key: tuple | None = None
    for ys, xs, score in _walk(ep, max_nodes):
        if best is not None and score < best[0]:
            continue
        names = _interleave_names(ep, ys, xs)
        key = (len(names), names)
        if best is None or score > best[0] or key < best_key:
            best = (score, ZigzagSequence(names[0::2], names[1::2]))
            best_key = key
    assert best is not None  # the empty sequence always exists
    return best


def _interleave_names(ep, ys, xs) -> tuple[str, ...]:
    out: list[str] = []
    for y, x in zip(ys, xs):
        out.extend((ep.names[y], ep.names[x]))
    return tuple(out)


def sequence_to_dict(ep: ExtendedPoset, seq: ZigzagSequence) -> dict:
    return {"ys": list(seq.ys), "xs": list(seq.xs), "value": zigzag_score(ep, seq)}
