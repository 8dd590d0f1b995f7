"""Order-reversing integer valuations and canonical-module generators.

A valuation assigns a natural number to every element of the extended
poset, zero at the top.  The interior ones (strictly decreasing upward,
positive on the base) form the exponent set of the canonical module; its
generators are exactly the minimal interior valuations.

Minimality of a single valuation is decided by :func:`ud_closure`, an
alternating up/down layering that either reaches the top (producing a
zigzag witness) or stalls on an ideal whose values can be uniformly
lowered.  Enumeration of all minimal valuations explores the finite box

    rank[x, top] <= v(x) <= max_score - rank[x0, x]

depth-first along a linear extension and filters with the closure; the
independent brute-force oracle re-enumerates the box naively and filters
by pairwise comparison instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from . import kernels
from .errors import (
    GapTooSmall,
    Inconsistent,
    InvalidDocument,
    NotAnIdeal,
    NotInterior,
    NotMinimal,
    NotZigzag,
    SizeGuard,
)
from .limits import MAX_BOX_VOLUME, MAX_SEQUENCES, ORACLE_CAP
from .poset import ExtendedPoset, _linear_extension
from .zigzag import ZigzagSequence, is_zigzag, max_zigzag_score


class Valuation:
    """An integer map on the extended poset, zero at the top element."""

    __slots__ = ("ep", "vals", "_key")

    def __init__(self, ep: ExtendedPoset, vals: np.ndarray):
        vals = np.asarray(vals, dtype=np.int64)
        if vals.shape != (ep.n,):
            raise InvalidDocument(f"expected {ep.n} values, got shape {vals.shape}")
        if vals[ep.top_i] != 0:
            raise InvalidDocument("top element must be valued 0")
        self.ep = ep
        self.vals = vals
        self.vals.setflags(write=False)
        self._key = None

    @classmethod
    def from_values(cls, ep: ExtendedPoset, mapping: Mapping[str, int]) -> "Valuation":
        vals = np.zeros(ep.n, dtype=np.int64)
        for name, value in mapping.items():
            i = ep.idx(name)
            if int(value) < 0:
                raise InvalidDocument(f"negative value for {name!r}")
            vals[i] = int(value)
        missing = [ep.names[i] for i in ep.p_indices if ep.names[i] not in mapping]
        if missing:
            raise InvalidDocument(f"values missing for {', '.join(sorted(missing))}")
        return cls(ep, vals)

    def __getitem__(self, name: str) -> int:
        return int(self.vals[self.ep.idx(name)])

    @property
    def degree(self) -> int:
        return int(self.vals[self.ep.x0_i])

    def as_dict(self) -> dict[str, int]:
        return {
            self.ep.names[i]: int(self.vals[i]) for i in sorted(self.ep.p_indices, key=lambda j: self.ep.names[j])
        }

    @property
    def sort_key(self) -> tuple:
        if self._key is None:
            self._key = (self.degree, tuple(sorted(self.as_dict().items())))
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, Valuation):
            return NotImplemented
        return self.as_dict() == other.as_dict()

    def __hash__(self) -> int:
        return hash(self.sort_key)

    def __repr__(self) -> str:
        body = ", ".join(f"{k}:{v}" for k, v in sorted(self.as_dict().items()))
        return f"Valuation({body})"


def rank_valuation(ep: ExtendedPoset) -> Valuation:
    """The valuation x -> rank[x, top]: always interior, always minimal,
    of degree equal to the global rank."""
    return Valuation(ep, ep.rank[:, ep.top_i].copy())


def is_order_reversing(v: Valuation) -> bool:
    """Membership in the ambient semigroup: nonneg, weakly decreasing upward."""
    ep, vals = v.ep, v.vals
    if (vals < 0).any():
        return False
    return all(vals[a] >= vals[b] for a, b in ep.covers_idx)


def is_interior(v: Valuation) -> bool:
    """Strictly decreasing along covers and positive below the top."""
    ep, vals = v.ep, v.vals
    if any(vals[i] <= 0 for i in ep.p_indices):
        return False
    return all(vals[a] > vals[b] for a, b in ep.covers_idx)


def leq(first: Valuation, second: Valuation) -> bool:
    """first <= second iff their difference is itself order-reversing."""
    ep = first.ep
    diff = second.vals - first.vals
    if (diff < 0).any():
        return False
    return all(diff[a] >= diff[b] for a, b in ep.covers_idx)


def excess_set(v: Valuation) -> frozenset[str]:
    """Elements valued strictly above their rank lower bound."""
    ep = v.ep
    mask = v.vals > ep.rank[:, ep.top_i]
    return frozenset(ep.names[i] for i in np.flatnonzero(mask))


def is_poset_ideal(ep: ExtendedPoset, subset: Iterable[str]) -> bool:
    """Downward-closedness of a subset of the extended poset."""
    idxs = {ep.idx(e) for e in subset}
    for i in idxs:
        for j in np.flatnonzero(ep.leq[:, i]):
            if j not in idxs:
                return False
    return True


def ideal_reduce(v: Valuation, ideal: Iterable[str]) -> Valuation:
    """Lower ``v`` by one on a downward-closed subset of the base poset.

    Requires the cross-boundary gap v(x) - v(y) >= 2 for every x in the
    ideal below some y outside it, which guarantees the result is interior
    and strictly smaller.
    """
    ep = v.ep
    idxs = sorted({ep.idx(e) for e in ideal})
    if not idxs:
        raise NotAnIdeal("ideal must be nonempty")
    if ep.top_i in idxs:
        raise NotAnIdeal("ideal must avoid the top element")
    if not is_interior(v):
        raise NotInterior("valuation is not interior")
    if not is_poset_ideal(ep, (ep.names[i] for i in idxs)):
        raise NotAnIdeal("subset is not downward closed")
    inside = np.zeros(ep.n, dtype=bool)
    inside[idxs] = True
    lt = ep.rank > 0
    for x in idxs:
        for y in np.flatnonzero(lt[x, :] & ~inside):
            if v.vals[x] - v.vals[y] < 2:
                raise GapTooSmall(
                    f"gap {ep.names[x]} -> {ep.names[y]} is {int(v.vals[x] - v.vals[y])} < 2"
                )
    reduced = Valuation(ep, v.vals - inside.astype(np.int64))
    if not is_interior(reduced):
        raise Inconsistent("ideal reduction left the interior")  # pragma: no cover
    return reduced


@dataclass(frozen=True)
class UDClosure:
    """Outcome of the alternating up/down layering for one valuation.

    ``layers`` alternates up-layers and down-layers starting with the first
    up-layer.  Reaching the top certifies minimality and yields a zigzag
    witness; stalling yields a reducible ideal certifying non-minimality.
    """

    layers: tuple[frozenset[str], ...]
    union: frozenset[str]
    reached_top: bool
    witness: ZigzagSequence | None
    reduction_ideal: frozenset[str] | None


def ud_closure(v: Valuation) -> UDClosure:
    ep = v.ep
    if not is_interior(v):
        raise NotInterior("valuation is not interior")
    rank, vals = ep.rank, v.vals
    lt = rank > 0
    x0, top = ep.x0_i, ep.top_i

    ucur = {int(y) for y in np.flatnonzero(rank[x0, :] == vals[x0] - vals)}
    layers: list[set[int]] = [ucur]
    acc = set(ucur)
    reached = top in ucur
    while not reached:
        down = {
            int(x)
            for x in range(ep.n)
            if x not in acc and any(lt[x, y] for y in ucur)
        }
        if not down:
            break
        layers.append(down)
        acc |= down
        up = {
            int(y)
            for y in range(ep.n)
            if y not in acc
            and any(lt[x, y] and rank[x, y] == vals[x] - vals[y] for x in down)
        }
        if not up:
            break
        layers.append(up)
        acc |= up
        ucur = up
        reached = top in up

    name_layers = tuple(frozenset(ep.names[i] for i in layer) for layer in layers)
    union = frozenset(ep.names[i] for i in acc)
    if not reached:
        return UDClosure(name_layers, union, False, None, union)

    witness = _extract_witness(ep, vals, layers)
    return UDClosure(name_layers, union, True, witness, None)


def _extract_witness(ep: ExtendedPoset, vals, layers: list[set[int]]) -> ZigzagSequence:
    """Back-walk from the top through the layers; ties resolved by name."""
    rank = ep.rank
    lt = rank > 0
    u_layers = layers[0::2]
    d_layers = layers[1::2]
    t = len(u_layers) - 1
    ys_rev: list[int] = []
    xs_rev: list[int] = []
    y_next = ep.top_i
    for s in range(t, 0, -1):
        xc = sorted(
            (x for x in d_layers[s - 1] if lt[x, y_next] and rank[x, y_next] == vals[x] - vals[y_next]),
            key=lambda i: ep.names[i],
        )
        if not xc:
            raise Inconsistent("up/down back-walk found no tight lower element")  # pragma: no cover
        x_s = xc[0]
        yc = sorted((y for y in u_layers[s - 1] if lt[x_s, y]), key=lambda i: ep.names[i])
        if not yc:
            raise Inconsistent("up/down back-walk found no covering upper element")  # pragma: no cover
        y_s = yc[0]
        xs_rev.append(x_s)
        ys_rev.append(y_s)
        y_next = y_s
    ys = tuple(ep.names[i] for i in reversed(ys_rev))
    xs = tuple(ep.names[i] for i in reversed(xs_rev))
    return ZigzagSequence(ys, xs)


def is_minimal(v: Valuation) -> bool:
    return ud_closure(v).reached_top


def truncate(v: Valuation, k: int) -> Valuation:
    """Lower a minimal valuation by k, clamped at the rank lower bound;
    the result is again minimal."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if not is_minimal(v):
        raise NotMinimal("truncation is only defined for minimal valuations")
    ep = v.ep
    return Valuation(ep, np.maximum(v.vals - k, ep.rank[:, ep.top_i]))


# -- extremal valuations from zigzag sequences ----------------------------------


def lower_valuation(ep: ExtendedPoset, seq: ZigzagSequence) -> Valuation:
    """Extremal valuation grown downward from a zigzag sequence.

    For a score-maximizing sequence this is a minimal valuation whose
    degree is the maximal score.
    """
    if not is_zigzag(ep, seq):
        raise NotZigzag(f"{seq!r} violates a zigzag condition")
    rank = ep.rank
    t = seq.t
    ys = [ep.idx(y) for y in seq.ys] + [ep.top_i]
    xs = [ep.idx(x) for x in seq.xs]
    mu = [0] * (t + 1)  # mu[i] for the (i+1)-th anchor, zero at the top anchor
    for i in range(t - 1, -1, -1):
        mu[i] = mu[i + 1] - int(rank[xs[i], ys[i]]) + int(rank[xs[i], ys[i + 1]])
    vals = np.zeros(ep.n, dtype=np.int64)
    for z in range(ep.n):
        vals[z] = max(
            int(rank[z, ys[i]]) + mu[i] for i in range(t + 1) if ep.leq[z, ys[i]]
        )
    return Valuation(ep, vals)


def upper_valuation(
    ep: ExtendedPoset, seq: ZigzagSequence, max_score: int | None = None
) -> Valuation:
    """Extremal valuation grown upward from a zigzag sequence; the dual
    construction to :func:`lower_valuation`, anchored at the maximal score."""
    if not is_zigzag(ep, seq):
        raise NotZigzag(f"{seq!r} violates a zigzag condition")
    if max_score is None:
        max_score = max_zigzag_score(ep)[0]
    rank = ep.rank
    t = seq.t
    ys = [ep.idx(y) for y in seq.ys]
    xs = [ep.x0_i] + [ep.idx(x) for x in seq.xs]
    mu = [0] * (t + 1)
    mu[0] = max_score
    for i in range(1, t + 1):
        mu[i] = mu[i - 1] - int(rank[xs[i - 1], ys[i - 1]]) + int(rank[xs[i], ys[i - 1]])
    vals = np.zeros(ep.n, dtype=np.int64)
    for z in range(ep.n):
        vals[z] = min(
            -int(rank[xs[i], z]) + mu[i] for i in range(t + 1) if ep.leq[xs[i], z]
        )
    return Valuation(ep, vals)


# -- enumeration ----------------------------------------------------------------


def box_bounds(ep: ExtendedPoset, max_score: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-element value bounds implied by interiority and the degree cap."""
    low = ep.rank[:, ep.top_i].copy()
    high = max_score - ep.rank[ep.x0_i, :]
    low[ep.top_i] = 0
    high[ep.top_i] = 0
    return low, high


def box_volume(ep: ExtendedPoset, max_score: int) -> int:
    low, high = box_bounds(ep, max_score)
    vol = 1
    for i in ep.p_indices:
        vol *= max(0, int(high[i]) - int(low[i]) + 1)
    return vol


def _cover_csr(ep: ExtendedPoset) -> tuple[np.ndarray, np.ndarray]:
    """Lower covers of each base element, CSR-indexed by element id."""
    lists: list[list[int]] = [[] for _ in range(ep.n)]
    for a, b in ep.covers_idx:
        if b != ep.top_i:
            lists[b].append(a)
    indptr = np.zeros(ep.n + 1, dtype=np.int64)
    for i in range(ep.n):
        indptr[i + 1] = indptr[i] + len(lists[i])
    idx = np.array([a for lst in lists for a in lst] or [0], dtype=np.int64)[: indptr[-1]]
    if indptr[-1] == 0:
        idx = np.zeros(0, dtype=np.int64)
    return indptr, idx


def interior_box_members(ep: ExtendedPoset, max_score: int, max_box: int = MAX_BOX_VOLUME) -> np.ndarray:
    """All interior valuations inside the search box, as an array of rows."""
    vol = box_volume(ep, max_score)
    if vol > max_box:
        raise SizeGuard("box volume", vol, max_box)
    low, high = box_bounds(ep, max_score)
    order = np.array(_linear_extension(ep), dtype=np.int64)
    indptr, idx = _cover_csr(ep)
    return kernels.enumerate_box(order, low, high, indptr, idx, ep.n)


def enumerate_minimal(
    ep: ExtendedPoset, max_score: int, *, max_box: int = MAX_BOX_VOLUME
) -> list[Valuation]:
    """All minimal interior valuations (canonical-module generators),
    sorted by degree then by values in element-name order."""
    members = interior_box_members(ep, max_score, max_box)
    if not len(members):
        return []
    mask = kernels.ud_reached_top(members, ep.rank, ep.x0_i, ep.top_i)
    out = [Valuation(ep, row.copy()) for row in members[mask]]
    out.sort(key=lambda v: v.sort_key)
    return out


def brute_force_minimal(
    ep: ExtendedPoset,
    max_score: int | None = None,
    *,
    cap: int = ORACLE_CAP,
    max_sequences: int = MAX_SEQUENCES,
) -> list[Valuation]:
    """Independent oracle: naive box enumeration plus pairwise comparison.

    Shares no search code with :func:`enumerate_minimal` (assignment in name
    order, all comparable pairs checked) and never consults the up/down
    closure: minimality is decided purely by pairwise domination.
    """
    size = ep.n - 1
    if size > cap:
        raise SizeGuard("poset size", size, cap)
    if max_score is None:
        max_score = max_zigzag_score(ep, max_sequences)[0]
    low, high = box_bounds(ep, max_score)
    elems = sorted(ep.p_indices, key=lambda i: ep.names[i])
    lt = ep.rank > 0
    rows: list[np.ndarray] = []
    vals = np.zeros(ep.n, dtype=np.int64)

    def assign(k: int) -> None:
        if k == len(elems):
            rows.append(vals.copy())
            return
        e = elems[k]
        for value in range(int(low[e]), int(high[e]) + 1):
            ok = True
            for j in elems[:k]:
                if lt[j, e] and not vals[j] > value:
                    ok = False
                    break
                if lt[e, j] and not value > vals[j]:
                    ok = False
                    break
            if ok:
                vals[e] = value
                assign(k + 1)
        vals[e] = 0

    assign(0)
    if not rows:
        return []
    members = np.stack(rows)
    cov_a = np.array([a for a, _ in ep.covers_idx], dtype=np.int64)
    cov_b = np.array([b for _, b in ep.covers_idx], dtype=np.int64)
    mask = kernels.pairwise_minimal(members, cov_a, cov_b)
    out = [Valuation(ep, row.copy()) for row in members[mask]]
    out.sort(key=lambda v: v.sort_key)
    return out


# -- serialization ---------------------------------------------------------------


def valuation_to_dict(v: Valuation, minimal: bool | None = None) -> dict:
    if minimal is None:
        minimal = is_minimal(v)
    return {"values": v.as_dict(), "degree": v.degree, "minimal": bool(minimal)}


def valuation_from_dict(ep: ExtendedPoset, doc: dict) -> Valuation:
    if not isinstance(doc, dict) or "values" not in doc:
        raise InvalidDocument("valuation document needs a 'values' object")
    return Valuation.from_values(ep, doc["values"])
