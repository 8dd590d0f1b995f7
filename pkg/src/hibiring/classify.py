"""Ring-theoretic classification of a poset's Hibi ring.

Everything here is combinatorial: levelness is the collapse of the maximal
zigzag score to the global rank, the Cohen-Macaulay type is the number of
minimal interior valuations, Gorenstein means type one (equivalently, the
base poset is pure).  The two type-2 criteria give witness elements that
make type-2 detection possible even when full enumeration is out of budget.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .errors import SizeGuard
from .limits import MAX_BOX_VOLUME, MAX_SEQUENCES
from .poset import (
    ExtendedPoset,
    Poset,
    _induce,
    _rank_matrix,
    interval,
    is_pure,
    subposet_rank,
)
from .valuations import (
    Valuation,
    box_volume,
    enumerate_minimal,
    rank_valuation,
)
from .zigzag import ZigzagSequence, max_zigzag_score, sequence_to_dict


def as_extended(p: Poset | ExtendedPoset) -> ExtendedPoset:
    return p.extended if isinstance(p, Poset) else p


def floating_set(p: Poset | ExtendedPoset) -> frozenset[str]:
    """Elements lying on no maximum-length chain of the extended poset."""
    ep = as_extended(p)
    r = ep.r
    rank = ep.rank
    out = [
        ep.names[i]
        for i in ep.p_indices
        if rank[ep.x0_i, i] + rank[i, ep.top_i] < r
    ]
    return frozenset(out)


def is_gorenstein(p: Poset | ExtendedPoset) -> bool:
    """Purity of the base poset (not of the extended one)."""
    ep = as_extended(p)
    return is_pure(ep, (ep.names[i] for i in ep.p_indices))


def is_level(p: Poset | ExtendedPoset, *, max_sequences: int = MAX_SEQUENCES) -> bool:
    """Level iff no zigzag sequence scores above the global rank."""
    ep = as_extended(p)
    return max_zigzag_score(ep, max_sequences)[0] == ep.r


def cm_type(
    p: Poset | ExtendedPoset,
    *,
    max_box: int = MAX_BOX_VOLUME,
    max_sequences: int = MAX_SEQUENCES,
) -> int:
    """Number of canonical-module generators."""
    ep = as_extended(p)
    score = max_zigzag_score(ep, max_sequences)[0]
    return len(enumerate_minimal(ep, score, max_box=max_box))


def degree_histogram(
    p: Poset | ExtendedPoset,
    *,
    max_box: int = MAX_BOX_VOLUME,
    max_sequences: int = MAX_SEQUENCES,
) -> dict[int, int]:
    """Generator count per degree."""
    ep = as_extended(p)
    score = max_zigzag_score(ep, max_sequences)[0]
    gens = enumerate_minimal(ep, score, max_box=max_box)
    return dict(sorted(Counter(v.degree for v in gens).items()))


def floating_family(p: Poset | ExtendedPoset) -> list[Valuation]:
    """One more than |floating set| pairwise distinct minimal valuations of
    degree r, pushing floating elements up to their chain ceiling one by one."""
    ep = as_extended(p)
    r = ep.r
    rank = ep.rank
    floats = sorted(
        (ep.idx(e) for e in floating_set(ep)),
        key=lambda i: (int(rank[ep.x0_i, i]), ep.names[i]),
    )
    family = []
    for t in range(1, len(floats) + 2):
        vals = rank[:, ep.top_i].copy()
        for j, f in enumerate(floats, start=1):
            if j < t:
                vals[f] = r - rank[ep.x0_i, f]
        family.append(Valuation(ep, vals))
    return family


def level_type2_witness(p: Poset | ExtendedPoset) -> str | None:
    """The element characterizing a level ring of type 2, if one exists.

    Needed: its two-sided rank sum is r - 1, removing it leaves a pure
    poset of rank r, and both intervals from the bottom and to the top
    are pure.
    """
    ep = as_extended(p)
    r = ep.r
    rank = ep.rank
    all_names = set(ep.names)
    for z in sorted(ep.names[i] for i in ep.p_indices):
        zi = ep.idx(z)
        if rank[ep.x0_i, zi] + rank[zi, ep.top_i] != r - 1:
            continue
        rest = all_names - {z}
        if not (is_pure(ep, rest) and subposet_rank(ep, rest) == r):
            continue
        if not is_pure(ep, interval(ep, ep.x0_name, z)):
            continue
        if not is_pure(ep, interval(ep, z, ep.top_name)):
            continue
        return z
    return None


def nonlevel_type2_witness(p: Poset | ExtendedPoset) -> tuple[str, str] | None:
    """The cover pair characterizing a non-level ring of type 2, if any.

    Needed: a cover x < y away from the bottom whose crossing rank sum is
    r + 2, whose down-set and up-set jointly cover everything, while every
    other comparable pair keeps the three-term rank sum at r.
    """
    ep = as_extended(p)
    r = ep.r
    rank = ep.rank
    x0, top = ep.x0_i, ep.top_i
    candidates = sorted(
        (
            (ep.names[a], ep.names[b])
            for a, b in ep.covers_idx
            if a != x0 and b != top and a != top
        )
    )
    for xn, yn in candidates:
        xi, yi = ep.idx(xn), ep.idx(yn)
        if rank[x0, yi] + rank[xi, top] != r + 2:
            continue
        union = interval(ep, ep.x0_name, yn) | interval(ep, xn, ep.top_name)
        if union != set(ep.names):
            continue
        ok = True
        for z1 in range(ep.n):
            for z2 in range(ep.n):
                if not ep.leq[z1, z2] or (z1, z2) == (xi, yi):
                    continue
                if rank[x0, z1] + rank[z1, z2] + rank[z2, top] != r:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return (xn, yn)
    return None


@dataclass(frozen=True)
class CrossCheck:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class AnalysisReport:
    r: int
    r_max: int
    rmax_witness: ZigzagSequence
    floating: frozenset[str]
    gorenstein: bool
    level: bool
    cm_type: int | None
    degree_histogram: dict[int, int] | None
    level_type2_witness: str | None
    nonlevel_type2_witness: tuple[str, str] | None
    cross_checks: tuple[CrossCheck, ...]
    mode: str = "full"
    _ep: ExtendedPoset | None = field(default=None, repr=False, compare=False)

    @property
    def consistent(self) -> bool:
        return all(c.passed for c in self.cross_checks)

    def to_dict(self) -> dict:
        hist = None
        if self.degree_histogram is not None:
            hist = {str(k): v for k, v in sorted(self.degree_histogram.items())}
        witness = None
        if self._ep is not None:
            witness = sequence_to_dict(self._ep, self.rmax_witness)
        else:  # pragma: no cover - reports are always built with their poset
            witness = {"ys": list(self.rmax_witness.ys), "xs": list(self.rmax_witness.xs)}
        return {
            "r": self.r,
            "r_max": self.r_max,
            "rmax_witness": witness,
            "floating": sorted(self.floating),
            "gorenstein": self.gorenstein,
            "level": self.level,
            "cm_type": self.cm_type,
            "degree_histogram": hist,
            "level_type2_witness": self.level_type2_witness,
            "nonlevel_type2_witness": (
                list(self.nonlevel_type2_witness) if self.nonlevel_type2_witness else None
            ),
            "mode": self.mode,
            "cross_checks": [c.to_dict() for c in self.cross_checks],
        }


def classify(
    p: Poset | ExtendedPoset,
    *,
    max_box: int = MAX_BOX_VOLUME,
    max_sequences: int = MAX_SEQUENCES,
) -> AnalysisReport:
    """Full analysis with built-in cross-validation.

    When the search box exceeds ``max_box`` the report degrades to
    criteria-only mode: the type is reported exactly only when the
    gorenstein test or a type-2 witness pins it.
    """
    ep = as_extended(p)
    r = ep.r
    score, witness = max_zigzag_score(ep, max_sequences)
    floating = floating_set(ep)
    level = score == r
    gorenstein = is_gorenstein(ep)
    lt2 = level_type2_witness(ep)
    nlt2 = nonlevel_type2_witness(ep)

    volume = box_volume(ep, score)
    if volume <= max_box:
        mode = "full"
        gens = enumerate_minimal(ep, score, max_box=max_box)
        hist = dict(sorted(Counter(v.degree for v in gens).items()))
        ctype: int | None = len(gens)
    else:
        mode = "criteria-only"
        gens = None
        hist = None
        ctype = 1 if gorenstein else (2 if (lt2 or nlt2) else None)

    checks = _cross_checks(ep, r, score, floating, level, gorenstein, lt2, nlt2, gens)
    return AnalysisReport(
        r=r,
        r_max=score,
        rmax_witness=witness,
        floating=floating,
        gorenstein=gorenstein,
        level=level,
        cm_type=ctype,
        degree_histogram=hist,
        level_type2_witness=lt2,
        nonlevel_type2_witness=nlt2,
        cross_checks=tuple(checks),
        mode=mode,
        _ep=ep,
    )


def _cross_checks(ep, r, score, floating, level, gorenstein, lt2, nlt2, gens):
    checks: list[CrossCheck] = []

    def add(name: str, passed: bool, detail: str = ""):
        checks.append(CrossCheck(name, bool(passed), detail))

    def skip(name: str):
        checks.append(CrossCheck(name, True, "skipped: enumeration over budget"))

    if gens is not None:
        degrees = [v.degree for v in gens]
        ctype = len(gens)
        add(
            "level-iff-all-degrees-r",
            level == all(d == r for d in degrees),
            f"level={level}, degrees={sorted(set(degrees))}",
        )
        add("gorenstein-iff-type-1", gorenstein == (ctype == 1), f"type={ctype}")
        add(
            "type2-criteria-match-enumeration",
            ((lt2 is not None) == (level and ctype == 2))
            and ((nlt2 is not None) == (not level and ctype == 2)),
            f"witnesses=({lt2}, {nlt2}), level={level}, type={ctype}",
        )
        add(
            "histogram-support-interval",
            sorted(set(degrees)) == list(range(r, score + 1)),
            f"support={sorted(set(degrees))}, expected [{r}..{score}]",
        )
        add("type-exceeds-floating-count", ctype > len(floating), f"type={ctype}, |F|={len(floating)}")
        add(
            "type-at-least-degree-span",
            ctype >= score - r + 1,
            f"type={ctype}, span={score - r + 1}",
        )
    else:
        for name in (
            "level-iff-all-degrees-r",
            "gorenstein-iff-type-1",
            "type2-criteria-match-enumeration",
            "histogram-support-interval",
            "type-exceeds-floating-count",
            "type-at-least-degree-span",
        ):
            skip(name)

    if level:
        rest = set(ep.names) - floating
        pure = is_pure(ep, rest) and subposet_rank(ep, rest) == r
        add("level-implies-nonfloating-pure", pure, f"rank(P+ minus F)={subposet_rank(ep, rest)}")
        ind = _induce(ep, rest)
        sub_rank = _rank_matrix(len(ind.idxs), ind.covers)
        ok = True
        for a_pos, a_idx in enumerate(ind.idxs):
            for b_pos, b_idx in enumerate(ind.idxs):
                if ep.leq[a_idx, b_idx] and sub_rank[a_pos, b_pos] != ep.rank[a_idx, b_idx]:
                    ok = False
        add("level-implies-rank-restriction", ok)
    else:
        add("level-implies-nonfloating-pure", True, "skipped: not level")
        add("level-implies-rank-restriction", True, "skipped: not level")
    return checks
