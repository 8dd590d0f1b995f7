"""Invariant suites shared by ``hibiring check`` and the test suite.

Each suite re-derives a fact along two independent routes and reports any
disagreement.  A failure here is an engine bug, never a property of the
input poset.
"""

from __future__ import annotations

from collections import Counter

from .classify import (
    classify,
    floating_family,
    floating_set,
    is_gorenstein,
    level_type2_witness,
    nonlevel_type2_witness,
)
from .errors import HibiError
from .limits import MAX_BOX_VOLUME, MAX_SEQUENCES, ORACLE_CAP
from .poset import Poset, is_pure, subposet_rank
from .valuations import (
    Valuation,
    brute_force_minimal,
    enumerate_minimal,
    ideal_reduce,
    interior_box_members,
    is_interior,
    is_minimal,
    leq,
    lower_valuation,
    truncate,
    ud_closure,
    upper_valuation,
)
from .zigzag import enumerate_zigzags, is_zigzag, max_zigzag_score, zigzag_score

UD_SAMPLE_LIMIT = 512


def run_poset_checks(
    p: Poset,
    *,
    oracle_cap: int = ORACLE_CAP,
    max_box: int = MAX_BOX_VOLUME,
    max_sequences: int = MAX_SEQUENCES,
) -> list[str]:
    """Run every invariant suite on one poset; returns failure messages."""
    failures: list[str] = []
    ep = p.extended
    r = ep.r

    seqs = enumerate_zigzags(ep, max_sequences)
    score, witness = max_zigzag_score(ep, max_sequences)
    if not all(is_zigzag(ep, s) for s in seqs):
        failures.append("zigzag enumeration produced an invalid sequence")
    if any(len(set(s.xs)) != len(s.xs) for s in seqs):
        failures.append("zigzag sequence with repeated lower elements")
    scores = [zigzag_score(ep, s) for s in seqs]
    if score != max(scores) or score < r:
        failures.append(f"max score {score} disagrees with rescan {max(scores)} (r={r})")
    if zigzag_score(ep, witness) != score:
        failures.append("max-score witness does not attain the maximum")

    gens = enumerate_minimal(ep, score, max_box=max_box)
    gen_set = set(gens)
    level = score == r
    floating = floating_set(ep)

    # oracle equivalence: pairwise comparison against the up/down route
    if ep.n - 1 <= oracle_cap:
        oracle = brute_force_minimal(ep, score, cap=oracle_cap)
        if set(oracle) != gen_set:
            failures.append(
                f"oracle mismatch: fast={len(gens)} brute={len(oracle)} generators"
            )

    degrees = sorted({v.degree for v in gens})
    if degrees != list(range(r, score + 1)):
        failures.append(f"degree support {degrees} is not the interval [{r}..{score}]")
    if any(not (r <= v.degree <= score) for v in gens):
        failures.append("generator degree out of range")

    if level != all(v.degree == r for v in gens):
        failures.append("levelness disagrees with generator degrees")

    gor = is_gorenstein(ep)
    if gor != (len(gens) == 1):
        failures.append(f"gorenstein={gor} but type={len(gens)}")

    lt2 = level_type2_witness(ep)
    nlt2 = nonlevel_type2_witness(ep)
    if (lt2 is not None) != (level and len(gens) == 2):
        failures.append(f"level type-2 witness {lt2!r} inconsistent with type {len(gens)}")
    if (nlt2 is not None) != (not level and len(gens) == 2):
        failures.append(f"non-level type-2 witness {nlt2!r} inconsistent with type {len(gens)}")

    if not len(gens) > len(floating):
        failures.append(f"type {len(gens)} not above floating count {len(floating)}")
    family = floating_family(ep)
    if len(set(family)) != len(floating) + 1:
        failures.append("floating family is not |F|+1 distinct valuations")
    for v in family:
        if v.degree != r or not is_minimal(v) or v not in gen_set:
            failures.append("floating family member not a degree-r generator")
            break
    if level:
        rest = set(ep.names) - floating
        if not (is_pure(ep, rest) and subposet_rank(ep, rest) == r):
            failures.append("level ring but non-floating part is not pure of rank r")
        rank = ep.rank
        for i in ep.p_indices:
            for j in range(ep.n):
                if ep.leq[i, j] and ep.names[i] not in floating and ep.names[j] not in floating:
                    s3 = rank[ep.x0_i, i] + rank[i, j] + rank[j, ep.top_i]
                    if s3 != r:
                        failures.append(
                            f"three-term rank sum {s3} != r for non-floating pair "
                            f"({ep.names[i]}, {ep.names[j]})"
                        )

    maximizers = [s for s, sc in zip(seqs, scores) if sc == score]
    for s in maximizers:
        for v in (lower_valuation(ep, s), upper_valuation(ep, s, score)):
            if v.degree != score or not is_minimal(v) or v not in gen_set:
                failures.append(f"extremal valuation of {s!r} is not a top-degree generator")
                break

    for v in gens:
        for k in range(0, v.degree - r + 2):
            if truncate(v, k) not in gen_set:
                failures.append(f"truncation by {k} left the generator set")
                break

    failures.extend(_ud_soundness(ep, score, max_box, gen_set))

    report = classify(p, max_box=max_box, max_sequences=max_sequences)
    for check in report.cross_checks:
        if not check.passed:
            failures.append(f"cross-check {check.name} failed: {check.detail}")

    # purity of all upper intervals forces levelness
    if all(
        is_pure(ep, interval_names)
        for i in ep.p_indices
        if i != ep.x0_i
        for interval_names in [
            [ep.names[j] for j in range(ep.n) if ep.leq[i, j]]
        ]
    ):
        if not level:
            failures.append("all upper intervals pure yet the ring is not level")

    return failures


def _ud_soundness(ep, score, max_box, gen_set) -> list[str]:
    """Per-candidate closure: witnesses must certify, stalls must reduce."""
    failures: list[str] = []
    members = interior_box_members(ep, score, max_box)
    step = max(1, len(members) // UD_SAMPLE_LIMIT)
    rank = ep.rank
    for row in members[::step]:
        v = Valuation(ep, row.copy())
        closure = ud_closure(v)
        if closure.reached_top != (v in gen_set):
            failures.append(f"closure verdict disagrees with enumeration for {v!r}")
            continue
        if closure.reached_top:
            w = closure.witness
            if not is_zigzag(ep, w):
                failures.append(f"closure witness {w!r} is not a zigzag sequence")
                continue
            anchors = zip([ep.x0_name] + list(w.xs), list(w.ys) + [ep.top_name])
            for lo, hi in anchors:
                want = ep.ranks[lo, hi]
                got = v[lo] - v[hi]
                if got != want:
                    failures.append(f"witness equality fails at ({lo}, {hi}): {got} != {want}")
            # D-terminated layer prefixes are downward closed
            for end in range(2, len(closure.layers) + 1, 2):
                prefix = frozenset().union(*closure.layers[:end])
                if not _downward_closed(ep, prefix):
                    failures.append("layer prefix is not a poset ideal")
                    break
        else:
            try:
                smaller = ideal_reduce(v, closure.reduction_ideal)
            except HibiError as exc:
                failures.append(f"reduction ideal rejected: {exc}")
                continue
            if not (is_interior(smaller) and leq(smaller, v) and smaller != v):
                failures.append("ideal reduction did not produce a smaller interior valuation")
    return failures


def _downward_closed(ep, names: frozenset[str]) -> bool:
    idxs = {ep.idx(e) for e in names}
    return all(
        int(j) in idxs for i in idxs for j in range(ep.n) if ep.leq[j, i]
    )


def describe_failures(p: Poset, failures: list[str]) -> str:
    import json

    doc = json.dumps(p.to_dict(), sort_keys=True)
    lines = [f"  - {msg}" for msg in failures]
    return "\n".join(lines + [f"  replay: {doc}"])
