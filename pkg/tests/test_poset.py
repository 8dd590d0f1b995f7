"""Poset construction, ranks, purity, ideals, duals and the three-sum scan."""

import pytest

from conftest import (
    fixture_doc,
    fixture_poset,
    induced_covers,
    oracle_ideals,
    oracle_maximal_chain_lengths,
    oracle_rank,
    reach_from_covers,
)
from hibiring import (
    TOP,
    CycleDetected,
    DuplicateElement,
    EmptySubset,
    NoUniqueMinimal,
    NonReducedCover,
    NotComparable,
    Poset,
    SizeGuard,
    UnknownElementInCover,
    dual,
    extend,
    global_rank,
    is_pure,
    parse_poset,
    poset_ideals,
    random_poset,
    rank_interval,
    subposet_rank,
    three_sum_check,
)


class TestParse:
    def test_chain3(self):
        p = fixture_poset("chain3")
        assert len(p) == 3 and p.x0 == "x0"

    def test_cycle(self):
        with pytest.raises(CycleDetected):
            parse_poset({"elements": ["a", "b"], "min": "a", "covers": [["a", "b"], ["b", "a"]]})

    def test_two_minimal(self):
        with pytest.raises(NoUniqueMinimal):
            parse_poset({"elements": ["x0", "a", "b"], "min": "x0",
                         "covers": [["a", "b"], ["x0", "b"]]})

    def test_duplicate_element(self):
        with pytest.raises(DuplicateElement):
            Poset(["x0", "a", "a"], [("x0", "a")], "x0")

    def test_unknown_in_cover(self):
        with pytest.raises(UnknownElementInCover):
            Poset(["x0", "a"], [("x0", "q")], "x0")

    def test_nonreduced_rejected(self):
        with pytest.raises(NonReducedCover):
            Poset(["x0", "a", "b"], [("x0", "a"), ("a", "b"), ("x0", "b")], "x0")

    def test_x0_not_minimal(self):
        with pytest.raises(NoUniqueMinimal):
            Poset(["x0", "a"], [("a", "x0")], "x0")

    def test_roundtrip(self):
        p = fixture_poset("n7")
        assert parse_poset(p.to_dict()) == p


class TestExtend:
    def test_chain3_top(self):
        ep = extend(fixture_poset("chain3"))
        assert ep.n == 4
        assert (("p2", TOP) in ep.covers_names)

    def test_n7_top_covers(self):
        ep = fixture_poset("n7").extended
        tops = sorted(a for a, b in ep.covers_names if b == TOP)
        assert tops == ["a3", "b2"]

    def test_vee_top_covers(self):
        ep = fixture_poset("vee").extended
        tops = sorted(a for a, b in ep.covers_names if b == TOP)
        assert tops == ["a", "b"]

    def test_closure_is_reachability(self):
        for name in ["n7", "p1"]:
            p = fixture_poset(name)
            ep = p.extended
            reach = reach_from_covers(ep.covers_names)
            for i, a in enumerate(ep.names):
                for j, b in enumerate(ep.names):
                    expected = (a == b) or (b in reach.get(a, set()))
                    assert bool(ep.leq[i, j]) == expected


class TestRank:
    def test_chain3(self):
        ep = fixture_poset("chain3").extended
        assert rank_interval(ep, "x0", TOP) == 3

    def test_n7_z_to_top(self):
        ep = fixture_poset("n7").extended
        assert rank_interval(ep, "z", TOP) == 3
        # independent: exhaustive chain enumeration
        assert oracle_rank(ep.names, ep.covers_names, "z", TOP) == 3

    def test_p1_intervals(self):
        ep = fixture_poset("p1").extended
        assert rank_interval(ep, "x0", "a5") == 5
        assert rank_interval(ep, "z", TOP) == 4
        assert oracle_rank(ep.names, ep.covers_names, "x0", "a5") == 5
        assert oracle_rank(ep.names, ep.covers_names, "z", TOP) == 4

    def test_not_comparable(self):
        ep = fixture_poset("n7").extended
        with pytest.raises(NotComparable):
            rank_interval(ep, "a1", "b1")

    def test_global_ranks(self):
        for name, r in [("chain3", 3), ("p1", 6), ("p2", 6), ("n7", 4), ("l6", 4)]:
            assert global_rank(fixture_poset(name).extended) == r, name

    def test_rank_against_oracle_random(self):
        for seed in range(12):
            ep = random_poset(7, 0.35, seed).extended
            for a in ep.names:
                for b in ep.names:
                    got = ep.rank[ep.idx(a), ep.idx(b)]
                    want = oracle_rank(ep.names, ep.covers_names, a, b)
                    assert got == (want if want is not None else -1)

    def test_superadditivity(self):
        for seed in range(8):
            ep = random_poset(8, 0.3, seed).extended
            n = ep.n
            for x in range(n):
                for z in range(n):
                    for y in range(n):
                        if ep.leq[x, z] and ep.leq[z, y]:
                            assert ep.rank[x, y] >= ep.rank[x, z] + ep.rank[z, y]

    def test_rank_one_iff_cover(self):
        ep = fixture_poset("p1").extended
        covers = set(ep.covers_names)
        for a in ep.names:
            for b in ep.names:
                i, j = ep.idx(a), ep.idx(b)
                if a != b and ep.leq[i, j]:
                    assert ep.rank[i, j] >= 1
                    assert (ep.rank[i, j] == 1) == ((a, b) in covers)


class TestPurity:
    def test_chain3_full(self):
        ep = fixture_poset("chain3").extended
        assert is_pure(ep, ep.names)

    def test_p1_with_and_without_z(self):
        ep = fixture_poset("p1").extended
        assert not is_pure(ep, ep.names)
        rest = set(ep.names) - {"z"}
        assert is_pure(ep, rest)
        assert subposet_rank(ep, rest) == 6

    def test_n7_base_not_pure(self):
        ep = fixture_poset("n7").extended
        base = [e for e in ep.names if e != TOP]
        assert not is_pure(ep, base)
        lengths = oracle_maximal_chain_lengths(base, [c for c in ep.covers_names if TOP not in c])
        assert lengths == {2, 3}

    def test_empty_subset(self):
        ep = fixture_poset("chain3").extended
        with pytest.raises(EmptySubset):
            is_pure(ep, [])

    def test_against_chain_oracle_random(self):
        for seed in range(15):
            ep = random_poset(7, 0.3, seed).extended
            base = [e for e in ep.names if e != TOP]
            for subset in (ep.names, base):
                covers = induced_covers(ep.names, reach_from_covers(ep.covers_names), set(subset))
                lengths = oracle_maximal_chain_lengths(list(subset), covers)
                assert is_pure(ep, subset) == (len(lengths) == 1)


class TestIdeals:
    def test_chain3(self):
        p = fixture_poset("chain3")
        assert poset_ideals(p) == [
            frozenset({"x0"}),
            frozenset({"x0", "p1"}),
            frozenset({"x0", "p1", "p2"}),
        ]

    def test_vee(self):
        assert len(poset_ideals(fixture_poset("vee"))) == 4

    def test_n7_against_subset_filter(self):
        p = fixture_poset("n7")
        got = set(poset_ideals(p))
        want = oracle_ideals(p.elements, p.covers, p.x0)
        assert got == want

    def test_random_against_subset_filter(self):
        for seed in range(10):
            p = random_poset(8, 0.3, seed)
            assert set(poset_ideals(p)) == oracle_ideals(p.elements, p.covers, p.x0)

    def test_every_ideal_contains_minimum(self):
        for seed in range(5):
            p = random_poset(9, 0.25, seed)
            assert all("x0" in i for i in poset_ideals(p))

    def test_size_guard(self):
        p = random_poset(12, 0.3, 1)
        with pytest.raises(SizeGuard):
            poset_ideals(p, cap=100)


class TestDual:
    def test_involution(self):
        for name in ["chain3", "n7", "p1"]:
            ep = fixture_poset(name).extended
            assert dual(dual(ep)) == ep

    def test_rank_transposed(self):
        ep = fixture_poset("n7").extended
        d = dual(ep)
        assert d.rank[d.idx(TOP), d.idx("z")] == 3
        assert (d.rank == ep.rank.T).all()

    def test_roles_swap(self):
        ep = fixture_poset("chain3").extended
        d = dual(ep)
        assert d.x0_name == TOP and d.top_name == "x0"
        assert d.r == ep.r


class TestThreeSum:
    def test_chain3(self):
        ep = fixture_poset("chain3").extended
        res = three_sum_check(ep, ep.names)
        assert res.constant == 3

    def test_p1_minus_floating(self):
        ep = fixture_poset("p1").extended
        res = three_sum_check(ep, set(ep.names) - {"z"})
        assert res.constant == 6

    def test_p1_full_counterexample(self):
        ep = fixture_poset("p1").extended
        res = three_sum_check(ep, ep.names)
        assert res.constant is None
        assert "z" in res.counterexample

    def test_constant_implies_pure(self):
        # random subsets: constant verdict must match purity at that rank
        for seed in range(15):
            ep = random_poset(7, 0.35, seed).extended
            subset = [e for i, e in enumerate(ep.names) if (seed + i) % 3 != 0] or [TOP]
            res = three_sum_check(ep, subset)
            if res.is_constant:
                assert is_pure(ep, subset)
                assert subposet_rank(ep, subset) == res.constant
