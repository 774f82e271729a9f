import random
from fractions import Fraction
from itertools import combinations, product

import pytest

from oracles import grid_points, inside
from splitdom.constructive import cover_with_F3
from splitdom.dominance import (
    CellLimitExceeded,
    NoneWithin,
    covering_number_empirical,
    dominates,
    min_cover,
    union_dominates,
)
from splitdom.families import gen_S_gamma, random_split
from splitdom.splits import (
    Region,
    SplitSet,
    cube_window,
    enumerate_family,
    evaluate,
    is_cube_empty,
    normalize,
)

F = Fraction
S = SplitSet.of


def assert_sound_witness(report, s, splits):
    w = report.witness
    assert w is not None
    assert all(0 <= c <= 1 for c in w)
    assert evaluate(s, w) is Region.INSIDE
    assert all(evaluate(t, w) is not Region.INSIDE for t in splits)


class TestDominates:
    def test_case_one_instance(self):
        assert dominates(S((1, 1), 0), S((2, 3), 0)).dominated

    def test_counterexample(self):
        rep = dominates(S((1, 0), 0), S((1, 1), 1))
        assert not rep.dominated
        assert rep.witness == (1, F(1, 2))
        assert_sound_witness(rep, S((1, 1), 1), [S((1, 0), 0)])

    def test_reflexive(self):
        rng = random.Random(1)
        for _ in range(100):
            s = random_split(rng, rng.randint(1, 4), 5)
            assert dominates(s, s).dominated

    def test_empty_target(self):
        assert dominates(S((1, 0), 0), S((1, 1), 5)).dominated

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            dominates(S((1, 0), 0), S((1,), 0))

    def test_transitive_on_random_triples(self):
        rng = random.Random(5)
        hits = 0
        for _ in range(3000):
            n = rng.randint(1, 3)
            a, b, c = (random_split(rng, n, 2) for _ in range(3))
            if dominates(a, b).dominated and dominates(b, c).dominated:
                hits += 1
                assert dominates(a, c).dominated
        assert hits > 20

    def test_matches_grid_sampling(self):
        # a grid point inside s0 and outside s1 refutes dominance
        rng = random.Random(2)
        for _ in range(150):
            s1, s0 = random_split(rng, 2, 3), random_split(rng, 2, 3)
            rep = dominates(s1, s0)
            bad = [x for x in grid_points(2) if inside(s0.pi, s0.eta, x) and not inside(s1.pi, s1.eta, x)]
            if rep.dominated:
                assert not bad
            else:
                assert_sound_witness(rep, s0, [s1])


class TestUnionDominates:
    def test_two_unit_splits_cover(self):
        rep = union_dominates([S((1, 0), 0), S((0, 1), 0)], S((1, 1), 1))
        assert rep.dominated

    def test_one_unit_split_does_not(self):
        s = S((1, 1), 1)
        rep = union_dominates([S((1, 0), 0)], s)
        assert not rep.dominated
        assert rep.witness[0] == 1 and 0 < rep.witness[1] < 1
        assert_sound_witness(rep, s, [S((1, 0), 0)])

    def test_empty_list_empty_target(self):
        assert union_dominates([], S((1, 1), 2)).dominated

    def test_empty_list_nonempty_target(self):
        rep = union_dominates([], S((1, 1), 0))
        assert not rep.dominated
        assert_sound_witness(rep, S((1, 1), 0), [])

    def test_cell_limit(self):
        with pytest.raises(CellLimitExceeded):
            union_dominates([S((1,), 0)] * 3, S((1,), 0), cell_limit=2)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            union_dominates([S((1, 1), 0)], S((1,), 0))

    def test_lexicographically_first_failing_cell(self):
        # x1 = 0 side fails first
        s = S((1, 1, 1), 1)
        rep = union_dominates([S((1, 0, 0), 0)], s)
        assert rep.failing_cell == (0,)

    def test_grid_sampling_soundness(self):
        rng = random.Random(9)
        for _ in range(150):
            n = rng.randint(1, 3)
            s = random_split(rng, n, 3)
            splits = [random_split(rng, n, 2) for _ in range(rng.randint(1, 3))]
            rep = union_dominates(splits, s)
            if rep.dominated:
                for x in grid_points(n):
                    if inside(s.pi, s.eta, x):
                        assert any(inside(t.pi, t.eta, x) for t in splits), (s, splits, x)
            else:
                assert_sound_witness(rep, s, splits)

    def test_agrees_with_single_dominance_small_grid(self):
        splits2 = [SplitSet(2, pi, e) for pi in product(range(-2, 3), repeat=2) if any(pi)
                   for e in cube_window(pi)]
        for s1 in splits2:
            for s0 in splits2[::3]:
                assert dominates(s1, s0).dominated == union_dominates([s1], s0).dominated


class TestMinCover:
    def test_F1_square(self):
        res = min_cover(enumerate_family(2, 1), S((1, 1), 1), 3)
        assert res.size == 2
        assert union_dominates(res.splits, S((1, 1), 1)).dominated

    def test_empty_target(self):
        res = min_cover(enumerate_family(3, 3), S((1, 1, 1), 7), 3)
        assert res.size == 0

    def test_S_gamma_five_needs_two(self):
        fam = enumerate_family(3, 3)
        target = gen_S_gamma(5)
        assert not any(dominates(t, target).dominated for t in fam)
        constructed, _ = cover_with_F3(target)
        assert len(constructed) == 2 and union_dominates(constructed, target).dominated
        res = min_cover(fam, target, 3)
        assert res.size == 2 and res.optimal

    def test_none_within(self):
        s = S((1, 1, 1), 2)
        res = min_cover(enumerate_family(3, 1), s, 2)
        assert isinstance(res, NoneWithin)
        assert res.p_max == 2
        for w in res.witnesses:
            assert evaluate(s, w) is Region.INSIDE
        # certificate: no two family members cover every witness
        fam = [t for t in enumerate_family(3, 1)]
        for pair in combinations(fam, 2):
            assert any(all(evaluate(t, w) is not Region.INSIDE for t in pair) for w in res.witnesses)

    def test_indices_point_into_family(self):
        fam = enumerate_family(3, 2)
        s = S((2, 3, 4), 4)
        res = min_cover(fam, s, 3)
        assert tuple(fam[i] for i in res.indices) == res.splits

    @pytest.mark.parametrize("seed", range(4))
    def test_optimality_by_exhaustion(self, seed):
        rng = random.Random(seed)
        fam = list(enumerate_family(2, 2))
        assert len(fam) <= 60
        for _ in range(6):
            s = random_split(rng, 2, 6)
            res = min_cover(fam, s, 3)
            assert union_dominates(res.splits, s).dominated
            for size in range(res.size):
                for sub in combinations(fam, size):
                    assert not union_dominates(list(sub), s).dominated

    def test_normalization_invariant(self):
        rng = random.Random(4)
        fam = enumerate_family(3, 3)
        for _ in range(8):
            s = random_split(rng, 3, 4)
            ns, _ = normalize(s)
            assert min_cover(fam, s, 3).size == min_cover(fam, ns, 3).size

    def test_deterministic(self):
        fam = enumerate_family(3, 2)
        s = S((1, 3, -2), 0)
        assert min_cover(fam, s, 3) == min_cover(fam, s, 3)


class TestCoveringNumber:
    def test_F2_single_dominator_everywhere(self):
        tests = [SplitSet(2, pi, e) for pi in product(range(-6, 7), repeat=2) if any(pi)
                 for e in cube_window(pi)][::7]
        res = covering_number_empirical(enumerate_family(2, 2), tests, 2)
        assert res.value == 1

    def test_F3_on_S_gamma(self):
        tests = [gen_S_gamma(g) for g in range(1, 9)]
        res = covering_number_empirical(enumerate_family(3, 3), tests, 3)
        assert res.value == 2

    def test_F1_three_dims(self):
        res = covering_number_empirical(enumerate_family(3, 1), [S((1, 1, 1), 2)], 4)
        assert res.value == 3
        assert res.argmax == S((1, 1, 1), 2)

    def test_unbounded_reported(self):
        res = covering_number_empirical(enumerate_family(3, 1), [S((1, 1, 1), 2)], 2)
        assert res.value == float("inf")
        assert res.to_record()["unbounded_within_pmax"]

    def test_cube_empty_tests_count_zero(self):
        assert is_cube_empty(S((1, 1), 4))
        assert covering_number_empirical(enumerate_family(2, 1), [S((1, 1), 4)], 1).value == 0
