from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from conftest import K23_MATRIX, brute_isolation_index, cycle, k23, path

from metricsplit.graph import WeightedGraph
from metricsplit.lab import random_tree, random_weighting, sample_rng
from metricsplit.metric import DistanceMatrix, distance_matrix, lp_point_metric
from metricsplit.splits import (
    NotDecomposableError,
    NegativeResidueWeightError,
    SplitCapError,
    apply_cut_shift,
    cut_metric,
    cut_weighting,
    decompose,
    enumerate_splits,
    is_totally_decomposable,
    isolation_index,
    l1_embed,
    split_prime_residue_weighting,
)


def canonical_subsets(n):
    for r in range(1, n):
        for S in combinations(range(1, n), r):
            yield S


def test_cut_metric():
    assert cut_metric(3, [1]) == ((0, 1, 1), (1, 0, 0), (1, 0, 0))
    assert not any(any(r) for r in cut_metric(4, []))
    assert not any(any(r) for r in cut_metric(4, [1, 2, 3, 4]))


def test_isolation_index_p3():
    m = distance_matrix(path(3))
    assert isolation_index(m, [1], [2, 3]) == 1
    assert isolation_index(m, [2], [1, 3]) == 0
    assert isolation_index(m, [1]) == 1


def test_isolation_index_zero_metric():
    m = DistanceMatrix(((0,) * 4,) * 4)
    assert all(isolation_index(m, [i]) == 0 for i in range(1, 5))


def test_isolation_index_argument_errors():
    m = distance_matrix(path(3))
    with pytest.raises(ValueError):
        isolation_index(m, [])
    with pytest.raises(ValueError):
        isolation_index(m, [1], [1, 2])


@pytest.mark.parametrize("seed", range(10))
def test_isolation_index_matches_brute_force(seed):
    rng = sample_rng(seed)
    g = random_weighting(random_tree(6, rng), seed, "grid")
    # close a cycle so the metric is not always a tree metric
    extra = {(1, 6): Fraction(int(rng.integers(1, 10)), 3)}
    m = distance_matrix(WeightedGraph(6, {**extra, **g.weights}))
    for S in canonical_subsets(6):
        comp = [i for i in range(1, 7) if i not in S]
        assert isolation_index(m, S) == brute_isolation_index(m.d, S, comp)


def test_enumerate_splits_p3():
    splits = enumerate_splits(distance_matrix(path(3)))
    assert [(s.S, s.alpha) for s in splits] == [((1,), 1), ((1, 2), 1)]


def test_k23_split_prime():
    m = distance_matrix(k23())
    assert enumerate_splits(m) == []
    assert all(brute_isolation_index(K23_MATRIX, S, [i for i in range(1, 6) if i not in S]) == 0 for S in canonical_subsets(5))


def test_one_point_metric_has_no_splits():
    assert enumerate_splits(DistanceMatrix(((0,),))) == []


def test_split_cap():
    m = distance_matrix(path(5))
    with pytest.raises(SplitCapError):
        enumerate_splits(m, cap=4)


def test_decompose_p3():
    dec = decompose(distance_matrix(path(3)))
    assert dec.totally_decomposable
    assert dec.residue == ((0,) * 3,) * 3
    assert dec.reconstruct() == distance_matrix(path(3)).d


def test_decompose_k23():
    dec = decompose(distance_matrix(k23()))
    assert dec.splits == () and dec.residue == K23_MATRIX
    assert not dec.totally_decomposable


def test_decompose_zero_metric():
    dec = decompose(DistanceMatrix(((0,) * 3,) * 3))
    assert dec.splits == () and dec.totally_decomposable


def test_decompose_as_dict_uses_fraction_strings():
    g = path(3, [Fraction(1, 3), Fraction(1, 2)])
    d = decompose(distance_matrix(g)).as_dict()
    assert d["splits"] == [{"S": [1], "alpha": "1/3"}, {"S": [1, 2], "alpha": "1/2"}]


def test_totally_decomposable():
    assert is_totally_decomposable(distance_matrix(path(3)))
    assert not is_totally_decomposable(distance_matrix(k23()))


@pytest.mark.parametrize("n", range(2, 9))
def test_unit_trees_totally_decomposable(n):
    for seed in range(5):
        assert is_totally_decomposable(distance_matrix(random_tree(n, sample_rng(seed, n))))


def test_l1_embed_p3():
    ps = l1_embed(distance_matrix(path(3)))
    assert ps.points == ((1, 1), (0, 1), (0, 0))
    assert lp_point_metric(ps) == distance_matrix(path(3))


def test_l1_embed_zero_metric():
    ps = l1_embed(DistanceMatrix(((0,) * 3,) * 3))
    assert ps.k == 0 and len(ps.points) == 3


def test_l1_embed_single_cut():
    m = DistanceMatrix(cut_metric(4, [1, 3]))
    assert l1_embed(m).points == ((1,), (0,), (1,), (0,))


def test_l1_embed_rejects_prime_residue():
    with pytest.raises(NotDecomposableError):
        l1_embed(distance_matrix(k23()))


def test_cut_weighting():
    assert cut_weighting(path(3), [1]).weights == {(1, 2): 1, (2, 3): 0}
    assert all(w == 0 for w in cut_weighting(path(3), []).weights.values())
    assert all(w == 1 for w in cut_weighting(k23(), [4, 5]).weights.values())
    assert cut_weighting(cycle(4), [1, 2]).bridges() == [(1, 4), (2, 3)]


def test_cut_shift_p3():
    base = distance_matrix(path(3))
    g = apply_cut_shift(path(3), [1], -1)
    assert g.weights == {(1, 2): 0, (2, 3): 1}
    assert distance_matrix(g).d == ((0, 0, 1), (0, 0, 1), (1, 1, 0))
    assert apply_cut_shift(path(3), [1], 0) == path(3)
    shifted = distance_matrix(apply_cut_shift(path(3), [1], 5))
    cut = cut_metric(3, [1])
    assert shifted.d == tuple(tuple(base.d[i][j] + 5 * cut[i][j] for j in range(3)) for i in range(3))


def test_cut_shift_rejects_out_of_range():
    with pytest.raises(ValueError):
        apply_cut_shift(path(3), [1], Fraction(-3, 2))
    with pytest.raises(ValueError):
        apply_cut_shift(path(3), [2], 1)


def test_residue_weighting():
    assert all(w == 0 for w in split_prime_residue_weighting(path(3)).weights.values())
    assert split_prime_residue_weighting(k23()) == k23()


@pytest.mark.parametrize("seed", range(10))
def test_residue_weighting_tree_is_zero(seed):
    g = random_weighting(random_tree(7, sample_rng(seed)), seed)
    psi = split_prime_residue_weighting(g)
    assert not np.any(distance_matrix(psi).array())


def test_residue_weighting_error_type():
    assert issubclass(NegativeResidueWeightError, ValueError)
