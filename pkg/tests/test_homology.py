"""Stratum presentation of homology: ranks, relations, pairings, forgetting.

Rank values are pinned against the closed form (2^n - n^2 + n - 2)/2 for the
middle degree and the full classical tables 1/5/1 (n=5), 1/16/16/1 (n=6),
1/42/127/42/1 (n=7), which were not computed with this code.
"""

import random
from fractions import Fraction

import pytest

from stratadyn import homology, trees


def closed_form_rank(n):
    return (2 ** n - n * n + n - 2) // 2


def test_rank_tables():
    assert homology.homology_dims(5) == {0: 1, 1: 5, 2: 1}
    assert homology.homology_dims(6) == {0: 1, 1: 16, 2: 16, 3: 1}


def test_middle_rank_closed_form():
    for n in (5, 6, 7):
        assert homology.homology_basis(n, n - 4).rank == closed_form_rank(n)
    assert closed_form_rank(8) == 99


def test_rank_n7_table():
    assert homology.homology_dims(7) == {0: 1, 1: 42, 2: 127, 3: 42, 4: 1}


def test_duality_symmetry():
    for n in (5, 6, 7):
        dims = homology.homology_dims(n)
        for k in dims:
            assert dims[k] == dims[n - 3 - k]


def test_top_class_no_relations():
    for n in (4, 5, 6):
        assert homology.km_relations(n, n - 3) == []
        assert homology.homology_basis(n, n - 3).rank == 1


def test_km_relation_counts_small():
    # one quadruple of flags on the 4-mark space: three pairings, three
    # pairwise differences, rank 2, so H_0 has rank 1
    rels = homology.km_relations(4, 0)
    assert len(rels) == 3
    assert homology.homology_basis(4, 0).rank == 1
    # (6,2): relations come from the single 3-dim stratum: C(6,4) quadruples
    # times three differences
    assert len(homology.km_relations(6, 2)) == 45
    p = homology.homology_basis(6, 2)
    assert len(p.strata) == 25 and p.rank == 16


def test_five_one_presentation_shape():
    p = homology.homology_basis(5, 1)
    assert len(p.strata) == 10
    assert all(len(t.parents) == 2 for t in p.strata)
    assert p.rank == 5


def test_equivalent_pairings_reduce_equal():
    # the three pairings of marks 1..4 on the 4-mark space are homologous
    sides = [{1, 2}, {1, 3}, {1, 4}]
    ts = [trees.tree_from_splits(4, [trees.normalize_split(4, s)]) for s in sides]
    p = homology.homology_basis(4, 0)
    reds = [p.reduce_tree_dict({t: 1}) for t in ts]
    assert reds[0] == reds[1] == reds[2]


def test_km_relations_orthogonal_to_pairings():
    for n in (5, 6):
        splits = trees.all_splits(n)
        for row in homology.km_relations(n, 1):
            for s in splits:
                tot = sum(
                    c * homology.intersection_pairing_h2(t, s) for t, c in row.items()
                )
                assert tot == 0


def test_pairing_hand_values():
    # chain with edges cutting {2,3} and {5,6}: middle vertex has blocks
    # {1}, {4}, {2,3}, {5,6}
    t = trees.tree_from_splits(6, [frozenset({2, 3}), frozenset({5, 6})])
    cases = {
        frozenset({2, 3}): -1,          # one block
        frozenset({5, 6}): -1,
        frozenset({2, 3, 5, 6}): 1,     # two blocks
        frozenset({4, 5, 6}): 1,        # {4} + {5,6}
        frozenset({2, 3, 4}): 1,
        frozenset({3, 4}): 0,           # slices a block
        frozenset({4, 5}): 0,
        frozenset({2, 3, 5}): 0,
    }
    for s, val in cases.items():
        assert homology.intersection_pairing_h2(t, s) == val
    # complements give the same answers
    full = frozenset(range(1, 7))
    for s, val in cases.items():
        assert homology.intersection_pairing_h2(t, full - s) == val
    # the fundamental class of the 4-mark space meets every boundary point once
    t4 = trees.trivial_tree(4)
    assert [homology.intersection_pairing_h2(t4, s) for s in trees.all_splits(4)] == [1, 1, 1]


def test_solve_from_pairings_roundtrip():
    for n in (5, 6):
        p = homology.homology_basis(n, 1)
        splits = trees.all_splits(n)
        rng = random.Random(n)
        for _ in range(10):
            coeffs = {
                j: Fraction(rng.randint(-3, 3), rng.randint(1, 4))
                for j in rng.sample(range(p.rank), 3)
            }
            coeffs = {j: c for j, c in coeffs.items() if c}
            pair = {}
            for s in splits:
                tot = Fraction(0)
                for j, c in coeffs.items():
                    tot += c * homology.intersection_pairing_h2(p.strata[p.basis[j]], s)
                if tot:
                    pair[s] = tot
            assert homology.solve_class_from_pairings(p, pair) == coeffs


def test_solve_from_pairings_rejects_bad_vector():
    p = homology.homology_basis(5, 1)
    t = p.strata[p.basis[0]]
    pair = {s: homology.intersection_pairing_h2(t, s) for s in trees.all_splits(5)}
    corrupted = dict(pair)
    s0 = trees.all_splits(5)[0]
    corrupted[s0] = corrupted.get(s0, 0) + 1
    try:
        x = homology.solve_class_from_pairings(p, corrupted)
    except ValueError:
        return
    # if the corrupted vector happens to stay consistent it must at least
    # differ from the original class
    assert x != {0: Fraction(1)}


def test_pairing_matrix_full_rank():
    from stratadyn import linalg

    for n in (5, 6):
        p = homology.homology_basis(n, 1)
        space = linalg.RowSpace(pivot="min")
        for row in homology.pairing_rows(p):
            space.add(dict(row))
        assert space.dim() == p.rank


def test_class_reduce_validates_degree():
    p = homology.homology_basis(5, 1)
    with pytest.raises(ValueError):
        p.reduce_tree_dict({trees.trivial_tree(5): 1})
    with pytest.raises(ValueError):
        p.reduce_tree_dict({trees.trivial_tree(4): 1})


def test_forget_vec_basics():
    # drop mark 6: classes with the dropped mark on a moduli vertex die
    t_dead = trees.tree_from_splits(6, [frozenset({2, 3})])   # dim 2, mark 6 on 5-valent vertex
    assert homology.forget_vec({t_dead: 1}, [1, 2, 3, 4, 5]) == {}
    t_live = trees.tree_from_splits(6, [frozenset({2, 3}), frozenset({5, 6})])
    img = homology.forget_vec({t_live: 1}, [1, 2, 3, 4, 5])
    assert list(img.values()) == [1]
    (it,) = img.keys()
    assert it.splits() == {frozenset({2, 3})} and it.dim() == 1


def test_forget_vec_lands_in_presentation():
    src = homology.homology_basis(6, 1)
    tgt = homology.homology_basis(5, 1)
    for b in src.basis:
        vec = homology.forget_vec({src.strata[b]: 1}, [1, 2, 3, 4, 5])
        coords = tgt.reduce_tree_dict(vec)  # must not raise
        assert all(isinstance(v, (int, Fraction)) for v in coords.values())


def test_homology_basis_limit():
    with pytest.raises(trees.ResourceError):
        homology.homology_basis(7, 1, limit_strata=100)
