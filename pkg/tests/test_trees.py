"""Stratum trees: enumeration, canonical forms, forgetting, gluing.

Expected counts below were derived by hand before the enumeration existed:
trivalent trees are (2n-5)!!, one-edge strata are 2^(n-1) - n - 1, the 105
one-dim strata at n=6 decompose as 45 (middle vertex 4-valent) + 60 (end
vertex 4-valent), and the (7,1) count 1260 as 525 + 630 + 105 by valence
profile.  Totals 26 / 236 / 2752 / 39208 follow the series of leaf-labeled
trees without degree-2 vertices.
"""

import json
import random

import pytest

from stratadyn import trees
from oracles import (
    one_edge_refinements,
    random_stable_tree,
    relabel_vertices,
    strata_counts_by_refinement,
)


KNOWN_COUNTS = {
    4: {0: 3, 1: 1},
    5: {0: 15, 1: 10, 2: 1},
    6: {0: 105, 1: 105, 2: 25, 3: 1},
    7: {0: 945, 1: 1260, 2: 490, 3: 56, 4: 1},
}
KNOWN_TOTALS = {4: 4, 5: 26, 6: 236, 7: 2752, 8: 39208}


def test_counts_match_hand_values():
    for n, table in KNOWN_COUNTS.items():
        assert trees.count_strata_by_dim(n) == table


def test_counts_match_refinement_oracle():
    for n in range(4, 8):
        assert trees.count_strata_by_dim(n) == strata_counts_by_refinement(n)


def test_counts_n8():
    got = trees.count_strata_by_dim(8)
    assert got[0] == 10395          # 11!!
    assert got[1] == 17325
    assert got[4] == 2 ** 7 - 9     # one-edge strata
    assert got[5] == 1
    assert sum(got.values()) == KNOWN_TOTALS[8]


def test_counts_n8_refinement_oracle():
    assert trees.count_strata_by_dim(8) == strata_counts_by_refinement(8)


def test_dim_codim_complementary():
    for n in (5, 6):
        for k in range(0, n - 2):
            for t in trees.enumerate_strata(n, k):
                assert t.dim() == k
                assert t.codim() == n - 3 - k
                assert t.dim() + t.codim() == n - 3


def test_canonical_form_relabeling_invariance():
    rng = random.Random(20260816)
    for _ in range(1000):
        n = rng.randint(4, 8)
        t = random_stable_tree(rng, n)
        perm = list(range(len(t.parents)))
        rng.shuffle(perm)
        assert trees.canonical_form(relabel_vertices(t, perm)) == t


def test_canonical_form_idempotent():
    for t in trees.enumerate_strata(6, 1):
        assert trees.canonical_form(t) == t


def test_canonical_form_rejects_unstable():
    # a 2-valent vertex: path of 3 vertices with no leg in the middle
    bad = trees.MarkedTree(5, (-1, 0, 1), (0, 0, 0, 2, 2))
    with pytest.raises(ValueError):
        trees.canonical_form(bad)
    with pytest.raises(ValueError):
        trees.canonical_form(trees.MarkedTree(4, (-1, -1), (0, 0, 1, 1)))
    with pytest.raises(ValueError):
        trees.canonical_form(trees.MarkedTree(4, (1, 0), (0, 0, 1, 1)))


def test_splits_roundtrip():
    for k in (0, 1, 2):
        for t in trees.enumerate_strata(6, k):
            s = t.splits()
            assert len(s) == t.codim()
            assert trees.tree_from_splits(6, s) == t


def test_tree_from_splits_rejects_incompatible():
    # {2,3} and {3,4} overlap without nesting
    with pytest.raises(ValueError):
        trees.tree_from_splits(6, [frozenset({2, 3}), frozenset({3, 4})])


def test_induced_partition():
    assert trees.induced_partition(trees.trivial_tree(6)) == (3,)
    for t in trees.enumerate_strata(6, 1):
        assert trees.induced_partition(t) == (1,)
    for t in trees.enumerate_strata(6, 0):
        assert trees.induced_partition(t) == ()
    # (6,2): 25 one-edge strata, 10 with two 4-valent ends,
    # 15 with a 5-valent and a 3-valent end
    parts = {}
    for t in trees.enumerate_strata(6, 2):
        lam = trees.induced_partition(t)
        parts[lam] = parts.get(lam, 0) + 1
    assert parts == {(1, 1): 10, (2,): 15}


def test_forget_trivalent_keeps_dim():
    t = trees.tree_from_splits(6, [frozenset({3, 4})])  # dim 2
    img = trees.forget_pushforward(t, [1, 2, 3, 4, 5])  # mark 6 sits on the big vertex
    assert img is None  # 5-valent vertex loses a leg: class dies
    img2 = trees.forget_pushforward(t, [1, 2, 4, 5, 6])  # drop mark 3 (trivalent side)
    # {3,4} side contracts away; marks renumber 4,5,6 -> 3,4,5
    assert img2 == trees.trivial_tree(5)
    assert img2.dim() == 2


def test_forget_renumbering():
    # splits {{5,6}} on 6 marks, drop mark 2: kept 1,3,4,5,6 -> 1,2,3,4,5
    t = trees.tree_from_splits(6, [frozenset({5, 6})])
    # mark 2 sits on the 5-valent vertex: class dies
    assert trees.forget_pushforward(t, [1, 3, 4, 5, 6]) is None
    # drop mark 5 instead (on the trivalent vertex): split {5,6} contracts
    img = trees.forget_pushforward(t, [1, 2, 3, 4, 6])
    assert img == trees.trivial_tree(5)
    # now a dim-preserving case with an honest split left over:
    # 3-vertex chain, middle 4-valent; drop a leg of a trivalent end
    t2 = trees.tree_from_splits(6, [frozenset({2, 3}), frozenset({5, 6})])
    img2 = trees.forget_pushforward(t2, [1, 2, 3, 4, 5])  # drop 6
    assert img2.n == 5 and img2.dim() == t2.dim() == 1
    assert img2.splits() == {frozenset({2, 3})}


def test_forget_composition_order_independent():
    rng = random.Random(99)
    for _ in range(200):
        t = random_stable_tree(rng, 7)
        a = trees.forget_pushforward(t, [1, 2, 3, 4, 5])
        b = t
        for keep in ([1, 2, 3, 4, 5, 6], [1, 2, 3, 4, 5]):
            b = trees.forget_pushforward(b, keep) if b is not None else None
        assert a == b


def test_glue_identity():
    for t in trees.enumerate_strata(6, 1):
        v4 = next(v for v in range(len(t.parents)) if t.valence(v) == 4)
        assert trees.glue_substitution(t, v4, trees.trivial_tree(4)) == t


def test_glue_adds_expected_split():
    # host: one edge cutting {5,6}; big vertex has flags
    # legs 1,2,3,4 then the edge (away side {5,6}) -> small marks 1..5
    host = trees.tree_from_splits(6, [frozenset({5, 6})])
    big = next(v for v in range(len(host.parents)) if host.valence(v) == 5)
    small = trees.tree_from_splits(5, [frozenset({2, 3})])  # small split {2,3}
    glued = trees.glue_substitution(host, big, small)
    # small marks 2,3 are host legs 2,3, so the new edge cuts {2,3}
    assert glued.splits() == {frozenset({5, 6}), frozenset({2, 3})}
    assert glued.dim() == host.dim() - host.md(big) + small.dim()
    # and substituting the small split {4,5} maps to legs 4 + away {5,6}
    small2 = trees.tree_from_splits(5, [frozenset({4, 5})])
    glued2 = trees.glue_substitution(host, big, small2)
    assert glued2.splits() == {frozenset({5, 6}), frozenset({4, 5, 6})}


def test_glue_refinements_match_oracle():
    # gluing every 2-vertex small tree into a vertex reproduces exactly the
    # one-edge refinements at that vertex
    t = trees.trivial_tree(6)
    got = set()
    for small in trees.enumerate_strata(6, 2):
        if small.codim() == 1:
            got.add(trees.glue_substitution(t, 0, small))
    assert got == one_edge_refinements(t)


def test_json_roundtrip():
    for t in trees.enumerate_strata(5, 1):
        blob = json.dumps(t.to_json_dict(), sort_keys=True)
        assert trees.MarkedTree.from_json_dict(json.loads(blob)) == t


def test_enumerate_strata_limit():
    with pytest.raises(trees.ResourceError):
        trees.enumerate_strata(7, 1, limit=100)


def test_enumerate_strata_validates_range():
    with pytest.raises(ValueError):
        trees.enumerate_strata(6, 4)
    with pytest.raises(ValueError):
        trees.enumerate_strata(6, -1)
