"""Hurwitz data, labeled-cover counts, and degeneration bookkeeping.

The two worked examples are pinned against raw brute-force counters written
here from scratch: all permutation tuples are enumerated without any of the
library's pruning, and classes are deduplicated by minimal conjugate.
"""

import itertools

import pytest

from stratadyn import trees
from stratadyn.hurwitz import (
    HurwitzData,
    count_covers,
    count_covers_orbit_stabilizer,
    degeneration_degree_check,
    enumerate_cover_classes,
    enumerate_cover_types,
    fully_mark,
    validate,
)
from stratadyn.trees import ResourceError


def fig1_datum():
    """Degree-3 datum with four branch values and one free branch point
    over each of b1, b2, b4."""
    return HurwitzData(
        a_marks=["a1", "a2", "a3", "a4"],
        b_marks=["b1", "b2", "b3", "b4"],
        d=3,
        f_map={"a1": "b1", "a2": "b2", "a3": "b3", "a4": "b3"},
        br={"b1": [1, 2], "b2": [1, 2], "b3": [1, 2], "b4": [1, 2]},
        rm={"a1": 2, "a2": 2, "a3": 2, "a4": 1},
        forget_to=["a1", "a2", "a3", "a4"],
        identify={"b1": "a1", "b2": "a2", "b3": "a3", "b4": "a4"},
    )


def d2_datum():
    """Degree-2 datum: two simple branch values, two unbranched values."""
    return HurwitzData(
        a_marks=["a1", "a2", "a3"],
        b_marks=["b1", "b2", "b3", "b4"],
        d=2,
        f_map={"a1": "b1", "a2": "b2", "a3": "b3"},
        br={"b1": [2], "b2": [2], "b3": [1, 1], "b4": [1, 1]},
        rm={"a1": 2, "a2": 2, "a3": 1},
    )


def d1_datum(n=5):
    """Degree-1 datum: the identity correspondence on an n-mark space."""
    a = ["a%d" % i for i in range(1, n + 1)]
    b = ["b%d" % i for i in range(1, n + 1)]
    return HurwitzData(
        a_marks=a,
        b_marks=b,
        d=1,
        f_map={ai: bi for ai, bi in zip(a, b)},
        br={bi: [1] for bi in b},
        rm={ai: 1 for ai in a},
        forget_to=a,
        identify={bi: ai for bi, ai in zip(b, a)},
    )


# -- brute-force oracles ------------------------------------------------------


def _compose(p, q):
    return tuple(p[q[i]] for i in range(len(p)))


def _ctype(p):
    seen = [False] * len(p)
    lens = []
    for i in range(len(p)):
        if seen[i]:
            continue
        ln, j = 0, i
        while not seen[j]:
            seen[j] = True
            ln += 1
            j = p[j]
        lens.append(ln)
    return tuple(sorted(lens))


def _conj(h, g):
    hinv = [0] * len(h)
    for i, v in enumerate(h):
        hinv[v] = i
    return tuple(h[g[hinv[i]]] for i in range(len(g)))


def _transitive(perms, d):
    reach = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in perms:
            if g[x] not in reach:
                reach.add(g[x])
                frontier.append(g[x])
    return len(reach) == d


def brute_fig1_count():
    """All 6^4 permutation quadruples, filtered and deduplicated by hand.

    Every fiber of the example has distinct ramification indices, so the mark
    labeling is determined by the tuple and classes are conjugation orbits.
    """
    s3 = list(itertools.permutations(range(3)))
    ident = (0, 1, 2)
    good = []
    for quad in itertools.product(s3, repeat=4):
        if any(_ctype(g) != (1, 2) for g in quad):
            continue
        prod = ident
        for g in quad:
            prod = _compose(prod, g)
        if prod != ident:
            continue
        if not _transitive(quad, 3):
            continue
        good.append(quad)
    assert len(good) == 24
    keys = {min(tuple(_conj(h, g) for g in quad) for h in s3) for quad in good}
    return len(keys)


def brute_d2_count():
    """Degree-2 oracle including the forced labelings of the trivial fibers.

    The only transitive tuple is (swap, swap, id, id); a labeled cover also
    chooses which fixed sheet carries a3 over b3 and which carries the first
    free mark over b4.  Classes are orbits under the sheet swap.
    """
    s2 = [(0, 1), (1, 0)]
    ident = (0, 1)
    tuples = []
    for quad in itertools.product(s2, repeat=4):
        if _ctype(quad[0]) != (2,) or _ctype(quad[1]) != (2,):
            continue
        if _ctype(quad[2]) != (1, 1) or _ctype(quad[3]) != (1, 1):
            continue
        prod = ident
        for g in quad:
            prod = _compose(prod, g)
        if prod != ident or not _transitive(quad, 2):
            continue
        tuples.append(quad)
    assert len(tuples) == 1
    keys = set()
    for quad in tuples:
        for s3_sheet in (0, 1):
            for s4_sheet in (0, 1):
                keys.add(
                    min(
                        (tuple(_conj(h, g) for g in quad), h[s3_sheet], h[s4_sheet])
                        for h in s2
                    )
                )
    return len(keys)


# -- validation and full marking ----------------------------------------------


def test_validate_examples():
    assert validate(fig1_datum()).status == "plain"
    assert validate(d2_datum()).status == "plain"
    assert validate(d1_datum()).status == "fully_marked"


def test_validate_rejects_bad_partition():
    h = fig1_datum()
    bad = HurwitzData(h.a_marks, h.b_marks, h.d, h.f_map,
                      {"b1": [2, 2], "b2": [1, 2], "b3": [1, 2], "b4": [1, 2]}, h.rm)
    res = validate(bad)
    assert res.status == "invalid" and "partition" in res.reason


def test_validate_rejects_wrong_total_branching():
    # unbranched everywhere: total 0 instead of 2d-2 = 4
    h = fig1_datum()
    bad = HurwitzData(h.a_marks, h.b_marks, h.d, h.f_map, {},
                      {a: 1 for a in h.a_marks})
    res = validate(bad)
    assert res.status == "invalid" and "2d-2" in res.reason


def test_validate_rejects_rm_exceeding_branching():
    h = fig1_datum()
    rm = dict(h.rm)
    rm["a4"] = 3
    res = validate(HurwitzData(h.a_marks, h.b_marks, h.d, h.f_map, h.br, rm))
    assert res.status == "invalid"


def test_validate_rejects_bad_f_and_duplicates():
    h = fig1_datum()
    res = validate(HurwitzData(h.a_marks, h.b_marks, h.d,
                               {"a1": "b9", "a2": "b2", "a3": "b3", "a4": "b3"},
                               h.br, h.rm))
    assert res.status == "invalid"
    res = validate(HurwitzData(["a1", "a1", "a3", "a4"], h.b_marks, h.d,
                               h.f_map, h.br, h.rm))
    assert res.status == "invalid"


def test_validate_rejects_broken_identify():
    h = fig1_datum()
    res = validate(HurwitzData(h.a_marks, h.b_marks, h.d, h.f_map, h.br, h.rm,
                               forget_to=h.forget_to,
                               identify={"b1": "a1", "b2": "a1", "b3": "a3", "b4": "a4"}))
    assert res.status == "invalid"


def test_fully_mark_fig1():
    full, deg = fully_mark(fig1_datum())
    assert deg == 1
    assert full.a_marks == ("a1", "a2", "a3", "a4",
                            "a(b1,1)", "a(b2,1)", "a(b4,1)", "a(b4,2)")
    assert full.rm["a(b4,2)"] == 2 and full.rm["a(b4,1)"] == 1
    assert full.f_map["a(b4,2)"] == "b4"
    assert validate(full).status == "fully_marked"
    assert full.forget_to == ("a1", "a2", "a3", "a4")


def test_fully_mark_d2_primes_repeated_names():
    full, deg = fully_mark(d2_datum())
    assert deg == 2
    assert full.a_marks == ("a1", "a2", "a3", "a(b3,1)", "a(b4,1)", "a(b4,1)'")
    assert validate(full).status == "fully_marked"


def test_fully_mark_idempotent_on_full_data():
    full, _ = fully_mark(fig1_datum())
    again, deg = fully_mark(full)
    assert deg == 1 and again.a_marks == full.a_marks


def test_json_roundtrip():
    for h in (fig1_datum(), d2_datum(), d1_datum()):
        back = HurwitzData.from_json_dict(h.to_json_dict())
        assert back.to_json_dict() == h.to_json_dict()


# -- smooth-target counts ------------------------------------------------------


def test_fig1_count_matches_brute_force():
    full, _ = fully_mark(fig1_datum())
    assert brute_fig1_count() == 4
    assert count_covers(full) == 4
    assert count_covers_orbit_stabilizer(full) == 4


def test_d2_count_matches_brute_force():
    full, _ = fully_mark(d2_datum())
    assert brute_d2_count() == 2
    assert count_covers(full) == 2
    assert count_covers_orbit_stabilizer(full) == 2


def test_d1_count_is_one():
    assert count_covers(d1_datum()) == 1


def test_count_requires_fully_marked():
    with pytest.raises(ValueError):
        count_covers(fig1_datum())


def test_limit_tuples_raises():
    full, _ = fully_mark(fig1_datum())
    with pytest.raises(ResourceError):
        count_covers(full, limit_tuples=5)


# -- covers over boundary strata ----------------------------------------------


def test_fig1_degeneration_all_splits():
    full, _ = fully_mark(fig1_datum())
    strata = trees.enumerate_strata(4, 0)
    assert len(strata) == 3
    for tau in strata:
        report = degeneration_degree_check(full, tau)
        assert report["ok"], report
        assert report["expected"] == 4
        types = enumerate_cover_types(full, tau)
        assert sorted((t.count, t.multiplicity) for t in types) == [(1, 1), (1, 3)]


def test_fig1_source_structure_over_b34_split():
    # target split {b3, b4}: marks are positions in the full source list
    # (a1, a2, a3, a4, a(b1,1), a(b2,1), a(b4,1), a(b4,2)) = 1..8
    full, _ = fully_mark(fig1_datum())
    tau = next(t for t in trees.enumerate_strata(4, 0)
               if t.splits() == {frozenset({3, 4})})
    types = enumerate_cover_types(full, tau)
    t3 = next(t for t in types if t.multiplicity == 3)
    t1 = next(t for t in types if t.multiplicity == 1)
    assert t3.source_tree.splits() == {frozenset({3, 4, 7, 8})}
    assert t3.node_data == ((frozenset({3, 4, 7, 8}), 3),)
    assert t1.source_tree.splits() == {
        frozenset({4, 7}),
        frozenset({5, 6}),
        frozenset({3, 5, 6, 8}),
    }
    assert all(r == 1 for _side, r in t1.node_data)
    assert t1.source_tree.dim() == 2 and t3.source_tree.dim() == 4


def test_d2_degeneration_all_splits():
    full, _ = fully_mark(d2_datum())
    for tau in trees.enumerate_strata(4, 0):
        report = degeneration_degree_check(full, tau)
        assert report["ok"], report
        assert report["expected"] == 2
        types = enumerate_cover_types(full, tau)
        got = sorted((t.count, t.multiplicity) for t in types)
        if tau.splits() == {frozenset({3, 4})}:
            assert got == [(1, 1), (1, 1)]
        else:
            assert got == [(1, 2)]


def test_d1_covers_mirror_target_strata():
    h = d1_datum(5)
    for k in (0, 1):
        for tau in trees.enumerate_strata(5, k):
            classes = enumerate_cover_classes(h, tau)
            assert len(classes) == 1
            from stratadyn.hurwitz import _source_tree_of_class

            src, node_data = _source_tree_of_class(h, classes[0])
            assert trees.canonical_form(src) == tau
            assert all(r == 1 for _side, r in node_data)


def test_degeneration_check_deep_stratum():
    # the invariant holds over 0-dimensional strata of larger target spaces
    h = d1_datum(6)
    tau = trees.enumerate_strata(6, 0)[0]
    report = degeneration_degree_check(h, tau)
    assert report["ok"] and report["expected"] == 1
