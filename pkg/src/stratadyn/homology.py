"""Homology of the marked-curve space, presented by boundary strata.

H_{2k} of the n-mark space is generated by the classes of k-dimensional
boundary strata.  The relations live on (k+1)-dimensional strata: at a vertex
v with four distinguished flags, the three ways of pairing the four flags two
against two give equal class sums over all distributions of v's remaining
flags, each term being the stratum refined at v accordingly.

A presentation fixes the deterministic stratum list, eliminates the relation
rows with maximal-index pivots, and keeps the non-pivot strata as the
quotient basis; every pivot stratum is expressed over earlier basis strata.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from . import linalg, trees
from .trees import ResourceError

ZERO = Fraction(0)


def km_relations(n, k):
    """The relation vectors among k-dim stratum classes, as {tree: int} dicts.

    Deduplicated (sign-normalised) and deterministically ordered.  For
    k = n-3 the single fundamental class has no relations.
    """
    if not (0 <= k <= n - 3):
        raise ValueError("k must be between 0 and n-3")
    if k == n - 3:
        return []
    index = {t: i for i, t in enumerate(trees.enumerate_strata(n, k))}
    rows = []
    for sigma in trees.enumerate_strata(n, k + 1):
        for v in range(len(sigma.parents)):
            val = sigma.valence(v)
            if val < 4:
                continue
            for quad in itertools.combinations(range(val), 4):
                rest = [f for f in range(val) if f not in quad]
                i1, i2, i3, i4 = quad
                sums = []
                for a, b in ((i1, i2), (i1, i3), (i1, i4)):
                    others = [f for f in quad if f not in (a, b)]
                    acc = {}
                    for r in range(len(rest) + 1):
                        for d1 in itertools.combinations(rest, r):
                            t = _refine(sigma, v, {a, b, *d1})
                            acc[t] = acc.get(t, 0) + 1
                    sums.append(acc)
                for x in range(3):
                    for y in range(x + 1, 3):
                        row = dict(sums[x])
                        for t, c in sums[y].items():
                            nc = row.get(t, 0) - c
                            if nc:
                                row[t] = nc
                            else:
                                row.pop(t, None)
                        if row:
                            rows.append(row)
    # dedup by sign-normalised index vector
    seen = {}
    for row in rows:
        items = sorted((index[t], c) for t, c in row.items())
        if items[0][1] < 0:
            items = [(i, -c) for i, c in items]
        seen.setdefault(tuple(items), row)
    ordered = [seen[key] for key in sorted(seen)]
    return ordered


def _refine(sigma, v, away):
    """Split vertex v, moving the flags with the given indices to a new
    vertex attached to v; always stable since both parts keep >= 2 flags."""
    adj = sigma.adjacency()
    legs_at = sigma.legs_at()
    flags = sigma.flags_of(v)
    m = len(sigma.parents)
    vertices = [[] for _ in range(m + 1)]
    for u in range(m):
        if u == v:
            continue
        for mk in legs_at[u]:
            vertices[u].append(("leg", mk))
        for w in adj[u]:
            if w != v:
                vertices[u].append(("edge", w))
    for i, f in enumerate(flags):
        tgt = m if i in away else v
        if f[0] == "leg":
            vertices[tgt].append(("leg", f[1]))
        else:
            vertices[tgt].append(("edge", f[1]))
    vertices[v].append(("edge", m))
    return trees.canonical_form(trees._assemble(sigma.n, vertices))


class HomologyPresentation:
    """Strata, relations, and a quotient basis for H_{2k} of the n-mark space."""

    def __init__(self, n, k, strata, relation_rows, basis, expr):
        self.n = n
        self.k = k
        self.strata = strata                    # deterministic list of trees
        self.index = {t: i for i, t in enumerate(strata)}
        self.relation_rows = relation_rows      # sparse dicts over stratum indices
        self.basis = basis                      # stratum indices, increasing
        self.pos = {b: j for j, b in enumerate(basis)}
        self.expr = expr                        # pivot idx -> {basis pos: Fraction}
        self.rank = len(basis)
        self._pairing_rows = None

    def reduce_index_vec(self, vec):
        """Sparse {stratum index: coeff} -> coordinates {basis pos: Fraction}."""
        out = {}
        for i, c in vec.items():
            c = Fraction(c)
            if not c:
                continue
            if i in self.pos:
                j = self.pos[i]
                nv = out.get(j, ZERO) + c
                if nv:
                    out[j] = nv
                else:
                    out.pop(j, None)
            else:
                for j, e in self.expr[i].items():
                    nv = out.get(j, ZERO) + c * e
                    if nv:
                        out[j] = nv
                    else:
                        out.pop(j, None)
        return out

    def reduce_tree_dict(self, vec):
        idx_vec = {}
        for t, c in vec.items():
            if t.n != self.n or t.dim() != self.k:
                raise ValueError("vector contains a stratum of the wrong space or degree")
            tc = trees.canonical_form(t)
            i = self.index.get(tc)
            if i is None:
                raise AssertionError("canonical stratum missing from presentation")
            idx_vec[i] = idx_vec.get(i, 0) + c
        return self.reduce_index_vec(idx_vec)

    def basis_trees(self):
        return [self.strata[b] for b in self.basis]


@lru_cache(maxsize=None)
def _presentation(n, k):
    strata = trees.enumerate_strata(n, k)
    index = {t: i for i, t in enumerate(strata)}
    rows = []
    for row in km_relations(n, k):
        rows.append({index[t]: Fraction(c) for t, c in row.items()})
    space = linalg.RowSpace(pivot="max")
    for r in rows:
        space.add(r)
    rr = space.rref()
    pivots = set(rr)
    basis = [i for i in range(len(strata)) if i not in pivots]
    pos = {b: j for j, b in enumerate(basis)}
    expr = {}
    for p, row in rr.items():
        e = {}
        for col, val in row.items():
            if col == p:
                continue
            e[pos[col]] = -val
        expr[p] = e
    return HomologyPresentation(n, k, strata, rows, basis, expr)


def homology_basis(n, k, limit_strata=None):
    """The cached presentation of H_{2k}; optionally capped by stratum count."""
    if n < 3:
        raise ValueError("n must be >= 3")
    if not (0 <= k <= n - 3):
        raise ValueError("k must be between 0 and n-3, got k=%d" % k)
    if limit_strata is not None:
        count = len(trees.enumerate_strata(n, k))
        if count > limit_strata:
            raise ResourceError(
                "presentation for (n=%d, k=%d) needs %d strata, limit is %d"
                % (n, k, count, limit_strata)
            )
    return _presentation(n, k)


def class_reduce(pres, vec):
    """Express a {tree: coeff} class in the quotient basis of `pres`."""
    return pres.reduce_tree_dict(vec)


def homology_dims(n, limit_strata=None):
    return {k: homology_basis(n, k, limit_strata).rank for k in range(0, n - 2)}


# -- intersection pairing against boundary divisors -------------------------


def intersection_pairing_h2(tree, side):
    """Pairing of a 1-dim stratum class with the boundary divisor of a split.

    The stratum has a unique 4-valent vertex whose flags partition the marks
    into four blocks.  The divisor meets the stratum curve transversally in
    one point when one side of the split is a union of exactly two blocks
    (+1), contains it with self-intersection -1 when a side is a single
    block, and is disjoint otherwise (0).
    """
    if tree.dim() != 1:
        raise ValueError("pairing requires a 1-dimensional stratum")
    v4 = next(v for v in range(len(tree.parents)) if tree.valence(v) == 4)
    blocks = tree.flag_marksets(v4)
    side = frozenset(side)
    other = frozenset(range(1, tree.n + 1)) - side
    if not (2 <= len(side) <= tree.n - 2):
        raise ValueError("not a 2-sided split with both sides of size >= 2")
    for s in (side, other):
        if any(s == b for b in blocks):
            return -1
    for s in (side, other):
        for b1, b2 in itertools.combinations(blocks, 2):
            if s == b1 | b2:
                return 1
    return 0


def pairing_rows(pres):
    """For each split (all_splits order) the pairing row over the basis."""
    if pres.k != 1:
        raise ValueError("pairings live on 1-dimensional stratum classes")
    if pres._pairing_rows is None:
        rows = []
        for s in trees.all_splits(pres.n):
            row = {}
            for j, b in enumerate(pres.basis):
                val = intersection_pairing_h2(pres.strata[b], s)
                if val:
                    row[j] = Fraction(val)
            rows.append(row)
        pres._pairing_rows = rows
    return pres._pairing_rows


def solve_class_from_pairings(pres, pairings):
    """The H_2 class with the given split pairings, in basis coordinates.

    `pairings` maps normalised split sides to rationals; missing splits are
    treated as zero.  Raises ValueError when no class matches (inconsistent
    data) or the pairings fail to pin the class.
    """
    splits = trees.all_splits(pres.n)
    rows = pairing_rows(pres)
    rhs = []
    given = {trees.normalize_split(pres.n, s): Fraction(v) for s, v in pairings.items()}
    unknown = set(given) - set(splits)
    if unknown:
        raise ValueError("pairings mention unknown splits: %r" % sorted(map(sorted, unknown)))
    for s in splits:
        rhs.append(given.get(s, ZERO))
    try:
        return linalg.solve_exact(rows, rhs)
    except ValueError as e:
        raise ValueError("pairing system for n=%d: %s" % (pres.n, e)) from e


# -- pushing classes along forgetful maps -----------------------------------


def forget_vec(vec, keep):
    """Push a {tree: coeff} class forward by forgetting marks outside keep.

    Strata whose class dies (dimension drop) are removed; survivors keep
    coefficient 1 per stratum since the map is birational onto its image.
    """
    out = {}
    for t, c in vec.items():
        img = trees.forget_pushforward(t, keep)
        if img is not None:
            nv = out.get(img, 0) + c
            if nv:
                out[img] = nv
            else:
                out.pop(img, None)
    return out
