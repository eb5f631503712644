"""Weighted stability, minimal weight data, and reduction kernels.

A weight datum assigns each mark a rational weight in (0, 1] with total
above 2.  A vertex of a stratum tree is weight-stable when the flag sums,
truncated at 1, exceed 2.  A weight datum is reduction-minimal exactly when
no subset of the weights has total in the window (1, T-1], T the full total;
minimal data collapse every stratum tree to a single stable vertex, and the
kernel of the induced map on H_{2k} is spanned by strata whose stable vertex
carries too few moduli together with differences of strata with equal image
data.
"""

from __future__ import annotations

import bisect
from fractions import Fraction

from . import filtration, homology, trees

ONE = Fraction(1)


def validate_weights(eps, n=None):
    """Normalise to a tuple of Fractions; enforce (0,1] entries, total > 2."""
    ws = tuple(Fraction(w) for w in eps)
    if n is not None and len(ws) != n:
        raise ValueError("expected %d weights, got %d" % (n, len(ws)))
    if len(ws) < 4:
        raise ValueError("need at least 4 weights")
    for w in ws:
        if not (0 < w <= 1):
            raise ValueError("weights must lie in (0, 1], got %s" % w)
    if sum(ws) <= 2:
        raise ValueError("weights must sum to more than 2")
    return ws


def is_minimal(eps):
    """No subset of the weights sums into (1, T-1]: meet-in-the-middle."""
    ws = validate_weights(eps)
    total = sum(ws)
    half = len(ws) // 2
    left, right = ws[:half], ws[half:]

    def subset_sums(part):
        sums = [Fraction(0)]
        for w in part:
            sums += [s + w for s in sums]
        return sums

    lo, hi = ONE, total - 1
    if hi < lo:
        return True
    rsums = sorted(subset_sums(right))
    for a in subset_sums(left):
        # look for b with lo - a < b <= hi - a
        i = bisect.bisect_right(rsums, lo - a)
        if i < len(rsums) and rsums[i] <= hi - a:
            return False
    return True


def epsilon_dagger(n):
    """The canonical minimal weight datum: near-uniform weights just above
    2/n, perturbed so that no subset sum lands in the critical window."""
    if n < 4:
        raise ValueError("need n >= 4")
    base = Fraction(2, n)
    bump = Fraction(1, 10 ** n)
    if n % 2 == 1:
        return tuple(base + bump for _ in range(n))
    small = Fraction(1, n * 10 ** n)
    return (base + bump,) + tuple(base - small for _ in range(n - 1))


def stable_vertices(tree, eps):
    """Vertices whose truncated flag weight sums exceed 2."""
    ws = validate_weights(eps, tree.n)
    out = []
    for v in range(len(tree.parents)):
        tot = Fraction(0)
        for ms in tree.flag_marksets(v):
            s = sum(ws[i - 1] for i in ms)
            tot += s if s < 1 else ONE
        if tot > 2:
            out.append(v)
    return out


class ReductionImageType:
    """Image data of a stratum under a minimal-weight reduction: the set
    partition of the marks by the stable vertex's flags, and the image
    dimension (that vertex's moduli count)."""

    __slots__ = ("blocks", "dim")

    def __init__(self, blocks, dim):
        self.blocks = frozenset(frozenset(b) for b in blocks)
        self.dim = int(dim)

    def __eq__(self, other):
        return (
            isinstance(other, ReductionImageType)
            and self.blocks == other.blocks
            and self.dim == other.dim
        )

    def __hash__(self):
        return hash((self.blocks, self.dim))

    def __repr__(self):
        bs = sorted(tuple(sorted(b)) for b in self.blocks)
        return "ReductionImageType(blocks=%r, dim=%d)" % (bs, self.dim)


def reduction_image_type(tree, eps):
    """Image type of a stratum under the reduction for minimal weights."""
    stable = stable_vertices(tree, eps)
    if len(stable) != 1:
        raise ValueError(
            "expected exactly one stable vertex (minimal weights), found %d" % len(stable)
        )
    (v,) = stable
    blocks = tree.flag_marksets(v)
    if len(blocks) != tree.valence(v):
        raise AssertionError("flag blocks must be pairwise distinct")
    return ReductionImageType(blocks, tree.md(v))


def reduction_kernel(n, k, eps, limit_strata=None):
    """Kernel of the reduction pushforward on H_{2k} for minimal weights.

    Spanned by the classes of strata whose stable vertex has fewer than k
    moduli, plus differences of strata sharing a full image type of
    dimension k.  Rejects non-minimal weight data.
    """
    ws = validate_weights(eps, n)
    if not is_minimal(ws):
        raise ValueError("weight datum is not reduction-minimal")
    pres = homology.homology_basis(n, k, limit_strata)
    sub = filtration.FiltrationSubspace(pres, label="ker-reduction")
    buckets = {}
    for t in pres.strata:
        it = reduction_image_type(t, ws)
        if it.dim < k:
            sub.add_generator(pres.reduce_tree_dict({t: 1}))
        else:
            rep = buckets.get(it)
            if rep is None:
                buckets[it] = t
            else:
                sub.add_generator(pres.reduce_tree_dict({rep: 1, t: -1}))
    return sub
