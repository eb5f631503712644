"""Dual trees of boundary strata of genus-zero stable marked curves.

A stratum of the moduli space of stable genus-zero curves with marks 1..n is
encoded by its dual tree: vertices are components, edges are nodes, legs are
marks.  Stability means every vertex has valence (legs + incident edges) at
least 3.  A vertex v carries md(v) = valence(v) - 3 moduli, so

    dim = sum of md(v),   codim = number of edges,   dim + codim = n - 3.

Trees are stored as (n, parents, legs): vertices are 0..m-1, parents[i] is the
parent index (-1 for the root), legs[i-1] is the vertex carrying mark i.  Two
encodings describe the same stratum iff their canonical forms are equal.
"""

from __future__ import annotations


class ResourceError(RuntimeError):
    """Raised when an enumeration or a presentation exceeds a size limit."""


class MarkedTree:
    """Immutable dual tree of a boundary stratum.

    Parameters
    ----------
    n : number of marks; marks are 1..n.
    parents : tuple of parent indices, -1 for the single root.
    legs : tuple of length n, legs[i-1] = vertex index carrying mark i.
    """

    __slots__ = ("n", "parents", "legs", "_hash")

    def __init__(self, n, parents, legs):
        self.n = int(n)
        self.parents = tuple(int(p) for p in parents)
        self.legs = tuple(int(v) for v in legs)
        self._hash = hash((self.n, self.parents, self.legs))

    def __eq__(self, other):
        return (
            isinstance(other, MarkedTree)
            and self.n == other.n
            and self.parents == other.parents
            and self.legs == other.legs
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "MarkedTree(n=%d, parents=%r, legs=%r)" % (self.n, self.parents, self.legs)

    # -- basic structure -------------------------------------------------

    def num_vertices(self):
        return len(self.parents)

    def adjacency(self):
        adj = [[] for _ in self.parents]
        for i, p in enumerate(self.parents):
            if p >= 0:
                adj[i].append(p)
                adj[p].append(i)
        return adj

    def legs_at(self):
        at = [[] for _ in self.parents]
        for mark, v in enumerate(self.legs, start=1):
            at[v].append(mark)
        return at

    def edges(self):
        """Edges as (child, parent) pairs, one per non-root vertex."""
        return [(i, p) for i, p in enumerate(self.parents) if p >= 0]

    def valence(self, v):
        deg = sum(1 for p in self.parents if p == v) + (1 if self.parents[v] >= 0 else 0)
        return deg + sum(1 for u in self.legs if u == v)

    def md(self, v):
        return self.valence(v) - 3

    def dim(self):
        return sum(self.md(v) for v in range(len(self.parents)))

    def codim(self):
        return len(self.parents) - 1

    def away_marks(self, v, u):
        """Marks reachable from the neighbour u once the edge (v, u) is cut."""
        adj = self.adjacency()
        stack = [u]
        seen = {v, u}
        comp = {u}
        while stack:
            w = stack.pop()
            for x in adj[w]:
                if x not in seen:
                    seen.add(x)
                    comp.add(x)
                    stack.append(x)
        return frozenset(m for m, w in enumerate(self.legs, start=1) if w in comp)

    def splits(self):
        """Splits cut by the edges, normalised to the side without mark 1."""
        return {normalize_split(self.n, self.away_marks(p, c)) for c, p in self.edges()}

    def flags_of(self, v):
        """Deterministic flag list at v: ('leg', mark) then ('edge', u, away).

        Legs sorted by mark, then edges sorted by the far-side mark set.  The
        order depends only on mark labels, not on the vertex indexing, and is
        the order used by glue_substitution to match flags with the marks of
        a small tree.
        """
        flags = []
        for mark, u in enumerate(self.legs, start=1):
            if u == v:
                flags.append(("leg", mark))
        flags.sort(key=lambda f: f[1])
        edge_flags = [("edge", u, self.away_marks(v, u)) for u in self.adjacency()[v]]
        edge_flags.sort(key=lambda f: tuple(sorted(f[2])))
        return flags + edge_flags

    def flag_marksets(self, v):
        """Mark sets of the flags at v, in flags_of order (legs give {mark})."""
        out = []
        for f in self.flags_of(v):
            out.append(frozenset([f[1]]) if f[0] == "leg" else f[2])
        return out

    def to_json_dict(self):
        return {
            "n": self.n,
            "parents": list(self.parents),
            "legs": {str(m): v for m, v in enumerate(self.legs, start=1)},
        }

    @staticmethod
    def from_json_dict(d):
        n = int(d["n"])
        legs = [0] * n
        for k, v in d["legs"].items():
            legs[int(k) - 1] = int(v)
        return MarkedTree(n, tuple(d["parents"]), tuple(legs))


Stratum = MarkedTree


def trivial_tree(n):
    return MarkedTree(n, (-1,), tuple(0 for _ in range(n)))


def _validate(tree):
    m = len(tree.parents)
    if m < 1:
        raise ValueError("tree needs at least one vertex")
    if tree.n < 3:
        raise ValueError("need at least 3 marks, got %d" % tree.n)
    roots = [i for i, p in enumerate(tree.parents) if p == -1]
    if len(roots) != 1:
        raise ValueError("tree must have exactly one root, found %d" % len(roots))
    for i, p in enumerate(tree.parents):
        if p != -1 and not (0 <= p < m):
            raise ValueError("parent index %d out of range at vertex %d" % (p, i))
        if p == i:
            raise ValueError("vertex %d is its own parent" % i)
    root = roots[0]
    for i in range(m):
        seen = set()
        v = i
        while v != root:
            if v in seen:
                raise ValueError("parent pointers contain a cycle through %d" % i)
            seen.add(v)
            v = tree.parents[v]
    if len(tree.legs) != tree.n:
        raise ValueError("legs tuple must have length n")
    for mark, v in enumerate(tree.legs, start=1):
        if not (0 <= v < m):
            raise ValueError("mark %d attached to missing vertex %d" % (mark, v))
    for v in range(m):
        if tree.valence(v) < 3:
            raise ValueError("vertex %d has valence %d < 3" % (v, tree.valence(v)))


def _component_size(adj, removed, start):
    stack = [start]
    seen = {removed, start}
    cnt = 1
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                cnt += 1
                stack.append(u)
    return cnt


def canonical_form(tree):
    """Canonical encoding of a stratum: centroid-rooted, children code-sorted.

    Raises ValueError on unstable or malformed input.  Two trees encode the
    same stratum iff their canonical forms are equal componentwise; the
    canonical form is relabeling-invariant in the vertex indices.
    """
    _validate(tree)
    m = len(tree.parents)
    if m == 1:
        return MarkedTree(tree.n, (-1,), tuple(0 for _ in range(tree.n)))
    adj = tree.adjacency()
    legs_at = tree.legs_at()

    best = None
    cents = []
    for v in range(m):
        worst = max(_component_size(adj, v, u) for u in adj[v])
        if best is None or worst < best:
            best = worst
            cents = [v]
        elif worst == best:
            cents.append(v)

    def subcode(v, parent, cache):
        marks = ",".join(str(x) for x in sorted(legs_at[v]))
        kids = sorted(subcode(u, v, cache) for u in adj[v] if u != parent)
        c = "(" + marks + ";" + "".join(kids) + ")"
        cache[(v, parent)] = c
        return c

    candidates = []
    for r in cents:
        cache = {}
        candidates.append((subcode(r, -1, cache), r, cache))
    candidates.sort(key=lambda t: t[0])
    _, root, cache = candidates[0]

    parents = []
    legs = [0] * tree.n
    counter = [0]

    def place(v, parent_old, parent_new):
        idx = counter[0]
        counter[0] += 1
        parents.append(parent_new)
        for mark in legs_at[v]:
            legs[mark - 1] = idx
        kids = sorted((u for u in adj[v] if u != parent_old), key=lambda u: cache[(u, v)])
        for u in kids:
            place(u, v, idx)

    place(root, -1, -1)
    return MarkedTree(tree.n, tuple(parents), tuple(legs))


def tree_sort_key(tree):
    return (tree.n, len(tree.parents), tree.parents, tree.legs)


# -- splits and enumeration ----------------------------------------------


def normalize_split(n, side):
    """A split as an unordered pair, named by the side without mark 1."""
    side = frozenset(side)
    if 1 in side:
        side = frozenset(range(1, n + 1)) - side
    return side


def all_splits(n):
    """All 2-sided splits of {1..n} with both sides of size >= 2.

    Returned as normalised sides, sorted by (size, sorted marks).
    """
    rest = list(range(2, n + 1))
    out = []
    for bits in range(1 << len(rest)):
        side = frozenset(rest[i] for i in range(len(rest)) if bits >> i & 1)
        if 2 <= len(side) <= n - 2:
            out.append(side)
    out.sort(key=lambda s: (len(s), tuple(sorted(s))))
    return out


def _splits_compatible(a, b):
    # normalised sides never contain mark 1, so the pair is compatible
    # exactly when the named sides are nested or disjoint
    return a <= b or b <= a or not (a & b)


def _assemble(n, vertices):
    """Build a MarkedTree from per-vertex flag lists.

    A flag is ('leg', mark) or ('edge', other_vertex); edges may be listed on
    one or both endpoints.
    """
    m = len(vertices)
    adj = [set() for _ in range(m)]
    legs = [0] * n
    for vi, flags in enumerate(vertices):
        for f in flags:
            if f[0] == "leg":
                legs[f[1] - 1] = vi
            else:
                adj[vi].add(f[1])
                adj[f[1]].add(vi)
    parents = [-2] * m
    parents[0] = -1
    stack = [0]
    seen = {0}
    while stack:
        x = stack.pop()
        for u in adj[x]:
            if u not in seen:
                seen.add(u)
                parents[u] = x
                stack.append(u)
    if len(seen) != m:
        raise ValueError("flag lists do not describe a connected tree")
    return MarkedTree(n, tuple(parents), tuple(legs))


def tree_from_splits(n, splits):
    """Assemble the stratum whose edges cut exactly the given splits.

    `splits` are normalised sides, pairwise compatible.  The tree is grown by
    splitting, for each new split S, the unique vertex whose flag mark-sets
    partition into S and its complement.  Returns a canonical MarkedTree.
    """
    # flags during construction: ('leg', mark) or ('edge', partner, away_set)
    vertices = [[("leg", m) for m in range(1, n + 1)]]
    full = frozenset(range(1, n + 1))

    for s in sorted(set(splits), key=lambda x: (len(x), tuple(sorted(x)))):
        target = None
        for vi, flags in enumerate(vertices):
            inside = []
            covered = set()
            ok = True
            for f in flags:
                ms = frozenset([f[1]]) if f[0] == "leg" else f[2]
                if ms <= s:
                    inside.append(f)
                    covered |= ms
                elif ms & s:
                    ok = False
                    break
            if ok and covered == s:
                target = (vi, inside)
                break
        if target is None:
            raise ValueError("split %r is not compatible with the others" % sorted(s))
        vi, inside = target
        nj = len(vertices)
        outside = [f for f in vertices[vi] if f not in inside]
        for f in inside:
            if f[0] == "edge":
                p = f[1]
                vertices[p] = [
                    ("edge", nj, g[2]) if g[0] == "edge" and g[1] == vi else g
                    for g in vertices[p]
                ]
        vertices.append(inside + [("edge", vi, full - s)])
        vertices[vi] = outside + [("edge", nj, s)]

    stripped = [[f if f[0] == "leg" else ("edge", f[1]) for f in flags] for flags in vertices]
    return canonical_form(_assemble(n, stripped))


def enumerate_strata(n, k, limit=None):
    """All iso classes of dimension-k strata of the n-mark space.

    Enumerates pairwise-compatible sets of n-3-k splits (each set is one
    stratum, so no isomorphism dedup is needed) and assembles each tree.
    Results are sorted deterministically.  `limit` caps the count and raises
    ResourceError beyond it.
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    if not (0 <= k <= n - 3):
        raise ValueError("k must be between 0 and n-3, got %d" % k)
    codim = n - 3 - k
    splits = all_splits(n)
    ns = len(splits)
    compat = [[_splits_compatible(splits[i], splits[j]) for j in range(ns)] for i in range(ns)]

    out = []
    chosen = []

    def grow(start):
        if len(chosen) == codim:
            out.append(tree_from_splits(n, [splits[i] for i in chosen]))
            if limit is not None and len(out) > limit:
                raise ResourceError("stratum enumeration exceeded limit %d" % limit)
            return
        for i in range(start, ns):
            if ns - i < codim - len(chosen):
                break
            if all(compat[j][i] for j in chosen):
                chosen.append(i)
                grow(i + 1)
                chosen.pop()

    grow(0)
    seen = set()
    for t in out:
        if t in seen:
            raise AssertionError("duplicate canonical form in enumeration")
        seen.add(t)
    out.sort(key=tree_sort_key)
    return out


def count_strata_by_dim(n, limit=None):
    """dict k -> number of iso classes of k-dim strata (exhaustive)."""
    return {k: len(enumerate_strata(n, k, limit=limit)) for k in range(0, n - 2)}


def induced_partition(tree):
    """Partition of dim(tree): the positive per-vertex moduli counts, sorted."""
    parts = [tree.md(v) for v in range(len(tree.parents)) if tree.md(v) > 0]
    return tuple(sorted(parts))


# -- forgetting marks ------------------------------------------------------


def forget_pushforward(tree, keep):
    """Image stratum under forgetting all marks outside `keep`, or None.

    Returns the canonical image tree with the kept marks renumbered 1..|keep|
    order-preservingly, or None when the class dies: dropping a mark from a
    vertex with moduli (valence >= 4) lowers the image dimension, so the
    stratum class pushes to zero in its homological degree.
    """
    keep = sorted(set(keep))
    if len(keep) < 3:
        raise ValueError("need at least 3 marks kept")
    if not set(keep) <= set(range(1, tree.n + 1)):
        raise ValueError("keep must be a subset of the marks 1..%d" % tree.n)
    cur = tree
    for drop in sorted((m for m in range(1, tree.n + 1) if m not in keep), reverse=True):
        cur = _forget_one(cur, drop)
        if cur is None:
            return None
    return canonical_form(cur)


def _forget_one(tree, drop):
    """Drop one mark; marks above it shift down by one.  None if class dies."""
    v = tree.legs[drop - 1]
    if tree.valence(v) >= 4:
        return None
    # v is trivalent and loses a leg, so it gets contracted away
    adj = tree.adjacency()
    legs_at = tree.legs_at()
    keep_vertices = [u for u in range(len(tree.parents)) if u != v]
    newidx = {u: i for i, u in enumerate(keep_vertices)}
    vertices = [[] for _ in keep_vertices]

    def relabel(mk):
        return mk if mk < drop else mk - 1

    for u in keep_vertices:
        for mk in legs_at[u]:
            vertices[newidx[u]].append(("leg", relabel(mk)))
        for w in adj[u]:
            if w != v:
                vertices[newidx[u]].append(("edge", newidx[w]))
    nbrs = adj[v]
    if len(nbrs) == 1:
        # one edge + two legs: the surviving leg moves to the neighbour
        u = nbrs[0]
        for mk in legs_at[v]:
            if mk != drop:
                vertices[newidx[u]].append(("leg", relabel(mk)))
    elif len(nbrs) == 2:
        # two edges + the dropped leg: the neighbours become adjacent
        a, b = nbrs
        vertices[newidx[a]].append(("edge", newidx[b]))
    else:
        # trivalent with no edges means n = 3, which callers exclude
        raise AssertionError("cannot forget down from a 3-mark space")
    return _assemble(tree.n - 1, vertices)


# -- gluing a small tree into a vertex -------------------------------------


def glue_substitution(host, v, small):
    """Replace vertex v of `host` by the tree `small` on its flag set.

    `small` has marks 1..valence(v) corresponding positionally to
    flags_of(host, v).  Returns the canonical tree on host's marks, with
    dim = dim(host) - md(host, v) + dim(small).
    """
    flags = host.flags_of(v)
    if small.n != len(flags):
        raise ValueError(
            "small tree has %d marks but vertex has valence %d" % (small.n, len(flags))
        )
    host_adj = host.adjacency()
    host_legs_at = host.legs_at()
    m_host = len(host.parents)
    m_small = len(small.parents)
    newidx = {}
    for u in range(m_host):
        if u != v:
            newidx[u] = len(newidx)
    off = len(newidx)

    vertices = [[] for _ in range(off + m_small)]
    for u in range(m_host):
        if u == v:
            continue
        for mk in host_legs_at[u]:
            vertices[newidx[u]].append(("leg", mk))
        for w in host_adj[u]:
            if w != v:
                vertices[newidx[u]].append(("edge", newidx[w]))
    small_adj = small.adjacency()
    small_legs_at = small.legs_at()
    for su in range(m_small):
        tgt = off + su
        for mk in small_legs_at[su]:
            f = flags[mk - 1]
            if f[0] == "leg":
                vertices[tgt].append(("leg", f[1]))
            else:
                vertices[tgt].append(("edge", newidx[f[1]]))
        for sw in small_adj[su]:
            vertices[tgt].append(("edge", off + sw))

    return canonical_form(_assemble(host.n, vertices))
