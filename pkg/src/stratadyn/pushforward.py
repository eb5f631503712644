"""Pushforward of stratum classes along Hurwitz correspondences.

The correspondence of a Hurwitz datum sends boundary-stratum classes of the
target-mark space to classes of the retained-mark space.  In homological
degree 0 it multiplies by the cover count over a generic point.  In degree 2
one column is computed per 1-dimensional stratum tau of the target space:
labeled covers over tau are grouped by type; each type is a one-parameter
family of source curves, paired against boundary divisors by degenerating
tau at its 4-valent vertex and reading off which source nodes appear; the
pairings pin the family's curve class one source vertex at a time, and the
class is glued back together, pushed along the forgetful map to the retained
marks, and reduced in the quotient basis.
"""

from __future__ import annotations

from fractions import Fraction

from . import filtration, homology, hurwitz, linalg, trees
from .linalg import ONE, ZERO
from .trees import ResourceError


def pushforward_h0(h, limit_tuples=None):
    """Multiplier on degree-0 classes: covers over a generic point, divided
    by the degree of the full-marking map."""
    full, deg_nu = hurwitz.fully_mark(h)
    c = hurwitz.count_covers(full, limit_tuples)
    if c % deg_nu:
        raise AssertionError("cover count %d not divisible by marking degree %d" % (c, deg_nu))
    return c // deg_nu


# -- degenerating the target at its 4-valent vertex --------------------------


def _refine_target(tau, w, move_positions):
    """Split vertex w of tau, moving the flags at `move_positions` (indices
    into flags_of) onto a new vertex joined to w by a fresh edge.  Vertex
    indices are preserved; the new vertex gets the next index."""
    flags = tau.flags_of(w)
    move = set(move_positions)
    m = tau.num_vertices()
    legs_at = tau.legs_at()
    vertices = [[] for _ in range(m + 1)]
    for u in range(m):
        if u == w:
            continue
        for mk in legs_at[u]:
            vertices[u].append(("leg", mk))
    for pos, f in enumerate(flags):
        tgt = m if pos in move else w
        if f[0] == "leg":
            vertices[tgt].append(("leg", f[1]))
        else:
            vertices[tgt].append(("edge", f[1]))
    vertices[m].append(("edge", w))
    for c, p in tau.edges():
        if w not in (c, p):
            vertices[c].append(("edge", p))
    return trees._assemble(tau.n, vertices)


def _type_key_from_components(n_full, comp_marksets, comp_edges):
    """Canonical (tree, node data) key of a source curve given per-component
    mark sets and (i, j, r) node edges; matches the keying used for cover
    types over the unrefined target."""
    vertices = [[("leg", mk) for mk in ms] for ms in comp_marksets]
    for i, j, _r in comp_edges:
        vertices[i].append(("edge", j))
    t = trees._assemble(n_full, vertices)
    node_data = []
    for i, j, r in comp_edges:
        node_data.append((trees.normalize_split(n_full, t.away_marks(i, j)), r))
    node_data.sort(key=lambda x: (tuple(sorted(x[0])), x[1]))
    return trees.canonical_form(t), tuple(node_data)


def _smooth_refined_class(full, cls, w_star, w_new, a_index):
    """Undo the target refinement on a cover class over the refined tree.

    Components joined by nodes over the new target edge merge; old nodes
    survive.  Returns (type key, contributions, product of new-node
    ramifications) where contributions maps each merged vertex's mark set to
    {normalised flag split: weight}, the weight of a node being the product
    of the other new nodes' ramifications.
    """
    new_nodes = []
    old_nodes = []
    for ci, cj, r in cls.edges:
        wi, wj = cls.comps[ci][0], cls.comps[cj][0]
        if {wi, wj} == {w_star, w_new}:
            new_nodes.append((ci, cj, r))
        else:
            old_nodes.append((ci, cj, r))

    # merge components along the new nodes
    parent = list(range(len(cls.comps)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for ci, cj, _r in new_nodes:
        ri, rj = find(ci), find(cj)
        if ri != rj:
            parent[ri] = rj
    roots = sorted({find(i) for i in range(len(cls.comps))})
    gid = {root: g for g, root in enumerate(roots)}
    group_of = [gid[find(i)] for i in range(len(cls.comps))]

    group_marks = [set() for _ in roots]
    for ci, marks in enumerate(cls.comp_marks):
        for a in marks:
            group_marks[group_of[ci]].add(a_index[a])
    group_edges = []
    for ci, cj, r in old_nodes:
        gi, gj = group_of[ci], group_of[cj]
        if gi == gj:
            raise AssertionError("old node internal to a merged component")
        group_edges.append((gi, gj, r))
    key = _type_key_from_components(len(full.a_marks), group_marks, group_edges)

    vertices = [[("leg", mk) for mk in ms] for ms in group_marks]
    for gi, gj, _r in group_edges:
        vertices[gi].append(("edge", gj))
    sigma = trees._assemble(len(full.a_marks), vertices)

    rprod = 1
    for _ci, _cj, r in new_nodes:
        rprod *= r

    contributions = {}
    for ci, cj, r in new_nodes:
        g = group_of[ci]
        # component sides of the cut node within the merged vertex
        side_comps = {cj}
        frontier = [cj]
        while frontier:
            x = frontier.pop()
            for di, dj, _r2 in new_nodes:
                if (di, dj) == (ci, cj) or (dj, di) == (ci, cj):
                    continue
                if di == x and dj not in side_comps:
                    side_comps.add(dj)
                    frontier.append(dj)
                elif dj == x and di not in side_comps:
                    side_comps.add(di)
                    frontier.append(di)
        flags = sigma.flags_of(g)
        leg_pos = {f[1]: i + 1 for i, f in enumerate(flags) if f[0] == "leg"}
        edge_pos = {f[1]: i + 1 for i, f in enumerate(flags) if f[0] == "edge"}
        side = set()
        for comp in side_comps:
            for a in cls.comp_marks[comp]:
                side.add(leg_pos[a_index[a]])
            for di, dj, _r2 in old_nodes:
                if di == comp:
                    side.add(edge_pos[group_of[dj]])
                elif dj == comp:
                    side.add(edge_pos[group_of[di]])
        val = len(flags)
        norm = trees.normalize_split(val, frozenset(side))
        markset = frozenset(group_marks[g])
        bucket = contributions.setdefault(markset, {})
        bucket[norm] = bucket.get(norm, 0) + rprod // r
    return key, contributions, rprod


# -- gluing several vertex classes back into a source tree -------------------


def _edge_flag_pos(host, v, u):
    for i, f in enumerate(host.flags_of(v)):
        if f[0] == "edge" and f[1] == u:
            return i
    raise AssertionError("no edge flag from %d to %d" % (v, u))


def _substitute_many(host, subs):
    """Replace each vertex v in `subs` by a small tree on its flag set.

    Multi-vertex version of trees.glue_substitution: small trees carry marks
    1..valence(v) matching flags_of(host, v) positionally.  Returns the
    canonical tree on host's marks.
    """
    m_host = host.num_vertices()
    host_adj = host.adjacency()
    host_legs = host.legs_at()
    newidx = {}
    for u in range(m_host):
        if u not in subs:
            newidx[u] = len(newidx)
    blocks = {}
    off = len(newidx)
    for v in sorted(subs):
        blocks[v] = off
        off += subs[v].num_vertices()

    def small_vertex(v, flag_idx):
        """Global index of the small-tree vertex holding flag flag_idx of v."""
        return blocks[v] + subs[v].legs[flag_idx]

    vertices = [[] for _ in range(off)]
    for u in range(m_host):
        if u in subs:
            continue
        gu = newidx[u]
        for mk in host_legs[u]:
            vertices[gu].append(("leg", mk))
        for wv in host_adj[u]:
            if wv in subs:
                vertices[gu].append(("edge", small_vertex(wv, _edge_flag_pos(host, wv, u))))
            else:
                vertices[gu].append(("edge", newidx[wv]))
    for v, sm in subs.items():
        flags = host.flags_of(v)
        sm_adj = sm.adjacency()
        sm_legs = sm.legs_at()
        for sv in range(sm.num_vertices()):
            gv = blocks[v] + sv
            for smk in sm_legs[sv]:
                f = flags[smk - 1]
                if f[0] == "leg":
                    vertices[gv].append(("leg", f[1]))
                else:
                    u2 = f[1]
                    if u2 in subs:
                        vertices[gv].append(
                            ("edge", small_vertex(u2, _edge_flag_pos(host, u2, v)))
                        )
                    else:
                        vertices[gv].append(("edge", newidx[u2]))
            for sw in sm_adj[sv]:
                vertices[gv].append(("edge", blocks[v] + sw))
    return trees.canonical_form(trees._assemble(host.n, vertices))


# -- the degree-2 pushforward matrix ------------------------------------------


class PushforwardMatrix:
    """Matrix of the correspondence on 1-dimensional stratum classes.

    Rows run over the quotient basis of the retained-mark space, columns over
    the quotient basis of the target-mark space.  Entries are Fractions.
    """

    __slots__ = ("matrix", "source_pres", "target_pres", "aprime", "deg_nu")

    def __init__(self, matrix, source_pres, target_pres, aprime, deg_nu):
        self.matrix = matrix
        self.source_pres = source_pres
        self.target_pres = target_pres
        self.aprime = aprime
        self.deg_nu = deg_nu

    def shape(self):
        return (len(self.matrix), len(self.matrix[0]) if self.matrix else 0)


_MAX_VERTEX_SPACE = 7


def pushforward_h2(h, limit_tuples=None, limit_strata=None):
    """The correspondence on H_2, column by column over target basis strata."""
    res = hurwitz.validate(h)
    if not res.ok:
        raise ValueError("invalid datum: %s" % res.reason)
    full, deg_nu = hurwitz.fully_mark(h)
    n_b = len(full.b_marks)
    if n_b < 4:
        raise ValueError("degree-2 pushforward needs at least 4 target marks")
    keep_names = set(full.forget_to)
    aprime = tuple(a for a in full.a_marks if a in keep_names)
    n_a = len(aprime)
    if n_a < 4:
        raise ValueError("degree-2 pushforward needs at least 4 retained marks")
    a_index = {a: i + 1 for i, a in enumerate(full.a_marks)}
    keep = [a_index[a] for a in aprime]
    renum = {mk: i + 1 for i, mk in enumerate(keep)}
    keepset = set(keep)

    p_b = homology.homology_basis(n_b, 1, limit_strata)
    p_a = homology.homology_basis(n_a, 1, limit_strata)

    columns = []
    for tau in p_b.basis_trees():
        columns.append(
            _push_column(full, tau, p_a, n_a, keep, keepset, renum, deg_nu, limit_tuples)
        )
    matrix = tuple(
        tuple(columns[j].get(i, ZERO) for j in range(len(columns)))
        for i in range(p_a.rank)
    )
    return PushforwardMatrix(matrix, p_b, p_a, aprime, deg_nu)


def _push_column(full, tau, p_a, n_a, keep, keepset, renum, deg_nu, limit_tuples):
    n_full = len(full.a_marks)
    a_index = {a: i + 1 for i, a in enumerate(full.a_marks)}
    types = hurwitz.enumerate_cover_types(full, tau, limit_tuples)
    by_key = {(t.source_tree, t.node_data): t for t in types}

    w_star = next(v for v in range(tau.num_vertices()) if tau.md(v) == 1)
    pairings = {}
    for move in ((1, 2), (1, 3), (2, 3)):
        tau_ref = _refine_target(tau, w_star, move)
        w_new = tau.num_vertices()
        local_deg = {}
        for cls in hurwitz.enumerate_cover_classes(full, tau_ref, limit_tuples):
            key, contribs, rprod = _smooth_refined_class(full, cls, w_star, w_new, a_index)
            if key not in by_key:
                raise AssertionError("refined cover smooths to an unknown type")
            local_deg[key] = local_deg.get(key, 0) + rprod
            tgt = pairings.setdefault(key, {})
            for markset, bucket in contribs.items():
                acc = tgt.setdefault(markset, {})
                for side, wgt in bucket.items():
                    acc[side] = acc.get(side, 0) + wgt
        for key, t in by_key.items():
            if local_deg.get(key, 0) != t.count:
                raise AssertionError(
                    "local degree %d != class count %d over a boundary direction"
                    % (local_deg.get(key, 0), t.count)
                )

    col = {}
    for t in types:
        key = (t.source_tree, t.node_data)
        per_vertex = pairings.get(key, {})
        if not per_vertex:
            continue
        t_g = t.source_tree
        legs_at = t_g.legs_at()
        markset_to_vertex = {}
        for v in range(t_g.num_vertices()):
            ms = frozenset(legs_at[v])
            if not ms:
                raise ValueError(
                    "pushforward needs every source component to carry a mark"
                )
            markset_to_vertex[ms] = v
        mod_vertices = [v for v in range(t_g.num_vertices()) if t_g.md(v) > 0]
        for markset in sorted(per_vertex, key=lambda s: tuple(sorted(s))):
            splitvals = per_vertex[markset]
            v_hat = markset_to_vertex[markset]
            if t_g.num_vertices() == 1:
                _add_projected_class(
                    col, splitvals, p_a, n_a, keepset, renum, t.multiplicity
                )
            else:
                _add_glued_class(
                    col, splitvals, t_g, v_hat, mod_vertices,
                    p_a, keep, t.multiplicity,
                )
    if deg_nu != 1:
        for i in list(col):
            col[i] = col[i] / deg_nu
    return {i: c for i, c in col.items() if c}


def _add_projected_class(col, splitvals, p_a, n_a, keepset, renum, mult):
    """Single-component source: push the divisor pairings directly down the
    forgetful map and solve in the retained-mark space.  A split of the big
    space pairs through exactly when it traces a genuine split below."""
    pairs = {}
    for side, wgt in splitvals.items():
        tr = frozenset(renum[mk] for mk in side if mk in keepset)
        if 2 <= len(tr) <= n_a - 2:
            norm = trees.normalize_split(n_a, tr)
            pairs[norm] = pairs.get(norm, ZERO) + Fraction(wgt)
    coords = homology.solve_class_from_pairings(p_a, pairs)
    for pos, c in coords.items():
        nv = col.get(pos, ZERO) + mult * c
        if nv:
            col[pos] = nv
        else:
            col.pop(pos, None)


def _add_glued_class(col, splitvals, t_g, v_hat, mod_vertices, p_a, keep, mult):
    """Solve the vertex class in its own small space, substitute it at the
    vertex (points everywhere else), forget, and reduce."""
    val = t_g.valence(v_hat)
    if val > _MAX_VERTEX_SPACE:
        raise ResourceError(
            "vertex class lives in a %d-mark space, beyond the supported size" % val
        )
    small = homology.homology_basis(val, 1)
    coords = homology.solve_class_from_pairings(
        small, {s: Fraction(w) for s, w in splitvals.items()}
    )
    subs_base = {
        u: trees.enumerate_strata(t_g.valence(u), 0)[0]
        for u in mod_vertices
        if u != v_hat
    }
    for pos, c in sorted(coords.items()):
        small_tree = small.strata[small.basis[pos]]
        subs = dict(subs_base)
        subs[v_hat] = small_tree
        big = _substitute_many(t_g, subs)
        img = trees.forget_pushforward(big, keep)
        if img is None:
            continue
        red = homology.class_reduce(p_a, {img: ONE})
        for p2, c2 in red.items():
            nv = col.get(p2, ZERO) + mult * c * c2
            if nv:
                col[p2] = nv
            else:
                col.pop(p2, None)


# -- self-correspondence and dynamical degrees --------------------------------


def _relabel_tree(tree, perm):
    """Relabel marks by the bijection perm (old mark -> new mark)."""
    legs = [0] * tree.n
    for mk, v in enumerate(tree.legs, start=1):
        legs[perm[mk] - 1] = v
    return trees.canonical_form(trees.MarkedTree(tree.n, tree.parents, tuple(legs)))


def self_correspondence_matrix(h, k, limit_tuples=None, limit_strata=None):
    """Square matrix of the correspondence acting on H_{2k} of its own space.

    Needs the datum's identify bijection to rename target marks as retained
    marks.  k = 0 gives the 1x1 count matrix; k = 1 conjugates the
    pushforward into the retained-mark basis.
    """
    if h.identify is None:
        raise ValueError("self-correspondence needs the identify bijection")
    res = hurwitz.validate(h)
    if not res.ok:
        raise ValueError("invalid datum: %s" % res.reason)
    if k == 0:
        return ((Fraction(pushforward_h0(h, limit_tuples)),),)
    if k != 1:
        raise ValueError("self-correspondence matrices are available for k in {0, 1}")
    pm = pushforward_h2(h, limit_tuples, limit_strata)
    p_a, p_b = pm.target_pres, pm.source_pres
    if p_a.n != p_b.n:
        raise ValueError(
            "identify needs equal mark counts, got %d retained vs %d target"
            % (p_a.n, p_b.n)
        )
    # A'-mark j corresponds to B-mark position of the b identified with it
    a_of_b = {}
    for i, b in enumerate(h.b_marks, start=1):
        a = h.identify[b]
        a_of_b[i] = pm.aprime.index(a) + 1
    b_of_a = {j: i for i, j in a_of_b.items()}
    rank = p_a.rank
    out = [[ZERO] * rank for _ in range(rank)]
    for j, t in enumerate(p_a.basis_trees()):
        t_b = _relabel_tree(t, b_of_a)
        coords = homology.class_reduce(p_b, {t_b: ONE})
        for c, w in coords.items():
            for i in range(rank):
                v = pm.matrix[i][c]
                if v:
                    out[i][j] += w * v
    return tuple(tuple(row) for row in out)


class DegreeReport:
    """Spectral data of a pushforward matrix.

    value: the dynamical degree as a float; exact: the integer value when the
    degree is integral within tolerance; char_poly: primitive integer
    characteristic coefficients, constant term first; method: how the value
    was found.
    """

    __slots__ = ("value", "exact", "char_poly", "method", "tolerance")

    def __init__(self, value, exact, char_poly, method, tolerance):
        self.value = value
        self.exact = exact
        self.char_poly = char_poly
        self.method = method
        self.tolerance = tolerance

    def theta(self):
        return self.exact if self.exact is not None else self.value

    def __repr__(self):
        return "DegreeReport(theta=%r, method=%r)" % (self.theta(), self.method)


def _power_iteration(mat, iterations=500):
    n = len(mat)
    rows = [[float(x) for x in row] for row in mat]
    v = [1.0] * n
    lam = 0.0
    for _ in range(iterations):
        w = [sum(rows[i][j] * v[j] for j in range(n)) for i in range(n)]
        norm = max(abs(x) for x in w) if w else 0.0
        if norm == 0.0:
            return 0.0
        lam = norm
        v = [x / norm for x in w]
    return lam


def dynamical_degree(mat, tol=1e-9):
    """Largest real eigenvalue of an exact matrix, cross-checked numerically.

    The characteristic polynomial is computed exactly and its largest real
    root bracketed to high precision; the value must agree with a norm-based
    spectral radius estimate, otherwise the report falls back to power
    iteration.
    """
    if not mat or len(mat) != len(mat[0]):
        raise ValueError("dynamical degree needs a nonempty square matrix")
    cp = linalg.char_poly_integer(mat)
    root = linalg.largest_real_root(cp)
    gel = linalg.spectral_radius_float(mat)
    if root is not None and abs(root - gel) <= 1e-6 * max(1.0, abs(gel)):
        method = "exact_roots"
        value = root
    else:
        method = "power_iteration"
        value = _power_iteration(mat)
    exact = None
    nearest = round(value)
    if abs(value - nearest) <= tol:
        exact = int(nearest)
        value = float(nearest)
    return DegreeReport(value, exact, tuple(cp), method, tol)


# -- filtration blocks ---------------------------------------------------------


def _apply_matrix(mat, vec):
    out = {}
    for j, c in vec.items():
        for i in range(len(mat)):
            v = mat[i][j]
            if v:
                nv = out.get(i, ZERO) + v * c
                if nv:
                    out[i] = nv
                else:
                    out.pop(i, None)
    return out


def filtration_blocks(mat, n, k, limit_strata=None):
    """Split a matrix on H_{2k} coordinates into its filtration blocks.

    Verifies that the span of multi-vertex stratum classes is invariant
    (raising ValueError naming an escaping generator otherwise), then returns
    the block on that span and the induced block on the quotient.
    """
    pres = homology.homology_basis(n, k, limit_strata)
    if len(mat) != pres.rank or any(len(row) != pres.rank for row in mat):
        raise ValueError(
            "matrix is %dx%d but H_2k of the %d-mark space has rank %d"
            % (len(mat), len(mat[0]) if mat else 0, n, pres.rank)
        )
    below = filtration.below_subspace(n, k, limit_strata)
    omega = filtration.OmegaQuotient(pres, below)
    for t in pres.strata:
        if len(trees.induced_partition(t)) < 2:
            continue
        g = pres.reduce_tree_dict({t: 1})
        img = _apply_matrix(mat, g)
        if not below.contains(img):
            raise ValueError(
                "filtration not preserved: the class of %r escapes the span" % (t,)
            )
    rr = below.space.rref()
    pivots = sorted(rr)
    lam_rows = [rr[p] for p in pivots]
    lam_dim = len(pivots)
    lambda_block = [[ZERO] * lam_dim for _ in range(lam_dim)]
    for j, row in enumerate(lam_rows):
        img = _apply_matrix(mat, row)
        for i, p in enumerate(pivots):
            lambda_block[i][j] = img.get(p, ZERO)
    om_dim = omega.dim()
    omega_block = [[ZERO] * om_dim for _ in range(om_dim)]
    for j, pos in enumerate(omega.positions):
        img = _apply_matrix(mat, {pos: ONE})
        proj = omega.project(img)
        for i, c in proj.items():
            omega_block[i][j] = c
    return {
        "lambda_dim": lam_dim,
        "omega_dim": om_dim,
        "lambda_block": tuple(tuple(r) for r in lambda_block),
        "omega_block": tuple(tuple(r) for r in omega_block),
    }
