"""Hurwitz data and admissible covers over stratum trees.

A Hurwitz datum records a branched-cover setup: source marks A over target
marks B (via F), a degree d, a branching partition br(b) of d over each
target mark, and local ramification rm(a) for each source mark.  Covers of a
nodal target (a stratum tree of the B-mark space) are encoded by monodromy:
one permutation of the d sheets per target-vertex flag, multiplying to the
identity in flag order, with leg permutations of cycle type br(b); marks
label cycles of matching length, and the fibers over each target edge are
glued by a length-preserving bijection of cycles.  Two covers are the same
labeled cover when per-vertex sheet relabelings carry one to the other, and
only connected covers whose component graph is a tree (genus zero) count.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from functools import lru_cache

from . import trees
from .trees import ResourceError


class HurwitzData:
    """Immutable branched-cover datum.

    a_marks, b_marks: tuples of distinct string labels.
    d: covering degree.
    f_map: {a: b} target of each source mark.
    br: {b: ascending partition of d}; missing entries mean unbranched.
    rm: {a: ramification index}.
    forget_to: optional tuple of retained source marks.
    identify: optional {b: a} bijection onto the retained marks, for
        composing the correspondence with itself.
    """

    __slots__ = ("a_marks", "b_marks", "d", "f_map", "br", "rm", "forget_to", "identify")

    def __init__(self, a_marks, b_marks, d, f_map, br, rm, forget_to=None, identify=None):
        self.a_marks = tuple(str(a) for a in a_marks)
        self.b_marks = tuple(str(b) for b in b_marks)
        self.d = int(d)
        self.f_map = {str(a): str(b) for a, b in f_map.items()}
        self.br = {str(b): tuple(sorted(int(x) for x in parts)) for b, parts in br.items()}
        self.rm = {str(a): int(r) for a, r in rm.items()}
        self.forget_to = None if forget_to is None else tuple(str(a) for a in forget_to)
        self.identify = None if identify is None else {str(b): str(a) for b, a in identify.items()}

    def branching(self, b):
        return self.br.get(b, tuple([1] * self.d))

    def marks_over(self, b):
        return [a for a in self.a_marks if self.f_map[a] == b]

    def to_json_dict(self):
        out = {
            "A": list(self.a_marks),
            "B": list(self.b_marks),
            "d": self.d,
            "F": dict(self.f_map),
            "br": {b: list(p) for b, p in self.br.items()},
            "rm": dict(self.rm),
        }
        if self.forget_to is not None:
            out["forget_to"] = list(self.forget_to)
        if self.identify is not None:
            out["identify"] = dict(self.identify)
        return out

    @staticmethod
    def from_json_dict(dd):
        return HurwitzData(
            dd["A"],
            dd["B"],
            dd["d"],
            dd["F"],
            dd.get("br", {}),
            dd["rm"],
            dd.get("forget_to"),
            dd.get("identify"),
        )


class ValidationResult:
    __slots__ = ("status", "reason")

    def __init__(self, status, reason=None):
        self.status = status
        self.reason = reason

    @property
    def ok(self):
        return self.status != "invalid"

    def __repr__(self):
        if self.reason:
            return "ValidationResult(%r, %r)" % (self.status, self.reason)
        return "ValidationResult(%r)" % self.status


def validate(h):
    """Check the two cover conditions; classify plain vs fully marked.

    Condition 1: the total branching sum_b (d - #parts(br(b))) equals 2d-2,
    so a connected cover has genus zero.  Condition 2: over each target mark
    the source-mark ramifications form a submultiset of the branching; with
    equality everywhere the datum is fully marked.
    """
    if len(set(h.a_marks)) != len(h.a_marks):
        return ValidationResult("invalid", "duplicate source marks")
    if len(set(h.b_marks)) != len(h.b_marks):
        return ValidationResult("invalid", "duplicate target marks")
    if set(h.a_marks) & set(h.b_marks):
        return ValidationResult("invalid", "source and target marks must be disjoint")
    if h.d < 1:
        return ValidationResult("invalid", "degree must be positive")
    if len(h.b_marks) < 3:
        return ValidationResult("invalid", "need at least 3 target marks")
    if set(h.f_map) != set(h.a_marks):
        return ValidationResult("invalid", "F must be defined exactly on the source marks")
    for a, b in h.f_map.items():
        if b not in h.b_marks:
            return ValidationResult("invalid", "F(%s)=%s is not a target mark" % (a, b))
    for b in h.br:
        if b not in h.b_marks:
            return ValidationResult("invalid", "branching over unknown mark %s" % b)
    for b in h.b_marks:
        parts = h.branching(b)
        if sum(parts) != h.d or any(p < 1 for p in parts):
            return ValidationResult("invalid", "br(%s)=%r is not a partition of %d" % (b, parts, h.d))
    if set(h.rm) != set(h.a_marks):
        return ValidationResult("invalid", "rm must be defined exactly on the source marks")
    total = sum(h.d - len(h.branching(b)) for b in h.b_marks)
    if total != 2 * h.d - 2:
        return ValidationResult(
            "invalid", "total branching %d != 2d-2 = %d" % (total, 2 * h.d - 2)
        )
    fully = True
    for b in h.b_marks:
        have = Counter(h.rm[a] for a in h.marks_over(b))
        want = Counter(h.branching(b))
        if have - want:
            return ValidationResult(
                "invalid", "marks over %s exceed its branching: %r vs %r" % (b, dict(have), dict(want))
            )
        if want - have:
            fully = False
    if h.forget_to is not None:
        if len(set(h.forget_to)) != len(h.forget_to) or not set(h.forget_to) <= set(h.a_marks):
            return ValidationResult("invalid", "forget_to must be distinct source marks")
    if h.identify is not None:
        kept = set(h.forget_to) if h.forget_to is not None else set(h.a_marks)
        if set(h.identify) != set(h.b_marks):
            return ValidationResult("invalid", "identify must be defined exactly on the target marks")
        vals = list(h.identify.values())
        if len(set(vals)) != len(vals) or not set(vals) <= kept:
            return ValidationResult("invalid", "identify must be a bijection onto the retained marks")
        if len(vals) != len(kept):
            return ValidationResult("invalid", "identify must cover all retained marks")
    return ValidationResult("fully_marked" if fully else "plain")


def fully_mark(h):
    """Label every unmarked branch point; returns (datum, relabeling degree).

    Over each target mark the missing parts of br(b) get fresh marks named
    a(b,r), primed on repetition; the degree of the labeling cover is the
    product over (b, r) of (number of added marks with that pair)!.
    """
    res = validate(h)
    if not res.ok:
        raise ValueError("cannot fully mark an invalid datum: %s" % res.reason)
    new_a = list(h.a_marks)
    f_map = dict(h.f_map)
    rm = dict(h.rm)
    deg = 1
    for b in h.b_marks:
        have = Counter(h.rm[a] for a in h.marks_over(b))
        want = Counter(h.branching(b))
        missing = want - have
        for r in sorted(missing):
            count = missing[r]
            for j in range(count):
                name = "a(%s,%d)" % (b, r) + "'" * j
                if name in new_a or name in h.b_marks:
                    raise ValueError("generated mark name %s collides" % name)
                new_a.append(name)
                f_map[name] = b
                rm[name] = r
            deg *= _factorial(count)
    forget = h.forget_to if h.forget_to is not None else tuple(h.a_marks)
    full = HurwitzData(new_a, h.b_marks, h.d, f_map, h.br, rm, forget, h.identify)
    chk = validate(full)
    if chk.status != "fully_marked":
        raise AssertionError("full marking failed: %s" % chk.reason)
    return full, deg


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


# -- permutations ------------------------------------------------------------


@lru_cache(maxsize=None)
def _perm_pool(d):
    """(all permutations of range(d), {cycle type: tuple of perms})."""
    all_p = tuple(itertools.permutations(range(d)))
    by_type = {}
    for p in all_p:
        by_type.setdefault(_cycle_type(p), []).append(p)
    return all_p, {t: tuple(v) for t, v in by_type.items()}


def _cycles(p):
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        out.append(tuple(cyc))
    return out


def _cycle_type(p):
    return tuple(sorted(len(c) for c in _cycles(p)))


def _compose(p, q):
    """Apply q first, then p."""
    return tuple(p[q[i]] for i in range(len(p)))


def _inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def _conj(hh, g):
    """h g h^-1 as a sheet relabeling of g."""
    hinv = _inverse(hh)
    return tuple(hh[g[hinv[i]]] for i in range(len(g)))


def _cycle_image(hh, cyc):
    """The cycle relabeled by h, in canonical min-first rotation."""
    img = [hh[x] for x in cyc]
    k = img.index(min(img))
    return tuple(img[k:] + img[:k])


def _canon_cycle(cyc):
    k = cyc.index(min(cyc))
    return tuple(cyc[k:] + cyc[:k])


# -- labeled covers over a stratum tree --------------------------------------


class CoverClass:
    """One labeled-cover class over a target tree, by representative.

    comps: list of (target vertex, frozenset of sheets) source components.
    comp_marks: per component the tuple of source marks on it.
    comp_degree: per component its covering degree.
    edges: list of (comp i, comp j, r) source nodes with ramification r.
    """

    __slots__ = (
        "tau", "vertex_perms", "labeling", "matchings",
        "comps", "comp_marks", "comp_degree", "edges", "key",
    )

    def __init__(self, tau, vertex_perms, labeling, matchings,
                 comps, comp_marks, comp_degree, edges, key):
        self.tau = tau
        self.vertex_perms = vertex_perms
        self.labeling = labeling
        self.matchings = matchings
        self.comps = comps
        self.comp_marks = comp_marks
        self.comp_degree = comp_degree
        self.edges = edges
        self.key = key


class _Limit:
    def __init__(self, cap):
        self.cap = cap
        self.used = 0

    def tick(self, amount=1):
        if self.cap is None:
            return
        self.used += amount
        if self.used > self.cap:
            raise ResourceError("cover enumeration exceeded %d tuples" % self.cap)


def _local_assignments(h, tau, w, limit):
    """All flag-permutation tuples at target vertex w: product in flag order
    is the identity, leg flags carry their branching cycle type."""
    all_p, by_type = _perm_pool(h.d)
    flags = tau.flags_of(w)
    opts = []
    for f in flags[:-1]:
        if f[0] == "leg":
            b = h.b_marks[f[1] - 1]
            opts.append(by_type.get(h.branching(b), ()))
        else:
            opts.append(all_p)
    out = []
    ident = tuple(range(h.d))
    for combo in itertools.product(*opts):
        limit.tick()
        prod = ident
        for g in combo:
            prod = _compose(prod, g)
        last = _inverse(prod)
        f = flags[-1]
        if f[0] == "leg":
            b = h.b_marks[f[1] - 1]
            if _cycle_type(last) != h.branching(b):
                continue
        out.append(combo + (last,))
    return out


def _vertex_labelings(h, tau, w, perms, limit):
    """All ways to attach the marks over w's legs to cycles of the leg
    permutations, length-preserving and bijective per length."""
    flags = tau.flags_of(w)
    per_flag = []
    for pos, f in enumerate(flags):
        if f[0] != "leg":
            continue
        b = h.b_marks[f[1] - 1]
        marks = h.marks_over(b)
        cycs = _cycles(perms[pos])
        by_len_c = {}
        for c in cycs:
            by_len_c.setdefault(len(c), []).append(c)
        by_len_m = {}
        for a in marks:
            by_len_m.setdefault(h.rm[a], []).append(a)
        if {l: len(v) for l, v in by_len_c.items()} != {l: len(v) for l, v in by_len_m.items()}:
            return []
        choices_per_len = []
        for ln in sorted(by_len_m):
            ms = by_len_m[ln]
            cs = by_len_c[ln]
            choices_per_len.append([list(zip(ms, perm)) for perm in itertools.permutations(cs)])
        flag_choices = []
        for combo in itertools.product(*choices_per_len):
            limit.tick()
            assign = {}
            for pairs in combo:
                for a, c in pairs:
                    assign[a] = (pos, _canon_cycle(c))
            flag_choices.append(assign)
        per_flag.append(flag_choices)
    out = []
    for combo in itertools.product(*per_flag):
        merged = {}
        for assign in combo:
            merged.update(assign)
        out.append(merged)
    return out


def _edge_matchings(gc, gp, limit):
    """Length-preserving bijections between the cycles of two permutations."""
    cyc_c = _cycles(gc)
    cyc_p = _cycles(gp)
    by_len_c = {}
    for c in cyc_c:
        by_len_c.setdefault(len(c), []).append(c)
    by_len_p = {}
    for c in cyc_p:
        by_len_p.setdefault(len(c), []).append(c)
    if {l: len(v) for l, v in by_len_c.items()} != {l: len(v) for l, v in by_len_p.items()}:
        return []
    per_len = []
    for ln in sorted(by_len_c):
        cs = by_len_c[ln]
        ps = by_len_p[ln]
        per_len.append([list(zip(cs, perm)) for perm in itertools.permutations(ps)])
    out = []
    for combo in itertools.product(*per_len):
        limit.tick()
        pairs = []
        for chunk in combo:
            pairs.extend((_canon_cycle(a), _canon_cycle(b)) for a, b in chunk)
        out.append(tuple(sorted(pairs)))
    return out


def _orbits(perms, d):
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in perms:
        for i in range(d):
            a, b = find(i), find(g[i])
            if a != b:
                parent[a] = b
    groups = {}
    for i in range(d):
        groups.setdefault(find(i), []).append(i)
    return [frozenset(v) for v in sorted(groups.values())]


def _class_encoding(h, tau, vertex_perms, labeling, matchings, relabels, edge_list):
    enc_perms = []
    for w, perms in enumerate(vertex_perms):
        hw = relabels[w]
        enc_perms.append(tuple(_conj(hw, g) for g in perms))
    enc_label = []
    for a in h.a_marks:
        pos, cyc = labeling[a]
        w = _vertex_of_mark(h, tau, a)
        enc_label.append((a, pos, _cycle_image(relabels[w], cyc)))
    enc_match = []
    for (c, p), pairs in zip(edge_list, matchings):
        hc, hp = relabels[c], relabels[p]
        enc_match.append(
            tuple(sorted((_cycle_image(hc, x), _cycle_image(hp, y)) for x, y in pairs))
        )
    return (tuple(enc_perms), tuple(enc_label), tuple(enc_match))


def _vertex_of_mark(h, tau, a):
    b = h.f_map[a]
    bi = h.b_marks.index(b) + 1
    return tau.legs[bi - 1]


def enumerate_cover_classes(h, tau, limit_tuples=None):
    """All labeled-cover classes of the datum over the target tree tau.

    Requires a fully marked datum; tau is a stratum tree on |B| marks, mark i
    standing for b_marks[i-1].  Returns CoverClass representatives sorted by
    canonical key.
    """
    res = validate(h)
    if res.status != "fully_marked":
        raise ValueError("cover enumeration requires a fully marked datum (%s)" % res.status)
    if tau.n != len(h.b_marks):
        raise ValueError("target tree has %d marks, datum has %d" % (tau.n, len(h.b_marks)))
    limit = _Limit(limit_tuples)
    d = h.d
    all_p, _ = _perm_pool(d)
    num_w = len(tau.parents)
    flag_lists = [tau.flags_of(w) for w in range(num_w)]
    locals_per_w = [_local_assignments(h, tau, w, limit) for w in range(num_w)]

    # target edges with their flag positions on each side
    edge_list = []
    edge_pos = []
    for c, p in tau.edges():
        posc = next(
            i for i, f in enumerate(flag_lists[c]) if f[0] == "edge" and f[1] == p
        )
        posp = next(
            i for i, f in enumerate(flag_lists[p]) if f[0] == "edge" and f[1] == c
        )
        edge_list.append((c, p))
        edge_pos.append((posc, posp))

    reps = {}
    relabel_space = list(itertools.product(all_p, repeat=num_w))

    for vertex_perms in itertools.product(*locals_per_w):
        limit.tick()
        ok = True
        for (c, p), (posc, posp) in zip(edge_list, edge_pos):
            if _cycle_type(vertex_perms[c][posc]) != _cycle_type(vertex_perms[p][posp]):
                ok = False
                break
        if not ok:
            continue
        labeling_sets = [
            _vertex_labelings(h, tau, w, vertex_perms[w], limit) for w in range(num_w)
        ]
        if any(not ls for ls in labeling_sets):
            continue
        matching_sets = [
            _edge_matchings(vertex_perms[c][posc], vertex_perms[p][posp], limit)
            for (c, p), (posc, posp) in zip(edge_list, edge_pos)
        ]
        if any(not ms for ms in matching_sets):
            continue

        # source components per vertex
        comps = []
        comp_id = {}
        for w in range(num_w):
            for orb in _orbits(vertex_perms[w], d):
                comp_id[(w, orb)] = len(comps)
                comps.append((w, orb))

        def comp_of(w, cyc):
            for (ww, orb), idx in comp_id.items():
                if ww == w and cyc[0] in orb:
                    return idx
            raise AssertionError("cycle outside all orbits")

        for labeling_combo in itertools.product(*labeling_sets):
            labeling = {}
            for assign in labeling_combo:
                labeling.update(assign)
            for matchings in itertools.product(*matching_sets):
                limit.tick()
                # source graph: one edge per matched cycle pair
                uf = list(range(len(comps)))

                def find(x):
                    while uf[x] != x:
                        uf[x] = uf[uf[x]]
                        x = uf[x]
                    return x

                n_edges = 0
                acyclic = True
                src_edges = []
                for (c, p), pairs in zip(edge_list, matchings):
                    for cy1, cy2 in pairs:
                        i1 = comp_of(c, cy1)
                        i2 = comp_of(p, cy2)
                        src_edges.append((i1, i2, len(cy1)))
                        n_edges += 1
                        r1, r2 = find(i1), find(i2)
                        if r1 == r2:
                            acyclic = False
                            break
                        uf[r1] = r2
                    if not acyclic:
                        break
                if not acyclic:
                    continue
                if n_edges != len(comps) - 1:
                    continue  # disconnected
                key = min(
                    _class_encoding(h, tau, vertex_perms, labeling, matchings, rls, edge_list)
                    for rls in relabel_space
                )
                if key in reps:
                    continue
                comp_marks = [[] for _ in comps]
                for a in h.a_marks:
                    pos, cyc = labeling[a]
                    w = _vertex_of_mark(h, tau, a)
                    comp_marks[comp_of(w, cyc)].append(a)
                comp_degree = [len(orb) for (_w, orb) in comps]
                reps[key] = CoverClass(
                    tau, vertex_perms, labeling, matchings,
                    comps, [tuple(m) for m in comp_marks], comp_degree,
                    src_edges, key,
                )
    return [reps[k] for k in sorted(reps)]


def count_covers(h, limit_tuples=None):
    """Number of labeled covers of a smooth generic target (full datum)."""
    classes = enumerate_cover_classes(h, trees.trivial_tree(len(h.b_marks)), limit_tuples)
    return len(classes)


def count_covers_orbit_stabilizer(h, limit_tuples=None):
    """Smooth-target count again, via the stabilizer sum over raw
    configurations; independent of the canonical-key dedup."""
    res = validate(h)
    if res.status != "fully_marked":
        raise ValueError("requires a fully marked datum")
    tau = trees.trivial_tree(len(h.b_marks))
    limit = _Limit(limit_tuples)
    d = h.d
    all_p, _ = _perm_pool(d)
    stab_total = 0
    for perms in _local_assignments(h, tau, 0, limit):
        for labeling in _vertex_labelings(h, tau, 0, perms, limit):
            if len(_orbits(perms, d)) != 1:
                continue
            stab = 0
            for hh in all_p:
                if all(_conj(hh, g) == g for g in perms) and all(
                    _cycle_image(hh, cyc) == cyc for (_pos, cyc) in labeling.values()
                ):
                    stab += 1
            stab_total += stab
    total = _factorial(d)
    if stab_total % total:
        raise AssertionError("stabilizer sum %d not divisible by %d" % (stab_total, total))
    return stab_total // total


# -- cover types --------------------------------------------------------------


class CoverType:
    """Isomorphism type of labeled covers over a fixed target tree.

    source_tree is the stable tree on the source marks (positions in
    a_marks); node_data lists (normalised split side, r) per source node;
    multiplicity is the product of the node ramifications; count the number
    of labeled-cover classes of this type.
    """

    __slots__ = ("tau", "source_tree", "node_data", "multiplicity", "count", "classes")

    def __init__(self, tau, source_tree, node_data, multiplicity, count, classes):
        self.tau = tau
        self.source_tree = source_tree
        self.node_data = node_data
        self.multiplicity = multiplicity
        self.count = count
        self.classes = classes

    @property
    def key(self):
        return (trees.tree_sort_key(self.source_tree), self.node_data)


def _source_tree_of_class(h, cls):
    """The class's source curve as a stable marked tree plus node data.

    Returns (tree, ((normalised split side, r), ...)); marks are positions in
    a_marks, and component i of the class is vertex i of the tree.
    """
    n_a = len(h.a_marks)
    a_index = {a: i + 1 for i, a in enumerate(h.a_marks)}
    vertices = [[] for _ in cls.comps]
    for ci, marks in enumerate(cls.comp_marks):
        for a in marks:
            vertices[ci].append(("leg", a_index[a]))
    for i1, i2, _r in cls.edges:
        vertices[i1].append(("edge", i2))
    t = trees._assemble(n_a, vertices)
    node_data = []
    for i1, i2, r in cls.edges:
        side = t.away_marks(i1, i2)
        node_data.append((trees.normalize_split(n_a, side), r))
    node_data.sort(key=lambda x: (tuple(sorted(x[0])), x[1]))
    return t, tuple(node_data)


def enumerate_cover_types(h, tau, limit_tuples=None):
    """Group the labeled-cover classes over tau by isomorphism type."""
    classes = enumerate_cover_classes(h, tau, limit_tuples)
    buckets = {}
    for cls in classes:
        t, node_data = _source_tree_of_class(h, cls)
        key = (trees.canonical_form(t), node_data)
        buckets.setdefault(key, []).append(cls)
    out = []
    for (t, node_data) in sorted(buckets, key=lambda k: (trees.tree_sort_key(k[0]), k[1])):
        cl = buckets[(t, node_data)]
        mult = 1
        for _side, r in node_data:
            mult *= r
        out.append(CoverType(tau, t, node_data, mult, len(cl), cl))
    return out


def degeneration_degree_check(h, tau, limit_tuples=None):
    """Over any stratum tree the multiplicity-weighted class count must equal
    the smooth-target count.  Returns a report dict; ok=False flags a bug."""
    types = enumerate_cover_types(h, tau, limit_tuples)
    total = sum(t.multiplicity * t.count for t in types)
    expected = count_covers(h, limit_tuples)
    return {
        "expected": expected,
        "total": total,
        "ok": total == expected,
        "types": [
            {"count": t.count, "multiplicity": t.multiplicity, "codim": t.source_tree.codim()}
            for t in types
        ],
    }
