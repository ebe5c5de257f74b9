"""Quivers with monomial relations.

Conventions used throughout the package:

* An arrow is a triple (name, source, target); names are unique.
* A relation is a path of length >= 2 stored as a tuple of arrow names in
  *traversal order*: the first entry is the arrow traversed first.  The
  composition-style spelling (apply the rightmost arrow first) is the
  reverse of the stored tuple.
* Relation sets are kept subpath-minimal: no stored relation is a
  contiguous subpath of another.  This makes "path is zero" a plain
  containment scan.
"""

from dataclasses import dataclass, field


class AlgebraError(ValueError):
    pass


class ParseError(AlgebraError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # of (name, source, target)

    def __post_init__(self):
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate arrow names")
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise AlgebraError("duplicate vertices")
        for name, s, t in self.arrows:
            if s not in vs or t not in vs:
                raise AlgebraError(f"arrow {name} has undeclared endpoint")

    def source(self, name):
        return self._by_name()[name][1]

    def target(self, name):
        return self._by_name()[name][2]

    def _by_name(self):
        d = getattr(self, "_names", None)
        if d is None:
            d = {a[0]: a for a in self.arrows}
            object.__setattr__(self, "_names", d)
        return d

    def arrows_from(self, v):
        return [a for a in self.arrows if a[1] == v]

    def arrows_into(self, v):
        return [a for a in self.arrows if a[2] == v]


def _is_subpath(short, long):
    n, m = len(short), len(long)
    return any(long[i:i + n] == short for i in range(m - n + 1))


def _prune_minimal(rels):
    """Drop relations containing another relation as a subpath."""
    keep = []
    for r in sorted(rels, key=len):
        if not any(_is_subpath(s, r) for s in keep):
            keep.append(r)
    return frozenset(keep)


@dataclass(frozen=True)
class MonomialAlgebra:
    quiver: Quiver
    relations: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        rels = set()
        for r in self.relations:
            r = tuple(r)
            if len(r) < 2:
                raise AlgebraError(f"relation {r} shorter than 2")
            self._check_composable(r)
            rels.add(r)
        object.__setattr__(self, "relations", _prune_minimal(rels))

    def _check_composable(self, path):
        q = self.quiver
        for name in path:
            if name not in q._by_name():
                raise AlgebraError(f"unknown arrow {name!r} in relation")
        for a, b in zip(path, path[1:]):
            if q.target(a) != q.source(b):
                raise AlgebraError(
                    f"relation path not composable at {a!r} -> {b!r}")

    def path_is_zero(self, path):
        """True iff the traversal-order path contains a relation."""
        return any(_is_subpath(r, tuple(path)) for r in self.relations)

    def source(self, name):
        return self.quiver.source(name)

    def target(self, name):
        return self.quiver.target(name)


@dataclass(frozen=True)
class BiserialVerdict:
    ok: bool
    violations: tuple

    def __bool__(self):
        return self.ok


def parse_algebra(text):
    """Read the line-based algebra format.

    ``algebra NAME`` (optional), ``vertex ID...``, ``arrow NAME SRC TGT``,
    ``rel ARROW...`` in traversal order.  ``#`` starts a comment.
    """
    vertices = []
    arrows = []
    rels = []
    seen_v, seen_a = set(), set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        kw, args = toks[0], toks[1:]
        if kw == "algebra":
            if len(args) != 1:
                raise ParseError("algebra takes one name", lineno)
        elif kw == "vertex":
            if not args:
                raise ParseError("vertex needs at least one id", lineno)
            for v in args:
                if v in seen_v:
                    raise ParseError(f"duplicate vertex {v!r}", lineno)
                seen_v.add(v)
                vertices.append(v)
        elif kw == "arrow":
            if len(args) != 3:
                raise ParseError("arrow NAME SRC TGT", lineno)
            name, s, t = args
            if name in seen_a:
                raise ParseError(f"duplicate arrow {name!r}", lineno)
            if s not in seen_v or t not in seen_v:
                raise ParseError(f"unknown vertex in arrow {name!r}", lineno)
            seen_a.add(name)
            arrows.append((name, s, t))
        elif kw == "rel":
            if len(args) < 2:
                raise ParseError("rel needs a path of length >= 2", lineno)
            for a in args:
                if a not in seen_a:
                    raise ParseError(f"unknown arrow {a!r} in rel", lineno)
            by = {a[0]: a for a in arrows}
            for a, b in zip(args, args[1:]):
                if by[a][2] != by[b][1]:
                    raise ParseError(
                        f"rel not composable at {a} -> {b}", lineno)
            rels.append(tuple(args))
        else:
            raise ParseError(f"unknown directive {kw!r}", lineno)
    return MonomialAlgebra(Quiver(tuple(vertices), tuple(arrows)),
                           frozenset(rels))


def format_algebra(alg, name=None, header=None):
    """Inverse of parse_algebra, deterministic output."""
    lines = []
    if header:
        for h in header.splitlines():
            lines.append(f"# {h}")
    if name:
        lines.append(f"algebra {name}")
    if alg.quiver.vertices:
        lines.append("vertex " + " ".join(str(v) for v in alg.quiver.vertices))
    for a, s, t in alg.quiver.arrows:
        lines.append(f"arrow {a} {s} {t}")
    for r in sorted(alg.relations):
        lines.append("rel " + " ".join(r))
    return "\n".join(lines) + "\n"


def in_degree(alg, v):
    """Number of arrows ending in v; a loop counts once."""
    return len(alg.quiver.arrows_into(v))


def out_degree(alg, v):
    return len(alg.quiver.arrows_from(v))


def vertex_degree(alg, v):
    """Number of neighbours counted with multiplicity; loops count twice."""
    if v not in alg.quiver.vertices:
        raise AlgebraError(f"unknown vertex {v!r}")
    return in_degree(alg, v) + out_degree(alg, v)


def is_special_biserial(alg):
    """Check the degree bounds and the overlap conditions.

    At most two arrows in and out of every vertex; whenever two distinct
    arrows continue (or precede) a common arrow, at least one of the two
    compositions must be a relation.
    """
    violations = []
    q = alg.quiver
    for v in q.vertices:
        if in_degree(alg, v) > 2:
            violations.append(("C1-in", v))
        if out_degree(alg, v) > 2:
            violations.append(("C1-out", v))
    for a in q.arrows:
        cont = q.arrows_from(a[2])
        for g in cont:
            for d in cont:
                if g[0] < d[0]:
                    if not alg.path_is_zero((a[0], g[0])) and \
                       not alg.path_is_zero((a[0], d[0])):
                        violations.append(("C2", (a[0], g[0], d[0])))
        pre = q.arrows_into(a[1])
        for g in pre:
            for d in pre:
                if g[0] < d[0]:
                    if not alg.path_is_zero((g[0], a[0])) and \
                       not alg.path_is_zero((d[0], a[0])):
                        violations.append(("C2'", (g[0], d[0], a[0])))
    return BiserialVerdict(not violations, tuple(violations))


def is_node(alg, v):
    """Neither sink nor source, and every composition through v is zero."""
    if v not in alg.quiver.vertices:
        raise AlgebraError(f"unknown vertex {v!r}")
    incoming = alg.quiver.arrows_into(v)
    outgoing = alg.quiver.arrows_from(v)
    if not incoming or not outgoing:
        return False
    return all(alg.path_is_zero((a[0], g[0]))
               for a in incoming for g in outgoing)


def resolve_nodes(alg):
    """Split every node v into a sink v+ and a source v-.

    Incoming arrows are redirected to v+, outgoing arrows re-rooted at v-.
    Length-two relations through a node become vacuous and are dropped;
    all other relations survive unchanged (minimality of the stored set
    guarantees none of them passes through a node).
    """
    nodes = [v for v in alg.quiver.vertices if is_node(alg, v)]
    if not nodes:
        return alg
    nodeset = set(nodes)
    vertices = []
    for v in alg.quiver.vertices:
        if v in nodeset:
            vertices.extend([f"{v}+", f"{v}-"])
        else:
            vertices.append(v)
    arrows = []
    for name, s, t in alg.quiver.arrows:
        s2 = f"{s}-" if s in nodeset else s
        t2 = f"{t}+" if t in nodeset else t
        arrows.append((name, s2, t2))
    by = {a[0]: a for a in arrows}
    rels = []
    for r in alg.relations:
        ok = all(by[a][2] == by[b][1] for a, b in zip(r, r[1:]))
        if ok:
            rels.append(r)
    return MonomialAlgebra(Quiver(tuple(vertices), tuple(arrows)),
                           frozenset(rels))


def add_relation(alg, path):
    """Quotient by a nonzero path: add it as a relation (length >= 2) or
    delete the arrow (length 1)."""
    path = tuple(path)
    if not path:
        raise AlgebraError("empty path")
    if len(path) == 1:
        name = path[0]
        if name not in alg.quiver._by_name():
            raise AlgebraError(f"unknown arrow {name!r}")
        arrows = tuple(a for a in alg.quiver.arrows if a[0] != name)
        rels = frozenset(r for r in alg.relations if name not in r)
        return MonomialAlgebra(Quiver(alg.quiver.vertices, arrows), rels)
    alg._check_composable(path)
    if alg.path_is_zero(path):
        raise AlgebraError(f"path {path} is already zero")
    return MonomialAlgebra(alg.quiver, alg.relations | {path})


def is_finite_dimensional(alg):
    """Exact test: arbitrarily long nonzero paths exist iff the automaton
    on nonzero windows of length ``max relation length - 1`` has a cycle."""
    q = alg.quiver
    r = max((len(rel) for rel in alg.relations), default=2)
    win = r - 1
    states = [p for p in _paths_up_to(alg, win) if len(p) == win]
    if win == 0:
        states = [()]  # unreachable: relations have length >= 2
    adj = {p: [] for p in states}
    for p in states:
        for a in q.arrows_from(q.target(p[-1])):
            window = p + (a[0],)
            if not alg.path_is_zero(window):
                nxt = window[1:]
                if nxt in adj:
                    adj[p].append(nxt)
    # cycle detection
    color = {p: 0 for p in states}

    def has_cycle(p):
        color[p] = 1
        for qn in adj[p]:
            if color[qn] == 1:
                return True
            if color[qn] == 0 and has_cycle(qn):
                return True
        color[p] = 2
        return False

    return not any(color[p] == 0 and has_cycle(p) for p in states)


def _paths_up_to(alg, max_len):
    q = alg.quiver
    out = []
    frontier = [(a[0],) for a in q.arrows]
    length = 1
    while frontier and length <= max_len:
        out.extend(frontier)
        nxt = []
        for p in frontier:
            for a in q.arrows_from(q.target(p[-1])):
                cand = p + (a[0],)
                if not alg.path_is_zero(cand):
                    nxt.append(cand)
        frontier = nxt
        length += 1
    return out


def nonzero_paths(alg, max_len=None):
    """All nonzero paths of length >= 1 in traversal order.

    Raises if the algebra is infinite dimensional and no bound is given.
    """
    if max_len is not None:
        return _paths_up_to(alg, max_len)
    if not is_finite_dimensional(alg):
        raise AlgebraError("algebra is infinite dimensional")
    q = alg.quiver
    out = []
    frontier = [(a[0],) for a in q.arrows]
    while frontier:
        out.extend(frontier)
        nxt = []
        for p in frontier:
            for a in q.arrows_from(q.target(p[-1])):
                cand = p + (a[0],)
                if not alg.path_is_zero(cand):
                    nxt.append(cand)
        frontier = nxt
    return out


def maximal_nonzero_paths(alg):
    """Nonzero paths of length >= 2 that are not proper subpaths of a
    longer nonzero path."""
    paths = set(nonzero_paths(alg))
    q = alg.quiver
    out = []
    for p in paths:
        if len(p) < 2:
            continue
        extendable = any(p + (a[0],) in paths
                         for a in q.arrows_from(q.target(p[-1])))
        extendable = extendable or any((a[0],) + p in paths
                                       for a in q.arrows_into(q.source(p[0])))
        if not extendable:
            out.append(p)
    return sorted(out)


def canonical_algebra(alg):
    """Canonical relabelling key, used to deduplicate up to isomorphism.

    Brute-force minimum over all vertex relabellings (corpus algebras have
    at most a handful of vertices); arrow names are induced from sorted
    (source, target) data.
    """
    from itertools import permutations, product
    q = alg.quiver
    vs = list(q.vertices)
    best = None
    for perm in permutations(range(len(vs))):
        relab = {vs[i]: j for i, j in zip(range(len(vs)), perm)}
        arrs = sorted((relab[s], relab[t]) for _, s, t in q.arrows)
        key0 = tuple(arrs)
        if best is not None and key0 > best[0]:
            continue
        # arrows sharing (source, target) are interchangeable names; try
        # every slot assignment within each parallel group
        groups = {}
        for name, s, t in q.arrows:
            groups.setdefault((relab[s], relab[t]), []).append(name)
        keys = sorted(groups)
        for assignment in product(*(permutations(groups[g]) for g in keys)):
            names = {}
            for g, perm_names in zip(keys, assignment):
                for slot, name in enumerate(perm_names):
                    names[name] = (g[0], g[1], slot)
            rels = tuple(sorted(tuple(names[a] for a in r)
                                for r in alg.relations))
            key = (key0, rels)
            if best is None or key < best:
                best = key
    return best


def algebras_isomorphic(a, b):
    """Quiver-with-relations isomorphism by canonical relabelling."""
    if len(a.quiver.vertices) != len(b.quiver.vertices):
        return False
    if len(a.quiver.arrows) != len(b.quiver.arrows):
        return False
    return canonical_algebra(a) == canonical_algebra(b)
