"""Cycle algebras, barification, barbells and wind wheels.

A wind wheel is assembled from a single cyclic word: edges used once form
the spoke paths, edges used twice the bars.  The constructor derives the
factorization, the pairing involution, the two bar permutations coming
from the two natural cuttings of the word, and their commutator, whose
cycle partition controls how the translation-quiver leaves are sewn.
"""

from dataclasses import dataclass

from .quiver import (AlgebraError, MonomialAlgebra, Quiver, is_special_biserial,
                     vertex_degree)
from . import words as W
from .words import (CyclicWord, Letter, Word, canonical_cyclic, cyclic_word,
                    inverse, is_attracting, is_serial, letter_source,
                    letter_target, validate_word)


class ConstructionError(AlgebraError):
    pass


# ---------------------------------------------------------------- signs

@dataclass(frozen=True)
class OrientationSequence:
    signs: tuple  # of +1 / -1

    def __post_init__(self):
        if not self.signs or any(s not in (1, -1) for s in self.signs):
            raise ConstructionError("signs must be a nonempty +-1 sequence")

    def __len__(self):
        return len(self.signs)

    def is_constant(self):
        return len(set(self.signs)) == 1

    def inverse(self):
        return OrientationSequence(tuple(-s for s in reversed(self.signs)))

    def __add__(self, other):
        return OrientationSequence(self.signs + other.signs)

    def __repr__(self):
        return "".join("+" if s == 1 else "-" for s in self.signs)


def parse_signs(text):
    text = text.strip()
    if not all(c in "+-" for c in text) or not text:
        raise ConstructionError(f"bad orientation sequence {text!r}")
    return OrientationSequence(tuple(1 if c == "+" else -1 for c in text))


def signs_of_word(w):
    """Orientation sequence of a word: +1 where the letter is an arrow."""
    return OrientationSequence(tuple(-1 if l.inv else 1 for l in w.letters))


# ---------------------------------------------------------- permutations

@dataclass(frozen=True)
class Permutation:
    mapping: tuple  # sorted tuple of (x, image) pairs

    @staticmethod
    def from_dict(d):
        if set(d.keys()) != set(d.values()):
            raise ConstructionError("not a bijection")
        return Permutation(tuple(sorted(d.items(), key=lambda kv: str(kv[0]))))

    @staticmethod
    def identity(ground):
        return Permutation.from_dict({x: x for x in ground})

    @staticmethod
    def from_cycles(cycles, ground=None):
        d = {}
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                if a in d:
                    raise ConstructionError(f"element {a!r} repeated")
                d[a] = b
        for x in (ground or ()):
            d.setdefault(x, x)
        return Permutation.from_dict(d)

    def as_dict(self):
        return dict(self.mapping)

    def ground(self):
        return frozenset(x for x, _ in self.mapping)

    def __call__(self, x):
        return self.as_dict()[x]

    def compose(self, other):
        """self after other."""
        if self.ground() != other.ground():
            raise ConstructionError("permutations on different ground sets")
        od, sd = other.as_dict(), self.as_dict()
        return Permutation.from_dict({x: sd[od[x]] for x in od})

    def inverse(self):
        return Permutation.from_dict({v: k for k, v in self.mapping})

    def commutator(self, other):
        return self.compose(other).compose(self.inverse()).compose(other.inverse())

    def cycles(self):
        d = self.as_dict()
        seen = set()
        out = []
        for x in sorted(d, key=str):
            if x in seen:
                continue
            cyc = [x]
            seen.add(x)
            y = d[x]
            while y != x:
                cyc.append(y)
                seen.add(y)
                y = d[y]
            out.append(tuple(cyc))
        return out

    def cycle_type(self):
        return Partition(tuple(sorted((len(c) for c in self.cycles()),
                                      reverse=True)))

    def is_involution(self):
        d = self.as_dict()
        return all(d[d[x]] == x for x in d)

    def is_fixed_point_free(self):
        return all(k != v for k, v in self.mapping)

    def __repr__(self):
        nt = [c for c in self.cycles() if len(c) > 1]
        if not nt:
            return "()"
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in nt)


def parse_permutation(text, ground=None):
    """Cycle notation, e.g. "(1 3)(2 4)"; elements are ints when possible."""
    text = text.strip()
    cycles = []
    buf = None
    for ch in text.replace(",", " "):
        if ch == "(":
            if buf is not None:
                raise ConstructionError("nested parenthesis")
            buf = []
        elif ch == ")":
            if buf is None:
                raise ConstructionError("unbalanced parenthesis")
            cycles.append(tuple(buf))
            buf = None
        elif buf is not None:
            if ch.strip():
                buf.append(ch)
            elif buf and buf[-1] != " ":
                buf.append(" ")
    if buf is not None:
        raise ConstructionError("unbalanced parenthesis")
    parsed = []
    for cyc in cycles:
        items = "".join(cyc).split()
        parsed.append(tuple(int(x) if x.isdigit() else x for x in items))
    return Permutation.from_cycles(parsed, ground)


@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        if list(self.parts) != sorted(self.parts, reverse=True) or \
           any(p <= 0 for p in self.parts):
            raise ConstructionError(f"bad partition {self.parts}")

    def total(self):
        return sum(self.parts)

    def __repr__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"


# --------------------------------------------------------- cycle algebra

def cycle_algebra(eps):
    """Hereditary algebra on a cycle with arrows oriented by the signs."""
    if eps.is_constant():
        raise ConstructionError("constant orientation gives an infinite "
                                "dimensional algebra")
    n = len(eps)
    names = [f"a{i}" for i in range(1, n + 1)]

    def v(i):  # vertex a_i with a_0 = a_n
        return names[(i - 1) % n]

    arrows = []
    for i, s in enumerate(eps.signs, start=1):
        if s == 1:
            arrows.append((f"alpha{i}", v(i), v(i - 1)))
        else:
            arrows.append((f"alpha{i}", v(i - 1), v(i)))
    return MonomialAlgebra(Quiver(tuple(names), tuple(arrows)))


def cycle_word(alg_h, eps):
    """The primitive cyclic word running once around the cycle."""
    letters = tuple(Letter(f"alpha{i}", s == -1)
                    for i, s in enumerate(eps.signs, start=1))
    return validate_word(alg_h, letters)


# ----------------------------------------------------------- barification

def chain_vertices(alg, w):
    """Walk vertices of a word listed from its left end."""
    if w.is_trivial():
        return [w.base]
    out = [letter_target(alg, w.letters[0])]
    for l in w.letters:
        out.append(letter_source(alg, l))
    return out


def _flank_into(alg, vertex, used_edge):
    """The letter arriving at `vertex` along the edge other than
    `used_edge`; None if there is no such edge."""
    cands = []
    for name, s, t in alg.quiver.arrows:
        if name == used_edge:
            continue
        if t == vertex:
            cands.append(Letter(name))
        if s == vertex:
            cands.append(Letter(name, True))
    return cands


def barify(alg, v, vp):
    """Identify the parallel chains under v and vp and add the two
    overlap relations at the glued ends."""
    chain_a = chain_vertices(alg, v)
    chain_b = chain_vertices(alg, vp)
    t = len(chain_a)
    if len(chain_b) != t:
        raise ConstructionError("chains of different length")
    allv = chain_a + chain_b
    if len(set(allv)) != 2 * t:
        raise ConstructionError("chain vertices not pairwise distinct")
    for i, x in enumerate(allv):
        if vertex_degree(alg, x) != 2:
            raise ConstructionError(f"chain vertex {x!r} is not a 2-vertex "
                                    f"(index {i % t})")
    for k, (la, lb) in enumerate(zip(v.letters, vp.letters)):
        if la.inv != lb.inv:
            raise ConstructionError(f"chain letters disagree in direction "
                                    f"at index {k + 1}")
        if any(la.arrow in r or lb.arrow in r for r in alg.relations):
            raise ConstructionError(f"inner chain arrow involved in a "
                                    f"relation (index {k + 1})")

    def flanks(chain, word):
        """(incoming flank at chain[0], outgoing flank at chain[-1])."""
        if word.is_trivial():
            cands = _flank_into(alg, chain[0], None)
            # two free slots at a single 2-vertex: one letter in, one out
            outs = [l.inverse() for l in cands]
            return cands, outs
        first_edge = word.letters[0].arrow
        last_edge = word.letters[-1].arrow
        into = _flank_into(alg, chain[0], first_edge)
        outof = [l.inverse() for l in _flank_into(alg, chain[-1], last_edge)]
        return into, outof

    ins_a, outs_a = flanks(chain_a, v)
    ins_b, outs_b = flanks(chain_b, vp)
    if not ins_a or not ins_b or not outs_a or not outs_b:
        raise ConstructionError("missing flanking letter at a chain end")

    pick = None
    for l0 in ins_a:
        for l0p in ins_b:
            for lt in outs_a:
                for ltp in outs_b:
                    if v.is_trivial():
                        # at a 2-vertex the in/out flanks must use the two
                        # distinct edge slots
                        if l0.arrow == lt.arrow and len(ins_a) > 1:
                            continue
                        if l0p.arrow == ltp.arrow and len(ins_b) > 1:
                            continue
                    if l0.inv != l0p.inv and lt.inv != ltp.inv:
                        pick = (l0, l0p, lt, ltp)
                        break
                if pick:
                    break
            if pick:
                break
        if pick:
            break
    if pick is None:
        raise ConstructionError("flanking letters do not oppose in "
                                "direction at the chain ends (index 0)")
    l0, l0p, lt, ltp = pick

    # rename: primed chain vertices and arrows fold onto the unprimed ones
    vmap = {x: x for x in alg.quiver.vertices}
    for xa, xb in zip(chain_a, chain_b):
        vmap[xb] = xa
    amap = {a[0]: a[0] for a in alg.quiver.arrows}
    for la, lb in zip(v.letters, vp.letters):
        amap[lb.arrow] = la.arrow

    vertices = tuple(x for x in alg.quiver.vertices if vmap[x] == x)
    arrows = []
    seen = set()
    for name, s, t_ in alg.quiver.arrows:
        nm = amap[name]
        if nm in seen:
            continue
        seen.add(nm)
        arrows.append((nm, vmap[s], vmap[t_]))
    rels = {tuple(amap[a] for a in r) for r in alg.relations}

    def two_letter_relation(x, y):
        # the composition x then y (composition order), as a direct path
        if x.inv:
            x, y = y.inverse(), x.inverse()
        return (amap[y.arrow], amap[x.arrow])

    rels.add(two_letter_relation(l0, l0p.inverse()))
    rels.add(two_letter_relation(ltp.inverse(), lt))
    return MonomialAlgebra(Quiver(vertices, tuple(arrows)), frozenset(rels))


# -------------------------------------------------------------- barbells

def barbell(eps, eta, eps2):
    """Glue the two eta-stretches of the cycle algebra on eps+eta+eps2+eta^-1.

    Returns the algebra together with its bar word.
    """
    for name, e in (("eps", eps), ("eps2", eps2)):
        if e.signs[0] != 1 or e.signs[-1] != 1:
            raise ConstructionError(f"{name} must start and end with +")
    full = eps + eta + eps2 + eta.inverse()
    h = cycle_algebra(full)
    r, s, t2 = len(eps), len(eta), len(eps2)
    n = r + s + t2 + s

    def vtx(i):
        return f"a{(i - 1) % n + 1}"

    def chain_word(idxs):
        # word along consecutive vertices a_idxs[0] .. a_idxs[-1]
        letters = []
        for x, y in zip(idxs, idxs[1:]):
            # the connecting arrow is alpha_max(x,y) (indices differ by 1)
            k = max(x, y) if abs(x - y) == 1 else n
            name = f"alpha{k}"
            src = h.source(name)
            # letter traversed from a_x to a_y, stored composition-style
            letters.append(Letter(name, src == vtx(x)))
        letters.reverse()
        if not letters:
            return Word((), vtx(idxs[0]))
        return validate_word(h, tuple(l.inverse() for l in letters))

    chain_a = list(range(r, r + s + 1))
    chain_b = [((n - i - 1) % n) + 1 for i in range(s + 1)]
    # chain_b runs a_n, a_{n-1}, .., a_{r+s+t2}
    chain_b = [n - i for i in range(s + 1)]
    wa = chain_word(chain_a)
    wb = chain_word(chain_b)
    alg = barify(h, wa, wb)
    bar_letters = tuple(l if l.arrow in {a[0] for a in alg.quiver.arrows}
                        else l for l in wa.letters)
    bar = Word(wa.letters, wa.base if wa.is_trivial() else None)
    if bar.is_trivial():
        bar = Word((), f"a{r}" if r else f"a{n}")
    return alg, bar


# ------------------------------------------------------------ wind wheels

class WindWheelError(ConstructionError):
    pass


@dataclass(frozen=True)
class WindWheelData:
    word: CyclicWord
    factors: tuple          # ((u_1, v_1), ..., (u_2t, v_2t)) as Words
    sigma: Permutation      # on 1..2t
    bars: tuple             # direct bar Words, one per bar
    lam: Permutation        # on the bars (by bar key)
    rho: Permutation
    pi: Permutation
    algebra: MonomialAlgebra

    @property
    def t(self):
        return len(self.bars)

    def bar_keys(self):
        return tuple(bar_key(b) for b in self.bars)


def bar_key(bar_word):
    """Stable identity of a bar: its arrow names read along the word."""
    return tuple(l.arrow for l in bar_word.letters)


def parse_abstract_word(text):
    """Letters over an abstract alphabet (no ambient algebra yet)."""
    letters = []
    for t in text.split():
        inv = t.startswith("~")
        name = t[1:] if inv else t
        if not name:
            raise WindWheelError(f"bad letter token {t!r}")
        letters.append(Letter(name, inv))
    if len(letters) < 2:
        raise WindWheelError("need at least two letters")
    return tuple(letters)


class _UF:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, x):
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[max(ra, rb)] = min(ra, rb)


def _blocks_by_multiplicity(letters):
    """Cut a cyclic letter sequence into maximal runs of once-used and
    twice-used edges.  Returns list of (kind, [indices]) in cyclic order
    starting with a 'u' block."""
    n = len(letters)
    count = {}
    for l in letters:
        count[l.arrow] = count.get(l.arrow, 0) + 1
    if any(c > 2 for c in count.values()):
        raise WindWheelError("an edge occurs more than twice")
    kinds = ["v" if count[l.arrow] == 2 else "u" for l in letters]
    if "u" not in kinds or "v" not in kinds:
        raise WindWheelError("word does not mix once- and twice-used edges")
    # rotate so position 0 starts a u block
    start = next(i for i in range(n)
                 if kinds[i] == "u" and kinds[(i - 1) % n] == "v")
    order = [(start + i) % n for i in range(n)]
    blocks = []
    for idx in order:
        k = kinds[idx]
        if blocks and blocks[-1][0] == k:
            blocks[-1][1].append(idx)
        else:
            blocks.append((k, [idx]))
    return blocks, start


def wind_wheel(letters_or_text):
    """Build the wind wheel of a cyclic word over an abstract alphabet.

    The factorization into spoke paths and bars, the pairing involution
    and the two bar permutations are all derived from the word.
    """
    if isinstance(letters_or_text, str):
        letters = parse_abstract_word(letters_or_text)
    elif isinstance(letters_or_text, (Word, CyclicWord)):
        w = letters_or_text
        if isinstance(w, CyclicWord):
            w = w.representative
        letters = w.letters
    else:
        letters = tuple(letters_or_text)
    n = len(letters)
    if len(set(letters)) != n:
        raise WindWheelError("word has a repeated letter")

    # vertices: boundary slots between consecutive letters, merged where a
    # twice-used edge forces its endpoints to coincide
    uf = _UF(n)
    occ = {}
    for i, l in enumerate(letters):
        occ.setdefault(l.arrow, []).append(i)
    # slot(i) = source of letter i (composition order); target of letter i
    # is slot(i-1); slots are indexed by the letter whose source they are
    def src_slot(i):
        return i

    def tgt_slot(i):
        return (i - 1) % n

    for name, idxs in occ.items():
        if len(idxs) == 2:
            i, j = idxs
            li, lj = letters[i], letters[j]
            if li.inv == lj.inv:
                raise WindWheelError(
                    f"edge {name!r} occurs twice with the same direction")
            if lj.inv:
                i, j = j, i  # i is now the direct occurrence
            # arrow endpoints from the direct occurrence i:
            #   s(a) = src_slot(i), t(a) = tgt_slot(i)
            # from the inverse occurrence j: s(a) = tgt_slot(j), t(a) = src_slot(j)
            uf.union(src_slot(i), tgt_slot(j))
            uf.union(tgt_slot(i), src_slot(j))

    classes = sorted({uf.find(i) for i in range(n)})
    vname = {c: f"v{k}" for k, c in enumerate(classes)}

    def vertex_of_slot(i):
        return vname[uf.find(i % n)]

    arrows = []
    for name, idxs in sorted(occ.items()):
        i = idxs[0]
        if letters[i].inv and len(idxs) == 2:
            i = idxs[1]
        if letters[i].inv:
            s, t = vertex_of_slot(tgt_slot(i)), vertex_of_slot(src_slot(i))
        else:
            s, t = vertex_of_slot(src_slot(i)), vertex_of_slot(tgt_slot(i))
        arrows.append((name, s, t))
    quiver = Quiver(tuple(sorted({v for _, s, t in arrows for v in (s, t)} |
                                 {vname[c] for c in classes})),
                    tuple(arrows))

    blocks, start = _blocks_by_multiplicity(letters)
    if blocks[0][0] != "u" or len(blocks) % 2 != 0:
        raise WindWheelError("word does not alternate spokes and bars")
    m = len(blocks) // 2
    if m % 2 != 0:
        raise WindWheelError(f"odd number of bar occurrences ({m})")

    u_idx = [blocks[2 * k][1] for k in range(m)]
    v_idx = [blocks[2 * k + 1][1] for k in range(m)]

    def letters_of(idxs):
        return tuple(letters[i] for i in idxs)

    u_letters = [letters_of(ix) for ix in u_idx]
    v_letters = [letters_of(ix) for ix in v_idx]

    # pairing involution: v_sigma(i) is the inverse of v_i
    sigma_map = {}
    for i, vl in enumerate(v_letters, start=1):
        inv_form = tuple(l.inverse() for l in reversed(vl))
        matches = [j for j, ol in enumerate(v_letters, start=1)
                   if ol == inv_form]
        if len(matches) != 1:
            raise WindWheelError(f"bar occurrence {i} has no unique inverse "
                                 f"partner")
        sigma_map[i] = matches[0]
    sigma = Permutation.from_dict(sigma_map)
    if not sigma.is_involution() or not sigma.is_fixed_point_free():
        raise WindWheelError("bar pairing is not a fixed point free "
                             "involution")

    for i in range(1, m + 1):
        vl = v_letters[i - 1]
        if not (all(l.inv for l in vl) or all(not l.inv for l in vl)):
            raise WindWheelError(f"bar occurrence {i} is not serial")

    # build the relations
    def u_last(i):
        return u_letters[(i - 1) % m][-1]

    def u_first(i):
        return u_letters[(i - 1) % m][0]

    def direct_pair(x, y):
        # two-letter composition x then y of equally directed letters,
        # returned as a traversal-order relation tuple
        if x.inv != y.inv:
            raise WindWheelError("junction letters disagree in direction")
        if x.inv:
            return (x.arrow, y.arrow)
        return (y.arrow, x.arrow)

    rels = set()
    for i in range(1, m + 1):
        rels.add(direct_pair(u_last(i), u_first(sigma_map[i] + 1)))
    for i in range(1, m + 1):
        vl = v_letters[i - 1]
        if all(not l.inv for l in vl):  # direct bar: the long relation
            j = sigma_map[i]
            comp = (u_last(i),) + vl + (u_last(j).inverse(),)
            if any(l.inv for l in comp):
                raise WindWheelError("long relation is not a direct path")
            rels.add(tuple(l.arrow for l in reversed(comp)))

    algebra = MonomialAlgebra(quiver, frozenset(rels))
    verdict = is_special_biserial(algebra)
    if not verdict.ok:
        raise WindWheelError(f"assembled algebra is not special biserial: "
                             f"{verdict.violations}")
    for v_ in algebra.quiver.vertices:
        if vertex_degree(algebra, v_) > 3:
            raise WindWheelError("assembled algebra has a 4-vertex")

    word = validate_word(algebra, letters)
    if not W.is_primitive(algebra, word):
        raise WindWheelError("word is not a primitive cyclic word over the "
                             "assembled algebra")

    factors = []
    for i in range(m):
        factors.append((validate_word(algebra, u_letters[i]),
                        validate_word(algebra, v_letters[i])))

    # WW3 at every junction
    for i in range(1, m + 1):
        ui, vi = factors[i - 1]
        un = factors[i % m][0]
        if not is_attracting(algebra, vi, un):
            raise WindWheelError(f"(v_{i}, u_{i % m + 1}) is not attracting")
        if is_attracting(algebra, ui, vi):
            raise WindWheelError(f"(u_{i}, v_{i}) is attracting")

    bars = tuple(sorted((f[1] for f in factors
                         if all(not l.inv for l in f[1].letters)),
                        key=bar_key))
    lam = _bar_cut_permutation(letters, occ, want_inverse_bar=True)
    rho = _bar_cut_permutation(letters, occ, want_inverse_bar=False)
    pi = lam.commutator(rho)
    return WindWheelData(cyclic_word(algebra, word), tuple(factors), sigma,
                         bars, lam, rho, pi, algebra)


def _bar_cut_permutation(letters, occ, want_inverse_bar):
    """Successor permutation of the bars under one of the two cuttings.

    Cut the cyclic word after every inverse bar (for the first cutting) or
    after every direct bar (for the second); the permutation sends the bar
    closing one block to the bar closing the next.
    """
    n = len(letters)
    twice = {a for a, idxs in occ.items() if len(idxs) == 2}
    marks = []  # (end position, bar key) per chosen bar occurrence
    i = 0
    while i < n:
        l = letters[i]
        if l.arrow in twice:
            j = i
            run = []
            while j < n and letters[j].arrow in twice and \
                    letters[j].inv == l.inv:
                run.append(letters[j])
                j += 1
            if l.inv == want_inverse_bar:
                if l.inv:
                    key = tuple(x.arrow for x in reversed(run))
                else:
                    key = tuple(x.arrow for x in run)
                marks.append((j - 1, key))
            i = j
        else:
            i += 1
    if not marks:
        raise WindWheelError("no bar occurrence of the requested kind")
    succ = {}
    for k, (_, key) in enumerate(marks):
        succ[key] = marks[(k + 1) % len(marks)][1]
    return Permutation.from_dict(succ)


def bar_closure(wwd, bar):
    """The unique extension l1 . bar . l2 with both junctions attracting."""
    alg = wwd.algebra
    if bar_key(bar) not in set(wwd.bar_keys()):
        raise ConstructionError(f"{bar!r} is not a bar of this wind wheel")
    first, last = bar.letters[0], bar.letters[-1]
    l1 = [Letter(a[0], True) for a in alg.quiver.arrows
          if a[2] == letter_target(alg, first) and a[0] != first.arrow]
    l2 = [Letter(a[0], True) for a in alg.quiver.arrows
          if a[1] == letter_source(alg, last) and a[0] != last.arrow]
    if len(l1) != 1 or len(l2) != 1:
        raise ConstructionError("bar closure is not unique")
    closure = validate_word(alg, (l1[0],) + bar.letters + (l2[0],))
    assert is_attracting(alg, Word((l1[0],)), bar)
    assert is_attracting(alg, bar, Word((l2[0],)))
    return closure


def in_image_of_eta(wwd, x):
    """A word fails to lift to the covering cycle algebra exactly when it
    contains the closure of a bar (either way round)."""
    for bar in wwd.bars:
        c = bar_closure(wwd, bar)
        if W.contains_subword(x, c) or W.contains_subword(x, inverse(c)):
            return False
    return True


def z_words(wwd):
    """The t biperiodic two-sided infinite words, one per bar."""
    alg = wwd.algebra
    letters = wwd.word.representative.letters
    # recompute blocks over the canonical representative
    occ = {}
    for i, l in enumerate(letters):
        occ.setdefault(l.arrow, []).append(i)
    twice = {a for a, idxs in occ.items() if len(idxs) == 2}
    n = len(letters)
    out = []
    for bar in wwd.bars:
        key = bar_key(bar)
        # locate the direct occurrence of the bar
        pos = None
        k = len(key)
        for i in range(n):
            window = tuple(letters[(i + d) % n] for d in range(k))
            if all(not l.inv for l in window) and \
                    tuple(l.arrow for l in window) == key:
                pos = i
                break
        if pos is None:
            raise ConstructionError(f"bar {key} not found in the word")
        # locate its inverse occurrence
        inv_form = tuple(Letter(a, True) for a in reversed(key))
        ipos = None
        for i in range(n):
            window = tuple(letters[(i + d) % n] for d in range(k))
            if window == inv_form:
                ipos = i
                break
        v = Word(tuple(letters[(pos + d) % n] for d in range(k)))
        w1 = Word(tuple(letters[(ipos + k + d) % n]
                        for d in range((pos - ipos - k) % n)))
        w2 = Word(tuple(letters[(pos + k + d) % n]
                        for d in range((ipos - pos - k) % n)))
        vi = inverse(v)
        seq = lambda *ws: tuple(l for w in ws for l in w.letters)
        left = Word(seq(inverse(w2), vi, inverse(w1), v))
        middle = Word(seq(inverse(w2), vi, inverse(w1), v, w2, vi))
        right = Word(seq(w1, v, w2, vi))
        z = W.ZWord(left, middle, right)
        W.validate_z_word(alg, z)
        out.append(z)
    return out


# ---------------------------------------------------------- ramification

def commutator_cycle_partition(lam, rho):
    if lam.ground() != rho.ground():
        raise ConstructionError("permutations on different ground sets")
    return lam.commutator(rho).cycle_type()


def ramification_sequence(wwd):
    part = wwd.pi.cycle_type()
    assert part.total() == wwd.t
    return part


def possible_ramifications(t, cap=7, allow_large=False):
    """Cycle partitions of commutators of two t-cycles, with the second
    fixed as (1 2 .. t)."""
    if t < 1:
        raise ConstructionError("t must be >= 1")
    if t > cap and not allow_large:
        raise ConstructionError(f"t={t} above enumeration cap {cap}")
    from itertools import permutations as iperm
    ground = list(range(1, t + 1))
    rho = Permutation.from_cycles([tuple(ground)])
    seen = set()
    if t == 1:
        return {Partition((1,))}
    for rest in iperm(ground[1:]):
        lam = Permutation.from_cycles([(1,) + rest])
        seen.add(lam.commutator(rho).cycle_type())
    return seen


# ------------------------------------------------- quilt Euler characteristic

_SIDES = ("NE", "SE", "SW", "NW")
_SIDE_ENDS = {"NE": ("N", "E"), "SE": ("E", "S"),
              "SW": ("S", "W"), "NW": ("W", "N")}
_CORNER_SIDES = {"N": ("NW", "NE"), "E": ("NE", "SE"),
                 "S": ("SE", "SW"), "W": ("SW", "NW")}


def quilt_euler_characteristic(t, counts=False):
    """Euler characteristic of the glued surface built from 4t pentagonal
    pieces, one per quarter of each translation-quiver leaf.

    Each leaf is a diamond with a central hole; its four corner pieces are
    pentagons carrying one hole edge each.  Diamonds are glued side to
    side in a cyclic staircase pattern; gluing identifies half-sides in
    pairs, corner points four at a time and hole endpoints two at a time.
    Returns faces - edges + vertices (detailed counts with counts=True).
    """
    if t < 1:
        raise ConstructionError("t must be >= 1")
    faces = [(c, K) for c in range(t) for K in ("N", "E", "S", "W")]

    # vertex slots and edge slots, identified with a union-find over keys
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    def R(c, K):
        return ("R", c, K)

    def M(c, d):
        return ("M", c, d)

    def H(c, d):
        return ("H", c, d)

    # side gluing: SE of diamond c meets NW of diamond c+1, SW meets NE
    glue = {}
    for c in range(t):
        c2 = (c + 1) % t
        glue[(c, "SE")] = (c2, "NW")
        glue[(c2, "NW")] = (c, "SE")
        glue[(c, "SW")] = (c2, "NE")
        glue[(c2, "NE")] = (c, "SW")
    # corner matching along glued sides: a side d runs between the two
    # corners in _SIDE_ENDS[d]; gluing reverses the direction of travel
    for c in range(t):
        c2 = (c + 1) % t
        union(R(c, "E"), R(c2, "N"))
        union(R(c, "S"), R(c2, "W"))
        union(R(c, "S"), R(c2, "E"))
        union(R(c, "W"), R(c2, "N"))
        union(M(c, "SE"), M(c2, "NW"))
        union(M(c, "SW"), M(c2, "NE"))
    # hole endpoints: consecutive pentagons around a hole share the cut
    # endpoint sitting on their common side
    for c in range(t):
        for d in _SIDES:
            pass  # H(c, d) is already shared by construction below

    # pentagon inventory per face: vertices and edges
    hole_edges = set()
    cut_edges = set()
    half_edges = {}
    vertex_slots = set()
    for c, K in faces:
        d1, d2 = _CORNER_SIDES[K]
        vertex_slots.update({find(R(c, K)), find(M(c, d1)), find(M(c, d2)),
                             find(H(c, d1)), find(H(c, d2))})
        hole_edges.add(("h", c, K))
        cut_edges.update({("c", c, d1), ("c", c, d2)})
        for d in (d1, d2):
            owner = min((c, d), glue[(c, d)])
            half_edges[("s", owner, K_of(c, d, K))] = True
    e = len(hole_edges) + len(cut_edges) + len(half_edges)
    v = len({find(x) for x in vertex_slots})
    f = len(faces)
    chi = f - e + v
    if counts:
        return chi, f, e, v
    return chi


def K_of(c, d, K):
    """Identity of a half-side: the glued side pair plus which half."""
    return (min((c, d), (glue_side(c, d))), K_norm(c, d, K))
