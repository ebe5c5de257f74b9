"""Letters and walk words over a quiver with monomial relations.

A word is a tuple of letters in composition order: for consecutive
letters, ``s(l_i) = t(l_{i+1})``, so the underlying walk traverses the
last letter first.  A letter is an arrow or a formal inverse; inverse
letters print with a ``~`` prefix.  Words of length zero carry a base
vertex instead (literal ``@v``).

Validity means: endpoints match, no immediate backtracking, and neither
the word nor its inverse contains a relation as a contiguous subword.
"""

from dataclasses import dataclass

from .quiver import AlgebraError


class WordError(ValueError):
    def __init__(self, kind, index, message):
        self.kind = kind          # "endpoint" | "W1" | "W2" | other
        self.index = index
        super().__init__(message)


@dataclass(frozen=True, order=True)
class Letter:
    arrow: str
    inv: bool = False

    def inverse(self):
        return Letter(self.arrow, not self.inv)

    def __repr__(self):
        return ("~" if self.inv else "") + self.arrow


def letter_source(alg, l):
    return alg.target(l.arrow) if l.inv else alg.source(l.arrow)


def letter_target(alg, l):
    return alg.source(l.arrow) if l.inv else alg.target(l.arrow)


@dataclass(frozen=True)
class Word:
    letters: tuple
    base: object = None  # vertex, only meaningful when letters is empty

    def __len__(self):
        return len(self.letters)

    def is_trivial(self):
        return not self.letters

    def __repr__(self):
        return format_word(self)


def format_word(w):
    if w.is_trivial():
        return f"@{w.base}"
    return " ".join(repr(l) for l in w.letters)


def parse_word_literal(alg, text):
    """Parse a whitespace-separated word literal and validate it."""
    toks = text.split()
    if not toks:
        raise WordError("syntax", 0, "empty word literal")
    if len(toks) == 1 and toks[0].startswith("@"):
        v = toks[0][1:]
        if v not in alg.quiver.vertices:
            raise WordError("syntax", 0, f"unknown vertex {v!r}")
        return Word((), v)
    letters = []
    for t in toks:
        inv = t.startswith("~")
        name = t[1:] if inv else t
        if name not in alg.quiver._by_name():
            raise WordError("syntax", len(letters), f"unknown arrow {name!r}")
        letters.append(Letter(name, inv))
    return validate_word(alg, letters)


def left_vertex(alg, w):
    return w.base if w.is_trivial() else letter_target(alg, w.letters[0])


def right_vertex(alg, w):
    return w.base if w.is_trivial() else letter_source(alg, w.letters[-1])


def _relation_forms(alg):
    """Each relation as (direct letters, inverse letters) in word order."""
    forms = getattr(alg, "_rel_forms", None)
    if forms is None:
        forms = []
        for r in alg.relations:
            direct = tuple(Letter(a) for a in reversed(r))
            inverse = tuple(Letter(a, True) for a in r)
            forms.append((direct, inverse))
        object.__setattr__(alg, "_rel_forms", forms)
    return forms


def _w2_violation(alg, letters):
    """Index of the first relation window, or None."""
    n = len(letters)
    hit = None
    for direct, inverse in _relation_forms(alg):
        for form in (direct, inverse):
            k = len(form)
            for i in range(n - k + 1):
                if tuple(letters[i:i + k]) == form:
                    if hit is None or i < hit:
                        hit = i
    return hit


def _w2_ok_suffix(alg, letters):
    """W2 check restricted to windows ending at the last letter."""
    n = len(letters)
    for direct, inverse in _relation_forms(alg):
        for form in (direct, inverse):
            k = len(form)
            if k <= n and tuple(letters[n - k:]) == form:
                return False
    return True


def validate_word(alg, letters, base=None):
    """Build a Word, raising WordError at the first violated condition."""
    letters = tuple(letters)
    if not letters:
        if base is None or base not in alg.quiver.vertices:
            raise WordError("syntax", 0, f"trivial word needs a vertex, got {base!r}")
        return Word((), base)
    for l in letters:
        if l.arrow not in alg.quiver._by_name():
            raise WordError("syntax", 0, f"unknown arrow {l.arrow!r}")
    for i in range(len(letters) - 1):
        if letter_source(alg, letters[i]) != letter_target(alg, letters[i + 1]):
            raise WordError("endpoint", i,
                            f"letters {letters[i]!r},{letters[i+1]!r} do not meet")
        if letters[i].inverse() == letters[i + 1]:
            raise WordError("W1", i, f"immediate backtrack at {letters[i]!r}")
    i = _w2_violation(alg, letters)
    if i is not None:
        raise WordError("W2", i, "relation occurs as a subword")
    return Word(letters)


def is_valid_word(alg, letters, base=None):
    try:
        validate_word(alg, letters, base)
        return True
    except WordError:
        return False


def inverse(w):
    if w.is_trivial():
        return w
    return Word(tuple(l.inverse() for l in reversed(w.letters)))


def compose(alg, v, w):
    """Concatenate v and w (v's walk continues w's); validates the result."""
    if v.is_trivial():
        if not w.is_trivial() and left_vertex(alg, w) != v.base:
            raise WordError("endpoint", 0, "trivial word base mismatch")
        return w if not w.is_trivial() else v
    if w.is_trivial():
        if right_vertex(alg, v) != w.base:
            raise WordError("endpoint", 0, "trivial word base mismatch")
        return v
    return validate_word(alg, v.letters + w.letters)


def is_attracting(alg, v, w):
    """The junction letters point the same way, so vw is again a word."""
    if v.is_trivial() or w.is_trivial():
        raise WordError("syntax", 0, "attracting needs nonempty words")
    last, first = v.letters[-1], w.letters[0]
    if letter_source(alg, last) != letter_target(alg, first):
        return False
    if last == first.inverse():
        return False
    if last.inv != (not first.inv):
        return False
    # the composition is then automatically a word: the junction letters
    # have opposite directions, so no relation window can cross it
    assert is_valid_word(alg, v.letters + w.letters)
    return True


def is_serial(w):
    return all(l.inv for l in w.letters) or all(not l.inv for l in w.letters)


def is_direct_word(w):
    return bool(w.letters) and all(not l.inv for l in w.letters)


def is_cyclic(alg, w):
    """Mixed directions and the square is still a word."""
    if w.is_trivial() or is_serial(w):
        return False
    return is_valid_word(alg, w.letters + w.letters)


def _primitive_root(letters):
    n = len(letters)
    for p in range(1, n + 1):
        if n % p == 0 and letters == letters[:p] * (n // p):
            return letters[:p]
    return letters


def is_primitive(alg, w):
    if not is_cyclic(alg, w):
        return False
    return len(_primitive_root(w.letters)) == len(w.letters)


def rotations(w):
    ls = w.letters
    return [Word(ls[i:] + ls[:i]) for i in range(len(ls))]


def canonical_cyclic(w):
    """Least letter sequence over all rotations of w and of its inverse."""
    cands = [r.letters for r in rotations(w)] + \
            [r.letters for r in rotations(inverse(w))]
    return Word(min(cands))


@dataclass(frozen=True)
class CyclicWord:
    """A cyclic word stored by its canonical representative."""
    representative: Word

    def __len__(self):
        return len(self.representative)

    def __repr__(self):
        return format_word(self.representative)


def cyclic_word(alg, w):
    if not is_cyclic(alg, w):
        raise WordError("not-cyclic", 0, f"{format_word(w)} is not cyclic")
    return CyclicWord(canonical_cyclic(w))


def canonical_string(w):
    """Node identity for string modules: min of w and its inverse."""
    if w.is_trivial():
        return w
    inv = inverse(w)
    return w if w.letters <= inv.letters else inv


def all_letters(alg):
    return [Letter(a[0], i) for a in alg.quiver.arrows for i in (False, True)]


def extensions_right(alg, letters):
    """Letters x such that ``letters + (x,)`` stays a valid word."""
    out = []
    if not letters:
        raise ValueError("use explicit vertex iteration for trivial words")
    v = letter_source(alg, letters[-1])
    last = letters[-1]
    for x in all_letters(alg):
        if letter_target(alg, x) != v:
            continue
        if last.inverse() == x:
            continue
        cand = letters + (x,)
        if _w2_ok_suffix(alg, cand):
            out.append(x)
    return out


def enumerate_strings(alg, max_len):
    """All words of length <= max_len, one representative per {w, w^-1}."""
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    seen = set()
    out = []
    for v in alg.quiver.vertices:
        w = Word((), v)
        out.append(w)
    if max_len == 0:
        return out
    stack = [(l,) for l in all_letters(alg) if _w2_ok_suffix(alg, (l,))]
    while stack:
        letters = stack.pop()
        w = Word(letters)
        c = canonical_string(w).letters
        if c not in seen:
            seen.add(c)
            out.append(Word(c))
        if len(letters) < max_len:
            for x in extensions_right(alg, letters):
                stack.append(letters + (x,))
    out.sort(key=lambda w: (len(w), w.letters if w.letters else (),
                            str(w.base)))
    return out


def _closes_up(alg, letters):
    """Can the word be read cyclically: w^2 is a word."""
    first, last = letters[0], letters[-1]
    if letter_source(alg, last) != letter_target(alg, first):
        return False
    if last.inverse() == first:
        return False
    n = len(letters)
    doubled = letters + letters
    for direct, inv in _relation_forms(alg):
        for form in (direct, inv):
            k = len(form)
            for i in range(max(0, n - k + 1), n):
                if doubled[i:i + k] == form:
                    return False
    return True


def band_cap(alg):
    """Default search bound: twice the number of arrows suffices for
    existence of a band."""
    return 2 * len(alg.quiver.arrows)


def _band_dfs(alg, max_len, stop_at_first):
    found = {}
    letters_all = sorted(all_letters(alg))
    for start in letters_all:
        if start.inv:
            continue  # canonical representatives start with a direct letter
        stack = [(start,)]
        while stack:
            letters = stack.pop()
            if len(letters) >= 2 and _closes_up(alg, letters):
                w = Word(letters)
                if not is_serial(w) and is_primitive(alg, w):
                    c = canonical_cyclic(w)
                    if c.letters not in found:
                        found[c.letters] = CyclicWord(c)
                        if stop_at_first:
                            return list(found.values())
            if len(letters) < max_len:
                for x in extensions_right(alg, letters):
                    if x.arrow < start.arrow:
                        continue  # canonical form starts at the least arrow
                    stack.append(letters + (x,))
    return list(found.values())


def enumerate_bands(alg, max_len=None, allow_large=False):
    """All primitive cyclic words of length <= max_len up to rotation and
    inversion, sorted by canonical representative.

    The default cap is twice the arrow count, which already decides band
    existence; larger scans must be requested explicitly.
    """
    cap = band_cap(alg)
    if max_len is None:
        max_len = cap
    if max_len < 2:
        raise ValueError("bands have length >= 2")
    if max_len > cap and not allow_large:
        raise ValueError(
            f"max_len {max_len} exceeds the decision bound {cap}; "
            "pass allow_large=True to scan further")
    bands = _band_dfs(alg, max_len, stop_at_first=False)
    bands.sort(key=lambda b: (len(b), b.representative.letters))
    return bands


def band_exists(alg, max_len=None):
    cap = band_cap(alg)
    if max_len is None:
        max_len = cap
    return bool(_band_dfs(alg, max_len, stop_at_first=True))


@dataclass(frozen=True)
class ZWord:
    """Biperiodic two-sided infinite word: ...LLL middle RRR... .

    Periods are stored as the concrete rotations that make every junction
    a valid word; the rotation-invariant classes are available through
    ``left_class``/``right_class``.
    """
    left_period: Word
    middle: Word
    right_period: Word

    def left_class(self):
        return CyclicWord(canonical_cyclic(self.left_period))

    def right_class(self):
        return CyclicWord(canonical_cyclic(self.right_period))

    def window(self, alg, periods=1):
        """Finite window: ``periods`` copies of each period around the
        middle, validated."""
        letters = (self.left_period.letters * periods + self.middle.letters
                   + self.right_period.letters * periods)
        return validate_word(alg, letters)

    def __repr__(self):
        return (f"~({format_word(self.left_period)}) "
                f"| {format_word(self.middle)} | "
                f"({format_word(self.right_period)})~")


def validate_z_word(alg, z):
    """Every finite window of the biperiodic word must be a word."""
    validate_word(alg, z.left_period.letters * 2)
    validate_word(alg, z.right_period.letters * 2)
    z.window(alg, periods=2)
    return z


def contains_subword(w, u):
    """Contiguous containment of u (or nothing if u trivial) in w."""
    if u.is_trivial():
        return True
    n, k = len(w.letters), len(u.letters)
    return any(w.letters[i:i + k] == u.letters for i in range(n - k + 1))
