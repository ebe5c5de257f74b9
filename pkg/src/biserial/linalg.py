"""Exact linear algebra over the rationals or a prime field.

Matrices are lists of lists of field elements.  Everything here is plain
Gaussian elimination; the sizes that show up (module dimensions of small
string and band modules) never exceed a few dozen.
"""

from fractions import Fraction


class Rationals:
    name = "rational"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def of(self, n):
        return Fraction(n)

    def parse(self, s):
        return Fraction(s)

    def show(self, x):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


class PrimeField:
    """Z/p viewed as a field; elements are ints in range(p)."""

    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"fp:{p}"

    def zero(self):
        return _Fp(0, self.p)

    def one(self):
        return _Fp(1, self.p)

    def of(self, n):
        return _Fp(n % self.p, self.p)

    def parse(self, s):
        if "/" in s:
            a, b = s.split("/")
            return self.of(int(a)) / self.of(int(b))
        return self.of(int(s))

    def show(self, x):
        return str(x.v)


class _Fp:
    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def __add__(self, o):
        return _Fp(self.v + o.v, self.p)

    def __sub__(self, o):
        return _Fp(self.v - o.v, self.p)

    def __neg__(self):
        return _Fp(-self.v, self.p)

    def __mul__(self, o):
        return _Fp(self.v * o.v, self.p)

    def __truediv__(self, o):
        if o.v == 0:
            raise ZeroDivisionError
        return _Fp(self.v * pow(o.v, self.p - 2, self.p), self.p)

    def __eq__(self, o):
        return isinstance(o, _Fp) and self.v == o.v and self.p == o.p

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} (mod {self.p})"


QQ = Rationals()


def field_from_spec(spec):
    """Parse a field spec string: "rational" or "fp:<p>"."""
    if spec is None or spec == "rational":
        return QQ
    if spec.startswith("fp:"):
        return PrimeField(int(spec[3:]))
    raise ValueError(f"unknown field spec {spec!r}")


def zeros(field, rows, cols):
    z = field.zero()
    return [[z for _ in range(cols)] for _ in range(rows)]


def identity(field, n):
    m = zeros(field, n, n)
    for i in range(n):
        m[i][i] = field.one()
    return m


def mat_mul(field, a, b):
    if not a or not b:
        return zeros(field, len(a), len(b[0]) if b else 0)
    n, k, m = len(a), len(b), len(b[0])
    z = field.zero()
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(m):
            acc = z
            for t in range(k):
                if ai[t]:
                    acc = acc + ai[t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[c * x for x in row] for row in a]


def transpose(a):
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def is_zero_matrix(a):
    return all(not x for row in a for x in row)


def copy_matrix(a):
    return [row[:] for row in a]


def rref(field, mat):
    """Reduced row echelon form; returns (rref matrix, pivot column list)."""
    m = copy_matrix(mat)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(field, mat):
    if not mat or not mat[0]:
        return 0
    return len(rref(field, mat)[1])


def nullspace(field, mat, cols=None):
    """Basis of the right kernel, as a list of column vectors (lists)."""
    if cols is None:
        cols = len(mat[0]) if mat else 0
    if not mat:
        return [[field.one() if i == j else field.zero() for i in range(cols)]
                for j in range(cols)]
    red, pivots = rref(field, mat)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero()] * cols
        v[fc] = field.one()
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(field, a, b):
    """One solution x of a·x = b, or None.  b is a flat list."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [a[i][:] + [b[i]] for i in range(rows)]
    red, pivots = rref(field, aug)
    if cols in pivots:
        return None
    x = [field.zero()] * cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][cols]
    return x


def column_space_basis(field, mat):
    """Indices of a maximal independent subset of columns."""
    if not mat or not mat[0]:
        return []
    _, pivots = rref(field, mat)
    return pivots


def invert(field, mat):
    """Inverse matrix, or None if singular."""
    n = len(mat)
    if n == 0:
        return []
    aug = [mat[i][:] + identity(field, n)[i] for i in range(n)]
    red, pivots = rref(field, aug)
    if pivots != list(range(n)):
        return None
    return [red[i][n:] for i in range(n)]


def det(field, mat):
    n = len(mat)
    if n == 0:
        return field.one()
    m = copy_matrix(mat)
    sign = field.one()
    acc = field.one()
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c]), None)
        if pr is None:
            return field.zero()
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            sign = -sign
        pv = m[c][c]
        acc = acc * pv
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / pv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return acc * sign


def trace(field, mat):
    acc = field.zero()
    for i in range(len(mat)):
        acc = acc + mat[i][i]
    return acc
