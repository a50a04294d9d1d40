"""Exact coefficient arithmetic and fraction-free linear algebra.

Coefficients live in the ring of Laurent polynomials in a formal parameter q
with rational coefficients.  Working over this ring (rather than a numeric q)
makes q automatically a non-root of unity, and every downstream computation
(normal forms, minor expansions, graded ideal components) is exact.

Rank and membership computations stay fraction-free: row operations
cross-multiply instead of dividing, and the only divisions performed are the
exact ones of Bareiss elimination.
"""

from __future__ import annotations

import math
from fractions import Fraction


class LaurentScalar:
    """Immutable Laurent polynomial in q, stored as {exponent: coefficient}.

    No zero coefficients are stored; two equal values always have identical
    term maps, so equality and hashing are structural.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        t = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                if not isinstance(e, int):
                    raise TypeError(f"exponent must be int, got {e!r}")
                if c:
                    acc = t.get(e, 0) + c
                    if acc:
                        t[e] = acc
                    else:
                        del t[e]
        self._terms = t
        self._hash = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_int(n) -> "LaurentScalar":
        return LaurentScalar({0: n} if n else {})

    @staticmethod
    def q_power(e: int, coeff=1) -> "LaurentScalar":
        return LaurentScalar({e: coeff})

    # -- structure ----------------------------------------------------

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {0: 1}

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_exp(self) -> int:
        return min(self._terms)

    def max_exp(self) -> int:
        return max(self._terms)

    def coeff(self, e: int):
        return self._terms.get(e, 0)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentScalar.from_int(other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._terms.items())))
        return self._hash

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentScalar.from_int(other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        t = dict(self._terms)
        for e, c in other._terms.items():
            acc = t.get(e, 0) + c
            if acc:
                t[e] = acc
            else:
                del t[e]
        out = LaurentScalar.__new__(LaurentScalar)
        out._terms = t
        out._hash = None
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentScalar.__new__(LaurentScalar)
        out._terms = {e: -c for e, c in self._terms.items()}
        out._hash = None
        return out

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentScalar.from_int(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            out = LaurentScalar.__new__(LaurentScalar)
            out._terms = {e: c * other for e, c in self._terms.items()}
            out._hash = None
            return out
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        t = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                acc = t.get(e, 0) + c1 * c2
                if acc:
                    t[e] = acc
                elif e in t:
                    del t[e]
        out = LaurentScalar.__new__(LaurentScalar)
        out._terms = t
        out._hash = None
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "LaurentScalar":
        """Inverse of a monomial c*q^e; other shapes are not units."""
        if len(self._terms) != 1:
            raise ZeroDivisionError(f"{self} is not invertible in the Laurent ring")
        (e, c), = self._terms.items()
        return LaurentScalar({-e: Fraction(1, 1) / c})

    def subs_q_inverse(self) -> "LaurentScalar":
        """The image under q -> q^-1 (exponent negation)."""
        return LaurentScalar({-e: c for e, c in self._terms.items()})

    # -- exact division (used by Bareiss elimination) -------------------

    def exact_div(self, other: "LaurentScalar") -> "LaurentScalar":
        """Exact quotient self/other; raises if the division is not exact."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        if self.is_zero():
            return ZERO
        if other.is_monomial():
            (e, c), = other._terms.items()
            return LaurentScalar({e1 - e: Fraction(c1) / c for e1, c1 in self._terms.items()})
        sa, sb = self.min_exp(), other.min_exp()
        num = _to_poly(self)
        den = _to_poly(other)
        quo, rem = _poly_divmod(num, den)
        if rem:
            raise ArithmeticError(f"non-exact division: ({self}) / ({other})")
        return LaurentScalar({e + sa - sb: c for e, c in enumerate(quo) if c})

    # -- text ------------------------------------------------------------

    def text(self) -> str:
        """Canonical text: terms by ascending exponent, e.g. '-q^-1 + q'."""
        if not self._terms:
            return "0"
        pieces = []
        for e in sorted(self._terms):
            c = self._terms[e]
            neg = c < 0
            a = -c if neg else c
            if e == 0:
                body = str(a)
            else:
                var = "q" if e == 1 else f"q^{e}"
                body = var if a == 1 else f"{a} {var}"
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def __repr__(self):
        return f"LaurentScalar({self.text()})"

    __str__ = text


ZERO = LaurentScalar()
ONE = LaurentScalar({0: 1})
Q = LaurentScalar({1: 1})
QINV = LaurentScalar({-1: 1})


def _to_poly(x: LaurentScalar):
    """Dense coefficient list of x shifted so the lowest exponent is 0."""
    lo = x.min_exp()
    out = [0] * (x.max_exp() - lo + 1)
    for e, c in x.items():
        out[e - lo] = Fraction(c)
    return out


def _poly_divmod(num, den):
    num = list(num)
    dn = len(den) - 1
    lead = den[dn]
    quo = [0] * max(len(num) - dn, 0)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if not c:
            continue
        f = Fraction(c) / lead
        quo[i - dn] = f
        for k in range(dn + 1):
            num[i - dn + k] -= f * den[k]
    while num and not num[-1]:
        num.pop()
    return quo, num


def _poly_gcd(a, b):
    a, b = list(a), list(b)
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    return a


def laurent_gcd(x: LaurentScalar, y: LaurentScalar) -> LaurentScalar:
    """A gcd in the Laurent ring, normalized to be primitive with lowest
    exponent 0 and positive low coefficient."""
    if x.is_zero():
        return _normalize_unit(y)
    if y.is_zero():
        return _normalize_unit(x)
    g = _poly_gcd(_to_poly(x), _to_poly(y))
    return _normalize_unit(LaurentScalar({e: c for e, c in enumerate(g) if c}))


def _normalize_unit(x: LaurentScalar) -> LaurentScalar:
    """Scale x by a unit (rational times q-power) to a canonical associate."""
    if x.is_zero():
        return ZERO
    lo = x.min_exp()
    c0 = Fraction(x.coeff(lo))
    num_gcd = 0
    den_lcm = 1
    for _, c in x.items():
        f = Fraction(c)
        num_gcd = math.gcd(num_gcd, abs(f.numerator))
        den_lcm = den_lcm * f.denominator // math.gcd(den_lcm, f.denominator)
    scale = Fraction(den_lcm, num_gcd)
    if c0 < 0:
        scale = -scale
    return LaurentScalar({e - lo: _intify(Fraction(c) * scale) for e, c in x.items()})


def _intify(f: Fraction):
    return f.numerator if f.denominator == 1 else f


# ---------------------------------------------------------------------------
# vectors and matrices over the Laurent ring
# ---------------------------------------------------------------------------


class ScalarMatrix:
    """Dense matrix of LaurentScalar entries."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows, ncols=None):
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            for r in self.rows:
                if len(r) != self.ncols:
                    raise ValueError("ragged matrix")
        else:
            if ncols is None:
                raise ValueError("empty matrix needs an explicit column count")
            self.ncols = ncols

    def with_row(self, v) -> "ScalarMatrix":
        if len(v) != self.ncols:
            raise ValueError("row length mismatch")
        return ScalarMatrix(self.rows + [list(v)], self.ncols)


def exact_rank(m: ScalarMatrix) -> int:
    """Rank over the fraction field, by fraction-free Bareiss elimination."""
    a = [[x for x in row] for row in m.rows]
    nr, nc = m.nrows, m.ncols
    prev = ONE
    r = 0
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]).exact_div(prev)
            a[i][c] = ZERO
        prev = a[r][c]
        r += 1
        if r == nr:
            break
    return r


def in_row_space(v, m: ScalarMatrix) -> bool:
    """True iff v is a fraction-field combination of the rows of m."""
    if len(v) != m.ncols:
        raise ValueError("vector length mismatch")
    space = RowSpace(m.ncols)
    for row in m.rows:
        space.insert(row)
    return space.contains(v)


def _strip_content(v):
    """Divide a vector by its rational content and common q-power (a unit)."""
    num_gcd = 0
    den_lcm = 1
    lo = None
    for x in v:
        for e, c in x.items():
            f = Fraction(c)
            num_gcd = math.gcd(num_gcd, abs(f.numerator))
            den_lcm = den_lcm * f.denominator // math.gcd(den_lcm, f.denominator)
            if lo is None or e < lo:
                lo = e
    if num_gcd == 0:
        return v
    scale = Fraction(den_lcm, num_gcd)
    if scale == 1 and lo == 0:
        return v
    return [
        LaurentScalar({e - lo: _intify(Fraction(c) * scale) for e, c in x.items()})
        for x in v
    ]


class RowSpace:
    """Incremental echelonized row space over the Laurent fraction field.

    Rows are kept in the ring by cross-multiplied reduction; pivot columns are
    tracked so reduce/contains/insert are all linear scans over pivots.
    """

    __slots__ = ("width", "pivots")

    def __init__(self, width: int):
        self.width = width
        self.pivots = {}  # pivot column -> row (list of LaurentScalar)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def clone(self) -> "RowSpace":
        out = RowSpace(self.width)
        out.pivots = {c: list(r) for c, r in self.pivots.items()}
        return out

    def reduce(self, v):
        """Residue of v modulo the stored rows (up to unit scaling)."""
        v = list(v)
        for c in sorted(self.pivots):
            x = v[c]
            if not x:
                continue
            p = self.pivots[c]
            a = p[c]
            v = [a * v[j] - x * p[j] for j in range(self.width)]
        return _strip_content(v)

    def contains(self, v) -> bool:
        return all(x.is_zero() for x in self.reduce(v))

    def insert(self, v) -> bool:
        """Add v to the span; True iff the rank grew."""
        r = self.reduce(v)
        for c in range(self.width):
            if r[c]:
                self.pivots[c] = r
                return True
        return False

    def insert_all(self, vectors) -> int:
        grew = 0
        for v in vectors:
            grew += self.insert(v)
        return grew

    def canonical_rows(self):
        """Fully back-reduced, content-normalized rows: a canonical basis of
        the subspace, usable as a fingerprint."""
        cols = sorted(self.pivots)
        rows = {c: list(self.pivots[c]) for c in cols}
        for i, c in enumerate(cols):
            for c2 in cols[i + 1:]:
                r = rows[c]
                x = r[c2]
                if not x:
                    continue
                p = rows[c2]
                a = p[c2]
                rows[c] = [a * r[j] - x * p[j] for j in range(self.width)]
        out = []
        for c in cols:
            r = rows[c]
            g = ZERO
            for x in r:
                g = laurent_gcd(g, x)
                if g.is_one():
                    break
            if not g.is_zero() and not g.is_one():
                r = [x.exact_div(g) for x in r]
            r = _strip_content(r)
            lead = r[c]
            if Fraction(lead.coeff(lead.min_exp())) < 0:
                r = [-x for x in r]
            out.append(tuple(r))
        return tuple(out)


def scalar_arith(a: LaurentScalar, b: LaurentScalar, op: str) -> LaurentScalar:
    """Dispatch basic ring operations by name."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    raise ValueError(f"unknown op {op!r}")
