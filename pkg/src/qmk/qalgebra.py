"""The quantized coordinate ring of m x n matrices as a rewriting system.

Elements are kept in the PBW basis of lexicographically ordered monomials in
the generators X[i,j].  Products are computed by straightening: the leftmost
adjacent out-of-order generator pair is rewritten by the defining relation
that applies to it, which either swaps the pair with a power of q or swaps it
and emits a correction term of strictly smaller inversion count, so the
process terminates.

The same engine serves the q^-1-twisted algebra (used by the reversal
isomorphism): each instance carries ``qexp`` in {+1, -1} and its relations
use q**qexp in place of q.
"""

from __future__ import annotations

from .scalars import LaurentScalar, ONE, ZERO

Gen = tuple  # (i, j), 1-based
Monomial = tuple  # (((i, j), exp), ...) with strictly increasing generators


class NotBihomogeneousError(ValueError):
    """Raised when a bidegree is requested of a non-bihomogeneous element."""


class DimensionMismatchError(ValueError):
    """Raised when elements of different algebras are combined."""


_instances = {}


def algebra(nrows: int, ncols: int | None = None, qexp: int = 1) -> "QuantumMatrixAlgebra":
    """Canonical algebra instance for the given shape (caches rewrites)."""
    if ncols is None:
        ncols = nrows
    key = (nrows, ncols, qexp)
    if key not in _instances:
        _instances[key] = QuantumMatrixAlgebra(nrows, ncols, qexp)
    return _instances[key]


class QuantumMatrixAlgebra:
    def __init__(self, nrows: int, ncols: int, qexp: int = 1):
        if nrows < 1 or ncols < 1:
            raise ValueError("matrix dimensions must be positive")
        if qexp not in (1, -1):
            raise ValueError("qexp must be +1 or -1")
        self.nrows = nrows
        self.ncols = ncols
        self.qexp = qexp
        self._nf_cache = {}
        self._minor_cache = {}
        self._delta_cache = {}

    @property
    def key(self):
        return (self.nrows, self.ncols, self.qexp)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __repr__(self):
        q = "q" if self.qexp == 1 else "q^-1"
        return f"O_{q}(M_{{{self.nrows},{self.ncols}}})"

    def q(self, k: int = 1) -> LaurentScalar:
        """q**(k*qexp): the deformation parameter of this instance."""
        return LaurentScalar({k * self.qexp: 1})

    def check_gen(self, g: Gen):
        i, j = g
        if not (1 <= i <= self.nrows and 1 <= j <= self.ncols):
            raise ValueError(f"generator index {g} out of range for {self!r}")

    def all_gens(self):
        return [(i, j) for i in range(1, self.nrows + 1) for j in range(1, self.ncols + 1)]

    # -- element constructors -----------------------------------------

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, {(): ONE})

    def scalar(self, c) -> "AlgebraElement":
        if isinstance(c, int):
            c = LaurentScalar.from_int(c)
        return AlgebraElement(self, {(): c} if c else {})

    def gen(self, i: int, j: int) -> "AlgebraElement":
        self.check_gen((i, j))
        return AlgebraElement(self, {(((i, j), 1),): ONE})

    def element(self, terms) -> "AlgebraElement":
        acc = {}
        for mono, c in (terms.items() if isinstance(terms, dict) else terms):
            if not c:
                continue
            _validate_monomial(self, mono)
            acc[mono] = acc.get(mono, ZERO) + c
        return AlgebraElement(self, {m: c for m, c in acc.items() if c})

    # -- the rewriting engine -----------------------------------------

    def normal_form_word(self, word) -> dict:
        """PBW expansion {monomial: coefficient} of a product of generators."""
        word = tuple(word)
        for g in word:
            self.check_gen(g)
        return self._nf(word)

    def _nf(self, word) -> dict:
        cached = self._nf_cache.get(word)
        if cached is not None:
            return cached
        k = -1
        for idx in range(len(word) - 1):
            if word[idx] > word[idx + 1]:
                k = idx
                break
        if k < 0:
            out = {_collapse(word): ONE}
            self._nf_cache[word] = out
            return out
        a, b = word[k], word[k + 1]
        head, tail = word[:k], word[k + 2:]
        out = {}
        for coeff, mid in self._swap(a, b):
            for mono, c in self._nf(head + mid + tail).items():
                acc = out.get(mono, ZERO) + coeff * c
                if acc:
                    out[mono] = acc
                elif mono in out:
                    del out[mono]
        self._nf_cache[word] = out
        return out

    def _swap(self, a: Gen, b: Gen):
        """Rewrites the out-of-order product X_a * X_b (a > b lex)."""
        (i2, j2), (i1, j1) = a, b
        if i2 == i1 or j2 == j1:
            return ((self.q(-1), (b, a)),)
        if j2 < j1:
            return ((ONE, (b, a)),)
        # i2 > i1, j2 > j1: swap plus correction X[i1,j2] X[i2,j1]
        qq = self.q(1) - self.q(-1)
        return ((ONE, (b, a)), (-qq, ((i1, j2), (i2, j1))))

    def multiply_monomials(self, m1: Monomial, m2: Monomial) -> dict:
        return self._nf(expand_word(m1) + expand_word(m2))

    def monomial_times_gen(self, m: Monomial, g: Gen) -> dict:
        return self._nf(expand_word(m) + (g,))

    def gen_times_monomial(self, g: Gen, m: Monomial) -> dict:
        return self._nf((g,) + expand_word(m))


def _collapse(word) -> Monomial:
    out = []
    for g in word:
        if out and out[-1][0] == g:
            out[-1] = (g, out[-1][1] + 1)
        else:
            out.append((g, 1))
    return tuple(out)


def expand_word(mono: Monomial):
    out = []
    for g, e in mono:
        out.extend([g] * e)
    return tuple(out)


def _validate_monomial(alg, mono):
    prev = None
    for g, e in mono:
        alg.check_gen(g)
        if e <= 0:
            raise ValueError(f"nonpositive exponent in monomial {mono}")
        if prev is not None and g <= prev:
            raise ValueError(f"monomial {mono} not in PBW order")
        prev = g


class AlgebraElement:
    """Finitely supported LaurentScalar combination of PBW monomials."""

    __slots__ = ("algebra", "terms")

    def __init__(self, alg: QuantumMatrixAlgebra, terms: dict):
        self.algebra = alg
        self.terms = terms

    # -- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.algebra.scalar(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra.key == other.algebra.key and self.terms == other.terms

    def __hash__(self):
        return hash((self.algebra.key, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    # -- arithmetic ------------------------------------------------------

    def _check_same(self, other):
        if self.algebra.key != other.algebra.key:
            raise DimensionMismatchError(
                f"cannot combine elements of {self.algebra!r} and {other.algebra!r}")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.algebra.scalar(other)
        self._check_same(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            acc = t.get(m, ZERO) + c
            if acc:
                t[m] = acc
            elif m in t:
                del t[m]
        return AlgebraElement(self.algebra, t)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.algebra.scalar(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, LaurentScalar)):
            return self.scale(other)
        self._check_same(other)
        alg = self.algebra
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c12 = c1 * c2
                for m, c in alg.multiply_monomials(m1, m2).items():
                    acc = out.get(m, ZERO) + c12 * c
                    if acc:
                        out[m] = acc
                    elif m in out:
                        del out[m]
        return AlgebraElement(alg, out)

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentScalar)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "AlgebraElement":
        if isinstance(c, int):
            c = LaurentScalar.from_int(c)
        if c.is_zero():
            return self.algebra.zero()
        return AlgebraElement(self.algebra, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined in the algebra")
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    # -- grading ----------------------------------------------------------

    def monomial_bidegree(self, mono: Monomial):
        r = [0] * self.algebra.nrows
        c = [0] * self.algebra.ncols
        for (i, j), e in mono:
            r[i - 1] += e
            c[j - 1] += e
        return (tuple(r), tuple(c))

    def bidegree(self):
        """The common bidegree (row weights, column weights) of all terms."""
        if not self.terms:
            raise NotBihomogeneousError("the zero element has no bidegree")
        degs = {self.monomial_bidegree(m) for m in self.terms}
        if len(degs) > 1:
            raise NotBihomogeneousError(f"element is not bihomogeneous: {sorted(degs)}")
        return degs.pop()

    def is_bihomogeneous(self) -> bool:
        if not self.terms:
            return True
        return len({self.monomial_bidegree(m) for m in self.terms}) == 1

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e for _, e in m) for m in self.terms)

    # -- text --------------------------------------------------------------

    def text(self) -> str:
        """Canonical printed form, bit-stable across runs."""
        if not self.terms:
            return "0"
        keyed = sorted(self.terms.items(), key=lambda t: expand_word(t[0]))
        pieces = []
        for mono, c in keyed:
            body = monomial_text(mono)
            neg = False
            if c.is_monomial():
                (e, cv), = c.items()
                if cv < 0:
                    neg = True
                    c = -c
                if c.is_one():
                    coeff = ""
                else:
                    coeff = c.text()
            else:
                coeff = f"({c.text()})"
            if coeff and body:
                s = f"{coeff} {body}"
            else:
                s = coeff or body
            if not pieces:
                pieces.append(("-" + s) if neg else s)
            else:
                pieces.append((" - " if neg else " + ") + s)
        return "".join(pieces)

    def __repr__(self):
        return f"<{self.text()}>"


def monomial_text(mono: Monomial) -> str:
    if not mono:
        return "1"
    return " ".join(
        f"X[{i},{j}]" + (f"^{e}" if e > 1 else "") for (i, j), e in mono)


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------


def normal_form(alg: QuantumMatrixAlgebra, word) -> AlgebraElement:
    """Product of a generator word, expressed in the PBW basis."""
    return AlgebraElement(alg, dict(alg.normal_form_word(word)))


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a * b


def bidegree_of(x: AlgebraElement):
    return x.bidegree()


def is_bihomogeneous_family(gens) -> bool:
    return all(g.is_bihomogeneous() for g in gens)


def _map_words(x: AlgebraElement, target: QuantumMatrixAlgebra, word_map, coeff_map=None):
    out = target.zero()
    for mono, c in x.terms.items():
        word = word_map(expand_word(mono))
        if coeff_map is not None:
            c = coeff_map(c)
        out = out + AlgebraElement(target, dict(target.normal_form_word(word))).scale(c)
    return out


def transpose(x: AlgebraElement) -> AlgebraElement:
    """The automorphism X[i,j] -> X[j,i] (square algebras only)."""
    alg = x.algebra
    if not alg.is_square:
        raise ValueError("transpose requires a square matrix algebra")
    return _map_words(x, alg, lambda w: tuple((j, i) for (i, j) in w))


def rho_antimap(x: AlgebraElement) -> AlgebraElement:
    """The anti-automorphism X[i,j] -> X[n+1-j, n+1-i]."""
    alg = x.algebra
    if not alg.is_square:
        raise ValueError("rho requires a square matrix algebra")
    n = alg.nrows
    return _map_words(
        x, alg, lambda w: tuple((n + 1 - j, n + 1 - i) for (i, j) in reversed(w)))


def q_inverse_iso(x: AlgebraElement) -> AlgebraElement:
    """Isomorphism onto the q^-1-twisted algebra: X[i,j] -> X'[n+1-i, n+1-j].

    The map is linear over the coefficient ring; the twist lives entirely in
    the target's relations, which use q^-1 wherever these use q.
    """
    alg = x.algebra
    if not alg.is_square:
        raise ValueError("the q-inverse isomorphism requires a square algebra")
    n = alg.nrows
    target = algebra(n, n, -alg.qexp)
    return _map_words(
        x, target,
        lambda w: tuple((n + 1 - i, n + 1 - j) for (i, j) in w))


def condition_star(cells, nrows: int, ncols: int) -> bool:
    """The staircase closure condition on a set of grid positions: for
    i < s, j < t, if (i,j) or (s,t) is in the set then so is (i,t) or (s,j).

    When it holds, the quotient by the corresponding generators has a PBW
    basis on the surviving generators, so killing those monomials is an
    algebra retraction.
    """
    cs = set(cells)
    for (i, j) in list(cs):
        for s in range(i + 1, nrows + 1):
            for t in range(j + 1, ncols + 1):
                if (i, t) not in cs and (s, j) not in cs:
                    return False
    for (s, t) in list(cs):
        for i in range(1, s):
            for j in range(1, t):
                if (i, t) not in cs and (s, j) not in cs:
                    return False
    return True


def retraction(kill, x: AlgebraElement) -> AlgebraElement:
    """Algebra map sending the killed generators to 0, the rest to themselves.

    Requires the kill set to satisfy the staircase condition, which makes the
    killed ideal the span of all PBW monomials containing a killed generator.
    """
    alg = x.algebra
    kill = frozenset(kill)
    for g in kill:
        alg.check_gen(g)
    if not condition_star(kill, alg.nrows, alg.ncols):
        raise ValueError("kill set complement is not closed under the relations")
    out = {m: c for m, c in x.terms.items() if all(g not in kill for g, _ in m)}
    return AlgebraElement(alg, out)
