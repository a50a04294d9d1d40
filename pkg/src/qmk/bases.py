"""Verification engine for the four bitableau bases and for degree-bounded
graded ideal arithmetic: basis rank checks, expansion in a chosen basis,
ideal components, membership, normality and polynormality, and the basis
characterizations of minor-generated ideals.

Everything here is exact linear algebra over the Laurent ring, one bigraded
component at a time.  An ideal generated by bihomogeneous elements is
bigraded, so its component at a bidegree is spanned by monomial-times-
generator-times-monomial products of matching bidegrees; components are
computed by that recursion and memoized.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .coalg import TensorElement
from .minors import bitableau_product, quantum_minor
from .qalgebra import (
    AlgebraElement,
    QuantumMatrixAlgebra,
    condition_star,
    expand_word,
)
from .scalars import LaurentScalar, ONE, ZERO, RowSpace, laurent_gcd
from .tableaux import (
    Bitableau,
    enumerate_bitableaux,
    pair_leq,
    weight_to_content,
)


# ---------------------------------------------------------------------------
# PBW components
# ---------------------------------------------------------------------------


def pbw_monomials(alg: QuantumMatrixAlgebra, bidegree):
    """All PBW monomials of the given bidegree, in canonical order."""
    rw, cw = bidegree
    m, n = alg.nrows, alg.ncols
    if len(rw) != m or len(cw) != n:
        raise ValueError("bidegree shape mismatch")
    out = []

    def rec(i, caps, acc):
        if i == m:
            if all(c == 0 for c in caps):
                mono = tuple(((r, c), e) for (r, c), e in acc)
                out.append(mono)
            return
        for comp in _compositions(rw[i], caps):
            acc2 = acc + tuple(
                (((i + 1, j + 1), comp[j])) for j in range(n) if comp[j])
            rec(i + 1, tuple(c - x for c, x in zip(caps, comp)), acc2)

    rec(0, tuple(cw), ())
    out.sort(key=expand_word)
    return out


def _compositions(total, caps):
    if not caps:
        if total == 0:
            yield ()
        return
    for first in range(min(total, caps[0]) + 1):
        for rest in _compositions(total - first, caps[1:]):
            yield (first,) + rest


def bidegrees_up_to(alg: QuantumMatrixAlgebra, bound: int, min_total: int = 0):
    """All bidegrees (row weights, column weights) with min_total <= total <= bound."""
    m, n = alg.nrows, alg.ncols
    out = []
    for d in range(min_total, bound + 1):
        for rw in _weights(d, m):
            for cw in _weights(d, n):
                out.append((rw, cw))
    return out


def _weights(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _weights(total - first, parts - 1):
            yield (first,) + rest


def element_vector(x: AlgebraElement, monos, index=None):
    if index is None:
        index = {mono: k for k, mono in enumerate(monos)}
    v = [ZERO] * len(monos)
    for mono, c in x.terms.items():
        v[index[mono]] = c
    return v


def default_bound(alg: QuantumMatrixAlgebra) -> int:
    return 4 if max(alg.nrows, alg.ncols) <= 2 else 3


# ---------------------------------------------------------------------------
# graded ideal components
# ---------------------------------------------------------------------------


class ComponentSpan:
    """A subspace of one bigraded component, with a spanning element list."""

    __slots__ = ("monos", "index", "space", "elements")

    def __init__(self, monos):
        self.monos = monos
        self.index = {mono: k for k, mono in enumerate(monos)}
        self.space = RowSpace(len(monos))
        self.elements = []

    @property
    def rank(self) -> int:
        return self.space.rank

    @property
    def dim(self) -> int:
        return len(self.monos)

    def vector(self, x: AlgebraElement):
        return element_vector(x, self.monos, self.index)

    def insert(self, x: AlgebraElement) -> bool:
        if self.space.insert(self.vector(x)):
            self.elements.append(x)
            return True
        return False

    def contains(self, x: AlgebraElement) -> bool:
        return self.space.contains(self.vector(x))


_component_cache: dict = {}


def _element_key(x: AlgebraElement):
    return tuple(sorted(
        (m, tuple(sorted(c.items()))) for m, c in x.terms.items()))


def _gens_key(alg, gens, total):
    return (alg.key,
            frozenset(_element_key(g) for g in gens
                      if g and g.total_degree() <= total))


def ideal_component(alg: QuantumMatrixAlgebra, gens, bidegree) -> ComponentSpan:
    """The exact bidegree component of the two-sided ideal generated by the
    given bihomogeneous elements, as a row space over the PBW monomials."""
    gens = [g for g in gens if not g.is_zero()]
    for g in gens:
        if not g.is_bihomogeneous():
            raise ValueError("ideal generators must be bihomogeneous")
    rw, cw = bidegree
    total = sum(rw)
    if total != sum(cw):
        raise ValueError("bidegree row/column totals differ")
    key = (_gens_key(alg, gens, total), bidegree)
    cached = _component_cache.get(key)
    if cached is not None:
        return cached
    span = ComponentSpan(pbw_monomials(alg, bidegree))
    for g in gens:
        if g.bidegree() == bidegree:
            span.insert(g)
    for (i, j) in alg.all_gens():
        if rw[i - 1] < 1 or cw[j - 1] < 1:
            continue
        sub = list(rw)
        sub[i - 1] -= 1
        subc = list(cw)
        subc[j - 1] -= 1
        child = ideal_component(alg, gens, (tuple(sub), tuple(subc)))
        if not child.elements:
            continue
        x = alg.gen(i, j)
        for b in child.elements:
            span.insert(x * b)
            span.insert(b * x)
    _component_cache[key] = span
    return span


def in_ideal(x: AlgebraElement, gens, bound: int) -> bool:
    """Membership of a bihomogeneous element in the two-sided ideal; exact at
    the element's own bidegree, guarded by the total-degree bound."""
    if x.is_zero():
        return True
    bd = x.bidegree()
    if sum(bd[0]) > bound:
        raise ValueError(f"element degree {sum(bd[0])} exceeds bound {bound}")
    return ideal_component(x.algebra, list(gens), bd).contains(x)


# ---------------------------------------------------------------------------
# normality and polynormality
# ---------------------------------------------------------------------------


def is_normal_mod(u: AlgebraElement, gens, bound: int) -> bool:
    """True iff u is normal modulo the ideal generated by ``gens``: for every
    generator X_g, X_g*u lies in u*A plus the ideal at the relevant bidegree,
    and u*X_g lies in A*u plus the ideal.  Checking single generators
    suffices because the two-sided ideal u*A + I is multiplicatively closed.
    """
    if u.is_zero():
        return True
    alg = u.algebra
    du = u.bidegree()
    if sum(du[0]) + 1 > bound:
        raise ValueError("bound too small for the normality bidegrees")
    gens = list(gens)
    for g in alg.all_gens():
        xg = alg.gen(*g)
        target = (tuple(a + b for a, b in zip(du[0], xg.bidegree()[0])),
                  tuple(a + b for a, b in zip(du[1], xg.bidegree()[1])))
        comp = ideal_component(alg, gens, target)
        left = xg * u
        right = u * xg
        s1 = comp.space.clone()
        s1.insert(comp.vector(right))
        if not s1.contains(comp.vector(left)):
            return False
        s2 = comp.space.clone()
        s2.insert(comp.vector(left))
        if not s2.contains(comp.vector(right)):
            return False
    return True


def verify_polynormal(seq, bound: int) -> bool:
    """Each element must be normal modulo the ideal of its predecessors."""
    seq = list(seq)
    for k, u in enumerate(seq):
        if not is_normal_mod(u, seq[:k], bound):
            return False
    return True


def find_polynormal_order(elems, bound: int):
    """A reordering of ``elems`` forming a polynormal sequence, or None.

    Depth-first search over prefixes; feasibility of an extension depends
    only on the chosen set, so dead prefixes are memoized by set.
    """
    elems = list(elems)
    dead = set()

    def rec(used, acc):
        if len(acc) == len(elems):
            return list(acc)
        key = frozenset(used)
        if key in dead:
            return None
        for k, u in enumerate(elems):
            if k in used:
                continue
            if is_normal_mod(u, acc, bound):
                got = rec(used | {k}, acc + [u])
                if got is not None:
                    return got
        dead.add(key)
        return None

    return rec(frozenset(), [])


# ---------------------------------------------------------------------------
# the four bases
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BasisReport:
    klass: str
    bidegree: tuple
    candidate_count: int
    rank: int
    dim: int

    @property
    def ok(self) -> bool:
        return self.candidate_count == self.rank == self.dim

    def as_dict(self):
        return {
            "class": self.klass,
            "bidegree": [list(self.bidegree[0]), list(self.bidegree[1])],
            "candidate_count": self.candidate_count,
            "rank": self.rank,
            "dim": self.dim,
            "verdict": "pass" if self.ok else "fail",
        }


def class_bitableaux(alg: QuantumMatrixAlgebra, klass: str, bidegree):
    rw, cw = bidegree
    if not alg.is_square:
        raise ValueError("bitableau bases require a square algebra")
    bc = (weight_to_content(rw), weight_to_content(cw))
    return enumerate_bitableaux(klass, bc, alg.ncols)


def verify_basis(alg: QuantumMatrixAlgebra, klass: str, bidegree) -> BasisReport:
    """Expand every class product of the bidegree into PBW coordinates and
    report candidate count, rank, and the PBW dimension."""
    bts = class_bitableaux(alg, klass, bidegree)
    span = ComponentSpan(pbw_monomials(alg, bidegree))
    for bt in bts:
        span.insert(bitableau_product(alg, bt))
    return BasisReport(klass, bidegree, len(bts), span.rank, span.dim)


class LaurentFraction:
    """num/den over the Laurent ring, gcd-normalized (for basis coordinates)."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentScalar, den: LaurentScalar):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = ONE
        else:
            g = laurent_gcd(num, den)
            if not g.is_one():
                num = num.exact_div(g)
                den = den.exact_div(g)
            if den.is_monomial():
                num = num.exact_div(den)
                den = ONE
        self.num = num
        self.den = den

    def is_scalar(self) -> bool:
        return self.den.is_one()

    def to_scalar(self) -> LaurentScalar:
        if not self.is_scalar():
            raise ArithmeticError(f"{self} is not a Laurent polynomial")
        return self.num

    def __eq__(self, other):
        if isinstance(other, (int, LaurentScalar)):
            other = LaurentFraction(
                other if isinstance(other, LaurentScalar) else LaurentScalar.from_int(other), ONE)
        return self.num * other.den == other.num * self.den

    def __repr__(self):
        if self.den.is_one():
            return f"({self.num.text()})"
        return f"({self.num.text()}) / ({self.den.text()})"


def expand_in_basis(x: AlgebraElement, klass: str):
    """Coordinates of x over the class products of its bidegree.

    Returns {Bitableau: LaurentFraction}; requires verify_basis to pass at
    that bidegree, and raises if the solve is inconsistent.
    """
    alg = x.algebra
    if x.is_zero():
        return {}
    bd = x.bidegree()
    report = verify_basis(alg, klass, bd)
    if not report.ok:
        raise ArithmeticError(f"{klass} products do not form a basis at {bd}: {report}")
    bts = class_bitableaux(alg, klass, bd)
    monos = pbw_monomials(alg, bd)
    index = {mono: k for k, mono in enumerate(monos)}
    rows = [element_vector(bitableau_product(alg, bt), monos, index) for bt in bts]
    coords = _solve_coordinates(rows, element_vector(x, monos, index), len(monos))
    out = {}
    for k, frac in coords.items():
        if frac.num:
            out[bts[k]] = frac
    return out


def _solve_coordinates(rows, target, width):
    """Solve target = sum_k c_k rows[k]; raises if inconsistent.

    Pivot rows carry integral combination records (vec = sum combo[i]*rows[i]);
    reducing the target tracks den*target = sum combo[i]*rows[i] + residue.
    """
    pivots = {}  # col -> (vec, combo dict over original row indices)
    for k, row in enumerate(rows):
        v = list(row)
        combo = {k: ONE}
        for c in sorted(pivots):
            if not v[c]:
                continue
            p, pcombo = pivots[c]
            a, b = p[c], v[c]
            v = [a * v[j] - b * p[j] for j in range(width)]
            new_combo = {i: a * cf for i, cf in combo.items()}
            for i, cf in pcombo.items():
                acc = new_combo.get(i, ZERO) - b * cf
                if acc:
                    new_combo[i] = acc
                elif i in new_combo:
                    del new_combo[i]
            combo = new_combo
        lead = next((c for c in range(width) if v[c]), None)
        if lead is not None:
            pivots[lead] = (v, combo)
    v = list(target)
    combo = {}
    den = ONE
    for c in sorted(pivots):
        if not v[c]:
            continue
        p, pcombo = pivots[c]
        a, b = p[c], v[c]
        v = [a * v[j] - b * p[j] for j in range(width)]
        den = a * den
        new_combo = {i: a * cf for i, cf in combo.items()}
        for i, cf in pcombo.items():
            acc = new_combo.get(i, ZERO) + b * cf
            if acc:
                new_combo[i] = acc
            elif i in new_combo:
                del new_combo[i]
        combo = new_combo
    if any(v):
        raise ArithmeticError("target not in the span of the rows")
    return {k: LaurentFraction(cf, den) for k, cf in combo.items()}


# ---------------------------------------------------------------------------
# basis characterizations of minor-generated ideals
# ---------------------------------------------------------------------------


def is_hereditary(pairs, t: int, n: int) -> bool:
    """Downward closure under the (row, column) order on t x t index pairs."""
    pairs = set(pairs)
    all_t = [(I, J)
             for I in itertools.combinations(range(1, n + 1), t)
             for J in itertools.combinations(range(1, n + 1), t)]
    for p in pairs:
        if len(p[0]) != t:
            raise ValueError(f"pair {p} is not {t}x{t}")
        for p2 in all_t:
            if pair_leq(p2, p) and p2 not in pairs:
                return False
    return True


def preferred_span(alg: QuantumMatrixAlgebra, bidegree, keep) -> ComponentSpan:
    """Span of the preferred products of a bidegree passing ``keep``."""
    span = ComponentSpan(pbw_monomials(alg, bidegree))
    for bt in class_bitableaux(alg, "preferred", bidegree):
        if keep(bt):
            span.insert(bitableau_product(alg, bt))
    return span


def spans_equal(a: ComponentSpan, b: ComponentSpan) -> bool:
    if a.rank != b.rank:
        return False
    merged = a.space.clone()
    for row in b.space.pivots.values():
        if merged.insert(list(row)):
            return False
    return True


def lemma64_basis_check(alg: QuantumMatrixAlgebra, pairs, t: int, bound: int) -> bool:
    """The ideal of all (t+1)-minors plus the minors of a hereditary t x t
    pair set has, in each component, the span of those preferred products
    whose left tableau has more than t columns or that contain a row in the
    set."""
    n = alg.ncols
    pairs = set(pairs)
    if not is_hereditary(pairs, t, n):
        raise ValueError("pair set is not hereditary")
    gens = [quantum_minor(alg, p) for p in pairs]
    if t + 1 <= n:
        gens += [quantum_minor(alg, (I, J))
                 for I in itertools.combinations(range(1, n + 1), t + 1)
                 for J in itertools.combinations(range(1, n + 1), t + 1)]

    def keep(bt: Bitableau) -> bool:
        if bt.shape and bt.shape[0] > t:
            return True
        return any(len(I) == t and (I, J) in pairs for I, J in bt.row_pairs())

    for bd in bidegrees_up_to(alg, bound):
        ideal = ideal_component(alg, gens, bd)
        described = preferred_span(alg, bd, keep)
        if not spans_equal(ideal, described):
            return False
    return True


def lemma65_basis_check(alg: QuantumMatrixAlgebra, t: int, bound: int, side: str = "cols") -> bool:
    """The ideal of generators beyond column t (resp. row t) is spanned by
    the preferred products containing a row whose column (resp. row) index
    set leaves {1..t}."""
    n = alg.ncols
    if side == "cols":
        gens = [alg.gen(i, j) for (i, j) in alg.all_gens() if j > t]

        def keep(bt):
            return any(any(j > t for j in J) for _, J in bt.row_pairs())
    elif side == "rows":
        gens = [alg.gen(i, j) for (i, j) in alg.all_gens() if i > t]

        def keep(bt):
            return any(any(i > t for i in I) for I, _ in bt.row_pairs())
    else:
        raise ValueError("side must be 'cols' or 'rows'")
    for bd in bidegrees_up_to(alg, bound):
        if not spans_equal(ideal_component(alg, gens, bd), preferred_span(alg, bd, keep)):
            return False
    return True


def lemma32_pattern_ok(cells, nrows: int, ncols: int) -> bool:
    """Decidable closure predicate under which a set of killed generators
    spans a completely prime ideal with a PBW basis on the complement."""
    return condition_star(cells, nrows, ncols)


# ---------------------------------------------------------------------------
# tensor membership in V (x) A + A (x) W, one bicomponent at a time
# ---------------------------------------------------------------------------


def tensor_in_sum(tensor: TensorElement, v_gens, w_gens, bound: int | None = None) -> bool:
    """Whether a tensor lies in (V (x) A) + (A (x) W), where V and W are the
    ideals generated by ``v_gens`` and ``w_gens``; checked componentwise on
    each bihomogeneous bicomponent of the tensor."""
    la = tensor.left_algebra
    ra = tensor.right_algebra
    for (dl, dr), comp in tensor.bicomponents().items():
        if bound is not None and max(sum(dl[0]), sum(dr[0])) > bound:
            raise ValueError("bicomponent exceeds the bound")
        lm = pbw_monomials(la, dl)
        rm = pbw_monomials(ra, dr)
        li = {m: k for k, m in enumerate(lm)}
        ri = {m: k for k, m in enumerate(rm)}
        width = len(lm) * len(rm)
        space = RowSpace(width)
        vcomp = ideal_component(la, list(v_gens), dl)
        for row in vcomp.space.pivots.values():
            for k2 in range(len(rm)):
                vec = [ZERO] * width
                for k1 in range(len(lm)):
                    vec[k1 * len(rm) + k2] = row[k1]
                space.insert(vec)
        wcomp = ideal_component(ra, list(w_gens), dr)
        for row in wcomp.space.pivots.values():
            for k1 in range(len(lm)):
                vec = [ZERO] * width
                for k2 in range(len(rm)):
                    vec[k1 * len(rm) + k2] = row[k2]
                space.insert(vec)
        tvec = [ZERO] * width
        for (ml, mr), c in comp.terms.items():
            tvec[li[ml] * len(rm) + ri[mr]] = c
        if not space.contains(tvec):
            return False
    return True
