"""Stratification of the torus-invariant prime spectrum for n <= 3.

Strata are indexed by pairs of strictly increasing sequences (r, c).  Each
stratum's primes pull back, through comultiplication and a pair of
step-triangular quotient algebras, from torus-prime pairs of those factors.
The factors are localized at their staircase corner generators, which
scalar-commute with every surviving generator, so their elements have exact
normal forms as Laurent-exponent monomials; quotient presentations kill some
plain generators and may impose one 2x2 minor relation, eliminated by
substituting through an inverted corner.

The atlas assembles one descriptor per (stratum, quotient pair): the set of
quantum minors with zero image, a pruned generating set, and a schematic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import bases
from .coalg import delta_monomial
from .minors import (
    all_minor_pairs,
    index_pair,
    minor_label,
    quantum_minor,
)
from .qalgebra import AlgebraElement, algebra, retraction
from .scalars import LaurentScalar, ONE, QINV, Q, ZERO, RowSpace


class UnsupportedScaleError(ValueError):
    """Raised for matrix sizes the catalog machinery is not engineered for."""


# ---------------------------------------------------------------------------
# stratum labels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RCPair:
    r: tuple
    c: tuple

    def __post_init__(self):
        for seq in (self.r, self.c):
            if list(seq) != sorted(set(seq)):
                raise ValueError(f"sequence {seq} is not strictly increasing")
        if len(self.r) != len(self.c):
            raise ValueError("r and c must have the same length")

    @property
    def t(self) -> int:
        return len(self.r)


def enumerate_rc(n: int):
    """All equal-length pairs of strictly increasing sequences in 1..n."""
    seqs = [()]
    for size in range(1, n + 1):
        seqs.extend(itertools.combinations(range(1, n + 1), size))
    by_len = {}
    for s in seqs:
        by_len.setdefault(len(s), []).append(s)
    out = []
    for t in sorted(by_len):
        for r in by_len[t]:
            for c in by_len[t]:
                out.append(RCPair(r, c))
    return out


def k_rc_generators(rc: RCPair, n: int):
    """Minor labels generating the stratum's defining ideal: all sizes above
    t, plus the sizes l <= t whose row (or column) set fails to dominate the
    length-l prefix of r (or c) componentwise."""
    out = set()
    for size in range(1, n + 1):
        for (I, J) in all_minor_pairs(n, size):
            if size > rc.t:
                out.add((I, J))
                continue
            if any(I[s] < rc.r[s] for s in range(size)):
                out.add((I, J))
            elif any(J[s] < rc.c[s] for s in range(size)):
                out.add((I, J))
    return out


def leading_minors(rc: RCPair):
    """The labels d_l = [r_1..r_l | c_1..c_l] avoided by the stratum."""
    return [(rc.r[:l], rc.c[:l]) for l in range(1, rc.t + 1)]


# ---------------------------------------------------------------------------
# step algebras
# ---------------------------------------------------------------------------

ZERO_CELL = "zero"
PLAIN = "plain"
INVERTED = "inverted"

_step_cache = {}


def step_algebra(seq, side: str, n: int) -> "StepAlgebraSpec":
    """The step-triangular factor for a strictly increasing sequence.

    Side '+' kills cells with column > t or row < r_col and inverts the
    staircase corners (r_s, s); side '-' is the transpose convention.
    """
    seq = tuple(seq)
    key = (seq, side, n)
    if key not in _step_cache:
        _step_cache[key] = StepAlgebraSpec(seq, side, n)
    return _step_cache[key]


class StepAlgebraSpec:
    def __init__(self, seq, side, n):
        if side not in ("+", "-"):
            raise ValueError("side must be '+' or '-'")
        if list(seq) != sorted(set(seq)) or any(not 1 <= s <= n for s in seq):
            raise ValueError(f"invalid sequence {seq}")
        self.seq = tuple(seq)
        self.side = side
        self.n = n
        t = len(seq)
        grid = {}
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if side == "+":
                    dead = j > t or i < (seq[j - 1] if j <= t else n + 1)
                    inv = j <= t and i == seq[j - 1]
                else:
                    dead = i > t or j < (seq[i - 1] if i <= t else n + 1)
                    inv = i <= t and j == seq[i - 1]
                grid[(i, j)] = INVERTED if inv else (ZERO_CELL if dead else PLAIN)
        self.grid = grid
        self.survivors = frozenset(c for c, s in grid.items() if s != ZERO_CELL)
        self.inverted = frozenset(c for c, s in grid.items() if s == INVERTED)
        self.plains = frozenset(c for c, s in grid.items() if s == PLAIN)
        self._nf_cache = {}

    @property
    def key(self):
        return (self.seq, self.side, self.n)

    def __repr__(self):
        name = "".join(map(str, self.seq)) or "0"
        return f"R{self.side}_{name}(n={self.n})"

    def state(self, cell) -> str:
        return self.grid[cell]

    def var_name(self) -> str:
        return "Y" if self.side == "+" else "Z"

    # -- rewriting over Laurent-exponent monomials -----------------------

    def scalar_swap(self, g, h):
        """For survivors g > h: the scalar s with g*h = s*h*g in this factor,
        or None when the straightening correction survives."""
        (a, b), (c, d) = g, h
        if a == c or b == d:
            return QINV
        if b < d:
            return ONE
        if (c, b) in self.survivors and (a, d) in self.survivors:
            return None
        return ONE

    def normalize(self, atoms) -> dict:
        """Normal form {monomial: coefficient} of a product of atoms
        (cell, exponent); exponents may be negative on inverted cells only."""
        atoms = tuple((g, e) for g, e in atoms if e)
        cached = self._nf_cache.get(atoms)
        if cached is not None:
            return cached
        out = self._normalize_inner(atoms)
        self._nf_cache[atoms] = out
        return out

    def _normalize_inner(self, atoms):
        for k in range(len(atoms) - 1):
            (g, e), (h, f) = atoms[k], atoms[k + 1]
            if g > h:
                break
        else:
            return {self._merge(atoms): ONE}
        lam = self.scalar_swap(g, h)
        out = {}
        if lam is not None:
            coeff = lam ** (e * f)
            rest = atoms[:k] + ((h, f), (g, e)) + atoms[k + 2:]
            for m, c in self.normalize(rest).items():
                _acc(out, m, coeff * c)
            return out
        # genuine correction: both plain, peel to a unit-unit pair
        if e > 1:
            rest = atoms[:k] + ((g, e - 1), (g, 1), (h, f)) + atoms[k + 2:]
            return dict(self.normalize(rest))
        if f > 1:
            rest = atoms[:k] + ((g, 1), (h, 1), (h, f - 1)) + atoms[k + 2:]
            return dict(self.normalize(rest))
        (a, b), (c, d) = g, h
        swap = atoms[:k] + ((h, 1), (g, 1)) + atoms[k + 2:]
        corr = atoms[:k] + (((c, b), 1), ((a, d), 1)) + atoms[k + 2:]
        for m, cf in self.normalize(swap).items():
            _acc(out, m, cf)
        qq = Q - QINV
        for m, cf in self.normalize(corr).items():
            _acc(out, m, -(qq * cf))
        return {m: c for m, c in out.items() if c}

    def _merge(self, atoms):
        merged = []
        for g, e in atoms:
            if merged and merged[-1][0] == g:
                merged[-1] = (g, merged[-1][1] + e)
            else:
                merged.append((g, e))
        for g, e in merged:
            if e < 0 and g not in self.inverted:
                raise ValueError(f"negative exponent on non-inverted cell {g}")
        return tuple((g, e) for g, e in merged if e)


def _acc(d, key, c):
    acc = d.get(key, ZERO) + c
    if acc:
        d[key] = acc
    elif key in d:
        del d[key]


def step_monomial_text(spec: StepAlgebraSpec, mono) -> str:
    if not mono:
        return "1"
    v = spec.var_name()
    return " ".join(
        f"{v}[{i},{j}]" + (f"^{e}" if e != 1 else "") for (i, j), e in mono)


# ---------------------------------------------------------------------------
# quotient presentations (the step-algebra torus-prime catalogs)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MinorRelation:
    label: tuple          # (I, J) cell labels of the 2x2 minor set to zero
    eliminated: tuple     # the cell solved for
    coeff: LaurentScalar  # scalar of the substitution word
    word: tuple           # substitution atoms ((cell, exp), ...)


class QuotientPresentation:
    """A torus-prime of a localized step algebra: killed plain generators
    plus at most one eliminated-minor relation."""

    def __init__(self, parent: StepAlgebraSpec, killed, relation=None):
        killed = frozenset(killed)
        for cell in killed:
            if parent.state(cell) != PLAIN:
                raise ValueError(f"cannot kill non-plain cell {cell}")
        self.parent = parent
        self.killed = killed
        self.relation = relation
        self._reduce_cache = {}
        if relation is None:
            self.qid = "+".join(f"{i}{j}" for (i, j) in sorted(killed)) or "0"
        else:
            self.qid = minor_label(relation.label)

    def __repr__(self):
        return f"Q({self.parent!r}:{self.qid})"

    def reduce_monomial(self, mono) -> dict:
        cached = self._reduce_cache.get(mono)
        if cached is not None:
            return cached
        out = self._reduce_terms({mono: ONE})
        self._reduce_cache[mono] = out
        return out

    def _reduce_terms(self, terms) -> dict:
        out = {}
        work = list(terms.items())
        fuel = 200000
        while work:
            fuel -= 1
            if fuel <= 0:
                raise RuntimeError("minor-relation substitution did not terminate")
            mono, c = work.pop()
            if any(cell in self.killed for cell, _ in mono):
                continue
            if self.relation is not None:
                idx = next((k for k, (cell, _) in enumerate(mono)
                            if cell == self.relation.eliminated), None)
                if idx is not None:
                    cell, e = mono[idx]
                    head = mono[:idx] + (((cell, e - 1),) if e > 1 else ())
                    tail = mono[idx + 1:]
                    word = head + self.relation.word + tail
                    for m2, c2 in self.parent.normalize(word).items():
                        work.append((m2, c * self.relation.coeff * c2))
                    continue
            _acc(out, mono, c)
        return out

    def reduce_element(self, terms) -> dict:
        out = {}
        for mono, c in terms.items():
            for m2, c2 in self.reduce_monomial(mono).items():
                _acc(out, m2, c * c2)
        return out


def step_normal_form(qp: QuotientPresentation, word) -> dict:
    """Canonical form of a word of (cell, exponent) atoms in the quotient.

    Killed or pattern-zero cells are an error; negative exponents are only
    accepted on inverted cells; the minor relation, when present, eliminates
    its distinguished generator.
    """
    spec = qp.parent
    atoms = []
    for cell, e in word:
        state = spec.grid.get(tuple(cell))
        if state is None:
            raise ValueError(f"cell {cell} outside the {spec.n}x{spec.n} grid")
        if state == ZERO_CELL:
            raise ValueError(f"cell {cell} is zero in {spec!r}")
        if tuple(cell) in qp.killed:
            raise ValueError(f"cell {cell} is killed in this quotient")
        if e < 0 and state != INVERTED:
            raise ValueError(f"negative exponent on non-inverted cell {cell}")
        atoms.append((tuple(cell), e))
    return qp.reduce_element(spec.normalize(atoms))


# the 13 generator-subset torus-primes of the 2x2 base algebra (those
# satisfying the staircase closure condition), completed by the determinant
_BASE_SUBSETS = [
    frozenset(),
    frozenset({(1, 2)}),
    frozenset({(2, 1)}),
    frozenset({(1, 2), (2, 1)}),
    frozenset({(1, 1), (1, 2)}),
    frozenset({(1, 2), (2, 2)}),
    frozenset({(2, 1), (2, 2)}),
    frozenset({(1, 1), (2, 1)}),
    frozenset({(1, 1), (1, 2), (2, 1)}),
    frozenset({(1, 2), (2, 1), (2, 2)}),
    frozenset({(1, 1), (1, 2), (2, 2)}),
    frozenset({(1, 1), (2, 1), (2, 2)}),
    frozenset({(1, 1), (1, 2), (2, 1), (2, 2)}),
]

_catalog_cache = {}


def hspec_catalog(spec: StepAlgebraSpec):
    """The complete torus-prime catalog of a localized step algebra.

    A full 2x2 surviving sub-grid (the core) carries a copy of the 2x2 base
    algebra localized at its inverted corner, and the skew-Laurent variables
    outside it induce every torus-prime from a core one; without a core all
    survivors pairwise scalar-commute and the catalog is the set of subsets
    of the plain cells.
    """
    cached = _catalog_cache.get(spec.key)
    if cached is not None:
        return cached
    cores = _find_cores(spec)
    out = []
    if not cores:
        for g, h in itertools.combinations(sorted(spec.survivors), 2):
            if spec.scalar_swap(max(g, h), min(g, h)) is None:
                raise UnsupportedScaleError(
                    f"{spec!r} has a correction pair outside any 2x2 core")
        for size in range(len(spec.plains) + 1):
            for sub in itertools.combinations(sorted(spec.plains), size):
                out.append(QuotientPresentation(spec, sub))
    else:
        if len(cores) > 1:
            raise UnsupportedScaleError(f"{spec!r} has several 2x2 cores")
        (rows, cols) = cores[0]
        cell = {(r, c): (rows[r - 1], cols[c - 1]) for r in (1, 2) for c in (1, 2)}
        extras = spec.survivors - set(cell.values())
        if any(spec.state(x) == PLAIN for x in extras):
            raise UnsupportedScaleError(
                f"{spec!r} has plain survivors outside its core")
        inv_core = [p for p in cell.values() if spec.state(p) == INVERTED]
        if len(inv_core) != 1:
            raise UnsupportedScaleError(
                f"{spec!r} core must have exactly one inverted cell")
        for sub in _BASE_SUBSETS:
            cells = frozenset(cell[p] for p in sub)
            if cells & spec.inverted:
                continue
            out.append(QuotientPresentation(spec, cells))
        out.append(QuotientPresentation(spec, frozenset(), _core_relation(spec, cell)))
    out.sort(key=lambda qp: (qp.relation is not None, len(qp.killed), sorted(qp.killed)))
    _catalog_cache[spec.key] = out
    return out


def _find_cores(spec: StepAlgebraSpec):
    n = spec.n
    out = []
    for rows in itertools.combinations(range(1, n + 1), 2):
        for cols in itertools.combinations(range(1, n + 1), 2):
            if all((i, j) in spec.survivors for i in rows for j in cols):
                out.append((rows, cols))
    return out


def _core_relation(spec: StepAlgebraSpec, cell) -> MinorRelation:
    a, b, c, d = cell[(1, 1)], cell[(1, 2)], cell[(2, 1)], cell[(2, 2)]
    cof = {a: d, d: a, b: c, c: b}
    candidates = [x for x in (a, b, c, d)
                  if spec.state(cof[x]) == INVERTED and spec.state(x) != INVERTED]
    if len(candidates) != 1:
        raise UnsupportedScaleError("ambiguous elimination in core minor relation")
    x = candidates[0]
    label = index_pair((cell[(1, 1)][0], cell[(2, 1)][0]), (cell[(1, 1)][1], cell[(1, 2)][1]))
    if x == b:
        return MinorRelation(label, b, QINV, ((a, 1), (d, 1), (c, -1)))
    if x == c:
        return MinorRelation(label, c, QINV, ((b, -1), (a, 1), (d, 1)))
    if x == a:
        return MinorRelation(label, a, Q, ((b, 1), (c, 1), (d, -1)))
    return MinorRelation(label, d, Q, ((a, -1), (b, 1), (c, 1)))


def catalog_schematic(qp: QuotientPresentation) -> str:
    """Figure-style rendering: '*' inverted, '●' killed, '○' free plain,
    '·' zero, rows joined by '/'; a trailing minor label marks the relation."""
    spec = qp.parent
    rows = []
    for i in range(1, spec.n + 1):
        chars = []
        for j in range(1, spec.n + 1):
            state = spec.state((i, j))
            if state == ZERO_CELL:
                chars.append("·")
            elif state == INVERTED:
                chars.append("*")
            elif (i, j) in qp.killed:
                chars.append("●")
            else:
                chars.append("○")
        rows.append("".join(chars))
    out = "/".join(rows)
    if qp.relation is not None:
        out += " □" + minor_label(qp.relation.label)
    return out


# ---------------------------------------------------------------------------
# the stratification map and pullback membership
# ---------------------------------------------------------------------------


class StepTensor:
    """Scalar combination of (plus-monomial, minus-monomial) pairs."""

    __slots__ = ("plus", "minus", "terms")

    def __init__(self, plus: StepAlgebraSpec, minus: StepAlgebraSpec, terms: dict):
        self.plus = plus
        self.minus = minus
        self.terms = terms

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, StepTensor)
                and self.plus.key == other.plus.key
                and self.minus.key == other.minus.key
                and self.terms == other.terms)

    def __repr__(self):
        if not self.terms:
            return "<0>"
        bits = []
        for (ml, mr), c in sorted(self.terms.items()):
            bits.append(f"({c.text()})*{step_monomial_text(self.plus, ml)}"
                        f"(x){step_monomial_text(self.minus, mr)}")
        return "<" + " + ".join(bits) + ">"


_beta_cache = {}


def _beta_monomial(rc: RCPair, n: int, mono):
    """Image of one PBW monomial under comultiplication followed by the two
    pattern quotients (no localized-quotient reduction yet)."""
    key = (rc.r, rc.c, n, mono)
    cached = _beta_cache.get(key)
    if cached is not None:
        return cached
    alg = algebra(n)
    plus = step_algebra(rc.r, "+", n)
    minus = step_algebra(rc.c, "-", n)
    out = {}
    for (ml, mr), c in delta_monomial(alg, mono).terms.items():
        if any(cell not in plus.survivors for cell, _ in ml):
            continue
        if any(cell not in minus.survivors for cell, _ in mr):
            continue
        _acc(out, (ml, mr), c)
    _beta_cache[key] = out
    return out


def beta_image(rc: RCPair, x: AlgebraElement) -> StepTensor:
    """The stratification map on an element of the square algebra."""
    alg = x.algebra
    if not alg.is_square:
        raise ValueError("the stratification map lives on square algebras")
    n = alg.nrows
    plus = step_algebra(rc.r, "+", n)
    minus = step_algebra(rc.c, "-", n)
    out = {}
    for mono, c in x.terms.items():
        for pair, c2 in _beta_monomial(rc, n, mono).items():
            _acc(out, pair, c * c2)
    return StepTensor(plus, minus, out)


def pullback_image(rc: RCPair, qplus: QuotientPresentation,
                   qminus: QuotientPresentation, x: AlgebraElement) -> StepTensor:
    """beta followed by reduction modulo the quotient pair on both legs; the
    element lies in the pullback prime iff this image is zero."""
    t = beta_image(rc, x)
    out = {}
    for (ml, mr), c in t.terms.items():
        rl = qplus.reduce_monomial(ml)
        if not rl:
            continue
        rr = qminus.reduce_monomial(mr)
        if not rr:
            continue
        for m1, c1 in rl.items():
            for m2, c2 in rr.items():
                _acc(out, (m1, m2), c * c1 * c2)
    return StepTensor(t.plus, t.minus, out)


def minors_in_pullback(rc: RCPair, qplus: QuotientPresentation,
                       qminus: QuotientPresentation, n: int):
    """All minor labels whose image under the composite map is exactly zero."""
    alg = algebra(n)
    out = set()
    for size in range(1, n + 1):
        for pair in all_minor_pairs(n, size):
            if pullback_image(rc, qplus, qminus, quantum_minor(alg, pair)).is_zero():
                out.add(pair)
    return out


# ---------------------------------------------------------------------------
# the atlas
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HPrimeDescriptor:
    rc: RCPair
    qplus_id: str
    qminus_id: str
    minors_full: tuple
    minors_reduced: tuple
    schematic: str

    def as_dict(self):
        return {
            "stratum": {"r": list(self.rc.r), "c": list(self.rc.c)},
            "qplus_id": self.qplus_id,
            "qminus_id": self.qminus_id,
            "minors_full": [minor_label(p) for p in self.minors_full],
            "minors_reduced": [minor_label(p) for p in self.minors_reduced],
            "schematic": self.schematic,
        }


ATLAS_GOLDEN = {
    1: {"total": 2, "by_t": {0: 1, 1: 1}},
    2: {"total": 14, "by_t": {0: 1, 1: 9, 2: 4}},
    3: {"total": 230, "by_t": {0: 1, 1: 49, 2: 144, 3: 36}},
}


def prune_labels(n: int, labels):
    """Greedy removal of labels already inside the ideal of the others,
    larger minors first; the survivors generate the same ideal."""
    alg = algebra(n)
    keep = sorted(labels, key=lambda p: (-len(p[0]), p))
    for lab in list(keep):
        others = [quantum_minor(alg, p) for p in keep if p != lab]
        if bases.in_ideal(quantum_minor(alg, lab), others, len(lab[0])):
            keep.remove(lab)
    return tuple(sorted(keep, key=lambda p: (len(p[0]), p)))


def render_schematic(n: int, labels) -> str:
    """Paper-style grid: '●' marks a 1x1 generator, '○' a placeholder; 2x2
    minors are appended as squares with their labels, the full minor as a
    diamond."""
    labels = set(labels)
    rows = []
    for i in range(1, n + 1):
        rows.append("".join(
            "●" if ((i,), (j,)) in labels else "○" for j in range(1, n + 1)))
    out = "/".join(rows)
    glyphs = []
    for pair in sorted(labels, key=lambda p: (len(p[0]), p)):
        size = len(pair[0])
        if size == 1:
            continue
        if size == n:
            glyphs.append("◇" if n > 2 else "□" + minor_label(pair))
        else:
            glyphs.append("□" + minor_label(pair))
    if glyphs:
        out += " " + " ".join(glyphs)
    return out


def build_atlas(n: int, prune: bool = True):
    """One descriptor per (stratum, quotient pair) triple, with the stratum
    breakdown and the grand total.

    Supported for n <= 3 only: the catalog reduction is engineered for cores
    of size at most 2x2.
    """
    if n > 3:
        raise UnsupportedScaleError(
            f"atlas construction is engineered for n <= 3, got n = {n}")
    descriptors = []
    strata = sorted(enumerate_rc(n), key=lambda rc: (-rc.t, rc.r, rc.c))
    for rc in strata:
        plus_cat = hspec_catalog(step_algebra(rc.r, "+", n))
        minus_cat = hspec_catalog(step_algebra(rc.c, "-", n))
        for qp in plus_cat:
            for qm in minus_cat:
                full = tuple(sorted(minors_in_pullback(rc, qp, qm, n),
                                    key=lambda p: (len(p[0]), p)))
                reduced = prune_labels(n, full) if prune else full
                descriptors.append(HPrimeDescriptor(
                    rc, qp.qid, qm.qid, full, reduced,
                    render_schematic(n, reduced)))
    by_t = {}
    for d in descriptors:
        by_t[d.rc.t] = by_t.get(d.rc.t, 0) + 1
    return {"n": n, "total": len(descriptors), "by_t": by_t,
            "descriptors": descriptors}


# ---------------------------------------------------------------------------
# kernel-generation evidence
# ---------------------------------------------------------------------------


def composite_rank(rc: RCPair, qplus, qminus, n: int, bidegree) -> int:
    """Rank of the composite map restricted to one bigraded component."""
    alg = algebra(n)
    monos = bases.pbw_monomials(alg, bidegree)
    images = []
    columns = {}
    for mono in monos:
        img = {}
        for pair, c in _beta_monomial(rc, n, mono).items():
            rl = qplus.reduce_monomial(pair[0])
            if not rl:
                continue
            rr = qminus.reduce_monomial(pair[1])
            if not rr:
                continue
            for m1, c1 in rl.items():
                for m2, c2 in rr.items():
                    _acc(img, (m1, m2), c * c1 * c2)
        for key in img:
            columns.setdefault(key, len(columns))
        images.append(img)
    space = RowSpace(len(columns))
    for img in images:
        v = [ZERO] * len(columns)
        for key, c in img.items():
            v[columns[key]] = c
        space.insert(v)
    return space.rank


def kernel_generation_check(descriptor: HPrimeDescriptor, n: int, bound: int,
                            use_reduced: bool = False):
    """Bounded graded equality of the reconstructed ideal with the kernel of
    the composite map: at every bidegree up to the bound, ideal rank plus
    composite rank must equal the component dimension.  Returns the list of
    failing bidegrees (empty means the evidence holds)."""
    alg = algebra(n)
    rc = descriptor.rc
    plus_cat = {qp.qid: qp for qp in hspec_catalog(step_algebra(rc.r, "+", n))}
    minus_cat = {qm.qid: qm for qm in hspec_catalog(step_algebra(rc.c, "-", n))}
    qp = plus_cat[descriptor.qplus_id]
    qm = minus_cat[descriptor.qminus_id]
    labels = descriptor.minors_reduced if use_reduced else descriptor.minors_full
    gens = [quantum_minor(alg, p) for p in labels]
    failures = []
    for bd in bases.bidegrees_up_to(alg, bound):
        dim = len(bases.pbw_monomials(alg, bd))
        ideal_rank = bases.ideal_component(alg, gens, bd).rank
        crank = composite_rank(rc, qp, qm, n, bd)
        if ideal_rank + crank != dim:
            failures.append(bd)
    return failures


# ---------------------------------------------------------------------------
# named ideals: the two-parameter minor families and the mixed case
# ---------------------------------------------------------------------------


def theorem66_generators(t: int, l: int, lp: int, sign_p: str, sign_q: str, n: int):
    """Labels of the ideal built from all (t+1)-minors, the t-minors with row
    set inside an initial (sign '-') or final (sign '+') window of length l,
    and the t-minors with column set inside the length-lp window."""
    if not (1 <= t <= n and 1 <= l <= n and 1 <= lp <= n):
        raise ValueError("parameters out of range")
    if sign_p not in "+-" or sign_q not in "+-":
        raise ValueError("signs must be '+' or '-'")
    out = set()
    if t + 1 <= n:
        out.update(all_minor_pairs(n, t + 1))
    rows = set(range(1, l + 1)) if sign_p == "-" else set(range(n - l + 1, n + 1))
    cols = set(range(1, lp + 1)) if sign_q == "-" else set(range(n - lp + 1, n + 1))
    for (I, J) in all_minor_pairs(n, t):
        if set(I) <= rows:
            out.add((I, J))
        if set(J) <= cols:
            out.add((I, J))
    return out


def theorem66_delta_inclusion(t: int, l: int, lp: int, sign_p: str, sign_q: str,
                              n: int) -> bool:
    """Comultiplication of every generator lands in V1 (x) A + A (x) W2,
    where V1 adds the beyond-column-t generators to the row family and W2
    adds the beyond-row-t generators to the column family."""
    from .coalg import delta

    alg = algebra(n)
    rows = set(range(1, l + 1)) if sign_p == "-" else set(range(n - l + 1, n + 1))
    cols = set(range(1, lp + 1)) if sign_q == "-" else set(range(n - lp + 1, n + 1))
    p_part = set()
    q_part = set()
    if t + 1 <= n:
        p_part.update(all_minor_pairs(n, t + 1))
        q_part.update(all_minor_pairs(n, t + 1))
    for (I, J) in all_minor_pairs(n, t):
        if set(I) <= rows:
            p_part.add((I, J))
        if set(J) <= cols:
            q_part.add((I, J))
    v1 = [quantum_minor(alg, p) for p in p_part]
    v1 += [alg.gen(i, j) for (i, j) in alg.all_gens() if j > t]
    w2 = [quantum_minor(alg, p) for p in q_part]
    w2 += [alg.gen(i, j) for (i, j) in alg.all_gens() if i > t]
    for pair in sorted(p_part | q_part, key=lambda p: (len(p[0]), p)):
        if not bases.tensor_in_sum(delta(quantum_minor(alg, pair)), v1, w2):
            return False
    return True


def section72_ideal():
    """The mixed-type ideal on the 3x3 algebra and its two comparison
    ideals, as labeled generator data."""
    two = list(itertools.combinations((1, 2, 3), 2))
    p_labels = {((2, 3), J) for J in two}
    p_labels |= {(I, (1, 2)) for I in two}
    p_labels.add(((1,), (3,)))
    v1 = (((1,), (2,)), ((1,), (3,)), ((2,), (3,)), ((3,), (3,)), ((2, 3), (1, 2)))
    w2 = (((1,), (3,)), ((3,), (1,)), ((3,), (2,)), ((3,), (3,)), ((1, 2), (1, 2)))
    return {
        "P": tuple(sorted(p_labels, key=lambda p: (len(p[0]), p))),
        "V1": v1,
        "W2": w2,
    }


def section72_delta_inclusion() -> bool:
    from .coalg import delta

    alg = algebra(3)
    data = section72_ideal()
    v1 = [quantum_minor(alg, p) for p in data["V1"]]
    w2 = [quantum_minor(alg, p) for p in data["W2"]]
    for pair in data["P"]:
        if not bases.tensor_in_sum(delta(quantum_minor(alg, pair)), v1, w2):
            return False
    return True


# ---------------------------------------------------------------------------
# locating an ideal in the atlas
# ---------------------------------------------------------------------------


def stratum_of_ideal(gens, n: int, bound: int = 3) -> RCPair:
    """The unique stratum whose defining minors lie in the ideal and whose
    leading minors avoid it."""
    alg = algebra(n)
    gens = list(gens)
    hits = []
    for rc in enumerate_rc(n):
        if not all(bases.in_ideal(quantum_minor(alg, p), gens, bound)
                   for p in k_rc_generators(rc, n)):
            continue
        if any(bases.in_ideal(quantum_minor(alg, p), gens, bound)
               for p in leading_minors(rc)):
            continue
        hits.append(rc)
    if len(hits) != 1:
        raise ValueError(f"ideal matched {len(hits)} strata")
    return hits[0]


def minors_in_ideal(gens, n: int):
    """All minor labels inside the ideal (exact at each label's bidegree)."""
    alg = algebra(n)
    out = set()
    for size in range(1, n + 1):
        for pair in all_minor_pairs(n, size):
            if bases.in_ideal(quantum_minor(alg, pair), list(gens), size):
                out.add(pair)
    return out


def find_descriptor(atlas, gens, bound: int = 3) -> HPrimeDescriptor:
    """Locate the unique atlas descriptor matching a generating set."""
    n = atlas["n"]
    rc = stratum_of_ideal(gens, n, bound)
    labels = tuple(sorted(minors_in_ideal(gens, n), key=lambda p: (len(p[0]), p)))
    hits = [d for d in atlas["descriptors"]
            if d.rc == rc and d.minors_full == labels]
    if len(hits) != 1:
        raise ValueError(f"{len(hits)} descriptors matched")
    return hits[0]


# ---------------------------------------------------------------------------
# distinctness via retractions
# ---------------------------------------------------------------------------


def _subgrid_algebra(n: int, kill):
    rows = [i for i in range(1, n + 1)
            if any((i, j) not in kill for j in range(1, n + 1))]
    cols = [j for j in range(1, n + 1)
            if any((i, j) not in kill for i in range(1, n + 1))]
    for i in rows:
        for j in cols:
            if (i, j) in kill:
                raise ValueError("kill set does not leave a rectangular grid")
    return algebra(len(rows), len(cols)), rows, cols


def _to_subgrid(x: AlgebraElement, sub, rows, cols) -> AlgebraElement:
    rmap = {i: k + 1 for k, i in enumerate(rows)}
    cmap = {j: k + 1 for k, j in enumerate(cols)}
    terms = {}
    for mono, c in x.terms.items():
        m2 = tuple(((rmap[i], cmap[j]), e) for (i, j), e in mono)
        terms[m2] = c
    return AlgebraElement(sub, terms)


def retraction_fingerprint(gens, n: int, kill, bound: int):
    """Canonical description of the graded components of the retracted ideal
    inside the surviving rectangular subalgebra."""
    kill = frozenset(kill)
    sub, rows, cols = _subgrid_algebra(n, kill)
    imgs = []
    for g in gens:
        img = retraction(kill, g)
        if not img.is_zero():
            imgs.append(_to_subgrid(img, sub, rows, cols))
    fp = []
    for bd in bases.bidegrees_up_to(sub, bound, min_total=1):
        comp = bases.ideal_component(sub, imgs, bd)
        fp.append((bd, comp.space.canonical_rows()))
    return tuple(fp)


THETA_MAIN = frozenset((i, j) for i in (1, 2, 3) for j in (1, 2, 3)
                       if i == 3 or j == 1)
THETA_MAIN_T = frozenset((i, j) for i in (1, 2, 3) for j in (1, 2, 3)
                         if i == 1 or j == 3)
THETA_ROW3 = frozenset((3, j) for j in (1, 2, 3))
THETA_ROW1 = frozenset((1, j) for j in (1, 2, 3))
THETA_COL1 = frozenset((i, 1) for i in (1, 2, 3))
THETA_COL3 = frozenset((i, 3) for i in (1, 2, 3))

RETRACTIONS_3 = (THETA_MAIN, THETA_MAIN_T, THETA_ROW3, THETA_COL3,
                 THETA_COL1, THETA_ROW1)


def separate_by_retraction(descriptors, kill, bound: int, n: int = 3):
    """Group descriptors by the retracted image of their full minor set;
    distinct groups certify distinct primes."""
    alg = algebra(n)
    groups = {}
    for d in descriptors:
        gens = [quantum_minor(alg, p) for p in d.minors_full]
        fp = retraction_fingerprint(gens, n, kill, bound)
        groups.setdefault(fp, []).append(d)
    return groups


def separation_partition(descriptors, bound: int = 3, n: int = 3,
                         retractions=RETRACTIONS_3):
    """Partition by the combined fingerprint across several retractions."""
    alg = algebra(n)
    groups = {}
    for d in descriptors:
        gens = [quantum_minor(alg, p) for p in d.minors_full]
        fp = tuple(retraction_fingerprint(gens, n, kill, bound)
                   for kill in retractions)
        groups.setdefault(fp, []).append(d)
    return groups
