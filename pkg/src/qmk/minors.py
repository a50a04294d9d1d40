"""Quantum minors: permutation-sum expansions, Laplace expansions along a
column, scalar-commutation tests, and ordered products over bitableaux.

A minor [I|J] is the signed sum over permutations s of (-q)^inv(s) times the
row-ordered product X[i_1, j_s(1)] ... X[i_t, j_s(t)]; since row indices
strictly increase, every term is already a PBW monomial.
"""

from __future__ import annotations

import itertools

from .qalgebra import AlgebraElement, QuantumMatrixAlgebra
from .scalars import LaurentScalar, ZERO

IndexSet = tuple  # strictly increasing ints
IndexPair = tuple  # (IndexSet, IndexSet) of equal size


def index_pair(I, J) -> IndexPair:
    I, J = tuple(I), tuple(J)
    if list(I) != sorted(set(I)) or list(J) != sorted(set(J)):
        raise ValueError(f"index sets must be strictly increasing: {I}, {J}")
    if len(I) != len(J):
        raise ValueError(f"index sets must have equal size: {I}, {J}")
    return (I, J)


def minor_label(pair: IndexPair) -> str:
    I, J = pair
    return "[{}|{}]".format("".join(map(str, I)), "".join(map(str, J)))


def parse_minor_label(text: str) -> IndexPair:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]") and "|" in body):
        raise ValueError(f"malformed minor label {text!r}")
    left, right = body[1:-1].split("|", 1)
    return index_pair(tuple(int(ch) for ch in left), tuple(int(ch) for ch in right))


def all_minor_pairs(n: int, size: int):
    """All (I, J) with |I| = |J| = size inside {1..n}."""
    subs = list(itertools.combinations(range(1, n + 1), size))
    return [(I, J) for I in subs for J in subs]


def quantum_minor(alg: QuantumMatrixAlgebra, pair: IndexPair) -> AlgebraElement:
    """The quantum minor [I|J]; [ | ] is 1."""
    I, J = index_pair(*pair)
    for i in I:
        if not 1 <= i <= alg.nrows:
            raise ValueError(f"row index {i} out of range")
    for j in J:
        if not 1 <= j <= alg.ncols:
            raise ValueError(f"column index {j} out of range")
    cached = alg._minor_cache.get((I, J))
    if cached is not None:
        return cached
    t = len(I)
    terms = {}
    for sigma in itertools.permutations(range(t)):
        inv = _inversions(sigma)
        mono = tuple(((I[r], J[sigma[r]]), 1) for r in range(t))
        coeff = LaurentScalar({inv * alg.qexp: (-1) ** inv})
        terms[mono] = terms.get(mono, ZERO) + coeff
    out = AlgebraElement(alg, {m: c for m, c in terms.items() if c})
    alg._minor_cache[(I, J)] = out
    return out


def _inversions(sigma) -> int:
    return sum(
        1
        for a in range(len(sigma))
        for b in range(a + 1, len(sigma))
        if sigma[a] > sigma[b]
    )


def laplace_expand(alg: QuantumMatrixAlgebra, pair: IndexPair, column_position: int) -> AlgebraElement:
    """Expansion of [I|J] along the column in position ``column_position`` of J
    (1-based): sum over s of (-q)^(pos-s) [I\\i_s | J\\j_pos] X[i_s, j_pos].

    Equals quantum_minor(pair); 1x1 minors expand to the bare generator.
    """
    I, J = index_pair(*pair)
    t = len(I)
    if not 1 <= column_position <= t:
        raise ValueError(f"column position {column_position} out of range for {minor_label(pair)}")
    jc = J[column_position - 1]
    Jrest = tuple(j for j in J if j != jc)
    out = alg.zero()
    for s in range(1, t + 1):
        i_s = I[s - 1]
        Irest = tuple(i for i in I if i != i_s)
        sub = quantum_minor(alg, (Irest, Jrest))
        k = column_position - s
        coeff = LaurentScalar({k * alg.qexp: (-1) ** (k % 2)})
        out = out + (sub * alg.gen(i_s, jc)).scale(coeff)
    return out


def scalar_commutation(u: AlgebraElement, g) -> LaurentScalar | None:
    """The scalar c with u*X_g == c * X_g*u, or None if no such scalar exists.

    u must be nonzero and bihomogeneous.
    """
    if u.is_zero():
        raise ValueError("scalar commutation is undefined for the zero element")
    u.bidegree()  # raises on non-bihomogeneous input
    alg = u.algebra
    xg = alg.gen(*g)
    left = u * xg
    right = xg * u
    mono, c_right = next(iter(right.terms.items()))
    c_left = left.terms.get(mono)
    if c_left is None:
        return None
    # candidate scalar must be a unit (monomial) for exact comparison
    if not c_right.is_monomial():
        num, den = c_left, c_right
        try:
            lam = num.exact_div(den)
        except ArithmeticError:
            return None
    else:
        lam = c_left * c_right.inverse()
    if left == right.scale(lam):
        return lam
    return None


def bitableau_product(alg: QuantumMatrixAlgebra, rows) -> AlgebraElement:
    """Ordered product of row minors [I_1|J_1][I_2|J_2]...

    ``rows`` is an iterable of index pairs (top row first); the empty product
    is 1.  Accepts a Bitableau as well.
    """
    if hasattr(rows, "row_pairs"):
        rows = rows.row_pairs()
    out = alg.one()
    for pair in rows:
        out = out * quantum_minor(alg, pair)
    return out
