"""Index-set orders, bitableaux and their four classes, canonical fillings,
weight statistics, enumeration by bicontent, and the RSK correspondence.

Row and column orders compare index sets of possibly different sizes; the
four bitableau classes are characterized by chain conditions on the row index
sets, so classification here works on the set view of each row (the printed
entry order inside a row never changes the associated product of minors).
"""

from __future__ import annotations

import itertools
from collections import Counter

CLASSES = ("preferred", "antipreferred", "standard", "antistandard")


def row_leq(a, b) -> bool:
    """a <=_r b: compare descending lists componentwise, |a| >= |b|."""
    da = sorted(a, reverse=True)
    db = sorted(b, reverse=True)
    if len(da) < len(db):
        return False
    return all(x >= y for x, y in zip(da, db))


def col_leq(a, b) -> bool:
    """a <=_c b: compare ascending lists componentwise, |a| >= |b|."""
    ca = sorted(a)
    cb = sorted(b)
    if len(ca) < len(cb):
        return False
    return all(x <= y for x, y in zip(ca, cb))


def pair_leq(p, q) -> bool:
    """(I,J) <= (I',J') iff I <=_r I' and J <=_c J'."""
    return row_leq(p[0], q[0]) and col_leq(p[1], q[1])


def rlex_less(u, v) -> bool:
    """Reverse lexicographic: strictly smaller at the last differing index."""
    if len(u) != len(v):
        raise ValueError("length mismatch")
    for a, b in zip(reversed(u), reversed(v)):
        if a != b:
            return a < b
    return False


class Tableau:
    """Rows of integer entries with weakly decreasing row lengths.

    Entries within a row are stored in the given order; general tableaux may
    repeat entries (as RSK outputs do), while *allowable* tableaux have
    distinct entries in every row.
    """

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        for k in range(len(rows) - 1):
            if len(rows[k]) < len(rows[k + 1]):
                raise ValueError(f"row lengths must weakly decrease: {rows}")
        if rows and not rows[-1]:
            rows = tuple(r for r in rows if r)
        self.rows = rows

    @property
    def shape(self):
        return tuple(len(r) for r in self.rows)

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    def content(self):
        """Entry multiset as a sorted tuple."""
        return tuple(sorted(x for r in self.rows for x in r))

    def row_sets(self):
        return tuple(tuple(sorted(r)) for r in self.rows)

    def is_allowable(self) -> bool:
        return all(len(set(r)) == len(r) for r in self.rows)

    def entry(self, i, j):
        return self.rows[i][j]

    def transpose(self) -> "Tableau":
        if not self.rows:
            return Tableau(())
        w = len(self.rows[0])
        cols = []
        for j in range(w):
            cols.append(tuple(r[j] for r in self.rows if len(r) > j))
        return Tableau(cols)

    def is_increasing(self) -> bool:
        """Strictly increasing rows, nondecreasing columns."""
        for r in self.rows:
            if any(r[k] >= r[k + 1] for k in range(len(r) - 1)):
                return False
        for a, b in zip(self.rows, self.rows[1:]):
            if any(a[k] > b[k] for k in range(len(b))):
                return False
        return True

    def is_decreasing(self) -> bool:
        """Strictly decreasing rows, nonincreasing columns."""
        for r in self.rows:
            if any(r[k] <= r[k + 1] for k in range(len(r) - 1)):
                return False
        for a, b in zip(self.rows, self.rows[1:]):
            if any(a[k] < b[k] for k in range(len(b))):
                return False
        return True

    def __eq__(self, other):
        return isinstance(other, Tableau) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Tableau({list(map(list, self.rows))})"


class Bitableau:
    """A pair of same-shape tableaux (T, T')."""

    __slots__ = ("left", "right", "_classes")

    def __init__(self, left, right):
        if not isinstance(left, Tableau):
            left = Tableau(left)
        if not isinstance(right, Tableau):
            right = Tableau(right)
        if left.shape != right.shape:
            raise ValueError(f"shape mismatch: {left.shape} vs {right.shape}")
        self.left = left
        self.right = right
        self._classes = None

    @property
    def shape(self):
        return self.left.shape

    def is_allowable(self) -> bool:
        return self.left.is_allowable() and self.right.is_allowable()

    def row_pairs(self):
        """Rows as index pairs (ascending sets), top to bottom."""
        return tuple(zip(self.left.row_sets(), self.right.row_sets()))

    def classes(self) -> frozenset:
        """The subset of the four classes whose chain conditions hold."""
        if self._classes is None:
            I = self.left.row_sets()
            J = self.right.row_sets()
            ir = _chain(I, row_leq)
            ic = _chain(I, col_leq)
            jr = _chain(J, row_leq)
            jc = _chain(J, col_leq)
            out = set()
            if ir and jc:
                out.add("preferred")
            if ic and jr:
                out.add("antipreferred")
            if ic and jc:
                out.add("standard")
            if ir and jr:
                out.add("antistandard")
            self._classes = frozenset(out)
        return self._classes

    def bicontent(self):
        return (self.left.content(), self.right.content())

    def canonical(self) -> "Bitableau":
        """Same row sets with all rows listed ascending."""
        return Bitableau(self.left.row_sets(), self.right.row_sets())

    def __eq__(self, other):
        return (isinstance(other, Bitableau)
                and self.left == other.left and self.right == other.right)

    def __hash__(self):
        return hash((self.left, self.right))

    def text(self) -> str:
        if not self.left.rows:
            return "( | )"
        return "\n".join(
            "({}|{})".format("".join(map(str, a)), "".join(map(str, b)))
            for a, b in zip(self.left.rows, self.right.rows))

    def __repr__(self):
        return f"Bitableau({list(map(list, self.left.rows))}, {list(map(list, self.right.rows))})"


def _chain(sets, leq) -> bool:
    return all(leq(sets[k], sets[k + 1]) for k in range(len(sets) - 1))


def classify(b: Bitableau) -> frozenset:
    return b.classes()


# ---------------------------------------------------------------------------
# canonical fillings and weights
# ---------------------------------------------------------------------------


def mu(t: Tableau) -> Tableau:
    """Each row of length l refilled with 1..l ascending."""
    return Tableau(tuple(tuple(range(1, len(r) + 1)) for r in t.rows))


def mu_prime(t: Tableau) -> Tableau:
    """Each row of length l refilled with l..1 descending."""
    return Tableau(tuple(tuple(range(len(r), 0, -1)) for r in t.rows))


def mu_sigma(sigma, t: Tableau) -> Tableau:
    """Each row of length l refilled with sigma(1)..sigma(l), sorted ascending.

    ``sigma`` is a sequence with sigma[k-1] = image of k (a permutation of 1..n).
    """
    rows = []
    for r in t.rows:
        vals = sorted(sigma[k] for k in range(len(r)))
        rows.append(tuple(vals))
    return Tableau(rows)


def rho_bar(t: Tableau, n: int):
    """(rho_1, ..., rho_n): rho_l counts rows of length >= l."""
    return tuple(sum(1 for r in t.rows if len(r) >= l) for l in range(1, n + 1))


def bicontent(b: Bitableau):
    return b.bicontent()


def content_to_weight(content, n: int):
    c = Counter(content)
    return tuple(c.get(k, 0) for k in range(1, n + 1))


def weight_to_content(weight):
    out = []
    for k, m in enumerate(weight, start=1):
        out.extend([k] * m)
    return tuple(out)


# ---------------------------------------------------------------------------
# enumeration by class and bicontent
# ---------------------------------------------------------------------------


def _partitions(total: int, max_part: int):
    """Weakly decreasing positive parts summing to total, parts <= max_part."""
    if total == 0:
        yield ()
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def _set_chains(sizes, content, leq):
    """Sequences of index sets with the given sizes, multiset union equal to
    ``content``, consecutive rows chained by ``leq``."""
    results = []

    def rec(idx, remaining, prev, acc):
        if idx == len(sizes):
            if not remaining:
                results.append(tuple(acc))
            return
        size = sizes[idx]
        support = sorted(remaining)
        for cand in itertools.combinations(support, size):
            if prev is not None and not leq(prev, cand):
                continue
            rec(idx + 1, remaining - Counter(cand), cand, acc + [cand])

    rec(0, Counter(content), None, [])
    return results


_CLASS_ORDERS = {
    "preferred": (row_leq, col_leq),
    "antipreferred": (col_leq, row_leq),
    "standard": (col_leq, col_leq),
    "antistandard": (row_leq, row_leq),
}


def enumerate_bitableaux(klass: str, bc, n: int):
    """All bitableaux of the given class with the given bicontent.

    ``bc`` is a pair of entry multisets (iterables).  Rows are returned in
    ascending entry order; no duplicates.
    """
    if klass not in _CLASS_ORDERS:
        raise ValueError(f"unknown class {klass!r}")
    left_leq, right_leq = _CLASS_ORDERS[klass]
    R = tuple(sorted(bc[0]))
    C = tuple(sorted(bc[1]))
    if len(R) != len(C):
        raise ValueError("bicontent sides must have equal total multiplicity")
    if any(x < 1 or x > n for x in R + C):
        raise ValueError("bicontent entries out of range")
    total = len(R)
    out = []
    for shape in _partitions(total, n):
        lefts = _set_chains(shape, R, left_leq)
        if not lefts:
            continue
        rights = _set_chains(shape, C, right_leq)
        for L in lefts:
            for Rt in rights:
                out.append(Bitableau(L, Rt))
    return out


# ---------------------------------------------------------------------------
# RSK
# ---------------------------------------------------------------------------


def _row_insert(rows, x):
    """Bump x into the tableau (list of lists); returns the new cell (r, c)."""
    r = 0
    while True:
        if r == len(rows):
            rows.append([x])
            return (r, 0)
        row = rows[r]
        # leftmost entry strictly greater than x
        pos = None
        for k, y in enumerate(row):
            if y > x:
                pos = k
                break
        if pos is None:
            row.append(x)
            return (r, len(row) - 1)
        row[pos], x = x, row[pos]
        r += 1


def rsk(pairs):
    """RSK on a two-rowed array in lexicographic column order.

    Returns (insertion tableau, recording tableau): same shape, nondecreasing
    rows, strictly increasing columns; the recording tableau carries the top
    entries, the insertion tableau the bottom ones.
    """
    pairs = [tuple(p) for p in pairs]
    if pairs != sorted(pairs):
        raise ValueError("columns must be in lexicographic order")
    p_rows: list[list[int]] = []
    q_rows: list[list[int]] = []
    for i, j in pairs:
        r, c = _row_insert(p_rows, j)
        if r == len(q_rows):
            q_rows.append([])
        q_rows[r].append(i)
        assert len(q_rows[r]) - 1 == c
    return Tableau(p_rows), Tableau(q_rows)


def rsk_inverse(p: Tableau, q: Tableau):
    """Inverse of ``rsk``: recover the lex-ordered two-rowed array."""
    if p.shape != q.shape:
        raise ValueError("shape mismatch")
    p_rows = [list(r) for r in p.rows]
    q_rows = [list(r) for r in q.rows]
    out = []
    while any(p_rows):
        # largest recording entry; among equals, the rightmost column was last
        best = None
        for r, row in enumerate(q_rows):
            if not row:
                continue
            cand = (row[-1], r)
            if best is None or cand[0] > best[0] or (cand[0] == best[0] and len(row) > len(q_rows[best[1]])):
                best = cand
        i, r = best
        q_rows[r].pop()
        x = p_rows[r].pop()
        for rr in range(r - 1, -1, -1):
            row = p_rows[rr]
            pos = None
            for k in range(len(row) - 1, -1, -1):
                if row[k] < x:
                    pos = k
                    break
            row[pos], x = x, row[pos]
        out.append((i, x))
        p_rows = [row for row in p_rows if row] or p_rows
        q_rows = [row for row in q_rows if row] or q_rows
    out.reverse()
    return out
