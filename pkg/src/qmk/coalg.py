"""Bialgebra structure: comultiplication, counit, and tensor-square
arithmetic, plus the stratification map into localized step algebras.

Tensor elements keep both legs in reduced normal form, so zero-testing is a
map-emptiness check; that is what every pullback membership test reduces to.
"""

from __future__ import annotations

from .qalgebra import AlgebraElement, QuantumMatrixAlgebra, expand_word
from .scalars import LaurentScalar, ONE, ZERO


class TensorElement:
    """Finitely supported scalar combination of PBW monomial pairs."""

    __slots__ = ("left_algebra", "right_algebra", "terms")

    def __init__(self, left_alg, right_alg, terms: dict):
        self.left_algebra = left_alg
        self.right_algebra = right_alg
        self.terms = terms

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.left_algebra.key == other.left_algebra.key
                and self.right_algebra.key == other.right_algebra.key
                and self.terms == other.terms)

    def __add__(self, other):
        t = dict(self.terms)
        for k, c in other.terms.items():
            acc = t.get(k, ZERO) + c
            if acc:
                t[k] = acc
            elif k in t:
                del t[k]
        return TensorElement(self.left_algebra, self.right_algebra, t)

    def __neg__(self):
        return TensorElement(self.left_algebra, self.right_algebra,
                             {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        if isinstance(c, int):
            c = LaurentScalar.from_int(c)
        if c.is_zero():
            return TensorElement(self.left_algebra, self.right_algebra, {})
        return TensorElement(self.left_algebra, self.right_algebra,
                             {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        """Componentwise product (a@b)(c@d) = ac @ bd, no cross signs."""
        la, ra = self.left_algebra, self.right_algebra
        out = {}
        for (l1, r1), c1 in self.terms.items():
            for (l2, r2), c2 in other.terms.items():
                c12 = c1 * c2
                for ml, cl in la.multiply_monomials(l1, l2).items():
                    for mr, cr in ra.multiply_monomials(r1, r2).items():
                        key = (ml, mr)
                        acc = out.get(key, ZERO) + c12 * cl * cr
                        if acc:
                            out[key] = acc
                        elif key in out:
                            del out[key]
        return TensorElement(la, ra, out)

    def contract_left_counit(self) -> AlgebraElement:
        """(counit (x) id) applied to this tensor."""
        out = {}
        for (ml, mr), c in self.terms.items():
            if all(i == j for (i, j), _ in ml):
                acc = out.get(mr, ZERO) + c
                if acc:
                    out[mr] = acc
                elif mr in out:
                    del out[mr]
        return AlgebraElement(self.right_algebra, out)

    def contract_right_counit(self) -> AlgebraElement:
        """(id (x) counit) applied to this tensor."""
        out = {}
        for (ml, mr), c in self.terms.items():
            if all(i == j for (i, j), _ in mr):
                acc = out.get(ml, ZERO) + c
                if acc:
                    out[ml] = acc
                elif ml in out:
                    del out[ml]
        return AlgebraElement(self.left_algebra, out)

    def bicomponents(self):
        """Split into bihomogeneous tensor components keyed by the pair of
        bidegrees (left, right)."""
        la, ra = self.left_algebra, self.right_algebra
        probe_l = AlgebraElement(la, {})
        probe_r = AlgebraElement(ra, {})
        comps = {}
        for (ml, mr), c in self.terms.items():
            dl = probe_l.monomial_bidegree(ml)
            dr = probe_r.monomial_bidegree(mr)
            comps.setdefault((dl, dr), {})[(ml, mr)] = c
        return {k: TensorElement(la, ra, t) for k, t in comps.items()}

    def __repr__(self):
        from .qalgebra import monomial_text
        if not self.terms:
            return "<0 (x) 0>"
        bits = []
        for (ml, mr), c in sorted(self.terms.items(), key=lambda t: (expand_word(t[0][0]), expand_word(t[0][1]))):
            bits.append(f"({c.text()})*{monomial_text(ml)}(x){monomial_text(mr)}")
        return "<" + " + ".join(bits) + ">"


def tensor_one(alg: QuantumMatrixAlgebra) -> TensorElement:
    return TensorElement(alg, alg, {((), ()): ONE})


def delta_monomial(alg: QuantumMatrixAlgebra, mono) -> TensorElement:
    """Comultiplication of a single PBW monomial (cached per algebra)."""
    cached = alg._delta_cache.get(mono)
    if cached is not None:
        return cached
    out = tensor_one(alg)
    nmid = alg.ncols if alg.nrows == alg.ncols else None
    if nmid is None:
        raise ValueError("comultiplication requires a square matrix algebra")
    for (i, j) in expand_word(mono):
        step = TensorElement(alg, alg, {
            ((((i, l), 1),), (((l, j), 1),)): ONE for l in range(1, nmid + 1)
        })
        out = out * step
    alg._delta_cache[mono] = out
    return out


def delta(x: AlgebraElement) -> TensorElement:
    """Comultiplication: X[i,j] -> sum_l X[i,l] (x) X[l,j], extended as an
    algebra morphism to the tensor square."""
    alg = x.algebra
    out = TensorElement(alg, alg, {})
    for mono, c in x.terms.items():
        out = out + delta_monomial(alg, mono).scale(c)
    return out


def counit(x: AlgebraElement) -> LaurentScalar:
    """Counit: X[i,j] -> delta_ij, extended as an algebra morphism."""
    out = ZERO
    for mono, c in x.terms.items():
        if all(i == j for (i, j), _ in mono):
            out = out + c
    return out


def beta_map(rc, x: AlgebraElement):
    """Composite of comultiplication with the two step-algebra quotient maps;
    the image lives in the tensor product of the localized step algebras."""
    from . import strata

    return strata.beta_image(rc, x)
