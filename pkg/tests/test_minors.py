import itertools

import pytest

from qmk.coalg import delta, tensor_one
from qmk.minors import (
    all_minor_pairs,
    bitableau_product,
    index_pair,
    laplace_expand,
    minor_label,
    parse_minor_label,
    quantum_minor,
    scalar_commutation,
)
from qmk.qalgebra import algebra, q_inverse_iso, retraction, transpose
from qmk.scalars import ONE, Q, QINV

A2 = algebra(2)
A3 = algebra(3)


def test_2x2_determinant():
    det = quantum_minor(A2, ((1, 2), (1, 2)))
    want = A2.gen(1, 1) * A2.gen(2, 2) - (A2.gen(1, 2) * A2.gen(2, 1)).scale(Q)
    assert det == want


def test_1x1_and_empty():
    assert quantum_minor(A3, ((1,), (3,))) == A3.gen(1, 3)
    assert quantum_minor(A3, ((), ())) == A3.one()


def test_label_roundtrip():
    p = index_pair((1, 2), (2, 3))
    assert minor_label(p) == "[12|23]"
    assert parse_minor_label("[12|23]") == p


def test_delta_splits_2x2_determinant():
    # the comultiplication of [12|12] in the 2x2 algebra is its split tensor
    det = quantum_minor(A2, ((1, 2), (1, 2)))
    got = delta(det)
    want = tensor_one(A2)
    want = want * want  # 1(x)1
    lhs = {}
    for ml, cl in det.terms.items():
        for mr, cr in det.terms.items():
            lhs[(ml, mr)] = cl * cr
    assert got.terms == lhs


def test_laplace_expansion_matches_minor_everywhere():
    for size in (1, 2, 3):
        for pair in all_minor_pairs(3, size):
            m = quantum_minor(A3, pair)
            for pos in range(1, size + 1):
                assert laplace_expand(A3, pair, pos) == m


def test_laplace_third_column_structure():
    # [123|123] = [12|12] X33 - q [13|12] X23 + q^2 [23|12] X13
    got = laplace_expand(A3, ((1, 2, 3), (1, 2, 3)), 3)
    want = (
        quantum_minor(A3, ((1, 2), (1, 2))) * A3.gen(3, 3)
        - (quantum_minor(A3, ((1, 3), (1, 2))) * A3.gen(2, 3)).scale(Q)
        + (quantum_minor(A3, ((2, 3), (1, 2))) * A3.gen(1, 3)).scale(Q * Q)
    )
    assert got == want
    # modulo X13 only the first two summands survive
    kill = {(1, 3)}
    reduced = retraction(kill, got)
    want_mod = retraction(kill, quantum_minor(A3, ((1, 2), (1, 2))) * A3.gen(3, 3)
                          - (quantum_minor(A3, ((1, 3), (1, 2))) * A3.gen(2, 3)).scale(Q))
    assert reduced == want_mod


def test_laplace_position_out_of_range():
    with pytest.raises(ValueError):
        laplace_expand(A2, ((1, 2), (1, 2)), 3)


def test_transpose_swaps_index_sets():
    for size in (1, 2, 3):
        for (I, J) in all_minor_pairs(3, size):
            assert transpose(quantum_minor(A3, (I, J))) == quantum_minor(A3, (J, I))


def test_q_inverse_reflects_index_sets():
    A3i = algebra(3, 3, -1)
    w0 = lambda I: tuple(sorted(4 - i for i in I))
    for size in (1, 2, 3):
        for (I, J) in all_minor_pairs(3, size):
            assert q_inverse_iso(quantum_minor(A3, (I, J))) == quantum_minor(A3i, (w0(I), w0(J)))


def test_3x3_determinant_central():
    det = quantum_minor(A3, ((1, 2, 3), (1, 2, 3)))
    for (i, j) in A3.all_gens():
        g = A3.gen(i, j)
        assert det * g == g * det


def test_scalar_commutation_examples():
    lam = scalar_commutation(A2.gen(1, 1), (1, 2))
    assert lam == Q  # X11 X12 = q X12 X11
    assert scalar_commutation(A2.gen(1, 1), (2, 2)) is None
    for pair in (((1, 2), (2, 3)), ((2, 3), (1, 2))):
        u = quantum_minor(A3, pair)
        for g in A3.all_gens():
            assert scalar_commutation(u, g) is not None
    with pytest.raises(ValueError):
        scalar_commutation(A2.zero(), (1, 1))


def test_bitableau_product():
    one_row = bitableau_product(A2, [((1, 2), (1, 2))])
    assert one_row == quantum_minor(A2, ((1, 2), (1, 2)))
    assert bitableau_product(A2, []) == A2.one()
    two = bitableau_product(A2, [((1, 2), (1, 2)), ((1,), (1,))])
    assert two == quantum_minor(A2, ((1, 2), (1, 2))) * A2.gen(1, 1)
    assert two.bidegree() == ((2, 1), (2, 1))
