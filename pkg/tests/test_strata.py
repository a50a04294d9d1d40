import itertools

import pytest

from qmk.bases import in_ideal
from qmk.minors import all_minor_pairs, minor_label, parse_minor_label, quantum_minor
from qmk.qalgebra import algebra
from qmk.scalars import ONE, QINV
from qmk.strata import (
    RCPair,
    UnsupportedScaleError,
    beta_image,
    build_atlas,
    catalog_schematic,
    enumerate_rc,
    find_descriptor,
    hspec_catalog,
    k_rc_generators,
    kernel_generation_check,
    minors_in_ideal,
    minors_in_pullback,
    prune_labels,
    render_schematic,
    section72_delta_inclusion,
    section72_ideal,
    separate_by_retraction,
    step_algebra,
    step_normal_form,
    stratum_of_ideal,
    theorem66_delta_inclusion,
    theorem66_generators,
    THETA_MAIN,
    THETA_MAIN_T,
)

A2 = algebra(2)
A3 = algebra(3)


def test_enumerate_rc_counts():
    assert len(enumerate_rc(1)) == 2
    assert len(enumerate_rc(2)) == 6
    assert len(enumerate_rc(3)) == 20


def test_k_rc_generators():
    everything = {p for s in (1, 2, 3) for p in all_minor_pairs(3, s)}
    assert k_rc_generators(RCPair((), ()), 3) == everything
    assert k_rc_generators(RCPair((1, 2, 3), (1, 2, 3)), 3) == set()
    got = k_rc_generators(RCPair((2,), (1,)), 3)
    want = {p for s in (2, 3) for p in all_minor_pairs(3, s)}
    want |= {((1,), (j,)) for j in (1, 2, 3)}
    assert got == want


# Figure-style grids: rows joined by '/', cells 0 (zero), + (plain), i (inverted)
EXPECTED_PATTERNS = {
    ("+", (1, 2, 3)): "i00/+i0/++i",
    ("+", (1, 2)): "i00/+i0/++0",
    ("+", (1, 3)): "i00/+00/+i0",
    ("+", (2, 3)): "000/i00/+i0",
    ("+", (1,)): "i00/+00/+00",
    ("+", (2,)): "000/i00/+00",
    ("+", (3,)): "000/000/i00",
    ("+", ()): "000/000/000",
    ("-", (1, 2, 3)): "i++/0i+/00i",
    ("-", (1, 2)): "i++/0i+/000",
    ("-", (1, 3)): "i++/00i/000",
    ("-", (2, 3)): "0i+/00i/000",
    ("-", (1,)): "i++/000/000",
    ("-", (2,)): "0i+/000/000",
    ("-", (3,)): "00i/000/000",
    ("-", ()): "000/000/000",
}


def grid_string(spec):
    code = {"zero": "0", "plain": "+", "inverted": "i"}
    return "/".join(
        "".join(code[spec.state((i, j))] for j in range(1, spec.n + 1))
        for i in range(1, spec.n + 1))


def test_step_algebra_patterns():
    for (side, seq), want in EXPECTED_PATTERNS.items():
        assert grid_string(step_algebra(seq, side, 3)) == want, (side, seq)


def test_catalog_sizes_figure():
    sizes = []
    for seq in [(1, 2, 3), (1, 2), (1, 3), (2, 3), (1,), (2,), (3,), ()]:
        sizes.append(len(hspec_catalog(step_algebra(seq, "-", 3))))
    assert sizes == [6, 6, 4, 2, 4, 2, 1, 1]
    plus_sizes = []
    for seq in [(1, 2, 3), (1, 2), (1, 3), (2, 3), (1,), (2,), (3,), ()]:
        plus_sizes.append(len(hspec_catalog(step_algebra(seq, "+", 3))))
    assert plus_sizes == sizes


def test_step_normal_form_elimination():
    spec = step_algebra((1, 2, 3), "-", 3)
    cat = hspec_catalog(spec)
    sq = [qp for qp in cat if qp.relation is not None]
    assert len(sq) == 1
    qp = sq[0]
    assert qp.relation.label == ((1, 2), (2, 3))
    got = step_normal_form(qp, (((1, 3), 1),))
    want = {m: QINV * c for m, c in
            spec.normalize((((1, 2), 1), ((2, 3), 1), ((2, 2), -1))).items()}
    assert got == want
    # the minor itself reduces to zero in the quotient
    from qmk.scalars import ZERO

    minor = quantum_minor(A3, ((1, 2), (2, 3)))
    reduced = {}
    for mono, c in minor.terms.items():
        for m2, c2 in qp.reduce_element(spec.normalize(mono)).items():
            reduced[m2] = reduced.get(m2, ZERO) + c * c2
    assert not any(v for v in reduced.values())


def test_step_normal_form_plain_reorder():
    spec = step_algebra((1, 2), "-", 3)
    qp = hspec_catalog(spec)[0]  # zero ideal
    got = step_normal_form(qp, (((1, 3), 1), ((1, 2), 1)))
    # same row: Z13 Z12 = q^-1 Z12 Z13
    assert got == {(((1, 2), 1), ((1, 3), 1)): QINV}


def test_step_normal_form_errors():
    spec = step_algebra((1, 2), "-", 3)
    cat = hspec_catalog(spec)
    killed = next(qp for qp in cat if qp.qid == "13")
    with pytest.raises(ValueError):
        step_normal_form(killed, (((1, 3), 1),))
    with pytest.raises(ValueError):
        step_normal_form(cat[0], (((3, 1), 1),))  # pattern-zero cell
    with pytest.raises(ValueError):
        step_normal_form(cat[0], (((1, 3), -1),))  # not inverted


def test_beta_map_examples():
    from qmk.coalg import beta_map

    rc = RCPair((1,), (1,))
    t = beta_map(rc, A3.gen(1, 1))
    assert t.terms == {((((1, 1), 1),), (((1, 1), 1),)): ONE}
    rc2 = RCPair((2,), (1,))
    assert beta_map(rc2, A3.gen(1, 1)).is_zero()
    rc0 = RCPair((), ())
    for (i, j) in A3.all_gens():
        assert beta_map(rc0, A3.gen(i, j)).is_zero()


def test_minors_in_pullback_examples():
    zero = lambda spec: hspec_catalog(spec)[0]
    rc0 = RCPair((), ())
    got = minors_in_pullback(rc0, zero(step_algebra((), "+", 3)),
                             zero(step_algebra((), "-", 3)), 3)
    assert got == {p for s in (1, 2, 3) for p in all_minor_pairs(3, s)}

    rc1 = RCPair((1,), (1,))
    got = minors_in_pullback(rc1, zero(step_algebra((1,), "+", 3)),
                             zero(step_algebra((1,), "-", 3)), 3)
    assert {p for s in (2, 3) for p in all_minor_pairs(3, s)} <= got
    assert ((1,), (1,)) not in got
    assert got == {p for s in (2, 3) for p in all_minor_pairs(3, s)}

    rc3 = RCPair((1, 2, 3), (1, 2, 3))
    got = minors_in_pullback(rc3, zero(step_algebra((1, 2, 3), "+", 3)),
                             zero(step_algebra((1, 2, 3), "-", 3)), 3)
    assert got == set()


def test_atlas_n1():
    atlas = build_atlas(1)
    assert atlas["total"] == 2
    assert atlas["by_t"] == {0: 1, 1: 1}


def test_atlas_n2_counts_and_base_catalog():
    atlas = build_atlas(2)
    assert atlas["total"] == 14
    assert atlas["by_t"] == {2: 4, 1: 9, 0: 1}
    # independent validation of the stored 2x2 base catalog: the atlas
    # descriptors biject with the 13 closure-closed generator subsets + det
    from qmk.strata import _BASE_SUBSETS

    base_ideals = [[A2.gen(i, j) for (i, j) in sub] for sub in _BASE_SUBSETS]
    base_ideals.append([quantum_minor(A2, ((1, 2), (1, 2)))])
    expected_label_sets = set()
    for gens in base_ideals:
        expected_label_sets.add(tuple(sorted(minors_in_ideal(gens, 2))))
    got_label_sets = {tuple(sorted(d.minors_full)) for d in atlas["descriptors"]}
    assert got_label_sets == expected_label_sets
    assert len(got_label_sets) == 14


def test_atlas_n3_counts():
    atlas = build_atlas(3)
    assert atlas["total"] == 230
    assert atlas["by_t"] == {3: 36, 2: 144, 1: 49, 0: 1}


def test_atlas_n4_unsupported():
    with pytest.raises(UnsupportedScaleError):
        build_atlas(4)


def test_atlas_t1_sets_include_25_example():
    atlas = build_atlas(3)
    want = {parse_minor_label(s) for s in
            ["[12|12]", "[13|12]", "[23|12]", "[1|3]", "[2|3]", "[3|3]"]}
    hits = [d for d in atlas["descriptors"] if set(d.minors_reduced) == want]
    assert len(hits) == 1
    assert hits[0].rc.t == 1


def test_t0_descriptor_reduces_to_bullets():
    atlas = build_atlas(3)
    d = next(d for d in atlas["descriptors"] if d.rc.t == 0)
    assert d.minors_reduced == tuple(
        sorted((((i,), (j,)) for i in (1, 2, 3) for j in (1, 2, 3))))
    assert d.schematic == "●●●/●●●/●●●"


def test_stratum_counts_t2_product():
    # the three length-2 minus catalogs have 6+4+2 = 12 entries, so the t=2
    # block of the atlas is 12 x 12
    sizes = [len(hspec_catalog(step_algebra(c, "-", 3)))
             for c in [(1, 2), (1, 3), (2, 3)]]
    assert sum(sizes) == 12
    atlas = build_atlas(3)
    assert atlas["by_t"][2] == 144


def test_theorem66_generators_examples():
    got = theorem66_generators(2, 2, 2, "+", "-", 3)
    want = set(all_minor_pairs(3, 3))
    want |= {(I, J) for (I, J) in all_minor_pairs(3, 2) if set(I) <= {2, 3}}
    want |= {(I, J) for (I, J) in all_minor_pairs(3, 2) if set(J) <= {1, 2}}
    assert got == want
    # boundary t = n
    got = theorem66_generators(3, 3, 3, "-", "-", 3)
    assert got == set(all_minor_pairs(3, 3))
    got = theorem66_generators(1, 1, 1, "-", "-", 3)
    want = set(all_minor_pairs(3, 2))
    want |= {((1,), (j,)) for j in (1, 2, 3)}
    want |= {((i,), (1,)) for i in (1, 2, 3)}
    assert got == want


def test_section72_data():
    data = section72_ideal()
    assert ((2, 3), (1, 3)) in data["P"]
    assert ((1, 2), (1, 3)) not in data["P"]
    assert ((1,), (3,)) in data["P"]
    assert section72_delta_inclusion()


def test_theorem66_delta_inclusion_t2():
    for sp in "+-":
        for sq in "+-":
            assert theorem66_delta_inclusion(2, 2, 2, sp, sq, 3)


def test_render_schematic():
    got = render_schematic(2, {((1,), (2,)), ((2,), (2,))})
    assert got == "○●/○●"
    assert render_schematic(2, set()) == "○○/○○"
    got = render_schematic(3, {((1, 2), (1, 2)), ((1, 3), (1, 2)), ((2, 3), (1, 2)),
                               ((1,), (3,)), ((2,), (3,)), ((3,), (3,))})
    assert got == "○○●/○○●/○○● □[12|12] □[13|12] □[23|12]"
    assert render_schematic(3, {((1, 2, 3), (1, 2, 3))}) == "○○○/○○○/○○○ ◇"


def test_catalog_schematic_asterisks():
    spec = step_algebra((1, 2, 3), "-", 3)
    cat = hspec_catalog(spec)
    assert catalog_schematic(cat[0]) == "*○○/·*○/··*"
    sq = next(qp for qp in cat if qp.relation is not None)
    assert catalog_schematic(sq) == "*○○/·*○/··* □[12|23]"


def test_separation_theta_classes():
    atlas = build_atlas(3)
    t3 = [d for d in atlas["descriptors"] if d.rc.t == 3]
    groups = separate_by_retraction(t3, THETA_MAIN, 3)
    assert len(groups) == 6
    assert sorted(len(v) for v in groups.values()) == [6] * 6
    for ds in groups.values():
        assert len({d.qminus_id for d in ds}) == 1
    groups_t = separate_by_retraction(t3, THETA_MAIN_T, 3)
    assert len(groups_t) == 6
    for ds in groups_t.values():
        assert len({d.qplus_id for d in ds}) == 1


def test_find_descriptor_det():
    atlas = build_atlas(3)
    det = quantum_minor(A3, ((1, 2, 3), (1, 2, 3)))
    d = find_descriptor(atlas, [det])
    assert d.rc == RCPair((1, 2), (1, 2))
    assert d.qplus_id == "0" and d.qminus_id == "0"
    assert d.minors_full == (((1, 2, 3), (1, 2, 3)),)
    assert d.schematic == "○○○/○○○/○○○ ◇"
    assert kernel_generation_check(d, 3, 2) == []


def test_prune_labels():
    full = {p for s in (1, 2, 3) for p in all_minor_pairs(3, s)}
    reduced = prune_labels(3, full)
    assert set(reduced) == {((i,), (j,)) for i in (1, 2, 3) for j in (1, 2, 3)}
