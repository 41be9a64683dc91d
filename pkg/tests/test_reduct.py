import pytest

from warel import reduct
from warel.core import mask_of
from warel.suitable import build_suitable
from warel.trails import build_universe


@pytest.fixture(scope="module")
def s2(a2):
    return build_suitable(a2)


@pytest.fixture(scope="module")
def uni2(s2):
    return build_universe(s2, 3)


@pytest.fixture(scope="module")
def ps2(a2, uni2):
    return reduct.build_pair_structure(a2, uni2)


def phi(S, xmask):
    acc = 0
    for i, t in enumerate(S.elements):
        if (1 << t[2]) & xmask:
            acc |= 1 << i
    return acc


def test_reduct_compose_with_empty(s2):
    ra = reduct.ra_reduct(s2)
    for y in ra.carrier():
        assert ra.compose(0, y) == 0
        assert ra.compose(y, 0) == 0


def test_reduct_identity_is_diagonal(s2):
    ra = reduct.ra_reduct(s2)
    assert ra.identity == s2.e_masks[0][1]
    for x in ra.carrier():
        assert ra.compose(x, ra.identity) == x
        assert ra.compose(ra.identity, x) == x


def test_reduct_closure(a1, a2, pentagon, two_identities):
    for A in (a1, a2, pentagon, two_identities):
        for c in reduct.check_reduct_closure(build_suitable(A)):
            assert c.holds, c


def test_reduct_isomorphism(a1, a2, pentagon, two_identities):
    for A in (a1, a2, pentagon, two_identities):
        for c in reduct.check_reduct_isomorphism(A, build_suitable(A)):
            assert c.holds, (A.names, c)


def test_phi_values(a2, s2):
    assert phi(s2, a2.full) == s2.full_mask
    assert phi(s2, 0) == 0
    d_image = {s2.elements[i] for i in range(s2.size) if (phi(s2, mask_of([1])) >> i) & 1}
    assert d_image == {(0, 1, 1), (1, 0, 1), (1, 1, 1)}


def test_phi_converse_of_symmetric_atom(a2, s2):
    ra = reduct.ra_reduct(s2)
    d = phi(s2, mask_of([1]))
    assert ra.converse(d) == d


def test_labels_well_defined(ps2):
    # build_pair_structure raises on any disagreement; spot-check the
    # diagonal rule: the label of (u, u) is the domain of any outgoing label
    A = ps2.universe.S.algebra
    for (u, v), a in ps2.label.items():
        duu = ps2.label[(u, u)]
        assert A.dom_atom(a) == 1 << duu


def test_diagonal_pairs_are_identity(ps2):
    for (u, v) in ps2.identity_pairs:
        assert u == v
    assert ps2.identity_pairs == {p for p in ps2.pairs if p[0] == p[1]}


def test_base_pairs_carry_diversity_labels(a2, s2, ps2):
    # pairs of distinct points from one-element trails over a diversity
    # triple carry that triple's coordinates as labels
    assert ps2.base_pairs
    for (u, v) in ps2.base_pairs:
        a = ps2.label[(u, v)]
        assert not (1 << a) & a2.identity


def test_pair_partition(ps2):
    for c in reduct.check_pair_partition(ps2):
        assert c.holds, c


def test_key_property(a2, ps2):
    assert reduct.check_key_property(a2, ps2).holds


def test_replacement_steps_table():
    # 21 non-permutations, realizable in one to three replacements
    assert len(reduct.REPLACEMENT_STEPS) == 21
    assert set(reduct.REPLACEMENT_STEPS.values()) == {1, 2, 3}
    singles = [f for f, d in reduct.REPLACEMENT_STEPS.items() if d == 1]
    assert len(singles) == 6
    assert reduct.REPLACEMENT_STEPS[(1, 0, 0)] == 3  # a swap costs three


def test_replacement_closure(a1, a2, pentagon, ps2):
    assert reduct.check_replacement_closure(ps2)[0].holds
    for A, L in ((a1, 2), (pentagon, 3)):
        S = build_suitable(A)
        uni = build_universe(S, L)
        ps = reduct.build_pair_structure(A, uni)
        assert reduct.check_replacement_closure(ps)[0].holds


def test_final_representation_checks(a2, ps2):
    final, checks = reduct.final_representation(a2, ps2)
    for c in checks:
        assert c.holds, c
    assert final.pairs(0) == frozenset()
    assert final.pairs(a2.full) == final.unit


def test_final_identity_only_unit_on_a1(a1):
    S = build_suitable(a1)
    uni = build_universe(S, 2)
    ps = reduct.build_pair_structure(a1, uni)
    final, checks = reduct.final_representation(a1, ps)
    assert all(c.holds for c in checks)
    assert final.pairs(a1.identity) == final.unit


def test_composition_inclusion_d_with_d(a2, ps2):
    final, _ = reduct.final_representation(a2, ps2)
    d = mask_of([1])
    gd = final.pairs(d)
    composed = {
        (u, w)
        for (u, v1) in gd
        for (v2, w) in gd
        if v1 == v2
    }
    assert composed & final.unit <= final.pairs(a2.compose(d, d))


def test_rebuilt_structure_matches(a1, a2, pentagon):
    for A, L in ((a1, 2), (a2, 3), (pentagon, 3)):
        S = build_suitable(A)
        uni = build_universe(S, L)
        ps = reduct.build_pair_structure(A, uni)
        final, _ = reduct.final_representation(A, ps)
        rb = reduct.rebuilt_structure(final)
        assert rb.cycles == A.cycles
        assert rb.identity == A.identity
        assert rb.converse == A.converse


def test_chain_agreement(a1, a2, pentagon):
    for A, L in ((a1, 2), (a2, 3), (a2, 4), (pentagon, 3)):
        S = build_suitable(A)
        uni = build_universe(S, L)
        ps = reduct.build_pair_structure(A, uni)
        assert reduct.check_chain_agreement(A, ps).holds
