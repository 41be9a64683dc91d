import pytest

from warel import labelling as lb
from warel.core import validate_atom_structure


def test_initial_system_sizes(a1, a2, two_identities):
    assert lb.initial_system(a1).point_count() == 1
    assert len(lb.initial_system(a1).label) == 1
    ls = lb.initial_system(a2)
    assert ls.point_count() == 1
    assert ls.label == {(0, 0): 0}
    ls2 = lb.initial_system(two_identities)
    assert ls2.point_count() == 2
    assert len(ls2.label) == 2


def test_initial_system_rejects_non_wa():
    A = validate_atom_structure(1, [], {}, [(0, 0, 0)])
    with pytest.raises(ValueError):
        lb.initial_system(A)


def test_initial_flaws(a1, a2):
    assert lb.find_flaws(lb.initial_system(a1)) == []
    flaws = lb.find_flaws(lb.initial_system(a2))
    assert (0, 0, 0, 1, 1) in flaws  # e <= d;d lacks a middle point


def test_complete_system_has_no_flaws(a2):
    ls = lb.saturate(lb.initial_system(a2), 3)
    assert lb.find_flaws(ls, scope=3) == []


def test_repair_adds_collapsed_labels(a2):
    ls = lb.initial_system(a2)
    lb.repair(ls, (0, 0, 0, 1, 1))
    # d self-converse and rng d = e collapse the five labels to three
    assert ls.label == {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0}
    assert ls.stage == {0: 0, 1: 1}


def test_repair_twice_errors(a2):
    ls = lb.initial_system(a2)
    f = (0, 0, 0, 1, 1)
    lb.repair(ls, f)
    with pytest.raises(ValueError, match="not a flaw"):
        lb.repair(ls, f)


def test_repaired_triangle_satisfies_bound(a2):
    ls = lb.initial_system(a2)
    lb.repair(ls, (0, 0, 0, 1, 1))
    a = ls.label[(0, 1)]
    b = ls.label[(1, 0)]
    c = ls.label[(0, 0)]
    assert (1 << c) & a2.comp_atoms[a][b]


def test_saturate_noop_on_complete(a1):
    ls = lb.initial_system(a1)
    lb.saturate(ls, 2)
    assert ls.point_count() == 1 and len(ls.label) == 1


def test_saturate_zero_passes(a2):
    ls = lb.initial_system(a2)
    before = (ls.point_count(), dict(ls.label))
    lb.saturate(ls, 0)
    assert (ls.point_count(), dict(ls.label)) == before


def test_saturate_monotone_growth(pentagon):
    ls = lb.initial_system(pentagon)
    pts, lbls = set(ls.stage), dict(ls.label)
    for _ in range(3):
        lb.saturate(ls, 1)
        assert pts <= set(ls.stage)
        assert all(ls.label[k] == v for k, v in lbls.items())
        pts, lbls = set(ls.stage), dict(ls.label)


def test_saturate_stage_guarantee(a2, pentagon, two_identities):
    for A in (a2, pentagon, two_identities):
        ls = lb.saturate(lb.initial_system(A), 2)
        assert lb.find_flaws(ls, scope=2) == []


def test_saturate_determinism(pentagon):
    one = lb.saturate(lb.initial_system(pentagon), 2)
    two = lb.saturate(lb.initial_system(pentagon), 2)
    assert one.label == two.label and one.stage == two.stage


def test_point_budget(pentagon):
    from warel.core import GuardExceeded

    ls = lb.initial_system(pentagon)
    with pytest.raises(GuardExceeded):
        lb.saturate(ls, 3, max_points=4)


def test_verify_stage_bound_contract(a2):
    ls = lb.saturate(lb.initial_system(a2), 1)
    with pytest.raises(ValueError, match="stage bound"):
        lb.verify_representation(ls, 2)


def test_verify_full_passes(a1, a2, pentagon):
    for A in (a1, a2, pentagon):
        ls = lb.saturate(lb.initial_system(A), 2)
        for res in lb.verify_representation(ls, 2, mode="full"):
            assert res.holds, res


def test_verify_modes_agree(a2, pentagon):
    for A in (a2, pentagon):
        ls = lb.saturate(lb.initial_system(A), 2)
        full = {r.name: r.holds for r in lb.verify_representation(ls, 2, mode="full")}
        cert = {r.name: r.holds for r in lb.verify_representation(ls, 2, mode="certified")}
        assert full == cert


def test_representation_images(a1, a2):
    ls = lb.saturate(lb.initial_system(a1), 1)
    rep = lb.build_representation(ls)
    assert rep.pairs(0) == frozenset()
    assert rep.pairs(a1.identity) == frozenset({(0, 0)})
    assert rep.unit == frozenset({(0, 0)})

    ls2 = lb.saturate(lb.initial_system(a2), 1)
    rep2 = lb.build_representation(ls2)
    assert {(0, 1), (1, 0)} <= rep2.pairs(2)
    assert lb.unit_is_symmetric_reflexive(rep2)
    assert rep2.pairs(a2.identity) == frozenset((p, p) for p in ls2.points())


def test_unit_symmetric_reflexive_after_saturation(pentagon):
    ls = lb.saturate(lb.initial_system(pentagon), 2)
    assert lb.unit_is_symmetric_reflexive(lb.build_representation(ls))


def test_every_nonzero_element_has_pairs_after_one_pass(a2, pentagon):
    for A in (a2, pentagon):
        ls = lb.saturate(lb.initial_system(A), 1)
        rep = lb.build_representation(ls)
        for x in range(1, 1 << A.atom_count):
            assert rep.pairs(x), x
