import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from warel.core import classify, mask_of, validate_atom_structure
from warel.enumerate import sample_structure
from warel.laws import LAW_INDEX, LAWS, elementary_law_suite


def test_thirty_three_laws():
    assert len(LAWS) == 33
    assert len(LAW_INDEX) == 33


def test_suite_passes_on_small_wa(a1, a2, pentagon, two_identities):
    for A in (a1, a2, pentagon, two_identities):
        for res in elementary_law_suite(A):
            assert res.holds, (A, res)


def test_domain_absorption_every_element(a2):
    # x = dom x ; x checked directly for all four elements
    law = LAW_INDEX["domain-range-absorption"]
    assert law.check(a2) is None
    for x in a2.elements():
        assert a2.compose(a2.dom_el(x), x) == x


def test_cycle_law_single_atom(a1):
    assert LAW_INDEX["cycle-law"].check(a1) is None


def test_identity_atom_forces_domain(a2):
    # e;d != 0 and e below the identity force e = dom d
    e, d = mask_of([0]), mask_of([1])
    assert a2.compose(e, d) != 0
    assert a2.dom_el(d) == e
    assert LAW_INDEX["subidentity-forces-domain"].check(a2) is None


def test_suite_rejects_non_wa():
    A = validate_atom_structure(1, [], {}, [(0, 0, 0)])
    with pytest.raises(ValueError, match="ra6"):
        elementary_law_suite(A)


def test_scopes_cover_stated_ranges():
    scopes = {law.name: law.scope for law in LAWS}
    assert scopes["composition-completely-additive"] == "subsets"
    assert scopes["converse-completely-additive"] == "subsets"
    for name in (
        "atom-converse-atom",
        "cycle-law",
        "atom-domain-range-atoms",
        "range-meets-domain",
        "subidentity-forces-domain",
    ):
        assert scopes[name] == "atoms"
    assert sum(1 for law in LAWS if law.scope == "elements") == 26


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_suite_passes_on_sampled_wa(seed):
    rng = random.Random(seed)
    for _ in range(40):
        A = sample_structure(rng.randint(1, 3), rng)
        if classify(A).is_wa:
            for res in elementary_law_suite(A):
                assert res.holds, res
            return
