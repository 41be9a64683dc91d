import pytest

from warel.core import validate_atom_structure


@pytest.fixture(scope="session")
def a1():
    """One identity atom."""
    return validate_atom_structure(1, [0], {}, [(0, 0, 0)], names=["e"])


@pytest.fixture(scope="session")
def a2():
    """Identity e plus a symmetric diversity atom d with d;d = 1."""
    return validate_atom_structure(
        2, [0], {}, [(1, 1, 0), (1, 1, 1)], auto_close=True, names=["e", "d"]
    )


@pytest.fixture(scope="session")
def two_identities():
    """Two disjoint identity atoms and a symmetric d hanging off the first."""
    return validate_atom_structure(
        3,
        [0, 1],
        {},
        [(2, 2, 0), (2, 0, 2), (0, 2, 2), (0, 0, 0), (1, 1, 1)],
        names=["e1", "e2", "d"],
    )


@pytest.fixture(scope="session")
def pentagon():
    """Identity e and a converse pair r, s with r;r = r (dense order)."""
    return validate_atom_structure(
        3,
        [0],
        [(1, 2)],
        [(1, 1, 1), (1, 2, 0), (1, 0, 1)],
        auto_close=True,
        names=["e", "r", "s"],
    )
