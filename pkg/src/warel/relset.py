"""Concrete algebras of binary relations and their relativizations.

A relation is a frozenset of point pairs over a finite universe.  The
full algebra on a universe has unit U x U; relativizing to a relation E
intersects every operation (and the unit, and the identity) with E.
Relativizations of full algebras to symmetric relations that are
reflexive on their field are exactly where weakly associative algebras
live, and the checker here converts such a relativization into an atom
structure so the axiom classifier can be run on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import FrozenSet, Iterable, Optional

from .core import AtomStructure, ClassReport, GuardExceeded, classify, validate_atom_structure

BinRel = FrozenSet[tuple[int, int]]

MATERIALIZE_GUARD = 6
CLOSURE_GUARD = 1 << 16


def rel(pairs: Iterable[tuple[int, int]]) -> BinRel:
    return frozenset(pairs)


def rel_compose(r: BinRel, s: BinRel) -> BinRel:
    by_first: dict[int, set[int]] = {}
    for u, v in s:
        by_first.setdefault(u, set()).add(v)
    out = set()
    for u, v in r:
        for w in by_first.get(v, ()):
            out.add((u, w))
    return frozenset(out)


def rel_inverse(r: BinRel) -> BinRel:
    return frozenset((v, u) for u, v in r)


def field_of(r: BinRel) -> frozenset[int]:
    pts = set()
    for u, v in r:
        pts.add(u)
        pts.add(v)
    return frozenset(pts)


def identity_on(points: Iterable[int]) -> BinRel:
    return frozenset((p, p) for p in points)


def is_symmetric(r: BinRel) -> bool:
    return rel_inverse(r) == r


def is_reflexive_on_field(r: BinRel) -> bool:
    """Id restricted to the field of r, cut to r|r^-1 union r^-1|r, sits in r."""
    around = rel_compose(r, rel_inverse(r)) | rel_compose(rel_inverse(r), r)
    wanted = identity_on(field_of(r)) & around
    return wanted <= r


@dataclass(frozen=True)
class Universe:
    size: int

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("universe size must be at least 1")

    def points(self) -> range:
        return range(self.size)

    def square(self) -> BinRel:
        return frozenset((u, v) for u in self.points() for v in self.points())


@dataclass(frozen=True)
class ConcreteAlgebra:
    """An algebra of relations inside a fixed unit relation."""

    universe: Universe
    unit: BinRel
    carrier: Optional[frozenset[BinRel]] = None

    @cached_property
    def identity(self) -> BinRel:
        return identity_on(self.universe.points()) & self.unit

    def join(self, r: BinRel, s: BinRel) -> BinRel:
        return (r | s) & self.unit

    def meet(self, r: BinRel, s: BinRel) -> BinRel:
        return r & s

    def complement(self, r: BinRel) -> BinRel:
        return self.unit - r

    def compose(self, r: BinRel, s: BinRel) -> BinRel:
        return rel_compose(r, s) & self.unit

    def converse(self, r: BinRel) -> BinRel:
        return rel_inverse(r) & self.unit


def build_re(universe: Universe, materialize: bool = False) -> ConcreteAlgebra:
    """The algebra of all binary relations on the universe."""
    carrier = None
    if materialize:
        if universe.size > MATERIALIZE_GUARD:
            raise GuardExceeded(
                f"carrier materialization capped at size {MATERIALIZE_GUARD}"
            )
        pairs = sorted(universe.square())
        rels = []
        for k in range(len(pairs) + 1):
            for combo in combinations(pairs, k):
                rels.append(frozenset(combo))
        carrier = frozenset(rels)
    return ConcreteAlgebra(universe, universe.square(), carrier)


def relativize(A: ConcreteAlgebra, e: BinRel) -> ConcreteAlgebra:
    if not e <= A.unit:
        raise ValueError("relativizing relation must sit inside the unit")
    carrier = None
    if A.carrier is not None:
        carrier = frozenset(r & e for r in A.carrier)
    return ConcreteAlgebra(A.universe, e, carrier)


def atom_structure_of_relativization(
    universe: Universe, e: BinRel
) -> tuple[AtomStructure, tuple[tuple[int, int], ...]]:
    """Present the relativization of the full algebra to e by atoms.

    Atoms are the single pairs of e; returns the structure together
    with the pair order used for atom indices.
    """
    pairs = tuple(sorted(e))
    index = {p: i for i, p in enumerate(pairs)}
    ident = [index[(u, v)] for u, v in pairs if u == v]
    conv = {index[(u, v)]: index[(v, u)] for u, v in pairs if (v, u) in index}
    facts = []
    for u, v in pairs:
        for v2, w in pairs:
            if v2 != v:
                continue
            if (u, w) in index:
                facts.append((index[(u, v)], index[(v, w)], index[(u, w)]))
    names = tuple(f"p{u}_{v}" for u, v in pairs)
    A = validate_atom_structure(len(pairs), ident, conv, facts, names=names)
    return A, pairs


def check_relativized_wa(universe: Universe, e: BinRel) -> ClassReport:
    """Classify the relativization of the full algebra on U to e.

    Requires e symmetric and reflexive on its field; the relativized
    algebra is then expected to classify as WA.
    """
    if not e <= universe.square():
        raise ValueError("e must be a relation on the universe")
    if not is_symmetric(e):
        raise ValueError("e must be symmetric")
    if not is_reflexive_on_field(e):
        raise ValueError("e must be reflexive on its field")
    if not e:
        raise ValueError("e must be nonempty")
    A, _ = atom_structure_of_relativization(universe, e)
    return classify(A)


def generate_subalgebra(A: ConcreteAlgebra, gens: Iterable[BinRel]) -> ConcreteAlgebra:
    """Closure of the generators (plus constants) under all operations."""
    gens = [g & A.unit for g in gens]
    for g in gens:
        if not g <= A.unit:
            raise ValueError("generator outside the unit")
    seen: set[BinRel] = {frozenset(), A.unit, A.identity, A.complement(A.identity)}
    seen.update(gens)
    frontier = list(seen)
    while frontier:
        if len(seen) > CLOSURE_GUARD:
            raise GuardExceeded("subalgebra closure exceeded 2**16 relations")
        work = sorted(seen, key=sorted)
        new: set[BinRel] = set()
        for r in work:
            for cand in (A.complement(r), A.converse(r)):
                if cand not in seen:
                    new.add(cand)
        for r in work:
            for s in work:
                for cand in (A.join(r, s), A.compose(r, s)):
                    if cand not in seen:
                        new.add(cand)
        frontier = list(new)
        seen |= new
    return ConcreteAlgebra(A.universe, A.unit, frozenset(seen))


def image_atom_structure(
    A: AtomStructure, images: dict[int, BinRel], unit: BinRel
) -> AtomStructure:
    """Rebuild an atom structure from per-atom relation images.

    ``images[a]`` is the relation representing atom ``a``; the images
    must partition the unit.  Composition facts of the rebuilt
    structure are read off the relations: (a, b, c) is a fact when the
    image of c meets the composition of the images of a and b inside
    the unit.  When the map is an embedding this reproduces the
    original structure exactly.
    """
    n = A.atom_count
    if set(images) != set(range(n)):
        raise ValueError("need an image for every atom")
    union: set[tuple[int, int]] = set()
    total = 0
    for a in range(n):
        total += len(images[a])
        union |= images[a]
    if frozenset(union) != unit or total != len(unit):
        raise ValueError("atom images do not partition the unit")
    ident = [a for a in range(n) if all(u == v for u, v in images[a])]
    conv = {}
    inv_index = {rel_inverse(images[a]): a for a in range(n)}
    for a in range(n):
        b = inv_index.get(images[a])
        if b is None:
            raise ValueError(f"converse image of atom {a} is not an atom image")
        conv[a] = b
    facts = []
    for a in range(n):
        for b in range(n):
            comp = rel_compose(images[a], images[b]) & unit
            for c in range(n):
                if images[c] & comp:
                    facts.append((a, b, c))
    return validate_atom_structure(n, ident, conv, facts, names=A.names or None)
