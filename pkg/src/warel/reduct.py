"""Relation-algebraic reducts and the final relativized representation.

The two-dimensional elements of the complex algebra (fixpoints of the
last cylindrification) carry relation-algebra operations defined by
diagonal-guarded cylindrification terms; the source algebra embeds
onto them by sending an element to the set of carrier triples whose
last coordinate sits below it.

Over a bounded trail universe, every ordered pair of points occurring
in a reachable coordinate triple gets a well-defined atom label, the
pair set splits into identity, descent and base pairs, and the label
map turns algebra elements into relations over points.  The resulting
map is checked to be a Boolean embedding respecting identity,
converse, and composition up to the frontier, which is the bounded
form of the full representation theorem.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from .core import AtomStructure, iter_bits
from .cylindric import CheckResult, ComplexAlgebra
from .relset import image_atom_structure
from .suitable import COORDS, SuitableStructure
from .trails import BoundedUniverse, Trail


# ---------------------------------------------------------------------------
# The two-dimensional reduct


@dataclass(frozen=True)
class Reduct:
    cm: ComplexAlgebra

    @property
    def identity(self) -> int:
        return self.cm.diag(0, 1)

    def is_two_dim(self, x: int) -> bool:
        return self.cm.cyl(2, x) == x

    def carrier(self) -> list[int]:
        blocks = sorted(set(self.cm.S.blocks[2].values()))
        out = []
        for mask in range(1 << len(blocks)):
            x = 0
            for i in iter_bits(mask):
                x |= blocks[i]
            out.append(x)
        return sorted(set(out))

    def compose(self, x: int, y: int) -> int:
        cm = self.cm
        return cm.cyl(2, cm.cyl(1, cm.diag(1, 2) & x) & cm.cyl(0, cm.diag(0, 2) & y))

    def converse(self, x: int) -> int:
        cm = self.cm
        inner = cm.cyl(1, cm.diag(1, 2) & x)
        inner = cm.cyl(0, cm.diag(0, 1) & inner)
        return cm.cyl(2, cm.diag(2, 0) & inner)


def ra_reduct(S: SuitableStructure) -> Reduct:
    return Reduct(ComplexAlgebra(S))


def check_reduct_closure(S: SuitableStructure) -> tuple[CheckResult, ...]:
    ra = ra_reduct(S)
    carrier = ra.carrier()
    out = []
    ok = all(ra.is_two_dim(x) for x in carrier)
    out.append(CheckResult("carrier-two-dimensional", ok))
    ok = ra.is_two_dim(ra.identity)
    out.append(CheckResult("identity-two-dimensional", ok))
    bad = None
    for x in carrier:
        if not ra.is_two_dim(ra.converse(x)):
            bad = ("converse", x)
            break
        for y in carrier:
            if not ra.is_two_dim(ra.compose(x, y)):
                bad = ("compose", x, y)
                break
        if bad:
            break
    out.append(CheckResult("operations-closed", bad is None, str(bad or "")))
    return tuple(out)


def check_reduct_isomorphism(A: AtomStructure, S: SuitableStructure) -> tuple[CheckResult, ...]:
    """The map sending x to the triples with last coordinate below x is
    an isomorphism onto the two-dimensional reduct: bijective, Boolean,
    and preserving identity, converse, composition.  Checked over all
    element pairs."""
    ra = ra_reduct(S)
    out: list[CheckResult] = []

    def phi(xm: int) -> int:
        acc = 0
        for i, t in enumerate(S.elements):
            if (1 << t[2]) & xm:
                acc |= 1 << i
        return acc

    els = list(A.elements())
    images = [phi(x) for x in els]
    out.append(CheckResult("injective", len(set(images)) == len(images)))
    out.append(
        CheckResult(
            "surjective-onto-reduct", sorted(set(images)) == ra.carrier()
        )
    )
    out.append(
        CheckResult(
            "boolean-preserved",
            all(
                phi(x | y) == phi(x) | phi(y)
                and phi(A.full & ~x) == S.full_mask & ~phi(x)
                for x in els
                for y in els
            ),
        )
    )
    out.append(CheckResult("identity-preserved", phi(A.identity) == ra.identity))
    bad = None
    for x in els:
        if phi(A.conv_el(x)) != ra.converse(phi(x)):
            bad = ("converse", x)
            break
        for y in els:
            if phi(A.compose(x, y)) != ra.compose(phi(x), phi(y)):
                bad = ("compose", x, y)
                break
        if bad:
            break
    out.append(CheckResult("operations-preserved", bad is None, str(bad or "")))
    return tuple(out)


# ---------------------------------------------------------------------------
# Pair labels over a bounded universe


class LabelDisagreement(RuntimeError):
    """Two witnessing trails assigned different atoms to one pair."""


@dataclass
class PairStructure:
    universe: BoundedUniverse
    label: dict[tuple[int, int], int] = field(default_factory=dict)
    identity_pairs: set[tuple[int, int]] = field(default_factory=set)
    xi_pairs: set[tuple[int, int]] = field(default_factory=set)
    base_pairs: set[tuple[int, int]] = field(default_factory=set)
    lem9_kind: dict[tuple[int, int, int], str] = field(default_factory=dict)

    @property
    def pairs(self) -> set[tuple[int, int]]:
        return set(self.label)

    @cached_property
    def xi_of(self) -> dict[int, frozenset[tuple[int, int]]]:
        uni = self.universe
        out: dict[int, frozenset[tuple[int, int]]] = {}
        for pt in uni.by_id:
            if pt.length == 1:
                out[pt.pid] = frozenset()
                continue
            p = pt.trail
            k = p.pointer
            partners = set()
            for l in COORDS:
                if l != k:
                    partners.add(uni.point_of(p.repoint(l)).pid)
            out[pt.pid] = frozenset((pt.pid, q) for q in partners)
        return out


def _assign(ps: PairStructure, u: int, v: int, a: int) -> None:
    old = ps.label.get((u, v))
    if old is None:
        ps.label[(u, v)] = a
    elif old != a:
        raise LabelDisagreement(f"pair ({u},{v}) labelled {old} and {a}")


def build_pair_structure(A: AtomStructure, uni: BoundedUniverse) -> PairStructure:
    """Labels for every occurring point pair, the three-way pair split,
    and the six-type classification of every reachable triple."""
    ps = PairStructure(uni)
    conv = A.converse
    bit = lambda m: m.bit_length() - 1

    for trip, info in sorted(uni.triples.items()):
        t0, t1, t2 = uni.S.elements[info.end]
        u, v, w = trip
        _assign(ps, u, v, t2)
        _assign(ps, v, u, conv[t2])
        _assign(ps, v, w, t0)
        _assign(ps, w, v, conv[t0])
        _assign(ps, u, w, t1)
        _assign(ps, w, u, conv[t1])
        du = A.dom_atom(t1)
        if du != A.dom_atom(t2):
            raise LabelDisagreement(f"diagonal label mismatch at {trip}")
        _assign(ps, u, u, bit(du))
        dv = A.rng_atom(t2)
        if dv != A.dom_atom(t0):
            raise LabelDisagreement(f"diagonal label mismatch at {trip}")
        _assign(ps, v, v, bit(dv))
        dw = A.rng_atom(t0)
        if dw != A.rng_atom(t1):
            raise LabelDisagreement(f"diagonal label mismatch at {trip}")
        _assign(ps, w, w, bit(dw))

    for (u, v) in ps.label:
        if u == v:
            ps.identity_pairs.add((u, v))

    for pid, xs in ps.xi_of.items():
        for pr in xs:
            ps.xi_pairs.add(pr)
            ps.xi_pairs.add((pr[1], pr[0]))

    S = uni.S
    ident = A.identity
    for i, t in enumerate(S.elements):
        for k in COORDS:
            for l in COORDS:
                if k == l:
                    continue
                m = 3 - k - l
                if (1 << t[m]) & ident:
                    continue
                base = Trail((i,), (), 0)
                pu = uni.point_of(base.repoint(k)).pid
                pv = uni.point_of(base.repoint(l)).pid
                ps.base_pairs.add((pu, pv))

    for trip in sorted(uni.triples):
        ps.lem9_kind[trip] = _classify_triple_kind(ps, trip)
    return ps


def _pair_kind(ps: PairStructure, u: int, v: int) -> str:
    if u == v:
        return "identity"
    hit_xi = (u, v) in ps.xi_pairs
    hit_base = (u, v) in ps.base_pairs
    if hit_xi and not hit_base:
        return "descent"
    if hit_base and not hit_xi:
        return "base"
    return "ambiguous"


def _classify_triple_kind(ps: PairStructure, trip: tuple[int, int, int]) -> str:
    uni = ps.universe
    distinct = sorted(set(trip))
    if len(distinct) == 1:
        return "single-point"
    if len(distinct) == 2:
        p, q = distinct
        kind = _pair_kind(ps, p, q)
        if kind == "descent":
            return "doubled-descent"
        if kind == "base":
            return "doubled-base"
        return "unclassified"
    x, y, z = distinct
    kinds = {
        (p, q): _pair_kind(ps, p, q)
        for p in distinct
        for q in distinct
        if p < q
    }
    if all(k == "base" for k in kinds.values()):
        return "three-base"
    lengths = {p: uni.by_id[p].length for p in distinct}
    w = max(distinct, key=lambda p: (lengths[p], p))
    others = [p for p in distinct if p != w]
    if ps.xi_of.get(w) == frozenset({(w, others[0]), (w, others[1])}):
        third = _pair_kind(ps, *sorted(others))
        if third == "descent":
            return "descent-descent"
        if third == "base":
            return "descent-base"
    return "unclassified"


LEM9_KINDS = (
    "descent-descent",
    "descent-base",
    "three-base",
    "doubled-descent",
    "doubled-base",
    "single-point",
)


def check_pair_partition(ps: PairStructure) -> tuple[CheckResult, ...]:
    out = []
    pairs = ps.pairs
    parts = [ps.identity_pairs, ps.xi_pairs, ps.base_pairs]
    union = set().union(*parts)
    overlaps = (
        (ps.identity_pairs & ps.xi_pairs)
        | (ps.identity_pairs & ps.base_pairs)
        | (ps.xi_pairs & ps.base_pairs)
    )
    out.append(
        CheckResult(
            "pair-partition-exact",
            union == pairs and not overlaps,
            f"|pairs|={len(pairs)} id={len(ps.identity_pairs)} "
            f"descent={len(ps.xi_pairs)} base={len(ps.base_pairs)}",
        )
    )
    unclassified = [t for t, k in ps.lem9_kind.items() if k == "unclassified"]
    out.append(
        CheckResult(
            "triple-types-total",
            not unclassified,
            f"{len(ps.lem9_kind)} triples classified"
            if not unclassified
            else f"unclassified {unclassified[:3]}",
        )
    )
    uni = ps.universe
    bad = None
    for pid, xs in ps.xi_of.items():
        for (u, v) in xs:
            if uni.by_id[v].length >= uni.by_id[u].length:
                bad = (u, v)
                break
    out.append(CheckResult("descent-pairs-shorten", bad is None, str(bad or "")))
    return tuple(out)


def check_key_property(A: AtomStructure, ps: PairStructure) -> CheckResult:
    """label(x,y) ; label(y,z) covers label(x,z) on every permutation of
    every reachable triple."""
    comp = A.comp_atoms
    for trip in ps.universe.triples:
        pts = set(trip)
        for x in pts:
            for y in pts:
                for z in pts:
                    a = ps.label[(x, y)]
                    b = ps.label[(y, z)]
                    c = ps.label[(x, z)]
                    if not (1 << c) & comp[a][b]:
                        return CheckResult(
                            "label-composition-bound", False, f"{(x, y, z)}"
                        )
    return CheckResult("label-composition-bound", True)


# ---------------------------------------------------------------------------
# Replacement closure (non-permutation images of reachable triples)


def _replacement_generators() -> dict[tuple[int, int, int], int]:
    """Minimal number of one-step coordinate replacements realizing each
    non-permutation of a triple."""
    gens = []
    for k in COORDS:
        for l in COORDS:
            if k != l:
                m = 3 - k - l
                f = [0, 0, 0]
                f[k] = l
                f[l] = l
                f[m] = m
                gens.append(tuple(f))
    dist: dict[tuple[int, int, int], int] = {(0, 1, 2): 0}
    frontier = [(0, 1, 2)]
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens:
                h = tuple(f[g[i]] for i in COORDS)
                if h not in dist:
                    dist[h] = dist[f] + 1
                    nxt.append(h)
        frontier = nxt
    return {f: d for f, d in dist.items() if sorted(f) != [0, 1, 2]}


REPLACEMENT_STEPS = _replacement_generators()


def check_replacement_closure(ps: PairStructure) -> tuple[CheckResult, ...]:
    """Every non-permutation image of a reachable triple is reachable,
    given enough headroom: an image needing k replacements is demanded
    only of triples whose shortest witness leaves k steps below the
    bound.  Exclusion counts are reported."""
    uni = ps.universe
    bound = uni.bound
    checked = 0
    excluded = 0
    bad = None
    for trip, info in uni.triples.items():
        for f, steps in REPLACEMENT_STEPS.items():
            if info.min_length + steps > bound:
                excluded += 1
                continue
            image = tuple(trip[f[i]] for i in COORDS)
            checked += 1
            if image not in uni.triples:
                bad = (trip, f, image)
                break
        if bad:
            break
    detail = f"checked={checked} excluded={excluded}"
    if bad:
        detail = f"{bad}"
    return (CheckResult("replacement-closure", bad is None, detail),)


# ---------------------------------------------------------------------------
# The final representation over points


@dataclass
class FinalRepresentation:
    A: AtomStructure
    ps: PairStructure

    @cached_property
    def unit(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.ps.label)

    def pairs(self, element_mask: int) -> frozenset[tuple[int, int]]:
        return frozenset(
            pr for pr, a in self.ps.label.items() if (1 << a) & element_mask
        )

    def atom_images(self) -> dict[int, frozenset[tuple[int, int]]]:
        out: dict[int, set[tuple[int, int]]] = {
            a: set() for a in range(self.A.atom_count)
        }
        for pr, a in self.ps.label.items():
            out[a].add(pr)
        return {a: frozenset(v) for a, v in out.items()}


def final_representation(
    A: AtomStructure, ps: PairStructure
) -> tuple[FinalRepresentation, tuple[CheckResult, ...]]:
    """Build the point representation and verify it.

    Exactly checked: the unit is symmetric and reflexive on its field,
    atom images partition it, identity goes to the diagonal, converse
    to relational inverse, and composed images stay below the image of
    the composition.  The reverse composition containment is checked
    for pairs whose shortest witness leaves one step of headroom (the
    middle point comes from a one-step trail extension); exclusions
    are counted.
    """
    rep = FinalRepresentation(A, ps)
    uni = ps.universe
    out: list[CheckResult] = []

    unit = rep.unit
    sym = all((v, u) in unit for (u, v) in unit)
    pts_in_unit = {u for u, _ in unit} | {v for _, v in unit}
    refl = all((p, p) in unit for p in pts_in_unit)
    out.append(CheckResult("unit-symmetric-reflexive", sym and refl, f"|unit|={len(unit)}"))

    images = rep.atom_images()
    nonempty = all(images[a] for a in range(A.atom_count))
    total = sum(len(v) for v in images.values())
    out.append(
        CheckResult(
            "atom-images-partition", nonempty and total == len(unit), f"{total} pairs"
        )
    )

    diag = frozenset((p, p) for p in pts_in_unit)
    out.append(CheckResult("identity-to-diagonal", rep.pairs(A.identity) == diag))

    conv_ok = all(
        images[A.converse[a]] == frozenset((v, u) for u, v in images[a])
        for a in range(A.atom_count)
    )
    out.append(CheckResult("converse-exact", conv_ok))

    comp = A.comp_atoms
    bad = None
    for (u, v), a in ps.label.items():
        for w in pts_in_unit:
            b = ps.label.get((v, w))
            if b is None:
                continue
            c = ps.label.get((u, w))
            if c is None:
                continue
            if not (1 << c) & comp[a][b]:
                bad = (u, v, w)
                break
        if bad:
            break
    out.append(CheckResult("composition-upper-exact", bad is None, str(bad or "")))

    bound = uni.bound
    checked = 0
    excluded = 0
    bad = None
    for (u, v), c in sorted(ps.label.items()):
        if ps.universe.pair_min_length[(u, v)] + 1 > bound:
            excluded += 1
            continue
        checked += 1
        for b, cc in A.factor_pairs[c]:
            hit = False
            for w in pts_in_unit:
                lb = ps.label.get((u, w))
                if lb != b:
                    continue
                if ps.label.get((w, v)) == cc:
                    hit = True
                    break
            if not hit:
                bad = (u, c, v, b, cc)
                break
        if bad:
            break
    out.append(
        CheckResult(
            "composition-lower-nonfrontier",
            bad is None,
            f"checked={checked} excluded={excluded}"
            + ("" if bad is None else f" missing={bad}"),
        )
    )
    return rep, tuple(out)


def rebuilt_structure(rep: FinalRepresentation) -> AtomStructure:
    """Atom structure read back off the representation's atom images;
    equal to the source structure when the representation embeds it."""
    return image_atom_structure(rep.A, rep.atom_images(), rep.unit)


def check_chain_agreement(
    A: AtomStructure, ps: PairStructure
) -> CheckResult:
    """Pairs in coordinate positions (0, 1) of reachable triples carry
    exactly the label of the end's last coordinate, and cover every
    label on pairs with three steps of headroom (a coordinate swap
    costs three replacements)."""
    uni = ps.universe
    chain: dict[int, set[tuple[int, int]]] = {a: set() for a in range(A.atom_count)}
    for trip, info in uni.triples.items():
        t2 = uni.S.elements[info.end][2]
        chain[t2].add((trip[0], trip[1]))
    for a in range(A.atom_count):
        for pr in chain[a]:
            if ps.label.get(pr) != a:
                return CheckResult("chain-agreement", False, f"{pr} mislabelled")
    excluded = 0
    for pr, a in ps.label.items():
        if pr in chain[a]:
            continue
        if uni.pair_min_length[pr] + 3 <= uni.bound:
            return CheckResult("chain-agreement", False, f"{pr} unreachable")
        excluded += 1
    return CheckResult("chain-agreement", True, f"excluded={excluded}")
