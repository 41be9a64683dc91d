"""Finite atomic algebras presented by atom structures.

An atom structure lists the atoms of a finite algebra of binary-relation
type, the subset of atoms below the identity element, a converse
involution on atoms, and a set of composition facts.  A fact is an
ordered triple ``(x, y, z)`` read as "z is below x ; y".  The powerset
of the atoms then carries the full algebra: join is union, complement
is set complement, composition and converse are lifted from the facts
by complete additivity, and the identity element is the set of identity
atoms.

Elements are plain ``int`` bitmasks over atom indices.  Use
:func:`mask_of` / :func:`atoms_of` to convert between masks and index
collections.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Mapping, Optional


class StructureError(ValueError):
    """Raised when raw data does not describe a valid atom structure."""


class EvalError(ValueError):
    """Raised for unbound variables or malformed terms."""


class GuardExceeded(RuntimeError):
    """Raised when a quantifier range or growth budget is too large."""


Triple = tuple[int, int, int]


def mask_of(atoms: Iterable[int]) -> int:
    m = 0
    for a in atoms:
        m |= 1 << a
    return m


def atoms_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def iter_bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def peirce_orbit(conv: tuple[int, ...], triple: Triple) -> frozenset[Triple]:
    """The closure of one composition fact under the six cycle transforms."""
    x, y, z = triple
    return frozenset(
        {
            (x, y, z),
            (conv[x], z, y),
            (y, conv[z], conv[x]),
            (conv[y], conv[x], conv[z]),
            (conv[z], x, conv[y]),
            (z, conv[y], x),
        }
    )


def peircean_closure(conv: tuple[int, ...], triples: Iterable[Triple]) -> frozenset[Triple]:
    out: set[Triple] = set()
    for t in triples:
        out |= peirce_orbit(conv, t)
    return frozenset(out)


@dataclass(frozen=True)
class AtomStructure:
    """A validated finite atom structure.

    ``identity`` is a bitmask of identity atoms, ``converse`` the
    involution as an index tuple, and ``cycles`` the transform-closed
    set of composition facts (x, y, z) with z <= x ; y.
    """

    atom_count: int
    identity: int
    converse: tuple[int, ...]
    cycles: frozenset[Triple]
    names: tuple[str, ...] = field(default=(), compare=False)

    def atom_name(self, a: int) -> str:
        if self.names:
            return self.names[a]
        return f"a{a}"

    @cached_property
    def full(self) -> int:
        return (1 << self.atom_count) - 1

    @cached_property
    def diversity(self) -> int:
        return self.full & ~self.identity

    @cached_property
    def comp_atoms(self) -> tuple[tuple[int, ...], ...]:
        """comp_atoms[x][y] = bitmask of atoms z with z <= x ; y."""
        n = self.atom_count
        table = [[0] * n for _ in range(n)]
        for x, y, z in self.cycles:
            table[x][y] |= 1 << z
        return tuple(tuple(row) for row in table)

    @cached_property
    def factor_pairs(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """factor_pairs[a] = sorted (b, c) with a <= b ; c."""
        n = self.atom_count
        out: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for b, c, a in sorted(self.cycles):
            out[a].append((b, c))
        return tuple(tuple(sorted(p)) for p in out)

    def compose(self, xm: int, ym: int) -> int:
        acc = 0
        table = self.comp_atoms
        for x in iter_bits(xm):
            row = table[x]
            for y in iter_bits(ym):
                acc |= row[y]
        return acc

    def conv_el(self, xm: int) -> int:
        acc = 0
        for x in iter_bits(xm):
            acc |= 1 << self.converse[x]
        return acc

    def dom_el(self, xm: int) -> int:
        return self.compose(xm, self.conv_el(xm)) & self.identity

    def rng_el(self, xm: int) -> int:
        return self.compose(self.conv_el(xm), xm) & self.identity

    def dom_atom(self, a: int) -> int:
        return self.dom_el(1 << a)

    def rng_atom(self, a: int) -> int:
        return self.rng_el(1 << a)

    def elements(self) -> range:
        return range(1 << self.atom_count)


def validate_atom_structure(
    atom_count: int,
    identity_atoms: Iterable[int],
    converse: Mapping[int, int] | Iterable[tuple[int, int]] | tuple[int, ...],
    facts: Iterable[Triple],
    auto_close: bool = False,
    names: Optional[Iterable[str]] = None,
) -> AtomStructure:
    """Check raw data and build an :class:`AtomStructure`.

    With ``auto_close`` the fact set is replaced by its closure under
    the six cycle transforms, plus the self-cycle (e, e, e) for every
    identity atom e (without which e ; 1' = e is unsatisfiable).
    Without it, any fact set that is not already closed is rejected.
    """
    if atom_count < 1:
        raise StructureError("atom_count must be at least 1")

    def _chk(a: int, what: str) -> int:
        if not isinstance(a, int) or not 0 <= a < atom_count:
            raise StructureError(f"{what} {a!r} out of range 0..{atom_count - 1}")
        return a

    conv = list(range(atom_count))
    if isinstance(converse, Mapping):
        pairs = list(converse.items())
        full_map = False
    else:
        seq = list(converse)
        if seq and isinstance(seq[0], int):
            pairs = list(enumerate(seq))  # type: ignore[arg-type]
            full_map = True
        else:
            pairs = [(a, b) for a, b in seq]  # type: ignore[misc]
            full_map = False
    for a, b in pairs:
        _chk(a, "converse atom")
        _chk(b, "converse atom")
        conv[a] = b
        if not full_map:
            conv[b] = a
    for a in range(atom_count):
        if conv[conv[a]] != a:
            raise StructureError(f"converse is not an involution at atom {a}")

    ident = 0
    for e in identity_atoms:
        _chk(e, "identity atom")
        ident |= 1 << e
    for e in iter_bits(ident):
        if conv[e] != e:
            raise StructureError(
                f"identity atom {e} must be self-converse, has converse {conv[e]}"
            )

    raw = set()
    for t in facts:
        x, y, z = t
        _chk(x, "fact atom")
        _chk(y, "fact atom")
        _chk(z, "fact atom")
        raw.add((x, y, z))

    conv_t = tuple(conv)
    closed = set(peircean_closure(conv_t, raw))
    if auto_close:
        for e in iter_bits(ident):
            closed.add((e, e, e))
    elif closed != raw:
        missing = sorted(closed - raw)[0]
        raise StructureError(
            f"facts are not closed under the cycle transforms; missing {missing}"
        )

    name_t: tuple[str, ...] = ()
    if names is not None:
        name_t = tuple(names)
        if len(name_t) != atom_count:
            raise StructureError("names must match atom_count")

    return AtomStructure(atom_count, ident, conv_t, frozenset(closed), name_t)


# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True)
class Term:
    pass


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Const(Term):
    symbol: str  # one of '0', '1', "0'", "1'"


@dataclass(frozen=True)
class Join(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Meet(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Comp(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Neg(Term):
    arg: Term


@dataclass(frozen=True)
class Conv(Term):
    arg: Term


@dataclass(frozen=True)
class Dom(Term):
    arg: Term


@dataclass(frozen=True)
class Rng(Term):
    arg: Term


_CONSTS = ("0", "1", "0'", "1'")


def eval_term(A: AtomStructure, t: Term, env: Mapping[str, int]) -> int:
    """Evaluate a term to an element bitmask.

    Domain and range unfold by definition: dom x = x ; x~ . 1' and
    rng x = x~ ; x . 1'.
    """
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise EvalError(f"unbound variable {t.name!r}") from None
    if isinstance(t, Const):
        if t.symbol == "0":
            return 0
        if t.symbol == "1":
            return A.full
        if t.symbol == "1'":
            return A.identity
        if t.symbol == "0'":
            return A.diversity
        raise EvalError(f"unknown constant {t.symbol!r}")
    if isinstance(t, Join):
        return eval_term(A, t.left, env) | eval_term(A, t.right, env)
    if isinstance(t, Meet):
        return eval_term(A, t.left, env) & eval_term(A, t.right, env)
    if isinstance(t, Comp):
        return A.compose(eval_term(A, t.left, env), eval_term(A, t.right, env))
    if isinstance(t, Neg):
        return A.full & ~eval_term(A, t.arg, env)
    if isinstance(t, Conv):
        return A.conv_el(eval_term(A, t.arg, env))
    if isinstance(t, Dom):
        return A.dom_el(eval_term(A, t.arg, env))
    if isinstance(t, Rng):
        return A.rng_el(eval_term(A, t.arg, env))
    raise EvalError(f"not a term: {t!r}")


def free_vars(t: Term) -> tuple[str, ...]:
    seen: list[str] = []

    def walk(s: Term) -> None:
        if isinstance(s, Var):
            if s.name not in seen:
                seen.append(s.name)
        elif isinstance(s, (Join, Meet, Comp)):
            walk(s.left)
            walk(s.right)
        elif isinstance(s, (Neg, Conv, Dom, Rng)):
            walk(s.arg)

    walk(t)
    return tuple(sorted(seen))


ELEMENTS_GUARD = 16


def check_equation(
    A: AtomStructure,
    lhs: Term,
    rhs: Term,
    mode: str = "elements",
) -> Optional[dict[str, int]]:
    """Test lhs = rhs under all assignments; None if it holds.

    ``mode='elements'`` ranges variables over all 2**n elements (guarded
    at 16 atoms); ``mode='atoms'`` over singletons only, which is sound
    exactly when both sides are additive in every variable -- the caller
    asserts that.  The returned witness is the lexicographically first
    failing assignment (variables in sorted name order, values in
    ascending mask order).
    """
    if mode not in ("elements", "atoms"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "elements" and A.atom_count > ELEMENTS_GUARD:
        raise GuardExceeded(
            f"elements mode needs atom_count <= {ELEMENTS_GUARD}, got {A.atom_count}"
        )
    vs = tuple(sorted(set(free_vars(lhs)) | set(free_vars(rhs))))
    if mode == "elements":
        values: Iterable[int] = range(1 << A.atom_count)
    else:
        values = [1 << a for a in range(A.atom_count)]
    for combo in product(values, repeat=len(vs)):
        env = dict(zip(vs, combo))
        if eval_term(A, lhs, env) != eval_term(A, rhs, env):
            return env
    return None


# ---------------------------------------------------------------------------
# Classification


@dataclass(frozen=True)
class ClassReport:
    is_wa: bool
    is_sa: bool
    is_ra: bool
    failures: tuple[tuple[str, dict[str, int]], ...]

    def failed_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.failures)


def _check_ra5_to_ra9(A: AtomStructure) -> list[tuple[str, dict[str, int]]]:
    # Atom-level quantification; every term below is additive in each
    # variable, so singleton assignments decide the element-level law.
    fails: list[tuple[str, dict[str, int]]] = []
    n = A.atom_count
    atoms = [1 << a for a in range(n)]
    one = A.full
    ident = A.identity

    for xa in atoms:
        for ya in atoms:
            for za in atoms:
                if A.compose(xa | ya, za) != A.compose(xa, za) | A.compose(ya, za):
                    fails.append(("ra5", {"x": xa, "y": ya, "z": za}))
                    break
            else:
                continue
            break
        else:
            continue
        break

    for xa in atoms:
        if A.compose(xa, ident) != xa:
            fails.append(("ra6", {"x": xa}))
            break

    for xa in atoms:
        if A.conv_el(A.conv_el(xa)) != xa:
            fails.append(("ra7", {"x": xa}))
            break

    for xa in atoms:
        for ya in atoms:
            if A.conv_el(xa | ya) != A.conv_el(xa) | A.conv_el(ya):
                fails.append(("ra8", {"x": xa, "y": ya}))
                break
        else:
            continue
        break

    for xa in atoms:
        for ya in atoms:
            if A.conv_el(A.compose(xa, ya)) != A.compose(A.conv_el(ya), A.conv_el(xa)):
                fails.append(("ra9", {"x": xa, "y": ya}))
                break
        else:
            continue
        break

    # ra10 (x~ ; -(x;y) <= -y) reduces over atoms to: b <= a~ ; c and
    # c not<= a ; b is impossible, i.e. closure of the fact set under
    # the transform (a, b, c) -> (a~, c, b); singleton assignments decide
    # it by the same reduction.
    for xa_i in range(n):
        xa = 1 << xa_i
        for ya in atoms:
            lhs = A.compose(1 << A.converse[xa_i], one & ~A.compose(xa, ya))
            if lhs & ya:
                fails.append(("ra10", {"x": xa, "y": ya}))
                break
        else:
            continue
        break

    return fails


def _ra4_identity_path(A: AtomStructure) -> Optional[dict[str, int]]:
    one = A.full
    for e in iter_bits(A.identity):
        u = 1 << e
        lhs = A.compose(A.compose(u, one), one)
        if lhs != A.compose(u, one):
            return {"x": u}
    return None


def _ra4_elements(A: AtomStructure) -> Optional[dict[str, int]]:
    if A.atom_count > ELEMENTS_GUARD:
        raise GuardExceeded("element-mode ra4 check capped at 16 atoms")
    one = A.full
    for xm in range(1 << A.atom_count):
        u = xm & A.identity
        if A.compose(A.compose(u, one), one) != A.compose(u, one):
            return {"x": xm}
    return None


def _sa_law(A: AtomStructure) -> Optional[dict[str, int]]:
    one = A.full
    for a in range(A.atom_count):
        xa = 1 << a
        x1 = A.compose(xa, one)
        if A.compose(x1, one) != x1:
            return {"x": xa}
    return None


def _associativity(A: AtomStructure) -> Optional[dict[str, int]]:
    n = A.atom_count
    for x in range(n):
        for y in range(n):
            xy = A.comp_atoms[x][y]
            for z in range(n):
                if A.compose(xy, 1 << z) != A.compose(1 << x, A.comp_atoms[y][z]):
                    return {"x": 1 << x, "y": 1 << y, "z": 1 << z}
    return None


def classify(A: AtomStructure, ra4_elements: bool = False) -> ClassReport:
    """Classify the complex algebra of A as WA / SA / RA.

    The Boolean axioms hold by construction on a powerset, so only the
    composition/converse axioms are tested.  The weak associative law
    is decided on identity atoms (its term is additive, and diversity
    atoms contribute the zero instance); ``ra4_elements`` switches to
    the full element-mode cross-check.
    """
    fails = _check_ra5_to_ra9(A)

    if ra4_elements:
        w4 = _ra4_elements(A)
    else:
        w4 = _ra4_identity_path(A)
    if w4 is not None:
        fails_wa = fails + [("ra4", w4)]
    else:
        fails_wa = fails

    wsa = _sa_law(A)
    wra = _associativity(A)

    base_ok = not fails
    is_wa = base_ok and w4 is None
    is_sa = base_ok and wsa is None
    is_ra = base_ok and wra is None

    all_fails = list(fails_wa)
    if wsa is not None:
        all_fails.append(("sa-law", wsa))
    if wra is not None:
        all_fails.append(("associativity", wra))
    return ClassReport(is_wa, is_sa, is_ra, tuple(all_fails))
