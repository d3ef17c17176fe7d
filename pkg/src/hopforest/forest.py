"""Forests of lattices and posets and the forest formula for the antipode.

A lattice forest is a set of elements with indecomposable lower intervals that
pairwise nest or meet only at the bottom, whose join is not the top, and whose
antichains join to a copy of the product of their lower intervals.  A poset
forest additionally carries a map ``J`` playing the role of the join.

``J`` is stored only on antichains of size two or more.  Any valid map sends
the empty set to the bottom, a single element to itself, and a set to the
value on its maximal elements, because monotonicity gives ``J(max G) <= J(G)``
and both lower intervals have the same size.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from .decompose import prime_center
from .errors import ChainNotInInterval, InvariantViolation, NotAForest, NotALattice
from .hopf import (
    HopfElement,
    Monomial,
    antipode_chains,
    indecomposable_elements,
    interval_monomial,
    mul_monomials,
)
from .poset import (
    Chain,
    Interval,
    bits,
    enumerate_chains,
    is_chain_of,
    is_lattice,
    join_all,
    join_within,
    maximal_elements,
    subinterval,
)


@dataclass(frozen=True)
class JMap:
    """Values of ``J`` on the antichains (size >= 2) of a forest."""

    bottom: int
    assignments: tuple[tuple[tuple[int, ...], int], ...] = ()
    _table: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_table", dict(self.assignments))

    def value(self, P: Interval, G: Iterable[int]) -> int:
        top = tuple(maximal_elements(P, G))
        if not top:
            return self.bottom
        if len(top) == 1:
            return top[0]
        return self._table[top]

    def table(self) -> dict[tuple[int, ...], int]:
        return dict(self._table)


@dataclass(frozen=True)
class Forest:
    """A forest; ``jmap`` is None for lattice forests, where ``J`` is the join."""

    nodes: tuple[int, ...]
    jmap: JMap | None = None

    def __len__(self) -> int:
        return len(self.nodes)

    def J(self, P: Interval, G: Iterable[int]) -> int:
        G = list(G)
        if self.jmap is not None:
            return self.jmap.value(P, G)
        j = join_all(P, G)
        if j is None:
            raise NotALattice("join is undefined; use a poset forest")
        return j

    def names(self, P: Interval) -> list[str]:
        return [P.names[x] for x in self.nodes]


@dataclass(frozen=True)
class Filtration:
    ideals: tuple[frozenset[int], ...]

    @property
    def length(self) -> int:
        return len(self.ideals) - 1


def _product_target(P: Interval, elems: Iterable[int]) -> Monomial:
    return mul_monomials(*(interval_monomial(P, P.bottom, a) for a in elems))


def _non_overlapping(P: Interval, a: int, b: int) -> bool:
    if P.leq(a, b) or P.leq(b, a):
        return True
    return P.down[a] & P.down[b] == 1 << P.bottom


def _antichains_with(P: Interval, F: list[int], e: int) -> Iterator[tuple[int, ...]]:
    """Antichains of ``F + [e]`` that contain ``e`` and have size >= 2."""
    free = [a for a in F if not P.leq(a, e) and not P.leq(e, a)]
    for k in range(1, len(free) + 1):
        for combo in combinations(free, k):
            if all(not P.leq(x, y) and not P.leq(y, x) for x, y in combinations(combo, 2)):
                yield tuple(sorted(combo + (e,)))


def enumerate_forests_lattice(P: Interval) -> list[Forest]:
    """All lattice forests, in lexicographic order of their sorted node tuples."""
    if not is_lattice(P):
        raise NotALattice("lattice forests need a lattice")
    if P.size == 1:
        return []
    cands = indecomposable_elements(P)
    out: list[Forest] = []

    def grow(F: list[int], start: int) -> None:
        out.append(Forest(tuple(F)))
        for i in range(start, len(cands)):
            e = cands[i]
            if not all(_non_overlapping(P, a, e) for a in F):
                continue
            if join_all(P, F + [e]) == P.top:
                continue
            ok = True
            for A in _antichains_with(P, F, e):
                if interval_monomial(P, P.bottom, join_all(P, A)) != _product_target(P, A):
                    ok = False
                    break
            if ok:
                F.append(e)
                grow(F, i + 1)
                F.pop()

    grow([], 0)
    out.sort(key=lambda f: f.nodes)
    return out


def _below_all(P: Interval, A: tuple[int, ...], B: tuple[int, ...]) -> bool:
    """Every member of ``A`` lies below some member of ``B``."""
    return all(any(P.leq(a, b) for b in B) for a in A)


def _extend_jmaps(
    P: Interval, F: list[int], e: int, partial: dict[tuple[int, ...], int]
) -> Iterator[dict[tuple[int, ...], int]]:
    for B, w in partial.items():
        if _below_all(P, B, (e,)) and not P.leq(w, e):
            return
        if _below_all(P, (e,), B) and not P.leq(e, w):
            return
    new = sorted(_antichains_with(P, F, e), key=lambda A: (len(A), A))
    if not new:
        yield dict(partial)
        return
    singles = {(a,): a for a in F + [e]}
    cand_lists = []
    for A in new:
        target = _product_target(P, A)
        mask = (1 << P.size) - 1
        for a in A:
            mask &= P.up[a]
        cand_lists.append(
            [c for c in bits(mask) if c != P.top and interval_monomial(P, P.bottom, c) == target]
        )

    def consistent(A: tuple[int, ...], v: int, assigned: dict) -> bool:
        for B, w in assigned.items():
            if _below_all(P, B, A) and not P.leq(w, v):
                return False
            if _below_all(P, A, B) and not P.leq(v, w):
                return False
        for B, w in singles.items():
            if _below_all(P, B, A) and not P.leq(w, v):
                return False
            if _below_all(P, A, B) and not P.leq(v, w):
                return False
        return True

    def rec(i: int, assigned: dict) -> Iterator[dict]:
        if i == len(new):
            yield dict(assigned)
            return
        A = new[i]
        for v in cand_lists[i]:
            if consistent(A, v, assigned):
                assigned[A] = v
                yield from rec(i + 1, assigned)
                del assigned[A]

    yield from rec(0, dict(partial))


def enumerate_forests_poset(P: Interval) -> list[Forest]:
    """All pairs ``(F, J)``; a set with several valid maps appears once per map."""
    if P.size == 1:
        return []
    cands = indecomposable_elements(P)
    out: list[Forest] = []

    def emit(F: list[int], jm: dict) -> None:
        out.append(Forest(tuple(F), JMap(P.bottom, tuple(sorted(jm.items())))))

    def grow(F: list[int], start: int, maps: list[dict]) -> None:
        for jm in maps:
            emit(F, jm)
        for i in range(start, len(cands)):
            e = cands[i]
            if not all(_non_overlapping(P, a, e) for a in F):
                continue
            ext = [m for jm in maps for m in _extend_jmaps(P, F, e, jm)]
            if ext:
                F.append(e)
                grow(F, i + 1, ext)
                F.pop()

    grow([], 0, [{}])
    out.sort(key=lambda f: (f.nodes, f.jmap.assignments))
    return out


def is_lattice_forest(P: Interval, nodes: Iterable[int]) -> bool:
    """Direct check of the lattice forest conditions, all antichains included."""
    F = sorted(set(nodes))
    ind = set(indecomposable_elements(P))
    if any(a not in ind for a in F) or join_all(P, F) == P.top:
        return False
    if not all(_non_overlapping(P, a, b) for a, b in combinations(F, 2)):
        return False
    for k in range(2, len(F) + 1):
        for A in combinations(F, k):
            if any(P.leq(x, y) or P.leq(y, x) for x, y in combinations(A, 2)):
                continue
            if interval_monomial(P, P.bottom, join_all(P, A)) != _product_target(P, A):
                return False
    return True


def is_poset_forest(P: Interval, forest: Forest) -> bool:
    """Direct check of the poset forest conditions over all pairs of subsets."""
    F = list(forest.nodes)
    ind = set(indecomposable_elements(P))
    if any(a not in ind for a in F):
        return False
    if not all(_non_overlapping(P, a, b) for a, b in combinations(F, 2)):
        return False
    subsets = [s for k in range(len(F) + 1) for s in combinations(F, k)]
    values = {}
    for G in subsets:
        v = forest.J(P, G)
        if v == P.top or interval_monomial(P, P.bottom, v) != _product_target(P, maximal_elements(P, G)):
            return False
        values[frozenset(G)] = v
    for G in subsets:
        for H in subsets:
            if set(G) <= set(H) and not P.leq(values[frozenset(G)], values[frozenset(H)]):
                return False
    return True


def predecessors(P: Interval, nodes: Iterable[int], b: int) -> list[int]:
    F = list(nodes)
    below = [a for a in F if P.lt(a, b)]
    return [a for a in below if not any(P.lt(a, c) and P.lt(c, b) for c in below)]


def _theta_over(P: Interval, F: Forest, tops: Iterable[int]) -> Monomial:
    parts = []
    for b in tops:
        tilde = F.J(P, predecessors(P, F.nodes, b))
        if not P.leq(tilde, b):
            raise NotAForest(f"{P.names[tilde]} is not below {P.names[b]}")
        parts.append(interval_monomial(P, tilde, b))
    return mul_monomials(*parts)


def _check_forest(P: Interval, F: Forest) -> None:
    ok = is_lattice_forest(P, F.nodes) if F.jmap is None else is_poset_forest(P, F)
    if not ok:
        raise NotAForest(f"{F.names(P)} is not a forest")


def theta(P: Interval, F: Forest, check: bool = True) -> Monomial:
    """Product of ``[b~, b]`` over the forest nodes and the top."""
    if check:
        _check_forest(P, F)
    return _theta_over(P, F, list(F.nodes) + [P.top])


def theta_center_form(P: Interval, F: Forest, check: bool = True) -> Monomial:
    """The same product taken over the nodes and the prime center instead."""
    if check:
        _check_forest(P, F)
    return _theta_over(P, F, sorted(set(F.nodes) | prime_center(P)))


def sign_degree(F: Forest) -> int:
    return len(F.nodes) + 1


def _prefix_centers(P: Interval, chain: Chain) -> dict[int, int]:
    """Each element of the chain's forest with the first chain index producing it."""
    first: dict[int, int] = {}
    for i in range(1, len(chain) - 1):
        c = chain[i]
        elems = P.between(P.bottom, c)
        for a in sorted(prime_center(subinterval(P, P.bottom, c))):
            first.setdefault(elems[a], i)
    return first


def chain_to_forest(P: Interval, chain: Chain, poset: bool = False) -> Forest:
    """The union of the prime centers of the proper chain prefixes.

    With ``poset=True`` the map ``J`` is built by joining antichain members one
    at a time inside ``[0, c_k]``, taking members in order of first appearance.
    """
    if not is_chain_of(P, chain):
        raise ChainNotInInterval(f"{chain!r} is not a bottom-to-top chain")
    first = _prefix_centers(P, chain)
    nodes = tuple(sorted(first))
    if not poset:
        return Forest(nodes)
    table = {}
    for k in range(2, len(nodes) + 1):
        for A in combinations(nodes, k):
            if any(P.leq(x, y) or P.leq(y, x) for x, y in combinations(A, 2)):
                continue
            order = sorted(A, key=lambda a: (first[a], a))
            j = order[0]
            for b in order[1:]:
                j = join_within(P, b, j, chain[first[b]])
                if j is None:
                    raise InvariantViolation("iterated join undefined along the chain")
            table[A] = j
    return Forest(nodes, JMap(P.bottom, tuple(sorted(table.items()))))


def forest_to_chain(P: Interval, F: Forest) -> Chain:
    """Strip maximal layers off ``F``, recording the ``J`` value of what remains."""
    rest = set(F.nodes)
    points = [P.top]
    while rest:
        points.append(F.J(P, rest))
        rest -= set(maximal_elements(P, rest))
    points.append(P.bottom)
    chain = tuple(reversed(points))
    if not is_chain_of(P, chain):
        raise InvariantViolation(f"layer chain {chain!r} is not strictly increasing")
    return chain


def enumerate_filtrations(P: Interval, F: Forest) -> list[Filtration]:
    """Chains of down-sets of ``F`` from empty to all of ``F`` with antichain steps."""
    nodes = frozenset(F.nodes)
    out: list[Filtration] = []

    def rec(path: list[frozenset[int]]) -> None:
        current = path[-1]
        if current == nodes:
            out.append(Filtration(tuple(path)))
            return
        avail = minimal_elements(P, nodes - current)
        for k in range(1, len(avail) + 1):
            for D in combinations(avail, k):
                path.append(current | frozenset(D))
                rec(path)
                path.pop()

    rec([frozenset()])
    return out


def minimal_elements(P: Interval, elems: Iterable[int]) -> list[int]:
    """Minimal elements of a set."""
    elems = list(elems)
    mask = sum(1 << e for e in elems)
    return sorted(e for e in elems if not (P.down[e] & mask & ~(1 << e)))


def fibers(P: Interval, poset: bool = False) -> dict[Forest, list[Chain]]:
    out: dict[Forest, list[Chain]] = {}
    for chain in enumerate_chains(P):
        out.setdefault(chain_to_forest(P, chain, poset=poset), []).append(chain)
    return out


def fiber_sign_sum(P: Interval, F: Forest, fiber_map: dict[Forest, list[Chain]] | None = None) -> int:
    """Signed size of the fiber of ``F``, checked against the filtration count."""
    if fiber_map is None:
        fiber_map = fibers(P, poset=F.jmap is not None)
    chains = fiber_map.get(F, [])
    direct = sum((-1) ** (len(c) - 1) for c in chains)
    filtrations = enumerate_filtrations(P, F)
    via_filtrations = sum((-1) ** (g.length + 1) for g in filtrations)
    if direct != (-1) ** sign_degree(F) or via_filtrations != direct:
        raise InvariantViolation(
            f"fiber sign sum {direct} for {F.names(P)}, filtrations give {via_filtrations}"
        )
    if len(chains) != len(filtrations):
        raise InvariantViolation(f"fiber of {F.names(P)} has {len(chains)} chains, {len(filtrations)} filtrations")
    lengths = sorted(len(c) - 1 for c in chains)
    if lengths != sorted(g.length + 1 for g in filtrations):
        raise InvariantViolation(f"chain lengths of {F.names(P)} are not filtration lengths plus one")
    return direct


def forest_terms(P: Interval, poset: bool | None = None) -> list[tuple[Forest, int, Monomial]]:
    """``(forest, sign, theta)`` for every forest, before collecting terms."""
    if poset is None:
        poset = not is_lattice(P)
    forests = enumerate_forests_poset(P) if poset else enumerate_forests_lattice(P)
    return [(F, (-1) ** sign_degree(F), theta(P, F, check=False)) for F in forests]


def antipode_forests(P: Interval, poset: bool | None = None) -> HopfElement:
    """Signed sum of ``theta`` over all forests; the singleton gives ``1``."""
    if P.size == 1:
        return HopfElement.one()
    out: dict[Monomial, int] = {}
    for _, sign, m in forest_terms(P, poset):
        out[m] = out.get(m, 0) + sign
    return HopfElement(out)


def compare_engines(P: Interval, poset: bool | None = None) -> tuple[HopfElement, HopfElement]:
    return antipode_chains(P), antipode_forests(P, poset)
