"""Center, prime center and unique factorization of intervals.

An element ``a`` is central when some ``a'`` makes ``(x, y) -> x v y`` an
isomorphism ``[0, a] x [0, a'] -> P`` that also respects color labels.  The
factor isomorphism is required to be this concrete join map, i.e. the one with
``a`` at the coordinate ``(1, 0)``.  Checking only for *some* isomorphism lets
non-central elements through: in the 2x3 grid the element ``(0, 1)`` has a
2-chain below it, and a 3-chain ``[0, (0, 2)]`` completes the size count.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .canonical import ClassId, are_equivalent, canonical_form
from .errors import NotALattice
from .poset import (
    Interval,
    bits,
    is_lattice,
    join,
    meet,
    merge_labels,
    product_of,
    subinterval,
)


@dataclass(frozen=True)
class Factorization:
    """Indecomposable factors ``[0, a]`` for ``a`` in the prime center.

    ``complete`` records that the product of the factor representatives was
    checked to be equivalent to the factored interval.
    """

    factors: tuple[tuple[ClassId, int], ...]
    complete: bool

    @property
    def classes(self) -> tuple[ClassId, ...]:
        return tuple(sorted(c for c, _ in self.factors))


def direct_pair_map(P: Interval, a: int, a2: int) -> dict[tuple[int, int], int] | None:
    """The map ``(x, y) -> x v y`` from ``[0,a] x [0,a2]`` if it is an isomorphism."""
    n = P.size
    xs = list(bits(P.down[a]))
    ys = list(bits(P.down[a2]))
    if len(xs) * len(ys) != n:
        return None
    psi: dict[tuple[int, int], int] = {}
    image = 0
    for x in xs:
        for y in ys:
            j = join(P, x, y)
            if j is None or (image >> j) & 1:
                return None
            image |= 1 << j
            psi[(x, y)] = j
    ma, mb = P.down[a], P.down[a2]
    for (x, y), j in psi.items():
        expected = 0
        for x2 in bits(P.up[x] & ma):
            for y2 in bits(P.up[y] & mb):
                expected |= 1 << psi[(x2, y2)]
        if expected != P.up[j]:
            return None
    colors = P.colors
    if colors is not None:
        for (x, y), j in psi.items():
            if colors[j] != merge_labels(colors[x], colors[y]):
                return None
    return psi


def center_complement(P: Interval, a: int) -> int | None:
    """Some ``a'`` realizing ``a`` as a direct-product coordinate, if any."""
    n = P.size
    if a == P.bottom:
        return P.top
    if a == P.top:
        return P.bottom
    size_a = P.down[a].bit_count()
    if n % size_a:
        return None
    need = n // size_a
    b0 = 1 << P.bottom
    for a2 in range(n):
        if a2 in (a, P.bottom, P.top):
            continue
        if P.down[a2].bit_count() != need or P.down[a] & P.down[a2] != b0:
            continue
        if direct_pair_map(P, a, a2) is not None:
            return a2
    return None


@lru_cache(maxsize=None)
def center(P: Interval) -> frozenset[int]:
    return frozenset(a for a in range(P.size) if center_complement(P, a) is not None)


@lru_cache(maxsize=None)
def prime_center(P: Interval) -> frozenset[int]:
    """Minimal nonzero central elements; empty for the singleton."""
    z = center(P) - {P.bottom}
    mask = sum(1 << a for a in z)
    return frozenset(a for a in z if not (P.down[a] & mask & ~(1 << a)))


def is_decomposable(P: Interval) -> bool:
    return len(prime_center(P)) > 1


def factor_indecomposable(P: Interval, verify: bool = True) -> Factorization:
    if P.size == 1:
        return Factorization((), True)
    pc = sorted(prime_center(P))
    parts = [subinterval(P, P.bottom, a) for a in pc]
    factors = tuple(sorted((canonical_form(Q), a) for Q, a in zip(parts, pc)))
    complete = False
    if verify:
        complete = are_equivalent(product_of(parts), P)
    return Factorization(factors, complete)


def _tables(P: Interval) -> tuple[list[list[int]], list[list[int]]]:
    n = P.size
    J = [[join(P, x, y) for y in range(n)] for x in range(n)]
    M = [[meet(P, x, y) for y in range(n)] for x in range(n)]
    return J, M


def is_distributive_element(P: Interval, a: int, tables=None) -> bool:
    J, M = tables or _tables(P)
    n = P.size
    for x in range(n):
        for y in range(n):
            if M[a][J[x][y]] != J[M[a][x]][M[a][y]]:
                return False
            if M[x][J[a][y]] != J[M[x][a]][M[x][y]]:
                return False
            if J[a][M[x][y]] != M[J[a][x]][J[a][y]]:
                return False
            if J[x][M[a][y]] != M[J[x][a]][J[x][y]]:
                return False
    return True


def is_complemented(P: Interval, a: int, tables=None) -> bool:
    J, M = tables or _tables(P)
    return any(J[a][b] == P.top and M[a][b] == P.bottom for b in range(P.size))


def center_via_distributivity(P: Interval) -> frozenset[int]:
    """Elements that are distributive and complemented (lattices only)."""
    if not is_lattice(P):
        raise NotALattice("distributivity test needs a lattice")
    tables = _tables(P)
    return frozenset(
        a
        for a in range(P.size)
        if is_complemented(P, a, tables) and is_distributive_element(P, a, tables)
    )
