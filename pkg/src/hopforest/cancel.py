"""Upper-indecomposability and cancellation in the forest antipode."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InputDecomposable
from .forest import Forest, forest_terms, sign_degree
from .hopf import Monomial, interval_monomial
from .poset import Interval, bits


def _indecomposable(P: Interval, x: int, y: int) -> bool:
    return len(interval_monomial(P, x, y)) == 1


def _upper_ok(P: Interval, x: int, y: int) -> bool:
    """Every ``[z, y]`` with ``x <= z < y`` is indecomposable."""
    return all(_indecomposable(P, z, y) for z in bits(P.up[x] & P.down[y]) if z != y)


def _require_indecomposable(P: Interval) -> None:
    if P.size == 1 or not _indecomposable(P, P.bottom, P.top):
        raise InputDecomposable("the check is defined for indecomposable intervals only")


def is_upper_indecomposable(P: Interval) -> bool:
    _require_indecomposable(P)
    return _upper_ok(P, P.bottom, P.top)


def sui_witness(P: Interval) -> tuple[int, int, int] | None:
    """Some ``(x, y, z)`` with ``[x, y]`` indecomposable but ``[z, y]`` not."""
    for x in range(P.size):
        for y in bits(P.up[x]):
            if y == x or not _indecomposable(P, x, y):
                continue
            for z in bits(P.up[x] & P.down[y]):
                if z != y and not _indecomposable(P, z, y):
                    return x, y, z
    return None


def is_sui(P: Interval) -> bool:
    """Every indecomposable subinterval is upper-indecomposable."""
    _require_indecomposable(P)
    return sui_witness(P) is None


def is_sui_lower(P: Interval) -> bool:
    """The same property tested on lower intervals ``[0, y]`` only."""
    _require_indecomposable(P)
    b = P.bottom
    return all(
        _upper_ok(P, b, y) for y in range(P.size) if y != b and _indecomposable(P, b, y)
    )


@dataclass(frozen=True)
class CancellationReport:
    groups: dict[Monomial, list[tuple[Forest, int]]]
    canceling_pairs: list[tuple[Forest, Forest]]

    @property
    def is_cancellation_free(self) -> bool:
        return all(len({s for _, s in terms}) == 1 for terms in self.groups.values())

    @property
    def mixed_groups(self) -> list[Monomial]:
        return [m for m, terms in self.groups.items() if len({s for _, s in terms}) > 1]


def cancellation_report(P: Interval, poset: bool | None = None) -> CancellationReport:
    """Group forests by the class of their theta and pair up opposite signs.

    A pair ``(F, F')`` is listed when both share a group and ``F'`` has sign
    degree one more than ``F``.
    """
    groups: dict[Monomial, list[tuple[Forest, int]]] = {}
    if P.size > 1:
        for F, sign, m in forest_terms(P, poset):
            groups.setdefault(m, []).append((F, sign))
    pairs = []
    for terms in groups.values():
        for F, s in terms:
            for G, t in terms:
                if s != t and sign_degree(G) == sign_degree(F) + 1:
                    pairs.append((F, G))
    return CancellationReport(groups, pairs)


@dataclass(frozen=True)
class FamilyVerdict:
    upper_indecomposable: bool
    checked: int
    witness: tuple[int, int, int, int] | None
    """``(generator index, x, y, z)`` with ``[x, y]`` indecomposable and ``[z, y]`` not."""


def family_check(generators: Sequence[Interval]) -> FamilyVerdict:
    """Check every indecomposable subinterval of every generator.

    Factors of a subinterval are themselves subintervals, so this covers the
    closure of the generators under intervals and factorization.  A true
    verdict certifies only that finite closure.
    """
    checked = 0
    for i, P in enumerate(generators):
        for x in range(P.size):
            for y in bits(P.up[x]):
                if y == x or not _indecomposable(P, x, y):
                    continue
                checked += 1
                for z in bits(P.up[x] & P.down[y]):
                    if z != y and not _indecomposable(P, z, y):
                        return FamilyVerdict(False, checked, (i, x, y, z))
    return FamilyVerdict(True, checked, None)


def family_upper_indecomposable(generators: Sequence[Interval]) -> bool:
    return family_check(generators).upper_indecomposable
