"""Interval pools shared by the acceptance suite and the module tests."""

from __future__ import annotations

from functools import cache

from hopforest.canonical import canonical_form
from hopforest.errors import InvalidInput
from hopforest.families import (
    all_posets,
    boolean_lattice,
    chain_lattice,
    colored_partition_poset,
    distributive_lattice_of_ideals,
    figure_lattice,
    partition_lattice,
    random_lattice,
    random_nonlattice_interval,
)


@cache
def ideal_lattices() -> tuple:
    seen = {}
    for n in range(5):
        for up in all_posets(n):
            L = distributive_lattice_of_ideals(up)
            seen.setdefault(canonical_form(L), L)
    return tuple(seen.values())


@cache
def named_lattices() -> tuple:
    out = [(f"figure{i}", figure_lattice(i)) for i in (1, 2, 3)]
    out += [(f"B{n}", boolean_lattice(n)) for n in range(5)]
    out += [(f"chain{n}", chain_lattice(n)) for n in range(6)]
    out += [(f"Pi{n}", partition_lattice(n)) for n in range(1, 5)]
    out += [(f"J{i}", L) for i, L in enumerate(ideal_lattices())]
    return tuple(out)


@cache
def random_lattices() -> tuple:
    return tuple((f"rl{s}", random_lattice(s, 10)) for s in range(200))


@cache
def lattice_pool() -> tuple:
    """Everything criterion 1 runs on, as (label, interval) pairs."""
    return named_lattices() + random_lattices()


COLOR_COUNTS = [(n,) for n in range(1, 5)] + [
    (a, b) for a in range(5) for b in range(5) if 1 <= a + b <= 4
]


@cache
def colored_pool() -> tuple:
    out = []
    for counts in COLOR_COUNTS:
        for r in range(1, len(counts) + 1):
            try:
                P = colored_partition_poset(counts, r)
            except InvalidInput:
                continue
            out.append((f"colored{counts}^{r}", P))
    return tuple(out)


@cache
def nonlattice_pool() -> tuple:
    return tuple((f"rn{s}", random_nonlattice_interval(s, 8)) for s in range(100))


@cache
def poset_pool() -> tuple:
    """Everything criterion 2 runs on."""
    return colored_pool() + nonlattice_pool()


@cache
def all_pool() -> tuple:
    return lattice_pool() + poset_pool()
