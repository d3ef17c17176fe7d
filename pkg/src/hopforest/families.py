"""Builders for concrete intervals: Boolean and chain lattices, partition
lattices, colored partition posets, lattices of order ideals, the three small
three small reference lattices, and seeded random intervals for property tests.
"""

from __future__ import annotations

import random
from typing import Sequence

from .errors import InvalidInput, SizeLimit
from .poset import (
    Interval,
    _close,
    _check_order,
    bits,
    interval_from_covers,
    interval_from_up_masks,
    is_lattice,
    register_coloring,
)

MAX_PARTITION_N = 6
MAX_RANDOM_SIZE = 14

ColoredPartition = tuple[tuple[tuple[int, ...], int], ...]


def boolean_lattice(n: int) -> Interval:
    if n < 0:
        raise InvalidInput("n must be nonnegative")
    if n > 12:
        raise SizeLimit("boolean_lattice is limited to n <= 12")
    size = 1 << n
    up = []
    for s in range(size):
        row = 0
        for t in range(size):
            if s & t == s:
                row |= 1 << t
        up.append(row)
    names = ["{" + ",".join(str(i + 1) for i in range(n) if (s >> i) & 1) + "}" for s in range(size)]
    return interval_from_up_masks(up, names=names, check=False)


def chain_lattice(n: int) -> Interval:
    """The linear order ``0 < 1 < ... < n`` (length ``n``)."""
    if n < 0:
        raise InvalidInput("n must be nonnegative")
    up = [sum(1 << j for j in range(i, n + 1)) for i in range(n + 1)]
    return interval_from_up_masks(up, names=[str(i) for i in range(n + 1)], check=False)


def set_partitions(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """All partitions of ``{1..n}`` from restricted growth strings."""
    out = []

    def rgs(prefix: list[int], top: int) -> None:
        if len(prefix) == n:
            blocks: dict[int, list[int]] = {}
            for elem, b in enumerate(prefix, start=1):
                blocks.setdefault(b, []).append(elem)
            out.append(tuple(tuple(blocks[b]) for b in sorted(blocks)))
            return
        for b in range(top + 2):
            prefix.append(b)
            rgs(prefix, max(top, b))
            prefix.pop()

    if n == 0:
        return [()]
    rgs([0], 0)
    return out


def _refines(fine: Sequence[Sequence[int]], coarse: Sequence[Sequence[int]]) -> bool:
    where = {}
    for i, block in enumerate(coarse):
        for e in block:
            where[e] = i
    return all(len({where[e] for e in block}) == 1 for block in fine)


def _block_name(block: Sequence[int]) -> str:
    return "".join(str(e) for e in block) if max(block) < 10 else ",".join(map(str, block))


def partition_lattice(n: int) -> Interval:
    """Partitions of ``{1..n}`` ordered by refinement."""
    if n < 1 or n > MAX_PARTITION_N:
        raise SizeLimit(f"partition_lattice needs 1 <= n <= {MAX_PARTITION_N}")
    parts = set_partitions(n)
    up = []
    for p in parts:
        up.append(sum(1 << j for j, q in enumerate(parts) if _refines(p, q)))
    names = ["|".join(_block_name(b) for b in p) for p in parts]
    return interval_from_up_masks(up, names=names, check=False)


def colored_partition_label(base: ColoredPartition, part: ColoredPartition) -> tuple:
    """Label of ``part`` relative to ``base``.

    One entry per block of ``part`` made of two or more blocks of ``base``:
    the sorted colors of those base blocks and the color of the merged block.
    """
    color_of = {}
    for block, color in base:
        for e in block:
            color_of[e] = (block[0], color)
    entries = []
    for block, color in part:
        inner = {color_of[e] for e in block}
        if len(inner) > 1:
            entries.append((tuple(sorted(c for _, c in inner)), color))
    return tuple(sorted(entries, key=repr))


register_coloring("colored-partition", colored_partition_label)


def _colored_leq(p: ColoredPartition, q: ColoredPartition) -> bool:
    if not _refines([b for b, _ in p], [b for b, _ in q]):
        return False
    q_blocks = dict(q)
    return all(q_blocks.get(block, color) == color for block, color in p)


def _colored_name(p: ColoredPartition) -> str:
    parts = []
    for block, color in p:
        text = _block_name(block)
        parts.append(f"{text}_{color}" if len(block) == 1 else f"({text})_{color}")
    return "/".join(parts)


def colored_partition_poset(counts: Sequence[int], top_color: int) -> Interval:
    """``N``-colored partitions of a colored set, truncated to one top.

    ``counts[i]`` is the number of elements of color ``i + 1``; elements are
    numbered so the colors appear in increasing order.  Singleton blocks keep
    their element's color, every other block takes any of the ``N`` colors, and
    ``p <= q`` when ``p`` refines ``q`` and every block common to both has the
    same color.  All one-block partitions except the one colored ``top_color``
    are removed.
    """
    N = len(counts)
    total = sum(counts)
    if N < 1 or total < 1 or any(c < 0 for c in counts):
        raise InvalidInput("need at least one color and one element")
    if not 1 <= top_color <= N:
        raise InvalidInput(f"top color must lie in 1..{N}")
    if total > 5:
        raise SizeLimit("colored_partition_poset is limited to at most 5 elements")
    elem_color = {}
    e = 1
    for color, c in enumerate(counts, start=1):
        for _ in range(c):
            elem_color[e] = color
            e += 1
    if total == 1 and elem_color[1] != top_color:
        raise InvalidInput("a one-element colored set has no partition of the requested top color")
    elements: list[ColoredPartition] = []
    for p in set_partitions(total):
        multi = [i for i, b in enumerate(p) if len(b) > 1]
        if len(p) == 1 and total > 1:
            elements.append(((p[0], top_color),))
            continue
        choices = [[elem_color[b[0]]] if len(b) == 1 else list(range(1, N + 1)) for b in p]
        stack: list[list[int]] = [[]]
        for ch in choices:
            stack = [s + [c] for s in stack for c in ch]
        for cols in stack:
            elements.append(tuple(zip(p, cols)))
        del multi
    up = []
    for p in elements:
        up.append(sum(1 << j for j, q in enumerate(elements) if _colored_leq(p, q)))
    names = [_colored_name(p) for p in elements]
    return interval_from_up_masks(
        up, names=names, tags=elements, coloring="colored-partition", check=False
    )


def colored_interval(
    element_colors: Sequence[int], bottom: ColoredPartition, top: ColoredPartition
) -> Interval:
    """The interval ``[bottom, top]`` among colored partitions of a colored set.

    Useful to build intervals like ``[1_1/2_1/3_2/(45)_2, (145)_2/(23)_1]``
    whose bottom is not the all-singletons partition.
    """
    N = max(element_colors)
    n = len(element_colors)

    def norm(p) -> ColoredPartition:
        return tuple(sorted(((tuple(sorted(b)), c) for b, c in p), key=lambda t: t[0][0]))

    bottom, top = norm(bottom), norm(top)
    for p in (bottom, top):
        for block, color in p:
            if len(block) == 1 and element_colors[block[0] - 1] != color:
                raise InvalidInput("a singleton block must keep its element's color")
    if not _colored_leq(bottom, top):
        raise InvalidInput("bottom is not below top")
    elements = []
    for p in set_partitions(n):
        choices = [[element_colors[b[0] - 1]] if len(b) == 1 else list(range(1, N + 1)) for b in p]
        stack: list[list[int]] = [[]]
        for ch in choices:
            stack = [s + [c] for s in stack for c in ch]
        for cols in stack:
            q = tuple(zip(p, cols))
            if _colored_leq(bottom, q) and _colored_leq(q, top):
                elements.append(q)
    up = [sum(1 << j for j, q in enumerate(elements) if _colored_leq(p, q)) for p in elements]
    names = [_colored_name(p) for p in elements]
    return interval_from_up_masks(
        up, names=names, tags=elements, coloring="colored-partition", check=False
    )


def poset_from_covers(elements: Sequence[str], covers: Sequence[tuple[str, str]]) -> list[int]:
    """Up-set masks of a finite poset that need not have a bottom or top."""
    index = {name: i for i, name in enumerate(elements)}
    up = [1 << i for i in range(len(elements))]
    for x, y in covers:
        try:
            up[index[x]] |= 1 << index[y]
        except KeyError:
            raise InvalidInput(f"bad relation {(x, y)!r}") from None
    _close(up)
    _check_order(up)
    return up


def order_ideals(up: Sequence[int]) -> list[int]:
    """All down-sets of the poset given by ``up`` masks, as bitmasks."""
    n = len(up)
    down = [0] * n
    for x in range(n):
        for y in bits(up[x]):
            down[y] |= 1 << x
    ideals = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for ideal in frontier:
            for x in range(n):
                if not (ideal >> x) & 1 and (down[x] & ~(1 << x)) & ~ideal == 0:
                    new = ideal | (1 << x)
                    if new not in ideals:
                        ideals.add(new)
                        nxt.append(new)
        frontier = nxt
    return sorted(ideals, key=lambda s: (s.bit_count(), s))


def distributive_lattice_of_ideals(up: Sequence[int], names: Sequence[str] | None = None) -> Interval:
    """Order ideals of a finite poset ordered by inclusion."""
    if len(up) > 16:
        raise SizeLimit("ideal lattices are limited to posets of at most 16 elements")
    if names is None:
        names = [str(i) for i in range(len(up))]
    ideals = order_ideals(up)
    rows = []
    for s in ideals:
        rows.append(sum(1 << j for j, t in enumerate(ideals) if s & t == s))
    labels = ["{" + ",".join(names[i] for i in bits(s)) + "}" for s in ideals]
    return interval_from_up_masks(rows, names=labels, check=False)


_FIGURES = {
    1: (["0", "a", "b", "c", "1"], [("0", "a"), ("0", "b"), ("a", "c"), ("b", "c"), ("c", "1")]),
    2: (
        ["0", "a", "b", "c", "d", "1"],
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "d"), ("b", "d"), ("c", "d"), ("d", "1")],
    ),
    3: (["0", "a", "b", "b'", "1"], [("0", "a"), ("a", "b"), ("a", "b'"), ("b", "1"), ("b'", "1")]),
}


def figure_lattice(which: int) -> Interval:
    """Three small reference lattices (1, 2 or 3) with letter-named elements."""
    try:
        elements, covers = _FIGURES[which]
    except KeyError:
        raise InvalidInput("figure must be 1, 2 or 3") from None
    return interval_from_covers(elements, covers)


def _adjoin_bounds(n: int, up: list[int]) -> tuple[list[int], list[str]]:
    """Add a new bottom and/or top when the poset lacks a unique one."""
    full = (1 << n) - 1
    names = [f"p{i}" for i in range(n)]
    if n == 0 or not any(u == full for u in up):
        up = [u << 1 for u in up]
        up.insert(0, (1 << (n + 1)) - 1)
        names.insert(0, "bot")
        n += 1
        full = (1 << n) - 1
    down = [0] * n
    for x in range(n):
        for y in bits(up[x]):
            down[y] |= 1 << x
    if not any(d == full for d in down):
        up = [u | (1 << n) for u in up] + [1 << n]
        names.append("top")
    return up, names


def random_interval(seed: int, max_size: int) -> Interval:
    """Reproducible random interval with at most ``max_size`` elements."""
    if max_size > MAX_RANDOM_SIZE:
        raise SizeLimit(f"random intervals are limited to {MAX_RANDOM_SIZE} elements")
    if max_size < 1:
        raise InvalidInput("max_size must be positive")
    rng = random.Random(seed)
    if max_size <= 2:
        return chain_lattice(rng.randint(0, max_size - 1))
    k = rng.randint(1, max_size - 2)
    density = rng.uniform(0.15, 0.6)
    up = [1 << i for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            if rng.random() < density:
                up[i] |= 1 << j
    _close(up)
    up, names = _adjoin_bounds(k, up)
    return interval_from_up_masks(up, names=names)


def _intersection_closure(family: set[int]) -> set[int]:
    out = set(family)
    frontier = list(out)
    while frontier:
        nxt = []
        for s in frontier:
            for t in list(out):
                u = s & t
                if u not in out:
                    out.add(u)
                    nxt.append(u)
        frontier = nxt
    return out


def random_lattice(seed: int, max_size: int) -> Interval:
    """Reproducible random lattice from a random intersection-closed set family."""
    if max_size > MAX_RANDOM_SIZE:
        raise SizeLimit(f"random lattices are limited to {MAX_RANDOM_SIZE} elements")
    if max_size < 1:
        raise InvalidInput("max_size must be positive")
    rng = random.Random(seed)
    target = rng.randint(min(3, max_size), max_size)
    ground = rng.randint(2, 6)
    full = (1 << ground) - 1
    family = {full}
    for _ in range(20 * max_size):
        if len(family) >= target:
            break
        grown = _intersection_closure(family | {rng.randrange(0, full)})
        if len(grown) <= max_size:
            family = grown
    sets = sorted(family, key=lambda s: (s.bit_count(), s))
    up = [sum(1 << j for j, t in enumerate(sets) if s & t == s) for s in sets]
    names = ["{" + ",".join(str(i + 1) for i in bits(s)) + "}" for s in sets]
    P = interval_from_up_masks(up, names=names, check=False)
    assert is_lattice(P)
    return P


def random_nonlattice_interval(seed: int, max_size: int) -> Interval:
    """First non-lattice among ``random_interval(seed', max_size)`` for derived seeds."""
    for attempt in range(10_000):
        P = random_interval(seed * 10_007 + attempt, max_size)
        if not is_lattice(P):
            return P
    raise InvalidInput("no non-lattice found; max_size too small")


def all_posets(n: int) -> list[list[int]]:
    """All labeled partial orders on ``n`` elements as up-set masks."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = []

    def rec(k: int, up: list[int]) -> None:
        if k == len(pairs):
            closed = _close(list(up))
            if closed == up:
                try:
                    _check_order(up)
                except InvalidInput:
                    return
                out.append(list(up))
            return
        i, j = pairs[k]
        rec(k + 1, up)
        if not (up[j] >> i) & 1:
            up[i] |= 1 << j
            rec(k + 1, up)
            up[i] &= ~(1 << j)

    rec(0, [1 << i for i in range(n)])
    return out
