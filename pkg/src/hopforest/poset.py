"""Finite intervals: construction, order queries, subintervals, products, chains.

An :class:`Interval` stores its order as two tuples of bitmasks, ``up[x]`` (the
elements ``>= x``) and ``down[x]`` (the elements ``<= x``), which together form
the full ``<=`` table.  Elements are the integers ``0..size-1``; every relation
to another interval goes through an explicit map (the sorted element list of a
subinterval, the pair list of a product).

Colors
------
Colored intervals carry one opaque *tag* per element plus a hashable
``coloring`` descriptor.  The label that color-isomorphism compares is computed
*relative to the bottom of the interval*, so a subinterval ``[x, y]`` relabels
its elements against ``x``.  Labels are multisets, stored as sorted tuples,
and the label of a product element is the multiset union of its coordinates'
labels.  The built-in descriptors are ``"absolute"`` (the label of an element
is just its tag) and ``("product", left, right)``; other modules register
further kinds with :func:`register_coloring`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any, Callable, Hashable, Iterator, Sequence

from .errors import (
    InvalidInput,
    NoUniqueBottom,
    NoUniqueTop,
    NotAPartialOrder,
    NotComparable,
)

Chain = tuple[int, ...]


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _sort_key(label: Any) -> str:
    return repr(label)


def merge_labels(left: tuple, right: tuple) -> tuple:
    """Multiset union of two relative labels."""
    if not left:
        return right
    if not right:
        return left
    return tuple(sorted(left + right, key=_sort_key))


_LABELERS: dict[str, Callable[[Any, Any], tuple]] = {
    "absolute": lambda base, tag: (tag,),
}


def register_coloring(name: str, labeler: Callable[[Any, Any], tuple]) -> None:
    """Register ``labeler(base_tag, tag) -> label`` under ``name``.

    The labeler must return ``()`` when ``tag == base_tag``.
    """
    _LABELERS[name] = labeler


def relative_label(coloring: Hashable, base_tag: Any, tag: Any) -> tuple:
    if coloring is None:
        return ()
    if isinstance(coloring, tuple) and coloring and coloring[0] == "product":
        _, left, right = coloring
        return merge_labels(
            relative_label(left, base_tag[0], tag[0]),
            relative_label(right, base_tag[1], tag[1]),
        )
    try:
        labeler = _LABELERS[coloring]
    except KeyError:
        raise InvalidInput(f"unknown coloring {coloring!r}") from None
    return labeler(base_tag, tag)


@dataclass(frozen=True)
class Interval:
    """A finite poset with a unique minimum and maximum.

    Build instances with :func:`validate_interval`, :func:`interval_from_covers`
    or :func:`interval_from_up_masks`; the raw constructor does no checking.
    """

    up: tuple[int, ...]
    down: tuple[int, ...]
    bottom: int
    top: int
    names: tuple[str, ...]
    tags: tuple | None = None
    coloring: Hashable | None = None

    @property
    def size(self) -> int:
        return len(self.up)

    def __len__(self) -> int:
        return len(self.up)

    def leq(self, x: int, y: int) -> bool:
        return bool((self.up[x] >> y) & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and bool((self.up[x] >> y) & 1)

    @property
    def leq_table(self) -> list[list[bool]]:
        return [[self.leq(x, y) for y in range(self.size)] for x in range(self.size)]

    def between(self, x: int, y: int) -> list[int]:
        """Elements of ``[x, y]`` in increasing index order."""
        return list(bits(self.up[x] & self.down[y]))

    def name(self, x: int) -> str:
        return self.names[x]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InvalidInput(f"no element named {name!r}") from None

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram as ``(x, y)`` pairs with ``y`` covering ``x``."""
        out = []
        for x in range(self.size):
            for y in bits(self.up[x] & ~(1 << x)):
                if self.up[x] & self.down[y] == (1 << x) | (1 << y):
                    out.append((x, y))
        return out

    @cached_property
    def colors(self) -> tuple | None:
        """Per-element labels relative to the bottom, or None when uncolored."""
        if self.coloring is None or self.tags is None:
            return None
        base = self.tags[self.bottom]
        labels = tuple(relative_label(self.coloring, base, t) for t in self.tags)
        if all(label == () for label in labels):
            return None
        return labels

    def __repr__(self) -> str:
        colored = ", colored" if self.coloring is not None else ""
        return f"Interval(size={self.size}, covers={len(self.covers())}{colored})"


def _close(up: list[int]) -> list[int]:
    n = len(up)
    for k in range(n):
        bk = 1 << k
        uk = up[k]
        for i in range(n):
            if up[i] & bk:
                up[i] |= uk
    return up


def _check_order(up: Sequence[int]) -> None:
    n = len(up)
    for x in range(n):
        if not (up[x] >> x) & 1:
            raise NotAPartialOrder(f"relation is not reflexive at element {x}")
        for y in bits(up[x]):
            if y != x and (up[y] >> x) & 1:
                raise NotAPartialOrder(f"relation is not antisymmetric: {x} and {y}")
            if up[y] & ~up[x]:
                raise NotAPartialOrder(f"relation is not transitive through {x} <= {y}")


def _down_from_up(up: Sequence[int]) -> tuple[int, ...]:
    down = [0] * len(up)
    for x, mask in enumerate(up):
        for y in bits(mask):
            down[y] |= 1 << x
    return tuple(down)


def interval_from_up_masks(
    up: Sequence[int],
    names: Sequence[str] | None = None,
    tags: Sequence | None = None,
    coloring: Hashable | None = None,
    check: bool = True,
) -> Interval:
    """Build an interval from ``up[x]`` masks (reflexive and transitive)."""
    n = len(up)
    if n == 0:
        raise InvalidInput("an interval needs at least one element")
    if check:
        _check_order(up)
    full = (1 << n) - 1
    down = _down_from_up(up)
    bottoms = [x for x in range(n) if up[x] == full]
    tops = [x for x in range(n) if down[x] == full]
    if len(bottoms) != 1:
        raise NoUniqueBottom("poset has no unique minimum")
    if len(tops) != 1:
        raise NoUniqueTop("poset has no unique maximum")
    if names is None:
        names = [str(i) for i in range(n)]
    if len(names) != n or len(set(names)) != n:
        raise InvalidInput("element names must be unique, one per element")
    if tags is not None:
        if len(tags) != n:
            raise InvalidInput("need exactly one tag per element")
        tags = tuple(tags)
        if coloring is None:
            coloring = "absolute"
    elif coloring is not None:
        raise InvalidInput("a coloring needs per-element tags")
    return Interval(tuple(up), down, bottoms[0], tops[0], tuple(names), tags, coloring)


def validate_interval(
    table: Sequence[Sequence[bool]],
    colors: Sequence | None = None,
    names: Sequence[str] | None = None,
) -> Interval:
    """Check a full ``<=`` table and return the interval it describes."""
    n = len(table)
    if any(len(row) != n for row in table):
        raise InvalidInput("order table must be square")
    up = [sum(1 << y for y in range(n) if table[x][y]) for x in range(n)]
    return interval_from_up_masks(up, names=names, tags=colors)


def interval_from_covers(
    elements: Sequence[str],
    covers: Sequence[tuple[str, str]],
    colors: dict[str, Any] | None = None,
    tags: dict[str, Any] | None = None,
    coloring: Hashable | None = None,
) -> Interval:
    """Build an interval from relations ``(x, y)`` meaning ``x < y``.

    ``covers`` need not be irredundant; the transitive closure is taken.
    ``colors`` gives absolute per-element colors; ``tags`` together with a
    named ``coloring`` gives relative colors (for instance colored partitions).
    """
    index = {name: i for i, name in enumerate(elements)}
    if len(index) != len(elements):
        raise InvalidInput("duplicate element names")
    up = [1 << i for i in range(len(elements))]
    for pair in covers:
        try:
            x, y = pair
            up[index[x]] |= 1 << index[y]
        except (KeyError, ValueError, TypeError):
            raise InvalidInput(f"bad cover relation {pair!r}") from None
    _close(up)
    tag_list = None
    if colors is not None and tags is not None:
        raise InvalidInput("give either colors or tags, not both")
    source = colors if colors is not None else tags
    if source is not None:
        unknown = set(source) - set(index)
        if unknown:
            raise InvalidInput(f"colors for unknown elements {sorted(unknown)}")
        tag_list = [source.get(name, 0) for name in elements]
        if colors is not None:
            coloring = "absolute"
    return interval_from_up_masks(up, names=elements, tags=tag_list, coloring=coloring)


@lru_cache(maxsize=None)
def subinterval(P: Interval, x: int, y: int) -> Interval:
    """The induced interval ``[x, y]``.

    Element ``i`` of the result is the ``i``-th smallest index of ``P.between(x, y)``.
    """
    if not P.leq(x, y):
        raise NotComparable(f"{P.names[x]} is not below {P.names[y]}")
    elems = P.between(x, y)
    pos = {e: i for i, e in enumerate(elems)}
    mask = P.up[x] & P.down[y]
    up = []
    for e in elems:
        row = 0
        for f in bits(P.up[e] & mask):
            row |= 1 << pos[f]
        up.append(row)
    tags = tuple(P.tags[e] for e in elems) if P.tags is not None else None
    down = _down_from_up(up)
    return Interval(
        tuple(up),
        down,
        pos[x],
        pos[y],
        tuple(P.names[e] for e in elems),
        tags,
        P.coloring if tags is not None else None,
    )


def cartesian_product(P: Interval, Q: Interval) -> tuple[Interval, tuple[tuple[int, int], ...]]:
    """Componentwise product; element ``i * |Q| + j`` is the pair ``(i, j)``.

    Returns the product together with its pair list (the map from product
    elements back to coordinates).
    """
    m = Q.size
    pairs = tuple((i, j) for i in range(P.size) for j in range(m))
    up = []
    for i, j in pairs:
        row = 0
        for i2 in bits(P.up[i]):
            for j2 in bits(Q.up[j]):
                row |= 1 << (i2 * m + j2)
        up.append(row)
    tags = None
    coloring = None
    if P.coloring is not None or Q.coloring is not None:
        ptags = P.tags if P.tags is not None else (None,) * P.size
        qtags = Q.tags if Q.tags is not None else (None,) * Q.size
        tags = tuple((ptags[i], qtags[j]) for i, j in pairs)
        coloring = ("product", P.coloring, Q.coloring)
    names = tuple(f"({P.names[i]},{Q.names[j]})" for i, j in pairs)
    down = _down_from_up(up)
    prod = Interval(
        tuple(up), down, P.bottom * m + Q.bottom, P.top * m + Q.top, names, tags, coloring
    )
    return prod, pairs


def product_of(intervals: Sequence[Interval]) -> Interval:
    """Iterated Cartesian product; the empty product is the singleton."""
    result = singleton()
    for Q in intervals:
        result, _ = cartesian_product(result, Q) if result.size > 1 else (Q, None)
    return result


def singleton() -> Interval:
    return Interval((1,), (1,), 0, 0, ("0",))


def enumerate_chains(P: Interval) -> list[Chain]:
    """All chains ``bottom = c0 < ... < cn = top`` in lexicographic order."""
    top = P.top
    if P.bottom == top:
        return [(top,)]
    out: list[Chain] = []
    strict_up = [P.up[x] & ~(1 << x) for x in range(P.size)]

    def extend(path: list[int]) -> None:
        for z in bits(strict_up[path[-1]]):
            path.append(z)
            if z == top:
                out.append(tuple(path))
            else:
                extend(path)
            path.pop()

    extend([P.bottom])
    return out


def is_chain_of(P: Interval, chain: Sequence[int]) -> bool:
    if not chain or chain[0] != P.bottom or chain[-1] != P.top:
        return False
    return all(P.lt(a, b) for a, b in zip(chain, chain[1:]))


def _least(P: Interval, mask: int) -> int | None:
    for u in bits(mask):
        if P.up[u] & mask == mask:
            return u
    return None


def _greatest(P: Interval, mask: int) -> int | None:
    for u in bits(mask):
        if P.down[u] & mask == mask:
            return u
    return None


def join(P: Interval, x: int, y: int) -> int | None:
    """Least upper bound of ``x`` and ``y``, or None when it does not exist."""
    return _least(P, P.up[x] & P.up[y])


def meet(P: Interval, x: int, y: int) -> int | None:
    return _greatest(P, P.down[x] & P.down[y])


def join_all(P: Interval, elems: Sequence[int] | set[int] | frozenset[int]) -> int | None:
    """Least upper bound of a set; the empty join is the bottom."""
    mask = (1 << P.size) - 1
    for e in elems:
        mask &= P.up[e]
    return _least(P, mask)


def join_within(P: Interval, x: int, y: int, bound: int) -> int | None:
    """Least upper bound of ``x`` and ``y`` inside ``[bottom, bound]``."""
    return _least(P, P.up[x] & P.up[y] & P.down[bound])


@lru_cache(maxsize=None)
def is_lattice(P: Interval) -> bool:
    n = P.size
    for x in range(n):
        for y in range(x + 1, n):
            if join(P, x, y) is None or meet(P, x, y) is None:
                return False
    return True


def lower_interval_intersection(P: Interval, a: int, b: int) -> frozenset[int]:
    return frozenset(bits(P.down[a] & P.down[b]))


def maximal_elements(P: Interval, elems: Sequence[int] | set[int] | frozenset[int]) -> list[int]:
    elems = list(elems)
    mask = 0
    for e in elems:
        mask |= 1 << e
    return sorted(e for e in elems if not (P.up[e] & mask & ~(1 << e)))


def linear_extension(P: Interval) -> list[int]:
    """Elements sorted so that every element follows everything below it."""
    return sorted(range(P.size), key=lambda x: (P.down[x].bit_count(), x))


def rank_from_bottom(P: Interval) -> list[int]:
    """Length of the longest chain from the bottom to each element."""
    rank = [0] * P.size
    for x in linear_extension(P):
        below = P.down[x] & ~(1 << x)
        rank[x] = max((rank[z] + 1 for z in bits(below)), default=0)
    return rank
