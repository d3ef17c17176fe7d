"""Canonical forms of (colored) intervals and the class registry.

Two intervals are equivalent exactly when they are isomorphic as posets and
the isomorphism preserves the relative color labels.  The certificate is the
lexicographically least encoding of the order table over all leaves of an
individualization-refinement search, so equality of certificates is exact.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache

from .poset import Interval, bits


@dataclass(frozen=True, order=True)
class CanonicalForm:
    certificate: bytes

    def hex(self) -> str:
        return self.certificate.hex()

    def __repr__(self) -> str:
        return f"CanonicalForm({self.certificate[:12].hex()}...)"


ClassId = CanonicalForm

_REPRESENTATIVES: dict[CanonicalForm, Interval] = {}
_REP_LOCK = threading.Lock()


def _refine(cells: list[list[int]], su: list[list[int]], sd: list[list[int]], n: int) -> list[list[int]]:
    cell_of = [0] * n
    while True:
        for i, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = i
        new: list[list[int]] = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                new.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                sig = (
                    tuple(sorted(cell_of[w] for w in su[v])),
                    tuple(sorted(cell_of[w] for w in sd[v])),
                )
                groups.setdefault(sig, []).append(v)
            if len(groups) == 1:
                new.append(cell)
            else:
                split = True
                new.extend(groups[sig] for sig in sorted(groups))
        cells = new
        if not split:
            return cells


def _search(up: tuple[int, ...], colors: tuple | None) -> tuple[bytes, tuple[int, ...]]:
    n = len(up)
    strict_up = [up[v] & ~(1 << v) for v in range(n)]
    down = [0] * n
    for v in range(n):
        for w in bits(up[v]):
            down[w] |= 1 << v
    strict_down = [down[v] & ~(1 << v) for v in range(n)]
    su = [list(bits(m)) for m in strict_up]
    sd = [list(bits(m)) for m in strict_down]
    keys = [repr(c) for c in colors] if colors is not None else [""] * n

    rank = [0] * n
    for v in sorted(range(n), key=lambda v: down[v].bit_count()):
        rank[v] = max((rank[w] + 1 for w in sd[v]), default=0)

    inv: dict[tuple, list[int]] = {}
    for v in range(n):
        inv.setdefault((keys[v], rank[v], len(sd[v]), len(su[v])), []).append(v)
    cells = [inv[k] for k in sorted(inv)]
    twin = [(keys[v], strict_up[v], strict_down[v]) for v in range(n)]

    best: list = [None, None]

    def leaf(order: list[int]) -> None:
        pos = [0] * n
        for i, v in enumerate(order):
            pos[v] = i
        rows = []
        for v in order:
            row = 0
            for w in bits(up[v]):
                row |= 1 << pos[w]
            rows.append(row)
        enc = tuple(rows)
        if best[0] is None or enc < best[0]:
            best[0] = enc
            best[1] = tuple(order)

    def search(cells: list[list[int]]) -> None:
        cells = _refine(cells, su, sd, n)
        for i, cell in enumerate(cells):
            if len(cell) > 1:
                break
        else:
            leaf([c[0] for c in cells])
            return
        seen = set()
        for v in cell:
            # swapping incomparable twins is an automorphism fixing the current partition
            if twin[v] in seen:
                continue
            seen.add(twin[v])
            rest = [w for w in cell if w != v]
            search(cells[:i] + [[v], rest] + cells[i + 1 :])

    search(cells)
    rows, order = best
    width = (n + 7) // 8
    header = repr((n, tuple(keys[v] for v in order) if colors is not None else None)).encode()
    body = b"".join(r.to_bytes(width, "big") for r in rows)
    return header + b"\x00" + body, order


@lru_cache(maxsize=None)
def _canonical_cached(up: tuple[int, ...], colors: tuple | None) -> tuple[CanonicalForm, tuple[int, ...]]:
    cert, order = _search(up, colors)
    return CanonicalForm(cert), order


def canonical_labeling(P: Interval) -> tuple[CanonicalForm, tuple[int, ...]]:
    """Canonical form plus the canonical order (position -> element of ``P``)."""
    form, order = _canonical_cached(P.up, P.colors)
    if form not in _REPRESENTATIVES:
        with _REP_LOCK:
            _REPRESENTATIVES.setdefault(form, P)
    return form, order


def canonical_form(P: Interval) -> CanonicalForm:
    return canonical_labeling(P)[0]


def representative(cid: ClassId) -> Interval:
    """Some interval of the class (the first one ever canonicalized)."""
    return _REPRESENTATIVES[cid]


def are_equivalent(P: Interval, Q: Interval) -> bool:
    if P.size != Q.size:
        return False
    if (P.colors is None) != (Q.colors is None):
        return False
    return canonical_form(P) == canonical_form(Q)


def equivalence_witness(P: Interval, Q: Interval) -> list[int] | None:
    """An explicit color-preserving isomorphism ``x -> mapping[x]``, or None."""
    if not are_equivalent(P, Q):
        return None
    _, order_p = canonical_labeling(P)
    _, order_q = canonical_labeling(Q)
    mapping = [0] * P.size
    for x, y in zip(order_p, order_q):
        mapping[x] = y
    return mapping


class ClassRegistry:
    """Maps certificates to stable pretty names ``X1, X2, ...``.

    Names follow registration order.  Writes are serialized by a lock, reads
    are plain dictionary lookups.
    """

    def __init__(self, prefix: str = "X") -> None:
        self.prefix = prefix
        self._names: dict[ClassId, str] = {}
        self._reps: dict[ClassId, Interval] = {}
        self._order: list[ClassId] = []
        self._lock = threading.Lock()

    def register(self, P: Interval) -> ClassId:
        return self.register_class(canonical_form(P), P)

    def register_class(self, cid: ClassId, rep: Interval | None = None) -> ClassId:
        if cid in self._names:
            return cid
        with self._lock:
            if cid not in self._names:
                self._order.append(cid)
                self._names[cid] = f"{self.prefix}{len(self._order)}"
                self._reps[cid] = rep if rep is not None else representative(cid)
        return cid

    def name(self, cid: ClassId) -> str:
        return self._names[cid]

    def representative(self, cid: ClassId) -> Interval:
        return self._reps[cid]

    def classes(self) -> list[ClassId]:
        return list(self._order)

    def __contains__(self, cid: ClassId) -> bool:
        return cid in self._names

    def __len__(self) -> int:
        return len(self._order)


def register_in_documented_order(registry: ClassRegistry, classes) -> None:
    """Register classes sorted by (representative size, certificate).

    This is the fixed order the CLI uses, so names do not depend on which
    engine discovered a class first.
    """
    for cid in sorted(set(classes), key=lambda c: (representative(c).size, c.certificate)):
        registry.register_class(cid)
