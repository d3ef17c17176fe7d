"""The incidence Hopf algebra over the integers.

Elements are sparse maps from monomials to nonzero integers.  A monomial is a
sorted tuple of class ids of indecomposable intervals, the empty tuple being
the unit.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping

from .canonical import ClassId, canonical_form, representative
from .decompose import prime_center
from .errors import ChainNotInInterval
from .poset import (
    Chain,
    Interval,
    bits,
    enumerate_chains,
    is_chain_of,
    linear_extension,
    subinterval,
)

Monomial = tuple[ClassId, ...]

_FACTORS: dict[ClassId, Monomial] = {}


def mul_monomials(*ms: Monomial) -> Monomial:
    out: list[ClassId] = []
    for m in ms:
        out.extend(m)
    return tuple(sorted(out))


def class_monomial(P: Interval) -> Monomial:
    """Factor ``P`` into indecomposable classes; the singleton gives the unit."""
    if P.size == 1:
        return ()
    cid = canonical_form(P)
    mono = _FACTORS.get(cid)
    if mono is None:
        pc = prime_center(P)
        if len(pc) == 1:
            mono = (cid,)
        else:
            mono = tuple(sorted(canonical_form(subinterval(P, P.bottom, a)) for a in pc))
        _FACTORS[cid] = mono
    return mono


@lru_cache(maxsize=None)
def interval_monomial(P: Interval, x: int, y: int) -> Monomial:
    return class_monomial(subinterval(P, x, y))


def is_indecomposable(P: Interval) -> bool:
    return len(class_monomial(P)) == 1


@lru_cache(maxsize=None)
def indecomposable_elements(P: Interval) -> tuple[int, ...]:
    """``I(P)``: elements other than bottom and top with indecomposable ``[0, x]``."""
    return tuple(
        x
        for x in range(P.size)
        if x not in (P.bottom, P.top) and len(interval_monomial(P, P.bottom, x)) == 1
    )


class HopfElement:
    """Integer linear combination of monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None) -> None:
        self.terms: dict[Monomial, int] = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def one(cls) -> HopfElement:
        return cls({(): 1})

    @classmethod
    def monomial(cls, m: Monomial, coeff: int = 1) -> HopfElement:
        return cls({m: coeff})

    @classmethod
    def of_interval(cls, P: Interval) -> HopfElement:
        return cls({class_monomial(P): 1})

    def _add_into(self, other: HopfElement, sign: int) -> HopfElement:
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + sign * c
        return HopfElement(out)

    def __add__(self, other):
        if isinstance(other, int):
            other = HopfElement({(): other})
        return self._add_into(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = HopfElement({(): other})
        return self._add_into(other, -1)

    def __neg__(self) -> HopfElement:
        return HopfElement({m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return HopfElement({m: c * other for m, c in self.terms.items()})
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mul_monomials(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return HopfElement(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = HopfElement({(): other})
        if not isinstance(other, HopfElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __iter__(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def classes(self) -> set[ClassId]:
        return {c for m in self.terms for c in m}

    def evaluate(self, value: Callable[[ClassId], int]) -> int:
        total = 0
        for m, c in self.terms.items():
            term = c
            for cid in m:
                term *= value(cid)
            total += term
        return total

    def __repr__(self) -> str:
        return f"HopfElement({len(self.terms)} terms)"


class TensorElement:
    """Integer combination of k-fold tensors of monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[Monomial, ...], int] | None = None) -> None:
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    def __add__(self, other: TensorElement) -> TensorElement:
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return TensorElement(out)

    def __mul__(self, other: TensorElement) -> TensorElement:
        out: dict[tuple[Monomial, ...], int] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(mul_monomials(a, b) for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + c1 * c2
        return TensorElement(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorElement) and self.terms == other.terms

    def __repr__(self) -> str:
        return f"TensorElement({len(self.terms)} terms)"


def coproduct(P: Interval) -> TensorElement:
    out: dict[tuple[Monomial, ...], int] = {}
    for x in range(P.size):
        key = (interval_monomial(P, P.bottom, x), interval_monomial(P, x, P.top))
        out[key] = out.get(key, 0) + 1
    return TensorElement(out)


def coproduct_of_monomial(m: Monomial) -> TensorElement:
    """Coproduct extended multiplicatively from class representatives."""
    result = TensorElement({((), ()): 1})
    for cid in m:
        result = result * coproduct(representative(cid))
    return result


def coassociativity_sides(P: Interval) -> tuple[TensorElement, TensorElement]:
    """``(delta x id) delta P`` and ``(id x delta) delta P`` as 3-fold tensors.

    The inner coproduct is applied to the class monomial through class
    representatives, so the check also exercises multiplicativity of ``delta``.
    """
    left: dict[tuple[Monomial, ...], int] = {}
    right: dict[tuple[Monomial, ...], int] = {}
    for (m1, m2), c in coproduct(P).terms.items():
        for (a, b), d in coproduct_of_monomial(m1).terms.items():
            key = (a, b, m2)
            left[key] = left.get(key, 0) + c * d
        for (a, b), d in coproduct_of_monomial(m2).terms.items():
            key = (m1, a, b)
            right[key] = right.get(key, 0) + c * d
    return TensorElement(left), TensorElement(right)


def counit(P: Interval) -> int:
    return 1 if P.size == 1 else 0


def omega(P: Interval, chain: Chain) -> Monomial:
    if not is_chain_of(P, chain):
        raise ChainNotInInterval(f"{chain!r} is not a bottom-to-top chain")
    return mul_monomials(*(interval_monomial(P, a, b) for a, b in zip(chain, chain[1:])))


def antipode_chains(P: Interval) -> HopfElement:
    """Alternating sum over all chains of the products of their links."""
    out: dict[Monomial, int] = {}
    for chain in enumerate_chains(P):
        m = omega(P, chain)
        out[m] = out.get(m, 0) + (-1) ** (len(chain) - 1)
    return HopfElement(out)


ClassFunction = Callable[[Interval], HopfElement]


def identity(P: Interval) -> HopfElement:
    return HopfElement.of_interval(P)


def unit_counit(P: Interval) -> HopfElement:
    return HopfElement({(): counit(P)})


def convolve(f: ClassFunction, g: ClassFunction) -> ClassFunction:
    def conv(P: Interval) -> HopfElement:
        total = HopfElement()
        for x in range(P.size):
            total = total + f(subinterval(P, P.bottom, x)) * g(subinterval(P, x, P.top))
        return total

    return conv


def antipode_axiom_check(P: Interval, antipode: ClassFunction = antipode_chains) -> bool:
    """Both convolution identities ``S * id = id * S = unit . counit`` at ``P``."""
    target = unit_counit(P)
    return convolve(antipode, identity)(P) == target and convolve(identity, antipode)(P) == target


def evaluate_mobius(P: Interval) -> int:
    """The antipode with every class sent to 1, i.e. the signed chain count."""
    return sum((-1) ** (len(c) - 1) for c in enumerate_chains(P))


def mobius_recursive(P: Interval) -> int:
    mu = [0] * P.size
    for y in linear_extension(P):
        if y == P.bottom:
            mu[y] = 1
        else:
            mu[y] = -sum(mu[z] for z in bits(P.down[y] & ~(1 << y)))
    return mu[P.top]


def _name_key(name: str) -> tuple:
    head = name.rstrip("0123456789")
    tail = name[len(head):]
    return (head, int(tail) if tail else -1)


def monomial_names(m: Monomial, names: Mapping[ClassId, str]) -> list[str]:
    return sorted((names[c] for c in m), key=_name_key)


def sorted_terms(h: HopfElement, names: Mapping[ClassId, str]) -> list[tuple[list[str], int]]:
    """Terms ordered by degree, then by the lexicographic list of factor names."""
    rows = [(monomial_names(m, names), c) for m, c in h.terms.items()]
    rows.sort(key=lambda r: (len(r[0]), [_name_key(n) for n in r[0]]))
    return rows


def format_monomial(factor_names: Iterable[str]) -> str:
    counts: dict[str, int] = {}
    for n in factor_names:
        counts[n] = counts.get(n, 0) + 1
    parts = [n if k == 1 else f"{n}^{k}" for n, k in counts.items()]
    return "*".join(parts)


def format_element(h: HopfElement, names: Mapping[ClassId, str]) -> str:
    """Human-readable expression such as ``-X3 + 2*X1*X2 - X1^3``."""
    rows = sorted_terms(h, names)
    if not rows:
        return "0"
    pieces = []
    for i, (fnames, c) in enumerate(rows):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = format_monomial(fnames)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        pieces.append(f"{sign}{text}" if i == 0 else f" {sign} {text}")
    return "".join(pieces)
