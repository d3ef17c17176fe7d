import random

from hopforest.canonical import (
    ClassRegistry,
    are_equivalent,
    canonical_form,
    equivalence_witness,
)
from hopforest.families import (
    boolean_lattice,
    chain_lattice,
    colored_interval,
    figure_lattice,
    random_interval,
)
from hopforest.poset import cartesian_product, interval_from_up_masks, subinterval

from oracles import isomorphic, table


def relabel(P, perm):
    """Copy of ``P`` with element ``x`` moved to position ``perm[x]``."""
    n = P.size
    up = [0] * n
    for x in range(n):
        up[perm[x]] = sum(1 << perm[y] for y in range(n) if P.leq(x, y))
    tags = None
    if P.tags is not None:
        tags = [None] * n
        for x in range(n):
            tags[perm[x]] = P.tags[x]
    return interval_from_up_masks(up, tags=tags, coloring=P.coloring)


def test_relabeling_invariance():
    rng = random.Random(7)
    for s in range(200):
        P = random_interval(s, 10)
        perm = list(range(P.size))
        rng.shuffle(perm)
        assert canonical_form(relabel(P, perm)) == canonical_form(P)


def test_distinct_classes():
    assert canonical_form(chain_lattice(2)) != canonical_form(boolean_lattice(2))


def test_colored_two_chains_differ():
    X = colored_interval([1, 2], [((1,), 1), ((2,), 2)], [((1, 2), 1)])
    Y = colored_interval([1, 2], [((1,), 1), ((2,), 2)], [((1, 2), 2)])
    assert not are_equivalent(X, Y)
    assert canonical_form(X) != canonical_form(Y)


def test_product_commutes():
    P, Q = figure_lattice(1), figure_lattice(3)
    assert are_equivalent(cartesian_product(P, Q)[0], cartesian_product(Q, P)[0])
    assert are_equivalent(P, P)


def test_agrees_with_brute_force_isomorphism():
    pool = [random_interval(s, 7) for s in range(60)]
    for P in pool[:25]:
        for Q in pool[:25]:
            if P.size == Q.size:
                assert are_equivalent(P, Q) == isomorphic(table(P), table(Q))


def test_witness_preserves_sub_and_upper_intervals():
    rng = random.Random(3)
    for s in range(40):
        P = random_interval(s, 8)
        perm = list(range(P.size))
        rng.shuffle(perm)
        Q = relabel(P, perm)
        f = equivalence_witness(P, Q)
        assert f is not None
        for x in range(P.size):
            for y in range(P.size):
                assert P.leq(x, y) == Q.leq(f[x], f[y])
            assert are_equivalent(subinterval(P, P.bottom, x), subinterval(Q, Q.bottom, f[x]))
            assert are_equivalent(subinterval(P, x, P.top), subinterval(Q, f[x], Q.top))


def test_equivalence_relation_on_pool():
    pool = [random_interval(s, 6) for s in range(30)]
    for P in pool:
        for Q in pool:
            assert are_equivalent(P, Q) == are_equivalent(Q, P)
            if are_equivalent(P, Q):
                for R in pool:
                    if are_equivalent(Q, R):
                        assert are_equivalent(P, R)


def test_registry_idempotent_and_ordered():
    reg = ClassRegistry()
    a = reg.register(boolean_lattice(2))
    b = reg.register(boolean_lattice(2))
    assert a == b and len(reg) == 1 and reg.name(a) == "X1"
    c = reg.register(chain_lattice(2))
    assert reg.name(c) == "X2" and c in reg
