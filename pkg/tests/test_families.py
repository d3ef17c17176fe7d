import pytest

from hopforest.canonical import are_equivalent, canonical_form
from hopforest.errors import InvalidInput, SizeLimit
from hopforest.families import (
    all_posets,
    boolean_lattice,
    chain_lattice,
    colored_interval,
    colored_partition_poset,
    distributive_lattice_of_ideals,
    figure_lattice,
    order_ideals,
    partition_lattice,
    poset_from_covers,
    random_interval,
    random_lattice,
    random_nonlattice_interval,
    set_partitions,
)
from hopforest.forest import enumerate_forests_poset
from hopforest.hopf import indecomposable_elements
from hopforest.poset import (
    cartesian_product,
    interval_from_up_masks,
    is_lattice,
    product_of,
    subinterval,
)

from oracles import bell


def uncolored(P):
    return interval_from_up_masks(list(P.up), check=False)


def test_sizes():
    assert [len(set_partitions(n)) for n in range(1, 7)] == [bell(n) for n in range(1, 7)]
    assert partition_lattice(3).size == 5
    assert partition_lattice(4).size == 15
    assert boolean_lattice(0).size == 1
    assert boolean_lattice(4).size == 16
    assert chain_lattice(3).size == 4


def test_size_limits():
    with pytest.raises(SizeLimit):
        partition_lattice(7)
    with pytest.raises(SizeLimit):
        random_interval(0, 15)
    with pytest.raises(SizeLimit):
        colored_partition_poset((3, 3), 1)
    with pytest.raises(InvalidInput):
        colored_partition_poset((0, 1), 1)
    with pytest.raises(InvalidInput):
        colored_partition_poset((1, 1), 3)
    with pytest.raises(InvalidInput):
        figure_lattice(4)


def test_upper_intervals_of_partition_lattices():
    for n in range(2, 6):
        P = partition_lattice(n)
        for rho in range(P.size):
            blocks = P.names[rho].count("|") + 1
            assert are_equivalent(subinterval(P, rho, P.top), partition_lattice(blocks))


def test_partition_indecomposables_have_one_block():
    for n in range(2, 6):
        P = partition_lattice(n)
        expected = {
            x for x in range(P.size)
            if x not in (P.bottom, P.top) and sum(len(b) > 1 for b in P.names[x].split("|")) == 1
        }
        assert set(indecomposable_elements(P)) == expected


def test_one_color_is_partition_lattice():
    for n in range(1, 5):
        P = colored_partition_poset((n,), 1)
        assert canonical_form(uncolored(P)) == canonical_form(partition_lattice(n))


def test_colored_sizes_and_shape():
    # three two-block partitions, each in two colors, between bottom and top
    P = colored_partition_poset((2, 1), 1)
    assert P.size == 8 and is_lattice(P)
    Q = colored_partition_poset((2, 2), 1)
    assert Q.size == 34 and not is_lattice(Q)


def test_colored_equivalence_display():
    A = colored_interval(
        [1, 1, 2, 2, 1],
        [((1,), 1), ((2,), 1), ((3,), 2), ((4,), 2), ((5,), 1)],
        [((1, 3), 2), ((4, 5), 1), ((2,), 1)],
    )
    B = colored_interval(
        [1, 1, 2, 2, 2],
        [((1,), 1), ((2,), 1), ((3,), 2), ((4, 5), 2)],
        [((1, 4, 5), 2), ((2, 3), 1)],
    )
    C = colored_interval(
        [1, 2, 1, 2],
        [((1,), 1), ((2,), 2), ((3,), 1), ((4,), 2)],
        [((1, 2), 2), ((3, 4), 1)],
    )
    assert are_equivalent(A, B) and are_equivalent(B, C)
    # same shape, but the merged block colors differ
    D = colored_interval(
        [1, 2, 1, 2],
        [((1,), 1), ((2,), 2), ((3,), 1), ((4,), 2)],
        [((1, 2), 1), ((3, 4), 1)],
    )
    assert are_equivalent(uncolored(C), uncolored(D))
    assert not are_equivalent(C, D)


def test_colored_product_display():
    L = colored_interval([1, 2, 1], [((1,), 1), ((2,), 2), ((3,), 1)], [((1, 2), 1), ((3,), 1)])
    R = colored_interval([2, 1, 1], [((1,), 2), ((2, 3), 1)], [((1, 2, 3), 2)])
    prod, _ = cartesian_product(L, R)
    M = colored_interval(
        [1, 2, 1, 2, 1, 1],
        [((1,), 1), ((2,), 2), ((3,), 1), ((4,), 2), ((5, 6), 1)],
        [((1, 2), 1), ((3,), 1), ((4, 5, 6), 2)],
    )
    N = colored_interval(
        [1, 2, 2, 1],
        [((1,), 1), ((2,), 2), ((3,), 2), ((4,), 1)],
        [((1, 2), 1), ((3, 4), 2)],
    )
    assert are_equivalent(prod, M) and are_equivalent(M, N)


def test_colored_forests_are_laminar_one_block_sets():
    P = colored_partition_poset((2, 2), 1)
    for F in enumerate_forests_poset(P):
        blocks = []
        for x in F.nodes:
            multi = [b for b, _ in P.tags[x] if len(b) > 1]
            assert len(multi) == 1
            blocks.append(set(multi[0]))
        for s in blocks:
            for t in blocks:
                assert s <= t or t <= s or not (s & t)


def test_ideal_lattices():
    assert are_equivalent(distributive_lattice_of_ideals(poset_from_covers(["x", "y"], [])), boolean_lattice(2))
    assert are_equivalent(distributive_lattice_of_ideals(poset_from_covers(["x", "y"], [("x", "y")])), chain_lattice(2))
    assert distributive_lattice_of_ideals([]).size == 1
    assert order_ideals([0b11, 0b10]) == [0, 0b01, 0b11]


def test_ideal_lattices_are_distributive():
    from hopforest.poset import join, meet

    for up in all_posets(3):
        L = distributive_lattice_of_ideals(up)
        assert is_lattice(L)
        r = range(L.size)
        for x in r:
            for y in r:
                for z in r:
                    assert meet(L, x, join(L, y, z)) == join(L, meet(L, x, y), meet(L, x, z))


def test_all_posets_counts():
    # labeled posets on n points
    assert [len(all_posets(n)) for n in range(5)] == [1, 1, 3, 19, 219]


def test_poset_from_covers_rejects_cycles():
    with pytest.raises(InvalidInput):
        poset_from_covers(["x", "y"], [("x", "y"), ("y", "x")])
    with pytest.raises(InvalidInput):
        poset_from_covers(["x"], [("x", "z")])


def test_random_generators():
    for s in range(20):
        assert random_interval(s, 9).up == random_interval(s, 9).up
        assert random_interval(s, 9).size <= 9
        L = random_lattice(s, 10)
        assert is_lattice(L) and L.size <= 10
        N = random_nonlattice_interval(s, 8)
        assert not is_lattice(N) and N.size <= 8
    assert random_interval(3, 1).size == 1


def test_product_of_chains_is_boolean():
    assert are_equivalent(product_of([chain_lattice(1)] * 3), boolean_lattice(3))
