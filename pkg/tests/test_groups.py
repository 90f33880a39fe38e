import numpy as np
import pytest

from relstable.groups import (
    FiniteGroup,
    Subgroup,
    coset_transversal,
    cyclic,
    direct_product,
    subgroup_closure,
)


def test_cyclic_trivial_group():
    g = cyclic(1)
    assert g.order == 1
    assert g.identity == 0
    assert g.generators == ()


def test_cyclic_rejects_zero():
    with pytest.raises(ValueError):
        cyclic(0)


def test_cyclic_two_table():
    assert cyclic(2).table.tolist() == [[0, 1], [1, 0]]


def test_cyclic_three_generator_order():
    assert cyclic(3).element_order(1) == 3


def test_klein_four_has_three_involutions():
    k4 = direct_product(cyclic(2), cyclic(2))
    assert k4.order == 4
    involutions = [x for x in k4.elements() if x != k4.identity and k4.element_order(x) == 2]
    assert len(involutions) == 3


def test_c2_times_c3_is_cyclic_of_order_six():
    g = direct_product(cyclic(2), cyclic(3))
    assert g.order == 6
    assert g.element_order(1 * 3 + 1) == 6


def test_product_with_trivial_embeds_isomorphically():
    c3 = cyclic(3)
    prod = direct_product(c3, cyclic(1))
    # element (a, e) has index a, so the tables agree on the nose
    assert np.array_equal(prod.table, c3.table)


def test_inverses_are_unique_and_two_sided():
    for g in (cyclic(5), direct_product(cyclic(2), cyclic(4))):
        for a in g.elements():
            b = g.inv(a)
            assert g.mul(a, b) == g.identity == g.mul(b, a)
            others = [c for c in g.elements() if g.mul(a, c) == g.identity]
            assert others == [b]


def test_non_latin_table_is_rejected():
    with pytest.raises(ValueError):
        FiniteGroup([[0, 0], [1, 1]])


def test_non_associative_table_is_rejected():
    # a Latin square with identity that fails associativity (order 5 loop)
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(ValueError, match="associat"):
        FiniteGroup(table)


def test_declared_generators_must_generate():
    with pytest.raises(ValueError, match="generate"):
        FiniteGroup(cyclic(4).table, generators=[2])


def test_subgroup_closure_of_empty_seed_is_trivial():
    k4 = direct_product(cyclic(2), cyclic(2))
    h = subgroup_closure(k4, [])
    assert h.elements == (k4.identity,)


def test_subgroup_closure_of_an_involution():
    k4 = direct_product(cyclic(2), cyclic(2))
    h = subgroup_closure(k4, [1])
    assert h.elements == (0, 1)


def test_subgroup_closure_in_c6():
    c6 = direct_product(cyclic(2), cyclic(3))
    h = subgroup_closure(c6, [1 * 3 + 0])
    assert h.order == 2


def test_subgroup_validation():
    k4 = direct_product(cyclic(2), cyclic(2))
    with pytest.raises(ValueError):
        Subgroup(k4, [1])  # missing identity
    with pytest.raises(ValueError):
        Subgroup(k4, [0, 1, 2])  # not closed


def test_transversal_of_whole_group_is_identity():
    c6 = direct_product(cyclic(2), cyclic(3))
    h = subgroup_closure(c6, list(c6.elements()))
    assert coset_transversal(c6, h) == [c6.identity]


def test_transversal_of_klein_four_subgroup():
    k4 = direct_product(cyclic(2), cyclic(2))
    h = subgroup_closure(k4, [1])
    assert coset_transversal(k4, h) == [0, 2]


def test_transversal_counts_cosets():
    c6 = direct_product(cyclic(2), cyclic(3))
    h = subgroup_closure(c6, [3])
    reps = coset_transversal(c6, h)
    assert len(reps) == 3
    assert reps[0] == c6.identity


def test_transversal_times_subgroup_covers_the_group():
    for g in (cyclic(6), direct_product(cyclic(2), cyclic(4))):
        for seed in ([], [1], [2]):
            h = subgroup_closure(g, seed)
            reps = coset_transversal(g, h)
            assert len(reps) * h.order == g.order
            covered = {g.mul(t, x) for t in reps for x in h.elements}
            assert covered == set(g.elements())


def test_as_group_preserves_products():
    c6 = direct_product(cyclic(2), cyclic(3))
    h = subgroup_closure(c6, [0 * 3 + 1])  # the C3 factor
    k = h.as_group()
    assert k.order == 3
    for i, a in enumerate(h.elements):
        for j, b in enumerate(h.elements):
            assert h.elements[k.mul(i, j)] == c6.mul(a, b)


def test_rename_keeps_structure():
    g = cyclic(2).rename(["1", "s"])
    assert g.names == ("1", "s")
    assert g.mul(1, 1) == 0
    with pytest.raises(ValueError):
        cyclic(2).rename(["x", "x"])
