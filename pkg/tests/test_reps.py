import numpy as np
import pytest

from relstable.catalog import get_example
from relstable.ff import FpMatrix
from relstable.groups import cyclic, direct_product, subgroup_closure
from relstable.reps import (
    Module,
    Morphism,
    ShortExactSequence,
    cokernel_module,
    direct_sum,
    dual,
    identity_morphism,
    induce,
    kernel_module,
    module_from_generators,
    regular_module,
    restrict,
    spanned_submodule,
    tensor,
    tensor_morphism,
    trivial_module,
    zero_module,
)


def _klein():
    return get_example("klein4").payload


def test_trivial_module_everywhere_one():
    for g, p in ((cyclic(2), 2), (_klein(), 2), (cyclic(3), 3)):
        k = trivial_module(g, p)
        assert k.dim == 1
        assert all(m.tolist() == [[1]] for m in k.action)


def test_regular_module_of_c2_swaps():
    reg = regular_module(cyclic(2), 2)
    assert reg.act(1).tolist() == [[0, 1], [1, 0]]


def test_regular_module_of_klein_four_is_permutations():
    reg = regular_module(_klein(), 2)
    assert reg.dim == 4
    for g in range(1, 4):
        m = reg.act(g).array
        assert (m.sum(axis=0) == 1).all() and (m.sum(axis=1) == 1).all()
        assert not np.trace(m)  # fixed-point-free: a product of two transpositions


def test_regular_module_of_trivial_group():
    assert regular_module(cyclic(1), 2).dim == 1


def test_tensor_with_trivial_is_identity_on_actions():
    v = get_example("klein4.v").payload
    k = trivial_module(_klein(), 2)
    left = tensor(k, v)
    assert [m.tolist() for m in left.action] == [m.tolist() for m in v.action]


def test_tensor_dimension_is_multiplicative():
    v = get_example("klein4.v").payload
    vp = get_example("klein4.v_prime").payload
    assert tensor(v, vp).dim == 6


def test_tensor_square_of_v_restricts_freely_to_the_g_side():
    # v (x) v is free over the subgroup where v is already free: rank of
    # 1 + g on the square is 2; over <h> the action is trivial instead.
    k4 = _klein()
    v = get_example("klein4.v").payload
    sq = tensor(v, v)
    assert sq.dim == 4
    one = FpMatrix.identity(2, 4)
    rank_g = (one + sq.act(2)).rank()
    rank_h = (one + sq.act(1)).rank()
    assert rank_g == 2
    assert rank_h == 0


def test_tensor_rejects_mismatched_algebras():
    with pytest.raises(ValueError):
        tensor(trivial_module(cyclic(2), 2), trivial_module(cyclic(3), 2))
    with pytest.raises(ValueError):
        tensor(trivial_module(cyclic(2), 2), trivial_module(cyclic(2), 3))


def test_dual_of_trivial_is_trivial():
    k = trivial_module(_klein(), 2)
    assert dual(k).action == k.action or [m.tolist() for m in dual(k).action] == [
        m.tolist() for m in k.action
    ]


def test_dual_of_regular_equals_regular():
    reg = regular_module(_klein(), 2)
    assert [m.tolist() for m in dual(reg).action] == [m.tolist() for m in reg.action]


def test_double_dual_restores_the_action():
    vp = get_example("klein4.v_prime").payload
    assert [m.tolist() for m in dual(dual(vp)).action] == [m.tolist() for m in vp.action]


def test_dual_tensor_has_same_traces_as_tensor_of_duals():
    v = get_example("klein4.v").payload
    vp = get_example("klein4.v_prime").payload
    a = dual(tensor(v, vp))
    b = tensor(dual(v), dual(vp))
    for g in _klein().elements():
        assert np.trace(a.act(g).array) % 2 == np.trace(b.act(g).array) % 2


def test_tensor_is_associative_on_the_nose():
    v = get_example("klein4.v").payload
    vp = get_example("klein4.v_prime").payload
    k = get_example("klein4.k").payload
    left = tensor(tensor(v, k), vp)
    right = tensor(v, tensor(k, vp))
    assert [m.tolist() for m in left.action] == [m.tolist() for m in right.action]


def test_tensor_commutativity_up_to_permutation():
    v = get_example("klein4.v").payload
    vp = get_example("klein4.v_prime").payload
    ab = tensor(v, vp)
    ba = tensor(vp, v)
    # the flip e_i (x) f_j -> f_j (x) e_i conjugates one action into the other
    perm = np.zeros((6, 6), dtype=np.int64)
    for i in range(2):
        for j in range(3):
            perm[j * 2 + i, i * 3 + j] = 1
    flip = FpMatrix(2, perm)
    for g in _klein().elements():
        assert flip @ ab.act(g) == ba.act(g) @ flip


def test_direct_sum_with_zero_is_identity():
    v = get_example("klein4.v").payload
    z = zero_module(_klein(), 2)
    assert [m.tolist() for m in direct_sum(v, z).action] == [m.tolist() for m in v.action]


def test_direct_sum_of_trivials_acts_as_identity():
    k = get_example("klein4.k").payload
    kk = direct_sum(k, k)
    assert all(m == FpMatrix.identity(2, 2) for m in kk.action)


def test_direct_sum_dims_add():
    v = get_example("klein4.v").payload
    vp = get_example("klein4.v_prime").payload
    assert direct_sum(v, vp).dim == 5


def test_restrict_to_whole_group_keeps_actions():
    v = get_example("klein4.v").payload
    whole = subgroup_closure(_klein(), [1, 2])
    res = restrict(v, whole)
    assert [m.tolist() for m in res.action] == [m.tolist() for m in v.action]


def test_restrict_v_to_h_is_trivial():
    v = get_example("klein4.v").payload
    h = get_example("klein4.H").payload
    res = restrict(v, h)
    assert res.dim == 2
    assert all(m == FpMatrix.identity(2, 2) for m in res.action)


def test_restrict_regular_to_h_is_free_of_rank_two():
    reg = regular_module(_klein(), 2)
    h = get_example("klein4.H").payload
    res = restrict(reg, h)
    nontrivial = res.act(1)
    assert (FpMatrix.identity(2, 4) + nontrivial).rank() == 2


def test_induce_from_whole_group_is_identity():
    v = get_example("klein4.v").payload
    whole = subgroup_closure(_klein(), [1, 2])
    ind = induce(_klein(), whole, restrict(v, whole))
    assert [m.tolist() for m in ind.action] == [m.tolist() for m in v.action]


def test_induce_trivial_from_h_gives_the_catalog_module():
    h = get_example("klein4.H").payload
    ind = induce(_klein(), h, trivial_module(h.as_group(), 2))
    assert ind.act(2).tolist() == [[0, 1], [1, 0]]
    assert ind.act(1).tolist() == [[1, 0], [0, 1]]


def test_induce_from_trivial_subgroup_is_regular():
    c2 = cyclic(2)
    h = subgroup_closure(c2, [])
    ind = induce(c2, h, trivial_module(h.as_group(), 2))
    reg = regular_module(c2, 2)
    assert [m.tolist() for m in ind.action] == [m.tolist() for m in reg.action]


def test_induction_restriction_has_a_surjection_onto_the_module():
    # the adjunction counit t_i (x) m -> t_i . m is a surjective kG-map
    from relstable.groups import coset_transversal

    k4 = _klein()
    h = get_example("klein4.H").payload
    for m in (get_example("klein4.v").payload, get_example("klein4.v_prime").payload):
        ind = induce(k4, h, restrict(m, h))
        assert ind.dim == 2 * m.dim
        reps = coset_transversal(k4, h)
        blocks = np.hstack([m.act(t).array for t in reps])
        ev = Morphism(ind, m, FpMatrix(2, blocks))
        assert ev.is_surjective()


def test_module_validation_rejects_non_homomorphism():
    c2 = cyclic(2)
    bad = [FpMatrix.identity(2, 2), FpMatrix(2, [[1, 1], [0, 1]])]
    with pytest.raises(ValueError, match="homomorphism"):
        Module(c2, 2, bad)  # square of the generator action is not the identity


def test_module_validation_rejects_wrong_identity():
    c2 = cyclic(2)
    swap = FpMatrix(2, [[0, 1], [1, 0]])
    with pytest.raises(ValueError, match="identity"):
        Module(c2, 2, [swap, swap])


def test_morphism_validation_rejects_non_intertwiner():
    v = get_example("klein4.v").payload
    k = get_example("klein4.k").payload
    with pytest.raises(ValueError, match="intertwine"):
        Morphism(k, v, FpMatrix(2, [[1], [0]]))  # the top of v is not fixed


def test_ses_validation():
    k = get_example("c2.k").payload
    reg = get_example("c2.regular").payload
    inj = Morphism(k, reg, FpMatrix(2, [[1], [1]]))
    aug = Morphism(reg, k, FpMatrix(2, [[1, 1]]))
    ShortExactSequence(inj, aug)
    with pytest.raises(ValueError):
        ShortExactSequence(aug, inj)  # not composable in this order
    zero = Morphism(k, reg, FpMatrix.zeros(2, 2, 1))
    with pytest.raises(ValueError, match="injective"):
        ShortExactSequence(zero, aug)


def test_kernel_of_augmentation_is_the_socle():
    ses = get_example("c2.nonsplit_ses").payload
    sub, incl = kernel_module(ses.surj)
    assert sub.dim == 1
    assert (ses.surj @ incl).is_zero()


def test_cokernel_dimensions_and_projection():
    ses = get_example("c2.nonsplit_ses").payload
    ck = cokernel_module(ses.inj)
    assert ck.module.dim == 1
    assert (ck.proj @ ses.inj).is_zero()
    assert ck.proj.matrix @ ck.lift == FpMatrix.identity(2, 1)


def test_spanned_submodule_closes_up():
    vp = get_example("klein4.v_prime").payload
    sub, incl = spanned_submodule(vp, [[1, 0, 0]])  # the top-left corner generates its arm
    assert sub.dim == 2
    assert incl.is_injective()
    socle, _ = spanned_submodule(vp, [[0, 0, 1]])
    assert socle.dim == 1
    everything, _ = spanned_submodule(vp, [[1, 0, 0], [0, 1, 0]])
    assert everything.dim == 3


def test_tensor_morphism_intertwines():
    v = get_example("klein4.v").payload
    k = get_example("klein4.k").payload
    socle = Morphism(k, v, FpMatrix(2, [[0], [1]]))
    doubled = tensor_morphism(identity_morphism(v), socle)
    assert doubled.source.dim == 2 and doubled.target.dim == 4
    assert doubled.is_injective()


def test_module_from_generators_needs_exactly_the_generators():
    k4 = _klein()
    with pytest.raises(ValueError, match="generator"):
        module_from_generators(k4, 2, 1, {1: FpMatrix.identity(2, 1)})
