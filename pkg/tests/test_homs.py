from itertools import product

import numpy as np
import pytest

from relstable.catalog import get_example
from relstable.ff import FpMatrix
from relstable.groups import cyclic
from relstable.homs import (
    OracleInfeasibleError,
    factors_through,
    find_summand_witness,
    fitting_decomposition,
    has_retraction,
    has_section,
    hom_basis,
    is_summand_bruteforce,
)
from relstable.reps import (
    Morphism,
    direct_sum,
    identity_morphism,
    tensor,
    dual,
    trivial_module,
    zero_morphism,
)


def _klein_modules():
    return (
        get_example("klein4.k").payload,
        get_example("klein4.v").payload,
        get_example("klein4.v_prime").payload,
    )


def _count_intertwiners_exhaustively(a, b):
    """Independent oracle: try every matrix over GF(2)."""
    count = 0
    for bits in product((0, 1), repeat=a.dim * b.dim):
        t = np.array(bits, dtype=np.int64).reshape(b.dim, a.dim)
        if all(
            ((t @ a.act(g).array) % 2 == (b.act(g).array @ t) % 2).all()
            for g in a.group.elements()
        ):
            count += 1
    return count


def test_hom_of_trivials_is_scalars():
    k = get_example("klein4.k").payload
    assert hom_basis(k, k).dim == 1


def test_hom_from_trivial_into_v_prime_is_the_socle():
    k, _, vp = _klein_modules()
    basis = hom_basis(k, vp)
    assert basis.dim == 1
    assert basis.basis[0].matrix.array[:, 0].tolist()[2] != 0  # lands in the bottom


def test_hom_v_into_v_prime_has_dimension_two():
    _, v, vp = _klein_modules()
    assert hom_basis(v, vp).dim == 2


def test_hom_dimensions_match_exhaustive_enumeration():
    mods = _klein_modules()
    for a in mods:
        for b in mods:
            if a.dim * b.dim <= 9:
                count = _count_intertwiners_exhaustively(a, b)
                assert count == 2 ** hom_basis(a, b).dim


def test_section_of_identity_is_identity():
    v = get_example("klein4.v").payload
    ident = identity_morphism(v)
    s = has_section(ident)
    assert s is not None and (ident @ s) == ident


def test_augmentation_has_no_section():
    ses = get_example("c2.nonsplit_ses").payload
    assert has_section(ses.surj) is None
    # exhaustive confirmation over the one-dimensional hom space
    k, reg = ses.surj.target, ses.surj.source
    basis = hom_basis(k, reg)
    for coeffs in product((0, 1), repeat=basis.dim):
        cand = basis.combo(coeffs)
        assert (ses.surj @ cand) != identity_morphism(k)


def test_projection_off_a_summand_has_a_section():
    k = get_example("klein4.k").payload
    kk = direct_sum(k, k)
    proj = Morphism(kk, k, FpMatrix(2, [[1, 0]]))
    assert has_section(proj) is not None


def test_retraction_of_identity_is_identity():
    vp = get_example("klein4.v_prime").payload
    assert has_retraction(identity_morphism(vp)) is not None


def test_socle_inclusion_into_free_has_no_retraction():
    ses = get_example("c2.nonsplit_ses").payload
    assert has_retraction(ses.inj) is None


def test_split_inclusion_has_a_retraction():
    k = get_example("klein4.k").payload
    v = get_example("klein4.v").payload
    kv = direct_sum(k, v)
    incl = Morphism(k, kv, FpMatrix(2, [[1], [0], [0]]))
    assert has_retraction(incl) is not None


def test_factoring_through_identity_returns_the_map():
    k, v, _ = _klein_modules()
    socle = Morphism(k, v, FpMatrix(2, [[0], [1]]))
    h = factors_through(socle, identity_morphism(v))
    assert h == socle


def test_socle_of_v_prime_factors_through_v():
    k, v, vp = _klein_modules()
    socle = Morphism(k, vp, FpMatrix(2, [[0], [0], [1]]))
    arm = get_example("klein4.chain").payload.maps[1]
    h = factors_through(socle, arm)
    assert h is not None
    assert (arm @ h) == socle


def test_identity_does_not_factor_through_augmentation():
    ses = get_example("c2.nonsplit_ses").payload
    k = ses.surj.target
    assert factors_through(identity_morphism(k), ses.surj) is None


def test_factors_through_needs_a_common_target():
    k, v, vp = _klein_modules()
    socle_v = Morphism(k, v, FpMatrix(2, [[0], [1]]))
    arm = get_example("klein4.chain").payload.maps[1]
    with pytest.raises(ValueError):
        factors_through(socle_v, arm)


def test_v_is_not_a_summand_of_v_prime():
    _, v, vp = _klein_modules()
    assert not is_summand_bruteforce(v, vp)


def test_trivial_is_a_summand_when_added():
    k, v, _ = _klein_modules()
    target = direct_sum(k, v)
    witness = find_summand_witness(k, target)
    assert witness is not None
    i, r = witness
    assert (r @ i) == identity_morphism(k)


def test_trivial_is_not_a_summand_of_v():
    k, v, _ = _klein_modules()
    assert not is_summand_bruteforce(k, v)


def test_summand_oracle_respects_its_bound():
    _, v, _ = _klein_modules()
    sq = tensor(v, dual(v))
    with pytest.raises(OracleInfeasibleError):
        is_summand_bruteforce(v, sq, bound=2)


def test_fitting_of_identity_and_zero():
    v = get_example("klein4.v").payload
    ker, im = fitting_decomposition(identity_morphism(v))
    assert ker.cols == 0 and im.cols == 2
    ker, im = fitting_decomposition(zero_morphism(v, v))
    assert ker.cols == 2 and im.cols == 0


def test_fitting_of_an_idempotent_splits_evenly():
    k = get_example("klein4.k").payload
    kk = direct_sum(k, k)
    phi = Morphism(kk, kk, FpMatrix(2, [[1, 0], [0, 0]]))
    ker, im = fitting_decomposition(phi)
    assert ker.cols == 1 and im.cols == 1


def test_fitting_parts_are_complementary_and_typed():
    # nilpotent on the kernel part, invertible on the image part
    vp = get_example("klein4.v_prime").payload
    basis = hom_basis(vp, vp)
    rng = np.random.default_rng(5)
    for _ in range(10):
        phi = basis.combo(rng.integers(0, 2, basis.dim))
        ker, im = fitting_decomposition(phi)
        assert ker.cols + im.cols == vp.dim
        power = phi.matrix.matpow(vp.dim)
        if ker.cols:
            assert (power @ ker).is_zero()
        if im.cols:
            assert (power @ im).rank() == im.cols


def test_fitting_requires_an_endomorphism():
    k, v, _ = _klein_modules()
    socle = Morphism(k, v, FpMatrix(2, [[0], [1]]))
    with pytest.raises(ValueError):
        fitting_decomposition(socle)


def test_hom_basis_over_trivial_group_is_all_matrices():
    g = cyclic(1)
    a = trivial_module(g, 2)
    b = direct_sum(a, a)
    assert hom_basis(a, b).dim == 2
