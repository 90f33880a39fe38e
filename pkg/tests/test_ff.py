import numpy as np
import pytest

from relstable.ff import (
    FpMatrix,
    block_diag,
    hstack,
    is_prime,
    nullspace_basis,
    rref,
    solve_linear_system,
    solve_matrix,
    vstack,
)


def test_prime_check_rejects_composite_moduli():
    with pytest.raises(ValueError):
        FpMatrix(4, [[1]])
    with pytest.raises(ValueError):
        FpMatrix(1, [[0]])
    assert is_prime(97) and not is_prime(91)


def test_entries_are_reduced_at_construction():
    m = FpMatrix(3, [[5, -1], [9, 7]])
    assert m.tolist() == [[2, 2], [0, 1]]


def test_rref_identity_is_fixed():
    eye = FpMatrix.identity(2, 2)
    r = rref(eye)
    assert r.matrix == eye
    assert r.rank == 2
    assert r.pivots == (0, 1)


def test_rref_rank_one_symmetric_case():
    r = rref(FpMatrix(2, [[1, 1], [1, 1]]))
    assert r.matrix.tolist() == [[1, 1], [0, 0]]
    assert r.rank == 1
    assert r.pivots == (0,)


def test_rref_scaled_row_mod_three():
    # second row is 2x the first mod 3, so the rank drops to 1
    r = rref(FpMatrix(3, [[2, 1], [1, 2]]))
    assert r.rank == 1
    assert r.matrix.tolist() == [[1, 2], [0, 0]]


def test_rref_is_idempotent_on_random_matrices():
    rng = np.random.default_rng(7)
    for p in (2, 3, 5):
        for _ in range(25):
            a = FpMatrix(p, rng.integers(0, p, (rng.integers(1, 7), rng.integers(1, 7))))
            once = rref(a).matrix
            assert rref(once).matrix == once


def test_rank_nullity_on_random_matrices():
    rng = np.random.default_rng(11)
    for p in (2, 3, 5):
        for _ in range(25):
            a = FpMatrix(p, rng.integers(0, p, (rng.integers(1, 7), rng.integers(1, 7))))
            assert rref(a).rank + nullspace_basis(a).cols == a.cols


def test_solve_identity_returns_rhs():
    a = FpMatrix(5, np.eye(3, dtype=int))
    assert solve_linear_system(a, [4, 0, 3]).tolist() == [4, 0, 3]


def test_solve_detects_inconsistency():
    a = FpMatrix(2, [[1, 1], [1, 1]])
    assert solve_linear_system(a, [1, 0]) is None


def test_solve_zeroes_free_variables():
    # over GF(2) the solutions of x + y = 1 are (1,0) and (0,1); the
    # deterministic contract picks the one with the free variable zero
    a = FpMatrix(2, [[1, 1]])
    x = solve_linear_system(a, [1])
    solutions = [v for v in ([0, 0], [1, 0], [0, 1], [1, 1]) if sum(v) % 2 == 1]
    assert x.tolist() in solutions
    assert x.tolist() == [1, 0]


def test_solutions_satisfy_the_system_exactly():
    rng = np.random.default_rng(13)
    for p in (2, 3, 5):
        for _ in range(30):
            rows, cols = rng.integers(1, 6, 2)
            a = FpMatrix(p, rng.integers(0, p, (rows, cols)))
            b = rng.integers(0, p, rows)
            x = solve_linear_system(a, b)
            if x is not None:
                assert ((a.array @ x) % p == b % p).all()


def test_solve_rejects_wrong_rhs_length():
    with pytest.raises(ValueError):
        solve_linear_system(FpMatrix(2, [[1, 0]]), [1, 0])


def test_nullspace_of_zero_map_is_everything():
    basis = nullspace_basis(FpMatrix.zeros(2, 2, 2))
    assert basis.cols == 2
    assert basis.rank() == 2


def test_nullspace_of_identity_is_trivial():
    assert nullspace_basis(FpMatrix.identity(3, 4)).cols == 0


def test_nullspace_single_relation_over_gf2():
    basis = nullspace_basis(FpMatrix(2, [[1, 1]]))
    assert basis.tolist() == [[1], [1]]


def test_nullspace_columns_lie_in_the_kernel():
    rng = np.random.default_rng(17)
    for p in (2, 3, 5):
        for _ in range(25):
            a = FpMatrix(p, rng.integers(0, p, (rng.integers(1, 6), rng.integers(1, 6))))
            basis = nullspace_basis(a)
            assert (a @ basis).is_zero()
            assert basis.rank() == basis.cols


def test_matmul_kron_and_inverse():
    a = FpMatrix(5, [[1, 2], [3, 4]])
    b = a.inv()
    assert a @ b == FpMatrix.identity(5, 2)
    assert a.kron(FpMatrix.identity(5, 2)).shape == (4, 4)
    with pytest.raises(ValueError):
        FpMatrix(2, [[1, 1], [1, 1]]).inv()
    with pytest.raises(ValueError):
        a @ FpMatrix.identity(3, 2)  # modulus mismatch


def test_matpow_matches_repeated_product():
    a = FpMatrix(3, [[1, 1], [0, 1]])
    assert a.matpow(0) == FpMatrix.identity(3, 2)
    assert a.matpow(3) == a @ a @ a


def test_stacking_helpers():
    a = FpMatrix(2, [[1]])
    assert hstack([a, a]).shape == (1, 2)
    assert vstack([a, a]).shape == (2, 1)
    assert block_diag(2, [a, a]).tolist() == [[1, 0], [0, 1]]


def test_solve_matrix_multi_rhs():
    a = FpMatrix(3, [[1, 1], [0, 1]])
    rhs = FpMatrix(3, [[2, 0], [1, 1]])
    x = solve_matrix(a, rhs)
    assert a @ x == rhs


def test_empty_shapes_are_legal():
    empty = FpMatrix.zeros(2, 0, 3)
    assert rref(empty).rank == 0
    assert nullspace_basis(empty).cols == 3
    tall = FpMatrix.zeros(2, 3, 0)
    assert nullspace_basis(tall).cols == 0
