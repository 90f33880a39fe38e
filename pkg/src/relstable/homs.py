"""Hom spaces, split tests, and brute-force oracles.

hom_basis solves the intertwining conditions as one joint nullspace
over the group's generators (commuting with the generators implies
commuting with every element; each basis element is re-validated in
full when the Morphism is built).  Section, retraction and
factorization questions are linear systems in hom-basis coordinates.

The summand test is genuinely bilinear, so it is an explicit exhaustive
search with a hard feasibility bound: it either answers correctly or
raises OracleInfeasibleError, never silently guesses.
"""

from __future__ import annotations

from typing import Iterator, Optional

import numpy as np

from .ff import FpMatrix, matmul_mod, nullspace_basis, rref, solve_linear_system, solve_matrix
from .reps import Module, Morphism, identity_morphism

DEFAULT_SEARCH_BOUND = 1 << 20


class OracleInfeasibleError(RuntimeError):
    """Raised when an exhaustive oracle would exceed its search bound."""


class HomBasis:
    """A basis of the space of intertwiners between two modules."""

    __slots__ = ("source", "target", "basis")

    def __init__(self, source: Module, target: Module, basis: tuple[Morphism, ...]):
        self.source = source
        self.target = target
        self.basis = basis

    @property
    def dim(self) -> int:
        return len(self.basis)

    def combo(self, coeffs) -> Morphism:
        """The morphism with the given coordinates in this basis."""
        coeffs = np.asarray(coeffs, dtype=np.int64).reshape(-1)
        if coeffs.shape[0] != self.dim:
            raise ValueError(f"expected {self.dim} coefficients, got {coeffs.shape[0]}")
        p = self.source.p
        mat = np.zeros((self.target.dim, self.source.dim), dtype=np.int64)
        for c, b in zip(coeffs, self.basis):
            mat = (mat + int(c) * b.matrix.array) % p
        return Morphism(self.source, self.target, FpMatrix(p, mat), validate=False)

    def stack(self) -> np.ndarray:
        """(dim, target.dim, source.dim) array of the basis matrices."""
        if not self.basis:
            return np.zeros((0, self.target.dim, self.source.dim), dtype=np.int64)
        return np.stack([b.matrix.array for b in self.basis])

    def __repr__(self) -> str:
        return f"HomBasis(dim={self.dim}, {self.source.dim} -> {self.target.dim})"


def hom_basis(a: Module, b: Module) -> HomBasis:
    """Basis of all matrices T with T a(g) = b(g) T for every g.

    The intertwining condition is imposed one generator at a time, each
    constraint evaluated on the solution space of the previous ones (the
    joint nullspace, refined incrementally); each basis element is
    re-validated over the whole group when its Morphism is built.
    """
    if a.p != b.p or a.group != b.group:
        raise ValueError("modules live over different group algebras")
    p = a.p
    da, db = a.dim, b.dim
    kernel = np.eye(da * db, dtype=np.int64)
    fresh = True
    for g in a.group.generators:
        nk = kernel.shape[1]
        if nk == 0:
            break
        batch = kernel.T.reshape(nk, db, da)
        residual = (
            matmul_mod(batch, a.act(g).array, p) - matmul_mod(b.act(g).array, batch, p)
        ) % p
        constraint = FpMatrix(p, residual.reshape(nk, db * da).T)
        refinement = nullspace_basis(constraint).array
        kernel = refinement if fresh else matmul_mod(kernel, refinement, p)
        fresh = False

    # one batched intertwining re-check over the whole group
    found = kernel.T.reshape(kernel.shape[1], db, da)
    left = matmul_mod(found[:, None, :, :], a.action_stack()[None, :, :, :], p)
    right = matmul_mod(b.action_stack()[None, :, :, :], found[:, None, :, :], p)
    if not np.array_equal(left, right):
        raise AssertionError("hom basis candidate fails to intertwine off the generators")
    basis = tuple(
        Morphism(a, b, FpMatrix(p, found[j]), validate=False)
        for j in range(found.shape[0])
    )
    return HomBasis(a, b, basis)


def _solve_in_basis(basis: HomBasis, composed: np.ndarray, rhs: FpMatrix) -> Optional[Morphism]:
    """Find a combo h in the basis whose composed images hit rhs.

    ``composed`` is the (dim, rows, cols) stack of the basis elements
    already pushed through whatever fixed map the caller composes with.
    """
    p = rhs.p
    target_vec = rhs.array.ravel()
    if composed.shape[0] == 0:
        columns = np.zeros((target_vec.shape[0], 0), dtype=np.int64)
    else:
        columns = composed.reshape(composed.shape[0], -1).T
    coeffs = solve_linear_system(FpMatrix(p, columns), target_vec)
    if coeffs is None:
        return None
    return basis.combo(coeffs)


def has_section(f: Morphism) -> Optional[Morphism]:
    """A morphism s with f o s = id on the target, if one exists."""
    ident = identity_morphism(f.target)
    candidates = hom_basis(f.target, f.source)
    composed = matmul_mod(f.matrix.array, candidates.stack(), f.matrix.p)
    s = _solve_in_basis(candidates, composed, ident.matrix)
    if s is not None and (f @ s) != ident:
        raise AssertionError("section witness failed re-check")
    return s


def has_retraction(f: Morphism) -> Optional[Morphism]:
    """A morphism r with r o f = id on the source, if one exists."""
    ident = identity_morphism(f.source)
    candidates = hom_basis(f.target, f.source)
    composed = matmul_mod(candidates.stack(), f.matrix.array, f.matrix.p)
    r = _solve_in_basis(candidates, composed, ident.matrix)
    if r is not None and (r @ f) != ident:
        raise AssertionError("retraction witness failed re-check")
    return r


def factors_through(f: Morphism, g: Morphism) -> Optional[Morphism]:
    """A morphism h with g o h = f, if one exists (f and g share a target)."""
    if f.target != g.target:
        raise ValueError("maps do not share a target")
    candidates = hom_basis(f.source, g.source)
    composed = matmul_mod(g.matrix.array, candidates.stack(), f.matrix.p)
    h = _solve_in_basis(candidates, composed, f.matrix)
    if h is not None and (g @ h) != f:
        raise AssertionError("factorization witness failed re-check")
    return h


def _coefficient_batches(p: int, length: int, total: int, batch: int = 4096) -> Iterator[np.ndarray]:
    """All vectors of GF(p)^length as (k, length) batches, mixed-radix order."""
    if length == 0:
        yield np.zeros((1, 0), dtype=np.int64)
        return
    for start in range(0, total, batch):
        idx = np.arange(start, min(start + batch, total), dtype=np.int64)
        out = np.zeros((idx.shape[0], length), dtype=np.int64)
        rest = idx
        for j in range(length - 1, -1, -1):
            out[:, j] = rest % p
            rest = rest // p
        yield out


def find_summand_witness(
    x: Module, y: Module, bound: int = DEFAULT_SEARCH_BOUND
) -> Optional[tuple[Morphism, Morphism]]:
    """Exhaustive search for (i, r) with r o i = id_x, i.e. x | y.

    Searches all of Hom(x, y) x Hom(y, x); raises OracleInfeasibleError
    when p^(dim Hom(x,y)) * p^(dim Hom(y,x)) exceeds the bound.
    """
    if x.dim == 0:
        z = Morphism(x, y, FpMatrix.zeros(x.p, y.dim, 0), validate=False)
        return z, Morphism(y, x, FpMatrix.zeros(x.p, 0, y.dim), validate=False)
    into = hom_basis(x, y)
    back = hom_basis(y, x)
    p = x.p
    if p ** into.dim * p ** back.dim > bound:
        raise OracleInfeasibleError(
            f"oracle infeasible: summand search space {p}^{into.dim + back.dim} exceeds bound {bound}"
        )
    ident = np.eye(x.dim, dtype=np.int64)

    # Iterate the smaller hom space in Python, sweep the larger in batches.
    outer_is_back = back.dim <= into.dim
    outer, inner = (back, into) if outer_is_back else (into, back)
    inner_stack = inner.stack()
    inner_total = p ** inner.dim
    for outer_batch in _coefficient_batches(p, outer.dim, p ** outer.dim, batch=256):
        for oc in outer_batch:
            omat = outer.combo(oc).matrix.array
            for inner_coeffs in _coefficient_batches(p, inner.dim, inner_total):
                imats = np.tensordot(inner_coeffs, inner_stack, axes=(1, 0)) % p
                # r o i as matrices: back-side factor on the left
                prods = (omat @ imats if outer_is_back else imats @ omat) % p
                hits = np.nonzero((prods == ident).all(axis=(1, 2)))[0]
                if hits.size:
                    ic = inner_coeffs[hits[0]]
                    i_mor = into.combo(ic if outer_is_back else oc)
                    r_mor = back.combo(oc if outer_is_back else ic)
                    if (r_mor @ i_mor) != identity_morphism(x):
                        raise AssertionError("summand witness failed re-check")
                    return i_mor, r_mor
    return None


def is_summand_bruteforce(x: Module, y: Module, bound: int = DEFAULT_SEARCH_BOUND) -> bool:
    """True iff x is a direct summand of y, by exhaustive witness search."""
    return find_summand_witness(x, y, bound) is not None


def fitting_decomposition(phi: Morphism) -> tuple[FpMatrix, FpMatrix]:
    """Split the space into the nilpotent and invertible parts of an endomorphism.

    Returns column bases of ker(phi^n) and im(phi^n) for n = dim; the two
    spans are phi-invariant, intersect trivially, and sum to everything.
    """
    if phi.source != phi.target:
        raise ValueError("fitting decomposition needs an endomorphism")
    n = phi.source.dim
    power = phi.matrix.matpow(n)
    ker_part = nullspace_basis(power)
    _, _, pivots = rref(power)
    im_part = FpMatrix(power.p, power.array[:, list(pivots)])
    if ker_part.cols + im_part.cols != n:
        raise AssertionError("fitting parts do not have complementary dimensions")
    if ker_part.cols and im_part.cols:
        joint = FpMatrix(power.p, np.hstack([ker_part.array, im_part.array]))
        if joint.rank() != n:
            raise AssertionError("fitting parts are not complementary")
    for part in (ker_part, im_part):
        if part.cols:
            moved = phi.matrix @ part
            coords = solve_matrix(part, moved)
            if coords is None or (part @ coords) != moved:
                raise AssertionError("fitting part is not invariant under the endomorphism")
    return ker_part, im_part
