"""Matrix representations of finite groups over GF(p).

A Module is a dimension together with one invertible matrix per group
element; a Morphism is a matrix intertwining two of them.  Tensor
product, dual, direct sum, restriction, and induction are provided with
fixed basis conventions (lexicographic tensor ordering, transversal-
major induction ordering) so that every construction is bit-reproducible
across runs.  Matrices act on the left of coordinate columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from .ff import FpMatrix, hstack, is_prime, matmul_mod, nullspace_basis, rref, solve_matrix
from .groups import FiniteGroup, Subgroup, coset_transversal


class Module:
    """A finite-dimensional left module over a group algebra kG.

    ``action[g]`` is the matrix of g on the chosen basis.  Construction
    validates the full homomorphism property (action[g] @ action[h] ==
    action[gh] for every pair), which also forces every action matrix to
    be invertible: action[g] @ action[g^-1] = action[e] = I.
    """

    __slots__ = ("group", "p", "action", "_stack")

    def __init__(self, group: FiniteGroup, p: int, action: Sequence[FpMatrix], validate: bool = True):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if len(action) != group.order:
            raise ValueError(f"expected {group.order} action matrices, got {len(action)}")
        for m in action:
            if m.p != p:
                raise ValueError("action matrix modulus differs from the module characteristic")
        dims = {m.shape for m in action}
        if len(dims) > 1:
            raise ValueError(f"inconsistent action matrix shapes: {sorted(dims)}")
        d_rows, d_cols = action[0].shape if action else (0, 0)
        if d_rows != d_cols:
            raise ValueError("action matrices must be square")

        stack = np.stack([m.array for m in action]) if group.order else np.zeros((0, 0, 0), np.int64)
        if validate:
            if not np.array_equal(action[group.identity].array, np.eye(d_rows, dtype=np.int64)):
                raise ValueError("identity element must act as the identity matrix")
            products = matmul_mod(stack[:, None, :, :], stack[None, :, :, :], p)
            if not np.array_equal(products, stack[group.table]):
                raise ValueError("action matrices do not satisfy the homomorphism property")

        stack.setflags(write=False)
        self.group = group
        self.p = p
        self.action = tuple(action)
        self._stack = stack

    @property
    def dim(self) -> int:
        return self.action[0].rows

    def act(self, g: int) -> FpMatrix:
        return self.action[g]

    def action_stack(self) -> np.ndarray:
        """All action matrices as one read-only (order, dim, dim) array."""
        return self._stack

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Module):
            return NotImplemented
        return (
            self.p == other.p
            and self.group == other.group
            and np.array_equal(self._stack, other._stack)
        )

    def __repr__(self) -> str:
        return f"Module(dim={self.dim}, p={self.p}, group_order={self.group.order})"


class Morphism:
    """A kG-linear map, stored as its dim(target) x dim(source) matrix."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: Module, target: Module, matrix: FpMatrix, validate: bool = True):
        if source.p != target.p:
            raise ValueError("source and target have different characteristics")
        if source.group != target.group:
            raise ValueError("source and target are modules over different groups")
        if matrix.p != source.p:
            raise ValueError("matrix modulus differs from the module characteristic")
        if matrix.shape != (target.dim, source.dim):
            raise ValueError(
                f"matrix shape {matrix.shape} does not match map {source.dim} -> {target.dim}"
            )
        if validate:
            t = matrix.array
            left = matmul_mod(t, source.action_stack(), source.p)
            right = matmul_mod(target.action_stack(), t, source.p)
            if not np.array_equal(left, right):
                raise ValueError("matrix does not intertwine the two actions")
        self.source = source
        self.target = target
        self.matrix = matrix

    def __matmul__(self, other: "Morphism") -> "Morphism":
        if self.source != other.target:
            raise ValueError("morphisms are not composable")
        return Morphism(other.source, self.target, self.matrix @ other.matrix, validate=False)

    def __add__(self, other: "Morphism") -> "Morphism":
        self._check_parallel(other)
        return Morphism(self.source, self.target, self.matrix + other.matrix, validate=False)

    def __sub__(self, other: "Morphism") -> "Morphism":
        self._check_parallel(other)
        return Morphism(self.source, self.target, self.matrix - other.matrix, validate=False)

    def __neg__(self) -> "Morphism":
        return Morphism(self.source, self.target, -self.matrix, validate=False)

    def _check_parallel(self, other: "Morphism") -> None:
        if self.source != other.source or self.target != other.target:
            raise ValueError("morphisms do not share source and target")

    def rank(self) -> int:
        return self.matrix.rank()

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def __repr__(self) -> str:
        return f"Morphism({self.source.dim} -> {self.target.dim}, p={self.matrix.p})"


def identity_morphism(m: Module) -> Morphism:
    return Morphism(m, m, FpMatrix.identity(m.p, m.dim), validate=False)


def zero_morphism(source: Module, target: Module) -> Morphism:
    return Morphism(source, target, FpMatrix.zeros(source.p, target.dim, source.dim))


@dataclass(frozen=True)
class ShortExactSequence:
    """0 -> x -> y -> z -> 0 with exactness checked at construction."""

    inj: Morphism
    surj: Morphism

    def __post_init__(self):
        if self.inj.target != self.surj.source:
            raise ValueError("the two maps are not composable")
        if not self.inj.is_injective():
            raise ValueError("first map is not injective")
        if not self.surj.is_surjective():
            raise ValueError("second map is not surjective")
        if not (self.surj @ self.inj).is_zero():
            raise ValueError("composite of the two maps is not zero")
        if self.middle.dim != self.sub.dim + self.quotient.dim:
            raise ValueError("dimensions are not exact at the middle term")

    @property
    def sub(self) -> Module:
        return self.inj.source

    @property
    def middle(self) -> Module:
        return self.inj.target

    @property
    def quotient(self) -> Module:
        return self.surj.target


def trivial_module(group: FiniteGroup, p: int) -> Module:
    """The one-dimensional module with every element acting as 1."""
    one = FpMatrix.identity(p, 1)
    return Module(group, p, [one] * group.order)


def zero_module(group: FiniteGroup, p: int) -> Module:
    empty = FpMatrix.zeros(p, 0, 0)
    return Module(group, p, [empty] * group.order)


def regular_module(group: FiniteGroup, p: int) -> Module:
    """kG acting on itself by left multiplication (permutation matrices)."""
    n = group.order
    action = []
    for g in range(n):
        m = np.zeros((n, n), dtype=np.int64)
        for x in range(n):
            m[group.table[g, x], x] = 1
        action.append(FpMatrix(p, m))
    return Module(group, p, action)


def _check_same_algebra(m: Module, n: Module) -> None:
    if m.p != n.p:
        raise ValueError("modules have different characteristics")
    if m.group != n.group:
        raise ValueError("modules live over different groups")


def tensor(m: Module, n: Module) -> Module:
    """Tensor product over k with diagonal action.

    Basis ordering is e_i (x) f_j, lexicographic in (i, j), which is
    exactly the Kronecker product ordering.
    """
    _check_same_algebra(m, n)
    action = [m.act(g).kron(n.act(g)) for g in m.group.elements()]
    return Module(m.group, m.p, action, validate=False)


def tensor_morphism(f: Morphism, g: Morphism) -> Morphism:
    """f (x) g : A (x) C -> B (x) D on the Kronecker bases."""
    if f.matrix.p != g.matrix.p:
        raise ValueError("morphisms have different characteristics")
    return Morphism(
        tensor(f.source, g.source),
        tensor(f.target, g.target),
        f.matrix.kron(g.matrix),
        validate=False,
    )


def dual(m: Module) -> Module:
    """Contragredient module: g acts by the transpose of the inverse action."""
    action = [m.act(m.group.inv(g)).T for g in m.group.elements()]
    return Module(m.group, m.p, action, validate=False)


def direct_sum(m: Module, n: Module) -> Module:
    """Block-diagonal action, the first summand's block coming first."""
    return direct_sum_many(m.group, m.p, [m, n])


def direct_sum_many(group: FiniteGroup, p: int, mods: Sequence[Module]) -> Module:
    for m in mods:
        if m.group != group or m.p != p:
            raise ValueError("summands must live over the same group algebra")
    total = sum(m.dim for m in mods)
    action = []
    for g in group.elements():
        blk = np.zeros((total, total), dtype=np.int64)
        at = 0
        for m in mods:
            blk[at : at + m.dim, at : at + m.dim] = m.act(g).array
            at += m.dim
        action.append(FpMatrix(p, blk))
    return Module(group, p, action, validate=False)


def restrict(m: Module, h: Subgroup) -> Module:
    """The same space seen as a module over the subgroup (as a standalone group)."""
    if h.parent != m.group:
        raise ValueError("subgroup does not live in the module's group")
    k = h.as_group()
    return Module(k, m.p, [m.act(x) for x in h.elements])


def induce(group: FiniteGroup, h: Subgroup, m: Module) -> Module:
    """Induction from a subgroup along a fixed left-coset transversal.

    The basis is indexed transversal-major by (t_i, basis vector of m);
    g sends t_i (x) v to t_j (x) (x.v) where g t_i = t_j x with x in the
    subgroup.  Induction from the whole group is the identity operation.
    """
    if h.parent != group:
        raise ValueError("subgroup does not live in the given group")
    k = h.as_group()
    if m.group != k:
        raise ValueError("module must live over the subgroup (use restrict/as_group)")
    reps = coset_transversal(group, h)
    d = m.dim
    n = len(reps) * d
    pos = {x: i for i, x in enumerate(h.elements)}
    # coset lookup: element -> (transversal slot, subgroup element index)
    locate = {}
    for j, t in enumerate(reps):
        t_inv = group.inv(t)
        for x in h.elements:
            locate[group.mul(t, x)] = (j, pos[x])
    action = []
    for g in group.elements():
        mat = np.zeros((n, n), dtype=np.int64)
        for i, t in enumerate(reps):
            j, x_local = locate[group.mul(g, t)]
            mat[j * d : (j + 1) * d, i * d : (i + 1) * d] = m.act(x_local).array
        action.append(FpMatrix(m.p, mat))
    return Module(group, m.p, action)


def module_from_generators(
    group: FiniteGroup, p: int, dim: int, generator_action: Mapping[int, FpMatrix]
) -> Module:
    """Build a module from matrices for the group's generators.

    Actions of the remaining elements are computed by table-driven word
    evaluation (breadth-first from the identity), then the full
    homomorphism property is validated.
    """
    gens = group.generators
    if set(generator_action) != set(gens):
        raise ValueError(
            f"generator actions must be given for exactly the generator indices {sorted(gens)}"
        )
    known: dict[int, FpMatrix] = {group.identity: FpMatrix.identity(p, dim)}
    for g, mat in generator_action.items():
        if mat.shape != (dim, dim):
            raise ValueError(f"generator action for element {g} has shape {mat.shape}, expected ({dim}, {dim})")
        if mat.p != p:
            raise ValueError("generator action modulus differs from the characteristic")
        known[g] = mat
    frontier = sorted(known)
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = group.mul(s, x)
                if y not in known:
                    known[y] = known[s] @ known[x]
                    nxt.append(y)
        frontier = nxt
    if len(known) != group.order:
        raise ValueError("generators failed to reach every element")
    return Module(group, p, [known[g] for g in group.elements()])


def submodule_from_columns(m: Module, basis: FpMatrix) -> tuple[Module, Morphism]:
    """Module structure on an invariant column span, with its inclusion.

    The columns must be independent and their span invariant under every
    action matrix; both are checked via the coordinate solves.
    """
    k = basis.cols
    if basis.rows != m.dim:
        raise ValueError("basis columns have the wrong length")
    if basis.rank() != k:
        raise ValueError("basis columns are not independent")
    action = []
    for g in m.group.elements():
        moved = m.act(g) @ basis
        coords = solve_matrix(basis, moved)
        if coords is None or (basis @ coords) != moved:
            raise ValueError("column span is not invariant under the group action")
        action.append(coords)
    sub = Module(m.group, m.p, action)
    incl = Morphism(sub, m, basis)
    return sub, incl


def kernel_module(f: Morphism) -> tuple[Module, Morphism]:
    """The kernel of a morphism with its induced action and inclusion."""
    basis = nullspace_basis(f.matrix)
    sub, incl = submodule_from_columns(f.source, basis)
    if not (f @ incl).is_zero():
        raise AssertionError("kernel inclusion does not annihilate the map")
    return sub, incl


@dataclass(frozen=True)
class Cokernel:
    """Quotient by an image, with the projection and a linear right inverse.

    ``lift`` satisfies proj.matrix @ lift == identity; it picks the
    standard coordinates complementary to the image and is linear only,
    not a morphism.
    """

    module: Module
    proj: Morphism
    lift: FpMatrix


def cokernel_module(f: Morphism) -> Cokernel:
    """The cokernel of a morphism with its induced action and projection."""
    target = f.target
    p = f.matrix.p
    d = target.dim
    row_form, r, pivots = rref(f.matrix.T)
    image_basis = row_form.array[:r].T  # (d, r), spans im(f)
    free = [j for j in range(d) if j not in set(pivots)]
    lift = np.zeros((d, len(free)), dtype=np.int64)
    for k, j in enumerate(free):
        lift[j, k] = 1
    full = FpMatrix(p, np.hstack([image_basis, lift]))
    inv = full.inv()
    proj_mat = FpMatrix(p, inv.array[r:, :])
    lift_fp = FpMatrix(p, lift)
    action = [proj_mat @ target.act(g) @ lift_fp for g in target.group.elements()]
    quot = Module(target.group, p, action)
    proj = Morphism(target, quot, proj_mat)
    if not (proj @ f).is_zero():
        raise AssertionError("cokernel projection does not annihilate the map")
    return Cokernel(quot, proj, lift_fp)


def _canonical_column_basis(p: int, columns: np.ndarray) -> np.ndarray:
    """Canonical (echelon) basis of the column span, as columns."""
    row_form, r, _ = rref(FpMatrix(p, columns.T))
    return row_form.array[:r].T


def spanned_submodule(m: Module, vectors: Sequence[Sequence[int]]) -> tuple[Module, Morphism]:
    """Smallest submodule containing the given coordinate vectors."""
    p = m.p
    span = np.array(vectors, dtype=np.int64).reshape(len(vectors), m.dim).T % p
    span = _canonical_column_basis(p, span)
    while True:
        moved = [span] + [(m.act(g).array @ span) % p for g in m.group.generators]
        grown = _canonical_column_basis(p, np.hstack(moved))
        if grown.shape[1] == span.shape[1]:
            break
        span = grown
    return submodule_from_columns(m, FpMatrix(p, span))
