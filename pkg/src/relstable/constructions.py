"""Wrapping short exact sequences into modules over G x C_p.

Given 0 -> x -> y -> z -> 0 over kG in characteristic p, place p - 1
copies of x, then y, then p - 1 copies of z on one vector space and let
a nilpotent shift s walk along it: identity maps between consecutive
copies of x, the injection from the last x into y, the surjection from
y into the first z, identity maps between consecutive copies of z, and
zero off the end.  Exactness forces s^p = 0, so 1 + s has order p in
characteristic p and (g, h^r) |-> g (1 + s)^r defines a module over
G x C_p.

The point of the construction: the wrapped module is projective
relative to the subgroup G x {e} exactly when the original sequence
splits.  That criterion is tested here through the generic relative-
projectivity engine; the combinatorial identities its hand proof needs
(the alternating binomial congruence and the block recurrences of maps
commuting with the shift action) are verified independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .ff import FpMatrix, is_prime
from .groups import FiniteGroup, Subgroup, cyclic, direct_product
from .homs import has_section
from .relative import RelativeContext, is_relatively_projective
from .reps import Module, Morphism, ShortExactSequence, induce, trivial_module


@dataclass(frozen=True)
class WrapResult:
    """The wrapped module together with the objects needed to test it.

    big_group  G x C_p
    module     the wrapped module over big_group
    shift      the nilpotent shift matrix s (s^p = 0)
    w_rel      Ind of the trivial module from G x {e}, the relative-
               projectivity test object
    g_embedded the subgroup G x {e} of big_group
    """

    big_group: FiniteGroup
    module: Module
    shift: FpMatrix
    w_rel: Module
    g_embedded: Subgroup


def wrap_ses(p: int, ses: ShortExactSequence) -> WrapResult:
    """Wrap a short exact sequence of kG-modules into a k[G x C_p]-module."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    x, y, z = ses.sub, ses.middle, ses.quotient
    if x.p != p:
        raise ValueError(f"sequence lives in characteristic {x.p}, not {p}")
    g = x.group
    big = direct_product(g, cyclic(p))

    dx, dy, dz = x.dim, y.dim, z.dim
    total = (p - 1) * dx + dy + (p - 1) * dz
    # copy layout: x_1 .. x_{p-1}, y, z_1 .. z_{p-1}
    offsets = [i * dx for i in range(p - 1)] + [(p - 1) * dx] + [
        (p - 1) * dx + dy + j * dz for j in range(p - 1)
    ]
    sizes = [dx] * (p - 1) + [dy] + [dz] * (p - 1)

    shift = np.zeros((total, total), dtype=np.int64)
    for i in range(p - 2):
        shift[offsets[i + 1] : offsets[i + 1] + dx, offsets[i] : offsets[i] + dx] = np.eye(dx, dtype=np.int64)
    shift[offsets[p - 1] : offsets[p - 1] + dy, offsets[p - 2] : offsets[p - 2] + dx] = ses.inj.matrix.array
    shift[offsets[p] : offsets[p] + dz, offsets[p - 1] : offsets[p - 1] + dy] = ses.surj.matrix.array
    for j in range(p - 2):
        shift[offsets[p + j + 1] : offsets[p + j + 1] + dz, offsets[p + j] : offsets[p + j] + dz] = np.eye(dz, dtype=np.int64)
    shift_fp = FpMatrix(p, shift)
    if not shift_fp.matpow(p).is_zero():
        raise AssertionError("shift is not p-step nilpotent; exactness bookkeeping bug")

    blocks = [x] * (p - 1) + [y] + [z] * (p - 1)
    diag = []
    for a in g.elements():
        mat = np.zeros((total, total), dtype=np.int64)
        for off, size, mod in zip(offsets, sizes, blocks):
            mat[off : off + size, off : off + size] = mod.act(a).array
        diag.append(FpMatrix(p, mat))

    one_plus = FpMatrix.identity(p, total) + shift_fp
    powers = [FpMatrix.identity(p, total)]
    for _ in range(p - 1):
        powers.append(powers[-1] @ one_plus)
    if (powers[-1] @ one_plus) != powers[0]:
        raise AssertionError("(1 + shift)^p is not the identity")

    # element (a, r) has index a*p + r and acts by diag(a) @ (1 + s)^r
    action = [diag[a] @ powers[r] for a in g.elements() for r in range(p)]
    module = Module(big, p, action)

    g_embedded = Subgroup(big, [a * p for a in g.elements()])
    w_rel = induce(big, g_embedded, trivial_module(g_embedded.as_group(), p))
    return WrapResult(big, module, shift_fp, w_rel, g_embedded)


@dataclass(frozen=True)
class WrapReport:
    split: bool
    rel_proj: bool

    @property
    def agree(self) -> bool:
        return self.split == self.rel_proj


def verify_wrap_criterion(p: int, ses: ShortExactSequence) -> WrapReport:
    """Test the wrapped module's splitting criterion on one sequence.

    split     the original surjection admits a section
    rel_proj  the wrapped module is projective relative to G x {e}
    agree     the two verdicts coincide (predicted: always)
    """
    split = has_section(ses.surj) is not None
    wrapped = wrap_ses(p, ses)
    ctx = RelativeContext(wrapped.w_rel)
    rel_proj = is_relatively_projective(ctx, wrapped.module)
    return WrapReport(split=split, rel_proj=rel_proj)


def _pascal_row(n: int) -> list[int]:
    """Row n of Pascal's triangle by exact integer recursion."""
    row = [1]
    for _ in range(n):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return row


def verify_binomial_signs(p: int) -> bool:
    """Check C(p-1, i) == (-1)^i (mod p) for all 0 <= i <= p - 1."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    row = _pascal_row(p - 1)
    return all(row[i] % p == pow(p - 1, i, p) for i in range(p))


def _shift_block_table(p: int) -> np.ndarray:
    """Symbolic block entries t[s][r] as coefficient vectors over GF(p).

    The free symbols are the first-column blocks t_{1,1} .. t_{p,1}
    (coefficient vectors = unit vectors); later columns follow from the
    recurrence t_{r,s+1} = t_{r-1,s} - t_{r,s} with the first index
    cyclic mod p.  table[s] has shape (p, p): row r-1 holds t_{r,s}.
    """
    table = np.zeros((p - 1, p, p), dtype=np.int64)  # [s-1][r-1][symbol]
    table[0] = np.eye(p, dtype=np.int64)
    for s in range(1, p - 1):
        for r in range(p):
            table[s][r] = (table[s - 1][(r - 1) % p] - table[s - 1][r]) % p
    return table


@dataclass(frozen=True)
class ShiftBlockReport:
    closed_form_ok: bool
    final_sum_ok: bool


def verify_shift_block_identities(p: int) -> ShiftBlockReport:
    """Verify the block identities of maps commuting with the shift action.

    closed_form_ok: the alternating-sum closed form
        t_{r,s} = sum_{i=0}^{k} (-1)^i C(k,i) t_{r-k+i, s-k}
    holds symbolically for all r, all s <= p - 1, and all 0 <= k < s.

    final_sum_ok: t_{p,p-1} - t_{1,p-1} equals the all-ones combination
    of the free symbols, i.e. the sum of the whole first column.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    table = _shift_block_table(p)
    binom = [_pascal_row(k) for k in range(p)]

    closed_form_ok = True
    for s in range(1, p):  # second index s, 1-based
        for k in range(0, s):
            for r in range(1, p + 1):
                acc = np.zeros(p, dtype=np.int64)
                for i in range(k + 1):
                    coeff = pow(p - 1, i, p) * binom[k][i]
                    acc = (acc + coeff * table[s - k - 1][(r - k + i - 1) % p]) % p
                if not np.array_equal(acc, table[s - 1][(r - 1) % p]):
                    closed_form_ok = False

    final = (table[p - 2][(p - 1) % p] - table[p - 2][0]) % p
    final_sum_ok = bool(np.array_equal(final, np.ones(p, dtype=np.int64)))
    return ShiftBlockReport(closed_form_ok=closed_form_ok, final_sum_ok=final_sum_ok)


def shift_block_identities_bruteforce(p: int) -> bool:
    """Re-check the block identities on every concrete scalar assignment.

    The identities are linear in the p free symbols, so vanishing on all
    of GF(p)^p is equivalent to the symbolic statement; this path never
    touches the coefficient-vector engine.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    binom = [_pascal_row(k) for k in range(p)]
    for assignment in product(range(p), repeat=p):
        vals = np.zeros((p - 1, p), dtype=np.int64)  # [s-1][r-1]
        vals[0] = np.asarray(assignment, dtype=np.int64)
        for s in range(1, p - 1):
            for r in range(p):
                vals[s][r] = (vals[s - 1][(r - 1) % p] - vals[s - 1][r]) % p
        for s in range(1, p):
            for k in range(0, s):
                for r in range(p):
                    acc = 0
                    for i in range(k + 1):
                        acc += pow(p - 1, i, p) * binom[k][i] * vals[s - k - 1][(r - k + i) % p]
                    if acc % p != vals[s - 1][r]:
                        return False
        lhs = (vals[p - 2][(p - 1) % p] - vals[p - 2][0]) % p
        if lhs != sum(assignment) % p:
            return False
    return True
