"""Exact dense linear algebra over prime fields GF(p).

Everything downstream (representations, hom spaces, syzygies, the
brute-force oracles) reduces to row reduction over GF(p), so the
arithmetic story is kept deliberately plain: matrices are immutable
int64 numpy arrays whose entries are residues in [0, p), reduced after
every ring operation.  Pivot inverses come from pow(x, -1, p).  The
moduli in practice are tiny (p <= 97), dense storage is fine.
"""

from __future__ import annotations

from typing import NamedTuple, Optional, Sequence, Union

import numpy as np

ArrayLike = Union[Sequence[Sequence[int]], np.ndarray]


def is_prime(n: int) -> bool:
    """Trial division; the moduli used here are small."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact integer matmul mod p, routed through BLAS.

    Inputs must already be reduced mod p.  Products are exact in float64
    as long as inner_dim * (p-1)^2 < 2^53, which holds by an enormous
    margin for the sizes and moduli used here (p <= 97); the bound is
    still checked.
    """
    inner = a.shape[-1]
    if inner * (p - 1) ** 2 >= 2**53:
        return np.matmul(a, b) % p
    prod = np.matmul(a.astype(np.float64), b.astype(np.float64))
    return np.rint(prod).astype(np.int64) % p


class FpMatrix:
    """An immutable rows x cols matrix over GF(p).

    Entries are stored row-major as residues in [0, p); the constructor
    reduces whatever integers it is given.  All operations return new
    matrices and never mutate their operands.
    """

    __slots__ = ("p", "_a")

    def __init__(self, p: int, entries: ArrayLike):
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        a = np.array(entries, dtype=np.int64)
        if a.ndim != 2:
            raise ValueError(f"expected a 2-D array of entries, got shape {a.shape}")
        a %= p
        a.setflags(write=False)
        self.p = p
        self._a = a

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls(p, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "FpMatrix":
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def column(cls, p: int, entries: Sequence[int]) -> "FpMatrix":
        return cls(p, np.asarray(entries, dtype=np.int64).reshape(-1, 1))

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the underlying residues."""
        return self._a

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def T(self) -> "FpMatrix":
        return FpMatrix(self.p, self._a.T)

    def tolist(self) -> list[list[int]]:
        return self._a.tolist()

    def _check_compatible(self, other: "FpMatrix") -> None:
        if not isinstance(other, FpMatrix):
            raise TypeError(f"expected FpMatrix, got {type(other).__name__}")
        if self.p != other.p:
            raise ValueError(f"modulus mismatch: {self.p} vs {other.p}")

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        self._check_compatible(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")
        return FpMatrix(self.p, self._a + other._a)

    def __sub__(self, other: "FpMatrix") -> "FpMatrix":
        self._check_compatible(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")
        return FpMatrix(self.p, self._a - other._a)

    def __neg__(self) -> "FpMatrix":
        return FpMatrix(self.p, -self._a)

    def __mul__(self, scalar: int) -> "FpMatrix":
        if not isinstance(scalar, (int, np.integer)):
            return NotImplemented
        return FpMatrix(self.p, self._a * int(scalar))

    __rmul__ = __mul__

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        self._check_compatible(other)
        if self.cols != other.rows:
            raise ValueError(
                f"cannot multiply {self.shape} by {other.shape}: inner dimensions differ"
            )
        return FpMatrix(self.p, matmul_mod(self._a, other._a, self.p))

    def kron(self, other: "FpMatrix") -> "FpMatrix":
        self._check_compatible(other)
        return FpMatrix(self.p, np.kron(self._a, other._a))

    def matpow(self, k: int) -> "FpMatrix":
        if self.rows != self.cols:
            raise ValueError("matrix power requires a square matrix")
        if k < 0:
            raise ValueError("negative powers not supported; use inv()")
        result = FpMatrix.identity(self.p, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def rank(self) -> int:
        return rref(self).rank

    def inv(self) -> "FpMatrix":
        if self.rows != self.cols:
            raise ValueError("only square matrices are invertible")
        sol = solve_matrix(self, FpMatrix.identity(self.p, self.rows))
        if sol is None or (self @ sol) != FpMatrix.identity(self.p, self.rows):
            raise ValueError("matrix is singular")
        return sol

    def is_zero(self) -> bool:
        return not self._a.any()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and np.array_equal(self._a, other._a)

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.p}, {self.tolist()})"


def hstack(mats: Sequence[FpMatrix]) -> FpMatrix:
    if not mats:
        raise ValueError("hstack of an empty list")
    p = mats[0].p
    return FpMatrix(p, np.hstack([m.array for m in mats]))


def vstack(mats: Sequence[FpMatrix]) -> FpMatrix:
    if not mats:
        raise ValueError("vstack of an empty list")
    p = mats[0].p
    return FpMatrix(p, np.vstack([m.array for m in mats]))


def block_diag(p: int, mats: Sequence[FpMatrix]) -> FpMatrix:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for m in mats:
        out[r : r + m.rows, c : c + m.cols] = m.array
        r += m.rows
        c += m.cols
    return FpMatrix(p, out)


class RrefResult(NamedTuple):
    matrix: "FpMatrix"
    rank: int
    pivots: tuple[int, ...]


def _rref_gf2(a: np.ndarray) -> tuple[np.ndarray, int, tuple[int, ...]]:
    """Bit-packed Gauss-Jordan over GF(2); rows live in uint8 words."""
    rows, cols = a.shape
    packed = np.packbits((a & 1).astype(np.uint8), axis=1, bitorder="little")
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        byte, bit = c >> 3, c & 7
        colbits = (packed[r:, byte] >> bit) & 1
        nz = np.nonzero(colbits)[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            packed[[r, piv]] = packed[[piv, r]]
        mask = ((packed[:, byte] >> bit) & 1).astype(bool)
        mask[r] = False
        if mask.any():
            packed[mask] ^= packed[r]
        pivots.append(c)
        r += 1
    out = np.unpackbits(packed, axis=1, count=cols, bitorder="little").astype(np.int64) if cols else a.copy()
    return out, r, tuple(pivots)


def _rref_array(a: np.ndarray, p: int) -> tuple[np.ndarray, int, tuple[int, ...]]:
    if p == 2:
        return _rref_gf2(a % 2)
    # int32 is safe: |entry - pivot*entry| <= (p-1) + (p-1)^2 for p <= 97
    a = (a % p).astype(np.int32)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r] = (a[r] * inv) % p
        col = a[:, c]
        touched = np.nonzero(col)[0]
        touched = touched[touched != r]
        if touched.size:
            block = a[touched]
            block -= np.outer(col[touched], a[r])
            block %= p
            a[touched] = block
        pivots.append(c)
        r += 1
    return a.astype(np.int64), r, tuple(pivots)


def rref(mat: FpMatrix) -> RrefResult:
    """Reduced row-echelon form by Gauss-Jordan elimination over GF(p).

    Preserves the row space; the rank is the number of pivots.  Empty
    matrices are allowed and have rank 0.
    """
    reduced, rank, pivots = _rref_array(mat.array, mat.p)
    return RrefResult(FpMatrix(mat.p, reduced), rank, pivots)


def solve_linear_system(mat: FpMatrix, rhs: Union[Sequence[int], np.ndarray]) -> Optional[np.ndarray]:
    """Solve mat @ x = rhs, or return None when inconsistent.

    In underdetermined systems every free variable is set to 0, so the
    returned witness is deterministic.
    """
    b = np.asarray(rhs, dtype=np.int64).reshape(-1)
    if b.shape[0] != mat.rows:
        raise ValueError(f"rhs has length {b.shape[0]}, expected {mat.rows}")
    sol = solve_matrix(mat, FpMatrix(mat.p, b.reshape(-1, 1)))
    if sol is None:
        return None
    return sol.array[:, 0].copy()


def solve_matrix(mat: FpMatrix, rhs: FpMatrix) -> Optional[FpMatrix]:
    """Simultaneous solve mat @ X = rhs for all rhs columns (free vars zeroed)."""
    if rhs.rows != mat.rows:
        raise ValueError(f"rhs has {rhs.rows} rows, expected {mat.rows}")
    if rhs.p != mat.p:
        raise ValueError("modulus mismatch between system and rhs")
    p = mat.p
    n = mat.cols
    aug = np.hstack([mat.array, rhs.array])
    reduced, _, pivots = _rref_array(aug, p)
    x = np.zeros((n, rhs.cols), dtype=np.int64)
    for i, piv in enumerate(pivots):
        if piv >= n:
            return None
        x[piv] = reduced[i, n:]
    return FpMatrix(p, x)


def nullspace_basis(mat: FpMatrix) -> FpMatrix:
    """Matrix whose columns form a basis of ker(mat).

    Column count is cols - rank; the basis is the standard one read off
    the reduced echelon form (a 1 in each free position).
    """
    p = mat.p
    reduced, rank, pivots = _rref_array(mat.array, p)
    free = [j for j in range(mat.cols) if j not in set(pivots)]
    basis = np.zeros((mat.cols, len(free)), dtype=np.int64)
    if free:
        basis[free, np.arange(len(free))] = 1
        if pivots:
            basis[np.ix_(list(pivots), range(len(free)))] = (-reduced[:rank][:, free]) % p
    return FpMatrix(p, basis)
