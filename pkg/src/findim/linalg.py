"""Dense exact linear algebra over the prime field GF(p).

Matrices are plain ``numpy`` int64 arrays whose entries lie in ``[0, p)``.
Every routine takes the modulus explicitly and is deterministic: pivots are
chosen column by column, taking the first row with a nonzero entry.
"""

from __future__ import annotations

import numpy as np

DTYPE = np.int64
_INT64_MAX = 2**63 - 1
_FLOAT_EXACT = 2**53
_GF2_PACKED_MIN = 4096


def check_prime(p: int) -> int:
    p = int(p)
    if p < 2 or p > 2**31 - 1:
        raise ValueError(f"modulus {p} outside [2, 2^31-1]")
    if any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"modulus {p} is not prime")
    return p


def asmat(a, p: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Coerce ``a`` to a reduced int64 matrix (``shape`` is used for empty input)."""
    m = np.array(a, dtype=DTYPE)
    if m.size == 0 and shape is not None:
        return np.zeros(shape, dtype=DTYPE)
    if m.ndim == 1:
        m = m.reshape(1, -1) if m.size else np.zeros(shape or (0, 0), dtype=DTYPE)
    return m % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=DTYPE)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=DTYPE)


def mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Matrix product mod p without int64 overflow."""
    inner = a.shape[-1]
    if inner == 0:
        return np.zeros(a.shape[:-1] + b.shape[1:], dtype=DTYPE)
    bound = inner * (p - 1) ** 2
    # integer matmul has no BLAS path; float64 is exact below 2**53
    if bound < _FLOAT_EXACT and a.shape[0] * inner * (b.shape[-1] if b.ndim > 1 else 1) > 4096:
        return np.mod(a.astype(np.float64) @ b.astype(np.float64), p).astype(DTYPE)
    if bound <= _INT64_MAX:
        return (a @ b) % p
    out = (a.astype(object) @ b.astype(object)) % p
    return out.astype(DTYPE)


def matpow(a: np.ndarray, k: int, p: int) -> np.ndarray:
    result = identity(a.shape[0])
    base = a % p
    while k:
        if k & 1:
            result = mul(result, base, p)
        base = mul(base, base, p)
        k >>= 1
    return result


def _rref_gf2(r: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """rref over GF(2) on bit-packed rows; row operations become XOR of bytes."""
    rows, cols = r.shape
    packed = np.packbits(r.astype(np.uint8), axis=1)
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        byte, shift = col >> 3, 7 - (col & 7)
        bits = (packed[row:, byte] >> shift) & 1
        nz = np.flatnonzero(bits)
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            packed[[row, piv]] = packed[[piv, row]]
        hit = np.flatnonzero((packed[:, byte] >> shift) & 1)
        hit = hit[hit != row]
        if hit.size:
            packed[hit] ^= packed[row]
        pivots.append(col)
        row += 1
    out = np.unpackbits(packed, axis=1, count=cols).astype(DTYPE)
    return out, pivots


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    r = np.array(m, dtype=DTYPE) % p
    rows, cols = r.shape
    if p == 2 and rows * cols > _GF2_PACKED_MIN:
        return _rref_gf2(r)
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        inv = pow(int(r[row, col]), -1, p)
        if inv != 1:
            r[row] = (r[row] * inv) % p
        others = np.nonzero(r[:, col])[0]
        others = others[others != row]
        if others.size:
            factors = r[others, col].reshape(-1, 1)
            r[others] = (r[others] - factors * r[row]) % p
        pivots.append(col)
        row += 1
    return r, pivots


def rank(m: np.ndarray, p: int) -> int:
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def kernel_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning the right kernel, read off the reduced echelon form.

    Column ``k`` of the result has a 1 in the k-th free coordinate and zeros in
    all other free coordinates.
    """
    rows, cols = m.shape
    if rows == 0:
        return identity(cols)
    r, pivots = rref(m, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    k = zeros(cols, len(free))
    if free:
        k[free, np.arange(len(free))] = 1
        if pivots:
            k[np.ix_(pivots, range(len(free)))] = (-r[: len(pivots)][:, free]) % p
    return k


def solve(m: np.ndarray, b, p: int) -> np.ndarray | None:
    """One solution of ``m @ x = b`` with free variables set to 0, or None."""
    b = np.asarray(b, dtype=DTYPE) % p
    rows, cols = m.shape
    if b.shape[0] != rows:
        raise ValueError(f"dimension mismatch: matrix has {rows} rows, rhs {b.shape[0]}")
    single = b.ndim == 1
    bb = b.reshape(rows, 1) if single else b.reshape(rows, b.shape[1] if b.ndim > 1 else 1)
    aug = np.concatenate([m % p, bb], axis=1) if rows else zeros(0, cols + bb.shape[1])
    r, pivots = rref(aug, p)
    if any(pc >= cols for pc in pivots):
        return None
    x = zeros(cols, bb.shape[1])
    for i, pc in enumerate(pivots):
        x[pc] = r[i, cols:]
    return x[:, 0] if single else x


def inverse(m: np.ndarray, p: int) -> np.ndarray:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    x = solve(m, identity(n), p)
    if x is None or rank(m, p) != n:
        raise ValueError("matrix is singular")
    return x


# --- subspaces -----------------------------------------------------------
# A subspace of GF(p)^n is stored as an n x k matrix whose transpose is in
# reduced row echelon form; this form is unique, so equal subspaces have
# identical arrays.


def span(cols: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis of the column span of ``cols``."""
    n = cols.shape[0]
    if cols.size == 0:
        return zeros(n, 0)
    r, pivots = rref(cols.T, p)
    return np.ascontiguousarray(r[: len(pivots)].T)


def pivot_rows(basis: np.ndarray, p: int) -> list[int]:
    """Leading coordinates of a canonical basis."""
    out = []
    for j in range(basis.shape[1]):
        out.append(int(np.nonzero(basis[:, j])[0][0]))
    return out


def coordinates(basis: np.ndarray, v: np.ndarray, p: int) -> np.ndarray:
    """Coordinates of vectors ``v`` (columns) in a canonical basis, assuming membership."""
    piv = pivot_rows(basis, p)
    return np.asarray(v, dtype=DTYPE)[piv] % p


def span_sum(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return span(np.concatenate([a, b], axis=1), p)


def annihilator(basis: np.ndarray, p: int) -> np.ndarray:
    """Rows whose common kernel is exactly the span of ``basis``."""
    n = basis.shape[0]
    if basis.shape[1] == 0:
        return identity(n)
    return np.ascontiguousarray(kernel_basis(basis.T, p).T)


def intersect(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    if a.shape[1] == 0 or b.shape[1] == 0:
        return zeros(n, 0)
    ann = annihilator(b, p)
    coeffs = kernel_basis(mul(ann, a, p), p)
    return span(mul(a, coeffs, p), p)


def preimage(a: np.ndarray, target: np.ndarray, p: int) -> np.ndarray:
    """Basis of ``{v : a @ v in span(target)}``."""
    ann = annihilator(target, p)
    return span(kernel_basis(mul(ann, a, p), p), p)


def contains(big: np.ndarray, small: np.ndarray, p: int) -> bool:
    if small.shape[1] == 0:
        return True
    return rank(np.concatenate([big, small], axis=1), p) == big.shape[1]


def complement(basis: np.ndarray, p: int) -> np.ndarray:
    """Standard unit vectors at the non-pivot coordinates of a canonical basis."""
    n = basis.shape[0]
    piv = set(pivot_rows(basis, p))
    free = [i for i in range(n) if i not in piv]
    c = zeros(n, len(free))
    for j, i in enumerate(free):
        c[i, j] = 1
    return c


def quotient_projection(basis: np.ndarray, p: int) -> np.ndarray:
    """Matrix of V -> V/U in the coordinates given by ``complement``."""
    n = basis.shape[0]
    piv = pivot_rows(basis, p)
    pset = set(piv)
    free = [i for i in range(n) if i not in pset]
    # v - basis @ v[piv] vanishes at the pivots; keep the free coordinates
    reduce = (identity(n) - mul(basis, identity(n)[piv], p)) % p
    return np.ascontiguousarray(reduce[free])
