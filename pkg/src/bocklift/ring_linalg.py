"""Exact linear algebra over the rings Z/2^e.

Z/2^e is a local principal ideal ring, so every ideal is (2^v) and an element
of minimal 2-adic valuation divides every other element of a column.  That
makes elimination exact without gcd bookkeeping.  Row spans are put into
Howell normal form, which is canonical and closed under the annihilator
condition, so greedy reduction against it decides membership.

All routines are pure and never touch floating point.  Entries live in
``int64`` arrays; exponents are limited to ``MAX_EXPONENT`` so that a product
of two reduced entries never overflows.
"""
from __future__ import annotations

from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DimensionMismatch

MAX_EXPONENT = 30


def valuation(x: int, cap: Optional[int] = None) -> int:
    """2-adic valuation of ``x``; zero maps to ``cap`` and is an error without one."""
    x = int(x)
    if x == 0:
        if cap is None:
            raise ValueError("valuation of zero needs a cap")
        return cap
    return (x & -x).bit_length() - 1


def _check_exponent(e: int) -> int:
    e = int(e)
    if not 1 <= e <= MAX_EXPONENT:
        raise ValueError(f"modulus exponent must be in [1, {MAX_EXPONENT}], got {e}")
    return e


class _Residue:
    __slots__ = ("_data", "_exponent")

    def __init__(self, data: np.ndarray, exponent: int):
        self._exponent = _check_exponent(exponent)
        data = np.mod(data, 1 << self._exponent).astype(np.int64)
        data.flags.writeable = False
        self._data = data

    @property
    def exponent(self) -> int:
        return self._exponent

    @property
    def modulus(self) -> int:
        return 1 << self._exponent

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the canonical representatives."""
        return self._data

    @property
    def shape(self):
        return self._data.shape

    def tolist(self):
        return self._data.tolist()

    def is_zero(self) -> bool:
        return not self._data.any()

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (
            self._exponent == other._exponent
            and self._data.shape == other._data.shape
            and bool(np.array_equal(self._data, other._data))
        )

    def __hash__(self):
        return hash((type(self).__name__, self._exponent, self._data.shape, self._data.tobytes()))


class ResidueMatrix(_Residue):
    """Immutable matrix over Z/2^e holding canonical representatives in [0, 2^e).

    Zero-row and zero-column matrices are legal and behave as zero maps.
    """

    __slots__ = ()

    def __init__(self, entries, exponent: int, cols: Optional[int] = None):
        arr = _coerce(entries, exponent)
        if arr.size == 0:
            rows = arr.shape[0] if arr.ndim >= 1 else 0
            if cols is None:
                cols = arr.shape[1] if arr.ndim == 2 else 0
            arr = np.zeros((rows, cols), dtype=np.int64)
        if arr.ndim != 2:
            raise DimensionMismatch(f"matrix entries must be 2-dimensional, got shape {arr.shape}")
        if cols is not None and arr.shape[1] != cols:
            raise DimensionMismatch(f"expected {cols} columns, got {arr.shape[1]}")
        super().__init__(arr, exponent)

    @classmethod
    def zeros(cls, rows: int, cols: int, exponent: int) -> "ResidueMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), exponent)

    @classmethod
    def identity(cls, size: int, exponent: int) -> "ResidueMatrix":
        return cls(np.eye(size, dtype=np.int64), exponent)

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def T(self) -> "ResidueMatrix":
        return ResidueMatrix(self._data.T, self._exponent)

    def reduce(self, exponent: int) -> "ResidueMatrix":
        """Reinterpret the canonical integer representatives modulo 2^exponent."""
        return ResidueMatrix(self._data, exponent)

    def row(self, i: int) -> "ResidueVector":
        return ResidueVector(self._data[i], self._exponent)

    def __iter__(self):
        for i in range(self.rows):
            yield self.row(i)

    def __repr__(self):
        return f"ResidueMatrix({self._data.tolist()}, exponent={self._exponent}, cols={self.cols})"


class ResidueVector(_Residue):
    """Immutable vector over Z/2^e."""

    __slots__ = ()

    def __init__(self, entries, exponent: int):
        arr = _coerce(entries, exponent)
        if arr.size == 0:
            arr = np.zeros(0, dtype=np.int64)
        if arr.ndim != 1:
            raise DimensionMismatch(f"vector entries must be 1-dimensional, got shape {arr.shape}")
        super().__init__(arr, exponent)

    @classmethod
    def zeros(cls, length: int, exponent: int):
        return cls(np.zeros(length, dtype=np.int64), exponent)

    def __len__(self):
        return self._data.shape[0]

    def __iter__(self):
        return iter(self._data.tolist())

    def __getitem__(self, i):
        return int(self._data[i])

    def reduce(self, exponent: int):
        return type(self)(self._data, exponent)

    def to_tuple(self) -> tuple:
        return tuple(self._data.tolist())

    def __repr__(self):
        return f"{type(self).__name__}({self._data.tolist()}, exponent={self._exponent})"


def _coerce(entries, exponent: int) -> np.ndarray:
    if isinstance(entries, _Residue):
        return entries.array
    try:
        return np.asarray(entries, dtype=np.int64)
    except OverflowError:
        big = np.array(entries, dtype=object)
        return np.mod(big, 1 << _check_exponent(exponent)).astype(np.int64)


def _as_array(x) -> np.ndarray:
    if isinstance(x, _Residue):
        return x.array
    return np.asarray(x)


def int_product(a, b) -> np.ndarray:
    """Exact integer product of canonical representatives (no reduction).

    Falls back to Python integers when int64 could overflow.
    """
    a = _as_array(a)
    b = _as_array(b)
    if a.shape[-1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    inner = a.shape[-1]
    amax = int(np.abs(a).max()) if a.size else 0
    bmax = int(np.abs(b).max()) if b.size else 0
    if amax.bit_length() + bmax.bit_length() + max(inner, 1).bit_length() < 63:
        return a.astype(np.int64) @ b.astype(np.int64)
    return a.astype(object) @ b.astype(object)


def mat_mul_mod(A: ResidueMatrix, B: ResidueMatrix, e_out: int) -> ResidueMatrix:
    """Product of the canonical representatives of ``A`` and ``B`` reduced mod 2^e_out."""
    if A.cols != B.rows:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    prod = int_product(A, B)
    if prod.dtype == object:
        prod = np.mod(prod, 1 << _check_exponent(e_out)).astype(np.int64)
    return ResidueMatrix(prod.reshape(A.rows, B.cols), e_out)


def two_adic_level(M, cap: int) -> int:
    """Largest k <= cap such that every entry of the integer matrix ``M`` is divisible by 2^k."""
    if cap < 0:
        raise ValueError("cap must be non-negative")
    flat = np.asarray(_as_array(M), dtype=object).ravel()
    level = cap
    for x in flat:
        x = int(x)
        if x:
            level = min(level, valuation(x))
            if level == 0:
                break
    return level


# --------------------------------------------------------------------------
# Howell normal form


def _howell(a: np.ndarray, e: int, track: bool):
    """Howell form of the row span of ``a`` over Z/2^e.

    Returns ``(work, pivots, T)`` where ``work`` has ``r + c`` rows (the input
    padded with ``c`` zero rows), the first ``len(pivots)`` rows of ``work``
    are the Howell rows, ``pivots`` lists ``(column, valuation)`` per Howell
    row, and ``T`` (when tracked) is the unimodular transform with
    ``T @ pad(a) == work`` mod 2^e.

    The padding guarantees a free zero row whenever an annihilator multiple
    of a pivot row has to be appended to the pool.
    """
    mod = 1 << e
    r, c = a.shape
    size = r + c
    work = np.zeros((size, c), dtype=np.int64)
    work[:r] = np.mod(a, mod)
    T = np.eye(size, dtype=np.int64) if track else None
    pivots = []
    top = 0
    for j in range(c):
        column = work[top:, j]
        nz = np.flatnonzero(column)
        if nz.size == 0:
            continue
        vals = [valuation(x) for x in column[nz].tolist()]
        v = min(vals)
        best = top + int(nz[vals.index(v)])
        if best != top:
            work[[top, best]] = work[[best, top]]
            if track:
                T[[top, best]] = T[[best, top]]
        unit = int(work[top, j]) >> v
        if unit != 1:
            inv = pow(unit, -1, mod)
            work[top] = work[top] * inv % mod
            if track:
                T[top] = T[top] * inv % mod
        for i in range(top + 1, size):
            x = int(work[i, j])
            if x:
                q = x >> v
                work[i] = (work[i] - q * work[top]) % mod
                if track:
                    T[i] = (T[i] - q * T[top]) % mod
        if v > 0:
            mult = 1 << (e - v)
            ann = work[top] * mult % mod
            if ann.any():
                empty = [i for i in range(top + 1, size) if not work[i].any()]
                k = empty[0]
                work[k] = ann
                if track:
                    T[k] = (T[k] + mult * T[top]) % mod
        pivots.append((j, v))
        top += 1
    # reduce entries above each pivot into [0, 2^v)
    for p, (j, v) in enumerate(pivots):
        for i in range(p):
            x = int(work[i, j])
            q = x >> v
            if q:
                work[i] = (work[i] - q * work[p]) % mod
                if track:
                    T[i] = (T[i] - q * T[p]) % mod
    return work, pivots, T


def howell_form(A: ResidueMatrix) -> tuple[ResidueMatrix, ResidueMatrix]:
    """Howell normal form ``H`` of the row span of ``A`` with ``H == U @ A``.

    ``H`` keeps only its nonzero rows, so it can have more rows than ``A``
    (e.g. [[2, 1]] over Z/4 has Howell form [[2, 1], [0, 2]]).  ``U`` is the
    top-left block of a square unimodular transform of the zero-padded input;
    see :func:`howell_transform` for the square matrix itself.
    """
    work, pivots, T = _howell(A.array, A.exponent, track=True)
    h = len(pivots)
    H = ResidueMatrix(work[:h], A.exponent, cols=A.cols)
    U = ResidueMatrix(T[:h, : A.rows], A.exponent, cols=A.rows)
    return H, U


def howell_transform(A: ResidueMatrix) -> tuple[ResidueMatrix, ResidueMatrix]:
    """Square unimodular ``T`` and padded ``W`` with ``W == T @ [A; 0]`` (``rows + cols`` rows)."""
    work, _, T = _howell(A.array, A.exponent, track=True)
    return ResidueMatrix(work, A.exponent, cols=A.cols), ResidueMatrix(T, A.exponent)


def howell_pivots(A: ResidueMatrix) -> list[tuple[int, int]]:
    """(column, valuation) of each Howell row of ``A``."""
    return _howell(A.array, A.exponent, track=False)[1]


def rank_mod2(A) -> int:
    """Rank of the mod-2 reduction of ``A``."""
    a = np.mod(_as_array(A), 2)
    return len(_howell(a, 1, track=False)[1])


def _reduce_against(vec: np.ndarray, H: np.ndarray, pivots, mod: int):
    """Greedy reduction of ``vec`` by Howell rows; returns (residual, coefficients)."""
    vec = np.mod(vec, mod).astype(np.int64)
    coeffs = np.zeros(len(pivots), dtype=np.int64)
    for p, (j, v) in enumerate(pivots):
        x = int(vec[j])
        if x == 0:
            continue
        if x % (1 << v):
            return vec, None
        q = x >> v
        coeffs[p] = q
        vec = (vec - q * H[p]) % mod
    if vec.any():
        return vec, None
    return vec, coeffs


def in_row_span(A: ResidueMatrix, b) -> bool:
    """True iff the row vector ``b`` lies in the row span of ``A``."""
    work, pivots, _ = _howell(A.array, A.exponent, track=False)
    _, coeffs = _reduce_against(_as_array(b), work, pivots, A.modulus)
    return coeffs is not None


def solve_mod(A: ResidueMatrix, b: ResidueVector) -> Optional[ResidueVector]:
    """Solve ``A @ x == b`` over Z/2^e; ``None`` when no solution exists.

    The solution is the canonical one read off the Howell form of ``A^T``:
    ``b`` is reduced greedily against the Howell rows and the reduction
    coefficients are pulled back through the transform.
    """
    if len(b) != A.rows:
        raise DimensionMismatch(f"right-hand side has length {len(b)}, matrix has {A.rows} rows")
    e = A.exponent
    mod = 1 << e
    bvec = np.mod(b.array, mod)
    if A.cols == 0:
        return ResidueVector.zeros(0, e) if not bvec.any() else None
    work, pivots, T = _howell(A.array.T, e, track=True)
    _, coeffs = _reduce_against(bvec, work, pivots, mod)
    if coeffs is None:
        return None
    h = len(pivots)
    x = int_product(coeffs, T[:h, : A.cols]) if h else np.zeros(A.cols, dtype=np.int64)
    return ResidueVector(np.mod(x, mod), e)


def kernel_basis_mod(A: ResidueMatrix) -> ResidueMatrix:
    """Rows generating {x : A @ x == 0 mod 2^e}, in Howell form.

    Uses the Howell form of ``[A^T | I]``: by the Howell property, the rows
    whose first block vanishes span exactly the pairs ``(0, x)`` with
    ``A x == 0``.
    """
    r, c = A.shape
    e = A.exponent
    aug = np.concatenate([A.array.T, np.eye(c, dtype=np.int64)], axis=1)
    work, pivots, _ = _howell(aug, e, track=False)
    rows = [work[p, r:] for p, (j, _) in enumerate(pivots) if j >= r]
    if not rows:
        return ResidueMatrix.zeros(0, c, e)
    return ResidueMatrix(np.array(rows), e, cols=c)


def smith_valuations(A: ResidueMatrix) -> list[int]:
    """Valuations of the nonzero Smith diagonal entries of ``A`` over Z/2^e."""
    e = A.exponent
    mod = 1 << e
    work = np.array(A.array, dtype=np.int64)
    rows, cols = work.shape
    out = []
    t = 0
    while t < min(rows, cols):
        sub = work[t:, t:]
        nz = np.argwhere(sub)
        if nz.size == 0:
            break
        vals = [valuation(sub[i, j]) for i, j in nz.tolist()]
        v = min(vals)
        i0, j0 = (int(x) for x in nz[vals.index(v)])
        i0 += t
        j0 += t
        work[[t, i0]] = work[[i0, t]]
        work[:, [t, j0]] = work[:, [j0, t]]
        unit = int(work[t, t]) >> v
        if unit != 1:
            work[t] = work[t] * pow(unit, -1, mod) % mod
        for i in range(t + 1, rows):
            q = int(work[i, t]) >> v
            if q:
                work[i] = (work[i] - q * work[t]) % mod
        for j in range(t + 1, cols):
            q = int(work[t, j]) >> v
            if q:
                work[:, j] = (work[:, j] - q * work[:, t]) % mod
        out.append(v)
        t += 1
    return out


def module_invariants(A: ResidueMatrix) -> list[int]:
    """Exponents e_1 >= e_2 >= ... with (Z/2^e)^cols / rowspan(A) = sum of Z/2^{e_i}."""
    vals = smith_valuations(A)
    exps = [A.exponent] * (A.cols - len(vals)) + [v for v in vals if v > 0]
    return sorted(exps, reverse=True)


def inverse_mod(A: ResidueMatrix) -> Optional[ResidueMatrix]:
    """Inverse of a square matrix over Z/2^e, or ``None`` when it is singular mod 2."""
    if A.rows != A.cols:
        raise DimensionMismatch("only square matrices have inverses")
    cols = []
    for i in range(A.rows):
        unit = np.zeros(A.rows, dtype=np.int64)
        unit[i] = 1
        x = solve_mod(A, ResidueVector(unit, A.exponent))
        if x is None:
            return None
        cols.append(x.array)
    if not cols:
        return ResidueMatrix.zeros(0, 0, A.exponent)
    return ResidueMatrix(np.array(cols).T, A.exponent)


def span_vectors(rows: Sequence[Sequence[int]] | np.ndarray, e: int, n: int) -> np.ndarray:
    """Every vector in the Z/2^e-span of ``rows`` (brute force; small inputs only)."""
    mod = 1 << e
    out = np.zeros((1, n), dtype=np.int64)
    for row in np.asarray(rows, dtype=np.int64).reshape(-1, n):
        shifted = [(out + k * row) % mod for k in range(mod)]
        out = np.unique(np.concatenate(shifted), axis=0)
    return out


def xor_span(rows: Iterable[np.ndarray], n: int) -> np.ndarray:
    """All XOR combinations of binary ``rows`` (with repetition if rows are dependent)."""
    out = np.zeros((1, n), dtype=np.uint8)
    for row in rows:
        row = np.asarray(row, dtype=np.uint8) & 1
        out = np.concatenate([out, out ^ row])
    return out
