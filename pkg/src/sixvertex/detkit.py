"""Dense complex determinant kernels.

Everything here is precision-generic: numpy complex matrices take a
log-magnitude LU path that cannot overflow, while object-dtype matrices
(e.g. mpmath entries) fall back to direct pivot products.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import IndexOutOfRange, OrderExceeded
from .jets import Series2

PIVOT_UNDERFLOW = 1e-300


def lu_det(matrix) -> complex:
    """Determinant via LU with partial pivoting.

    Magnitudes accumulate in log space and the phase on the unit circle, so
    products of many large/small pivots neither overflow nor underflow.  A
    pivot below the underflow threshold means a (numerically) singular
    matrix and yields exactly 0.  The empty matrix has determinant 1.
    """
    m = np.array(matrix, copy=True)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("lu_det needs a square matrix")
    n = m.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    if m.dtype == object:
        return _lu_det_object(m)
    m = m.astype(complex)
    sign = 1.0
    logmag = 0.0
    phase = complex(1.0)
    for col in range(n):
        piv = col + int(np.argmax(np.abs(m[col:, col])))
        pval = m[piv, col]
        if abs(pval) < PIVOT_UNDERFLOW:
            return 0.0 + 0.0j
        if piv != col:
            m[[col, piv], :] = m[[piv, col], :]
            sign = -sign
        logmag += math.log(abs(pval))
        phase *= pval / abs(pval)
        if col + 1 < n:
            factors = m[col + 1 :, col] / pval
            m[col + 1 :, col:] -= np.outer(factors, m[col, col:])
    return sign * phase * cmath.exp(logmag)


def _lu_det_object(m: np.ndarray) -> complex:
    n = m.shape[0]
    det = 1
    for col in range(n):
        piv = col
        best = abs(m[col, col])
        for r in range(col + 1, n):
            a = abs(m[r, col])
            if a > best:
                best = a
                piv = r
        if best < PIVOT_UNDERFLOW:
            return 0.0 + 0.0j
        if piv != col:
            m[[col, piv], :] = m[[piv, col], :]
            det = -det
        det = det * m[col, col]
        for r in range(col + 1, n):
            f = m[r, col] / m[col, col]
            m[r, col:] = m[r, col:] - f * m[col, col:]
    return det


def minor_det(matrix, drop_rows, drop_cols) -> complex:
    """Determinant of the submatrix with the given 0-based rows/columns removed,
    survivors keeping their original order.  Dropping everything gives 1."""
    m = np.asarray(matrix)
    drop_rows = sorted(set(int(r) for r in drop_rows))
    drop_cols = sorted(set(int(c) for c in drop_cols))
    if len(drop_rows) != len(drop_cols):
        raise IndexOutOfRange("must drop equally many rows and columns")
    n_rows, n_cols = m.shape
    if any(r < 0 or r >= n_rows for r in drop_rows):
        raise IndexOutOfRange(f"row drops {drop_rows} outside 0..{n_rows - 1}")
    if any(c < 0 or c >= n_cols for c in drop_cols):
        raise IndexOutOfRange(f"column drops {drop_cols} outside 0..{n_cols - 1}")
    sub = np.delete(np.delete(m, drop_rows, axis=0), drop_cols, axis=1)
    return lu_det(sub)


def laplace_sign(p: int, q: int) -> int:
    """Coefficient sign for sending rows p != q (1-based) into the first two
    columns of a generalized Laplace expansion: (-1)^(p+q) * sgn(p - q)."""
    s = 1 if p > q else -1
    return s if (p + q) % 2 == 0 else -s


def two_column_expansion(dfun, block, rows_a=None, rows_b=None) -> complex:
    """Expand a determinant whose first two columns hold operators.

    block is the n x (n-2) matrix of remaining scalar columns; dfun(p, q)
    (1-based rows) is the value of applying row p's first-column operator and
    row q's second-column operator to the target function.  The (p, q) sum
    runs row-major in a fixed order, so the reduction is deterministic.
    """
    blk = np.asarray(block)
    n = blk.shape[0]
    if blk.ndim != 2 or blk.shape[1] != max(n - 2, 0):
        raise ValueError(f"scalar block must be n x (n-2), got {blk.shape}")
    rows_a = range(1, n + 1) if rows_a is None else rows_a
    rows_b = range(1, n + 1) if rows_b is None else rows_b
    total = 0.0 + 0.0j
    for p in rows_a:
        for q in rows_b:
            if p == q:
                continue
            val = dfun(p, q)
            if val == 0:
                continue
            minor = lu_det(np.delete(blk, [p - 1, q - 1], axis=0))
            total = total + laplace_sign(p, q) * val * minor
    return total


def laplace_two_column_det(f: Series2, phi_block) -> complex:
    """Determinant with columns (d/de1)^(j-1), (d/de2)^(j-1), scalar block,
    applied to the two-variable jet f and evaluated at the base point."""
    blk = np.asarray(phi_block, dtype=complex)
    if blk.ndim != 2:
        raise ValueError("phi_block must be 2-d")
    n = blk.shape[0]
    k1, k2 = f.orders
    if k1 < n - 1 or k2 < n - 1:
        raise OrderExceeded(
            f"jet orders {f.orders} too small for an {n}-row expansion"
        )
    return two_column_expansion(
        lambda p, q: f.partial(p - 1, q - 1), blk
    )
