"""Gaussian elimination over finite fields, scalar and batched."""

from __future__ import annotations

import numpy as np

from .errors import FieldMismatch
from .gf import Field, FieldArrays, FieldElement


def det(rows: list[list[FieldElement]]) -> FieldElement:
    """Determinant of a square matrix of field elements."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    field = rows[0][0].field
    for row in rows:
        if len(row) != n:
            raise ValueError("matrix is not square")
        for x in row:
            if x.field != field:
                raise FieldMismatch("matrix entries live in different fields")
    a = [[x.code for x in row] for row in rows]
    result = field.embed_int(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return field.zero
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            result = field.neg_code(result)
        pv = a[col][col]
        result = field.mul_code(result, pv)
        inv = field.inv_code(pv)
        for r in range(col + 1, n):
            if a[r][col]:
                factor = field.mul_code(a[r][col], inv)
                a[r] = [field.sub_code(x, field.mul_code(factor, y)) for x, y in zip(a[r], a[col])]
    return FieldElement(field, result)


def rank(rows: list[list[FieldElement]]) -> int:
    if not rows:
        return 0
    field = rows[0][0].field
    a = [[x.code for x in row] for row in rows]
    nrows, ncols = len(a), len(a[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if a[i][col]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = field.inv_code(a[r][col])
        for i in range(r + 1, nrows):
            if a[i][col]:
                factor = field.mul_code(a[i][col], inv)
                a[i] = [field.sub_code(x, field.mul_code(factor, y)) for x, y in zip(a[i], a[r])]
        r += 1
        if r == nrows:
            break
    return r


def _vec(field: Field | FieldArrays) -> FieldArrays:
    return field if isinstance(field, FieldArrays) else field.vec


def batched_rank(a: np.ndarray, field: Field | FieldArrays) -> np.ndarray:
    """Ranks of a stack of matrices of element codes, shape (N, R, C)."""
    fa = _vec(field)
    a = np.array(a, dtype=np.int64, copy=True)
    nb, nrows, ncols = a.shape
    rows = np.arange(nrows)
    ranks = np.zeros(nb, dtype=np.int64)
    batch = np.arange(nb)
    for col in range(ncols):
        if nb == 0:
            break
        candidates = (a[:, :, col] != 0) & (rows[None, :] >= ranks[:, None])
        has = candidates.any(axis=1)
        if not has.any():
            continue
        sel = batch[has]
        piv = np.argmax(candidates[sel], axis=1)
        tgt = ranks[sel]
        # swap pivot row into position `tgt`
        prow = a[sel, piv].copy()
        a[sel, piv] = a[sel, tgt]
        a[sel, tgt] = prow
        # division-free: row <- pivot*row - entry*pivot_row keeps the rank
        below = rows[None, :] > tgt[:, None]
        block = a[sel]
        entries = np.where(below, block[:, :, col], 0)
        scaled = np.where(below[:, :, None], fa.mul(block, prow[:, None, col : col + 1]), block)
        a[sel] = fa.sub(scaled, fa.mul(entries[:, :, None], prow[:, None, :]))
        ranks[sel] += 1
    return ranks


def batched_det(a: np.ndarray, field: Field | FieldArrays) -> np.ndarray:
    """Determinants of a stack of square matrices of element codes, shape (N, n, n)."""
    fa = _vec(field)
    a = np.array(a, dtype=np.int64, copy=True)
    nb, n, n2 = a.shape
    if n != n2:
        raise ValueError("matrices are not square")
    one = fa.field.embed_int(1)
    result = np.full(nb, one, dtype=np.int64)
    alive = np.ones(nb, dtype=bool)
    rows = np.arange(n)
    for col in range(n):
        candidates = (a[:, col:, col] != 0) & alive[:, None]
        has = candidates.any(axis=1)
        alive &= has
        sel = np.nonzero(alive)[0]
        if sel.size == 0:
            break
        piv = col + np.argmax(candidates[sel], axis=1)
        swapped = piv != col
        prow = a[sel, piv].copy()
        a[sel, piv] = a[sel, col]
        a[sel, col] = prow
        pv = prow[:, col]
        res = fa.mul(result[sel], pv)
        result[sel] = np.where(swapped, fa.neg(res), res)
        inv = fa.inv(pv)
        below = rows[None, :] > col
        factors = fa.mul(a[sel, :, col], inv[:, None])
        factors = np.where(below, factors, 0)
        a[sel] = fa.sub(a[sel], fa.mul(factors[:, :, None], prow[:, None, :]))
    return np.where(alive, result, 0)
