"""Row reduction over GF(2) on bit-packed numpy rows."""

from __future__ import annotations

from typing import List, Tuple

import numpy as np


def pack(rows: np.ndarray) -> np.ndarray:
    """``(r, c)`` 0/1 matrix -> ``(r, ceil(c/64))`` uint64, column ``j`` at bit ``j % 64`` of word ``j // 64``."""
    rows = np.asarray(rows, dtype=np.uint8)
    r, c = rows.shape
    words = max(1, (c + 63) // 64)
    padded = np.zeros((r, words * 64), dtype=np.uint8)
    padded[:, :c] = rows
    return np.packbits(padded, axis=1, bitorder="little").view("<u8").reshape(r, words)


def unpack(packed: np.ndarray, ncols: int) -> np.ndarray:
    packed = np.ascontiguousarray(packed, dtype="<u8")
    r = packed.shape[0]
    if r == 0:
        return np.zeros((0, ncols), dtype=np.uint8)
    as_bytes = packed.view(np.uint8).reshape(r, -1)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :ncols]


def rref_packed(P: np.ndarray, ncols: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form; returns the nonzero rows and their pivot columns."""
    if P.shape[0] == 0:
        return P.copy(), []
    M = np.unique(P, axis=0)
    M = M[M.any(axis=1)]
    pivots: List[int] = []
    rank = 0
    for col in range(ncols):
        if rank == M.shape[0]:
            break
        w, b = divmod(col, 64)
        bit = np.uint64(1) << np.uint64(b)
        hits = (M[:, w] & bit) != 0
        below = np.flatnonzero(hits[rank:])
        if below.size == 0:
            continue
        p = rank + below[0]
        if p != rank:
            M[[rank, p]] = M[[p, rank]]
            hits[[rank, p]] = hits[[p, rank]]
        hits[rank] = False
        M[hits] ^= M[rank]
        pivots.append(col)
        rank += 1
    return M[:rank].copy(), pivots


def rref(rows: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    rows = np.asarray(rows, dtype=np.uint8)
    red, piv = rref_packed(pack(rows), rows.shape[1])
    return unpack(red, rows.shape[1]), piv


def rank(rows: np.ndarray) -> int:
    return len(rref(rows)[1])
