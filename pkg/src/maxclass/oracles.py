"""Brute-force reference computations.

Everything here works on the flat basis of group elements and multiplies
through :func:`maxclass.groups.g_mul` only, never through the component
formulas, so it can serve as an independent check of them.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, List, Optional

import numpy as np

from . import algebra as alg
from .algebra import AlgebraElement
from .groups import GroupSpec, g_mul


@lru_cache(maxsize=None)
def group_index_table(spec: GroupSpec) -> np.ndarray:
    """``T[g, h] = index(g h)`` over :meth:`GroupSpec.elements` order."""
    elems = spec.elements()
    T = np.empty((len(elems), len(elems)), dtype=np.int64)
    for gi, g in enumerate(elems):
        for hi, h in enumerate(elems):
            T[gi, hi] = spec.index(g_mul(spec, g, h))
    return T


def to_rows(xs: Iterable[AlgebraElement], D: int) -> np.ndarray:
    keys = [x.key for x in xs]
    if D <= 64:
        arr = np.array(keys, dtype=np.uint64).reshape(-1, 1)
        return ((arr >> np.arange(D, dtype=np.uint64)) & np.uint64(1)).astype(np.uint8)
    out = np.zeros((len(keys), D), dtype=np.uint8)
    for r, key in enumerate(keys):
        for k in range(D):
            if key >> k & 1:
                out[r, k] = 1
    return out


def from_rows(spec: GroupSpec, rows: np.ndarray) -> List[AlgebraElement]:
    weights = [1 << k for k in range(spec.order)]
    out = []
    for row in rows:
        key = 0
        for k in np.flatnonzero(row):
            key |= weights[k]
        out.append(alg.from_key(spec, key))
    return out


def naive_products(spec: GroupSpec, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Row-wise products of flat 0/1 vectors by convolution over the group table."""
    T = group_index_table(spec)
    X = np.asarray(X, dtype=np.uint8)
    Y = np.asarray(Y, dtype=np.uint8)
    out = np.zeros_like(Y)
    for g in range(spec.order):
        # row g of T is a permutation, so the scatter has no collisions
        out[:, T[g]] ^= X[:, g, None] & Y
    return out


def naive_mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    spec = x.spec
    key = 0
    for g in alg.supp(x):
        for h in alg.supp(y):
            key ^= 1 << spec.index(g_mul(spec, g, h))
    return alg.from_key(spec, key)


def brute_inverse(f: AlgebraElement) -> Optional[AlgebraElement]:
    """Search all augmentation-1 elements for a two-sided inverse (n = 3 or 4 only)."""
    spec = f.spec
    one = alg.one(spec)
    for g in alg.all_units(spec):
        if naive_mul(f, g) == one and naive_mul(g, f) == one:
            return g
    return None


def naive_bracket(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return naive_mul(x, y) + naive_mul(y, x)


def literal_metabelian_scan(spec: GroupSpec) -> int:
    """Count 5-tuples of group elements with ``[[[x,y],[z,w]],v] != 0``; no memoization."""
    mons = [alg.monomial(spec, g) for g in spec.elements()]
    pairs = [naive_bracket(x, y) for x in mons for y in mons]
    bad = 0
    for p in pairs:
        for q in pairs:
            r = naive_bracket(p, q)
            for v in mons:
                if naive_bracket(r, v):
                    bad += 1
    return bad


def _span_dim(vectors: Iterable[int]) -> List[int]:
    pivots = {}
    for v in vectors:
        while v:
            p = v.bit_length() - 1
            if p not in pivots:
                pivots[p] = v
                break
            v ^= pivots[p]
    return list(pivots.values())


def literal_lower_lie_dim(spec: GroupSpec, m: int) -> int:
    """``dim KG^[m]`` from every length-``m`` monomial bracket, closed under monomial multiplication."""
    mons = [alg.monomial(spec, g) for g in spec.elements()]
    gens = []
    for tup in itertools.product(mons, repeat=m):
        x = tup[0]
        for y in tup[1:]:
            x = naive_bracket(x, y)
        if x:
            gens.append(x.key)
    basis = _span_dim(gens)
    while True:
        elems = [alg.from_key(spec, k) for k in basis]
        more = [naive_mul(g, x).key for g in mons for x in elems] + [naive_mul(x, g).key for g in mons for x in elems]
        new = _span_dim(basis + more)
        if len(new) == len(basis):
            return len(basis)
        basis = new
