"""Explicit finite groups given by a Cayley table.

A :class:`GroupTable` always knows ``gen_table[x, k] = x * generators[k]``.
The full ``order x order`` multiplication table is derived lazily from a
breadth-first spanning tree of the Cayley graph: if ``y = p * g`` then column
``y`` equals ``gen_table[column p, g]``, one vectorized gather per element.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import algebra as alg
from .errors import CapExceeded, NotNormal, SizeCap


class GroupTable:
    """Finite group with identity at index 0."""

    def __init__(
        self,
        elements: Sequence,
        generators: Sequence[int],
        gen_table: np.ndarray,
        mul_table: Optional[np.ndarray] = None,
        name: str = "",
    ) -> None:
        self.elements = list(elements)
        self.generators = [int(g) for g in generators]
        self.gen_table = np.asarray(gen_table, dtype=np.int32).reshape(len(self.elements), len(self.generators))
        self._mul = None if mul_table is None else np.asarray(mul_table, dtype=np.int32)
        self.name = name
        self._index: Optional[Dict] = None
        self._spanning_tree()

    # construction ---------------------------------------------------------
    @classmethod
    def from_units(cls, generators: Sequence[alg.AlgebraElement], cap: int = 1 << 20, name: str = "") -> "GroupTable":
        """Closure of units under right multiplication by the generators."""
        if not generators:
            raise ValueError("at least one generator is required")
        spec = generators[0].spec
        identity = alg.one(spec)
        elements = [identity]
        index = {identity.key: 0}
        rows: List[List[int]] = []
        i = 0
        while i < len(elements):
            x = elements[i]
            row = []
            for g in generators:
                y = alg.mul(x, g)
                k = index.get(y.key)
                if k is None:
                    if len(elements) >= cap:
                        raise CapExceeded(f"subgroup closure exceeded {cap} elements")
                    k = len(elements)
                    index[y.key] = k
                    elements.append(y)
                row.append(k)
            rows.append(row)
            i += 1
        gen_idx = [index[g.key] for g in generators]
        table = cls(elements, gen_idx, np.array(rows, dtype=np.int32), name=name)
        table._index = index
        return table

    @classmethod
    def from_mul_table(cls, elements: Sequence, mul_table: np.ndarray, generators: Sequence[int], name: str = "") -> "GroupTable":
        mul_table = np.asarray(mul_table, dtype=np.int32)
        return cls(elements, generators, mul_table[:, list(generators)], mul_table=mul_table, name=name)

    def _spanning_tree(self) -> None:
        n = self.order
        parent = np.full(n, -1, dtype=np.int64)
        via = np.full(n, -1, dtype=np.int64)
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        order = [0]
        head = 0
        gt = self.gen_table
        while head < len(order):
            x = order[head]
            head += 1
            for k in range(gt.shape[1]):
                y = int(gt[x, k])
                if not seen[y]:
                    seen[y] = True
                    parent[y] = x
                    via[y] = k
                    order.append(y)
        if len(order) != n:
            raise ValueError(f"generators reach {len(order)} of {n} elements")
        self.parent = parent
        self.via = via
        self.bfs_order = np.array(order, dtype=np.int64)

    # basic access ----------------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return self.order

    def index_of(self, element) -> int:
        if self._index is None:
            self._index = {_label_key(e): i for i, e in enumerate(self.elements)}
        return self._index[_label_key(element)]

    def __contains__(self, element) -> bool:
        try:
            self.index_of(element)
        except KeyError:
            return False
        return True

    def word(self, x: int) -> List[int]:
        """Generator positions ``k1, k2, ...`` with ``x = g_k1 g_k2 ...``."""
        out = []
        while x:
            out.append(int(self.via[x]))
            x = int(self.parent[x])
        return out[::-1]

    def right_mul_all(self, y: int) -> np.ndarray:
        """Vector ``x * y`` for every ``x``."""
        if self._mul is not None:
            return self._mul[:, y]
        col = np.arange(self.order, dtype=np.int32)
        for k in self.word(y):
            col = self.gen_table[col, k]
        return col

    def mul(self, x: int, y: int) -> int:
        if self._mul is not None:
            return int(self._mul[x, y])
        for k in self.word(y):
            x = int(self.gen_table[x, k])
        return x

    @property
    def has_mul_table(self) -> bool:
        return self._mul is not None

    @property
    def mul_table(self) -> np.ndarray:
        if self._mul is None:
            n = self.order
            dtype = np.int16 if n <= np.iinfo(np.int16).max else np.int32
            M = np.empty((n, n), dtype=dtype)
            M[:, 0] = np.arange(n)
            gt = self.gen_table.astype(dtype)
            for y in self.bfs_order[1:]:
                M[:, y] = gt[M[:, self.parent[y]], self.via[y]]
            self._mul = M
        return self._mul

    def inverse(self, x: int) -> int:
        col = self.right_mul_all(x)
        return int(np.flatnonzero(col == 0)[0])

    @property
    def inverses(self) -> np.ndarray:
        M = self.mul_table
        rows, cols = np.nonzero(M == 0)
        inv = np.empty(self.order, dtype=np.int64)
        inv[rows] = cols
        return inv

    def power(self, x: int, k: int) -> int:
        r = 0
        for _ in range(k):
            r = self.mul(r, x)
        return r

    def to_json(self, include_table: bool = True) -> dict:
        doc = {
            "name": self.name,
            "order": self.order,
            "elements": [_label_text(e) for e in self.elements],
            "generators": self.generators,
        }
        if include_table:
            doc["mul_table"] = self.mul_table.ravel().tolist()
        return doc

    def export(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh)


def _label_key(e):
    return e.key if isinstance(e, alg.AlgebraElement) else e


def _label_text(e) -> str:
    return str(e)


# ---------------------------------------------------------------------------
# subgroups and series (need the full table)


def subgroup_closure(table: GroupTable, seeds) -> np.ndarray:
    """Sorted indices of the subgroup generated by ``seeds``."""
    M = table.mul_table
    member = np.zeros(table.order, dtype=bool)
    member[0] = True
    gens: List[int] = []
    for s in np.unique(np.asarray(list(seeds), dtype=np.int64)):
        if member[s]:
            continue
        gens.append(int(s))
        frontier = np.flatnonzero(member)
        g = np.array(gens)
        while frontier.size:
            new = M[frontier][:, g].ravel()
            new = np.unique(new[~member[new]])
            member[new] = True
            frontier = new
    return np.flatnonzero(member)


def commutators(table: GroupTable, H, K) -> np.ndarray:
    """Distinct values ``h^-1 k^-1 h k``."""
    M = table.mul_table
    inv = table.inverses
    H = np.asarray(H)
    K = np.asarray(K)
    left = M[inv[H][:, None], inv[K][None, :]]
    right = M[H[:, None], K[None, :]]
    return np.unique(M[left, right])


def commutator_subgroup(table: GroupTable, H, K) -> np.ndarray:
    return subgroup_closure(table, commutators(table, H, K))


def lower_central_series(table: GroupTable) -> List[np.ndarray]:
    """``[G, gamma_2, gamma_3, ...]`` ending at the trivial group or a fixed point."""
    G = np.arange(table.order)
    series = [G]
    while series[-1].size > 1:
        nxt = commutator_subgroup(table, series[-1], G)
        if nxt.size == series[-1].size:
            break
        series.append(nxt)
    return series


def nilpotency_class(table: GroupTable) -> int:
    series = lower_central_series(table)
    if series[-1].size != 1:
        raise ValueError("group is not nilpotent")
    return len(series) - 1


def element_orders(table: GroupTable) -> np.ndarray:
    M = table.mul_table
    n = table.order
    ar = np.arange(n)
    cur = ar.copy()
    orders = np.zeros(n, dtype=np.int64)
    p = 1
    while True:
        hit = (cur == 0) & (orders == 0)
        orders[hit] = p
        if orders.all():
            return orders
        cur = M[cur, ar]
        p += 1


def exponent(table: GroupTable) -> int:
    return int(np.lcm.reduce(element_orders(table)))


def center(table: GroupTable) -> np.ndarray:
    M = table.mul_table
    g = table.generators
    return np.flatnonzero((M[:, g] == M[g, :].T).all(axis=1))


def is_abelian(table: GroupTable) -> bool:
    return center(table).size == table.order


def is_elementary_abelian(table: GroupTable) -> bool:
    return is_abelian(table) and bool((element_orders(table) <= 2).all())


def derived_subgroup(table: GroupTable) -> np.ndarray:
    G = np.arange(table.order)
    return commutator_subgroup(table, G, G)


def abelianization_type(table: GroupTable) -> tuple:
    """Exponents ``(e1 >= e2 >= ...)`` with ``G/G' = prod C_(2^ei)``; 2-groups only."""
    n = table.order
    if n & (n - 1):
        raise ValueError("abelianization_type expects a 2-group")
    M = table.mul_table
    D = np.zeros(n, dtype=bool)
    D[derived_subgroup(table)] = True
    quotient_order = n // int(D.sum())
    counts = [1]
    cur = np.arange(n)
    while counts[-1] < quotient_order:
        cur = M[cur, cur]
        counts.append(int(D[cur].sum()) // int(D.sum()))
    # number of cyclic factors of order >= 2^k
    at_least = [int(np.log2(counts[k] // counts[k - 1])) for k in range(1, len(counts))]
    exps = []
    for k, c in enumerate(at_least, start=1):
        nxt = at_least[k] if k < len(at_least) else 0
        exps += [k] * (c - nxt)
    return tuple(sorted(exps, reverse=True))


def fingerprint(table: GroupTable) -> dict:
    orders = element_orders(table)
    series = lower_central_series(table)
    return {
        "order": table.order,
        "exponent": int(np.lcm.reduce(orders)),
        "class": len(series) - 1 if series[-1].size == 1 else None,
        "lower_central_orders": [int(s.size) for s in series],
        "derived_order": int(series[1].size) if len(series) > 1 else 1,
        "abelianization": list(abelianization_type(table)),
        "center_order": int(center(table).size),
        "order_statistics": {int(k): int(v) for k, v in sorted(Counter(orders.tolist()).items())},
    }


# ---------------------------------------------------------------------------
# quotients


@dataclass
class CosetTable:
    """``parent / N`` with ``N`` the normal closure check of ``normal_generators``."""

    parent: GroupTable
    normal_generators: List[int]
    normal_subgroup: np.ndarray
    coset_of: np.ndarray
    representatives: np.ndarray
    quotient: GroupTable

    @property
    def order(self) -> int:
        return self.quotient.order

    def image(self, x: int) -> int:
        return int(self.coset_of[x])

    def check_generator_products(self) -> bool:
        """``coset(x g) = coset(x) * g`` for every element ``x`` and generator ``g``."""
        lhs = self.coset_of[self.parent.gen_table]
        rhs = self.quotient.gen_table[self.coset_of]
        return bool((lhs == rhs).all())

    def check_all_products(self) -> bool:
        """Coset products are independent of representatives, over all pairs.

        Works one column ``x -> x y`` at a time, so the parent table is never
        materialized unless it already exists.
        """
        Q = self.quotient.mul_table
        c = self.coset_of
        for y in range(self.parent.order):
            if not (c[self.parent.right_mul_all(y)] == Q[c, c[y]]).all():
                return False
        return True


def _closure_by_words(table: GroupTable, gens: Sequence[int]) -> List[int]:
    found = {0}
    queue = [0]
    while queue:
        x = queue.pop()
        for g in gens:
            y = table.mul(x, g)
            if y not in found:
                found.add(y)
                queue.append(y)
    return sorted(found)


def is_normal(table: GroupTable, subgroup: Sequence[int]) -> bool:
    members = set(int(x) for x in subgroup)
    for g in table.generators:
        g_inv = table.inverse(g)
        for x in members:
            if table.mul(table.mul(g_inv, x), g) not in members:
                return False
    return True


EXHAUSTIVE_LIMIT = 1 << 13


def quotient(table: GroupTable, normal_generators: Sequence[int], exhaustive_limit: int = EXHAUSTIVE_LIMIT) -> CosetTable:
    """Left cosets ``xN`` with minimal-index representatives; normality is verified first."""
    N = _closure_by_words(table, normal_generators)
    if not is_normal(table, N):
        raise NotNormal("subgroup is not normal in the parent group")
    n = table.order
    rep = np.arange(n, dtype=np.int64)
    for y in N:
        rep = np.minimum(rep, table.right_mul_all(y))
    reps, coset_of = np.unique(rep, return_inverse=True)
    coset_of = coset_of.astype(np.int64)
    qgen = coset_of[table.gen_table[reps]]
    q = GroupTable(
        [int(r) for r in reps],
        [int(c) for c in coset_of[table.generators]],
        qgen,
        name=f"{table.name}/N" if table.name else "",
    )
    ct = CosetTable(table, [int(g) for g in normal_generators], np.array(N), coset_of, reps, q)
    if not ct.check_generator_products():
        raise NotNormal("coset multiplication is not well defined")
    if n <= exhaustive_limit and not ct.check_all_products():
        raise NotNormal("coset multiplication is not well defined")
    return ct


# ---------------------------------------------------------------------------
# isomorphism


EXPLICIT_LIMIT = 512


def minimal_generating_set(table: GroupTable) -> List[int]:
    """Generators lifted from a basis of ``G / Phi(G)``; minimal for 2-groups."""
    M = table.mul_table
    ar = np.arange(table.order)
    frattini = subgroup_closure(table, np.concatenate([M[ar, ar], commutators(table, ar, ar)]))
    orders = element_orders(table)
    candidates = sorted(range(table.order), key=lambda x: (-orders[x], x))
    gens: List[int] = []
    member = np.zeros(table.order, dtype=bool)
    member[subgroup_closure(table, frattini)] = True
    for x in candidates:
        if member[x]:
            continue
        gens.append(x)
        member[:] = False
        member[subgroup_closure(table, list(frattini) + gens)] = True
        if member.all():
            break
    return gens


def _extend(M1, M2, gens, images, n) -> Optional[np.ndarray]:
    phi = np.full(n, -1, dtype=np.int64)
    used = np.zeros(M2.shape[0], dtype=bool)
    phi[0] = 0
    used[0] = True
    queue = [0]
    while queue:
        x = queue.pop()
        px = phi[x]
        for g, h in zip(gens, images):
            y = M1[x, g]
            img = M2[px, h]
            if phi[y] < 0:
                if used[img]:
                    return None
                phi[y] = img
                used[img] = True
                queue.append(y)
            elif phi[y] != img:
                return None
    return phi


def find_isomorphism(t1: GroupTable, t2: GroupTable) -> Optional[List[int]]:
    """Backtracking over images of a minimal generating set; returns ``phi`` as a list or ``None``."""
    if t1.order != t2.order:
        return None
    if t1.order > EXPLICIT_LIMIT:
        raise SizeCap(f"explicit isomorphism search is limited to order {EXPLICIT_LIMIT}")
    M1, M2 = t1.mul_table, t2.mul_table
    o1, o2 = element_orders(t1), element_orders(t2)
    c1 = (M1 == M1.T).sum(axis=1)
    c2 = (M2 == M2.T).sum(axis=1)
    gens = minimal_generating_set(t1)
    cands = [[y for y in range(t2.order) if o2[y] == o1[g] and c2[y] == c1[g]] for g in gens]
    n = t1.order

    def search(i, images):
        if i == len(gens):
            phi = _extend(M1, M2, gens, images, n)
            if phi is not None and (phi >= 0).all():
                return phi
            return None
        for y in cands[i]:
            if _extend(M1, M2, gens[: i + 1], images + [y], n) is None:
                continue
            found = search(i + 1, images + [y])
            if found is not None:
                return found
        return None

    if M1.shape == M2.shape and np.array_equal(M1, M2):
        return list(range(n))
    phi = search(0, [])
    if phi is None:
        return None
    if not (M2[phi[:, None], phi[None, :]] == phi[M1]).all():
        return None
    return phi.tolist()


def isomorphic(t1: GroupTable, t2: GroupTable, mode: str = "explicit") -> bool:
    if mode == "invariants":
        return fingerprint(t1) == fingerprint(t2)
    if mode == "explicit":
        if fingerprint(t1) != fingerprint(t2):
            return False
        return find_isomorphism(t1, t2) is not None
    raise ValueError(f"unknown mode {mode!r}")
