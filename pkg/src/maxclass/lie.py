"""Lie powers of KG, Lie nilpotency indices and related structural checks.

Subspaces of KG are 0/1 matrices over the flat basis ``a^i b^j -> j*N + i``.
Multiplying by a group element permutes that basis, so left and right
multiples of a whole subspace are single fancy-indexing operations.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import algebra as alg
from . import gf2, tables, units
from .algebra import AlgebraElement
from .groups import GroupElement, GroupSpec, g_inv, g_mul
from .report import Entry, entry


@lru_cache(maxsize=None)
def _gathers(spec: GroupSpec) -> Tuple[np.ndarray, np.ndarray]:
    """``left[g, k] = index(g^-1 k)`` and ``right[g, k] = index(k g^-1)``.

    For a row vector ``u``: ``u[left[g]]`` is ``g u`` and ``u[right[g]]`` is ``u g``.
    """
    elems = spec.elements()
    D = len(elems)
    left = np.empty((D, D), dtype=np.int64)
    right = np.empty((D, D), dtype=np.int64)
    for gi, g in enumerate(elems):
        gv = g_inv(spec, g)
        for ki, k in enumerate(elems):
            left[gi, ki] = spec.index(g_mul(spec, gv, k))
            right[gi, ki] = spec.index(g_mul(spec, k, gv))
    return left, right


def _to_row(x: AlgebraElement) -> np.ndarray:
    D = x.spec.order
    key = x.key
    return np.array([(key >> k) & 1 for k in range(D)], dtype=np.uint8)


def _from_row(spec: GroupSpec, row: np.ndarray) -> AlgebraElement:
    key = 0
    for k in np.flatnonzero(row):
        key |= 1 << int(k)
    return alg.from_key(spec, key)


class Subspace:
    """GF(2)-subspace of KG kept in reduced row echelon form."""

    def __init__(self, spec: GroupSpec, rows: np.ndarray) -> None:
        self.spec = spec
        rows = np.asarray(rows, dtype=np.uint8).reshape(-1, spec.order)
        self.matrix, self.pivots = gf2.rref(rows)

    @classmethod
    def span(cls, spec: GroupSpec, elements: Iterable[AlgebraElement]) -> "Subspace":
        rows = [_to_row(x) for x in elements]
        return cls(spec, np.array(rows, dtype=np.uint8).reshape(-1, spec.order))

    @classmethod
    def whole(cls, spec: GroupSpec) -> "Subspace":
        return cls(spec, np.eye(spec.order, dtype=np.uint8))

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def basis(self) -> List[AlgebraElement]:
        return [_from_row(self.spec, r) for r in self.matrix]

    def is_zero(self) -> bool:
        return self.dimension == 0

    def contains(self, x: AlgebraElement) -> bool:
        stacked = np.vstack([self.matrix, _to_row(x)[None, :]])
        return gf2.rank(stacked) == self.dimension

    def __contains__(self, x: AlgebraElement) -> bool:
        return self.contains(x)

    def issubset(self, other: "Subspace") -> bool:
        if self.dimension == 0:
            return True
        return gf2.rank(np.vstack([other.matrix, self.matrix])) == other.dimension

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.spec == other.spec and np.array_equal(self.matrix, other.matrix)

    def __repr__(self) -> str:
        return f"Subspace({self.spec.name}, dim={self.dimension})"


# ---------------------------------------------------------------------------
# brackets and ideals


def lie_bracket(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """``[x, y] = xy + yx`` (characteristic two)."""
    return alg.mul(x, y) + alg.mul(y, x)


def left_normed(xs: Sequence[AlgebraElement]) -> AlgebraElement:
    out = xs[0]
    for x in xs[1:]:
        out = lie_bracket(out, x)
    return out


def _bracket_rows(spec: GroupSpec, M: np.ndarray) -> np.ndarray:
    """Rows ``[u, g]`` for every row ``u`` of ``M`` and every group element ``g``."""
    left, right = _gathers(spec)
    return (M[:, right] ^ M[:, left]).reshape(-1, spec.order)


def bracket_with_algebra(V: Subspace) -> Subspace:
    """``span [V, KG]``; group elements span KG, so brackets with them suffice."""
    return Subspace(V.spec, _bracket_rows(V.spec, V.matrix))


def ideal_closure(V: Subspace) -> Subspace:
    """Two-sided ideal generated by ``V``: first ``KG V``, then ``(KG V) KG``."""
    spec = V.spec
    left, right = _gathers(spec)
    L = Subspace(spec, V.matrix[:, left].reshape(-1, spec.order))
    return Subspace(spec, L.matrix[:, right].reshape(-1, spec.order))


@lru_cache(maxsize=None)
def lie_span_series(spec: GroupSpec) -> Tuple[Subspace, ...]:
    """``L_1 = KG``, ``L_m = span of left-normed brackets of length m`` until zero."""
    series = [Subspace.whole(spec)]
    while not series[-1].is_zero():
        series.append(bracket_with_algebra(series[-1]))
        if len(series) > spec.order + 1:
            raise RuntimeError("Lie series did not terminate")
    return tuple(series)


def lower_lie_power(spec: GroupSpec, m: int) -> Subspace:
    """``KG^[m]``: the ideal generated by all left-normed brackets of length ``m``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    series = lie_span_series(spec)
    if m > len(series):
        return Subspace(spec, np.zeros((0, spec.order), dtype=np.uint8))
    return ideal_closure(series[m - 1])


def t_lower(spec: GroupSpec) -> int:
    """Least ``m`` with ``KG^[m] = 0``, i.e. with no nonzero bracket of length ``m``."""
    return len(lie_span_series(spec))


t_L = t_lower


@lru_cache(maxsize=None)
def upper_lie_series(spec: GroupSpec) -> Tuple[Subspace, ...]:
    """``KG^(1) = KG``, ``KG^(m+1) = ideal generated by [KG^(m), KG]`` until zero."""
    series = [Subspace.whole(spec)]
    while not series[-1].is_zero():
        series.append(ideal_closure(bracket_with_algebra(series[-1])))
        if len(series) > spec.order + 1:
            raise RuntimeError("upper Lie series did not terminate")
    return tuple(series)


def upper_lie_power(spec: GroupSpec, m: int) -> Subspace:
    if m < 1:
        raise ValueError("m must be >= 1")
    series = upper_lie_series(spec)
    if m > len(series):
        return Subspace(spec, np.zeros((0, spec.order), dtype=np.uint8))
    return series[m - 1]


def t_upper(spec: GroupSpec) -> int:
    return len(upper_lie_series(spec))


# ---------------------------------------------------------------------------
# augmentation ideal of a cyclic subgroup


def _int_reduce(pivots: dict, v: int) -> int:
    while v:
        p = v.bit_length() - 1
        r = pivots.get(p)
        if r is None:
            return v
        v ^= r
    return 0


def _int_span(vectors: Iterable[int]) -> List[int]:
    pivots: dict = {}
    for v in vectors:
        v = _int_reduce(pivots, v)
        if v:
            pivots[v.bit_length() - 1] = v
    return list(pivots.values())


def _subgroup_exponents(spec: GroupSpec, subgroup) -> List[int]:
    if isinstance(subgroup, GroupSpec):
        return list(range(0, spec.a_order, 2))
    exps = sorted({g.i for g in subgroup if not g.j})
    if len(exps) != len(list(subgroup)) or 0 not in exps:
        raise ValueError("expected a subgroup of <a>")
    N = spec.a_order
    if any((x + y) % N not in exps for x in exps for y in exps):
        raise ValueError("expected a subgroup of <a>")
    return exps


def augmentation_powers(spec: GroupSpec, subgroup=None) -> List[List[int]]:
    """Bases (as K<a> bit vectors) of ``Delta(H)^k`` for ``k = 1, 2, ...`` until zero."""
    exps = _subgroup_exponents(spec, spec if subgroup is None else subgroup)
    N = spec.a_order
    delta = [1 | (1 << e) for e in exps if e]
    powers = [_int_span(delta)]
    while powers[-1]:
        powers.append(_int_span(alg.cmul(u, v, N) for u in powers[-1] for v in delta))
    return powers


def t_aug(spec_or_spec_and_subgroup, subgroup: Optional[Sequence[GroupElement]] = None) -> int:
    """Nilpotency index of ``Delta(H)``; ``H = G'`` when only a spec is given."""
    spec = spec_or_spec_and_subgroup
    return len(augmentation_powers(spec, subgroup))


def augmentation_series_dims(spec: GroupSpec) -> List[int]:
    """Dimensions of ``Delta(G')^k KG`` for ``k = 1 .. t(G')``."""
    _, right = _gathers(spec)
    dims = []
    for basis in augmentation_powers(spec):
        rows = np.array([_to_row(AlgebraElement(spec, v, 0)) for v in basis], dtype=np.uint8).reshape(-1, spec.order)
        dims.append(Subspace(spec, rows[:, right].reshape(-1, spec.order)).dimension)
    return dims


def index_table(spec: GroupSpec) -> dict:
    tl = t_lower(spec)
    return {
        "family": spec.family.value,
        "n": spec.n,
        "t_L": tl,
        "t_upper": t_upper(spec),
        "t_aug": t_aug(spec),
        "cl_bound": spec.a_order // 2,
        "cl_from_t_L": tl - 1,
    }


# ---------------------------------------------------------------------------
# checks returning report entries


def bracket_power_b_a(spec: GroupSpec, k: int) -> AlgebraElement:
    """``[b, k.a] = [b, a, ..., a]`` computed by brackets."""
    x = alg.b_element(spec)
    a = alg.a_power(spec, 1)
    for _ in range(k):
        x = lie_bracket(x, a)
    return x


def unit_group_class_brute(spec: GroupSpec) -> int:
    """Nilpotency class of U(KG) from its explicit table (n = 3 only)."""
    if spec.n != 3:
        raise ValueError("explicit unit group only for n = 3")
    U = tables.GroupTable.from_units(alg.all_units(spec))
    return tables.nilpotency_class(U)


def verify_theorem2(spec: GroupSpec) -> Entry:
    """``cl U(G) = |G'|`` for quaternion ``G`` via ``t_L = |G'| + 1``."""
    K = spec.a_order // 2
    b = alg.b_element(spec)
    s = alg.a_power(spec, 1) + alg.a_power(spec, -1)
    formula_ok = all(bracket_power_b_a(spec, k) == (s ** k) * b for k in range(1, K))
    top = bracket_power_b_a(spec, K - 1)
    expected_top = alg.a_power(spec, 1) * alg.subgroup_sum(spec, 2) * b
    tl = t_lower(spec)
    witness = {
        "bracket_formula": formula_ok,
        "top_bracket": str(top),
        "top_bracket_expected": str(expected_top),
        "t_L": tl,
        "expected_t_L": K + 1,
    }
    ok = formula_ok and bool(top) and top == expected_top and tl == K + 1
    if spec.n == 3:
        cl = unit_group_class_brute(spec)
        witness["brute_force_class"] = cl
        ok = ok and cl == K
    return entry("theorem2", spec, ok, witness)


def exponent_check(spec: GroupSpec, rng: Optional[random.Random] = None, samples: int = 10_000) -> Entry:
    """Every unit has order dividing ``exp G = 2^(n-1)``."""
    exp_g = spec.a_order
    if spec.n == 3:
        pool = alg.all_units(spec)
        mode = "exhaustive"
    else:
        rng = rng or random.Random(0)
        # a has order exp G, so the sample certifies equality and not just the bound
        pool = [alg.a_power(spec, 1)] + [alg.random_unit(spec, rng) for _ in range(samples)]
        mode = f"random[{samples}] + a"
    max_order = max(units.order_of_unit(u, cap=spec.order) for u in pool)
    bound = 1 + (1 << (spec.n - 2))
    witness = {"mode": mode, "max_order": max_order, "exp_G": exp_g, "upper_index_bound": bound}
    ok = max_order == exp_g
    if spec.n <= 6:
        tu = t_upper(spec)
        witness["t_upper"] = tu
        ok = ok and tu <= bound
    return entry("exponent", spec, ok, witness)


def metabelian_scan(spec: GroupSpec) -> Tuple[int, Optional[tuple]]:
    """``[[[x,y],[z,w]],v]`` over all 5-tuples of group elements, memoized on bracket values.

    Returns the number of tuples covered and a counterexample or ``None``.
    """
    mons = [alg.monomial(spec, g) for g in spec.elements()]
    inner = {}
    for x in mons:
        for y in mons:
            p = lie_bracket(x, y)
            inner.setdefault(p.key, (p, (x, y)))
    outer = {}
    values = list(inner.values())
    for p, pw in values:
        for q, qw in values:
            r = lie_bracket(p, q)
            if r:
                outer.setdefault(r.key, (r, pw + qw))
    for r, wit in outer.values():
        for v in mons:
            if lie_bracket(r, v):
                return len(mons) ** 5, tuple(str(t) for t in wit + (v,))
    return len(mons) ** 5, None


def lie_centrally_metabelian_check(spec: GroupSpec) -> Entry:
    covered, counter = metabelian_scan(spec)
    witness = {"tuples": covered}
    if counter is not None:
        witness["counterexample"] = list(counter)
    return entry("lie_metabelian", spec, counter is None, witness)
