"""Witness subgroups of U(KG) and their quotients isomorphic to C2 wr G'."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from . import algebra as alg
from . import tables, units
from .errors import SizeCap, WrongFamily
from .groups import GroupSpec
from .tables import CosetTable, GroupTable

WREATH_CAP = 1 << 12


@dataclass(frozen=True)
class WreathSpec:
    """``C2 wr C_(2^m)``: base ``(C2)^(2^m)`` permuted cyclically."""

    m: int

    @property
    def base_rank(self) -> int:
        return 1 << self.m

    @property
    def order(self) -> int:
        return (1 << self.base_rank) * self.base_rank

    @property
    def expected_class(self) -> int:
        # class of C_p wr H equals the nilpotency index of Delta(KH), which is |H| for cyclic 2-groups
        return self.base_rank


def build_wreath(m: int, cap: int = WREATH_CAP) -> GroupTable:
    """Elements ``(v, s)`` indexed ``s * 2^B + v``; ``(v,s)(w,t) = (v + shift^s(w), s + t)``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    ws = WreathSpec(m)
    if ws.order > cap:
        raise SizeCap(f"C2 wr C{ws.base_rank} has {ws.order} elements, cap is {cap}")
    B = ws.base_rank
    V = 1 << B
    vs = np.arange(V)
    shifted = np.empty((B, V), dtype=np.int64)
    for s in range(B):
        shifted[s] = ((vs << s) | (vs >> (B - s))) & (V - 1) if s else vs
    idx = np.arange(ws.order)
    s_of, v_of = np.divmod(idx, V)
    v = v_of[:, None] ^ shifted[s_of[:, None], v_of[None, :]]
    s = (s_of[:, None] + s_of[None, :]) % B
    M = (s * V + v).astype(np.int32)
    labels = [(int(v_), int(s_)) for s_, v_ in zip(s_of, v_of)]
    # generators: the first base coordinate and the shift
    return GroupTable.from_mul_table(labels, M, [1, V], name=f"C2wrC{B}")


# ---------------------------------------------------------------------------
# sections inside U(KG)


def tower_generators(spec: GroupSpec) -> List[alg.AlgebraElement]:
    """``b, b^A, ..., b^(A^(K-1))`` with ``K = 2^(n-2)``."""
    return units.iterated_tower(spec, spec.a_order // 2 - 1)


@dataclass
class Section:
    spec: GroupSpec
    F: GroupTable
    cosets: CosetTable
    A_index: int
    A_power_index: int

    @property
    def quotient(self) -> GroupTable:
        return self.cosets.quotient

    @property
    def expected_order(self) -> int:
        K = self.spec.a_order // 2
        return (1 << K) * K


def construct_section_ds(spec: GroupSpec, cap: int = 1 << 20) -> Section:
    """``F = <b, b^A, ..., A>`` and its quotient by ``<A^(2^(n-2))>``."""
    if spec.is_quaternion:
        raise WrongFamily("use construct_section_q for quaternion groups")
    return _section(spec, quaternion=False, cap=cap)


def construct_section_q(spec: GroupSpec, cap: int = 1 << 20) -> Section:
    """``F1 = <b, b^A, ..., A>`` and ``F2 = F1 / <b^2><A^(2^(n-2))>``."""
    if not spec.is_quaternion:
        raise WrongFamily("construct_section_q needs a quaternion spec")
    return _section(spec, quaternion=True, cap=cap)


def construct_section(spec: GroupSpec, cap: int = 1 << 20) -> Section:
    return _section(spec, quaternion=spec.is_quaternion, cap=cap)


def _section(spec: GroupSpec, quaternion: bool, cap: int) -> Section:
    K = spec.a_order // 2
    A = units.standard_A(spec)
    gens = tower_generators(spec) + [A]
    F = GroupTable.from_units(gens, cap=cap, name=f"F({spec.name})")
    A_K = A ** K
    normal = [F.index_of(A_K)]
    if quaternion:
        b = alg.b_element(spec)
        normal.append(F.index_of(b * b))
    cosets = tables.quotient(F, normal)
    return Section(spec, F, cosets, F.index_of(A), F.index_of(A_K))


def witness_commutator(spec: GroupSpec) -> alg.AlgebraElement:
    """``(b, (2^(n-2) - 1).A)``."""
    K = spec.a_order // 2
    return units.repeated_commutator(alg.b_element(spec), units.standard_A(spec), K - 1)


def witness_is_nontrivial(section: Section) -> bool:
    w = witness_commutator(section.spec)
    return section.cosets.image(section.F.index_of(w)) != 0


def normal_subgroup_elements(spec: GroupSpec) -> List[alg.AlgebraElement]:
    """``<b^2><A^(2^(n-2))>`` for Q, ``<A^(2^(n-2))>`` otherwise, computed in U(KG)."""
    K = spec.a_order // 2
    A_K = units.standard_A(spec) ** K
    gens = [A_K]
    if spec.is_quaternion:
        b = alg.b_element(spec)
        gens.append(b * b)
    return list(GroupTable.from_units(gens).elements)


def nonmembership(spec: GroupSpec) -> bool:
    """True when ``(b A^-1)^(2^(n-2))`` lies outside ``<b^2><A^(2^(n-2))>``."""
    K = spec.a_order // 2
    x = (alg.b_element(spec) * units.standard_A(spec).inverse()) ** K
    return x not in set(normal_subgroup_elements(spec))


def telescope_terms(spec: GroupSpec) -> dict:
    """The three sides of the telescope chain for ``A`` and ``K = 2^(n-2)``.

    ``commutator``: ``(b, A, A^2, ..., A^(K/2))``
    ``product``:    ``b b^A b^(A^2) ... b^(A^(K-1))``
    ``power``:      ``(b A^-1)^K A^K``
    """
    K = spec.a_order // 2
    A = units.standard_A(spec)
    b = alg.b_element(spec)
    ws = [A ** (1 << i) for i in range(spec.n - 2)]
    commutator = units.iterated_commutator(b, ws)
    product = alg.one(spec)
    for t in units.iterated_tower(spec, K - 1):
        product = product * t
    power = (b * A.inverse()) ** K * A ** K
    return {"commutator": commutator, "product": product, "power": power}


def telescope_identity_check(spec: GroupSpec) -> bool:
    """Both equalities of the chain, the first one modulo ``<b^2>``.

    In Q, ``(b, A) = b^-1 b^A = b^2 . b b^A``; the central factor ``b^2`` dies
    in the quotient by ``<b^2><A^(2^(n-2))>``.
    """
    t = telescope_terms(spec)
    if t["product"] != t["power"]:
        return False
    b = alg.b_element(spec)
    return t["commutator"] in (t["product"], b * b * t["product"])


def certificate(section: Section, wreath: Optional[GroupTable] = None, explicit: bool = False) -> dict:
    q = section.quotient
    doc = {
        "group": section.spec.name,
        "family": section.spec.family.value,
        "n": section.spec.n,
        "generators": [str(e) for e in (tower_generators(section.spec) + [units.standard_A(section.spec)])],
        "F_order": section.F.order,
        "normal_subgroup": [str(section.F.elements[i]) for i in section.cosets.normal_subgroup],
        "section_order": q.order,
        "expected_order": section.expected_order,
        "class": tables.nilpotency_class(q),
    }
    if wreath is not None:
        doc["wreath"] = wreath.name
        doc["fingerprint_match"] = tables.fingerprint(q) == tables.fingerprint(wreath)
        if explicit:
            phi = tables.find_isomorphism(q, wreath)
            doc["isomorphism"] = phi
    return doc
