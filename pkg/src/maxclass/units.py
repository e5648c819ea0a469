"""Normalized units of KG: H(KG), norms, conjugation closed forms, towers b^(A^k)."""

from __future__ import annotations

from typing import Iterable, List, Sequence

from . import algebra as alg
from .algebra import AlgebraElement, CyclicAlgebraElement, cbar, cmul, cpow
from .errors import CapExceeded, NotAUnit, NotInH, NotSelfConjugated, OutOfRange, WrongFamily
from .groups import Family, GroupSpec

# A unit is an AlgebraElement of augmentation 1; no separate wrapper type.
Unit = AlgebraElement


def require_unit(u: AlgebraElement) -> AlgebraElement:
    if not alg.augmentation(u):
        raise NotAUnit(f"{u} has augmentation 0")
    return u


def _require_ds(spec: GroupSpec) -> None:
    if spec.family is Family.QUATERNION:
        raise WrongFamily("H(KG) and the tower b^(A^k) = 1 + R^k + R^k b are for D and S only")


def _require_q(spec: GroupSpec) -> None:
    if spec.family is not Family.QUATERNION:
        raise WrongFamily("quaternion spec required")


# ---------------------------------------------------------------------------
# H(KG) and psi


def in_H(u: AlgebraElement) -> bool:
    """``u = h1 + h2 b`` with ``h1 + h2 = 1``."""
    _require_ds(u.spec)
    return (u.x1 ^ u.x2) == 1


def h_elements(spec: GroupSpec) -> List[AlgebraElement]:
    """All of H(KG): ``h1`` is free and ``h2 = 1 + h1``; always augmentation 1."""
    _require_ds(spec)
    return [AlgebraElement(spec, h1, h1 ^ 1) for h1 in range(1 << spec.a_order)]


def psi(h: AlgebraElement) -> CyclicAlgebraElement:
    """Norm restricted to H(KG), computed as ``1 + h1 + bar(h1)``."""
    if not in_H(h):
        raise NotInH(str(h))
    return CyclicAlgebraElement(h.spec, 1 ^ h.x1 ^ cbar(h.spec, h.x1))


# ---------------------------------------------------------------------------
# conjugation


def conj_by(h: AlgebraElement, f: AlgebraElement) -> AlgebraElement:
    """``f^-1 h f`` for self-conjugated ``h`` via the closed form

    ``t1 = h1 + h2 (f1 f2 + bar(f1) bar(f2)) alpha R^-1``,
    ``t2 = h2 (bar(f1)^2 + f2^2 alpha) R^-1``, ``R = norm(f)``.
    """
    if alg.bar(h) != h:
        raise NotSelfConjugated(str(h))
    require_unit(f)
    spec = h.spec
    N = spec.a_order
    r_inv = cpow(alg.norm(f).coeffs, N - 1, N)
    f1b = cbar(spec, f.x1)
    f2b = cbar(spec, f.x2)
    cross = alg._alpha(spec, cmul(f.x1, f.x2, N) ^ cmul(f1b, f2b, N))
    sq = cmul(f1b, f1b, N) ^ alg._alpha(spec, cmul(f.x2, f.x2, N))
    t1 = h.x1 ^ cmul(cmul(h.x2, cross, N), r_inv, N)
    t2 = cmul(cmul(h.x2, sq, N), r_inv, N)
    return AlgebraElement(spec, t1, t2)


def conj_direct(h: AlgebraElement, f: AlgebraElement) -> AlgebraElement:
    """``f^-1 h f`` by inversion and two multiplications; no preconditions on ``h``."""
    return alg.mul(alg.mul(alg.invert_unit(f), h), f)


# ---------------------------------------------------------------------------
# orders, commutators


def order_of_unit(u: AlgebraElement, cap: int | None = None) -> int:
    """Least ``2^m`` with ``u^(2^m) = 1``."""
    require_unit(u)
    if cap is None:
        cap = u.spec.order
    identity = alg.one(u.spec)
    order, x = 1, u
    while x != identity:
        if order >= cap:
            raise CapExceeded(f"order of {u} exceeds {cap} (or is not a power of 2)")
        x = alg.mul(x, x)
        order <<= 1
    return order


def group_commutator(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """``(x, y) = x^-1 y^-1 x y``."""
    xi = alg.invert_unit(x)
    yi = alg.invert_unit(y)
    return alg.mul(alg.mul(xi, yi), alg.mul(x, y))


def iterated_commutator(x: AlgebraElement, ws: Iterable[AlgebraElement]) -> AlgebraElement:
    """Left-normed ``(x, w1, w2, ...)``."""
    for w in ws:
        x = group_commutator(x, w)
    return x


def repeated_commutator(x: AlgebraElement, A: AlgebraElement, k: int) -> AlgebraElement:
    """``(x, k.A) = (x, A, ..., A)`` with ``k`` copies of ``A``."""
    return iterated_commutator(x, [A] * k)


# ---------------------------------------------------------------------------
# the witness unit A and its towers


def standard_A(spec: GroupSpec) -> AlgebraElement:
    """``a + (1+a) b`` for D, S and ``a^(2^(n-3)+1) + (1+a) b`` for Q."""
    if spec.is_quaternion:
        return AlgebraElement(spec, 1 << (spec.a_order // 4 + 1), 0b11)
    return AlgebraElement(spec, 0b10, 0b11)


def tower_R(spec: GroupSpec) -> CyclicAlgebraElement:
    """``R = norm(A)``: ``1 + a + bar(a)`` (D, S), ``1 + a^(N/2+1) + a^(N/2-1)`` (Q)."""
    if spec.is_quaternion:
        half = spec.a_order // 2
        return alg.cyclic(spec, [0, half + 1, half - 1])
    return alg.cyclic(spec, [0, 1, spec.twist])


def quaternion_beta(spec: GroupSpec) -> CyclicAlgebraElement:
    """``a^(q+1) + a^-(q+1) + a^(q+2) + a^-(q+2)`` with ``q = 2^(n-3)``."""
    _require_q(spec)
    q = spec.a_order // 4
    return alg.cyclic(spec, [q + 1, -(q + 1), q + 2, -(q + 2)])


def _check_k(spec: GroupSpec, k: int) -> None:
    if not 1 <= k <= spec.a_order // 2:
        raise OutOfRange(f"k must lie in 1..{spec.a_order // 2}, got {k}")


def b_tower_ds(spec: GroupSpec, k: int) -> AlgebraElement:
    """``b^(A^k) = 1 + R^k + R^k b``."""
    _require_ds(spec)
    _check_k(spec, k)
    rk = tower_R(spec) ** k
    return AlgebraElement(spec, 1 ^ rk.coeffs, rk.coeffs)


def b_tower_q(spec: GroupSpec, k: int) -> AlgebraElement:
    """``b^(A^k) = beta sum_{i=-1}^{k-2} (b^2 R)^i + (b^2 R)^k b``.

    The first component of ``b^A`` is ``beta b^2 R^-1`` and each further
    conjugation by ``A`` adds ``beta (b^2 R)^(k-1)``, hence the upper limit
    ``k - 2``.
    """
    _require_q(spec)
    _check_k(spec, k)
    alpha = alg.cyclic(spec, [spec.alpha_exponent])
    q = alpha * tower_R(spec)
    q_inv = q.inverse()
    total = q_inv
    power = alg.cyclic(spec, [0])
    for _ in range(k - 1):
        total = total + power
        power = power * q
    power = power * q
    first = quaternion_beta(spec) * total
    return AlgebraElement(spec, first.coeffs, power.coeffs)


def b_tower(spec: GroupSpec, k: int) -> AlgebraElement:
    return b_tower_q(spec, k) if spec.is_quaternion else b_tower_ds(spec, k)


def iterated_tower(spec: GroupSpec, k: int) -> List[AlgebraElement]:
    """``[b, b^A, ..., b^(A^k)]`` by ``k`` applications of :func:`conj_by`."""
    A = standard_A(spec)
    out = [alg.b_element(spec)]
    for _ in range(k):
        out.append(conj_by(out[-1], A))
    return out


def generate_subgroup(generators: Sequence[AlgebraElement], cap: int = 1 << 20):
    """Breadth-first closure of units; see :class:`maxclass.tables.GroupTable`."""
    from .tables import GroupTable

    for g in generators:
        require_unit(g)
    return GroupTable.from_units(generators, cap=cap)


# ---------------------------------------------------------------------------
# structural properties of H(KG) and of the towers


def kernel_centralizer_mismatch(hs: Iterable[AlgebraElement]) -> AlgebraElement | None:
    """First ``h`` with ``psi(h) = 1`` disagreeing with ``h b = b h``."""
    for h in hs:
        b = alg.b_element(h.spec)
        if (psi(h).coeffs == 1) != (alg.mul(h, b) == alg.mul(b, h)):
            return h
    return None


def centralizer_of_b(hs: Iterable[AlgebraElement]) -> List[AlgebraElement]:
    return [h for h in hs if psi(h).coeffs == 1]


def direct_decomposition_counterexample(spec: GroupSpec) -> tuple | None:
    """Exponent vector ``(i0, ..., i_(K-1))`` whose product of ``(b^(A^m))^(i_m)`` is trivial.

    Also rejects products equal to ``b`` when ``i0 = 0``.  The ``2^K - 1`` nonzero
    vectors are visited in Gray-code order, one multiplication per step.
    """
    _require_ds(spec)
    K = spec.a_order // 2
    tower = iterated_tower(spec, K - 1)
    identity = alg.one(spec)
    b = alg.b_element(spec)
    prod = identity
    vec = 0
    for step in range(1, 1 << K):
        m = (step & -step).bit_length() - 1
        vec ^= 1 << m
        prod = alg.mul(prod, tower[m])
        if prod == identity or (not vec & 1 and prod == b):
            return tuple((vec >> i) & 1 for i in range(K))
    return None


def tower_commutation_failures(spec: GroupSpec) -> List[tuple]:
    """Pairs ``(i, j)`` with ``b^(A^i) b^(A^j) != b^(A^j) b^(A^i)`` for ``i, j <= 2^(n-2)``."""
    tower = iterated_tower(spec, spec.a_order // 2)
    bad = []
    for i, x in enumerate(tower):
        for j in range(i + 1, len(tower)):
            y = tower[j]
            if alg.mul(x, y) != alg.mul(y, x):
                bad.append((i, j))
    return bad


def collapse_identity_failures(spec: GroupSpec, k_max: int | None = None) -> List[tuple]:
    """``(b, k.A, A^(2^m)) = (b, (k + 2^m).A)`` and ``(b, A^(2^m)) = (b, 2^m.A)``.

    Checked for ``0 <= k <= k_max`` (default ``2^(n-2)``) and ``0 <= m <= n-2``.
    """
    K = spec.a_order // 2
    k_max = K if k_max is None else k_max
    A = standard_A(spec)
    b = alg.b_element(spec)
    chain = [b]
    for _ in range(k_max + 2 * K):
        chain.append(group_commutator(chain[-1], A))
    bad = []
    for m in range(spec.n - 1):
        A2m = A ** (1 << m)
        for k in range(k_max + 1):
            if group_commutator(chain[k], A2m) != chain[k + (1 << m)]:
                bad.append((k, m))
    return bad


def quaternion_tower_intersections(spec: GroupSpec) -> dict:
    """Pairwise intersections of the cyclic groups ``<b^(A^i)>``, ``0 <= i < 2^(n-2)``."""
    _require_q(spec)
    tower = iterated_tower(spec, spec.a_order // 2 - 1)
    cyclic = []
    for t in tower:
        elems = {alg.one(spec).key}
        x = t
        while x.key not in elems:
            elems.add(x.key)
            x = alg.mul(x, t)
        cyclic.append(elems)
    b = alg.b_element(spec)
    expected = {alg.one(spec).key, alg.mul(b, b).key}
    result = {}
    for i in range(len(cyclic)):
        for j in range(i + 1, len(cyclic)):
            result[(i, j)] = cyclic[i] & cyclic[j] == expected
    return result


def involution_failures(spec: GroupSpec) -> List[int]:
    """``k`` violating ``(b^(A^k))^2 = 1`` (D, S) or ``(b, k.A)^2 = 1`` (Q, ``k >= 1``)."""
    K = spec.a_order // 2
    identity = alg.one(spec)
    if not spec.is_quaternion:
        return [k for k, t in enumerate(iterated_tower(spec, K)) if alg.mul(t, t) != identity]
    A = standard_A(spec)
    x = alg.b_element(spec)
    bad = []
    for k in range(1, K + 1):
        x = group_commutator(x, A)
        if alg.mul(x, x) != identity:
            bad.append(k)
    return bad
