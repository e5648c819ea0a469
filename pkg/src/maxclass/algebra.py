"""The group algebra KG over GF(2) in component form.

An element is stored as ``x = x1 + x2 b`` where ``x1``, ``x2`` lie in the
cyclic subalgebra K<a>.  Elements of K<a> are Python ints used as bit
vectors of width ``N = 2^(n-1)``: bit ``i`` is the coefficient of ``a^i``, so
multiplying by ``a`` is a cyclic rotation.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Sequence, Set

from .errors import InvalidParameter, NotAUnit, SpecMismatch
from .groups import GroupElement, GroupSpec, format_element, parse_element

# ---------------------------------------------------------------------------
# bit-vector kernels for K<a>


def rot(x: int, k: int, N: int) -> int:
    """Multiply ``x`` by ``a^k``."""
    k %= N
    if not k:
        return x
    return ((x << k) | (x >> (N - k))) & ((1 << N) - 1)


def cmul(x: int, y: int, N: int) -> int:
    """Product in K<a> (cyclic convolution mod 2)."""
    if x.bit_count() > y.bit_count():
        x, y = y, x
    mask = (1 << N) - 1
    r = 0
    while x:
        low = x & -x
        k = low.bit_length() - 1
        r ^= ((y << k) | (y >> (N - k))) & mask if k else y
        x ^= low
    return r


def csquare(x: int, N: int) -> int:
    """Frobenius: ``(sum a^i)^2 = sum a^(2i)``."""
    r = 0
    while x:
        low = x & -x
        r ^= 1 << ((2 * (low.bit_length() - 1)) % N)
        x ^= low
    return r


def cpow(x: int, e: int, N: int) -> int:
    result = 1
    while e:
        if e & 1:
            result = cmul(result, x, N)
        e >>= 1
        if e:
            x = cmul(x, x, N)
    return result


@lru_cache(maxsize=None)
def _bar_tables(N: int, twist: int) -> tuple:
    # one 256-entry table per byte of the vector
    tables = []
    for chunk in range((N + 7) // 8):
        table = [0] * 256
        for byte in range(256):
            v = 0
            for bit in range(8):
                pos = chunk * 8 + bit
                if byte >> bit & 1 and pos < N:
                    v |= 1 << ((pos * twist) % N)
            table[byte] = v
        tables.append(tuple(table))
    return tuple(tables)


def cbar(spec: GroupSpec, x: int) -> int:
    """``a^i -> a^(c i)``, the conjugation by ``b`` restricted to K<a>."""
    tables = _bar_tables(spec.a_order, spec.twist)
    r = 0
    for table in tables:
        r ^= table[x & 0xFF]
        x >>= 8
    return r


def bits(x: int) -> List[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


# ---------------------------------------------------------------------------
# element types


def _check_same(x, y) -> None:
    if x.spec != y.spec:
        raise SpecMismatch(f"{x.spec.name} vs {y.spec.name}")


@dataclass(frozen=True)
class CyclicAlgebraElement:
    """Element of K<a>; houses norms, ``R``, ``r = a + a-bar`` and friends."""

    spec: GroupSpec
    coeffs: int

    def __add__(self, other: "CyclicAlgebraElement") -> "CyclicAlgebraElement":
        _check_same(self, other)
        return CyclicAlgebraElement(self.spec, self.coeffs ^ other.coeffs)

    __sub__ = __add__

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.embed() * other
        _check_same(self, other)
        return CyclicAlgebraElement(self.spec, cmul(self.coeffs, other.coeffs, self.spec.a_order))

    def __pow__(self, e: int) -> "CyclicAlgebraElement":
        if e < 0:
            return self.inverse() ** (-e)
        return CyclicAlgebraElement(self.spec, cpow(self.coeffs, e, self.spec.a_order))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def bar(self) -> "CyclicAlgebraElement":
        return CyclicAlgebraElement(self.spec, cbar(self.spec, self.coeffs))

    def shift(self, k: int) -> "CyclicAlgebraElement":
        """Multiply by ``a^k``."""
        return CyclicAlgebraElement(self.spec, rot(self.coeffs, k, self.spec.a_order))

    @property
    def augmentation(self) -> int:
        return self.coeffs.bit_count() & 1

    def is_self_conjugated(self) -> bool:
        return cbar(self.spec, self.coeffs) == self.coeffs

    def inverse(self) -> "CyclicAlgebraElement":
        # u^N = 1 for every augmentation-1 u in K<a>, |<a>| = N
        if not self.augmentation:
            raise NotAUnit(str(self))
        return self ** (self.spec.a_order - 1)

    def embed(self) -> "AlgebraElement":
        return AlgebraElement(self.spec, self.coeffs, 0)

    def exponents(self) -> List[int]:
        return bits(self.coeffs)

    def __str__(self) -> str:
        return str(self.embed())


@dataclass(frozen=True)
class AlgebraElement:
    """``x1 + x2 b`` with ``x1``, ``x2`` bit vectors over ``<a>``."""

    spec: GroupSpec
    x1: int
    x2: int = 0

    def __post_init__(self) -> None:
        limit = 1 << self.spec.a_order
        if not (0 <= self.x1 < limit and 0 <= self.x2 < limit):
            raise InvalidParameter("component out of range for this spec")

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if isinstance(other, CyclicAlgebraElement):
            other = other.embed()
        _check_same(self, other)
        return AlgebraElement(self.spec, self.x1 ^ other.x1, self.x2 ^ other.x2)

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, other) -> "AlgebraElement":
        if isinstance(other, CyclicAlgebraElement):
            other = other.embed()
        return mul(self, other)

    def __rmul__(self, other) -> "AlgebraElement":
        if isinstance(other, CyclicAlgebraElement):
            return mul(other.embed(), self)
        return NotImplemented

    def __pow__(self, e: int) -> "AlgebraElement":
        x = self
        if e < 0:
            x, e = invert_unit(self), -e
        result = one(self.spec)
        while e:
            if e & 1:
                result = mul(result, x)
            e >>= 1
            if e:
                x = mul(x, x)
        return result

    def __bool__(self) -> bool:
        return bool(self.x1 or self.x2)

    # views ----------------------------------------------------------------
    @property
    def first(self) -> CyclicAlgebraElement:
        return CyclicAlgebraElement(self.spec, self.x1)

    @property
    def second(self) -> CyclicAlgebraElement:
        return CyclicAlgebraElement(self.spec, self.x2)

    @property
    def key(self) -> int:
        """Flat bit vector; bit ``j*N + i`` is the coefficient of ``a^i b^j``."""
        return self.x1 | (self.x2 << self.spec.a_order)

    @property
    def augmentation(self) -> int:
        return augmentation(self)

    def is_unit(self) -> bool:
        return augmentation(self) == 1

    def bar(self) -> "AlgebraElement":
        return bar(self)

    def inverse(self) -> "AlgebraElement":
        return invert_unit(self)

    def supp(self) -> Set[GroupElement]:
        return supp(self)

    def __str__(self) -> str:
        return format_algebra(self)


# ---------------------------------------------------------------------------
# constructors


def zero(spec: GroupSpec) -> AlgebraElement:
    return AlgebraElement(spec, 0, 0)


def one(spec: GroupSpec) -> AlgebraElement:
    return AlgebraElement(spec, 1, 0)


def monomial(spec: GroupSpec, g: GroupElement) -> AlgebraElement:
    spec.element(g.i, g.j)
    return AlgebraElement(spec, 0, 1 << g.i) if g.j else AlgebraElement(spec, 1 << g.i, 0)


def a_power(spec: GroupSpec, i: int) -> AlgebraElement:
    return AlgebraElement(spec, 1 << (i % spec.a_order), 0)


def b_element(spec: GroupSpec) -> AlgebraElement:
    return AlgebraElement(spec, 0, 1)


def cyclic(spec: GroupSpec, exponents: Iterable[int]) -> CyclicAlgebraElement:
    """``sum a^e`` over the given exponents (taken mod ``N``, repeats cancel)."""
    v = 0
    for e in exponents:
        v ^= 1 << (e % spec.a_order)
    return CyclicAlgebraElement(spec, v)


def from_key(spec: GroupSpec, key: int) -> AlgebraElement:
    N = spec.a_order
    return AlgebraElement(spec, key & ((1 << N) - 1), key >> N)


def from_monomials(spec: GroupSpec, elems: Iterable[GroupElement]) -> AlgebraElement:
    x = zero(spec)
    for g in elems:
        x = x + monomial(spec, g)
    return x


def random_element(spec: GroupSpec, rng: random.Random) -> AlgebraElement:
    N = spec.a_order
    return AlgebraElement(spec, rng.getrandbits(N), rng.getrandbits(N))


def random_unit(spec: GroupSpec, rng: random.Random) -> AlgebraElement:
    x = random_element(spec, rng)
    if not augmentation(x):
        x = AlgebraElement(spec, x.x1 ^ 1, x.x2)
    return x


def all_units(spec: GroupSpec) -> List[AlgebraElement]:
    """Every normalized unit; only sensible for n = 3 (128 elements)."""
    N = spec.a_order
    if spec.n > 4:
        raise InvalidParameter("exhaustive unit enumeration is limited to n <= 4")
    out = []
    for key in range(1 << (2 * N)):
        if key.bit_count() & 1:
            out.append(from_key(spec, key))
    return out


# ---------------------------------------------------------------------------
# operations


def add(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x + y


def augmentation(x: AlgebraElement) -> int:
    return (x.x1.bit_count() + x.x2.bit_count()) & 1


def supp(x: AlgebraElement) -> Set[GroupElement]:
    return {GroupElement(i, 0) for i in bits(x.x1)} | {GroupElement(i, 1) for i in bits(x.x2)}


def _alpha(spec: GroupSpec, v: int) -> int:
    """Multiply a K<a> vector by ``alpha = b^2``."""
    return rot(v, spec.alpha_exponent, spec.a_order) if spec.alpha_exponent else v


def mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """``(x1 y1 + x2 bar(y2) alpha) + (x2 bar(y1) + x1 y2) b``."""
    _check_same(x, y)
    spec = x.spec
    N = spec.a_order
    t1 = cmul(x.x1, y.x1, N)
    t2 = cmul(x.x1, y.x2, N) if x.x1 and y.x2 else 0
    if x.x2:
        if y.x2:
            t1 ^= _alpha(spec, cmul(x.x2, cbar(spec, y.x2), N))
        if y.x1:
            t2 ^= cmul(x.x2, cbar(spec, y.x1), N)
    return AlgebraElement(spec, t1, t2)


def bar(x: AlgebraElement) -> AlgebraElement:
    """``b^-1 x b``; on components it acts as ``x1 + x2 b -> bar(x1) + bar(x2) b``."""
    return AlgebraElement(x.spec, cbar(x.spec, x.x1), cbar(x.spec, x.x2))


def norm(x: AlgebraElement) -> CyclicAlgebraElement:
    """``x1 bar(x1) + x2 bar(x2) alpha``."""
    spec = x.spec
    N = spec.a_order
    r = cmul(x.x1, cbar(spec, x.x1), N) ^ _alpha(spec, cmul(x.x2, cbar(spec, x.x2), N))
    return CyclicAlgebraElement(spec, r)


def invert_unit(f: AlgebraElement) -> AlgebraElement:
    """``f^-1 = (bar(f1) + f2 b) R^-1`` with ``R = norm(f)`` central."""
    if not augmentation(f):
        raise NotAUnit(f"{f} has augmentation 0")
    spec = f.spec
    N = spec.a_order
    r_inv = cpow(norm(f).coeffs, N - 1, N)
    # R^-1 is self-conjugated, so it can be multiplied into each component
    return AlgebraElement(spec, cmul(cbar(spec, f.x1), r_inv, N), cmul(f.x2, r_inv, N))


def pow2k(x: AlgebraElement, k: int) -> AlgebraElement:
    """``x^(2^k)`` by the closed formula

    ``x1^(2^k) + (x2 x2')^(2^(k-1)) b^(2^k)
    + sum_{i=1}^{k-1} (x2 x2')^(2^(i-1)) s^(2^k - 2^i) b^(2^i) + x2 s^(2^k - 1) b``

    where ``x2' = bar(x2)`` and ``s = x1 + bar(x1)``.
    """
    if k < 1:
        raise InvalidParameter("pow2k needs k >= 1")
    spec = x.spec
    N = spec.a_order

    def b_power(i: int) -> int:
        # b^(2^i), i >= 1, as an element of K<a>
        return 1 << spec.alpha_exponent if i == 1 else 1

    s = x.x1 ^ cbar(spec, x.x1)
    p = cmul(x.x2, cbar(spec, x.x2), N)
    s_frob = [s]  # s^(2^j)
    p_frob = [p]  # p^(2^j)
    for _ in range(k):
        s_frob.append(csquare(s_frob[-1], N))
        p_frob.append(csquare(p_frob[-1], N))

    first = x.x1
    for _ in range(k):
        first = csquare(first, N)
    first ^= cmul(p_frob[k - 1], b_power(k), N)
    # suffix[i] = s^(2^k - 2^i) = prod_{j=i}^{k-1} s^(2^j)
    suffix = [1] * (k + 1)
    for j in range(k - 1, -1, -1):
        suffix[j] = cmul(suffix[j + 1], s_frob[j], N)
    for i in range(1, k):
        first ^= cmul(cmul(p_frob[i - 1], suffix[i], N), b_power(i), N)
    second = cmul(x.x2, suffix[0], N)
    return AlgebraElement(spec, first, second)


def set_sum(spec: GroupSpec, subgroup: Sequence[GroupElement]) -> AlgebraElement:
    """Sum of all elements of a subgroup of ``<a>``."""
    elems = set(subgroup)
    if any(g.j for g in elems) or GroupElement(0, 0) not in elems:
        raise InvalidParameter("set_sum expects a subgroup of <a>")
    N = spec.a_order
    exps = {g.i for g in elems}
    if any((x + y) % N not in exps for x in exps for y in exps):
        raise InvalidParameter("set_sum expects a subgroup of <a>")
    return from_monomials(spec, elems)


def subgroup_sum(spec: GroupSpec, step: int) -> CyclicAlgebraElement:
    """Sum of ``<a^step>``."""
    N = spec.a_order
    exps = {(step * k) % N for k in range(N)}
    return cyclic(spec, exps)


# ---------------------------------------------------------------------------
# text form


def format_algebra(x: AlgebraElement) -> str:
    if not x:
        return "0"
    terms = [format_element(GroupElement(i, 0)) for i in bits(x.x1)]
    terms += [format_element(GroupElement(i, 1)) for i in bits(x.x2)]
    return " + ".join(terms)


def parse_algebra(spec: GroupSpec, text: str) -> AlgebraElement:
    text = text.strip()
    if text == "0":
        return zero(spec)
    x = zero(spec)
    for term in re.split(r"\s*\+\s*", text):
        x = x + monomial(spec, parse_element(spec, term))
    return x
