"""Dihedral, semidihedral and generalized quaternion 2-groups.

Every element is kept in the normal form ``a^i b^j`` with ``0 <= i < 2^(n-1)``
and ``j in {0, 1}``.  The three presentations share ``a^(2^(n-1)) = 1`` and
differ in ``b^2`` and in the action of ``b`` on ``<a>``::

    D:  b^2 = 1,            b^-1 a b = a^-1
    S:  b^2 = 1,            b^-1 a b = a^(-1 + 2^(n-2))
    Q:  b^2 = a^(2^(n-2)),  b^-1 a b = a^-1
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from typing import Iterator, List

from .errors import InvalidParameter


class Family(enum.Enum):
    DIHEDRAL = "d"
    SEMIDIHEDRAL = "s"
    QUATERNION = "q"

    @classmethod
    def parse(cls, text: "str | Family") -> "Family":
        if isinstance(text, Family):
            return text
        key = str(text).strip().lower()
        for fam in cls:
            if key in (fam.value, fam.name.lower()):
                return fam
        raise InvalidParameter(f"unknown family {text!r}")

    @property
    def letter(self) -> str:
        return self.value.upper()


@dataclass(frozen=True, order=True)
class GroupElement:
    """``a^i b^j``; range checking is done against a spec by :meth:`GroupSpec.element`."""

    i: int
    j: int = 0

    def __str__(self) -> str:
        return format_element(self)


@dataclass(frozen=True)
class GroupSpec:
    family: Family
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.family, Family):
            object.__setattr__(self, "family", Family.parse(self.family))
        if not isinstance(self.n, int) or self.n < 3:
            raise InvalidParameter(f"n must be an integer >= 3, got {self.n!r}")
        if self.family is Family.SEMIDIHEDRAL and self.n < 4:
            raise InvalidParameter("semidihedral groups need n >= 4 (S_3 coincides with D_3)")

    @property
    def order(self) -> int:
        return 1 << self.n

    @property
    def a_order(self) -> int:
        """Order of ``a``, also the width of every coefficient vector."""
        return 1 << (self.n - 1)

    @property
    def alpha_exponent(self) -> int:
        """``e`` with ``b^2 = a^e``."""
        return self.a_order // 2 if self.family is Family.QUATERNION else 0

    @property
    def twist(self) -> int:
        """``c`` with ``b^-1 a b = a^c``."""
        N = self.a_order
        if self.family is Family.SEMIDIHEDRAL:
            return (N // 2 - 1) % N
        return N - 1

    @property
    def is_quaternion(self) -> bool:
        return self.family is Family.QUATERNION

    @property
    def name(self) -> str:
        return f"{self.family.letter}{self.order}"

    def __str__(self) -> str:
        return self.name

    def element(self, i: int, j: int = 0) -> GroupElement:
        if not (0 <= i < self.a_order) or j not in (0, 1):
            raise InvalidParameter(f"a^{i} b^{j} is not a normal form in {self.name}")
        return GroupElement(i, j)

    def elements(self) -> List[GroupElement]:
        """All elements ordered by :meth:`index`."""
        return [GroupElement(i, j) for j in (0, 1) for i in range(self.a_order)]

    def index(self, g: GroupElement) -> int:
        return g.j * self.a_order + g.i

    def from_index(self, k: int) -> GroupElement:
        j, i = divmod(k, self.a_order)
        return self.element(i, j)

    @property
    def identity(self) -> GroupElement:
        return GroupElement(0, 0)

    @property
    def a(self) -> GroupElement:
        return GroupElement(1, 0)

    @property
    def b(self) -> GroupElement:
        return GroupElement(0, 1)


def make_group(family: "Family | str", n: int) -> GroupSpec:
    return GroupSpec(Family.parse(family), n)


def all_specs(n_min: int, n_max: int, families=tuple(Family)) -> Iterator[GroupSpec]:
    """Every valid spec in the range; S_3 is silently omitted."""
    for fam in families:
        fam = Family.parse(fam)
        for n in range(n_min, n_max + 1):
            if fam is Family.SEMIDIHEDRAL and n < 4:
                continue
            yield GroupSpec(fam, n)


def g_mul(spec: GroupSpec, g: GroupElement, h: GroupElement) -> GroupElement:
    N = spec.a_order
    # b^j a^k = a^(k c^j) b^j
    k = h.i * spec.twist if g.j else h.i
    i = g.i + k
    if g.j and h.j:
        i += spec.alpha_exponent
    return GroupElement(i % N, (g.j + h.j) % 2)


def g_inv(spec: GroupSpec, g: GroupElement) -> GroupElement:
    N = spec.a_order
    if not g.j:
        return GroupElement((-g.i) % N, 0)
    # (a^i b)^-1 = b^-1 a^-i = a^e b a^-i = a^(e - c i) b
    return GroupElement((spec.alpha_exponent - spec.twist * g.i) % N, 1)


def g_pow(spec: GroupSpec, g: GroupElement, k: int) -> GroupElement:
    if k < 0:
        g, k = g_inv(spec, g), -k
    result = spec.identity
    for _ in range(k):
        result = g_mul(spec, result, g)
    return result


def g_commutator(spec: GroupSpec, g: GroupElement, h: GroupElement) -> GroupElement:
    """``g^-1 h^-1 g h``."""
    return g_mul(spec, g_mul(spec, g_inv(spec, g), g_inv(spec, h)), g_mul(spec, g, h))


def commutator_subgroup(spec: GroupSpec) -> List[GroupElement]:
    """``G' = <a^2>``, listed as ``1, a^2, a^4, ...``."""
    return [GroupElement(i, 0) for i in range(0, spec.a_order, 2)]


def brute_commutator_subgroup(spec: GroupSpec) -> List[GroupElement]:
    """Closure of all commutators ``[g, h]``; cross-check for :func:`commutator_subgroup`."""
    elems = spec.elements()
    found = {g_commutator(spec, g, h) for g, h in itertools.product(elems, repeat=2)}
    frontier = list(found)
    while frontier:
        new = []
        for x, y in itertools.product(frontier, list(found)):
            z = g_mul(spec, x, y)
            if z not in found:
                found.add(z)
                new.append(z)
        frontier = new
    return sorted(found, key=spec.index)


def format_element(g: GroupElement) -> str:
    if g.i == 0:
        return "b" if g.j else "1"
    return f"a^{g.i}*b" if g.j else f"a^{g.i}"


_ELEMENT_RE = re.compile(r"^\s*(?:(1)|a(?:\^(\d+))?(\*?b)?|(b))\s*$")


def parse_element(spec: GroupSpec, text: str) -> GroupElement:
    """Inverse of :func:`format_element`; also accepts ``a`` and ``a*b`` without exponent."""
    m = _ELEMENT_RE.match(text)
    if not m:
        raise InvalidParameter(f"cannot parse group element {text!r}")
    if m.group(1):
        return spec.identity
    if m.group(4):
        return spec.b
    i = int(m.group(2)) if m.group(2) is not None else 1
    return spec.element(i, 1 if m.group(3) else 0)
