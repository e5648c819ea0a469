import itertools

import pytest
from hypothesis import given, strategies as st

from maxclass.errors import InvalidParameter
from maxclass.groups import (
    Family,
    GroupElement,
    all_specs,
    brute_commutator_subgroup,
    commutator_subgroup,
    format_element,
    g_commutator,
    g_inv,
    g_mul,
    g_pow,
    make_group,
    parse_element,
)

from conftest import SPECS_3_6


def test_make_group_dihedral():
    D8 = make_group("d", 3)
    assert D8.name == "D8"
    assert D8.order == 8
    assert D8.alpha_exponent == 0
    assert D8.twist == 3


def test_make_group_quaternion():
    Q8 = make_group(Family.QUATERNION, 3)
    assert Q8.alpha_exponent == 2
    assert g_mul(Q8, Q8.b, Q8.b) == GroupElement(2, 0)


def test_semidihedral_n3_rejected():
    with pytest.raises(InvalidParameter):
        make_group("s", 3)


@pytest.mark.parametrize("n", [0, 1, 2, -3])
def test_small_n_rejected(n):
    with pytest.raises(InvalidParameter):
        make_group("d", n)


def test_unknown_family():
    with pytest.raises(InvalidParameter):
        make_group("x", 4)


def test_semidihedral_twist():
    S16 = make_group("s", 4)
    b_inv = g_inv(S16, S16.b)
    assert g_mul(S16, g_mul(S16, b_inv, S16.a), S16.b) == GroupElement(3, 0)
    assert S16.twist == 3


def test_dihedral_ab_squared():
    D8 = make_group("d", 3)
    ab = g_mul(D8, D8.a, D8.b)
    assert g_mul(D8, ab, ab) == D8.identity


def test_element_range_checked():
    D8 = make_group("d", 3)
    with pytest.raises(InvalidParameter):
        D8.element(4, 0)
    with pytest.raises(InvalidParameter):
        D8.element(0, 2)


def test_all_specs_skips_s3():
    names = [s.name for s in all_specs(3, 4)]
    assert names == ["D8", "D16", "S16", "Q8", "Q16"]


@pytest.mark.parametrize("spec", SPECS_3_6, ids=lambda s: s.name)
def test_relations(spec):
    a, b, e = spec.a, spec.b, spec.identity
    N = spec.a_order
    assert g_pow(spec, a, N) == e
    assert all(g_pow(spec, a, k) != e for k in range(1, N))
    assert g_pow(spec, b, 2) == g_pow(spec, a, spec.alpha_exponent)
    assert g_mul(spec, g_mul(spec, g_inv(spec, b), a), b) == g_pow(spec, a, spec.twist)
    assert len(set(spec.elements())) == spec.order == 2 ** spec.n


@pytest.mark.parametrize("spec", [s for s in SPECS_3_6 if s.n <= 4], ids=lambda s: s.name)
def test_associativity_and_inverses_exhaustive(spec):
    els = spec.elements()
    for g, h, k in itertools.product(els, repeat=3):
        assert g_mul(spec, g_mul(spec, g, h), k) == g_mul(spec, g, g_mul(spec, h, k))
    for g in els:
        assert g_mul(spec, g, g_inv(spec, g)) == spec.identity


@given(st.sampled_from(SPECS_3_6), st.data())
def test_associativity_random(spec, data):
    idx = st.integers(0, spec.order - 1)
    g, h, k = (spec.from_index(data.draw(idx)) for _ in range(3))
    assert g_mul(spec, g_mul(spec, g, h), k) == g_mul(spec, g, g_mul(spec, h, k))
    assert g_mul(spec, g_inv(spec, g), g) == spec.identity


def test_commutator_subgroup_examples():
    D8 = make_group("d", 3)
    assert commutator_subgroup(D8) == [GroupElement(0, 0), GroupElement(2, 0)]
    Q16 = make_group("q", 4)
    assert commutator_subgroup(Q16) == [GroupElement(i, 0) for i in (0, 2, 4, 6)]
    assert brute_commutator_subgroup(Q16) == commutator_subgroup(Q16)


@pytest.mark.parametrize("spec", SPECS_3_6, ids=lambda s: s.name)
def test_commutator_subgroup_brute(spec):
    G1 = commutator_subgroup(spec)
    assert len(G1) == 2 ** (spec.n - 2)
    assert brute_commutator_subgroup(spec) == G1


def test_commutator_of_generators():
    for spec in SPECS_3_6:
        # [a, b] = a^-1 a^c = a^(c-1)
        assert g_commutator(spec, spec.a, spec.b) == g_pow(spec, spec.a, spec.twist - 1)


def test_index_roundtrip():
    spec = make_group("s", 5)
    for k, g in enumerate(spec.elements()):
        assert spec.index(g) == k
        assert spec.from_index(k) == g


@pytest.mark.parametrize("text,expected", [("1", (0, 0)), ("b", (0, 1)), ("a^3", (3, 0)), ("a^5*b", (5, 1)),
                                           ("a", (1, 0)), ("a*b", (1, 1))])
def test_parse_element(text, expected):
    spec = make_group("d", 4)
    assert parse_element(spec, text) == GroupElement(*expected)


def test_format_parse_roundtrip():
    spec = make_group("q", 4)
    for g in spec.elements():
        assert parse_element(spec, format_element(g)) == g
    assert format_element(GroupElement(0, 0)) == "1"
    assert format_element(GroupElement(2, 1)) == "a^2*b"


def test_parse_rejects_garbage():
    with pytest.raises(InvalidParameter):
        parse_element(make_group("d", 3), "c^2")
    with pytest.raises(InvalidParameter):
        parse_element(make_group("d", 3), "a^9")


def test_all_specs_accepts_letters():
    assert [s.name for s in all_specs(3, 4, families="ds")] == ["D8", "D16", "S16"]
