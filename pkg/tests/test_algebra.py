import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from maxclass import algebra as alg
from maxclass import oracles
from maxclass.algebra import AlgebraElement, CyclicAlgebraElement
from maxclass.errors import InvalidParameter, NotAUnit, SpecMismatch
from maxclass.groups import GroupElement, make_group

from conftest import SPECS_3_6

D8 = make_group("d", 3)
Q8 = make_group("q", 3)
S16 = make_group("s", 4)
Q16 = make_group("q", 4)


@st.composite
def spec_and_elements(draw, count=2, units=False):
    spec = draw(st.sampled_from(SPECS_3_6))
    N = spec.a_order
    xs = []
    for _ in range(count):
        x1 = draw(st.integers(0, (1 << N) - 1))
        x2 = draw(st.integers(0, (1 << N) - 1))
        x = AlgebraElement(spec, x1, x2)
        if units and not x.is_unit():
            x = x + alg.one(spec)
        xs.append(x)
    return spec, xs


def A_of(spec):
    return alg.parse_algebra(spec, "a + b + a^1*b")


# --- examples -------------------------------------------------------------------


def test_x_plus_x_is_zero():
    x = A_of(D8)
    assert not (x + x)
    assert str(x + x) == "0"


def test_supp_and_augmentation_of_A():
    A = A_of(D8)
    assert alg.supp(A) == {GroupElement(1, 0), GroupElement(0, 1), GroupElement(1, 1)}
    assert alg.augmentation(A) == 1
    assert alg.augmentation(alg.parse_algebra(D8, "1 + a + a^3")) == 1


def test_spec_mismatch():
    with pytest.raises(SpecMismatch):
        alg.one(D8) + alg.one(Q8)
    with pytest.raises(SpecMismatch):
        alg.mul(alg.one(D8), alg.one(Q8))


def test_component_range_checked():
    with pytest.raises(InvalidParameter):
        AlgebraElement(D8, 1 << 4, 0)


def test_mul_identity():
    x = alg.parse_algebra(S16, "a^3 + a^7*b + b")
    assert x * alg.one(S16) == x == alg.one(S16) * x


def test_D8_A_squared_formula_vs_naive():
    A = A_of(D8)
    assert A * A == oracles.naive_mul(A, A)


def test_Q8_b_squared():
    b = alg.b_element(Q8)
    assert b * b == alg.a_power(Q8, 2)


def test_bar_examples():
    assert alg.bar(alg.a_power(D8, 1)) == alg.a_power(D8, 3)
    assert alg.bar(alg.a_power(S16, 1)) == alg.a_power(S16, 3)
    assert alg.bar(alg.a_power(Q16, 1)) == alg.a_power(Q16, 7)


def test_norm_examples():
    assert alg.norm(alg.one(D8)).coeffs == 1
    assert alg.norm(A_of(D8)) == alg.cyclic(D8, [0, 1, 3])


def test_norm_multiplicative_q16():
    rng = random.Random(16)
    for _ in range(10_000):
        x, y = alg.random_unit(Q16, rng), alg.random_unit(Q16, rng)
        assert alg.norm(x * y) == alg.norm(x) * alg.norm(y)


def test_invert_examples():
    for spec in SPECS_3_6:
        one = alg.one(spec)
        assert alg.invert_unit(one) == one
        b = alg.b_element(spec)
        expected = alg.a_power(spec, spec.a_order // 2) * b if spec.is_quaternion else b
        assert alg.invert_unit(b) == expected


def test_invert_rejects_non_unit():
    with pytest.raises(NotAUnit):
        alg.invert_unit(alg.parse_algebra(D8, "1 + a"))


def test_invert_A_exhaustive_search():
    A = A_of(D8)
    assert oracles.brute_inverse(A) == alg.invert_unit(A)


def test_pow2k_of_one():
    for spec in SPECS_3_6:
        for k in range(1, spec.n):
            assert alg.pow2k(alg.one(spec), k) == alg.one(spec)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_second_component_of_A_power(n):
    spec = make_group("d", n)
    A = A_of(spec)
    t = alg.pow2k(A, n - 2)
    assert t.x2 == (1 << spec.a_order) - 1


def test_pow2k_S32_cubed_squaring():
    S32 = make_group("s", 5)
    rng = random.Random(32)
    for _ in range(10_000):
        x = alg.random_element(S32, rng)
        x2 = x * x
        x4 = x2 * x2
        assert alg.pow2k(x, 3) == x4 * x4


def test_set_sum_examples():
    sub = [GroupElement(0, 0), GroupElement(2, 0)]
    assert alg.set_sum(D8, sub) == alg.parse_algebra(D8, "1 + a^2")
    D16 = make_group("d", 4)
    one_a2 = alg.cyclic(D16, [0, 2])
    assert one_a2 ** 3 == alg.cyclic(D16, [0, 2, 4, 6]) == alg.subgroup_sum(D16, 2)
    s = alg.subgroup_sum(D8, 2)
    assert s.shift(1) + s == alg.subgroup_sum(D8, 1)


@pytest.mark.parametrize("spec", SPECS_3_6, ids=lambda s: s.name)
def test_set_sum_power_identity(spec):
    # (1 + x)^(2^m - 1) is the sum of <x> for x of order 2^m
    N = spec.a_order
    for step in [1 << j for j in range(spec.n - 1)]:
        m = (N // step).bit_length() - 1
        base = alg.cyclic(spec, [0, step])
        assert base ** ((1 << m) - 1) == alg.subgroup_sum(spec, step)


def test_text_form():
    x = alg.parse_algebra(D8, "a + b + a^1*b")
    assert str(x) == "a^1 + b + a^1*b"
    assert alg.parse_algebra(D8, str(x)) == x
    assert alg.parse_algebra(D8, "0") == alg.zero(D8)
    assert str(alg.parse_algebra(D8, "a^3*b + a^2 + 1")) == "1 + a^2 + a^3*b"


# --- differential tests against convolution ----------------------------------


@pytest.mark.parametrize("spec", [s for s in SPECS_3_6 if s.n == 3], ids=lambda s: s.name)
def test_mul_exhaustive_n3(spec):
    D = spec.order
    keys = np.arange(1 << D, dtype=np.uint64)
    X = ((keys[:, None] >> np.arange(D, dtype=np.uint64)) & np.uint64(1)).astype(np.uint8)
    els = [alg.from_key(spec, int(k)) for k in keys]
    for i, x in enumerate(els):
        got = oracles.to_rows([alg.mul(x, y) for y in els], D)
        Xi = np.repeat(X[i:i + 1], len(els), axis=0)
        assert np.array_equal(oracles.naive_products(spec, Xi, X), got), str(x)


@pytest.mark.parametrize("spec", [s for s in SPECS_3_6 if s.n > 3], ids=lambda s: s.name)
def test_mul_random(spec):
    rng = random.Random(spec.name)
    xs = [alg.random_element(spec, rng) for _ in range(10_000)]
    ys = [alg.random_element(spec, rng) for _ in range(10_000)]
    D = spec.order
    want = oracles.naive_products(spec, oracles.to_rows(xs, D), oracles.to_rows(ys, D))
    got = oracles.to_rows([x * y for x, y in zip(xs, ys)], D)
    assert np.array_equal(want, got)


@given(spec_and_elements(3))
def test_ring_axioms(data):
    spec, (x, y, z) = data
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x + y) * z == x * z + y * z


@given(spec_and_elements(2))
def test_bar_is_automorphism(data):
    spec, (x, y) = data
    assert alg.bar(x * y) == alg.bar(x) * alg.bar(y)
    assert alg.bar(x + y) == alg.bar(x) + alg.bar(y)
    assert alg.bar(alg.bar(x)) == x


@given(spec_and_elements(1))
def test_bar_is_conjugation_by_b(data):
    spec, (x,) = data
    b = alg.b_element(spec)
    assert oracles.naive_mul(oracles.naive_mul(alg.invert_unit(b), x), b) == alg.bar(x)


@given(spec_and_elements(1))
def test_unit_criterion(data):
    spec, (x,) = data
    assert x.is_unit() == (len(alg.supp(x)) % 2 == 1)
    if x.is_unit():
        inv = alg.invert_unit(x)
        assert oracles.naive_mul(x, inv) == alg.one(spec) == oracles.naive_mul(inv, x)
    else:
        # augmentation ideal is nilpotent
        assert not alg.pow2k(x, spec.n)


@given(spec_and_elements(2, units=True))
def test_norm_multiplicative_and_self_conjugated(data):
    spec, (x, y) = data
    assert alg.norm(x * y) == alg.norm(x) * alg.norm(y)
    assert alg.norm(x).is_self_conjugated()


@given(spec_and_elements(1), st.integers(1, 5))
def test_pow2k_matches_squaring(data, k):
    spec, (x,) = data
    k = min(k, spec.n)
    y = x
    for _ in range(k):
        y = y * y
    assert alg.pow2k(x, k) == y
    # second component is x2 (x1 + bar(x1))^(2^k - 1)
    assert y.second == (x.first + x.first.bar()) ** ((1 << k) - 1) * x.second


def test_self_conjugated_commute_exhaustive_n3():
    for spec in (D8, Q8):
        sc = [x for x in (alg.from_key(spec, k) for k in range(1 << 8)) if alg.bar(x) == x]
        for x, y in itertools.product(sc, repeat=2):
            assert x * y == y * x


@given(spec_and_elements(2))
def test_self_conjugated_commute_random(data):
    spec, (x, y) = data
    # x + bar(x) is always self-conjugated
    u, v = x + alg.bar(x), y + alg.bar(y)
    assert u * v == v * u


def test_commutes_with_b_iff_self_conjugated_n3():
    for spec in (D8, Q8):
        b = alg.b_element(spec)
        for k in range(1 << 8):
            z = alg.from_key(spec, k)
            assert (z * b == b * z) == (alg.bar(z) == z)


def test_cyclic_element_ops():
    r = alg.cyclic(D8, [0, 1, 3])
    assert r.is_self_conjugated()
    assert r * r.inverse() == alg.cyclic(D8, [0])
    assert r.shift(1) == alg.cyclic(D8, [1, 2, 0])
    assert isinstance(r * alg.b_element(D8), AlgebraElement)
    assert r.exponents() == [0, 1, 3]
    with pytest.raises(NotAUnit):
        CyclicAlgebraElement(D8, 0b11).inverse()


def test_negative_power_inverts():
    x = alg.parse_algebra(Q16, "a^3 + b + a^2*b")
    assert x ** -1 == alg.invert_unit(x)
    assert x ** -2 * x ** 2 == alg.one(Q16)


def test_all_units_count():
    assert len(alg.all_units(D8)) == 128
    with pytest.raises(InvalidParameter):
        alg.all_units(make_group("d", 5))
