"""Check registry and the batch driver over (family, n) grids."""

from __future__ import annotations

import datetime as _dt
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import algebra as alg
from . import lie, oracles, tables, units, wreath
from .algebra import AlgebraElement, cbar
from .errors import UnknownCheck, UnsupportedRange
from .groups import Family, GroupSpec, all_specs, brute_commutator_subgroup, commutator_subgroup, g_mul, g_pow
from .report import FAIL, PASS, SKIPPED, Entry, VerificationReport

SUPPORTED_N = (3, 8)
DEFAULT_SAMPLES = 2000
EXPONENT_SAMPLES = 10_000

CheckFn = Callable[[GroupSpec, random.Random, int], Tuple[bool, dict]]


@dataclass(frozen=True)
class Check:
    check_id: str
    claim: str
    strategy: str
    run: CheckFn
    families: str = "dsq"
    n_max: int = 8

    def applies(self, spec: GroupSpec) -> Optional[str]:
        """``None`` when the check runs on ``spec``, else the reason it is skipped."""
        if spec.family.value not in self.families:
            return f"not applicable to family {spec.family.value}"
        if spec.n > self.n_max:
            return f"explicit cap n <= {self.n_max}"
        return None


# ---------------------------------------------------------------------------
# helpers


def _naive_check(spec: GroupSpec, xs: Sequence[AlgebraElement], ys: Sequence[AlgebraElement],
                 got: Sequence[AlgebraElement]) -> Optional[int]:
    """Index of the first ``got[i] != xs[i] ys[i]`` under convolution, else ``None``."""
    D = spec.order
    X, Y, Z = (oracles.to_rows(v, D) for v in (xs, ys, got))
    bad = np.flatnonzero((oracles.naive_products(spec, X, Y) != Z).any(axis=1))
    return int(bad[0]) if bad.size else None


def _support_le2(spec: GroupSpec) -> List[AlgebraElement]:
    D = spec.order
    keys = [1 << i for i in range(D)] + [(1 << i) | (1 << j) for i in range(D) for j in range(i + 1, D)]
    return [alg.from_key(spec, k) for k in keys]


def _random_symmetric(spec: GroupSpec, rng: random.Random) -> int:
    N = spec.a_order
    y = rng.getrandbits(N)
    fixed = [i for i in range(N) if cbar(spec, 1 << i) == 1 << i]
    v = y ^ cbar(spec, y)
    for i in fixed:
        if rng.getrandbits(1):
            v ^= 1 << i
    return v


def _units(spec: GroupSpec, rng: random.Random, samples: int) -> Tuple[List[AlgebraElement], str]:
    if spec.n == 3:
        return alg.all_units(spec), "exhaustive"
    return [alg.random_unit(spec, rng) for _ in range(samples)], f"random[{samples}]"


def _fail_witness(kind: str, *xs) -> dict:
    return {"kind": kind, "elements": [str(x) for x in xs]}


# ---------------------------------------------------------------------------
# check bodies: (spec, rng, samples) -> (ok, witness)


def _group_relations(spec, rng, samples):
    a, b, e = spec.a, spec.b, spec.identity
    N = spec.a_order
    rel = {
        "a^N": g_pow(spec, a, N) == e and all(g_pow(spec, a, k) != e for k in range(1, N)),
        "b^2": g_pow(spec, b, 2) == g_pow(spec, a, spec.alpha_exponent),
        "b^-1 a b": g_mul(spec, g_mul(spec, g_pow(spec, b, -1), a), b) == g_pow(spec, a, spec.twist),
        "order": len(spec.elements()) == 1 << spec.n,
        "G'": brute_commutator_subgroup(spec) == commutator_subgroup(spec),
    }
    return all(rel.values()), {"relations": rel}


def _mul_oracle(spec, rng, samples):
    if spec.n == 3:
        small = _support_le2(spec)
        xs = [x for x in small for _ in small]
        ys = [y for _ in small for y in small]
        mode = f"support<=2 exhaustive[{len(xs)}]"
    else:
        xs, ys, mode = [], [], "random"
    xs += [alg.random_element(spec, rng) for _ in range(samples)]
    ys += [alg.random_element(spec, rng) for _ in range(samples)]
    got = [alg.mul(x, y) for x, y in zip(xs, ys)]
    bad = _naive_check(spec, xs, ys, got)
    w = {"mode": mode, "pairs": len(xs), "mismatches": 0 if bad is None else 1}
    if bad is not None:
        w.update(_fail_witness("mismatch", xs[bad], ys[bad], got[bad]))
    return bad is None, w


def _bar_automorphism(spec, rng, samples):
    b = alg.b_element(spec)
    for _ in range(samples):
        x, y = alg.random_element(spec, rng), alg.random_element(spec, rng)
        bx = alg.bar(x)
        if alg.bar(alg.mul(x, y)) != alg.mul(bx, alg.bar(y)) or alg.bar(bx) != x:
            return False, _fail_witness("not an involutive automorphism", x, y)
        # b^-1 x b through the flat oracle
        if oracles.naive_mul(oracles.naive_mul(b ** 3 if spec.is_quaternion else b, x), b) != bx:
            return False, _fail_witness("bar differs from conjugation by b", x)
    return True, {"samples": samples}


def _unit_criterion(spec, rng, samples):
    if spec.n == 3:
        pool = [alg.from_key(spec, k) for k in range(1 << spec.order)]
        mode = "exhaustive"
    else:
        pool = [alg.random_element(spec, rng) for _ in range(samples)]
        mode = f"random[{samples}]"
    zero = alg.zero(spec)
    units_, invs = [], []
    for x in pool:
        if x.is_unit():
            units_.append(x)
            invs.append(alg.invert_unit(x))
        elif alg.pow2k(x, spec.n) != zero:
            # augmentation 0 lies in the nilpotent ideal Delta, so it cannot be a unit
            return False, _fail_witness("augmentation-0 element not nilpotent", x)
    one = [alg.one(spec)] * len(units_)
    bad = _naive_check(spec, units_, invs, one)
    if bad is not None:
        return False, _fail_witness("augmentation-1 element without inverse", units_[bad])
    return True, {"mode": mode, "units": len(units_), "non_units": len(pool) - len(units_)}


def _norm_multiplicative(spec, rng, samples):
    for _ in range(samples):
        x, y = alg.random_unit(spec, rng), alg.random_unit(spec, rng)
        if alg.norm(alg.mul(x, y)) != alg.norm(x) * alg.norm(y):
            return False, _fail_witness("norm(xy) != norm(x) norm(y)", x, y)
    return True, {"samples": samples}


def _inverse_lemma(spec, rng, samples):
    pool, mode = _units(spec, rng, samples)
    invs = [alg.invert_unit(f) for f in pool]
    one = [alg.one(spec)] * len(pool)
    bad = _naive_check(spec, pool, invs, one)
    if bad is None:
        bad = _naive_check(spec, invs, pool, one)
    w = {"mode": mode, "units": len(pool)}
    if bad is not None:
        w.update(_fail_witness("f f^-1 != 1", pool[bad], invs[bad]))
    return bad is None, w


def _power_formula(spec, rng, samples):
    for _ in range(samples):
        x = alg.random_element(spec, rng)
        sq = x
        for k in range(1, spec.n):
            sq = alg.mul(sq, sq)
            if alg.pow2k(x, k) != sq:
                return False, dict(_fail_witness("closed form != repeated squaring", x), k=k)
    return True, {"samples": samples, "k_max": spec.n - 1}


def _conj_lemma(spec, rng, samples):
    for _ in range(samples):
        h = AlgebraElement(spec, _random_symmetric(spec, rng), _random_symmetric(spec, rng))
        f = alg.random_unit(spec, rng)
        if units.conj_by(h, f) != units.conj_direct(h, f):
            return False, _fail_witness("closed form != f^-1 h f", h, f)
    w = {"samples": samples}
    if not spec.is_quaternion:
        R = units.tower_R(spec)
        expected = R.embed() + alg.one(spec) + R * alg.b_element(spec)
        got = units.conj_by(alg.b_element(spec), units.standard_A(spec))
        w["b^A"] = str(got)
        if got != expected:
            return False, dict(w, **_fail_witness("b^A != 1 + R + R b", got, expected))
    return True, w


def _h_subgroup(spec, rng, samples):
    hs = units.h_elements(spec)
    for _ in range(samples):
        x, y = rng.choice(hs), rng.choice(hs)
        if not units.in_H(alg.mul(x, y)) or not units.in_H(alg.invert_unit(x)):
            return False, _fail_witness("H not closed", x, y)
    bad = units.kernel_centralizer_mismatch(hs)
    if bad is not None:
        return False, _fail_witness("ker psi != C_H(b)", bad)
    C = units.centralizer_of_b(hs)
    one = alg.one(spec)
    for h in C:
        if alg.mul(h, h) != one:
            return False, _fail_witness("C_H(b) not elementary abelian", h)
    return True, {"H_order": len(hs), "C_H(b)_order": len(C)}


def _order_of_A(spec, rng, samples):
    A = units.standard_A(spec)
    order = units.order_of_unit(A)
    K = spec.a_order // 2
    AK = A ** K
    full = (1 << spec.a_order) - 1
    w = {
        "A": str(A),
        "order": order,
        "expected": spec.a_order,
        "second_component_A^K": str(AK.second),
        "pow2k_agrees": alg.pow2k(A, spec.n - 2) == AK,
    }
    ok = order == spec.a_order and w["pow2k_agrees"]
    if _second_component_claim_applies(spec):
        ok = ok and AK.x2 == full
    return ok, w


def _second_component_claim_applies(spec: GroupSpec) -> bool:
    # in Q8, 1 + a^(N/2+2) = 1 + a^4 = 0 and the second components degenerate
    return not (spec.is_quaternion and spec.n == 3)


def _tower(spec, rng, samples):
    # oracle: conjugation by explicit inversion and multiplication
    A = units.standard_A(spec)
    x = alg.b_element(spec)
    K = spec.a_order // 2
    for k in range(1, K + 1):
        x = units.conj_direct(x, A)
        closed = units.b_tower(spec, k)
        if closed != x:
            return False, dict(_fail_witness("closed form != iterated conjugation", closed, x), k=k)
    w = {"k_max": K, "b^(A^K)=b": x == alg.b_element(spec)}
    return w["b^(A^K)=b"], w


def _tower_structure(spec, rng, samples):
    comm = units.tower_commutation_failures(spec)
    inv = units.involution_failures(spec)
    w = {"commutation_failures": comm, "involution_failures": inv}
    ok = not comm and not inv
    if spec.is_quaternion:
        # second component (b^2 R)^k of b^(A^k) is 1 only at k = K
        K = spec.a_order // 2
        firsts = [k for k in range(1, K + 1) if units.b_tower_q(spec, k).x2 == 1]
        w["second_component_trivial_at"] = firsts
        ok = ok and firsts == [K]
    return ok, w


def _direct_decomposition(spec, rng, samples):
    bad = units.direct_decomposition_counterexample(spec)
    K = spec.a_order // 2
    w = {"products": (1 << K) - 1}
    if bad is not None:
        w["exponents"] = list(bad)
    return bad is None, w


def _quaternion_intersection(spec, rng, samples):
    res = units.quaternion_tower_intersections(spec)
    bad = [list(p) for p, ok in res.items() if not ok]
    return not bad, {"pairs": len(res), "failures": bad}


def _collapse_identity(spec, rng, samples):
    bad = units.collapse_identity_failures(spec)
    w = {"failures": [list(t) for t in bad]}
    if spec.is_quaternion:
        A = units.standard_A(spec)
        b = alg.b_element(spec)
        w["(b,A^2)=(b,A,A)"] = units.group_commutator(b, A * A) == units.repeated_commutator(b, A, 2)
        return not bad and w["(b,A^2)=(b,A,A)"], w
    return not bad, w


def _lie_indices(spec, rng, samples):
    t = lie.index_table(spec)
    Gp = spec.a_order // 2
    ok = t["t_L"] == t["t_upper"] and t["t_aug"] == t["t_L"] - 1 == Gp
    if spec.n <= 4:
        # literal brackets of monomials, no subspace machinery
        lit = oracles.literal_lower_lie_dim(spec, t["t_L"] - 1)
        t["literal_dim_KG^[t_L-1]"] = lit
        ok = ok and lit > 0
    return ok, t


def _theorem2(spec, rng, samples):
    e = lie.verify_theorem2(spec)
    return e.passed, e.witness


def _exponent(spec, rng, samples):
    e = lie.exponent_check(spec, rng, samples=max(samples, EXPONENT_SAMPLES))
    return e.passed, e.witness


def _lie_metabelian(spec, rng, samples):
    e = lie.lie_centrally_metabelian_check(spec)
    return e.passed, e.witness


def _section(spec, rng, samples):
    sec = wreath.construct_section(spec)
    W = wreath.build_wreath(spec.n - 2)
    q = sec.quotient
    explicit = q.order <= tables.EXPLICIT_LIMIT
    cert = wreath.certificate(sec, W, explicit=explicit)
    cert.pop("normal_subgroup")
    cert.pop("generators")
    K = spec.a_order // 2
    cert["wreath_class"] = tables.nilpotency_class(W)
    cert["wreath_center_order"] = len(tables.center(W))
    cert["witness_nontrivial"] = wreath.witness_is_nontrivial(sec)
    cert["coset_check"] = "all products" if sec.F.order <= tables.EXHAUSTIVE_LIMIT else "generator products"
    ok = (
        q.order == sec.expected_order == 1 << (K + spec.n - 2)
        and cert["class"] == K == cert["wreath_class"]
        and cert["wreath_center_order"] == 2
        and cert["fingerprint_match"]
        and cert["witness_nontrivial"]
    )
    if explicit:
        phi = cert.pop("isomorphism")
        cert["explicit_isomorphism"] = phi is not None
        ok = ok and phi is not None
    return ok, cert


def _telescope(spec, rng, samples):
    t = wreath.telescope_terms(spec)
    ok = wreath.telescope_identity_check(spec)
    w = {k: str(v) for k, v in t.items()}
    w["product=power"] = t["product"] == t["power"]
    return ok, w


def _nonmembership(spec, rng, samples):
    K = spec.a_order // 2
    A = units.standard_A(spec)
    b = alg.b_element(spec)
    x = (b * A.inverse()) ** K
    N = wreath.normal_subgroup_elements(spec)
    AK = A ** K
    Ab = (A * b) ** K
    w = {
        "(bA^-1)^K": str(x),
        "normal_subgroup_order": len(N),
        "second_component_(Ab)^K": str(Ab.second),
        "second_component_A^K": str(AK.second),
    }
    ok = x not in set(N)
    if _second_component_claim_applies(spec):
        ok = ok and Ab.second == alg.subgroup_sum(spec, 2) and AK.x2 == (1 << spec.a_order) - 1
    return ok, w


# ---------------------------------------------------------------------------
# registry, in the order the results build on each other

REGISTRY: Dict[str, Check] = {c.check_id: c for c in [
    Check("group_relations",
          "G = <a, b | a^(2^(n-1)) = 1, b^2 = a^e, b^-1 a b = a^c> has order 2^n and G' = <a^2>.",
          "Check the relations on the normal form; close all commutators [g, h] by brute force.",
          _group_relations),
    Check("mul_oracle",
          "(x1 + x2 b)(y1 + y2 b) = (x1 y1 + x2 bar(y2) alpha) + (x2 bar(y1) + x1 y2) b.",
          "Compare with convolution over the explicit group multiplication: all pairs of elements "
          "of support at most 2 at n = 3, plus random pairs.",
          _mul_oracle, n_max=6),
    Check("bar_automorphism",
          "x -> bar(x) = b^-1 x b is an algebra automorphism of order 2.",
          "Random pairs: bar(xy) = bar(x) bar(y), bar(bar(x)) = x, and agreement with b^-1 x b "
          "computed by convolution.",
          _bar_automorphism, n_max=6),
    Check("unit_criterion",
          "x is a unit iff its augmentation is 1; augmentation-0 elements are nilpotent.",
          "Exhaustive at n = 3, random otherwise; inverses are checked by convolution and "
          "augmentation-0 elements by x^(2^n) = 0.",
          _unit_criterion, n_max=6),
    Check("norm_multiplicative",
          "phi(x) = x1 bar(x1) + x2 bar(x2) alpha is a homomorphism U(KG) -> U(K<a>).",
          "Random unit pairs: phi(xy) = phi(x) phi(y).",
          _norm_multiplicative, n_max=6),
    Check("inverse_lemma",
          "f^-1 = (bar(f1) + f2 b) R^-1 with R = phi(f).",
          "All 128 units at n = 3, random units otherwise; f f^-1 = f^-1 f = 1 by convolution.",
          _inverse_lemma, n_max=6),
    Check("power_formula",
          "x^(2^k) has a closed form in x1, x2, their conjugates and alpha.",
          "Random elements: closed form equals k repeated squarings, k = 1..n-1.",
          _power_formula, n_max=6),
    Check("conj_lemma",
          "For self-conjugated h and a unit f with R = phi(f): f^-1 h f = t1 + t2 b, "
          "t1 = h1 + h2 (f1 f2 + bar(f1) bar(f2)) alpha R^-1, t2 = h2 (bar(f1)^2 + f2^2 alpha) R^-1.",
          "Random self-conjugated h and units f against inversion and multiplication; "
          "b^A = 1 + R + R b for D, S.",
          _conj_lemma, n_max=6),
    Check("h_subgroup",
          "H(KG) = {h1 + h2 b : h1 + h2 = 1} is a subgroup, ker psi = C_H(b), and C_H(b) is "
          "elementary abelian.",
          "Closure on random pairs; exhaustive scan of H for the kernel and the squares.",
          _h_subgroup, families="ds", n_max=5),
    Check("order_of_A_ds",
          "For A = a + (1+a) b the order of A is equal to 2^(n-1), and the second component of "
          "A^(2^(n-2)) is the sum of all elements of <a>.",
          "Repeated squaring of A; the power formula gives the same A^(2^(n-2)).",
          _order_of_A, families="ds"),
    Check("order_of_A_q",
          "For A = a^(2^(n-3)+1) + (1+a) b the order of A is equal to 2^(n-1), and for n >= 4 the "
          "second component of A^(2^(n-2)) is the sum of all elements of <a> (it is 0 in Q8).",
          "Repeated squaring of A; the power formula gives the same A^(2^(n-2)).",
          _order_of_A, families="q"),
    Check("tower_ds",
          "b^(A^k) = 1 + R^k + R^k b with R = 1 + a + bar(a); b^(A^(2^(n-2))) = b.",
          "Closed form against k-fold conjugation by explicit inversion, k = 1..2^(n-2).",
          _tower, families="ds"),
    Check("tower_q",
          "b^(A^k) = beta sum_{i=-1}^{k-2} (b^2 R)^i + (b^2 R)^k b, beta = a^(q+1) + a^-(q+1) + "
          "a^(q+2) + a^-(q+2), q = 2^(n-3); A^(2^(n-2)) commutes with b.",
          "Closed form against k-fold conjugation by explicit inversion, k = 1..2^(n-2).",
          _tower, families="q"),
    Check("tower_structure",
          "The conjugates b^(A^i) commute pairwise; they are involutions in D, S, and (b, k.A)^2 = 1 "
          "in Q; in Q the second component of b^(A^k) is 1 only for k = 2^(n-2).",
          "Direct products of the tower elements for all i, j <= 2^(n-2).",
          _tower_structure, n_max=6),
    Check("direct_decomposition",
          "<b, b^A, ..., b^(A^(2^(n-2)-1))> is the direct product of the 2^(n-2) cyclic groups "
          "of order 2.",
          "Gray-code walk over all 2^(2^(n-2)) - 1 nonzero exponent vectors; no product is 1, and "
          "none avoiding b equals b.",
          _direct_decomposition, families="ds", n_max=6),
    Check("quaternion_intersection",
          "In Q, any two of the cyclic groups <b^(A^i)>, 0 <= i < 2^(n-2), intersect in <b^2>.",
          "Enumerate each cyclic group and intersect pairwise.",
          _quaternion_intersection, families="q", n_max=6),
    Check("collapse_identity",
          "(b, k.A, A^(2^m)) = (b, (k + 2^m).A) and (b, A^(2^m)) = (b, 2^m.A).",
          "Direct unit arithmetic for all k <= 2^(n-2) and 0 <= m <= n-2.",
          _collapse_identity, n_max=5),
    Check("lie_indices",
          "t_L(KG) = t^L(KG) = |G'| + 1 and t(G') = |G'|.",
          "Subspace saturation of the Lie powers over GF(2); literal monomial brackets for n <= 4.",
          _lie_indices),
    Check("theorem2",
          "cl U(G) = |G'| for G generalized quaternion, via t_L = 2^(n-2) + 1 and "
          "[b, (2^(n-2) - 1).a] = a sum(<a^2>) b.",
          "Lie bracket chain, subspace saturation, and the explicit unit group at n = 3.",
          _theorem2, families="q"),
    Check("exponent",
          "The exponent of U(KG) equals exp G = 2^(n-1).",
          "All units at n = 3, random units plus a otherwise; t^L <= 1 + 2^(n-2) is recorded.",
          _exponent, n_max=5),
    Check("lie_metabelian",
          "[[[x, y], [z, w]], v] = 0 for all x, y, z, w, v in KG.",
          "All 5-tuples of group elements, memoized on the distinct bracket values.",
          _lie_metabelian, n_max=5),
    Check("section",
          "F / N is isomorphic to C2 wr G' with F = <b, b^A, ..., A> and N = <A^(2^(n-2))> "
          "(times <b^2> in Q); its order is 2^(2^(n-2) + n - 2) and its class 2^(n-2).",
          "Closure of F, normality check, coset quotient, comparison with the explicit wreath "
          "product; explicit isomorphism up to order 512, invariants beyond.",
          _section, n_max=5),
    Check("telescope",
          "(b, A, A^2, ..., A^(2^(n-3))) = b b^A ... b^(A^(2^(n-2)-1)) = (b A^-1)^(2^(n-2)) A^(2^(n-2)), "
          "the first equality modulo <b^2>.",
          "Direct unit arithmetic.",
          _telescope, families="q", n_max=6),
    Check("nonmembership",
          "(b A^-1)^(2^(n-2)) does not lie in <b^2><A^(2^(n-2))>; for n >= 4, (A b)^(2^(n-2)) has "
          "second component sum(<a^2>).",
          "Enumerate the normal subgroup and test membership.",
          _nonmembership, families="q", n_max=5),
]}

CHECK_IDS = tuple(REGISTRY)


def explain(check_id: str) -> str:
    try:
        c = REGISTRY[check_id]
    except KeyError:
        raise UnknownCheck(check_id) from None
    fams = ", ".join(Family.parse(f).name.lower() for f in c.families)
    return (
        f"{c.check_id}\n"
        f"  claim:    {c.claim}\n"
        f"  strategy: {c.strategy}\n"
        f"  scope:    {fams}; n = 3..{c.n_max}\n"
    )


# ---------------------------------------------------------------------------
# driver


def check_rng(seed: int, check_id: str, spec: GroupSpec) -> random.Random:
    # one stream per (check, group), so results do not depend on scheduling
    return random.Random(f"{seed}:{check_id}:{spec.family.value}:{spec.n}")


def run_check(check_id: str, spec: GroupSpec, seed: int = 0, samples: int = DEFAULT_SAMPLES) -> Entry:
    c = REGISTRY[check_id]
    reason = c.applies(spec)
    if reason is not None:
        return Entry(check_id, spec.family.value, spec.n, SKIPPED, {"reason": reason})
    t0 = time.perf_counter()
    try:
        ok, witness = c.run(spec, check_rng(seed, check_id, spec), samples)
    except Exception as exc:  # an exception inside a check is a failed claim, not a crash
        ok, witness = False, {"exception": f"{type(exc).__name__}: {exc}"}
    return Entry(check_id, spec.family.value, spec.n, PASS if ok else FAIL, witness or {}, time.perf_counter() - t0)


def _run_group(args) -> List[Entry]:
    family, n, checks, seed, samples = args
    spec = GroupSpec(Family.parse(family), n)
    return [run_check(c, spec, seed, samples) for c in checks]


def _normalize_checks(checks) -> List[str]:
    if checks is None or checks == "all":
        return list(CHECK_IDS)
    if isinstance(checks, str):
        checks = [c for c in checks.split(",") if c.strip()]
    out = []
    for c in checks:
        c = c.strip()
        if c == "all":
            return list(CHECK_IDS)
        if c not in REGISTRY:
            raise UnknownCheck(c)
        if c not in out:
            out.append(c)
    return out


def _normalize_families(families) -> List[Family]:
    if families is None or families == "all":
        return list(Family)
    if isinstance(families, (str, Family)):
        families = [families]
    out: List[Family] = []
    for f in families:
        if f == "all":
            return list(Family)
        fam = Family.parse(f)
        if fam not in out:
            out.append(fam)
    return sorted(out, key=lambda f: "dsq".index(f.value))


def run_campaign(families="all", n_min: int = 3, n_max: int = 5, checks="all", seed: int = 0,
                 output_path: Optional[str] = None, fmt: str = "json", jobs: int = 1,
                 samples: int = DEFAULT_SAMPLES) -> VerificationReport:
    """Run ``checks`` on every group in the grid; exit status is ``report.exit_code``."""
    lo, hi = SUPPORTED_N
    if n_min > n_max:
        raise UnsupportedRange(f"empty range n = {n_min}..{n_max}")
    if n_min < lo or n_max > hi:
        raise UnsupportedRange(f"n = {n_min}..{n_max} outside the supported range {lo}..{hi}")
    if fmt not in ("json", "text"):
        raise ValueError(f"unknown format {fmt!r}")
    fams = _normalize_families(families)
    ids = _normalize_checks(checks)
    report = VerificationReport(
        seed=seed,
        parameters={
            "families": [f.value for f in fams],
            "n_min": n_min,
            "n_max": n_max,
            "checks": ids,
            "samples": samples,
        },
        generated_at=_dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
    )
    if ids:
        work = [(s.family.value, s.n, ids, seed, samples) for s in all_specs(n_min, n_max, fams)]
        if jobs and jobs > 1 and len(work) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_run_group, work))
        else:
            results = [_run_group(w) for w in work]
        for batch in results:
            report.entries.extend(batch)
    report.sort()
    if output_path is not None:
        write_report(report, output_path, fmt)
    return report


def write_report(report: VerificationReport, path: str, fmt: str = "json") -> None:
    text = report.dumps() if fmt == "json" else report.to_text()
    try:
        d = os.path.dirname(os.path.abspath(path))
        os.makedirs(d, exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write report to {path}: {exc.strerror}") from exc
