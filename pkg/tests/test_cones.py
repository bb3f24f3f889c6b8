import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from modcone.cones import (
    INCONCLUSIVE,
    PROVED_NEF,
    cone_member,
    enumerate_fcurve_functionals,
    enumerate_fcurves_0n,
    f_ample_check,
    f_nef_check,
    nef_sufficient,
    quadruple_vector,
)
from modcone.picard import ModuliSignature, divisor_class, lincomb, sep, zero_class
from modcone.slopes import canonical_class_mg, named_class
from conftest import mg_classes

# frozen after a first enumeration run; re-derived below by brute force
N24_FUNCTIONALS = 248


def mg(g, a, bs):
    sig = ModuliSignature(g)
    return divisor_class(sig, a, (), -Fraction(bs[0]), {sep(i): -Fraction(b) for i, b in enumerate(bs[1:], start=1)})


def test_faber_list_g3():
    fs = enumerate_fcurve_functionals(3)
    vectors = {(f.a_coeff, f.b_coeffs) for f in fs}
    assert vectors == {(1, (-12, 1)), (0, (2, -1)), (0, (0, 1))}
    assert len(fs) == 3


def test_g4_contains_the_unique_quadruple():
    fs = [f for f in enumerate_fcurve_functionals(4) if f.family == "quadruple"]
    assert len(fs) == 1
    assert fs[0].indices == (1, 1, 1, 1)
    assert fs[0].b_coeffs == (0, 4, -3)


def test_g24_count_regression():
    assert len(enumerate_fcurve_functionals(24)) == N24_FUNCTIONALS


def test_g24_count_brute_force():
    # independent recount: collect coefficient vectors of all four families
    g = 24

    def vec(contribs):
        v = [0] * (g // 2 + 1)
        for m, c in contribs:
            v[min(m, g - m)] += c
        return tuple(v)

    seen = {(1, vec([(0, -12), (1, 1)]))}
    for i in range(1, g):
        seen.add((0, vec([(0, 2), (i, -1)])))
    for i in range(1, g):
        for j in range(1, g):
            if i + j <= g - 1:
                seen.add((0, vec([(i, 1), (j, 1), (i + j, -1)])))
    for i, j, k in itertools.product(range(1, g), repeat=3):
        l = g - i - j - k
        if l >= 1:
            seen.add((0, vec([(i, 1), (j, 1), (k, 1), (l, 1), (i + j, -1), (i + k, -1), (i + l, -1)])))
    assert len(seen) == N24_FUNCTIONALS


@given(st.integers(4, 14), st.data())
def test_quadruple_orderings_agree(g, data):
    parts = data.draw(
        st.lists(st.integers(1, g - 3), min_size=4, max_size=4).filter(lambda q: sum(q) == g)
    )
    base = quadruple_vector(g, *parts)
    for perm in itertools.permutations(parts):
        assert quadruple_vector(g, *perm) == base


def test_partition_counts():
    assert len(enumerate_fcurves_0n(4)) == 1
    assert len(enumerate_fcurves_0n(5)) == 10
    assert len(enumerate_fcurves_0n(6)) == 65


def brute_force_partitions(n):
    found = set()
    for assign in itertools.product(range(4), repeat=n):
        if set(assign) == {0, 1, 2, 3}:
            blocks = [tuple(i + 1 for i in range(n) if assign[i] == b) for b in range(4)]
            found.add(frozenset(blocks))
    return found


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_partitions_match_brute_force(n):
    got = enumerate_fcurves_0n(n)
    assert len(got) == len(set(got))
    assert {frozenset(p) for p in got} == brute_force_partitions(n)
    for blocks in got:
        assert sorted(x for b in blocks for x in b) == list(range(1, n + 1))
        assert [b[0] for b in blocks] == sorted(b[0] for b in blocks)


def test_partitions_require_n4():
    with pytest.raises(ValueError):
        enumerate_fcurves_0n(3)


def test_fnef_nef_class_on_boundary():
    # 10l - d0 - 2d1 sits on the boundary of the cone for g = 3, 4
    for g in (3, 4):
        d = mg(g, 10, [1, 2] + [0] * (g // 2 - 1))
        res = f_nef_check(d)
        assert res.passed
        tail = [f for f in enumerate_fcurve_functionals(g) if f.family == "elliptic_tail"][0]
        assert tail.evaluate(d) == 0


def test_fnef_sparse_ten_lambda_fails_beyond_g4():
    # for g >= 5 the same sparse class meets the (2,2) pair curve negatively,
    # so only the full-boundary variant 10l - d0 - 2*sum(delta_i) stays F-nef
    d = mg(5, 10, [1, 2, 0])
    res = f_nef_check(d)
    assert not res.passed
    assert any(f.indices == (2, 2) and v == -2 for f, v in res.violations)
    for g in range(5, 11):
        full = mg(g, 10, [1] + [2] * (g // 2))
        assert f_nef_check(full).passed
        assert nef_sufficient(full) == PROVED_NEF


def test_fnef_canonical_fails():
    res = f_nef_check(canonical_class_mg(10))
    assert not res.passed
    values = {f.describe(): v for f, v in res.violations}
    assert values["a - 12*b0 + b1"] == -8


def test_fnef_lambda_passes():
    assert f_nef_check(divisor_class(ModuliSignature(6), 1)).passed


def test_fample_cornalba_harris():
    for g in (3, 5, 8):
        for a, expect in [(10, False), (11, False), (Fraction(23, 2), True), (12, True)]:
            d = mg(g, a, [1] * (g // 2 + 1))
            assert f_ample_check(d).passed is expect
        d = mg(g, 11, [1] * (g // 2 + 1))
        assert f_nef_check(d).passed  # nef exactly from a >= 11


def test_fample_lambda_fails():
    res = f_ample_check(divisor_class(ModuliSignature(6), 1))
    assert not res.passed


@settings(max_examples=60)
@given(mg_classes(), st.fractions(min_value=Fraction(1, 7), max_value=9, max_denominator=7))
def test_checks_scale_invariant(d, c):
    assert f_nef_check(d).passed == f_nef_check(d.scaled(c)).passed
    assert f_ample_check(d).passed == f_ample_check(d.scaled(c)).passed


@settings(max_examples=60)
@given(mg_classes())
def test_ample_implies_nef(d):
    if f_ample_check(d).passed:
        assert f_nef_check(d).passed


def test_nef_sufficient_examples():
    g = 5
    twelve = mg(g, 12, [1, 1, 1])
    assert nef_sufficient(twelve) == PROVED_NEF
    ten = mg(4, 10, [1, 2, 0])
    assert f_nef_check(ten).passed  # the class is F-nef...
    assert nef_sufficient(ten) == INCONCLUSIVE  # ...but b_2 < b_0 blocks the criterion
    assert nef_sufficient(divisor_class(ModuliSignature(4), 1)) == PROVED_NEF


def test_cone_member_generator_itself():
    h = named_class("hyperelliptic3")
    sig = h.signature
    d0 = divisor_class(sig, 0, (), 1)
    d1 = divisor_class(sig, 0, (), 0, {sep(1): 1})
    cert = cone_member(h, [d0, d1, h])
    assert cert.multipliers == (0, 0, 1)
    assert cert.residual.is_zero()


def test_cone_member_nef3():
    lam = divisor_class(ModuliSignature(3), 1)
    cert = cone_member(lam, [lam, named_class("nef3a"), named_class("nef3b")])
    assert cert.multipliers == (1, 0, 0)


def test_cone_member_not_in_cone():
    sig = ModuliSignature(3)
    neg = divisor_class(sig, -1)
    assert cone_member(neg, [divisor_class(sig, 1), named_class("nef3a")]) is None


def test_cone_member_empty_generators():
    sig = ModuliSignature(3)
    assert cone_member(zero_class(sig), []).multipliers == ()
    with pytest.raises(ValueError):
        cone_member(divisor_class(sig, 1), [])


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_cone_member_recombines(data):
    g = data.draw(st.integers(3, 6))
    gens = [data.draw(mg_classes(g=g)) for _ in range(data.draw(st.integers(1, 3)))]
    mults = [data.draw(st.fractions(min_value=0, max_value=5, max_denominator=4)) for _ in gens]
    target = lincomb(list(zip(mults, gens)))
    cert = cone_member(target, gens)
    assert cert is not None
    assert lincomb(list(zip(cert.multipliers, gens))) == target
