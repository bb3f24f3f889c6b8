from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from modcone.picard import ModuliSignature, divisor_class, lincomb, same_coefficients, sep
from modcone.slopes import (
    INFINITE,
    brill_noether_class,
    canonical_class_mg,
    curve_profile,
    general_type_certificate_mg,
    k3_slope_test,
    named_class,
    pair,
    rho,
    slope,
)
from conftest import mg_classes


def test_rho_values():
    assert rho(3, 1, 2) == -1
    assert rho(10, 4, 12) == 0
    assert rho(4, 0, 4) == 4


def test_slope_fixtures():
    assert slope(named_class("k10")) == 7
    assert slope(named_class("hyperelliptic3")) == 9
    assert slope(named_class("d22")) == Fraction(17121, 2636)


def test_slope_infinite_cases():
    sig = ModuliSignature(4)
    assert slope(divisor_class(sig, 1)) is INFINITE
    # one boundary coefficient missing means min b_i = 0
    assert slope(divisor_class(sig, 10, (), -1, {sep(1): -2})) is INFINITE
    # negative b like a positive delta coefficient is inadmissible
    assert slope(divisor_class(sig, 7, (), -1, {sep(1): 1, sep(2): -1})) is INFINITE


@settings(max_examples=80)
@given(mg_classes(positive=True), st.fractions(min_value=Fraction(1, 9), max_value=20, max_denominator=9))
def test_slope_scaling_invariant(d, c):
    assert slope(d.scaled(c)) == slope(d)


def test_brill_noether_hyperelliptic_proportionality():
    bn = brill_noether_class(3, 1, 2)
    assert bn == divisor_class(ModuliSignature(3), 6, (), Fraction(-2, 3), {sep(1): -2})
    assert lincomb([(Fraction(3, 2), bn)]) == named_class("hyperelliptic3")


@pytest.mark.parametrize("g,r,d", [(3, 1, 2), (11, 1, 6), (23, 1, 12), (24, 4, 23)])
def test_brill_noether_slope_formula(g, r, d):
    assert rho(g, r, d) == -1
    assert slope(brill_noether_class(g, r, d)) == 6 + Fraction(12, g + 1)


def test_brill_noether_requires_rho_minus_one():
    with pytest.raises(ValueError, match="rho"):
        brill_noether_class(10, 4, 12)


def test_canonical_class():
    assert canonical_class_mg(3) == divisor_class(ModuliSignature(3), 13, (), -2, {sep(1): -3})
    for g in range(4, 31):
        assert slope(canonical_class_mg(g)) == Fraction(13, 2)
    assert canonical_class_mg(24).coefficient(sep(12)) == -2


def test_named_class_unknown():
    with pytest.raises(ValueError):
        named_class("nope")


def test_d22_flags():
    d22 = named_class("d22")
    assert d22.lower_bound_keys == frozenset(sep(i) for i in range(2, 12))
    assert d22.coefficient(sep(1)) == Fraction(-14511, 2636)


def test_pair_k3_pencil():
    assert pair(named_class("k10"), curve_profile("B", 10)) == -1


def test_pair_log_canonical_threshold():
    # 13*lambda - (2 - alpha)*total boundary meets the cubic pencil in 11a - 9
    def k_alpha(alpha, g=7):
        ds = {sep(i): alpha - 2 for i in range(1, g // 2 + 1)}
        return divisor_class(ModuliSignature(g), 13, (), alpha - 2, ds)

    for alpha in (Fraction(0), Fraction(7, 10), Fraction(9, 11), Fraction(1)):
        assert pair(k_alpha(alpha), curve_profile("R", 7)) == 11 * alpha - 9
    assert pair(k_alpha(Fraction(9, 11)), curve_profile("R", 7)) == 0


def test_pair_zero_cases():
    lam = divisor_class(ModuliSignature(5), 1)
    assert pair(lam, curve_profile("C0", 5)) == 0
    assert pair(lam, curve_profile("C1", 5)) == 0


def test_pair_signature_mismatch():
    with pytest.raises(ValueError):
        pair(named_class("k10"), curve_profile("B", 9))


@settings(max_examples=50)
@given(mg_classes(g=6), mg_classes(g=6), st.sampled_from(["B", "R", "C0", "C1"]))
def test_pair_bilinear(d1, d2, name):
    profile = curve_profile(name, 6)
    s = lincomb([(2, d1), (3, d2)])
    assert pair(s, profile) == 2 * pair(d1, profile) + 3 * pair(d2, profile)


def test_k3_slope_test_k10():
    rep = k3_slope_test(named_class("k10"))
    assert rep.slope == 7 and rep.threshold == Fraction(78, 11)
    assert rep.slope_below_threshold and rep.b_pairing == -1 and rep.b_pairing_negative


def test_k3_slope_test_boundary_case():
    rep = k3_slope_test(brill_noether_class(11, 1, 6))
    assert rep.slope == rep.threshold
    assert not rep.slope_below_threshold and not rep.b_pairing_negative


def test_k3_slope_test_canonical_g24():
    rep = k3_slope_test(canonical_class_mg(24))
    assert rep.threshold == Fraction(162, 25)
    assert not rep.slope_below_threshold  # 162/25 < 13/2


@settings(max_examples=60)
@given(st.integers(4, 30), st.data())
def test_b_pairing_iff_slope_deficit(g, data):
    # for b_i >= b_0 > 0 the K3 pairing sign detects the slope threshold
    b0 = data.draw(st.fractions(min_value=Fraction(1, 5), max_value=5, max_denominator=6))
    a = data.draw(st.fractions(min_value=0, max_value=40, max_denominator=6))
    deltas = {}
    for i in range(1, g // 2 + 1):
        bump = data.draw(st.fractions(min_value=0, max_value=3, max_denominator=4))
        deltas[sep(i)] = -(b0 + bump)
    d = divisor_class(ModuliSignature(g), a, (), -b0, deltas)
    deficit = slope(d) < 6 + Fraction(12, g + 1)
    assert (pair(d, curve_profile("B", g)) < 0) == deficit


def test_certificate_d22():
    cert = general_type_certificate_mg(named_class("d22"))
    assert cert.alpha == 2
    assert cert.beta == Fraction(13, 1318)
    assert cert.boundary[1] == 2 * Fraction(14511, 2636) - 3


def test_certificate_k10_infeasible():
    assert general_type_certificate_mg(named_class("k10")) is None


def test_certificate_bn24():
    cert = general_type_certificate_mg(brill_noether_class(24, 4, 23))
    assert cert is not None and cert.alpha > 0 and cert.beta > 0


@settings(max_examples=25, deadline=None)
@given(st.integers(4, 12), st.data())
def test_certificate_property(g, data):
    # slope < 13/2 with margin, b_i >= b_0 for i >= 2 and b_1 >= 3/2 b_0
    b0 = data.draw(st.fractions(min_value=Fraction(1, 3), max_value=4, max_denominator=5))
    ratio = data.draw(st.fractions(min_value=0, max_value=6, max_denominator=8))
    a = b0 * ratio  # slope a/b0 <= 6 < 13/2 with margin
    deltas = {sep(1): -(Fraction(3, 2) * b0 + data.draw(st.fractions(min_value=0, max_value=2, max_denominator=3)))}
    for i in range(2, g // 2 + 1):
        deltas[sep(i)] = -(b0 + data.draw(st.fractions(min_value=0, max_value=2, max_denominator=3)))
    d = divisor_class(ModuliSignature(g), a, (), -b0, deltas)
    cert = general_type_certificate_mg(d)
    assert cert is not None
    pieces = [(cert.alpha, d), (cert.beta, divisor_class(d.signature, 1)),
              (cert.boundary[0], divisor_class(d.signature, 0, (), 1))]
    for i in range(1, g // 2 + 1):
        pieces.append((cert.boundary[i], divisor_class(d.signature, 0, (), 0, {sep(i): 1})))
    assert same_coefficients(lincomb(pieces), canonical_class_mg(g))
