from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from modcone.picard import (
    DELTA0,
    ModuliSignature,
    canonicalize,
    deserialize,
    divisor_class,
    expand,
    lincomb,
    orbit_indices,
    same_coefficients,
    sep,
    serialize,
    symmetric_class,
    symmetric_keys,
    symmetrize,
    zero_class,
)
from conftest import divisor_classes, stable_signatures, valid_separating_indices


def test_canonicalize_complement_genus():
    assert canonicalize(sep(7), ModuliSignature(10)) == sep(3)


def test_canonicalize_already_canonical():
    assert canonicalize(sep(1), ModuliSignature(3)) == sep(1)


def test_canonicalize_complement_labels():
    got = canonicalize(sep(3, {1}), ModuliSignature(4, 2))
    assert got == sep(1, {2})


def test_canonicalize_rejects_small_genus_zero_side():
    with pytest.raises(ValueError):
        canonicalize(sep(0, {1}), ModuliSignature(3, 2))


def test_canonicalize_rejects_out_of_range_genus():
    with pytest.raises(ValueError):
        canonicalize(sep(5), ModuliSignature(4))


def test_canonicalize_tie_keeps_label_one():
    assert canonicalize(sep(1, {2}), ModuliSignature(2, 2)) == sep(1, {1})


@given(stable_signatures(), st.data())
def test_canonicalize_idempotent(sig, data):
    indices = valid_separating_indices(sig)
    if not indices:
        return
    idx = data.draw(st.sampled_from(indices))
    once = canonicalize(idx, sig)
    assert canonicalize(once, sig) == once


def test_lincomb_cancellation():
    sig = ModuliSignature(5)
    d = divisor_class(sig, 3, (), -1, {sep(1): Fraction(1, 2)})
    assert lincomb([(1, d), (-1, d)]).is_zero()


def test_lincomb_doubling():
    sig = ModuliSignature(5)
    k = divisor_class(sig, 13, (), -2, {sep(1): -3, sep(2): -2})
    assert lincomb([(2, k)]).lam == 26


def test_lincomb_brill_noether_rescale():
    # (3/2) * (6l - (2/3)d0 - 2d1) is the hyperelliptic class 9l - d0 - 3d1
    sig = ModuliSignature(3)
    bn = divisor_class(sig, 6, (), Fraction(-2, 3), {sep(1): -2})
    h = divisor_class(sig, 9, (), -1, {sep(1): -3})
    assert lincomb([(Fraction(3, 2), bn)]) == h


def test_lincomb_signature_mismatch():
    with pytest.raises(ValueError):
        lincomb([(1, zero_class(ModuliSignature(3))), (1, zero_class(ModuliSignature(4)))])


@given(divisor_classes(), divisor_classes())
def test_lincomb_commutes(a, b):
    if a.signature != b.signature:
        return
    assert lincomb([(1, a), (1, b)]) == lincomb([(1, b), (1, a)])


@given(divisor_classes())
def test_scale_by_zero(d):
    assert d.scaled(0).is_zero()


def test_serialize_k10_document():
    sig = ModuliSignature(10)
    k10 = divisor_class(
        sig, 7, (), -1, {sep(1): -5, sep(2): -9, sep(3): -12, sep(4): -14, sep(5): -15}
    )
    import json

    doc = json.loads(serialize(k10))
    assert doc["lambda"] == "7"
    assert doc["delta"] == {
        "0": "-1", "1": "-5", "2": "-9", "3": "-12", "4": "-14", "5": "-15"
    }


def test_serialize_zero_class():
    import json

    doc = json.loads(serialize(zero_class(ModuliSignature(2, 1))))
    assert doc == {"g": 2, "n": 1, "lambda": "0", "psi": ["0"], "delta": {}}


@given(divisor_classes())
def test_round_trip(d):
    assert deserialize(serialize(d)) == d


def test_deserialize_rejects_noncanonical_key():
    text = '{"g": 10, "n": 0, "lambda": "1", "psi": [], "delta": {"7": "1"}}'
    with pytest.raises(ValueError, match="'7'"):
        deserialize(text)


def test_deserialize_rejects_malformed_json():
    with pytest.raises(ValueError, match="malformed"):
        deserialize("{not json")


def test_deserialize_rejects_float_coefficients():
    with pytest.raises(ValueError):
        deserialize('{"g": 3, "n": 0, "lambda": "1.5", "psi": [], "delta": {}}')


def test_lower_bound_flags_round_trip():
    sig = ModuliSignature(5)
    d = divisor_class(sig, 1, (), -1, {sep(1): -1, sep(2): -1}, lower_bounds=[sep(2)])
    back = deserialize(serialize(d))
    assert back == d and back.lower_bound_keys == frozenset({sep(2)})


def test_divisor_class_rejects_floats():
    with pytest.raises(TypeError):
        divisor_class(ModuliSignature(3), lam=1.5)


# symmetric classes -----------------------------------------------------------


def test_orbit_indices_tie_dedup():
    # g = 2, n = 2: delta_{1:{1}} and delta_{1:{2}} are the same class
    assert orbit_indices(1, 1, ModuliSignature(2, 2)) == [sep(1, (1,))]
    # g = 2, n = 4, size-2 sets: 6 subsets fold into 3 classes
    assert len(orbit_indices(1, 2, ModuliSignature(2, 4))) == 3


def test_symmetric_keys_small():
    keys = symmetric_keys(ModuliSignature(2, 2))
    assert (0, 2) in keys and (1, 0) in keys and (1, 1) in keys
    assert (1, 2) not in keys  # complement of (1, 0)


@given(stable_signatures(max_g=5, max_n=4), st.data())
def test_expand_symmetrize_inverse(sig, data):
    keys = symmetric_keys(sig)
    small = st.fractions(min_value=-9, max_value=9, max_denominator=6)
    delta_sym = {k: data.draw(small) for k in data.draw(st.lists(st.sampled_from(keys), max_size=3))} if keys else {}
    sym = symmetric_class(
        sig,
        lam=data.draw(small),
        psi_sum=data.draw(small) if sig.n else 0,
        delta0=data.draw(small),
        delta_sym=delta_sym,
    )
    assert symmetrize(expand(sym)) == sym


def test_symmetrize_rejects_asymmetric_psi():
    sig = ModuliSignature(2, 2)
    d = divisor_class(sig, 0, (1, 2), 0, {})
    with pytest.raises(ValueError):
        symmetrize(d)


def test_symmetrize_rejects_asymmetric_boundary():
    sig = ModuliSignature(1, 3)
    d = divisor_class(sig, 0, (0, 0, 0), 0, {sep(0, (1, 2)): 1})
    with pytest.raises(ValueError):
        symmetrize(d)


def test_expand_keeps_flags_on_zero_coefficients():
    sig = ModuliSignature(3, 2)
    sym = symmetric_class(sig, delta_sym={(1, 0): 0}, lower_bounds=[(1, 0)])
    full = expand(sym)
    assert sep(1) in full.lower_bound_keys
    assert symmetrize(full) == sym


def test_same_coefficients_ignores_flags():
    sig = ModuliSignature(5)
    a = divisor_class(sig, 1, (), -1, {sep(1): -1})
    b = divisor_class(sig, 1, (), -1, {sep(1): -1}, lower_bounds=[sep(1)])
    assert same_coefficients(a, b) and a != b
