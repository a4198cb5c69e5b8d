import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jordanbounds.boundvalue import INF, ONE, BoundValue, _coprime_basis, bv_min
from jordanbounds.extnat import INF as EN_INF
from jordanbounds.extnat import ExtNat


def test_extnat_arithmetic():
    assert ExtNat(2) + ExtNat(3) == ExtNat(5)
    assert ExtNat(2) + EN_INF == EN_INF
    assert ExtNat(3) * EN_INF == EN_INF
    assert ExtNat(0) * EN_INF == ExtNat(0)
    assert ExtNat(4) < EN_INF
    assert not (EN_INF < EN_INF)
    assert EN_INF <= EN_INF
    assert ExtNat(7) == 7
    assert str(EN_INF) == "inf"
    assert int(ExtNat(9)) == 9
    with pytest.raises(OverflowError):
        int(EN_INF)
    with pytest.raises(ValueError):
        ExtNat(-1)


def test_construction_and_identity():
    assert BoundValue.from_int(1).is_one
    assert BoundValue.from_int(12).to_int() == 12
    assert ONE.to_int() == 1
    assert (ONE * ONE).is_one
    with pytest.raises(ValueError):
        BoundValue.from_int(0)


def test_equality_is_mathematical():
    assert BoundValue.from_int(4).pow(24) == BoundValue.from_int(2).pow(48)
    assert BoundValue.from_int(4096).pow(4) == BoundValue.from_int(2).pow(48)
    assert BoundValue.from_int(6).pow(2) == BoundValue.from_int(2) * BoundValue.from_int(18)
    assert BoundValue.from_int(6).pow(2) != BoundValue.from_int(35)
    assert BoundValue.from_int(10).pow(10 ** 6) == BoundValue.from_int(100).pow(500_000)


def test_comparisons():
    assert BoundValue.from_int(2).pow(100) < BoundValue.from_int(3).pow(100)
    assert BoundValue.from_int(2).pow(1000) > BoundValue.from_int(10).pow(300)
    assert BoundValue.from_int(2).pow(10 ** 6) < BoundValue.from_int(2).pow(10 ** 6) * 3
    assert INF > BoundValue.from_int(10).pow(10 ** 9)
    assert INF == INF
    # values needing a precision escalation to separate
    a = BoundValue.from_int(2).pow(10 ** 6)
    b = BoundValue.from_int(2).pow(10 ** 6) * BoundValue.from_int(2)
    assert a < b
    assert bv_min(b, a, b) == a


def test_infinite_arithmetic():
    assert (INF * 5).is_infinite
    assert (BoundValue.from_int(5) * INF).is_infinite
    assert INF.pow(3).is_infinite
    assert INF.pow(0).is_one


def test_digit_cap_controls_expansion():
    big = BoundValue.from_int(10).pow(100)
    assert big.to_int(max_digits=50) is None
    assert big.to_int(max_digits=200) == 10 ** 100
    lo, hi = big.digits10_interval()
    assert lo <= 101 <= hi
    huge = BoundValue.from_int(7).pow(10 ** 7)
    assert huge.to_int(max_digits=1_000_000) is None


def test_log10_interval_encloses_truth():
    mpmath.mp.dps = 60
    cases = [BoundValue.from_int(2).pow(100),
             BoundValue.from_int(1234567).pow(89) * BoundValue.from_int(3),
             ONE]
    for val in cases:
        lo, hi = val.log10_interval()
        true = mpmath.mpf(0)
        for b, e in val.factors:
            true += e * mpmath.log10(b)
        assert lo <= float(true) <= hi
        assert hi - lo < 1e-6


def test_render_and_json_round_trip():
    v = BoundValue.from_int(74814184347878) * BoundValue.from_int(256).pow(2816)
    data = v.to_json()
    assert data["infinite"] is False
    rebuilt = BoundValue((int(b), int(e)) for b, e in data["factors"])
    assert rebuilt == v
    assert data["decimal"] is not None  # ~6800 digits, below the cap
    small = BoundValue.from_int(390624)
    assert small.render() == "390624"
    assert INF.to_json() == {"infinite": True, "factors": None, "log10": None,
                             "decimal": None}
    sym = BoundValue.from_int(3).pow(10 ** 7)
    assert "^" in sym.render(max_digits=100)


def test_coprime_basis_properties():
    basis = _coprime_basis([12, 18, 8])
    assert basis == sorted(basis)
    for i, p in enumerate(basis):
        for q in basis[i + 1:]:
            assert math.gcd(p, q) == 1
    for n in (12, 18, 8):
        m = n
        for p in basis:
            while m % p == 0:
                m //= p
        assert m == 1


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(min_value=2, max_value=10 ** 6), min_size=1, max_size=6))
def test_coprime_basis_random(nums):
    basis = _coprime_basis(nums)
    for i, p in enumerate(basis):
        assert p > 1
        for q in basis[i + 1:]:
            assert math.gcd(p, q) == 1
    for n in nums:
        m = n
        for p in basis:
            while m % p == 0:
                m //= p
        assert m == 1


@settings(max_examples=150, deadline=None)
@given(st.lists(st.tuples(st.integers(2, 50), st.integers(0, 8)), max_size=4),
       st.lists(st.tuples(st.integers(2, 50), st.integers(0, 8)), max_size=4))
def test_mul_matches_integer_arithmetic(fa, fb):
    a = BoundValue(fa)
    b = BoundValue(fb)
    assert (a * b).to_int() == a.to_int() * b.to_int()
    assert (a == b) == (a.to_int() == b.to_int())
    assert a.compare(b) == (a.to_int() > b.to_int()) - (a.to_int() < b.to_int())
