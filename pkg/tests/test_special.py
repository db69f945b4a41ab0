from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from tdeform import (DomainError, HypergeometricSpec, ParameterError, TParam, c_transform,
                     compare_closure, dilate, hermite_semigroup, hermite_series,
                     hypergeometric_series, iota_d, iota_d_inv, laguerre_series, make_series,
                     tconv)
from tdeform.series import rising
from tdeform.special import binomial_series, generalized_hypergeometric

from conftest import GENERIC_TS, T_PARAMS

F = Fraction
M1 = TParam.generic(-1)
positive = st.fractions(min_value=F(1, 6), max_value=4, max_denominator=6)


def test_binomial_examples():
    assert binomial_series(1, M1, 4).coeffs == (1, 1, 1, 1, 1)
    assert binomial_series(0, F(7, 3), 3) == make_series([1], 3)
    assert binomial_series(2, TParam.finite(3), 3).coeffs == (1, -6, 12, -8)
    assert binomial_series(2, TParam.finite(3), 3) == iota_d([1, -6, 12, -8])
    assert binomial_series(2, TParam.finite(3), 5).coeffs[4:] == (0, 0)


def test_hermite_examples():
    assert hermite_series(M1, 8).coeffs == (1, 0, 1, 0, 3, 0, 15, 0, 105)
    assert hermite_semigroup(0, F(1, 2), 6) == make_series([1], 6)
    assert hermite_series(TParam.finite(2), 2).coeffs == (1, 0, F(-1, 2))
    assert hermite_semigroup(1, F(7, 3), 9) == hermite_series(F(7, 3), 9)
    with pytest.raises(DomainError):
        hermite_semigroup(-1, M1, 4)


def test_laguerre_examples():
    b = F(3, 2)
    assert laguerre_series(b, M1, 7).coeffs == tuple(rising(b, k) for k in range(8))
    with pytest.raises(DomainError):
        laguerre_series(0, M1, 3)


@pytest.mark.parametrize("d", range(1, 7))
def test_laguerre_finite_mode_is_laguerre_polynomial(d):
    lam = F(5, 3)
    poly = [(-1) ** k * comb(d, k) * rising(lam * d - k + 1, k) / F(d) ** k for k in range(d + 1)]
    assert laguerre_series(lam, TParam.finite(d), d) == iota_d(poly)


@pytest.mark.parametrize("t", T_PARAMS, ids=str)
def test_family_semigroups(t):
    n = 8
    assert tconv(binomial_series(F(1, 3), t, n), binomial_series(-2, t, n), t) == binomial_series(F(-5, 3), t, n)
    assert tconv(hermite_semigroup(F(1, 2), t, n), hermite_semigroup(3, t, n), t) == hermite_semigroup(F(7, 2), t, n)
    assert tconv(laguerre_series(1, t, n), laguerre_series(2, t, n), t) == laguerre_series(3, t, n)


@given(positive, st.sampled_from(GENERIC_TS))
def test_hermite_semigroup_cumulants(s, t):
    assert c_transform(hermite_semigroup(s, t, 8), t).kappas == (0, s, 0, 0, 0, 0, 0, 0)


def test_hypergeometric_specializations():
    n = 9
    for t in T_PARAMS:
        tv = t.value
        empty = HypergeometricSpec((), (), t)
        assert dilate(hypergeometric_series(empty, n), F(-2, 5)) == binomial_series(F(-2, 5), t, n)
        b = F(4, 3)
        lag = HypergeometricSpec((b,), (), t)
        assert dilate(hypergeometric_series(lag, n), 1 / tv) == laguerre_series(b, t, n)
        a = F(-5, 7)
        bessel = hypergeometric_series(HypergeometricSpec((), (a,), t), n)
        top = t.top(n)
        expected = [(-1) ** k * _falling(tv, k) / factorial(k) * tv ** k / _falling(tv * a, k)
                    if k <= top else 0 for k in range(n + 1)]
        assert list(dilate(bessel, tv).coeffs) == expected
        jac = hypergeometric_series(HypergeometricSpec((b,), (a,), t), n)
        assert list(jac.coeffs) == [
            (-1) ** k * _falling(tv, k) / factorial(k) * _falling(tv * b, k) / _falling(tv * a, k)
            if k <= top else 0 for k in range(n + 1)]


def _falling(x, k):
    out = F(1)
    for i in range(k):
        out *= x - i
    return out


@pytest.mark.parametrize("upper,lower", [((F(1, 2),), (F(-3, 4),)),
                                         ((F(1, 2), F(-2)), (F(-3, 4),)),
                                         ((), (F(-3, 4), F(5, 4))),
                                         ((), ())])
def test_hypergeometric_matches_pfq_translation(upper, lower):
    # with j upper and i lower parameters: H[b; a](z) = F(-t, -t b; -t a; (-1)^(j-i) z)
    t = F(7, 3)
    h = hypergeometric_series(HypergeometricSpec(upper, lower, t), 8)
    sign = (-1) ** abs(len(upper) - len(lower))
    assert h == generalized_hypergeometric([-t] + [-t * b for b in upper],
                                           [-t * a for a in lower], 8, sign)


def test_spec_validation_and_json():
    with pytest.raises(ParameterError):
        HypergeometricSpec((), (F(-2),), M1)  # t a = 2
    with pytest.raises(ParameterError):
        HypergeometricSpec((), (F(1, 2),), TParam.finite(4))  # d a = 2 < 4
    HypergeometricSpec((), (F(3, 2),), TParam.finite(4))  # d a = 6 >= d is harmless
    spec = HypergeometricSpec((F(1, 3), 2), (F(-1, 2),), F(1, 2))
    assert HypergeometricSpec.from_json(spec.to_json()) == spec
    assert spec.sign == 1
    assert HypergeometricSpec((), (), M1).sign == -1


def test_iota_examples():
    assert iota_d([1, -3, 2]).coeffs == (1, -3, 2)
    assert iota_d([1, 0, 0]) == make_series([1], 2)
    f = [F(1), F(-2, 3), F(5), F(1, 9)]
    assert iota_d_inv(iota_d(f), 3) == f


@pytest.mark.parametrize("t", T_PARAMS, ids=str)
def test_closure_binomial_instance(t):
    e = HypergeometricSpec((), (), t)
    good = compare_closure(e, e, e, 10, scales=(1, 2, 3))
    assert good.product_identity and good.convolution_identity and good.equivalent
    bad = compare_closure(e, e, e, 10, scales=(1, 2, 4))
    assert not bad.product_identity and not bad.convolution_identity and bad.equivalent


@pytest.mark.parametrize("t", T_PARAMS, ids=str)
def test_closure_laguerre_instance(t):
    b1, b2 = F(1, 3), F(5, 2)
    mk = lambda b: HypergeometricSpec((b,), (), t)
    good = compare_closure(mk(b1), mk(b2), mk(b1 + b2), 10)
    assert good.product_identity and good.convolution_identity
    bad = compare_closure(mk(b1), mk(b2), mk(b1 + b2 + F(1, 7)), 10)
    assert not bad.product_identity and not bad.convolution_identity


def test_closure_requires_shared_t():
    with pytest.raises(ParameterError):
        compare_closure(HypergeometricSpec((), (), M1), HypergeometricSpec((), (), F(1, 2)),
                        HypergeometricSpec((), (), M1), 4)
