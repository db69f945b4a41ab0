import random
from fractions import Fraction

import pytest

from tdeform import (DiscreteLaw, DomainError, MalformedInputError, MixtureSpec, TParam,
                     bdlp_cumulants, c_transform, classical_conv, classical_cumulants,
                     hypergeometric_series, mixture_moments, moments_discrete)
from tdeform.classical import (binomial_moment_sum, convolve_laws, gamma_moments, levy_moments,
                               normal_moments, poisson_moments)
from tdeform.series import rising
from tdeform.special import laguerre_series, hermite_series

F = Fraction
M1 = TParam.generic(-1)


def random_law(rng, atoms=5):
    k = rng.randint(1, atoms)
    ws = [rng.randint(1, 6) for _ in range(k)]
    total = sum(ws)
    xs = rng.sample(range(-12, 13), k)
    return DiscreteLaw(tuple((F(x, rng.randint(1, 4)), F(w, total)) for x, w in zip(xs, ws)))


def test_law_validation():
    with pytest.raises(DomainError):
        DiscreteLaw(((1, F(1, 2)),))
    with pytest.raises(DomainError):
        DiscreteLaw(((1, 2), (2, -1)))
    with pytest.raises(DomainError):
        DiscreteLaw(())
    with pytest.raises(MalformedInputError):
        DiscreteLaw.from_json({"atoms": [[1]]})
    law = DiscreteLaw(((F(-1, 2), F(1, 3)), (2, F(2, 3))))
    assert DiscreteLaw.from_json(law.to_json()) == law


def test_point_masses():
    m = classical_conv(moments_discrete(DiscreteLaw.point_mass(2), 5),
                       moments_discrete(DiscreteLaw.point_mass(-3), 5))
    assert m.coeffs == tuple(F(-1) ** k for k in range(6))


def test_bernoulli_sum():
    b = DiscreteLaw(((0, F(1, 2)), (1, F(1, 2))))
    m = classical_conv(moments_discrete(b, 4), moments_discrete(b, 4))
    assert m.coeffs == (1, 1, F(3, 2), F(5, 2), F(9, 2))


def test_random_pairs_against_enumeration():
    rng = random.Random(17)
    for _ in range(20):
        x, y = random_law(rng), random_law(rng)
        mx, my = moments_discrete(x, 10), moments_discrete(y, 10)
        expected = moments_discrete(convolve_laws(x, y), 10)
        assert classical_conv(mx, my) == expected
        assert binomial_moment_sum(mx, my) == expected


def test_classical_conv_needs_unit():
    with pytest.raises(DomainError):
        classical_conv(moments_discrete(DiscreteLaw.point_mass(1), 2).scale(2),
                       moments_discrete(DiscreteLaw.point_mass(1), 2))


def test_known_moment_families():
    assert normal_moments(1, 8) == hermite_series(M1, 8)
    assert gamma_moments(F(5, 2), 6) == laguerre_series(F(5, 2), M1, 6)
    assert normal_moments(F(1, 2), 4).coeffs == (1, 0, F(1, 2), 0, F(3, 4))
    assert poisson_moments(1, 5).coeffs == (1, 1, 2, 5, 15, 52)  # Bell numbers
    assert poisson_moments(2, 2, jump=3).coeffs == (1, 6, 9 * 6)


def test_gaussian_and_gamma_sums():
    assert classical_conv(normal_moments(F(1, 3), 10), normal_moments(F(2, 3), 10)) == normal_moments(1, 10)
    assert classical_conv(gamma_moments(1, 10), gamma_moments(F(3, 2), 10)) == gamma_moments(F(5, 2), 10)


def test_levy_moments_pieces():
    assert levy_moments(0, 1, [], 1, 6) == normal_moments(1, 6)
    assert levy_moments(0, 0, [(2, F(3, 2))], 1, 5) == poisson_moments(F(3, 2), 5, 2)
    compensated = levy_moments(0, 0, [(F(1, 2), 2)], 1, 4)
    assert compensated[1] == 0
    assert levy_moments(F(3, 4), 0, [], 2, 3).coeffs == (1, F(3, 2), F(9, 4), F(27, 8))


def test_mixture_examples():
    spec = MixtureSpec(((F(1), F(3)),), (F(2), F(1, 2)))
    m = mixture_moments(spec, 6)
    assert m.coeffs == tuple(rising(1, k) / rising(3, k) * rising(2, k) * rising(F(1, 2), k)
                             for k in range(7))
    assert hypergeometric_series(spec.hypergeometric_spec(), 6) == m
    only_gamma = MixtureSpec((), (F(3),))
    assert mixture_moments(only_gamma, 5) == gamma_moments(3, 5)
    with pytest.raises(DomainError):
        only_gamma.hypergeometric_spec()
    with pytest.raises(DomainError):
        MixtureSpec(((F(2), F(2)),), ())
    assert MixtureSpec.from_json(spec.to_json()) == spec


def test_product_of_independent_factors():
    # moments of a product of independent variables multiply coefficientwise
    beta = MixtureSpec(((F(2), F(5)),), ())
    ga = MixtureSpec((), (F(3, 2),))
    both = MixtureSpec(((F(2), F(5)),), (F(3, 2),))
    a, b, c = (mixture_moments(s, 7) for s in (beta, ga, both))
    assert c.coeffs == tuple(x * y for x, y in zip(a.coeffs, b.coeffs))


def test_cumulant_bridge():
    rng = random.Random(4)
    for m in [gamma_moments(F(3, 2), 10), normal_moments(F(5, 4), 10),
              moments_discrete(random_law(rng), 10)]:
        cs = classical_cumulants(m)
        assert [n * c for n, c in enumerate(cs, start=1)] == list(c_transform(m, M1).kappas)


def test_bdlp_examples():
    assert bdlp_cumulants([0, F(1, 2)], 1) == [0, 1]
    assert bdlp_cumulants([F(1, 2), F(1, 3)], 3) == [F(3, 2), 2]
    assert bdlp_cumulants([1, 1, 1], 0) == [0, 0, 0]
    with pytest.raises(DomainError):
        bdlp_cumulants([1], -1)
