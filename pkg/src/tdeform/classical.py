"""The t = -1 bridge to classical probability.

Moment series M_X(z) = sum E[X^k] z^k of concrete laws are combined by
⊞^(-1), which is classical convolution.  Also here: product-law moments for
beta/gamma mixtures and the background driving Lévy process relation
c_n(Z(s)) = s n c_n(X) in real cumulant form.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .errors import DomainError, MalformedInputError
from .series import RationalLike, Series, rising, to_fraction
from .special import HypergeometricSpec
from .tconv import TParam, tconv

MINUS_ONE = TParam.generic(-1)


@dataclass(frozen=True)
class DiscreteLaw:
    atoms: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        atoms = tuple((to_fraction(x), to_fraction(w)) for x, w in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not atoms:
            raise DomainError("a law needs at least one atom")
        if any(w <= 0 for _, w in atoms):
            raise DomainError("atom weights must be positive")
        if sum(w for _, w in atoms) != 1:
            raise DomainError("atom weights must sum to 1")

    @classmethod
    def point_mass(cls, c: RationalLike) -> "DiscreteLaw":
        return cls(((to_fraction(c), Fraction(1)),))

    def to_json(self) -> dict:
        return {"atoms": [[str(x), str(w)] for x, w in self.atoms]}

    @classmethod
    def from_json(cls, obj) -> "DiscreteLaw":
        if not isinstance(obj, dict) or not isinstance(obj.get("atoms"), list):
            raise MalformedInputError("DiscreteLaw JSON needs an 'atoms' list")
        try:
            return cls(tuple((x, w) for x, w in obj["atoms"]))
        except (TypeError, ValueError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise MalformedInputError(f"bad atom list: {exc}") from None


def moments_discrete(law: DiscreteLaw, order: int) -> Series:
    m = [Fraction(0)] * (order + 1)
    for x, w in law.atoms:
        xk = Fraction(1)
        for k in range(order + 1):
            m[k] += w * xk
            xk *= x
    return Series(tuple(m), order)


def convolve_laws(x: DiscreteLaw, y: DiscreteLaw) -> DiscreteLaw:
    """Law of X + Y for independent X, Y by full enumeration of atom pairs."""
    acc: dict[Fraction, Fraction] = defaultdict(Fraction)
    for a, wa in x.atoms:
        for b, wb in y.atoms:
            acc[a + b] += wa * wb
    return DiscreteLaw(tuple(sorted(acc.items())))


def classical_conv(mx: Series, my: Series) -> Series:
    """Moments of X + Y from those of X and Y: ⊞^t at t = -1."""
    if mx.coeffs[0] != 1 or my.coeffs[0] != 1:
        raise DomainError("moment series need m_0 = 1")
    return tconv(mx, my, MINUS_ONE)


def binomial_moment_sum(mx: Series, my: Series) -> Series:
    """sum_{i+j=k} C(k, i) a_i b_j written out directly (independent of tconv)."""
    n = mx.order
    return Series(tuple(sum(comb(k, i) * mx[i] * my[k - i] for i in range(k + 1))
                        for k in range(n + 1)), n)


def gamma_moments(b: RationalLike, order: int) -> Series:
    """Ga(b): E[X^k] = (b)_k rising."""
    b = to_fraction(b)
    if b <= 0:
        raise DomainError("gamma shape must be > 0")
    return Series(tuple(rising(b, k) for k in range(order + 1)), order)


def normal_moments(variance: RationalLike, order: int) -> Series:
    """N(0, v): E[X^(2k)] = (2k-1)!! v^k, odd moments vanish."""
    v = to_fraction(variance)
    if v < 0:
        raise DomainError("variance must be >= 0")
    out = [Fraction(0)] * (order + 1)
    dfact = Fraction(1)
    for k in range(order // 2 + 1):
        out[2 * k] = dfact * v ** k
        dfact *= 2 * k + 1
    return Series(tuple(out), order)


def _stirling2_rows(n: int) -> list[list[int]]:
    rows = [[1]]
    for i in range(1, n + 1):
        prev = rows[-1] + [0]
        rows.append([0] + [j * prev[j] + prev[j - 1] for j in range(1, i + 1)])
    return rows


def poisson_moments(mu: RationalLike, order: int, jump: RationalLike = 1) -> Series:
    """Moments of jump * N, N ~ Poisson(mu), via Touchard polynomials."""
    mu = to_fraction(mu)
    jump = to_fraction(jump)
    if mu < 0:
        raise DomainError("Poisson mean must be >= 0")
    s2 = _stirling2_rows(order)
    out = []
    for k in range(order + 1):
        out.append(jump ** k * sum(s2[k][j] * mu ** j for j in range(k + 1)))
    return Series(tuple(out), order)


def levy_moments(gamma: RationalLike, a: RationalLike, nu: Iterable[tuple], s: RationalLike,
                 order: int) -> Series:
    """Moments of X(s) for the triplet (gamma, a, nu) with finite-support nu.

    X(s) is built from independent pieces (drift, Gaussian part, one scaled
    Poisson count per atom, compensation for atoms with |x| <= 1) and their
    moment series are combined with the binomial formula.
    """
    s = to_fraction(s)
    drift = to_fraction(gamma) * s
    total = normal_moments(to_fraction(a) * s, order)
    for x, w in nu:
        x, w = to_fraction(x), to_fraction(w)
        if abs(x) <= 1:
            drift -= w * s * x
        total = binomial_moment_sum(total, poisson_moments(w * s, order, x))
    point = Series(tuple(drift ** k for k in range(order + 1)), order)
    return binomial_moment_sum(total, point)


@dataclass(frozen=True)
class MixtureSpec:
    """Beta(b, a - b) factors given as (b, a) pairs, and Ga(b) factors."""

    beta_pairs: tuple[tuple[Fraction, Fraction], ...] = ()
    gamma_params: tuple[Fraction, ...] = ()

    def __post_init__(self):
        pairs = tuple((to_fraction(b), to_fraction(a)) for b, a in self.beta_pairs)
        gammas = tuple(to_fraction(b) for b in self.gamma_params)
        object.__setattr__(self, "beta_pairs", pairs)
        object.__setattr__(self, "gamma_params", gammas)
        for b, a in pairs:
            if b <= 0 or a - b <= 0:
                raise DomainError(f"beta pair (b={b}, a={a}) needs b > 0 and a - b > 0")
        if any(b <= 0 for b in gammas):
            raise DomainError("gamma parameters must be > 0")

    def hypergeometric_spec(self) -> HypergeometricSpec:
        """The matching t = -1 hypergeometric parameters.

        Requires an even number of gamma factors; otherwise the series has an
        alternating sign (-1)^k relative to the moments.
        """
        if len(self.gamma_params) % 2:
            raise DomainError("hypergeometric form needs an even number of gamma factors")
        upper = tuple(b for b, _ in self.beta_pairs) + self.gamma_params
        lower = tuple(a for _, a in self.beta_pairs)
        return HypergeometricSpec(upper, lower, MINUS_ONE)

    def to_json(self) -> dict:
        return {"beta": [[str(b), str(a)] for b, a in self.beta_pairs],
                "gamma": [str(b) for b in self.gamma_params]}

    @classmethod
    def from_json(cls, obj) -> "MixtureSpec":
        if not isinstance(obj, dict):
            raise MalformedInputError("MixtureSpec JSON must be an object")
        beta = obj.get("beta", [])
        gamma = obj.get("gamma", [])
        if not isinstance(beta, list) or not isinstance(gamma, list):
            raise MalformedInputError("'beta' and 'gamma' must be lists")
        try:
            pairs = tuple((b, a) for b, a in beta)
        except (TypeError, ValueError):
            raise MalformedInputError("'beta' entries must be [b, a] pairs") from None
        return cls(pairs, tuple(gamma))


def mixture_moments(spec: MixtureSpec, order: int) -> Series:
    """E[X^k] = prod (b_s)_k / prod (a_r)_k (rising factorials)."""
    out = []
    for k in range(order + 1):
        c = Fraction(1)
        for b, a in spec.beta_pairs:
            c *= rising(b, k) / rising(a, k)
        for b in spec.gamma_params:
            c *= rising(b, k)
        out.append(c)
    return Series(tuple(out), order)


def bdlp_cumulants(cx: Sequence[RationalLike], s: RationalLike) -> list[Fraction]:
    """c_n(Z(s)) = s n c_n(X) for the background driving process Z of X."""
    s = to_fraction(s)
    if s < 0:
        raise DomainError("time s must be >= 0")
    return [s * n * to_fraction(c) for n, c in enumerate(cx, start=1)]

