"""Named series families (binomial, Hermite, Laguerre, t-deformed
hypergeometric) plus a checker for the product/convolution equivalence of
hypergeometric identities."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import DomainError, MalformedInputError, ParameterError
from .series import (RationalLike, Series, dilate, falling, falling_table, mul,
                     rising, rationals_to_json, to_fraction)
from .tconv import TParam, as_tparam, iota, iota_inv, tconv, tparam_from_json


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def binomial_series(lam: RationalLike, t, order: int) -> Series:
    """(1 - lam z)^t: coefficient k is (-1)^k (t)_k lam^k / k!."""
    t = as_tparam(t)
    lam = to_fraction(lam)
    ff = falling_table(t.value, order)
    return Series(tuple((-lam) ** k * ff[k] / factorial(k) for k in range(order + 1)), order)


def hermite_series(t, order: int) -> Series:
    return hermite_semigroup(1, t, order)


def hermite_semigroup(s: RationalLike, t, order: int) -> Series:
    """H^(t) dilated by sqrt(s), written without square roots: the z^(2k)
    coefficient (-1)^k (t)_(2k) / (t^k (2k)!!) is multiplied by s^k."""
    t = as_tparam(t)
    s = to_fraction(s)
    if s < 0:
        raise DomainError("Hermite semigroup parameter must be >= 0")
    tv = t.value
    ff = falling_table(tv, order)
    out = [Fraction(0)] * (order + 1)
    for k in range(order // 2 + 1):
        out[2 * k] = (-s / tv) ** k * ff[2 * k] / _double_factorial(2 * k)
    return Series(tuple(out), order)


def laguerre_series(lam: RationalLike, t, order: int) -> Series:
    """L_lam^(t): coefficient k is (-1)^k (lam t)_k (t)_k / (t^k k!)."""
    t = as_tparam(t)
    lam = to_fraction(lam)
    if lam <= 0:
        raise DomainError("Laguerre parameter must be > 0")
    tv = t.value
    ff = falling_table(tv, order)
    fl = falling_table(lam * tv, order)
    return Series(tuple((-1) ** k * fl[k] * ff[k] / (tv ** k * factorial(k))
                        for k in range(order + 1)), order)


@dataclass(frozen=True)
class HypergeometricSpec:
    """Upper parameters b and lower parameters a of the t-deformed series."""

    upper: tuple[Fraction, ...] = ()
    lower: tuple[Fraction, ...] = ()
    t: TParam = field(default_factory=lambda: TParam.generic(-1))

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(to_fraction(b) for b in self.upper))
        object.__setattr__(self, "lower", tuple(to_fraction(a) for a in self.lower))
        object.__setattr__(self, "t", as_tparam(self.t))
        tv = self.t.value
        for a in self.lower:
            ta = tv * a
            if ta.denominator != 1 or ta < 0:
                continue
            # finite mode only evaluates k <= d, so only ta < d can vanish
            if not self.t.finite_mode or ta < self.t.d:
                raise ParameterError(
                    f"lower parameter {a} gives t*a = {ta}, a vanishing Pochhammer symbol")

    @property
    def sign(self) -> int:
        """(-1)^(i + j + 1) with i lower and j upper parameters."""
        return -1 if (len(self.lower) + len(self.upper)) % 2 == 0 else 1

    def to_json(self) -> dict:
        return {"upper": rationals_to_json(self.upper),
                "lower": rationals_to_json(self.lower),
                "t": self.t.to_json()}

    @classmethod
    def from_json(cls, obj) -> "HypergeometricSpec":
        if not isinstance(obj, dict):
            raise MalformedInputError("HypergeometricSpec JSON must be an object")
        upper = obj.get("upper", [])
        lower = obj.get("lower", [])
        if not isinstance(upper, list) or not isinstance(lower, list):
            raise MalformedInputError("'upper' and 'lower' must be lists")
        t = tparam_from_json(obj["t"]) if "t" in obj else TParam.generic(-1)
        return cls(tuple(to_fraction(b) for b in upper), tuple(to_fraction(a) for a in lower), t)


def hypergeometric_series(spec: HypergeometricSpec, order: int) -> Series:
    """sum_k (-1)^k (t)_k / k! * prod (t b)_k / prod (t a)_k z^k."""
    tv = spec.t.value
    top = spec.t.top(order)
    out = [Fraction(0)] * (order + 1)
    for k in range(top + 1):
        c = (-1) ** k * falling(tv, k) / factorial(k)
        for b in spec.upper:
            c *= falling(tv * b, k)
        for a in spec.lower:
            den = falling(tv * a, k)
            if den == 0:
                raise ParameterError(f"(t a)_k vanishes for a = {a}, k = {k}")
            c /= den
        out[k] = c
    return Series(tuple(out), order)


def generalized_hypergeometric(upper: Sequence[RationalLike], lower: Sequence[RationalLike],
                               order: int, scale: RationalLike = 1) -> Series:
    """Truncated pFq(upper; lower; scale * x) = sum (upper)^rising_k / (lower)^rising_k (scale x)^k / k!."""
    up = [to_fraction(u) for u in upper]
    lo = [to_fraction(l) for l in lower]
    scale = to_fraction(scale)
    out = []
    for k in range(order + 1):
        c = scale ** k / factorial(k)
        for u in up:
            c *= rising(u, k)
        for l in lo:
            den = rising(l, k)
            if den == 0:
                raise ParameterError(f"lower parameter {l} makes the series undefined at k = {k}")
            c /= den
        out.append(c)
    return Series(tuple(out), order)


@dataclass(frozen=True)
class ClosureReport:
    product_identity: bool
    convolution_identity: bool

    @property
    def equivalent(self) -> bool:
        return self.product_identity == self.convolution_identity


def compare_closure(spec1: HypergeometricSpec, spec2: HypergeometricSpec,
                    spec3: HypergeometricSpec, order: int,
                    scales: Sequence[RationalLike] = (1, 1, 1)) -> ClosureReport:
    """Evaluate both sides of the hypergeometric closure equivalence.

    The product side multiplies F(-t b; -t a; c x) series; the convolution side
    compares H(s c z) ⊞^t H(s c z) with H(s c z), s = (-1)^(i+j+1).  The
    scales c allow dilated instances such as the binomial family.
    """
    specs = (spec1, spec2, spec3)
    t = spec1.t
    if any(s.t != t for s in specs):
        raise ParameterError("all three specs must share t")
    tv = t.value
    cs = [to_fraction(c) for c in scales]
    fs = [generalized_hypergeometric([-tv * b for b in s.upper], [-tv * a for a in s.lower],
                                     order, c) for s, c in zip(specs, cs)]
    hs = [dilate(hypergeometric_series(s, order), s.sign * c) for s, c in zip(specs, cs)]
    top = t.top(order)
    product = mul(fs[0], fs[1]).with_order(top) == fs[2].with_order(top)
    return ClosureReport(product, tconv(hs[0], hs[1], t) == hs[2])


def iota_d(poly: Sequence[RationalLike], order: int | None = None) -> Series:
    """z^d f(1/z) for a monic f given by (a_0, ..., a_d)."""
    return iota(poly, order)


def iota_d_inv(a: Series, d: int) -> list[Fraction]:
    return iota_inv(a, d)
