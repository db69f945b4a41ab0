"""Infinitesimal generators of ⊞^t-semigroups.

A semigroup Q_s becomes, after phi_t, a family exp(s eta) of ordinary series,
so its generator acts as phi_t^-1 ∘ (multiply by eta) ∘ phi_t.  Everything
here is exact except ``eta_estimate`` and the float half of the forward-equation
check, which are finite-difference diagnostics.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Optional, Sequence

from .errors import DomainError, MalformedInputError, NonConvergenceError, ParameterError
from .series import (RationalLike, Series, formal_exp, formal_log, make_series, mul, one,
                     to_fraction)
from .special import binomial_series, hermite_semigroup, laguerre_series
from .tconv import TParam, as_tparam, check_support, iota, iota_inv, phi_t, phi_t_inv, tconv


@dataclass(frozen=True)
class LevyTriplet:
    """(gamma, a, nu) with nu a finite list of (position, weight) atoms."""

    gamma: Fraction = Fraction(0)
    a: Fraction = Fraction(0)
    nu: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gamma", to_fraction(self.gamma))
        object.__setattr__(self, "a", to_fraction(self.a))
        nu = tuple((to_fraction(x), to_fraction(w)) for x, w in self.nu)
        object.__setattr__(self, "nu", nu)
        if self.a < 0:
            raise DomainError("Gaussian coefficient a must be >= 0")
        for x, w in nu:
            if x == 0:
                raise DomainError("Lévy measure atoms must sit away from 0")
            if w <= 0:
                raise DomainError("Lévy measure weights must be positive")

    def to_json(self) -> dict:
        return {"gamma": str(self.gamma), "a": str(self.a),
                "nu": [[str(x), str(w)] for x, w in self.nu]}

    @classmethod
    def from_json(cls, obj) -> "LevyTriplet":
        if not isinstance(obj, dict):
            raise MalformedInputError("LevyTriplet JSON must be an object")
        nu = obj.get("nu", [])
        if not isinstance(nu, list):
            raise MalformedInputError("'nu' must be a list")
        try:
            atoms = tuple((x, w) for x, w in nu)
        except (TypeError, ValueError):
            raise MalformedInputError("'nu' entries must be [x, w] pairs") from None
        return cls(to_fraction(obj.get("gamma", "0")), to_fraction(obj.get("a", "0")), atoms)


FAMILIES = ("hermite", "laguerre", "binomial", "levy")


@dataclass(frozen=True)
class SeriesSemigroup:
    """A ⊞^t-semigroup s -> Q_s, either a built-in family or a sampled callback.

    ``lam`` is the rate of the binomial family Q_s = B_(s lam); ``triplet`` is
    required for the Lévy family, which lives at t = -1.
    """

    kind: str
    t: TParam = field(default_factory=lambda: TParam.generic(-1))
    lam: Fraction = Fraction(1)
    triplet: Optional[LevyTriplet] = None
    callback: Optional[Callable[[Fraction], Series]] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "t", as_tparam(self.t))
        object.__setattr__(self, "lam", to_fraction(self.lam))
        if self.kind == "sampled":
            if self.callback is None:
                raise ParameterError("sampled semigroup needs a callback")
        elif self.kind not in FAMILIES:
            raise ParameterError(f"unknown semigroup family {self.kind!r}")
        if self.kind == "levy":
            if self.triplet is None:
                raise ParameterError("Lévy semigroup needs a triplet")
            if self.t != TParam.generic(-1):
                raise ParameterError("Lévy semigroups live at t = -1")

    @classmethod
    def sampled(cls, callback: Callable[[Fraction], Series], t=TParam.generic(-1)) -> "SeriesSemigroup":
        return cls("sampled", as_tparam(t), callback=callback)

    def member(self, s: RationalLike, order: int) -> Series:
        """Q_s at truncation ``order``."""
        s = to_fraction(s)
        if s < 0:
            raise DomainError("semigroup time must be >= 0")
        if self.kind == "sampled":
            return self.callback(s)
        if s == 0:
            return one(order)
        if self.kind == "hermite":
            return hermite_semigroup(s, self.t, order)
        if self.kind == "laguerre":
            return laguerre_series(s, self.t, order)
        if self.kind == "binomial":
            return binomial_series(s * self.lam, self.t, order)
        return evolve(one(order), levy_eta(self.triplet, order), s, self.t)


def hermite_eta(t, order: int) -> Series:
    """-z^2 / (2t)."""
    tv = as_tparam(t).value
    return make_series([0, 0, -1 / (2 * tv)], order) if order >= 2 else make_series([0], order)


def laguerre_eta(t, order: int) -> Series:
    """t log(1 - z/t)."""
    tv = as_tparam(t).value
    return formal_log(make_series([1, -1 / tv], order) if order >= 1 else one(order)).scale(tv)


def binomial_eta(lam: RationalLike, order: int) -> Series:
    """phi_t(B_(s lam)) = exp(-s lam z), so eta = -lam z for every t."""
    lam = to_fraction(lam)
    return make_series([0, -lam], order) if order >= 1 else make_series([0], order)


def levy_eta(triplet: LevyTriplet, order: int) -> Series:
    """-gamma z + a z^2/2 + sum_atoms w (e^(-zx) - 1 + zx 1_{|x|<=1})."""
    c = [Fraction(0)] * (order + 1)
    if order >= 1:
        c[1] = -triplet.gamma
    if order >= 2:
        c[2] = triplet.a / 2
    for x, w in triplet.nu:
        for k in range(1, order + 1):
            if k == 1 and abs(x) <= 1:
                continue  # compensated
            c[k] += w * (-x) ** k / factorial(k)
    return Series(tuple(c), order)


def eta_closed_form(sg: SeriesSemigroup, order: int) -> Series:
    if sg.kind == "hermite":
        return hermite_eta(sg.t, order)
    if sg.kind == "laguerre":
        return laguerre_eta(sg.t, order)
    if sg.kind == "binomial":
        return binomial_eta(sg.lam, order)
    if sg.kind == "levy":
        return levy_eta(sg.triplet, order)
    raise ParameterError("sampled families have no closed form; use eta_estimate")


@dataclass(frozen=True)
class EtaEstimate:
    coeffs: tuple[float, ...]
    errors: tuple[float, ...]


def _neville_at_zero(xs: Sequence[float], ys: Sequence[float]) -> list[float]:
    """Diagonal of the Neville tableau evaluated at 0: entry j uses points 0..j."""
    p = list(ys)
    diag = [p[0]]
    n = len(xs)
    for level in range(1, n):
        for i in range(n - level):
            p[i] = (xs[i + level] * p[i] - xs[i] * p[i + 1]) / (xs[i + level] - xs[i])
        diag.append(p[0])
    return diag


def eta_estimate(sg: SeriesSemigroup, s_values: Sequence[float], order: int,
                 floor: float = 1e-12) -> EtaEstimate:
    """Richardson-extrapolated estimate of eta from sampled members.

    Each coefficient of (phi_t(Q_s) - 1)/s is extrapolated polynomially to
    s = 0; the error estimate is the change contributed by the last sample.
    Raises NonConvergenceError when that change grows instead of shrinking.
    """
    s_values = list(s_values)
    if len(s_values) < 2:
        raise DomainError("need at least two sample times")
    if any(s <= 0 for s in s_values) or any(a <= b for a, b in zip(s_values, s_values[1:])):
        raise DomainError("sample times must be positive and strictly decreasing")
    quotients = []
    for s in s_values:
        q = phi_t(sg.member(Fraction(s), order).with_order(order), sg.t)
        q = q - one(order)
        quotients.append([float(c) / s for c in q.coeffs])
    coeffs, errors = [], []
    for k in range(order + 1):
        diag = _neville_at_zero(s_values, [q[k] for q in quotients])
        steps = [abs(b - a) for a, b in zip(diag, diag[1:])]
        if len(steps) >= 2 and steps[-1] > steps[-2] and steps[-1] > floor * max(1.0, abs(diag[-1])):
            raise NonConvergenceError(
                f"coefficient {k}: extrapolation error grew from {steps[-2]:.3g} to {steps[-1]:.3g}")
        coeffs.append(diag[-1])
        errors.append(steps[-1])
    return EtaEstimate(tuple(coeffs), tuple(errors))


def _check_eta(eta: Series):
    if eta.coeffs[0] != 0:
        raise DomainError("eta must have zero constant term")


def generator_apply(eta: Series, a: Series, t) -> Series:
    """phi_t^-1(eta * phi_t(A))."""
    t = as_tparam(t)
    _check_eta(eta)
    out = phi_t_inv(mul(eta, phi_t(a, t)), t)
    if t.finite_mode:
        check_support(out, t.d, "generator output")
    return out


def evolve(a: Series, eta: Series, s: RationalLike, t) -> Series:
    """phi_t^-1(phi_t(A) exp(s eta)), i.e. A ⊞^t Q_s."""
    t = as_tparam(t)
    s = to_fraction(s)
    if s < 0:
        raise DomainError("evolution time must be >= 0")
    _check_eta(eta)
    return phi_t_inv(mul(phi_t(a, t), formal_exp(eta.scale(s))), t)


def forward_exact_residual(a: Series, eta: Series, s: RationalLike, t,
                           member: Optional[Series] = None) -> Fraction:
    """max_k |phi_t(A ⊞^t Q_s) - phi_t(A) exp(s eta)|, exact.

    ``member`` is Q_s; when omitted it is taken as evolve(1, eta, s).
    """
    t = as_tparam(t)
    s = to_fraction(s)
    if member is None:
        member = evolve(one(a.order), eta, s, t)
    lhs = phi_t(tconv(a, member, t), t)
    rhs = mul(phi_t(a, t), formal_exp(eta.scale(s)))
    return max(abs(c) for c in (lhs - rhs).coeffs)


def forward_residual(a: Series, eta: Series, s: RationalLike, h: float, t) -> float:
    """Central-difference residual of d/ds phi_t(F) = eta phi_t(F), F(s) = A ⊞^t Q_s."""
    t = as_tparam(t)
    if h <= 0:
        raise DomainError("step h must be > 0")
    s = to_fraction(s)
    hq = Fraction(h)
    if s - hq < 0:
        raise DomainError("s - h must be >= 0")

    def phi_f(u):
        return phi_t(evolve(a, eta, u, t), t)

    ahead, behind, here = phi_f(s + hq), phi_f(s - hq), phi_f(s)
    rhs = mul(eta, here)
    return max(abs(float((p - m) / (2 * hq)) - float(r))
               for p, m, r in zip(ahead.coeffs, behind.coeffs, rhs.coeffs))


def finite_free_generator_apply(f: Sequence[RationalLike], sg: SeriesSemigroup,
                                d: Optional[int] = None) -> list[Fraction]:
    """iota_d^-1 of the d-deformed generator applied to iota_d(f).

    The result is generally not monic (for the Hermite family it is
    -(1/2d) f''), so it is returned as a length d+1 coefficient list.
    """
    coeffs = [to_fraction(c) for c in f]
    if d is None:
        d = len(coeffs) - 1
    if not sg.t.finite_mode or sg.t.d != d:
        raise ParameterError(f"semigroup must be in finite mode with d={d}")
    if len(coeffs) != d + 1:
        raise DomainError(f"polynomial must have formal degree d={d}")
    a = iota(coeffs)
    out = generator_apply(eta_closed_form(sg, d), a, sg.t)
    return iota_inv(out, d)
