"""t-deformed cumulants and their inverse map, plus power sums and the
real-form classical cumulants used at t = -1.

In finite mode only kappa_1..kappa_d are returned; beyond degree d the
d-deformed transform is not additive.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DomainError, MalformedInputError, TruncationMismatchError
from .series import (RationalLike, Series, falling_table, formal_exp, formal_log,
                     make_series, rationals_to_json, to_fraction, z_dlog)
from .tconv import TParam, as_tparam, e_transform, tparam_from_json


@dataclass(frozen=True)
class CumulantVector:
    kappas: tuple[Fraction, ...]
    t: TParam

    def __getitem__(self, n: int) -> Fraction:
        """1-based access: cv[1] is kappa_1."""
        if n < 1:
            raise IndexError("cumulants are indexed from 1")
        return self.kappas[n - 1]

    def __len__(self):
        return len(self.kappas)

    def to_json(self) -> dict:
        return {"t": self.t.to_json(), "kappas": rationals_to_json(self.kappas)}

    @classmethod
    def from_json(cls, obj) -> "CumulantVector":
        if not isinstance(obj, dict) or "kappas" not in obj or "t" not in obj:
            raise MalformedInputError("CumulantVector JSON needs 't' and 'kappas'")
        if not isinstance(obj["kappas"], list):
            raise MalformedInputError("'kappas' must be a list")
        return cls(tuple(to_fraction(k) for k in obj["kappas"]), tparam_from_json(obj["t"]))


def c_transform(a: Series, t) -> CumulantVector:
    """kappa_i with t C^t[A] = M[E^t[A]]."""
    t = as_tparam(t)
    if a.coeffs[0] != 1:
        raise DomainError("cumulants need constant term 1")
    m = z_dlog(e_transform(a, t))
    inv_t = 1 / t.value
    top = t.top(a.order)
    return CumulantVector(tuple(inv_t * m[i] for i in range(1, top + 1)), t)


def from_cumulants(kappas, order: Optional[int] = None, t=None) -> Series:
    """The unique A with constant term 1 and the given cumulants.

    ``kappas`` may be a CumulantVector (carrying its own t) or a plain sequence
    together with ``t``.  Missing high cumulants are taken as zero.
    """
    if isinstance(kappas, CumulantVector):
        t = kappas.t if t is None else as_tparam(t)
        ks = list(kappas.kappas)
    else:
        if t is None:
            raise DomainError("t is required when kappas is a plain sequence")
        t = as_tparam(t)
        ks = [to_fraction(k) for k in kappas]
    if order is None:
        order = len(ks)
    if len(ks) > order:
        raise TruncationMismatchError(f"{len(ks)} cumulants exceed order {order}")
    if t.finite_mode and any(ks[t.d:]):
        raise DomainError(f"finite mode d={t.d} has only {t.d} cumulants")
    tv = t.value
    log_e = [Fraction(0)] + [-tv * k / (i + 1) for i, k in enumerate(ks)]
    e = formal_exp(make_series(log_e, order))
    top = t.top(order)
    ff = falling_table(tv, top)
    out = [Fraction(0)] * (order + 1)
    tk = Fraction(1)
    for k in range(top + 1):
        out[k] = e[k] * ff[k] / tk
        tk *= tv
    return Series(tuple(out), order)


def power_sums(a: Series) -> list[Fraction]:
    """p_1..p_N, the coefficients of -z (log A)'."""
    return list(z_dlog(a).coeffs[1:])


def from_power_sums(ps: Sequence[RationalLike], order: Optional[int] = None) -> Series:
    """Inverse of power_sums: A = exp(-sum p_k z^k / k)."""
    ps = [to_fraction(p) for p in ps]
    if order is None:
        order = len(ps)
    return formal_exp(make_series([0] + [-p / (k + 1) for k, p in enumerate(ps)], order))


def classical_cumulants(moments: Series) -> list[Fraction]:
    """c_1..c_N, the coefficients of log of the exponential moment series.

    Over a real variable these are r_n / i^n, so n c_n equals the
    (-1)-deformed cumulant kappa_n.
    """
    if moments.coeffs[0] != 1:
        raise DomainError("moment series needs m_0 = 1")
    return list(formal_log(e_transform(moments, TParam.generic(-1))).coeffs[1:])


def leading_coefficient(i: int, t) -> Fraction:
    """t^(i-1) / (t)_i, the weight of p_i in kappa_i."""
    tv = as_tparam(t).value
    return tv ** (i - 1) / falling_table(tv, i)[i]
