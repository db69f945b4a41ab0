"""Convolution powers and exact law-of-large-numbers / central-limit diagnostics."""
from __future__ import annotations

import csv
import decimal
import io
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

from .cumulants import c_transform
from .errors import DomainError, PreconditionError
from .series import Series, dilate, power
from .special import binomial_series, hermite_series
from .tconv import as_tparam, phi_t, phi_t_inv, tconv


@dataclass(frozen=True)
class ConvergenceRow:
    m: int
    coeff_errors: tuple[Fraction, ...]
    first_index: int = 0  # index labelling coeff_errors[0]

    def to_json(self) -> dict:
        return {"m": self.m, "first_index": self.first_index,
                "errors": [str(e) for e in self.coeff_errors]}


def conv_power(a: Series, m: int, t) -> Series:
    """m-fold ⊞^t power, computed as an ordinary power in the phi_t picture."""
    t = as_tparam(t)
    if m < 1:
        raise DomainError("convolution power needs m >= 1")
    if a.coeffs[0] != 1:
        raise DomainError("convolution power needs constant term 1")
    return phi_t_inv(power(phi_t(a, t), m), t)


def conv_power_naive(a: Series, m: int, t) -> Series:
    out = a
    for _ in range(m - 1):
        out = tconv(out, a, t)
    return out


def lln_rescaled(a: Series, m: int, t) -> Series:
    """D_{1/m} of the m-fold power."""
    return dilate(conv_power(a, m, t), Fraction(1, m))


def lln_table(a: Series, t, ms: Iterable[int]) -> list[ConvergenceRow]:
    """Per-coefficient distance from the binomial limit with lam = kappa_1."""
    t = as_tparam(t)
    lam = c_transform(a, t)[1] if a.order >= 1 else Fraction(0)
    limit = binomial_series(lam, t, a.order)
    rows = []
    for m in ms:
        diff = lln_rescaled(a, m, t) - limit
        rows.append(ConvergenceRow(m, tuple(abs(c) for c in diff.coeffs), 0))
    return rows


def _check_clt(a: Series, t):
    ks = c_transform(a, t)
    if len(ks) < 2:
        raise PreconditionError("CLT diagnostics need truncation order >= 2")
    if ks[1] != 0 or ks[2] != 1:
        raise PreconditionError(
            f"CLT needs kappa_1 = 0 and kappa_2 = 1, got {ks[1]} and {ks[2]}")


def clt_scaled_cumulants(a: Series, t, m: int) -> list[Fraction]:
    """Cumulants of the sqrt(m)-rescaled m-fold power, kept rational.

    Entry n - 1 is kappa_n itself for even n and kappa_n squared for odd n,
    since the odd ones carry a factor m^(-n/2) that is irrational in general.
    """
    t = as_tparam(t)
    ks = c_transform(conv_power(a, m, t), t)
    out = []
    for n in range(1, len(ks) + 1):
        if n % 2 == 0:
            out.append(ks[n] / Fraction(m) ** (n // 2))
        else:
            out.append(ks[n] ** 2 / Fraction(m) ** n)
    return out


def clt_table(a: Series, t, ms: Iterable[int]) -> list[ConvergenceRow]:
    """Squared distance, cumulant by cumulant, from the Hermite limit (kappa = z^2)."""
    t = as_tparam(t)
    _check_clt(a, t)
    rows = []
    for m in ms:
        scaled = clt_scaled_cumulants(a, t, m)
        errs = []
        for n, v in enumerate(scaled, start=1):
            if n % 2 == 0:
                errs.append((v - (1 if n == 2 else 0)) ** 2)
            else:
                errs.append(v)
        rows.append(ConvergenceRow(m, tuple(errs), 1))
    return rows


def clt_coefficient_errors(a: Series, t, m: int) -> tuple[Fraction, ...]:
    """Direct coefficient distance from H^(t), available when m is a perfect square."""
    t = as_tparam(t)
    _check_clt(a, t)
    root = isqrt(m)
    if root * root != m:
        raise DomainError(f"m = {m} is not a perfect square")
    diff = dilate(conv_power(a, m, t), Fraction(1, root)) - hermite_series(t, a.order)
    return tuple(abs(c) for c in diff.coeffs)


def decimal_str(x: Fraction, digits: int = 12) -> str:
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        return str(decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator))


def rows_to_csv(rows: Sequence[ConvergenceRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "n", "error", "error_decimal"])
    for row in rows:
        for i, e in enumerate(row.coeff_errors):
            w.writerow([row.m, row.first_index + i, str(e), decimal_str(e)])
    return buf.getvalue()
