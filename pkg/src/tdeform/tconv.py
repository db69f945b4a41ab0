"""The t-deformed convolution together with the coefficient transforms that
turn it into ordinary multiplication.  Finite mode (t = d) is built in.

``TParam`` is either *generic* (a rational t outside {0, 1, 2, ...}) or
*finite* (a positive integer d, with series supported on degrees <= d).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence

from .errors import DomainError, MalformedInputError, ParameterError, TruncationMismatchError
from .series import RationalLike, Series, falling_table, fraction_str, make_series, to_fraction


@dataclass(frozen=True)
class TParam:
    t: Optional[Fraction] = None
    d: Optional[int] = None

    def __post_init__(self):
        if (self.t is None) == (self.d is None):
            raise ParameterError("TParam needs exactly one of t (generic) or d (finite)")
        if self.t is not None:
            if self.t.denominator == 1 and self.t >= 0:
                raise ParameterError(
                    f"generic t must not be a nonnegative integer, got {self.t}; "
                    "use finite mode for t = d")
        else:
            if isinstance(self.d, bool) or not isinstance(self.d, int) or self.d < 1:
                raise ParameterError(f"finite mode needs an integer d >= 1, got {self.d!r}")

    @classmethod
    def generic(cls, t: RationalLike) -> "TParam":
        return cls(t=to_fraction(t))

    @classmethod
    def finite(cls, d: int) -> "TParam":
        return cls(d=d)

    @property
    def finite_mode(self) -> bool:
        return self.d is not None

    @property
    def value(self) -> Fraction:
        """The numeric deformation parameter (t, or d as a rational)."""
        return self.t if self.t is not None else Fraction(self.d)

    def top(self, order: int) -> int:
        """Largest coefficient index that can be nonzero at this order."""
        return order if self.d is None else min(order, self.d)

    def to_json(self) -> dict:
        if self.d is not None:
            return {"mode": "finite", "d": self.d}
        return {"mode": "generic", "t": fraction_str(self.t)}

    def __str__(self):
        return f"d:{self.d}" if self.d is not None else str(self.t)


def as_tparam(t) -> TParam:
    """Coerce to TParam; strings may be ``"p/q"`` or ``"d:N"``."""
    if isinstance(t, TParam):
        return t
    if isinstance(t, str) and t.strip().startswith("d:"):
        body = t.strip()[2:]
        if not body.strip().isdigit():
            raise MalformedInputError(f"bad finite-mode parameter {t!r}")
        return TParam.finite(int(body))
    return TParam.generic(t)


def tparam_from_json(obj) -> TParam:
    if isinstance(obj, (str, int)):
        return as_tparam(obj)
    if not isinstance(obj, dict):
        raise MalformedInputError("TParam JSON must be an object")
    mode = obj.get("mode")
    if mode == "generic":
        if "t" not in obj:
            raise MalformedInputError("generic TParam needs 't'")
        return TParam.generic(to_fraction(obj["t"]))
    if mode == "finite":
        d = obj.get("d")
        if isinstance(d, bool) or not isinstance(d, int):
            raise MalformedInputError("finite TParam needs integer 'd'")
        return TParam.finite(d)
    raise MalformedInputError(f"unknown TParam mode {mode!r}")


def check_support(a: Series, d: int, what: str = "series"):
    if a.support() > d:
        raise DomainError(f"{what} has nonzero coefficients beyond degree d={d}")


def tconv(a: Series, b: Series, t) -> Series:
    """A ⊞^t B: c_k = sum_{i+j=k} (t)_k / ((t)_i (t)_j) a_i b_j."""
    t = as_tparam(t)
    if a.order != b.order:
        raise TruncationMismatchError(f"order mismatch: {a.order} vs {b.order}")
    n = a.order
    if t.finite_mode:
        check_support(a, t.d)
        check_support(b, t.d)
    top = t.top(n)
    ff = falling_table(t.value, top)
    ac, bc = a.coeffs, b.coeffs
    out = [Fraction(0)] * (n + 1)
    for k in range(top + 1):
        s = Fraction(0)
        for i in range(k + 1):
            j = k - i
            if ac[i] and bc[j]:
                s += ff[k] / (ff[i] * ff[j]) * ac[i] * bc[j]
        out[k] = s
    return Series(tuple(out), n)


def iota(poly: Sequence[RationalLike], order: Optional[int] = None) -> Series:
    """z^d f(1/z) for f = sum_i a_i x^(d-i): the coefficient list is reused as-is."""
    coeffs = [to_fraction(c) for c in poly]
    d = len(coeffs) - 1
    if d < 0:
        raise MalformedInputError("empty polynomial")
    if coeffs[0] != 1:
        raise DomainError("polynomial must be monic")
    return make_series(coeffs, d if order is None else order)


def iota_inv(a: Series, d: int) -> list[Fraction]:
    check_support(a, d)
    return list(a.with_order(d).coeffs)


def finite_free_conv(f: Sequence[RationalLike], g: Sequence[RationalLike], d: Optional[int] = None) -> list[Fraction]:
    """f ⊞_d g on monic degree-d polynomials given by (a_0, ..., a_d), a_0 = 1."""
    fa = [to_fraction(c) for c in f]
    ga = [to_fraction(c) for c in g]
    if d is None:
        d = len(fa) - 1
    if len(fa) != d + 1 or len(ga) != d + 1:
        raise DomainError(f"both polynomials must have formal degree d={d}")
    if fa[0] != 1 or ga[0] != 1:
        raise DomainError("finite free convolution needs monic inputs")
    # coefficient form of the expected characteristic polynomial, written with
    # factorials rather than through the t = d weights of tconv
    out = []
    for k in range(d + 1):
        s = Fraction(0)
        for i in range(k + 1):
            w = Fraction(factorial(d - i) * factorial(d - k + i), factorial(d) * factorial(d - k))
            s += w * fa[i] * ga[k - i]
        out.append(s)
    return out


def phi_t(a: Series, t) -> Series:
    """Coefficientwise division by (t)_k; turns ⊞^t into the Cauchy product."""
    t = as_tparam(t)
    if t.finite_mode:
        check_support(a, t.d)
    ff = falling_table(t.value, t.top(a.order))
    out = [c / ff[k] if k < len(ff) else Fraction(0) for k, c in enumerate(a.coeffs)]
    return Series(tuple(out), a.order)


def phi_t_inv(a: Series, t) -> Series:
    """Coefficientwise multiplication by (t)_k.

    In finite mode (d)_k = 0 for k > d, so anything above degree d is dropped.
    """
    t = as_tparam(t)
    ff = falling_table(t.value, a.order)
    return Series(tuple(c * ff[k] for k, c in enumerate(a.coeffs)), a.order)


def e_transform(a: Series, t) -> Series:
    """1 + sum_k t^k a_k / (t)_k z^k, i.e. the dilation by t of phi_t(A)."""
    t = as_tparam(t)
    if a.coeffs[0] != 1:
        raise DomainError("e_transform needs constant term 1")
    if t.finite_mode:
        check_support(a, t.d)
    tv = t.value
    ff = falling_table(tv, t.top(a.order))
    out = []
    tk = Fraction(1)
    for k, c in enumerate(a.coeffs):
        out.append(tk * c / ff[k] if k < len(ff) else Fraction(0))
        tk *= tv
    return Series(tuple(out), a.order)


@dataclass(frozen=True)
class TNorm:
    value: Fraction
    order: int
    lower_bound: bool = True

    def to_json(self) -> dict:
        return {"value": fraction_str(self.value), "order": self.order,
                "lower_bound": self.lower_bound}


def plain_norm(a: Series, r: RationalLike) -> TNorm:
    """Truncated sum |a_k| r^k."""
    r = to_fraction(r)
    if r < 0:
        raise DomainError("norm radius must be >= 0")
    total = Fraction(0)
    rk = Fraction(1)
    for c in a.coeffs:
        total += abs(c) * rk
        rk *= r
    return TNorm(total, a.order)


def norm_t_r(a: Series, r: RationalLike, t) -> TNorm:
    """Truncated sum |a_k / (t)_k| r^k -- a lower bound for the full norm."""
    t = as_tparam(t)
    if t.finite_mode:
        raise ParameterError("the (t, r) norm is defined for generic t only")
    r = to_fraction(r)
    if r < 0:
        raise DomainError("norm radius must be >= 0")
    ff = falling_table(t.t, a.order)
    total = Fraction(0)
    rk = Fraction(1)
    for k, c in enumerate(a.coeffs):
        total += abs(c / ff[k]) * rk
        rk *= r
    return TNorm(total, a.order)
