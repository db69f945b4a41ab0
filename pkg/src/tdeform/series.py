"""Exact truncated power series over the rationals.

Every series carries its truncation order ``N`` and stores exactly ``N + 1``
coefficients; identities are checked "mod z^(N+1)".  Binary operations refuse
operands of different orders instead of silently truncating to the smaller one.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

from .errors import DomainError, MalformedInputError, TruncationMismatchError

RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$")


def to_fraction(x: RationalLike) -> Fraction:
    """Coerce ``x`` to a Fraction without ever going through a float.

    Strings must look like ``"p"`` or ``"p/q"``; floats are rejected outright.
    """
    if isinstance(x, bool):
        raise MalformedInputError(f"not a rational: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        if not _RATIONAL_RE.match(x):
            raise MalformedInputError(f"not an exact rational string: {x!r}")
        try:
            return Fraction(x.replace(" ", ""))
        except ZeroDivisionError:
            raise MalformedInputError(f"zero denominator: {x!r}") from None
    raise MalformedInputError(f"not a rational: {x!r}")


def fraction_str(x: Fraction) -> str:
    return str(x)


def falling(x, k: int) -> Fraction:
    """Falling factorial x(x-1)...(x-k+1); equals 1 for k = 0."""
    out = Fraction(1)
    for i in range(k):
        out *= x - i
    return out


def rising(x, k: int) -> Fraction:
    """Rising factorial x(x+1)...(x+k-1); equals 1 for k = 0."""
    out = Fraction(1)
    for i in range(k):
        out *= x + i
    return out


def pochhammer(x, k: int, kind: str = "falling") -> Fraction:
    if kind == "falling":
        return falling(x, k)
    if kind == "rising":
        return rising(x, k)
    raise ValueError(f"unknown Pochhammer kind {kind!r}")


def falling_table(x, n: int) -> list[Fraction]:
    """[(x)_0, (x)_1, ..., (x)_n] for falling factorials."""
    out = [Fraction(1)]
    for i in range(n):
        out.append(out[-1] * (x - i))
    return out


@dataclass(frozen=True)
class Series:
    """Dense truncated series ``sum_{k<=order} coeffs[k] z^k``."""

    coeffs: tuple[Fraction, ...]
    order: int

    def __post_init__(self):
        if self.order < 0:
            raise DomainError("truncation order must be >= 0")
        if len(self.coeffs) != self.order + 1:
            raise TruncationMismatchError(
                f"expected {self.order + 1} coefficients, got {len(self.coeffs)}")

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        return f"Series([{', '.join(str(c) for c in self.coeffs)}], order={self.order})"

    def _check(self, other: "Series"):
        if not isinstance(other, Series):
            return NotImplemented
        if other.order != self.order:
            raise TruncationMismatchError(
                f"order mismatch: {self.order} vs {other.order}")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Series(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.order)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Series(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.order)

    def __neg__(self):
        return Series(tuple(-a for a in self.coeffs), self.order)

    def __mul__(self, other):
        if isinstance(other, Series):
            return mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "Series":
        c = to_fraction(c)
        return Series(tuple(c * a for a in self.coeffs), self.order)

    def support(self) -> int:
        """Index of the highest nonzero coefficient, -1 for the zero series."""
        for k in range(self.order, -1, -1):
            if self.coeffs[k]:
                return k
        return -1

    def with_order(self, order: int) -> "Series":
        """Re-truncate (or zero-extend) to a new order."""
        c = list(self.coeffs[: order + 1])
        c += [Fraction(0)] * (order + 1 - len(c))
        return Series(tuple(c), order)

    def is_unit(self) -> bool:
        return self.coeffs[0] == 1


def make_series(coeffs: Iterable[RationalLike], order: int) -> Series:
    """Build a series of the given order, zero-filling missing high coefficients."""
    c = [to_fraction(x) for x in coeffs]
    if order < 0:
        raise DomainError("truncation order must be >= 0")
    if len(c) > order + 1:
        raise TruncationMismatchError(
            f"{len(c)} coefficients do not fit truncation order {order}")
    c += [Fraction(0)] * (order + 1 - len(c))
    return Series(tuple(c), order)


def one(order: int) -> Series:
    return make_series([1], order)


def zero(order: int) -> Series:
    return make_series([], order)


def monomial(k: int, order: int, c: RationalLike = 1) -> Series:
    out = [Fraction(0)] * (order + 1)
    if k <= order:
        out[k] = to_fraction(c)
    return Series(tuple(out), order)


def mul(a: Series, b: Series) -> Series:
    """Cauchy product truncated at the common order."""
    if a.order != b.order:
        raise TruncationMismatchError(f"order mismatch: {a.order} vs {b.order}")
    n = a.order
    ac, bc = a.coeffs, b.coeffs
    out = []
    for k in range(n + 1):
        s = Fraction(0)
        for i in range(k + 1):
            if ac[i] and bc[k - i]:
                s += ac[i] * bc[k - i]
        out.append(s)
    return Series(tuple(out), n)


def power(a: Series, m: int) -> Series:
    """Ordinary m-th power by repeated squaring."""
    if m < 0:
        raise DomainError("negative power")
    result = one(a.order)
    base = a
    while m:
        if m & 1:
            result = mul(result, base)
        m >>= 1
        if m:
            base = mul(base, base)
    return result


def formal_log(a: Series) -> Series:
    # k l_k = k a_k - sum_{j=1}^{k-1} j l_j a_{k-j}, from A L' = A'
    if a.coeffs[0] != 1:
        raise DomainError("formal_log needs constant term 1")
    ac = a.coeffs
    l = [Fraction(0)] * (a.order + 1)
    for k in range(1, a.order + 1):
        s = k * ac[k]
        for j in range(1, k):
            if l[j] and ac[k - j]:
                s -= j * l[j] * ac[k - j]
        l[k] = s / k
    return Series(tuple(l), a.order)


def formal_exp(a: Series) -> Series:
    # k e_k = sum_{j=1}^{k} j a_j e_{k-j}, from E' = A' E
    if a.coeffs[0] != 0:
        raise DomainError("formal_exp needs constant term 0")
    ac = a.coeffs
    e = [Fraction(0)] * (a.order + 1)
    e[0] = Fraction(1)
    for k in range(1, a.order + 1):
        s = Fraction(0)
        for j in range(1, k + 1):
            if ac[j] and e[k - j]:
                s += j * ac[j] * e[k - j]
        e[k] = s / k
    return Series(tuple(e), a.order)


def dilate(a: Series, r: RationalLike) -> Series:
    """A(rz): coefficient k is scaled by r^k."""
    r = to_fraction(r)
    out = []
    rk = Fraction(1)
    for c in a.coeffs:
        out.append(c * rk)
        rk *= r
    return Series(tuple(out), a.order)


def z_dlog(a: Series) -> Series:
    """-z A'(z)/A(z); coefficient k is the k-th power sum of A.

    Uses -k a_k = p_k + p_{k-1} a_1 + ... + p_1 a_{k-1}.
    """
    if a.coeffs[0] != 1:
        raise DomainError("z_dlog needs constant term 1")
    ac = a.coeffs
    p = [Fraction(0)] * (a.order + 1)
    for k in range(1, a.order + 1):
        s = -k * ac[k]
        for j in range(1, k):
            if p[j] and ac[k - j]:
                s -= p[j] * ac[k - j]
        p[k] = s
    return Series(tuple(p), a.order)


def derivative(a: Series) -> Series:
    """d/dz, keeping the order (the top coefficient becomes 0)."""
    c = [k * a.coeffs[k] for k in range(1, a.order + 1)] + [Fraction(0)]
    return Series(tuple(c), a.order)


def series_to_json(a: Series) -> dict:
    return {"order": a.order, "coeffs": [fraction_str(c) for c in a.coeffs]}


def series_from_json(obj) -> Series:
    """Parse ``{"order": N, "coeffs": [...]}``; a bare list is read at order len-1."""
    if isinstance(obj, list):
        if not obj:
            raise MalformedInputError("empty coefficient list")
        return make_series(obj, len(obj) - 1)
    if not isinstance(obj, dict) or "coeffs" not in obj:
        raise MalformedInputError("series JSON needs a 'coeffs' field")
    coeffs = obj["coeffs"]
    if not isinstance(coeffs, list):
        raise MalformedInputError("'coeffs' must be a list")
    order = obj.get("order", len(coeffs) - 1)
    if isinstance(order, bool) or not isinstance(order, int):
        raise MalformedInputError("'order' must be an integer")
    return make_series(coeffs, order)


def rationals_to_json(xs: Sequence[Fraction]) -> list[str]:
    return [fraction_str(x) for x in xs]
