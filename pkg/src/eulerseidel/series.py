"""Truncated formal power series over exact rationals.

A :class:`Series` of order ``N`` stores the coefficients of ``t^0 .. t^N``.
Binary operations on series of different orders truncate to the smaller one.
Scalars are :class:`fractions.Fraction` throughout; nothing is ever rounded.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    BadConstantTerm,
    NonzeroInnerConstant,
    NotInvertible,
    ParseError,
    ZeroConstantTerm,
)

__all__ = [
    "Series",
    "add",
    "mul",
    "reciprocal",
    "compose",
    "comp_inverse",
    "exp_series",
    "log_series",
    "ogf_to_egf",
    "egf_to_ogf",
    "constant",
    "variable",
    "geometric",
    "exponential",
    "parse_rational",
    "parse_series",
    "format_rational",
    "format_series",
]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use Fraction or int")
    return Fraction(x)


class Series:
    """Dense truncated power series ``sum coeffs[i] t^i`` for ``i <= order``."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [_frac(c) for c in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("order must be non-negative")
            cs = cs[: order + 1] + [Fraction(0)] * (order + 1 - len(cs))
        if not cs:
            raise ValueError("a series needs at least one coefficient")
        self._coeffs = tuple(cs)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    def __len__(self):
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def __getitem__(self, i):
        return self._coeffs[i]

    def truncate(self, order: int) -> Series:
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return Series(self._coeffs[: order + 1])

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None for the zero series."""
        for i, c in enumerate(self._coeffs):
            if c:
                return i
        return None

    def __eq__(self, other):
        if isinstance(other, Series):
            m = min(self.order, other.order)
            return self._coeffs[: m + 1] == other._coeffs[: m + 1]
        if isinstance(other, (int, Fraction)):
            return self == constant(other, self.order)
        return NotImplemented

    __hash__ = None  # equality up to min order is not transitive

    def __repr__(self):
        return f"Series([{format_series(self)}])"

    def __neg__(self):
        return Series(-c for c in self._coeffs)

    def __add__(self, other):
        if isinstance(other, Series):
            return add(self, other)
        other = _frac(other)
        return Series((self._coeffs[0] + other,) + self._coeffs[1:])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Series):
            return mul(self, other)
        other = _frac(other)
        return Series(c * other for c in self._coeffs)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Series):
            return mul(self, reciprocal(other))
        other = _frac(other)
        if other == 0:
            raise ZeroDivisionError("division of a series by zero")
        return Series(c / other for c in self._coeffs)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = constant(1, self.order)
        base = self
        while e:
            if e & 1:
                result = mul(result, base)
            e >>= 1
            if e:
                base = mul(base, base)
        return result

    def __call__(self, inner: Series) -> Series:
        return compose(self, inner)

    def scale(self, c) -> Series:
        """Substitute ``t -> c t``."""
        c = _frac(c)
        out, p = [], Fraction(1)
        for a in self._coeffs:
            out.append(a * p)
            p *= c
        return Series(out)

    def shift(self, k: int) -> Series:
        """Multiply by ``t^k`` keeping the order."""
        return Series([Fraction(0)] * k + list(self._coeffs[: len(self._coeffs) - k]), self.order)

    def derivative(self) -> Series:
        if self.order == 0:
            return Series([0])
        return Series(i * c for i, c in enumerate(self._coeffs) if i)

    def integral(self) -> Series:
        return Series([Fraction(0)] + [c / (i + 1) for i, c in enumerate(self._coeffs)])


def add(a: Series, b: Series) -> Series:
    n = min(a.order, b.order)
    return Series(a[i] + b[i] for i in range(n + 1))


def mul(a: Series, b: Series) -> Series:
    n = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    out = []
    for i in range(n + 1):
        s = Fraction(0)
        for j in range(i + 1):
            x = ac[j]
            if x:
                y = bc[i - j]
                if y:
                    s += x * y
        out.append(s)
    return Series(out)


def reciprocal(a: Series) -> Series:
    a0 = a[0]
    if a0 == 0:
        raise ZeroConstantTerm("reciprocal needs a nonzero constant term")
    inv0 = 1 / a0
    out = [inv0]
    for i in range(1, a.order + 1):
        s = sum((a[j] * out[i - j] for j in range(1, i + 1)), Fraction(0))
        out.append(-s * inv0)
    return Series(out)


def compose(outer: Series, inner: Series) -> Series:
    """``outer(inner(t))``, truncated to ``min(outer.order, inner.order)``."""
    if inner[0] != 0:
        raise NonzeroInnerConstant("inner series of a composition must have zero constant term")
    n = min(outer.order, inner.order)
    inner = inner.truncate(n)
    # Horner; the i-th step only contributes from t^(N-i) onwards, but the
    # dense product is cheap enough at the orders we use.
    result = Series([outer[n]], n)
    for i in range(n - 1, -1, -1):
        result = mul(result, inner) + outer[i]
    return result


def comp_inverse(f: Series) -> Series:
    """Compositional inverse by Lagrange inversion.

    ``[t^n] fbar = (1/n) [t^(n-1)] (t/f(t))^n``.
    """
    if f.order < 1 or f[0] != 0 or f[1] == 0:
        raise NotInvertible("compositional inverse needs f0 = 0 and f1 != 0")
    n_max = f.order
    # t/f(t) as a series of order N-1
    h = reciprocal(Series(f.coeffs[1:]))
    out = [Fraction(0)]
    power = constant(1, h.order)
    for n in range(1, n_max + 1):
        power = mul(power, h)
        out.append(power[n - 1] / n)
    return Series(out)


def exp_series(a: Series) -> Series:
    if a[0] != 0:
        raise BadConstantTerm("exp_series needs a zero constant term")
    out = [Fraction(1)]
    for n in range(1, a.order + 1):
        s = sum((k * a[k] * out[n - k] for k in range(1, n + 1)), Fraction(0))
        out.append(s / n)
    return Series(out)


def log_series(a: Series) -> Series:
    if a[0] != 1:
        raise BadConstantTerm("log_series needs constant term 1")
    out = [Fraction(0)]
    for n in range(1, a.order + 1):
        s = n * a[n] - sum((k * out[k] * a[n - k] for k in range(1, n)), Fraction(0))
        out.append(s / n)
    return Series(out)


def ogf_to_egf(a: Series) -> Series:
    """Divide coefficient i by i!."""
    return Series(c / math.factorial(i) for i, c in enumerate(a))


def egf_to_ogf(a: Series) -> Series:
    """Multiply coefficient i by i!."""
    return Series(c * math.factorial(i) for i, c in enumerate(a))


# builtins ------------------------------------------------------------------


def constant(c, order: int) -> Series:
    return Series([c], order)


def variable(order: int) -> Series:
    """The series ``t``."""
    return Series([0, 1], order)


def geometric(order: int, ratio=1) -> Series:
    """``1/(1 - ratio*t)``."""
    r = _frac(ratio)
    return Series((r**i for i in range(order + 1)))


def exponential(order: int, rate=1) -> Series:
    """``exp(rate*t)``."""
    r = _frac(rate)
    return Series(r**i / math.factorial(i) for i in range(order + 1))


BUILTINS = {
    "exp": exponential,
    "geom": geometric,
    "one": lambda order: constant(1, order),
    "t": variable,
}


# text format -----------------------------------------------------------------


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (integers only, optional sign)."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        if sep:
            q = int(den)
            if q == 0:
                raise ParseError(f"zero denominator in rational {text!r}")
            return Fraction(int(num), q)
        return Fraction(int(num))
    except ValueError:
        raise ParseError(f"invalid rational {text!r}") from None


def parse_series(text: str, order: int) -> Series:
    """Parse a series literal or builtin name and pad/truncate to ``order``.

    Literals are comma-separated OGF coefficients: ``"1,1,1/2,1/6"``.
    """
    name = text.strip()
    if name in BUILTINS:
        return BUILTINS[name](order)
    if not name:
        raise ParseError("empty series literal")
    return Series([parse_rational(p) for p in name.split(",")], order)


def format_rational(x: Fraction) -> str:
    return str(x)


def format_series(a: Sequence) -> str:
    return ",".join(str(c) for c in a)
