"""Truncated exponential generating functions with polynomial coefficients.

An :class:`EgfSeries` of order ``N`` holds ``P_0 .. P_N`` and stands for
``sum P_n t**n / n!  + O(t**(N+1))``.  Coefficients are stored EGF-normalised,
so reading off ``T_n(x)`` from a generating function is a plain index.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Sequence

from .arith import MultiPoly, binomial, to_rational
from .errors import (
    NonUnitConstantTerm,
    NonUnitLeadingTerm,
    NonzeroConstantTerm,
    OrderMismatch,
    ValuationError,
)

ZERO = MultiPoly()
ONE = MultiPoly.const(1)


def _as_poly(c) -> MultiPoly:
    return c if isinstance(c, MultiPoly) else MultiPoly.const(c)


class EgfSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        self.coeffs = tuple(_as_poly(c) for c in coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, EgfSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        body = ", ".join(str(c) for c in self.coeffs)
        return f"EgfSeries(order={self.order}: [{body}])"

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "EgfSeries":
        return cls([ZERO] * (order + 1))

    @classmethod
    def constant(cls, c, order: int) -> "EgfSeries":
        return cls([_as_poly(c)] + [ZERO] * order)

    @classmethod
    def monomial(cls, k: int, order: int, c=1) -> "EgfSeries":
        """The series ``c * t**k`` (EGF coefficient ``k! * c`` at index ``k``)."""
        coeffs = [ZERO] * (order + 1)
        if k <= order:
            coeffs[k] = _as_poly(c) * factorial(k)
        return cls(coeffs)

    @classmethod
    def exponential(cls, a, order: int) -> "EgfSeries":
        """``exp(a*t)`` for a polynomial ``a``: ``P_n = a**n``."""
        a = _as_poly(a)
        coeffs = [ONE]
        for _ in range(order):
            coeffs.append(coeffs[-1] * a)
        return cls(coeffs)

    @classmethod
    def from_ordinary(cls, coeffs: Sequence, order: int) -> "EgfSeries":
        """Build from ordinary coefficients ``a_n`` of ``sum a_n t**n``."""
        out = []
        for n in range(order + 1):
            c = _as_poly(coeffs[n]) if n < len(coeffs) else ZERO
            out.append(c * factorial(n))
        return cls(out)

    def to_ordinary(self) -> list:
        return [c * Fraction(1, factorial(n)) for n, c in enumerate(self.coeffs)]

    # helpers --------------------------------------------------------------

    def valuation(self) -> int:
        """Index of the first nonzero coefficient (``order + 1`` if none)."""
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return len(self.coeffs)

    def truncate(self, order: int) -> "EgfSeries":
        if order > self.order:
            raise OrderMismatch(f"cannot extend order {self.order} to {order}")
        return EgfSeries(self.coeffs[:order + 1])

    def map(self, fn: Callable[[MultiPoly], MultiPoly]) -> "EgfSeries":
        return EgfSeries([fn(c) for c in self.coeffs])

    def scale(self, c) -> "EgfSeries":
        c = _as_poly(c)
        return EgfSeries([p * c for p in self.coeffs])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other):
        return series_add(self, other)

    def __sub__(self, other):
        return series_add(self, -other)

    def __neg__(self):
        return EgfSeries([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, EgfSeries):
            return series_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return series_div_unit(self, other)

    def __pow__(self, r: int):
        return series_pow(self, r)


def _check_orders(f: EgfSeries, g: EgfSeries):
    if f.order != g.order:
        raise OrderMismatch(f"series orders differ: {f.order} vs {g.order}")


def series_add(f: EgfSeries, g: EgfSeries) -> EgfSeries:
    _check_orders(f, g)
    return EgfSeries([a + b for a, b in zip(f.coeffs, g.coeffs)])


def series_mul(f: EgfSeries, g: EgfSeries) -> EgfSeries:
    """EGF (binomial) convolution ``(fg)_n = sum C(n,k) f_k g_{n-k}``."""
    _check_orders(f, g)
    a, b = f.coeffs, g.coeffs
    nz_a = [k for k, c in enumerate(a) if c]
    out = []
    for n in range(len(a)):
        acc = ZERO
        for k in nz_a:
            if k > n:
                break
            other = b[n - k]
            if other:
                acc = acc + (a[k] * other) * binomial(n, k)
        out.append(acc)
    return EgfSeries(out)


def _unit_inverse(c0: MultiPoly, err) -> MultiPoly:
    parts = c0.unit_parts()
    if parts is None:
        raise err(f"constant term {c0} is not a rational multiple of a power of u")
    c, k = parts
    return MultiPoly.monomial((0, 0, -k), 1 / c)


def series_div_unit(f: EgfSeries, g: EgfSeries) -> EgfSeries:
    """Solve ``q * g = f`` by forward substitution; ``g_0`` must be ``c * u**k``."""
    _check_orders(f, g)
    inv = _unit_inverse(g.coeffs[0], NonUnitConstantTerm)
    gs = g.coeffs
    nz_g = [k for k in range(1, len(gs)) if gs[k]]
    q = []
    for n in range(len(gs)):
        acc = f.coeffs[n]
        for j in nz_g:
            if j > n:
                break
            acc = acc - q[n - j] * gs[j] * binomial(n, j)
        q.append(acc * inv)
    return EgfSeries(q)


def shift_down(f: EgfSeries, v: int) -> EgfSeries:
    """``f / t**v`` for ``val(f) >= v``; the result has order ``N - v``."""
    if f.valuation() < v:
        raise ValuationError(f"series of valuation {f.valuation()} is not divisible by t^{v}")
    # ordinary coefficient a_{n+v} = P_{n+v}/(n+v)!, re-normalised by n!
    out = []
    for n in range(f.order - v + 1):
        ratio = Fraction(factorial(n), factorial(n + v))
        out.append(f.coeffs[n + v] * ratio)
    return EgfSeries(out)


def series_div_shift(f: EgfSeries, g: EgfSeries) -> EgfSeries:
    """Divide by a series of positive valuation ``v``; result has order ``N - v``."""
    _check_orders(f, g)
    v = g.valuation()
    if v > g.order:
        raise NonUnitLeadingTerm("cannot divide by the zero series")
    if f.valuation() < v:
        raise ValuationError(
            f"numerator valuation {f.valuation()} is below denominator valuation {v}")
    g_low = shift_down(g, v)
    if g_low.coeffs[0].unit_parts() is None:
        raise NonUnitLeadingTerm(
            f"leading coefficient {g_low.coeffs[0]} is not a rational multiple of a power of u")
    return series_div_unit(shift_down(f, v), g_low)


def series_exp(f: EgfSeries) -> EgfSeries:
    """``exp(f)`` via ``E_n = sum_{k=1}^{n} C(n-1,k-1) f_k E_{n-k}``."""
    if f.coeffs[0]:
        raise NonzeroConstantTerm(f"exp needs a zero constant term, got {f.coeffs[0]}")
    fs = f.coeffs
    nz = [k for k in range(1, len(fs)) if fs[k]]
    E = [ONE]
    for n in range(1, len(fs)):
        acc = ZERO
        for k in nz:
            if k > n:
                break
            acc = acc + fs[k] * E[n - k] * binomial(n - 1, k - 1)
        E.append(acc)
    return EgfSeries(E)


def series_compose_outer(c: Sequence, g: EgfSeries) -> EgfSeries:
    """``sum_{m>=1} c_m g**m`` truncated at the order of ``g``."""
    if g.coeffs[0]:
        raise ValuationError("outer composition needs g with zero constant term")
    N = g.order
    coeffs = [to_rational(ci) for ci in c]
    total = EgfSeries.zero(N)
    power = EgfSeries.constant(1, N)
    for m in range(1, min(len(coeffs), N) + 1):
        power = series_mul(power, g)
        if coeffs[m - 1]:
            total = series_add(total, power.scale(coeffs[m - 1]))
    return total


def series_scale_t(f: EgfSeries, a) -> EgfSeries:
    """``f(a*t)``: ``P_n -> a**n P_n``."""
    a = to_rational(a)
    return EgfSeries([c * a ** n if n else c for n, c in enumerate(f.coeffs)])


def series_pow(f: EgfSeries, r: int) -> EgfSeries:
    if r < 0:
        raise ValueError("series_pow needs a nonnegative exponent")
    result = EgfSeries.constant(1, f.order)
    for _ in range(r):
        result = series_mul(result, f)
    return result
