"""Generating functions of the Bernoulli/Euler/Genocchi/Tangent/Hermite families.

Every constructor returns an :class:`EgfSeries` of the requested truncation
order.  The argument polynomials ``x`` and ``y`` default to the variables
``x`` and ``y`` but may be any :class:`MultiPoly`, which is how identities
evaluate a family at shifted points such as ``(x + s, y + v)`` or ``2x + 2``.

Modified degenerate families replace ``(1+lambda)**(t/lambda)`` by
``exp(u*t)``; Carlitz's family keeps ``lambda`` as the variable ``l``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Dict, List, Optional

from .arith import MultiPoly, binomial, l_, u_, x_, y_
from .errors import IndexBeyondTruncation, InvalidSpec, UnknownFamily
from .series import (
    EgfSeries,
    series_compose_outer,
    series_div_shift,
    series_div_unit,
    series_exp,
    series_mul,
    series_pow,
    shift_down,
)

ONE = MultiPoly.const(1)


# kernels ------------------------------------------------------------------

def t_series(N: int) -> EgfSeries:
    return EgfSeries.monomial(1, N)


def hermite_exponential(x: MultiPoly, y: MultiPoly, N: int, scale: MultiPoly = ONE) -> EgfSeries:
    """``exp(scale * (x t + y t**2))``."""
    coeffs = [MultiPoly()] * (N + 1)
    if N >= 1:
        coeffs[1] = scale * x
    if N >= 2:
        coeffs[2] = scale * y * 2
    return series_exp(EgfSeries(coeffs))


def bernoulli_kernel(N: int, a: MultiPoly = ONE) -> EgfSeries:
    """``t / (exp(a t) - 1)`` for a unit ``a`` (1 or u)."""
    den = EgfSeries.exponential(a, N + 1) - EgfSeries.constant(1, N + 1)
    return series_div_shift(t_series(N + 1), den)


def euler_kernel(N: int, a: MultiPoly = ONE) -> EgfSeries:
    """``2 / (exp(a t) + 1)``."""
    den = EgfSeries.exponential(a, N) + EgfSeries.constant(1, N)
    return series_div_unit(EgfSeries.constant(2, N), den)


def genocchi_kernel(N: int, a: MultiPoly = ONE) -> EgfSeries:
    """``2t / (exp(a t) + 1)``."""
    return series_mul(t_series(N), euler_kernel(N, a))


def tangent_kernel(N: int, a: MultiPoly = ONE) -> EgfSeries:
    """``2 / (exp(2 a t) + 1)``."""
    return euler_kernel(N, a * 2)


def polylog_coeffs(k: int, M: int) -> List[Fraction]:
    """Coefficients ``1/m**k`` of ``Li_k(z)`` for ``m = 1..M``."""
    if k < 1:
        raise InvalidSpec("polylogarithm index must be >= 1")
    return [Fraction(1, m ** k) for m in range(1, M + 1)]


def one_minus_exp_neg(N: int) -> EgfSeries:
    """``1 - exp(-t)``."""
    return EgfSeries.constant(1, N) - EgfSeries.exponential(-1, N)


def polylog_kernel(k: int, N: int) -> EgfSeries:
    """``Li_k(1 - exp(-t))`` truncated at order ``N``."""
    return series_compose_outer(polylog_coeffs(k, N), one_minus_exp_neg(N))


def carlitz_log(N: int, l: MultiPoly = l_) -> EgfSeries:
    """``log(1 + l t) / l``; EGF coefficient ``(-1)**(j+1) (j-1)! l**(j-1)``."""
    coeffs = [MultiPoly()]
    for j in range(1, N + 1):
        coeffs.append(l ** (j - 1) * ((-1) ** (j + 1) * factorial(j - 1)))
    return EgfSeries(coeffs)


# family table ---------------------------------------------------------------

@dataclass(frozen=True)
class FamilySpec:
    family: str
    order_r: int = 1
    polylog_k: Optional[int] = None
    truncation: int = 10


@dataclass(frozen=True)
class _Family:
    builder: Callable
    has_order: bool = False
    is_poly: bool = False
    uses_y: bool = False
    summary: str = ""


def _appell(kernel_fn):
    def build(spec, x, y, u, l):
        N = spec.truncation
        return series_mul(series_pow(kernel_fn(N), spec.order_r), EgfSeries.exponential(x, N))
    return build


def _hermite_based(kernel_fn):
    def build(spec, x, y, u, l):
        N = spec.truncation
        return series_mul(series_pow(kernel_fn(N), spec.order_r), hermite_exponential(x, y, N))
    return build


def _mod_deg(kernel_fn, hermite: bool):
    def build(spec, x, y, u, l):
        N = spec.truncation
        base = series_pow(kernel_fn(N, u), spec.order_r)
        if hermite:
            return series_mul(base, hermite_exponential(x, y, N, scale=u))
        return series_mul(base, EgfSeries.exponential(u * x, N))
    return build


def _hermite(spec, x, y, u, l):
    return hermite_exponential(x, y, spec.truncation)


def _mod_deg_hermite(spec, x, y, u, l):
    return hermite_exponential(x, y, spec.truncation, scale=u)


def _carlitz(spec, x, y, u, l):
    N = spec.truncation
    den = series_exp(carlitz_log(N + 1, l)) - EgfSeries.constant(1, N + 1)
    kernel = series_div_shift(t_series(N + 1), den)
    return series_mul(kernel, series_exp(carlitz_log(N, l).scale(x)))


def _poly_bernoulli(spec, x, y, u, l):
    N = spec.truncation
    kernel = series_div_shift(polylog_kernel(spec.polylog_k, N + 1), one_minus_exp_neg(N + 1))
    return series_mul(kernel, EgfSeries.exponential(x, N))


def _poly_genocchi(spec, x, y, u, l):
    N = spec.truncation
    num = polylog_kernel(spec.polylog_k, N).scale(2)
    den = EgfSeries.exponential(1, N) + EgfSeries.constant(1, N)
    return series_mul(series_div_unit(num, den), EgfSeries.exponential(x, N))


def _poly_over_t(spec, a):
    # 2 Li_k(1 - e^{-t}) / (t (e^{a t} + 1)), built one order higher for the /t shift
    N = spec.truncation
    num = shift_down(polylog_kernel(spec.polylog_k, N + 1).scale(2), 1)
    den = EgfSeries.exponential(a, N) + EgfSeries.constant(1, N)
    return series_div_unit(num, den)


def _poly_euler(spec, x, y, u, l):
    return series_mul(_poly_over_t(spec, 1), EgfSeries.exponential(x, spec.truncation))


def _hermite_poly_tangent(spec, x, y, u, l):
    return series_mul(_poly_over_t(spec, 2), hermite_exponential(x, y, spec.truncation))


FAMILIES: Dict[str, _Family] = {
    "bernoulli": _Family(_appell(bernoulli_kernel), has_order=True,
                         summary="(t/(e^t-1))^r e^{xt}"),
    "euler": _Family(_appell(euler_kernel), has_order=True,
                     summary="(2/(e^t+1))^r e^{xt}"),
    "genocchi": _Family(_appell(genocchi_kernel), has_order=True,
                        summary="(2t/(e^t+1))^r e^{xt}"),
    "tangent": _Family(_appell(tangent_kernel), has_order=True,
                       summary="(2/(e^{2t}+1))^r e^{xt}"),
    "hermite": _Family(_hermite, uses_y=True, summary="e^{xt+yt^2}"),
    "hermite-bernoulli": _Family(_hermite_based(bernoulli_kernel), has_order=True, uses_y=True,
                                 summary="(t/(e^t-1))^r e^{xt+yt^2}"),
    "hermite-euler": _Family(_hermite_based(euler_kernel), uses_y=True,
                             summary="2/(e^t+1) e^{xt+yt^2}"),
    "hermite-tangent": _Family(_hermite_based(tangent_kernel), has_order=True, uses_y=True,
                               summary="(2/(e^{2t}+1))^r e^{xt+yt^2}"),
    "carlitz-deg-bernoulli": _Family(_carlitz,
                                     summary="t/((1+lt)^{1/l}-1) (1+lt)^{x/l}"),
    "mod-deg-bernoulli": _Family(_mod_deg(bernoulli_kernel, False),
                                 summary="t/(e^{ut}-1) e^{uxt}"),
    "mod-deg-euler": _Family(_mod_deg(euler_kernel, False),
                             summary="2/(e^{ut}+1) e^{uxt}"),
    "mod-deg-genocchi": _Family(_mod_deg(genocchi_kernel, False),
                                summary="2t/(e^{ut}+1) e^{uxt}"),
    "mod-deg-hermite": _Family(_mod_deg_hermite, uses_y=True,
                               summary="e^{u(xt+yt^2)}"),
    "mod-deg-hermite-tangent": _Family(_mod_deg(tangent_kernel, True), has_order=True,
                                       uses_y=True,
                                       summary="(2/(e^{2ut}+1))^r e^{u(xt+yt^2)}"),
    "mod-hermite-bernoulli": _Family(_mod_deg(bernoulli_kernel, True), uses_y=True,
                                     summary="t/(e^{ut}-1) e^{u(xt+yt^2)}"),
    "mod-hermite-euler": _Family(_mod_deg(euler_kernel, True), uses_y=True,
                                 summary="2/(e^{ut}+1) e^{u(xt+yt^2)}"),
    "poly-bernoulli": _Family(_poly_bernoulli, is_poly=True,
                              summary="Li_k(1-e^{-t})/(1-e^{-t}) e^{xt}"),
    "poly-euler": _Family(_poly_euler, is_poly=True,
                          summary="2Li_k(1-e^{-t})/(t(e^t+1)) e^{xt}"),
    "poly-genocchi": _Family(_poly_genocchi, is_poly=True,
                             summary="2Li_k(1-e^{-t})/(e^t+1) e^{xt}"),
    "hermite-poly-tangent": _Family(_hermite_poly_tangent, is_poly=True, uses_y=True,
                                    summary="2Li_k(1-e^{-t})/(t(e^{2t}+1)) e^{xt+yt^2}"),
}


def family_info(name: str) -> _Family:
    try:
        return FAMILIES[name]
    except KeyError:
        raise UnknownFamily(name) from None


def validate(spec: FamilySpec) -> None:
    info = family_info(spec.family)
    if spec.truncation < 0:
        raise InvalidSpec("truncation order must be >= 0")
    if info.is_poly:
        if spec.polylog_k is None or spec.polylog_k < 1:
            raise InvalidSpec(f"{spec.family} needs a polylog index k >= 1")
    elif spec.polylog_k is not None:
        raise InvalidSpec(f"{spec.family} takes no polylog index")
    if spec.order_r < 0:
        raise InvalidSpec("order r must be >= 0")
    if spec.order_r != 1 and not info.has_order:
        raise InvalidSpec(f"{spec.family} is only defined at order r = 1")


def build(spec: FamilySpec, x: MultiPoly = x_, y: MultiPoly = y_,
          u: MultiPoly = u_, l: MultiPoly = l_) -> EgfSeries:
    """Generating function of ``spec.family`` evaluated at arguments ``(x, y)``.

    ``u`` and ``l`` default to the formal variables; passing rational
    constants for all four arguments yields a purely numeric series.
    """
    validate(spec)
    info = FAMILIES[spec.family]
    return info.builder(spec, _poly(x), _poly(y), _poly(u), _poly(l))


def _poly(p) -> MultiPoly:
    return p if isinstance(p, MultiPoly) else MultiPoly.const(p)


def family(name: str, N: int, r: int = 1, k: Optional[int] = None,
           x: MultiPoly = x_, y: MultiPoly = y_,
           u: MultiPoly = u_, l: MultiPoly = l_) -> EgfSeries:
    """Shorthand for ``build(FamilySpec(name, r, k, N), x, y, u, l)``."""
    return build(FamilySpec(name, r, k, N), x, y, u, l)


def extract_polynomial(f: EgfSeries, n: int) -> MultiPoly:
    if n < 0 or n > f.order:
        raise IndexBeyondTruncation(f"index {n} outside 0..{f.order}")
    return f.coeffs[n]


# closed forms and recurrences (independent of the series engine) -------------

def hermite_closed(n: int) -> MultiPoly:
    """``H_n(x,y) = n! sum_k x**(n-2k) y**k / (k! (n-2k)!)``."""
    total = MultiPoly()
    for k in range(n // 2 + 1):
        c = Fraction(factorial(n), factorial(k) * factorial(n - 2 * k))
        total = total + MultiPoly.monomial((n - 2 * k, k), c)
    return total


@lru_cache(maxsize=None)
def _stirling2_row(n: int) -> tuple:
    if n == 0:
        return (1,)
    prev = _stirling2_row(n - 1)
    return tuple(
        (k * prev[k] if k < len(prev) else 0) + (prev[k - 1] if k >= 1 else 0)
        for k in range(n + 1)
    )


@lru_cache(maxsize=None)
def _stirling1_row(n: int) -> tuple:
    if n == 0:
        return (1,)
    prev = _stirling1_row(n - 1)
    return tuple(
        (prev[k - 1] if k >= 1 else 0) - (n - 1) * (prev[k] if k < len(prev) else 0)
        for k in range(n + 1)
    )


def stirling2(n: int, k: int) -> Fraction:
    if n < 0 or k < 0 or k > n:
        return Fraction(0)
    return Fraction(_stirling2_row(n)[k])


def stirling1(n: int, k: int) -> Fraction:
    """Signed Stirling numbers of the first kind: ``(x)_n = sum S1(n,k) x**k``."""
    if n < 0 or k < 0 or k > n:
        return Fraction(0)
    return Fraction(_stirling1_row(n)[k])


def falling_factorial(n: int, step: str = "unit", x: MultiPoly = x_) -> MultiPoly:
    """``(x)_n`` for ``step="unit"`` or ``(x|l)_n = x(x-l)...(x-(n-1)l)``."""
    if step not in ("unit", "lambda"):
        raise ValueError("step must be 'unit' or 'lambda'")
    unit = ONE if step == "unit" else l_
    result = ONE
    for j in range(n):
        result = result * (x - unit * j)
    return result


def bernoulli_numbers(N: int) -> List[Fraction]:
    """``B_0..B_N`` from ``sum_{k<=n} C(n+1,k) B_k = 0`` (B_1 = -1/2)."""
    B = [Fraction(1)]
    for n in range(1, N + 1):
        B.append(-sum(binomial(n + 1, k) * B[k] for k in range(n)) / (n + 1))
    return B


def euler_polynomial_values(N: int) -> List[Fraction]:
    """``E_n(0)`` from ``E_n(x+1) + E_n(x) = 2 x**n`` at ``x = 0``.

    Writing ``E_n(x) = sum C(n,k) e_k x**(n-k)`` the relation reads
    ``sum_k C(n,k) e_k + e_n = 2 [n == 0]``.
    """
    e: List[Fraction] = []
    for n in range(N + 1):
        rest = sum(binomial(n, k) * e[k] for k in range(n))
        e.append((Fraction(2 if n == 0 else 0) - rest) / 2)
    return e
