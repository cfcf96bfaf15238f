"""Independent oracles: sympy series expansions of the generating functions."""
from fractions import Fraction

import sympy

from egfverify.arith import VARS

t = sympy.symbols("t")


def li(k, z, terms):
    return sum(z ** m / sympy.Integer(m) ** k for m in range(1, terms + 1))


def generating_function(name, r=1, k=None, x=0, y=0, lam=None, N=6):
    """Closed-form generating function with numeric arguments."""
    x, y = sympy.nsimplify(x), sympy.nsimplify(y)
    E = sympy.exp
    hermite = E(x * t + y * t ** 2)
    if lam is not None:
        lam = sympy.nsimplify(lam)
        base = (1 + lam) ** (t / lam)              # e^{ut}
        deg_h = (1 + lam) ** ((x * t + y * t ** 2) / lam)
    z = 1 - E(-t)
    table = {
        "bernoulli": lambda: (t / (E(t) - 1)) ** r * E(x * t),
        "euler": lambda: (2 / (E(t) + 1)) ** r * E(x * t),
        "genocchi": lambda: (2 * t / (E(t) + 1)) ** r * E(x * t),
        "tangent": lambda: (2 / (E(2 * t) + 1)) ** r * E(x * t),
        "hermite": lambda: hermite,
        "hermite-bernoulli": lambda: (t / (E(t) - 1)) ** r * hermite,
        "hermite-euler": lambda: 2 / (E(t) + 1) * hermite,
        "hermite-tangent": lambda: (2 / (E(2 * t) + 1)) ** r * hermite,
        "carlitz-deg-bernoulli": lambda: t / ((1 + lam * t) ** (1 / lam) - 1) * (1 + lam * t) ** (x / lam),
        "mod-deg-bernoulli": lambda: t / (base - 1) * base ** x,
        "mod-deg-euler": lambda: 2 / (base + 1) * base ** x,
        "mod-deg-genocchi": lambda: 2 * t / (base + 1) * base ** x,
        "mod-deg-hermite": lambda: deg_h,
        "mod-deg-hermite-tangent": lambda: (2 / (base ** 2 + 1)) ** r * deg_h,
        "mod-hermite-bernoulli": lambda: t / (base - 1) * deg_h,
        "mod-hermite-euler": lambda: 2 / (base + 1) * deg_h,
        "poly-bernoulli": lambda: li(k, z, N + 2) / z * E(x * t),
        "poly-euler": lambda: 2 * li(k, z, N + 2) / (t * (E(t) + 1)) * E(x * t),
        "poly-genocchi": lambda: 2 * li(k, z, N + 2) / (E(t) + 1) * E(x * t),
        "hermite-poly-tangent": lambda: 2 * li(k, z, N + 2) / (t * (E(2 * t) + 1)) * hermite,
    }
    return table[name]()


def egf_coefficients(expr, N):
    ser = sympy.series(expr, t, 0, N + 1).removeO()
    return [sympy.simplify(ser.coeff(t, n) * sympy.factorial(n)) for n in range(N + 1)]


def to_sympy(p, values):
    """MultiPoly -> sympy expression with the given variable values."""
    syms = [sympy.nsimplify(values.get(name, 0)) if not isinstance(values.get(name, 0), sympy.Basic)
            else values[name] for name in VARS]
    total = sympy.Integer(0)
    for mono, c in p.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, mono):
            if e:
                term *= s ** e
        total += term
    return total


def as_fraction(expr):
    return Fraction(str(sympy.nsimplify(expr)))
