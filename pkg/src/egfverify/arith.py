"""Exact rationals and sparse multivariate (Laurent in ``u``) polynomials.

Rationals are :class:`fractions.Fraction`.  Polynomials live in the ring
``Q[x, y, l, s, v][u, 1/u]``:

* ``x``, ``y`` -- the polynomial arguments of every family,
* ``u``       -- the formal stand-in for ``ln(1+lambda)/lambda`` used by the
  modified degenerate families (``(1+lambda)**(t/lambda) == exp(u*t)``),
* ``l``       -- ``lambda`` itself, as it appears in Carlitz's degenerate family,
* ``s``, ``v`` -- a second argument pair ``(s, v)`` used when identities shift
  ``(x, y)`` to ``(x + s, y + v)``.

Only ``u`` may carry negative exponents.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

from .errors import SubstituteZeroIntoLaurent

VARS = ("x", "y", "u", "l", "s", "v")
X, Y, U, L, S, V = range(len(VARS))
NVARS = len(VARS)

Monomial = Tuple[int, int, int, int, int, int]
Scalar = Union[int, Fraction]

ONE_MONO: Monomial = (0,) * NVARS


def to_rational(value) -> Fraction:
    """Parse ``value`` (int, Fraction or a ``"p/q"`` string) as a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def _norm(c: Scalar) -> Scalar:
    # integers stay plain ints; Fraction arithmetic on them is much slower
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _var_index(var) -> int:
    if isinstance(var, int):
        if not 0 <= var < NVARS:
            raise ValueError(f"variable index out of range: {var}")
        return var
    try:
        return VARS.index(var)
    except ValueError:
        raise ValueError(f"unknown variable {var!r}; expected one of {VARS}") from None


def glex_key(mono: Monomial):
    """Sort key for graded lexicographic order with x > y > u > l > s > v."""
    return (sum(mono), mono)


def binomial(n: int, k: int) -> int:
    """``C(n, k)``, zero when ``k`` is outside ``0..n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


class MultiPoly:
    """Immutable sparse polynomial with exact rational coefficients.

    The term map never stores a zero coefficient, so equality is plain
    term-set equality.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: Dict[Monomial, Scalar] = {}
        if terms:
            for mono, c in terms.items():
                if len(mono) != NVARS:
                    raise ValueError(f"monomial must have {NVARS} exponents: {mono!r}")
                mono = tuple(int(e) for e in mono)
                if any(e < 0 for i, e in enumerate(mono) if i != U):
                    raise ValueError(f"negative exponent outside u: {mono!r}")
                c = _norm(to_rational(c) if isinstance(c, str) else c)
                if c:
                    clean[mono] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Scalar]) -> "MultiPoly":
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # construction ---------------------------------------------------------

    @classmethod
    def const(cls, c) -> "MultiPoly":
        c = _norm(to_rational(c))
        return cls._raw({ONE_MONO: c} if c else {})

    @classmethod
    def var(cls, name, power: int = 1) -> "MultiPoly":
        idx = _var_index(name)
        if power < 0 and idx != U:
            raise ValueError("only u may carry a negative exponent")
        mono = [0] * NVARS
        mono[idx] = power
        return cls._raw({tuple(mono): 1})

    @classmethod
    def monomial(cls, exponents: Iterable[int], coeff=1) -> "MultiPoly":
        exps = tuple(exponents)
        exps = exps + (0,) * (NVARS - len(exps))
        return cls({exps: to_rational(coeff)})

    # inspection -----------------------------------------------------------

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        """Copy of the term map with Fraction coefficients."""
        return {m: Fraction(c) for m, c in self._terms.items()}

    def items(self):
        """Terms in descending graded-lex order."""
        for mono in sorted(self._terms, key=glex_key, reverse=True):
            yield mono, Fraction(self._terms[mono])

    def coeff(self, mono: Monomial) -> Fraction:
        mono = tuple(mono) + (0,) * (NVARS - len(mono))
        return Fraction(self._terms.get(mono, 0))

    def monomials(self):
        return self._terms.keys()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONO in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return Fraction(self._terms.get(ONE_MONO, 0))

    def unit_parts(self):
        """Return ``(c, k)`` if this is ``c * u**k`` with ``c != 0``, else None."""
        if len(self._terms) != 1:
            return None
        ((mono, c),) = self._terms.items()
        if any(e for i, e in enumerate(mono) if i != U):
            return None
        return Fraction(c), mono[U]

    def uses(self, var) -> bool:
        idx = _var_index(var)
        return any(m[idx] for m in self._terms)

    # arithmetic -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == MultiPoly.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    @staticmethod
    def _coerce(other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for mono, c in other._terms.items():
            c = out.get(mono, 0) + c
            if c:
                out[mono] = _norm(c)
            else:
                out.pop(mono, None)
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MultiPoly":
        c = _norm(to_rational(c))
        if not c:
            return MultiPoly._raw({})
        if c == 1:
            return self
        return MultiPoly._raw({m: _norm(a * c) for m, a in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return MultiPoly._raw({})
        if len(a) == 1 and ONE_MONO in a:
            return other.scale(a[ONE_MONO])
        if len(b) == 1 and ONE_MONO in b:
            return self.scale(b[ONE_MONO])
        out: Dict[Monomial, Scalar] = {}
        get = out.get
        for ma, ca in a.items():
            for mb, cb in b.items():
                mono = (ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2],
                        ma[3] + mb[3], ma[4] + mb[4], ma[5] + mb[5])
                out[mono] = get(mono, 0) + ca * cb
        return MultiPoly._raw({m: _norm(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            parts = self.unit_parts()
            if parts is None:
                raise ValueError("negative powers only exist for c*u**k")
            c, k = parts
            return MultiPoly.monomial(_u_mono(k * n), c ** n)
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # substitution and evaluation -----------------------------------------

    def substitute(self, var, value) -> "MultiPoly":
        """Replace ``var`` by a rational ``value``."""
        idx = _var_index(var)
        value = _norm(to_rational(value))
        out: Dict[Monomial, Scalar] = {}
        for mono, c in self._terms.items():
            e = mono[idx]
            if e < 0 and value == 0:
                raise SubstituteZeroIntoLaurent(
                    f"cannot set {VARS[idx]} = 0 in a term with {VARS[idx]}^{e}")
            factor = value ** e if e else 1
            if not factor:
                continue
            key = mono[:idx] + (0,) + mono[idx + 1:]
            out[key] = out.get(key, 0) + c * factor
        return MultiPoly._raw({m: _norm(c) for m, c in out.items() if c})

    def compose(self, mapping: Mapping) -> "MultiPoly":
        """Simultaneously replace variables by polynomials.

        ``mapping`` maps a variable name or index to a MultiPoly (or scalar).
        A variable with negative exponents may only be replaced by a unit
        ``c * u**k``.
        """
        repl = {_var_index(k): (v if isinstance(v, MultiPoly) else MultiPoly.const(v))
                for k, v in mapping.items()}
        cache: Dict[Tuple[int, int], MultiPoly] = {}

        def power(idx, e):
            key = (idx, e)
            if key not in cache:
                if e < 0 and repl[idx].is_zero():
                    raise SubstituteZeroIntoLaurent(
                        f"cannot set {VARS[idx]} = 0 in a term with {VARS[idx]}^{e}")
                cache[key] = repl[idx] ** e
            return cache[key]

        total = MultiPoly()
        for mono, c in self._terms.items():
            kept = list(mono)
            term = MultiPoly.const(c)
            for idx in repl:
                if mono[idx]:
                    term = term * power(idx, mono[idx])
                    kept[idx] = 0
            total = total + term * MultiPoly._raw({tuple(kept): 1})
        return total

    def evaluate(self, point: Mapping) -> Fraction:
        """Exact value with every variable in ``point``; missing ones default to 0."""
        vals = [Fraction(0)] * NVARS
        for k, v in point.items():
            vals[_var_index(k)] = to_rational(v)
        total = Fraction(0)
        for mono, c in self._terms.items():
            term = Fraction(c)
            for idx, e in enumerate(mono):
                if e:
                    if e < 0 and vals[idx] == 0:
                        raise SubstituteZeroIntoLaurent(
                            f"{VARS[idx]} = 0 meets {VARS[idx]}^{e}")
                    term *= vals[idx] ** e
            total += term
        return total

    # rendering ------------------------------------------------------------

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"MultiPoly({render(self)!r})"


def _u_mono(k: int) -> Monomial:
    mono = [0] * NVARS
    mono[U] = k
    return tuple(mono)


def render_monomial(mono: Monomial) -> str:
    parts = []
    for name, e in zip(VARS, mono):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def render(p: MultiPoly) -> str:
    """Canonical text: descending graded-lex terms, coefficients as ``p/q``."""
    if p.is_zero():
        return "0"
    out = []
    for mono, c in p.items():
        sign = "-" if c < 0 else "+"
        c = abs(c)
        body = render_monomial(mono)
        if mono == ONE_MONO:
            text = str(c)
        elif c == 1:
            text = body
        else:
            text = f"{c}*{body}"
        out.append((sign, text))
    first_sign, first = out[0]
    pieces = [("-" if first_sign == "-" else "") + first]
    pieces += [f" {sign} {text}" for sign, text in out[1:]]
    return "".join(pieces)


# module-level operations ---------------------------------------------------

def poly_add(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a + b


def poly_mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a * b


def poly_substitute(p: MultiPoly, var, value) -> MultiPoly:
    return p.substitute(var, value)


def poly_eval(p: MultiPoly, x=0, y=0, u=1, l=0) -> Fraction:
    return p.evaluate({"x": x, "y": y, "u": u, "l": l})


x_ = MultiPoly.var("x")
y_ = MultiPoly.var("y")
u_ = MultiPoly.var("u")
l_ = MultiPoly.var("l")
s_ = MultiPoly.var("s")
v_ = MultiPoly.var("v")
