"""Registry and exact checker for the polynomial identities of the tangent family.

Each :class:`IdentityCase` pairs two evaluators.  An evaluator takes an
:class:`Env` (the argument polynomials), a parameter point (``r``, ``k``,
...) and a truncation order ``N``; it returns a mapping from an index tuple
(``(n,)`` or ``(n, m)``) to the polynomial that side assigns to that index.
Cases are registered as printed; where the generating-function algebra
points to a different reading, that reading is a named :class:`Variant`
and is checked alongside, never in place of, the printed form.
"""
from __future__ import annotations

import itertools
import json
import random
import zlib
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .arith import MultiPoly, binomial, glex_key, l_, render_monomial, s_, u_, v_, x_, y_
from .errors import EgfError, UnknownCase
from .families import family, stirling2
from .series import EgfSeries, series_pow

VERIFIED = "Verified"
FAILED = "FailedAsPrinted"
ERROR = "Error"

Index = Tuple[int, ...]
Sequence_ = Dict[Index, MultiPoly]
Evaluator = Callable[["Env", dict, int], Sequence_]

ONE = MultiPoly.const(1)


@dataclass(frozen=True)
class Env:
    """Argument polynomials handed to evaluators.

    The symbolic environment uses the formal variables; a numeric one binds
    every variable to a rational, turning each evaluation into scalar series
    arithmetic (used to re-validate verdicts by a second route).
    """
    x: MultiPoly = x_
    y: MultiPoly = y_
    u: MultiPoly = u_
    l: MultiPoly = l_
    s: MultiPoly = s_
    v: MultiPoly = v_
    numeric: bool = False

    @classmethod
    def at(cls, point: Mapping[str, Fraction]) -> "Env":
        return cls(**{name: MultiPoly.const(point.get(name, 0))
                      for name in ("x", "y", "u", "l", "s", "v")}, numeric=True)

    def fam(self, name: str, N: int, r: int = 1, k: Optional[int] = None,
            x: Optional[MultiPoly] = None, y: Optional[MultiPoly] = None) -> EgfSeries:
        return family(name, N, r, k,
                      x=self.x if x is None else x,
                      y=self.y if y is None else y,
                      u=self.u, l=self.l)

    def u_to_one(self, build: Callable[["Env"], EgfSeries]) -> EgfSeries:
        """Build a series and send ``u -> 1``."""
        if self.numeric:
            return build(replace(self, u=ONE))
        return build(self).map(lambda p: p.substitute("u", 1))

    def l_to_zero(self, build: Callable[["Env"], EgfSeries]) -> EgfSeries:
        if self.numeric:
            return build(replace(self, l=MultiPoly()))
        return build(self).map(lambda p: p.substitute("l", 0))


SYMBOLIC = Env()


@dataclass(frozen=True)
class Variant:
    id: str
    description: str
    rhs: Optional[Evaluator] = None
    lhs: Optional[Evaluator] = None


@dataclass(frozen=True)
class IdentityCase:
    id: str
    description: str
    anchor: str
    lhs: Evaluator
    rhs: Evaluator
    grid: Tuple[dict, ...] = ({},)
    max_n: Optional[int] = None
    variants: Tuple[Variant, ...] = ()
    mandatory: bool = False
    # a verified variant counts towards the mandatory gate (printed form known to differ)
    variant_satisfies: bool = False
    lemmas: Tuple[str, ...] = ()

    def __post_init__(self):
        if not self.grid:
            raise ValueError(f"case {self.id}: parameter grid must be nonempty")


@dataclass(frozen=True)
class Mismatch:
    index: Index
    monomial: tuple
    lhs: Fraction
    rhs: Fraction
    revalidated: Optional[bool] = None

    @property
    def n(self) -> int:
        return self.index[0]

    def to_json(self) -> dict:
        out = {
            "n": self.index[0],
            "index": list(self.index),
            "monomial": render_monomial(self.monomial),
            "exponents": list(self.monomial),
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
        }
        if self.revalidated is not None:
            out["revalidated"] = self.revalidated
        return out


@dataclass
class Outcome:
    status: str
    mismatch: Optional[Mismatch] = None
    error: Optional[str] = None
    spot_checked: Optional[bool] = None

    def to_json(self) -> dict:
        out = {"status": self.status,
               "mismatch": self.mismatch.to_json() if self.mismatch else None}
        if self.error:
            out["error"] = self.error
        if self.spot_checked is not None:
            out["spot_checked"] = self.spot_checked
        return out


@dataclass
class VerificationResult:
    case_id: str
    params: dict
    status: str
    mismatch: Optional[Mismatch] = None
    variants: List[Tuple[str, Outcome]] = field(default_factory=list)
    error: Optional[str] = None
    spot_checked: Optional[bool] = None

    def to_json(self) -> dict:
        out = Outcome(self.status, self.mismatch, self.error, self.spot_checked).to_json()
        out = {"params": dict(self.params), **out}
        out["variants"] = [{"id": vid, **o.to_json()} for vid, o in self.variants]
        return out


# comparison -----------------------------------------------------------------

def index_key(idx: Index):
    return (sum(idx), idx)


def first_mismatch(lhs: Sequence_, rhs: Sequence_, bound: int) -> Optional[Mismatch]:
    """Smallest index (total, then lexicographic), then graded-lex smallest monomial."""
    keys = sorted((k for k in set(lhs) | set(rhs) if sum(k) <= bound), key=index_key)
    zero = MultiPoly()
    for key in keys:
        a, b = lhs.get(key, zero), rhs.get(key, zero)
        if a != b:
            diff = a - b
            mono = min(diff.monomials(), key=glex_key)
            return Mismatch(key, mono, a.coeff(mono), b.coeff(mono))
    return None


def _bound(case: IdentityCase, N: int) -> int:
    return N if case.max_n is None else min(N, case.max_n)


def _sides(case: IdentityCase, variant: Optional[Variant], env: Env, params: dict, N: int):
    lhs_fn = variant.lhs if variant and variant.lhs else case.lhs
    rhs_fn = variant.rhs if variant and variant.rhs else case.rhs
    return lhs_fn(env, params, N), rhs_fn(env, params, N)


def _seed(case_id: str, params: dict, tag: str) -> int:
    text = f"{case_id}|{json.dumps(params, sort_keys=True)}|{tag}"
    return zlib.crc32(text.encode())


def random_point(rng: random.Random) -> Dict[str, Fraction]:
    """Small random rationals; ``u`` is kept nonzero."""
    def q():
        return Fraction(rng.randint(-9, 9), rng.randint(1, 7))
    pt = {name: q() for name in ("x", "y", "l", "s", "v")}
    u = q()
    while u == 0:
        u = q()
    pt["u"] = u
    return pt


def spot_check(case: IdentityCase, variant: Optional[Variant], params: dict, N: int,
               symbolic: Tuple[Sequence_, Sequence_], points: int = 3,
               rng: Optional[random.Random] = None) -> Tuple[bool, List[Index]]:
    """Evaluate both sides numerically at random points.

    Returns ``(consistent, differing)``: ``consistent`` says the numeric route
    reproduced the symbolic polynomials at every point, ``differing`` lists the
    indices where the numeric sides disagreed at some point.
    """
    rng = rng or random.Random(_seed(case.id, params, variant.id if variant else ""))
    bound = _bound(case, N)
    lhs_sym, rhs_sym = symbolic
    consistent = True
    differing = set()
    for _ in range(points):
        pt = random_point(rng)
        lhs_num, rhs_num = _sides(case, variant, Env.at(pt), params, N)
        for key in lhs_sym:
            if sum(key) > bound:
                continue
            a = lhs_num[key].constant_value()
            b = rhs_num[key].constant_value()
            if a != lhs_sym[key].evaluate(pt) or b != rhs_sym[key].evaluate(pt):
                consistent = False
            if a != b:
                differing.add(key)
    return consistent, sorted(differing, key=index_key)


def _check(case: IdentityCase, variant: Optional[Variant], params: dict, N: int,
           revalidate: bool) -> Outcome:
    try:
        lhs, rhs = _sides(case, variant, SYMBOLIC, params, N)
        mm = first_mismatch(lhs, rhs, _bound(case, N))
        if not revalidate:
            return Outcome(FAILED if mm else VERIFIED, mm)
        consistent, differing = spot_check(case, variant, params, N, (lhs, rhs))
        if mm is None:
            return Outcome(VERIFIED, None, spot_checked=consistent and not differing)
        mm = replace(mm, revalidated=revalidate_mismatch(case, variant, params, N, mm)
                     and consistent and mm.index in differing)
        return Outcome(FAILED, mm)
    except (EgfError, ArithmeticError, ValueError) as exc:
        return Outcome(ERROR, None, error=f"{case.id}: {type(exc).__name__}: {exc}")


def revalidate_mismatch(case: IdentityCase, variant: Optional[Variant], params: dict,
                        N: int, mm: Mismatch) -> bool:
    """Recompute both sides from scratch and confirm the reported coefficients."""
    lhs, rhs = _sides(case, variant, SYMBOLIC, params, N)
    a = lhs[mm.index].coeff(mm.monomial)
    b = rhs[mm.index].coeff(mm.monomial)
    return a == mm.lhs and b == mm.rhs and a != b


def run_case(case: IdentityCase, N: int, revalidate: bool = True) -> List[VerificationResult]:
    if N < 1:
        raise ValueError("truncation order must be >= 1")
    results = []
    for params in case.grid:
        printed = _check(case, None, params, N, revalidate)
        res = VerificationResult(case.id, dict(params), printed.status, printed.mismatch,
                                 error=printed.error, spot_checked=printed.spot_checked)
        for variant in case.variants:
            res.variants.append((variant.id, _check(case, variant, params, N, revalidate)))
        results.append(res)
    return results


def case_verdict(results: Sequence[VerificationResult]) -> str:
    statuses = {r.status for r in results}
    if ERROR in statuses:
        return ERROR
    return FAILED if FAILED in statuses else VERIFIED


def variant_verdict(results: Sequence[VerificationResult], vid: str) -> str:
    statuses = {o.status for r in results for v, o in r.variants if v == vid}
    if ERROR in statuses:
        return ERROR
    return FAILED if FAILED in statuses else VERIFIED


def mandatory_passes(case: IdentityCase, results: Sequence[VerificationResult]) -> bool:
    for r in results:
        if r.status == VERIFIED:
            continue
        if case.variant_satisfies and any(o.status == VERIFIED for _, o in r.variants):
            continue
        return False
    return True


# helpers for evaluators -------------------------------------------------------

def seq(f: EgfSeries) -> Sequence_:
    return {(n,): c for n, c in enumerate(f.coeffs)}


def from_fn(N: int, fn: Callable[[int], MultiPoly]) -> Sequence_:
    return {(n,): fn(n) for n in range(N + 1)}


def powers(p: MultiPoly, N: int) -> List[MultiPoly]:
    out = [ONE]
    for _ in range(N):
        out.append(out[-1] * p)
    return out


def conv(a: Sequence[MultiPoly], b: Sequence[MultiPoly], n: int) -> MultiPoly:
    """``sum_k C(n,k) a_k b_{n-k}``."""
    total = MultiPoly()
    for k in range(n + 1):
        if a[k] and b[n - k]:
            total = total + a[k] * b[n - k] * binomial(n, k)
    return total


def _grid(**axes) -> Tuple[dict, ...]:
    names = list(axes)
    return tuple(dict(zip(names, combo)) for combo in itertools.product(*axes.values()))


R123 = (1, 2, 3)


# the catalog ------------------------------------------------------------------

def _tangent(E, N, r, x):
    return E.fam("tangent", N, r, x=x)


def _ht(E, N, r, x=None, y=None):
    return E.fam("hermite-tangent", N, r, x=x, y=y)


def _mht(E, N, r, x=None, y=None):
    return E.fam("mod-deg-hermite-tangent", N, r, x=x, y=y)


def _mh(E, N, x=None, y=None):
    return E.fam("mod-deg-hermite", N, x=x, y=y)


def _catalog() -> List[IdentityCase]:
    cases: List[IdentityCase] = []
    add = cases.append
    Z = MultiPoly()

    # -- tangent polynomials of order r --------------------------------------
    def i1_rhs(E, p, N):
        nums = _tangent(E, N, p["r"], Z)
        xp = powers(E.x, N)
        return from_fn(N, lambda n: conv(nums.coeffs, xp, n))

    add(IdentityCase(
        "I1", "tangent polynomials from tangent numbers and powers of x",
        "T_n^(r)(x) = sum_k C(n,k) T_k^(r) x^(n-k)",
        lambda E, p, N: seq(_tangent(E, N, p["r"], E.x)), i1_rhs,
        grid=_grid(r=R123), mandatory=True))

    def i2_rhs(E, p, N):
        t = _tangent(E, N, p["r"], E.x)
        return from_fn(N, lambda n: conv(t.coeffs, powers(E.y, N), n))

    add(IdentityCase(
        "I2", "addition formula for tangent polynomials (indices read as n, l)",
        "T_n^(r)(x+y) = sum_l C(n,l) T_l^(r)(x) y^(n-l)",
        lambda E, p, N: seq(_tangent(E, N, p["r"], E.x + E.y)), i2_rhs,
        grid=_grid(r=R123), mandatory=True))

    def i3_rhs(E, p, N):
        a = _tangent(E, N, p["r1"], E.x)
        b = _tangent(E, N, p["r2"], E.y)
        return from_fn(N, lambda n: conv(a.coeffs, b.coeffs, n))

    add(IdentityCase(
        "I3", "order-addition formula for tangent polynomials",
        "T_n^(r1+r2)(x+y) = sum_k C(n,k) T_k^(r1)(x) T_(n-k)^(r2)(y)",
        lambda E, p, N: seq(_tangent(E, N, p["r1"] + p["r2"], E.x + E.y)), i3_rhs,
        grid=_grid(r1=R123, r2=R123), mandatory=True))

    def i4_lhs_complement(E, p, N):
        a = _tangent(E, N, p["r"], E.x * 2 + 2)
        b = _tangent(E, N, p["r"], E.x * 2)
        return seq(a + b)

    add(IdentityCase(
        "I4", "doubling relation for tangent polynomials",
        "T_n^(r)(2(x+1)) = 2 T_n^(r-1)(2x)",
        lambda E, p, N: seq(_tangent(E, N, p["r"], E.x * 2 + 2)),
        lambda E, p, N: seq(_tangent(E, N, p["r"] - 1, E.x * 2).scale(2)),
        grid=_grid(r=R123),
        variants=(Variant("I4-complement", "T_n^(r)(2x+2) + T_n^(r)(2x) = 2 T_n^(r-1)(2x)",
                          lhs=i4_lhs_complement),)))

    add(IdentityCase(
        "I-complement", "complement relation for first-order tangent polynomials",
        "T_n(x+2) + T_n(x) = 2 x^n",
        lambda E, p, N: seq(_tangent(E, N, 1, E.x + 2) + _tangent(E, N, 1, E.x)),
        lambda E, p, N: from_fn(N, lambda n: E.x ** n * 2),
        mandatory=True))

    # -- limits and reductions ---------------------------------------------------
    classical = {"mod-deg-bernoulli": "bernoulli", "mod-deg-euler": "euler",
                 "mod-deg-genocchi": "genocchi", "mod-deg-hermite": "hermite",
                 "mod-deg-hermite-tangent": "hermite-tangent"}

    def limit_lhs(E, p, N):
        return seq(E.u_to_one(lambda e: e.fam(p["family"], N, p.get("r", 1))))

    def limit_rhs(E, p, N):
        return seq(E.fam(classical[p["family"]], N, p.get("r", 1)))

    add(IdentityCase(
        "I5", "modified degenerate Bernoulli/Euler/Genocchi at u = 1 (lambda -> 0)",
        "lim_{lambda->0} B_{n,lambda}(x), E_{n,lambda}(x), G_{n,lambda}(x) = B_n(x), E_n(x), G_n(x)",
        limit_lhs, limit_rhs,
        grid=_grid(family=("mod-deg-bernoulli", "mod-deg-euler", "mod-deg-genocchi")),
        mandatory=True,
        lemmas=("(1+lambda)^(t/lambda) = exp(u t) with u = ln(1+lambda)/lambda -> 1",)))

    add(IdentityCase(
        "I5H", "modified degenerate Hermite and Hermite-tangent at u = 1",
        "lim_{lambda->0} H_n(x,y:lambda) = H_n(x,y), HT_n^(r)(x,y:lambda) = HT_n^(r)(x,y)",
        limit_lhs, limit_rhs,
        grid=({"family": "mod-deg-hermite"},)
        + tuple({"family": "mod-deg-hermite-tangent", "r": r} for r in R123),
        lemmas=("(1+lambda)^(t/lambda) = exp(u t) with u = ln(1+lambda)/lambda -> 1",)))

    reduction_targets = {"poly-bernoulli": "bernoulli", "poly-genocchi": "genocchi",
                         "poly-euler": "euler"}

    def i6_rhs(E, p, N):
        base = E.fam(reduction_targets[p["family"]], N)
        if p["family"] == "poly-bernoulli":
            return from_fn(N, lambda n: base.coeffs[n] * (-1) ** (n + 1))
        return seq(base)

    def i6_variant_rhs(E, p, N):
        if p["family"] == "poly-bernoulli":
            return seq(E.fam("bernoulli", N, x=E.x + 1))
        return seq(E.fam(reduction_targets[p["family"]], N))

    add(IdentityCase(
        "I6", "poly-Bernoulli, poly-Genocchi and poly-Euler polynomials at k = 1",
        "PB_n^(1)(x) = (-1)^(n+1) B_n(x); PG_n^(1)(x) = G_n(x); PE_n^(1)(x) = E_n(x)",
        lambda E, p, N: seq(E.fam(p["family"], N, k=1)), i6_rhs,
        grid=_grid(family=("poly-bernoulli", "poly-genocchi", "poly-euler")),
        variants=(Variant("I6-shift", "PB_n^(1)(x) = B_n(x+1); other families as printed",
                          rhs=i6_variant_rhs),),
        mandatory=True, variant_satisfies=True,
        lemmas=("Li_1(1 - e^{-t}) = t",)))

    def c10_rhs(E, p, N):
        nums = E.fam("carlitz-deg-bernoulli", N, x=Z)
        ff = [ONE]
        for j in range(N):
            ff.append(ff[-1] * (E.x - E.l * j))
        return from_fn(N, lambda n: conv(nums.coeffs, ff, n))

    add(IdentityCase(
        "C10", "Carlitz degenerate Bernoulli polynomials via (x|lambda)_l",
        "B_n(x|lambda) = sum_l C(n,l) B_(n-l)(lambda) (x|lambda)_l",
        lambda E, p, N: seq(E.fam("carlitz-deg-bernoulli", N)), c10_rhs))

    add(IdentityCase(
        "C10-limit", "Carlitz degenerate Bernoulli polynomials at lambda = 0",
        "B_n(x|0) = B_n(x)",
        lambda E, p, N: seq(E.l_to_zero(lambda e: e.fam("carlitz-deg-bernoulli", N))),
        lambda E, p, N: seq(E.fam("bernoulli", N))))

    # -- Stirling numbers ---------------------------------------------------------
    def s2_lhs(E, p, N):
        m = p["m"]
        base = EgfSeries.exponential(1, N) - EgfSeries.constant(1, N)
        f = series_pow(base, m).scale(Fraction(1, factorial(m)))
        return seq(f)

    add(IdentityCase(
        "S2", "Stirling numbers of the second kind from (e^t-1)^m/m!",
        "(e^t-1)^m/m! = sum_n S2(n,m) t^n/n!",
        s2_lhs, lambda E, p, N: from_fn(N, lambda n: MultiPoly.const(stirling2(n, p["m"]))),
        grid=_grid(m=(0, 1, 2, 3, 4, 5))))

    def falling(E, n):
        out = ONE
        for j in range(n):
            out = out * (E.x - j)
        return out

    add(IdentityCase(
        "S1", "powers of x in the falling-factorial basis",
        "x^n = sum_k S2(n,k) (x)_k",
        lambda E, p, N: from_fn(N, lambda n: E.x ** n),
        lambda E, p, N: from_fn(N, lambda n: sum(
            (falling(E, k) * stirling2(n, k) for k in range(n + 1)), MultiPoly()))))

    # -- Hermite-based tangent polynomials ------------------------------------
    def t1a_rhs(E, p, N):
        nums = _tangent(E, N, p["r"], Z)
        h = E.fam("hermite", N)
        return from_fn(N, lambda n: conv(nums.coeffs, h.coeffs, n))

    add(IdentityCase(
        "T1a", "Hermite-based tangent polynomials from tangent numbers",
        "HT_n^(r)(x,y) = sum_k C(n,k) T_k^(r) H_(n-k)(x,y)",
        lambda E, p, N: seq(_ht(E, N, p["r"])), t1a_rhs,
        grid=_grid(r=R123), mandatory=True))

    def t1b_rhs(E, p, N):
        a = _ht(E, N, p["r"])
        h = E.fam("hermite", N, x=E.s, y=E.v)
        return from_fn(N, lambda n: conv(a.coeffs, h.coeffs, n))

    add(IdentityCase(
        "T1b", "addition formula for Hermite-based tangent polynomials",
        "HT_n^(r)(x+s,y+v) = sum_k C(n,k) HT_k^(r)(x,y) H_(n-k)(s,v)",
        lambda E, p, N: seq(_ht(E, N, p["r"], E.x + E.s, E.y + E.v)), t1b_rhs,
        grid=_grid(r=R123), mandatory=True))

    def t1c_rhs(E, p, N):
        a = _ht(E, N, p["r1"])
        b = _ht(E, N, p["r2"], E.s, E.v)
        return from_fn(N, lambda n: conv(a.coeffs, b.coeffs, n))

    add(IdentityCase(
        "T1c", "order-addition formula for Hermite-based tangent polynomials",
        "HT_n^(r1+r2)(x+s,y+v) = sum_k C(n,k) HT_k^(r1)(x,y) HT_(n-k)^(r2)(s,v)",
        lambda E, p, N: seq(_ht(E, N, p["r1"] + p["r2"], E.x + E.s, E.y + E.v)), t1c_rhs,
        grid=_grid(r1=R123, r2=R123), mandatory=True))

    def t2_rhs(first, second):
        def rhs(E, p, N):
            a = _ht(E, N, p["r"])
            h1 = first(E, N)
            h2 = second(E, N)
            inner = [conv(h1.coeffs, h2.coeffs, m) for m in range(N + 1)]
            return from_fn(N, lambda n: conv(inner, a.coeffs, n))
        return rhs

    def h_xy(E, N):
        return E.fam("hermite", N)

    def h_sv(E, N):
        return E.fam("hermite", N, x=E.s, y=E.v)

    def h_2s2v(E, N):
        return E.fam("hermite", N, x=E.s * 2, y=E.v * 2)

    add(IdentityCase(
        "T2", "doubling formula for Hermite-based tangent polynomials",
        "HT_n^(r)(2(x+s),2(y+v)) = sum_m C(n,m) HT_(n-m)^(r)(x,y) sum_p C(m,p) H_p(x,y) H_(m-p)(x,y)",
        lambda E, p, N: seq(_ht(E, N, p["r"], (E.x + E.s) * 2, (E.y + E.v) * 2)),
        t2_rhs(h_xy, h_xy),
        grid=_grid(r=R123),
        variants=(
            Variant("T2-sv", "inner product H_p(s,v) H_(m-p)(x,y)", rhs=t2_rhs(h_sv, h_xy)),
            Variant("T2-2s2v", "inner product H_p(x,y) H_(m-p)(2s,2v)",
                    rhs=t2_rhs(h_xy, h_2s2v)),
        )))

    def t3_sides(lhs_x, lhs_y, shift):
        def lhs(E, p, N):
            f = _ht(E, N, p["r"], lhs_x(E), lhs_y(E))
            return {(n, m): f.coeffs[n + m] for n in range(N + 1) for m in range(N + 1 - n)}

        def rhs(E, p, N):
            f = _ht(E, N, p["r"])
            h = powers(shift(E), N)
            out = {}
            for n in range(N + 1):
                for m in range(N + 1 - n):
                    total = MultiPoly()
                    for a in range(n + 1):
                        for b in range(m + 1):
                            c = binomial(n, a) * binomial(m, b)
                            total = total + h[a + b] * f.coeffs[n + m - a - b] * c
                    out[(n, m)] = total
            return out
        return lhs, rhs

    t3_lhs, t3_rhs = t3_sides(lambda E: E.s, lambda E: E.v, lambda E: E.v - E.y)
    t3v_lhs, t3v_rhs = t3_sides(lambda E: E.v, lambda E: E.y, lambda E: E.v - E.x)
    add(IdentityCase(
        "T3", "implicit two-index relation for Hermite-based tangent polynomials "
              "(second point (u,v) written (s,v))",
        "HT_(n+m)^(r)(s,v) = sum_p C(n,p) sum_q C(m,q) (v-y)^(p+q) HT_(n+m-p-q)^(r)(x,y)",
        t3_lhs, t3_rhs, grid=_grid(r=R123),
        variants=(Variant("T3-shift", "HT_(n+m)^(r)(v,y) with shift (v-x)^(p+q)",
                          lhs=t3v_lhs, rhs=t3v_rhs),)))

    def t4_lhs(E, p, N):
        x = (E.x + E.s) * Fraction(1, 4)
        y = (E.y + E.v) * Fraction(1, 16)
        return seq(E.fam("hermite-bernoulli", N, p["r"], x=x, y=y))

    def t4_rhs(weight):
        def rhs(E, p, N):
            r = p["r"]
            a = _ht(E, N, r)
            b = E.fam("hermite-bernoulli", N, r, x=E.s * Fraction(1, 2), y=E.v * Fraction(1, 4))

            def term(n):
                total = MultiPoly()
                for k in range(n + 1):
                    c = binomial(n, k) * weight(r, n, k)
                    total = total + a.coeffs[k] * b.coeffs[n - k] * c
                return total
            return from_fn(N, term)
        return rhs

    add(IdentityCase(
        "T4", "Hermite-based Bernoulli polynomials through Hermite-based tangent polynomials "
              "(power of 2 outside the sum, unbound k read as 0)",
        "HB_n^(r)((x+s)/4,(y+v)/16) = 2^(r-n-k) sum_k C(n,k) HT_k^(r)(x,y) HB_(n-k)^(r)(s/2,v/4)",
        t4_lhs, t4_rhs(lambda r, n, k: Fraction(2) ** (r - n)),
        grid=_grid(r=R123),
        variants=(
            Variant("T4-inside", "factor 2^(r-n-k) inside the k-sum",
                    rhs=t4_rhs(lambda r, n, k: Fraction(2) ** (r - n - k))),
            Variant("T4-scale", "factor 2^(-n-k) inside the k-sum",
                    rhs=t4_rhs(lambda r, n, k: Fraction(2) ** (-n - k))),
        )))

    # -- modified degenerate Hermite-based tangent polynomials --------------------
    def m1_rhs(E, p, N):
        a = _mht(E, N, p["r1"])
        b = _mht(E, N, p["r2"], E.s, E.v)
        return from_fn(N, lambda n: conv(a.coeffs, b.coeffs, n))

    add(IdentityCase(
        "M1", "order-addition formula, modified degenerate Hermite-based tangent",
        "HT_n^(r1+r2)(x+s,y+v:l) = sum_k C(n,k) HT_k^(r1)(x,y:l) HT_(n-k)^(r2)(s,v:l)",
        lambda E, p, N: seq(_mht(E, N, p["r1"] + p["r2"], E.x + E.s, E.y + E.v)), m1_rhs,
        grid=_grid(r1=R123, r2=R123)))

    def m2_rhs(E, p, N):
        a = _mht(E, N, p["r"], Z, Z)
        h = _mh(E, N)
        return from_fn(N, lambda n: conv(a.coeffs, h.coeffs, n))

    add(IdentityCase(
        "M2", "modified degenerate Hermite-based tangent from its numbers",
        "HT_n^(r)(x,y:l) = sum_k C(n,k) HT_k^(r)(0,0:l) H_(n-k)(x,y:l)",
        lambda E, p, N: seq(_mht(E, N, p["r"])), m2_rhs, grid=_grid(r=R123)))

    add(IdentityCase(
        "M3", "complement relation, modified degenerate Hermite-based tangent",
        "HT_n^(r)(x+2,y:l) + HT_n^(r)(x,y:l) = 2 HT_n^(r-1)(x,y:l)",
        lambda E, p, N: seq(_mht(E, N, p["r"], E.x + 2) + _mht(E, N, p["r"])),
        lambda E, p, N: seq(_mht(E, N, p["r"] - 1).scale(2)),
        grid=_grid(r=R123)))

    add(IdentityCase(
        "M4", "complement relation at r = 1, modified degenerate",
        "HT_n(x+2,y:l) + HT_n(x,y:l) = 2 H_n(x,y:l)",
        lambda E, p, N: seq(_mht(E, N, 1, E.x + 2) + _mht(E, N, 1)),
        lambda E, p, N: seq(_mh(E, N).scale(2))))

    def m5_rhs(use_k):
        def rhs(E, p, N):
            a = _mht(E, N, p["r"], MultiPoly.const(Fraction(1, 2)), Z)
            h = _mh(E, N, x=E.x - Fraction(1, 2))

            def term(n):
                total = MultiPoly()
                for k in range(n + 1):
                    total = total + a.coeffs[k if use_k else n] * h.coeffs[n - k] * binomial(n, k)
                return total
            return from_fn(N, term)
        return rhs

    add(IdentityCase(
        "M5", "expansion about x = 1/2, modified degenerate Hermite-based tangent",
        "HT_n^(r)(x,y:l) = sum_k C(n,k) HT_n^(r)(1/2,0:l) H_(n-k)(x-1/2,y:l)",
        lambda E, p, N: seq(_mht(E, N, p["r"])), m5_rhs(False),
        grid=_grid(r=R123),
        variants=(Variant("M5-index", "summand index k on HT_k^(r)(1/2,0:l)", rhs=m5_rhs(True)),)))

    def t5_lhs(E, p, N):
        b = E.fam("mod-hermite-bernoulli", N)
        return from_fn(N, lambda n: b.coeffs[n] * 2 ** (2 * n + 1))

    def t5_rhs(inner_index_k):
        def rhs(E, p, N):
            t = _mht(E, N, 1)
            b = E.fam("mod-hermite-bernoulli", N)
            e = E.fam("mod-hermite-euler", N, x=E.x * 2, y=E.y * 14)

            def term(n):
                total = MultiPoly()
                for q in range(n + 1):
                    inner = MultiPoly()
                    for k in range(q + 1):
                        ei = e.coeffs[k if inner_index_k else q]
                        inner = inner + b.coeffs[q - k] * ei * binomial(q, k)
                    total = total + t.coeffs[n - q] * inner * binomial(n, q)
                return total
            return from_fn(N, term)
        return rhs

    add(IdentityCase(
        "T5", "modified Hermite-based Bernoulli via tangent, Bernoulli and Euler "
              "(free index on the Euler factor read as q)",
        "2^(2n+1) HB_n(x,y:l) = sum_q C(n,q) HT_(n-q)(x,y:l) sum_k C(q,k) HB_(q-k)(x,y:l) HE_n(2x,14y:l)",
        t5_lhs, t5_rhs(False),
        variants=(Variant("T5-conv", "Euler factor indexed by k (full convolution)",
                          rhs=t5_rhs(True)),)))

    def t6_rhs(factor):
        def rhs(E, p, N):
            hi = E.fam("mod-hermite-bernoulli", N + 1, x=E.x + 1)
            lo = E.fam("mod-hermite-bernoulli", N + 1)
            return from_fn(N, lambda n: (hi.coeffs[n + 1] - lo.coeffs[n + 1])
                           * Fraction(factor, n + 1))
        return rhs

    add(IdentityCase(
        "T6", "modified Hermite-based tangent complement via Bernoulli differences",
        "HT_n(x+2,y:l) + HT_n(x,y:l) = (HB_(n+1)(x+1,y:l) - HB_(n+1)(x,y:l)) / (n+1)",
        lambda E, p, N: seq(_mht(E, N, 1, E.x + 2) + _mht(E, N, 1)), t6_rhs(1),
        variants=(Variant("T6-double", "extra factor 2 on the right side", rhs=t6_rhs(2)),)))

    # -- Hermite-based poly-tangent polynomials -----------------------------------
    add(IdentityCase(
        "E29", "Hermite-based poly-tangent polynomials at k = 1",
        "HPT_n^(1)(x,y) = HT_n(x,y)",
        lambda E, p, N: seq(E.fam("hermite-poly-tangent", N, k=1)),
        lambda E, p, N: seq(_ht(E, N, 1)),
        lemmas=("Li_1(1 - e^{-t}) = t",)))

    def t7_rhs(E, p, N):
        k = p["k"]
        shifted = [_ht(E, N + 1, 1, E.x - j) for j in range(N + 2)]

        def term(n):
            total = MultiPoly()
            for m in range(n + 1):
                inner = MultiPoly()
                for j in range(m + 2):
                    inner = inner + shifted[j].coeffs[n + 1] * ((-1) ** j * binomial(m + 1, j))
                total = total + inner * Fraction(1, (m + 1) ** k)
            return total * Fraction(1, n + 1)
        return from_fn(N, term)

    add(IdentityCase(
        "T7", "Hermite-based poly-tangent via finite differences of HT_(n+1) "
              "(outer m-sum truncated at m = n)",
        "HPT_n^(k)(x,y) = 1/(n+1) sum_m (m+1)^-k sum_j (-1)^j C(m+1,j) HT_(n+1)(x-j,y)",
        lambda E, p, N: seq(E.fam("hermite-poly-tangent", N, k=p["k"])), t7_rhs,
        grid=_grid(k=R123),
        lemmas=("sum_j (-1)^j C(m+1,j) P(x-j) = 0 when deg P < m+1, so terms m > n vanish",)))

    def t8_rhs(fixed):
        def rhs(E, p, N):
            r, k = p["r"], p["k"]
            hb = E.fam("hermite-bernoulli", N, r)
            nums = E.fam("hermite-poly-tangent", N, k=k if fixed else r, x=Z, y=Z)

            def term(n):
                total = MultiPoly()
                for l in range(n + 1):
                    w = Fraction(binomial(n, l), binomial(l + r, r)) * stirling2(l + r, r)
                    if not w:
                        continue
                    inner = MultiPoly()
                    for i in range(n - l + 1):
                        c = binomial(n - l, i) if fixed else 1
                        inner = inner + hb.coeffs[i] * nums.coeffs[n - l - i] * c
                    total = total + inner * w
                return total
            return from_fn(N, term)
        return rhs

    add(IdentityCase(
        "T8", "Hermite-based poly-tangent through Stirling numbers and order-r "
              "Hermite-based Bernoulli polynomials",
        "HPT_n^(k)(x,y) = sum_l C(n,l)/C(l+r,r) S2(l+r,r) sum_i HB_i^(r)(x,y) HPT_(n-l-i)^(r)",
        lambda E, p, N: seq(E.fam("hermite-poly-tangent", N, k=p["k"])), t8_rhs(False),
        grid=_grid(r=R123, k=R123),
        variants=(Variant("T8-conv", "inner binomial C(n-l,i) and poly-tangent numbers of index k",
                          rhs=t8_rhs(True)),)))

    def t9_rhs(mode):
        def rhs(E, p, N):
            g = E.fam("poly-genocchi", N + 1, k=p["k"], x=Z)
            hp = _ht(E, N, 1, E.x + 1)
            h0 = _ht(E, N, 1)

            def term(n):
                total = MultiPoly()
                for q in range(n + 1):
                    idx = n if mode == "printed" else q
                    if mode == "shifted":
                        w = g.coeffs[n - q + 1] * Fraction(1, n - q + 1)
                    else:
                        w = g.coeffs[n - q]
                    total = total + (hp.coeffs[idx] + h0.coeffs[idx]) * w * binomial(n, q)
                return total * Fraction(1, 2)
            return from_fn(N, term)
        return rhs

    add(IdentityCase(
        "T9", "Hermite-based poly-tangent through poly-Genocchi numbers",
        "HPT_n^(k)(x,y) = 1/2 sum_p C(n,p) G_(n-p)^(k) (HT_n(x+1,y) + HT_n(x,y))",
        lambda E, p, N: seq(E.fam("hermite-poly-tangent", N, k=p["k"])), t9_rhs("printed"),
        grid=_grid(k=R123),
        variants=(
            Variant("T9-index", "braces indexed by p", rhs=t9_rhs("index")),
            Variant("T9-shifted", "G_(n-p+1)^(k)/(n-p+1) in place of G_(n-p)^(k), braces indexed by p",
                    rhs=t9_rhs("shifted")),
        )))

    return cases


class Registry:
    def __init__(self, cases: Sequence[IdentityCase] = ()):
        self._cases: Dict[str, IdentityCase] = {}
        for case in cases:
            self.register(case)

    def register(self, case: IdentityCase) -> None:
        if not case.grid:
            raise ValueError(f"case {case.id}: parameter grid must be nonempty")
        if case.id in self._cases:
            raise ValueError(f"duplicate case id {case.id}")
        self._cases[case.id] = case

    def __getitem__(self, case_id: str) -> IdentityCase:
        try:
            return self._cases[case_id]
        except KeyError:
            raise UnknownCase(case_id) from None

    def __contains__(self, case_id):
        return case_id in self._cases

    def __iter__(self):
        return iter(self._cases.values())

    def __len__(self):
        return len(self._cases)

    def ids(self) -> List[str]:
        return list(self._cases)


def register_paper_catalog() -> Registry:
    return Registry(_catalog())


# reports ------------------------------------------------------------------------

def case_entry(case: IdentityCase, results: Sequence[VerificationResult]) -> dict:
    return {
        "id": case.id,
        "description": case.description,
        "anchor": case.anchor,
        "mandatory": case.mandatory,
        "lemmas": list(case.lemmas),
        "verdict": case_verdict(results),
        "variant_verdicts": {v.id: variant_verdict(results, v.id) for v in case.variants},
        "results": [r.to_json() for r in results],
    }


def run_all(N: int, registry: Optional[Registry] = None,
            case_ids: Optional[Sequence[str]] = None, revalidate: bool = True) -> dict:
    """Run the registry (or a subset) and assemble the report dictionary."""
    registry = registry or register_paper_catalog()
    if not len(registry):
        raise ValueError("registry is empty")
    cases = [registry[c] for c in case_ids] if case_ids else list(registry)
    entries = []
    failing_mandatory = []
    for case in cases:
        results = run_case(case, N, revalidate=revalidate)
        entries.append(case_entry(case, results))
        if case.mandatory and not mandatory_passes(case, results):
            failing_mandatory.append(case.id)
    verdicts = [e["verdict"] for e in entries]
    return {
        "tool": "egfverify",
        "order": N,
        "cases": entries,
        "failed_as_printed": [e["id"] for e in entries if e["verdict"] == FAILED],
        "errors": [e["id"] for e in entries if e["verdict"] == ERROR],
        "mandatory": {
            "ids": [c.id for c in cases if c.mandatory],
            "all_verified": not failing_mandatory,
            "failing": failing_mandatory,
        },
        "summary": {
            "cases": len(entries),
            "verified": verdicts.count(VERIFIED),
            "failed_as_printed": verdicts.count(FAILED),
            "errors": verdicts.count(ERROR),
        },
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"


def _fmt_params(params: dict) -> str:
    return ",".join(f"{k}={v}" for k, v in params.items()) or "-"


def _fmt_mismatch(mm: Optional[dict]) -> str:
    if not mm:
        return ""
    idx = ",".join(str(i) for i in mm["index"])
    return f"n={idx} [{mm['monomial']}] lhs={mm['lhs']} rhs={mm['rhs']}"


def report_text(report: dict) -> str:
    """Human-readable table, one row per (case, grid point)."""
    rows = [("case", "params", "status", "first mismatch", "variants")]
    for entry in report["cases"]:
        for res in entry["results"]:
            variants = " ".join(f"{v['id']}:{v['status']}" for v in res["variants"])
            status = res["status"] if not res.get("error") else f"Error({res['error']})"
            rows.append((entry["id"], _fmt_params(res["params"]), status,
                         _fmt_mismatch(res["mismatch"]), variants))
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    lines = []
    for r in rows:
        cells = [r[i].ljust(widths[i]) for i in range(4)] + [r[4]]
        lines.append("  ".join(cells).rstrip())
    s = report["summary"]
    lines.append("")
    lines.append(f"order N = {report['order']}: {s['cases']} cases, {s['verified']} verified, "
                 f"{s['failed_as_printed']} failed as printed, {s['errors']} errors")
    gate = "PASS" if report["mandatory"]["all_verified"] else "FAIL"
    lines.append(f"mandatory subset: {gate}"
                 + (f" (failing: {', '.join(report['mandatory']['failing'])})"
                    if report["mandatory"]["failing"] else ""))
    return "\n".join(lines) + "\n"
