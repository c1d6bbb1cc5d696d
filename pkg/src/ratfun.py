"""
Exact polynomials and rational functions over Q.

Polynomials wrap `sympy.Poly` over QQ in the variable t. A RatFun is kept
reduced; rational functions built from linear factors (A_n, B_n and the
Pochhammer quotients of the integrality checks) also keep their
factorization, so that their poles are read off rather than searched for and
Taylor expansions at a pole never need the dense numerator. Dense inputs are
expanded with sympy, and `sympy_principal_parts` cross-checks the factored
route against sympy's own partial fraction decomposition.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import sympy
from sympy import QQ

from constants import LOGGER_NAME, get_tunable
from errors import ConstructionError, DomainError, ReassemblyError
from numcore import as_rational, binomial_general, is_integral, lcm_upto
from utils.verdict import Verdict, verdict_from

logger = logging.getLogger(LOGGER_NAME)

T = sympy.Symbol("t")


def to_sympy(c) -> sympy.Rational:
    c = as_rational(c)
    return sympy.Rational(c.numerator, c.denominator)


def from_sympy(r) -> Fraction:
    r = sympy.Rational(r)
    return Fraction(int(r.p), int(r.q))


def _dense(descending: Sequence) -> sympy.Poly:
    return sympy.Poly.from_list([to_sympy(c) for c in descending] or [0], T, domain=QQ)


class Poly:
    """A univariate polynomial over Q backed by `sympy.Poly`.

    `coeffs` is the ascending tuple of Fraction coefficients, empty for zero.
    """

    def __init__(self, coeffs: Iterable = (), rep: Optional[sympy.Poly] = None):
        self.rep = rep if rep is not None else _dense(list(coeffs)[::-1])

    @cached_property
    def coeffs(self) -> Tuple[Fraction, ...]:
        if self.rep.is_zero:
            return ()
        return tuple(from_sympy(c) for c in reversed(self.rep.all_coeffs()))

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def linear(cls, c) -> "Poly":
        """Return t + c."""
        return cls([c, 1])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return -1 if self.rep.is_zero else self.rep.degree()

    @property
    def is_zero(self) -> bool:
        return self.rep.is_zero

    @property
    def leading(self) -> Fraction:
        return from_sympy(self.rep.LC())

    def as_expr(self) -> sympy.Expr:
        return self.rep.as_expr()

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.rep == other.rep

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __add__(self, other: "Poly") -> "Poly":
        return Poly(rep=self.rep + other.rep)

    def __neg__(self) -> "Poly":
        return Poly(rep=-self.rep)

    def __sub__(self, other: "Poly") -> "Poly":
        return Poly(rep=self.rep - other.rep)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        return Poly(rep=self.rep * other.rep)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        return Poly(rep=self.rep**e)

    def scale(self, c) -> "Poly":
        return Poly(rep=self.rep * to_sympy(c))

    def __call__(self, x) -> Fraction:
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    evaluate = __call__

    def derivative(self, k: int = 1) -> "Poly":
        rep = self.rep
        for _ in range(k):
            rep = rep.diff(T)
        return Poly(rep=rep)

    def divmod(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        if other.is_zero:
            raise DomainError("polynomial division by zero")
        quot, rem = self.rep.div(other.rep)
        return Poly(rep=quot), Poly(rep=rem)

    def exact_div(self, other: "Poly") -> Optional["Poly"]:
        """Return self / other, or None when the division leaves a remainder."""
        quot, rem = self.divmod(other)
        return quot if rem.is_zero else None

    def monic(self) -> "Poly":
        return Poly(rep=self.rep.monic()) if not self.is_zero else self

    def compose_affine(self, a, b) -> "Poly":
        """Return p(a t + b)."""
        return Poly(rep=self.rep.compose(_dense([a, b])))

    def shift(self, c) -> "Poly":
        """Return p(t + c)."""
        return Poly(rep=self.rep.shift(to_sympy(c)))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over QQ."""
    if a.is_zero and b.is_zero:
        return Poly()
    return Poly(rep=a.rep.gcd(b.rep)).monic()


def pochhammer(alpha, k: int) -> Poly:
    """Return (t + alpha)_k = (t + alpha)(t + alpha + 1)...(t + alpha + k - 1)."""
    alpha = as_rational(alpha)
    result = Poly.constant(1)
    for j in range(k):
        result = result * Poly.linear(alpha + j)
    return result


def _series_mul(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> List[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x:
            for j, y in enumerate(b[: order + 1 - i]):
                out[i + j] += x * y
    return out


def _truncated_quotient(num: Poly, den: Poly, order: int) -> List[Fraction]:
    """Return the power series num/den in t up to t^order; den(0) must be nonzero."""
    modulus = sympy.Poly(T ** (order + 1), T, domain=QQ)
    series = Poly(rep=(num.rep * den.rep.invert(modulus)).rem(modulus))
    return list(series.coeffs) + [Fraction(0)] * (order + 1 - len(series.coeffs))


@dataclass(frozen=True)
class Factorization:
    """constant * prod (t + shift)^exponent over distinct shifts, zero exponents dropped."""

    constant: Fraction
    exponents: Tuple[Tuple[Fraction, int], ...]

    @classmethod
    def build(cls, constant, exponents: Dict) -> "Factorization":
        merged: Dict[Fraction, int] = {}
        for shift, e in exponents.items():
            shift = as_rational(shift)
            merged[shift] = merged.get(shift, 0) + e
        items = tuple(sorted((c, e) for c, e in merged.items() if e != 0))
        return cls(as_rational(constant), items)

    def as_dict(self) -> Dict[Fraction, int]:
        return dict(self.exponents)


class RatFun:
    """A reduced rational function num/den with monic den."""

    def __init__(self, num: Poly, den: Poly = None, factorization: Factorization = None):
        if factorization is not None:
            self.factorization = factorization
            return
        den = den if den is not None else Poly.constant(1)
        if den.is_zero:
            raise DomainError("rational function with zero denominator")
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        lead = den.leading
        self.factorization = None
        self.__dict__["num"] = num.scale(1 / lead)
        self.__dict__["den"] = den.scale(1 / lead)

    @classmethod
    def from_factors(cls, constant, exponents: Dict) -> "RatFun":
        return cls(None, factorization=Factorization.build(constant, exponents))

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFun":
        return cls(p, Poly.constant(1))

    @cached_property
    def num(self) -> Poly:
        f = self.factorization
        result = Poly.constant(f.constant)
        for c, e in f.exponents:
            if e > 0:
                result = result * Poly.linear(c) ** e
        return result

    @cached_property
    def den(self) -> Poly:
        result = Poly.constant(1)
        for c, e in self.factorization.exponents:
            if e < 0:
                result = result * Poly.linear(c) ** (-e)
        return result

    @property
    def is_factored(self) -> bool:
        return self.factorization is not None

    @property
    def den_degree(self) -> int:
        if self.is_factored:
            return -sum(e for _, e in self.factorization.exponents if e < 0)
        return self.den.degree

    @property
    def deg(self) -> int:
        if self.is_factored:
            return sum(e for _, e in self.factorization.exponents)
        return self.num.degree - self.den.degree

    def poles(self) -> List[Tuple[Fraction, int]]:
        """Return [(shift c, multiplicity)] for the factors (t + c) of the denominator."""
        if not self.is_factored:
            raise DomainError("pole list of a dense rational function must be given explicitly")
        return [(c, -e) for c, e in self.factorization.exponents if e < 0]

    def pole_multiplicity(self, c) -> int:
        """Return the multiplicity of the root -c of the denominator."""
        c = as_rational(c)
        if self.is_factored:
            return max(0, -self.factorization.as_dict().get(c, 0))
        m = 0
        den = self.den
        linear = Poly.linear(c)
        while den.degree > 0:
            quot = den.exact_div(linear)
            if quot is None:
                break
            den = quot
            m += 1
        return m

    def __call__(self, x) -> Fraction:
        x = as_rational(x)
        if self.is_factored:
            value = self.factorization.constant
            for c, e in self.factorization.exponents:
                base = x + c
                if base == 0 and e < 0:
                    raise DomainError(f"pole at t = {x}")
                value *= base**e
            return value
        d = self.den(x)
        if d == 0:
            raise DomainError(f"pole at t = {x}")
        return self.num(x) / d

    evaluate = __call__

    def as_expr(self) -> sympy.Expr:
        return self.num.as_expr() / self.den.as_expr()

    def __eq__(self, other):
        if not isinstance(other, RatFun):
            return NotImplemented
        if self.is_factored and other.is_factored:
            return self.factorization == other.factorization
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __repr__(self):
        if self.is_factored:
            return f"RatFun(factored {self.factorization})"
        return f"RatFun({self.num!r} / {self.den!r})"

    def scale(self, q) -> "RatFun":
        q = as_rational(q)
        if self.is_factored and q != 0:
            f = self.factorization
            return RatFun(None, factorization=Factorization(f.constant * q, f.exponents))
        return RatFun(self.num.scale(q), self.den)

    def __mul__(self, other) -> "RatFun":
        if not isinstance(other, RatFun):
            return self.scale(other)
        if self.is_factored and other.is_factored:
            exps = self.factorization.as_dict()
            for c, e in other.factorization.exponents:
                exps[c] = exps.get(c, 0) + e
            return RatFun.from_factors(
                self.factorization.constant * other.factorization.constant, exps
            )
        return RatFun(self.num * other.num, self.den * other.den)

    def __add__(self, other: "RatFun") -> "RatFun":
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatFun":
        return self.scale(-1)

    def __sub__(self, other: "RatFun") -> "RatFun":
        return self + (-other)

    def compose_affine(self, a, b) -> "RatFun":
        """Return f(a t + b)."""
        a, b = as_rational(a), as_rational(b)
        if self.is_factored:
            f = self.factorization
            constant = f.constant
            exps = {}
            for c, e in f.exponents:
                constant *= a**e
                exps[(b + c) / a] = e
            return RatFun.from_factors(constant, exps)
        return RatFun(self.num.compose_affine(a, b), self.den.compose_affine(a, b))


def build_A(n: int, s: int, delta: int) -> RatFun:
    """Return A_n(t).

        A_n(t) = 2^((6s+12)n) (4t+2n)^delta (t+1/4)_n^(s+2) (t+3/4)_n^(s+2) / (t)_(n+1)^(2s+4)
    """
    if n < 1 or s < 0 or delta not in (0, 1):
        raise DomainError(f"build_A needs n >= 1, s >= 0, delta in {{0,1}}; got {n}, {s}, {delta}")
    exps: Dict[Fraction, int] = {}
    for j in range(n):
        exps[Fraction(4 * j + 1, 4)] = s + 2
        exps[Fraction(4 * j + 3, 4)] = s + 2
    for k in range(n + 1):
        exps[Fraction(k)] = -(2 * s + 4)
    if delta:
        half = Fraction(n, 2)
        exps[half] = exps.get(half, 0) + 1
    f = RatFun.from_factors(Fraction(2) ** ((6 * s + 12) * n) * 4**delta, exps)

    if f.deg > -2:
        raise ConstructionError(f"A_{n} has degree {f.deg} > -2")
    if f.compose_affine(-1, -n) != f.scale((-1) ** delta):
        raise ConstructionError(f"A_{n} fails A(-t-n) = (-1)^delta A(t)")
    return f


def build_B(n: int, s: int) -> RatFun:
    """Return B_n(t) = 2^((3s+6)n) (t+3/4)_n^(s+2) / (t)_(n+1)^(s+2)."""
    if n < 1 or s < 0:
        raise DomainError(f"build_B needs n >= 1, s >= 0; got {n}, {s}")
    exps: Dict[Fraction, int] = {Fraction(4 * j + 3, 4): s + 2 for j in range(n)}
    for k in range(n + 1):
        exps[Fraction(k)] = -(s + 2)
    f = RatFun.from_factors(Fraction(2) ** ((3 * s + 6) * n), exps)
    if f.deg > -2:
        raise ConstructionError(f"B_{n} has degree {f.deg} > -2")
    return f


def derivative(f: RatFun, s: int = 1) -> RatFun:
    """Return the s-th derivative of f in reduced dense form."""
    if s < 0:
        raise DomainError(f"derivative order must be nonnegative, got {s}")
    num, den = f.num, f.den
    for _ in range(s):
        num, den = num.derivative() * den - num * den.derivative(), den * den
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num.divmod(g)[0], den.divmod(g)[0]
    return RatFun(num, den)


def taylor_at(f: RatFun, c, order: int) -> List[Fraction]:
    """Return the coefficients of f(c + u) in powers of u up to u^order."""
    c = as_rational(c)
    if order < 0:
        raise DomainError(f"negative Taylor order {order}")
    if not f.is_factored:
        den = f.den.shift(c)
        if den(0) == 0:
            raise DomainError(f"pole at expansion point {c}")
        return _truncated_quotient(f.num.shift(c), den, order)

    series = [f.factorization.constant] + [Fraction(0)] * order
    for shift, e in f.factorization.exponents:
        base = c + shift
        if base == 0:
            if e < 0:
                raise DomainError(f"pole at expansion point {c}")
            factor = [Fraction(0)] * (order + 1)
            if e <= order:
                factor[e] = Fraction(1)
        else:
            factor = [binomial_general(e, r) * base ** (e - r) for r in range(order + 1)]
        series = _series_mul(series, factor, order)
    return series


@dataclass
class PartialFractionDecomp:
    """poly_part + sum of terms[(i, c)] / (t + c)^i."""

    poly_part: Poly
    terms: Dict[Tuple[int, Fraction], Fraction] = field(default_factory=dict)

    def coefficient(self, i: int, c) -> Fraction:
        return self.terms.get((i, as_rational(c)), Fraction(0))

    def shifts(self) -> List[Fraction]:
        return sorted({c for _, c in self.terms})

    def max_order(self) -> int:
        return max((i for i, _ in self.terms), default=0)

    def residue_sum(self) -> Fraction:
        """Sum of the order-1 coefficients."""
        return sum((v for (i, _), v in self.terms.items() if i == 1), Fraction(0))

    def __call__(self, x) -> Fraction:
        x = as_rational(x)
        value = self.poly_part(x)
        for (i, c), coef in self.terms.items():
            if x + c == 0:
                raise DomainError(f"pole at t = {x}")
            value += coef / (x + c) ** i
        return value

    evaluate = __call__

    def derivative(self, s: int) -> "PartialFractionDecomp":
        """Differentiate term by term: d^s/dt^s (t+c)^-i = (-1)^s (i)_s (t+c)^-(i+s)."""
        terms = {}
        for (i, c), coef in self.terms.items():
            rising = math.prod(range(i, i + s))
            terms[(i + s, c)] = (-1) ** s * rising * coef
        return PartialFractionDecomp(self.poly_part.derivative(s), terms)

    def translate(self, a) -> "PartialFractionDecomp":
        """Return the decomposition of f(t + a)."""
        a = as_rational(a)
        terms = {(i, c + a): coef for (i, c), coef in self.terms.items()}
        return PartialFractionDecomp(self.poly_part.shift(a), terms)

    def as_expr(self) -> sympy.Expr:
        expr = self.poly_part.as_expr()
        for (i, c), coef in sorted(self.terms.items()):
            expr += to_sympy(coef) / (T + to_sympy(c)) ** i
        return expr

    def to_ratfun(self) -> RatFun:
        result = RatFun.from_poly(self.poly_part)
        for (i, c), coef in sorted(self.terms.items()):
            result = result + RatFun(Poly.constant(coef), Poly.linear(c) ** i)
        return result


def partial_fractions(
    f: RatFun, poles: Optional[Sequence[Tuple[Fraction, int]]] = None, check: bool = True
) -> PartialFractionDecomp:
    """Decompose f into polynomial part plus coef/(t + c)^i terms.

    The coefficient of order M - r at shift c is the u^r Taylor coefficient of
    (t + c)^M f(t) at t = -c. Factored inputs supply their own pole list.
    """
    if poles is None:
        poles = f.poles()
    poles = [(as_rational(c), int(m)) for c, m in poles]

    if f.is_factored:
        exps = f.factorization.as_dict()
        listed = {c for c, _ in poles}
        missing = [c for c, e in exps.items() if e < 0 and c not in listed]
        if missing:
            raise DomainError(f"incomplete pole list: missing shifts {missing}")
    elif sum(m for _, m in poles) < f.den.degree:
        raise DomainError("incomplete pole list: multiplicities do not cover the denominator")

    terms: Dict[Tuple[int, Fraction], Fraction] = {}
    for c, m in poles:
        if f.is_factored:
            exps = f.factorization.as_dict()
            if exps.get(c, 0) + m < 0:
                raise ReassemblyError(f"multiplicity {m} too small at shift {c}")
            exps[c] = exps.get(c, 0) + m
            h = RatFun.from_factors(f.factorization.constant, exps)
        else:
            reduced = f.den.exact_div(Poly.linear(c) ** m)
            if reduced is None:
                raise ReassemblyError(f"multiplicity {m} too large at shift {c}")
            if reduced(-c) == 0:
                raise ReassemblyError(f"multiplicity {m} too small at shift {c}")
            h = RatFun(f.num, reduced)
        series = taylor_at(h, -c, m - 1)
        for r, coef in enumerate(series):
            if coef:
                terms[(m - r, c)] = coef

    if f.deg >= 0:
        poly_part = f.num.divmod(f.den)[0]
    else:
        poly_part = Poly()
    decomp = PartialFractionDecomp(poly_part, terms)
    if check:
        check_reassembly(f, decomp)
    return decomp


def _reassembled_numerator(decomp: PartialFractionDecomp, den: Poly) -> Poly:
    """Return den * (poly_part + sum of terms) as a polynomial."""
    total = decomp.poly_part * den
    by_shift: Dict[Fraction, Dict[int, Fraction]] = {}
    for (i, c), coef in decomp.terms.items():
        by_shift.setdefault(c, {})[i] = coef
    for c, orders in by_shift.items():
        top = max(orders)
        cofactor = den.exact_div(Poly.linear(c) ** top)
        if cofactor is None:
            raise ReassemblyError(f"shift {c} is not a pole of order {top}")
        local = Poly()
        for i, coef in orders.items():
            local = local + Poly.linear(c) ** (top - i) * coef
        total = total + local * cofactor
    return total


def _interpolation_points(f: RatFun, decomp: PartialFractionDecomp) -> int:
    """Number of evaluations that pin den * (f - decomp) down as the zero polynomial."""
    for i, c in decomp.terms:
        if i > f.pole_multiplicity(c):
            raise ReassemblyError(f"shift {c} is not a pole of order {i}")
    num_degree = f.deg + f.den_degree
    part_degree = max(decomp.poly_part.degree + f.den_degree, f.den_degree - 1)
    return max(num_degree, part_degree) + 1


def check_reassembly(f: RatFun, decomp: PartialFractionDecomp) -> str:
    """Raise ReassemblyError unless decomp reproduces f; return the mode used.

    Up to the configured denominator degree the identity is expanded as a
    polynomial identity over Q. Beyond it both sides are evaluated at one more
    integer point than the degree of the numerator identity, which decides it
    exactly as well.
    """
    if f.den_degree <= get_tunable("dense_check_max_degree"):
        if _reassembled_numerator(decomp, f.den) != f.num:
            raise ReassemblyError("partial fractions do not reassemble to the input")
        return "identity"
    needed = _interpolation_points(f, decomp)
    checked = 0
    x = 0
    while checked < needed:
        x += 1
        try:
            expected = f(x)
        except DomainError:
            continue
        if decomp(x) != expected:
            raise ReassemblyError(f"partial fractions disagree with the input at t = {x}")
        checked += 1
    logger.debug(f"Reassembly of a degree-{f.den_degree} denominator checked at {needed} points")
    return "interpolation"


def sympy_principal_parts(
    f: RatFun, poles: Optional[Sequence[Tuple[Fraction, int]]] = None
) -> PartialFractionDecomp:
    """Decompose f with sympy residues.

    The order M - r coefficient at shift c is the r-th derivative of
    (t + c)^M f(t) at t = -c, divided by r!.
    """
    poles = [(as_rational(c), int(m)) for c, m in (poles if poles is not None else f.poles())]
    expr = f.as_expr()
    terms: Dict[Tuple[int, Fraction], Fraction] = {}
    for c, m in poles:
        local = sympy.cancel((T + to_sympy(c)) ** m * expr)
        for r in range(m):
            coef = sympy.diff(local, T, r).subs(T, -to_sympy(c)) / sympy.factorial(r)
            if coef != 0:
                terms[(m - r, c)] = from_sympy(coef)
    poly_part = f.num.divmod(f.den)[0] if f.deg >= 0 else Poly()
    return PartialFractionDecomp(poly_part, terms)


def principal_parts_check(f: RatFun, decomp: PartialFractionDecomp) -> Verdict:
    """Compare a decomposition with the symbolic one and with sympy.apart."""
    reference = sympy_principal_parts(f)
    mismatched = sorted(
        key
        for key in set(decomp.terms) | set(reference.terms)
        if decomp.terms.get(key, 0) != reference.terms.get(key, 0)
    )
    apart_ok = sympy.cancel(sympy.apart(f.as_expr(), T) - decomp.as_expr()) == 0
    return verdict_from(
        "principal-parts",
        "partial fractions agree with the symbolic residues and sympy.apart",
        not mismatched and decomp.poly_part == reference.poly_part and apart_ok,
        den_degree=f.den_degree,
        terms=len(decomp.terms),
        mismatched=[f"{i}@{c}" for i, c in mismatched[:5]],
        apart_agrees=apart_ok,
    )


def lemma41_family(n: int) -> List[Tuple[str, RatFun, bool]]:
    """Return (name, F, per_k) for F_{1/4}, F_{3/4} and G; per_k marks (t+k)G(t)."""
    constant = Fraction(2) ** (3 * n) / math.factorial(n)
    quarter = RatFun.from_factors(constant, {Fraction(4 * j + 1, 4): 1 for j in range(n)})
    three_quarter = RatFun.from_factors(constant, {Fraction(4 * j + 3, 4): 1 for j in range(n)})
    g = RatFun.from_factors(math.factorial(n), {Fraction(j): -1 for j in range(n + 1)})
    return [("F_1/4", quarter, False), ("F_3/4", three_quarter, False), ("(t+k)G", g, True)]


def lemma41_check(n: int, l_max: int) -> Verdict:
    """Check d_n^l * (Taylor coefficient of order l at t = -k) is an integer.

    Covers F_{1/4} = 2^(3n)/n! (t+1/4)_n, F_{3/4} likewise and (t+k) n!/(t)_(n+1),
    for all k in [0, n] and l in [0, l_max].
    """
    if n < 1:
        raise DomainError(f"lemma41_check needs n >= 1, got {n}")
    d = lcm_upto(n)
    for name, f, per_k in lemma41_family(n):
        for k in range(n + 1):
            g = f * RatFun.from_factors(1, {Fraction(k): 1}) if per_k else f
            for l, coef in enumerate(taylor_at(g, -k, l_max)):
                if not is_integral(d**l * coef):
                    return verdict_from(
                        "lemma41",
                        "d_n^l F^(l)(-k)/l! is an integer",
                        False,
                        n=n,
                        function=name,
                        k=k,
                        l=l,
                        value=d**l * coef,
                    )
    return verdict_from("lemma41", "d_n^l F^(l)(-k)/l! is an integer", True, n=n, l_max=l_max)
