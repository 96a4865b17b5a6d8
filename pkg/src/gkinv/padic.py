"""Exact scalar arithmetic over Q_p: valuations, squares, Hilbert symbols.

Scalars are `fractions.Fraction` values throughout.  A rational number
determines an element of Q_p, and every classification implemented here
(square classes, Hilbert symbols, quadratic extension discriminants)
depends on only finitely many p-adic digits, so exact rationals remove
precision management entirely.  ord(0) is +infinity, encoded as
``math.inf`` so that it orders above every integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

INF = math.inf

SPLIT = "split"
INERT = "inert"
RAMIFIED = "ramified"

Rational = Fraction | int


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeContext:
    """The base field Q_p.  ``e`` is ord(2): 1 in the dyadic case, else 0."""

    p: int

    def __post_init__(self) -> None:
        if not _is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")

    @property
    def e(self) -> int:
        return 1 if self.p == 2 else 0

    @property
    def dyadic(self) -> bool:
        return self.p == 2


def _int_valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(x: Rational, ctx: PrimeContext) -> int | float:
    """p-adic order of x; +inf for x = 0."""
    x = Fraction(x)
    if x == 0:
        return INF
    return _int_valuation(x.numerator, ctx.p) - _int_valuation(x.denominator, ctx.p)


def unit_part(x: Rational, ctx: PrimeContext) -> Fraction:
    """x / p^ord(x), a p-adic unit.  Rejects x = 0."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("0 has no unit part")
    v = valuation(x, ctx)
    return x / Fraction(ctx.p) ** v


def frac_mod(x: Rational, modulus: int, ctx: PrimeContext) -> int:
    """x mod p^k for p-integral x, with the denominator inverted mod p^k."""
    x = Fraction(x)
    if x.denominator % ctx.p == 0:
        raise ValueError(f"{x} is not p-integral at p={ctx.p}")
    inv = pow(x.denominator % modulus, -1, modulus)
    return (x.numerator * inv) % modulus


def legendre(u: Rational, ctx: PrimeContext) -> int:
    """Legendre symbol of a p-adic unit, p odd."""
    if ctx.p == 2:
        raise ValueError("Legendre symbol needs p odd")
    r = frac_mod(u, ctx.p, ctx)
    if r == 0:
        raise ValueError("input is not a unit")
    return 1 if pow(r, (ctx.p - 1) // 2, ctx.p) == 1 else -1


def is_square(x: Rational, ctx: PrimeContext) -> bool:
    """True iff x is a square in Q_p^x.  Rejects x = 0."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("is_square is undefined at 0")
    v = valuation(x, ctx)
    if v % 2 != 0:
        return False
    u = unit_part(x, ctx)
    if ctx.p == 2:
        return frac_mod(u, 8, ctx) == 1
    return legendre(u, ctx) == 1


def hilbert_symbol(a: Rational, b: Rational, ctx: PrimeContext) -> int:
    """Local Hilbert symbol: +1 iff z^2 = a x^2 + b y^2 has a nonzero solution."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    alpha = valuation(a, ctx) % 2
    beta = valuation(b, ctx) % 2
    u = unit_part(a, ctx)
    v = unit_part(b, ctx)
    if ctx.p == 2:
        um, vm = frac_mod(u, 8, ctx), frac_mod(v, 8, ctx)
        eps_u, eps_v = (um - 1) // 2 % 2, (vm - 1) // 2 % 2
        om_u, om_v = (um * um - 1) // 8 % 2, (vm * vm - 1) // 8 % 2
        exp = eps_u * eps_v + alpha * om_v + beta * om_u
        return -1 if exp % 2 else 1
    sign = 1
    if alpha and beta and legendre(-1, ctx) == -1:
        sign = -sign
    if beta and legendre(u, ctx) == -1:
        sign = -sign
    if alpha and legendre(v, ctx) == -1:
        sign = -sign
    return sign


@dataclass(frozen=True)
class QuadExtKind:
    """Shape of F(sqrt(xi))/F: split, inert (unramified quadratic) or ramified;
    ``d`` is the order of the discriminant ideal."""

    kind: str
    d: int


def quad_ext(xi: Rational, ctx: PrimeContext) -> QuadExtKind:
    """Classify the quadratic algebra Q_p(sqrt(xi)) and its discriminant order."""
    xi = Fraction(xi)
    if xi == 0:
        raise ValueError("quad_ext is undefined at 0")
    if is_square(xi, ctx):
        return QuadExtKind(SPLIT, 0)
    v = valuation(xi, ctx) % 2
    if ctx.p != 2:
        if v:
            return QuadExtKind(RAMIFIED, 1)
        return QuadExtKind(INERT, 0)
    if v:
        return QuadExtKind(RAMIFIED, 3)
    um = frac_mod(unit_part(xi, ctx), 8, ctx)
    if um == 5:
        return QuadExtKind(INERT, 0)
    return QuadExtKind(RAMIFIED, 2)  # unit part 3 or 7 mod 8


def xi_code(xi: Rational, ctx: PrimeContext) -> int:
    """1 / -1 / 0 according as Q_p(sqrt(xi)) is split / inert / ramified."""
    kind = quad_ext(xi, ctx).kind
    if kind == SPLIT:
        return 1
    if kind == INERT:
        return -1
    return 0


def square_class_reps(ctx: PrimeContext) -> tuple[Fraction, ...]:
    """Fixed representatives of Q_p^x modulo squares."""
    if ctx.p == 2:
        return tuple(Fraction(t) for t in (1, -1, 2, -2, 5, -5, 10, -10))
    u = 2
    while legendre(u, ctx) == 1:
        u += 1
    return tuple(Fraction(t) for t in (1, u, ctx.p, u * ctx.p))


def zpow(z: int, k: int) -> int:
    """z^k for z in {0, 1, -1}: exponents act through their parity on signs."""
    if k == 0:
        return 1
    if z == 0:
        return 0
    return 1 if k % 2 == 0 else z
