"""Extended GK data: sequence-level and block-level combinatorial invariants.

A naive datum carries one exponent and one sign per coordinate; the
block-level datum collapses equal-exponent runs.  Both satisfy parity
axioms that mirror how the split/inert/ramified indicator and the
Clifford invariant of leading subforms interact; ``collapse`` maps naive
data onto block data, ``lift`` inverts it, and the two ``synthesize_*``
functions produce explicit matrices realizing a datum.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .forms import HalfIntegralForm, validate_form
from .involutions import GKType, blocks, is_standard, standard_involutions
from .padic import PrimeContext, legendre, valuation, zpow

SIGNS3 = (0, 1, -1)


class EGKError(ValueError):
    """Raised on malformed or inconsistent EGK data."""


@dataclass(frozen=True)
class NaiveEGK:
    a: tuple[int, ...]
    eps: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.a)


@dataclass(frozen=True)
class EGKDatum:
    sizes: tuple[int, ...]
    exps: tuple[int, ...]
    zeta: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.sizes)

    @property
    def n(self) -> int:
        return sum(self.sizes)

    def expand_exps(self) -> tuple[int, ...]:
        out: list[int] = []
        for size, m in zip(self.sizes, self.exps):
            out.extend([m] * size)
        return tuple(out)


def _allowed_zeta(sizes, exps, zeta_prefix) -> tuple[int, ...]:
    """Values the next sign may take given the earlier blocks: a fixed value
    where the parity axioms force one, otherwise {+1,-1} or {0}."""
    s = len(zeta_prefix)
    nstar = sum(sizes[: s + 1])
    msum = sum(m * k for m, k in zip(exps[: s + 1], sizes[: s + 1]))
    if nstar % 2 == 0:
        return (1, -1) if msum % 2 == 0 else (0,)
    # odd prefix length: sign is nonzero, and often forced by a product formula
    odd_before = [
        i for i in range(s) if sum(sizes[: i + 1]) % 2 == 1
    ]
    if not odd_before:
        val = 1
        for u in range(s):
            val *= zpow(zeta_prefix[u], exps[u] + exps[u + 1])
        return (val,)
    t = max(odd_before)
    if (msum - exps[s]) % 2 == 0:
        val = zeta_prefix[t]
        for u in range(t + 1, s):
            val *= zpow(zeta_prefix[u], exps[u] + exps[u + 1])
        return (val,)
    return (1, -1)


def validate_egk(g: EGKDatum) -> tuple[bool, list[str]]:
    """Check the block-level axioms; returns (ok, violations)."""
    bad: list[str] = []
    if not (len(g.sizes) == len(g.exps) == len(g.zeta)) or g.r == 0:
        return False, ["component lengths differ or datum is empty"]
    if any(k < 1 for k in g.sizes):
        bad.append("block sizes must be positive")
    if any(m < 0 for m in g.exps):
        bad.append("exponents must be non-negative")
    if any(g.exps[i] >= g.exps[i + 1] for i in range(g.r - 1)):
        bad.append("exponents must be strictly increasing")
    if any(z not in SIGNS3 for z in g.zeta):
        bad.append("signs must lie in {0, 1, -1}")
    if bad:
        return False, bad
    for s in range(g.r):
        allowed = _allowed_zeta(g.sizes, g.exps, g.zeta[:s])
        if g.zeta[s] not in allowed:
            bad.append(f"sign {s} is {g.zeta[s]}, allowed {allowed}")
    return not bad, bad


def validate_naive(h: NaiveEGK) -> tuple[bool, list[str]]:
    """Check the coordinate-level axioms; returns (ok, violations)."""
    bad: list[str] = []
    n = h.n
    if len(h.eps) != n or n == 0:
        return False, ["component lengths differ or datum is empty"]
    if any(e not in SIGNS3 for e in h.eps):
        bad.append("signs must lie in {0, 1, -1}")
    if any(a < 0 for a in h.a):
        bad.append("exponents must be non-negative")
    if any(h.a[i] > h.a[i + 1] for i in range(n - 1)):
        bad.append("exponents must be non-decreasing")
    if bad:
        return False, bad
    psum = 0
    for i in range(1, n + 1):  # 1-based position
        psum += h.a[i - 1]
        e = h.eps[i - 1]
        if i % 2 == 0:
            if (e != 0) != (psum % 2 == 0):
                bad.append(f"sign {i} breaks the even-position parity rule")
        elif e == 0:
            bad.append(f"sign {i} must be nonzero at odd positions")
    if h.eps[0] != 1:
        bad.append("first sign must be +1")
    for i in range(3, n + 1, 2):
        if (psum_i := sum(h.a[: i - 1])) % 2 == 0:
            want = h.eps[i - 3] * zpow(h.eps[i - 2], h.a[i - 1] + h.a[i - 2])
            if h.eps[i - 1] != want:
                bad.append(f"sign {i} breaks the odd-position recursion")
    return not bad, bad


def collapse(h: NaiveEGK) -> EGKDatum:
    """Block-collapse of a naive datum: keep the sign at each block end."""
    ok, bad = validate_naive(h)
    if not ok:
        raise EGKError("; ".join(bad))
    bl = blocks(h.a)
    ends = [bl.starts[s] + bl.sizes[s] - 1 for s in range(bl.r)]
    g = EGKDatum(bl.sizes, bl.values, tuple(h.eps[i] for i in ends))
    ok, bad = validate_egk(g)
    if not ok:
        raise EGKError("collapse produced an invalid datum: " + "; ".join(bad))
    return g


def shrink_last(g: EGKDatum) -> EGKDatum:
    """Shorten the last block by one coordinate, choosing the dropped sign the
    way the surjectivity construction does: forced where the axioms force it,
    +1 where they leave it free."""
    if g.sizes[-1] < 2:
        raise EGKError("last block is a single coordinate; drop it instead")
    sizes2 = g.sizes[:-1] + (g.sizes[-1] - 1,)
    allowed = _allowed_zeta(sizes2, g.exps, g.zeta[:-1])
    z = 1 if 1 in allowed else allowed[0]
    out = EGKDatum(sizes2, g.exps, g.zeta[:-1] + (z,))
    ok, bad = validate_egk(out)
    if not ok:
        raise EGKError("shrink produced an invalid datum: " + "; ".join(bad))
    return out


def lift(g: EGKDatum) -> NaiveEGK:
    """A naive datum mapping onto ``g`` under ``collapse``."""
    ok, bad = validate_egk(g)
    if not ok:
        raise EGKError("; ".join(bad))
    if g.n == 1:
        return NaiveEGK((g.exps[0],), (g.zeta[0],))
    if g.sizes[-1] == 1:
        g2 = EGKDatum(g.sizes[:-1], g.exps[:-1], g.zeta[:-1])
    else:
        g2 = shrink_last(g)
    h2 = lift(g2)
    return NaiveEGK(h2.a + (g.exps[-1],), h2.eps + (g.zeta[-1],))


def enumerate_egk(max_r: int, max_m: int, max_n: int) -> list[EGKDatum]:
    """All valid data with at most ``max_r`` blocks, exponents <= ``max_m``
    and total length <= ``max_n``."""
    out: list[EGKDatum] = []

    def rec(sizes, exps, zeta):
        if sizes:
            out.append(EGKDatum(tuple(sizes), tuple(exps), tuple(zeta)))
        if len(sizes) == max_r:
            return
        room = max_n - sum(sizes)
        m_lo = exps[-1] + 1 if exps else 0
        for k in range(1, room + 1):
            for m in range(m_lo, max_m + 1):
                for z in _allowed_zeta(tuple(sizes) + (k,), tuple(exps) + (m,), tuple(zeta)):
                    rec(sizes + [k], exps + [m], zeta + [z])

    rec([], [], [])
    return out


def random_egk(
    rng: random.Random, max_r: int = 3, max_m: int = 4, max_n: int = 6,
    parity: str | None = None,
) -> EGKDatum:
    """Random valid datum; ``parity`` = "odd_total" forces an even length with
    odd exponent mass (the shape the inverse-valuation bounds apply to)."""
    while True:
        r = rng.randint(1, max_r)
        sizes, exps, zeta = [], [], []
        m_lo = 0
        ok = True
        for s in range(r):
            room = max_n - sum(sizes) - (r - 1 - s)
            m_hi = max_m - (r - 1 - s)
            if room < 1 or m_lo > m_hi:
                ok = False
                break
            sizes.append(rng.randint(1, room))
            exps.append(rng.randint(m_lo, m_hi))
            m_lo = exps[-1] + 1
            zeta.append(rng.choice(_allowed_zeta(tuple(sizes), tuple(exps), tuple(zeta))))
        if not ok:
            continue
        g = EGKDatum(tuple(sizes), tuple(exps), tuple(zeta))
        if not validate_egk(g)[0]:
            continue
        if parity == "odd_total":
            if g.n % 2 or sum(m * k for m, k in zip(g.exps, g.sizes)) % 2 == 0:
                continue
        return g


def synthesize_nondyadic(h: NaiveEGK, ctx: PrimeContext) -> HalfIntegralForm:
    """Diagonal form over Q_p, p odd, whose per-prefix invariants realize the
    naive datum; the unit class of each new entry is picked by direct check."""
    from .invariants import eta, xi  # deferred: invariants imports this module

    if ctx.p == 2:
        raise EGKError("diagonal synthesis needs p odd")
    ok, bad = validate_naive(h)
    if not ok:
        raise EGKError("; ".join(bad))
    u = 2
    while legendre(u, ctx) == 1:
        u += 1
    diag: list[Fraction] = []
    for i, (a, eps) in enumerate(zip(h.a, h.eps), 1):
        for unit in (1, u):
            cand = diag + [Fraction(unit * ctx.p**a)]
            form = validate_form(
                [[cand[r] if r == c else 0 for c in range(i)] for r in range(i)],
                ctx,
            )
            got = xi(form) if i % 2 == 0 else eta(form)
            if got == eps:
                diag = cand
                break
        else:
            raise EGKError(f"no unit class realizes sign {eps} at position {i}")
    n = h.n
    return validate_form(
        [[diag[r] if r == c else 0 for c in range(n)] for r in range(n)], ctx
    )


def naive_datum_of_diagonal(form: HalfIntegralForm) -> NaiveEGK:
    """Per-prefix invariants of a non-dyadic diagonal form with sorted orders."""
    from .invariants import eta, xi
    from .forms import leading

    eps = tuple(
        xi(leading(form, i)) if i % 2 == 0 else eta(leading(form, i))
        for i in range(1, form.n + 1)
    )
    a = tuple(
        int(valuation(form.entries[i][i], form.ctx)) for i in range(form.n)
    )
    return NaiveEGK(a, eps)


_HYPERBOLIC = ((Fraction(0), Fraction(1, 2)), (Fraction(1, 2), Fraction(0)))
_INERT_PAIR = ((Fraction(1), Fraction(1, 2)), (Fraction(1, 2), Fraction(1)))


def _unramified_pair(target_xi: int, scale: int) -> tuple[tuple[Fraction, ...], ...]:
    base = _HYPERBOLIC if target_xi >= 0 else _INERT_PAIR
    f = Fraction(2) ** scale
    return tuple(tuple(f * x for x in row) for row in base)


def synthesize_reduced(
    g: EGKDatum, ctx: PrimeContext, sigma=None
) -> HalfIntegralForm:
    """Clean reduced dyadic form of the datum's GK type realizing ``g``.

    Clean means every entry off the diagonal and off the involution pairs is
    zero.  When ``sigma`` is omitted the first standard involution is used.
    """
    from .invariants import eta, xi

    if ctx.p != 2:
        raise EGKError("reduced synthesis is the dyadic path")
    ok, bad = validate_egk(g)
    if not ok:
        raise EGKError("; ".join(bad))
    exps = g.expand_exps()
    if sigma is None:
        sigma = standard_involutions(exps)[0]
    sigma = tuple(sigma)
    if not is_standard(exps, sigma):
        raise EGKError("involution is not standard for the datum's exponents")

    def rec(g: EGKDatum, sigma) -> tuple[tuple[Fraction, ...], ...]:
        n = g.n
        if n == 0:
            return ()
        exps = g.expand_exps()
        last = n - 1
        m_r = g.exps[-1]
        if sigma[last] == last:
            g2 = (
                EGKDatum(g.sizes[:-1], g.exps[:-1], g.zeta[:-1])
                if g.sizes[-1] == 1
                else shrink_last(g)
            )
            b2 = rec(g2, sigma[:last])
            return linalg.block_diag(b2, ((Fraction(2) ** m_r,),))
        if exps[sigma[last]] < exps[last]:
            i0 = sigma[last]
            if g.sizes[-1] != 1:
                raise EGKError("raised coordinate must close a singleton block")
            g2 = EGKDatum(g.sizes[:-1], g.exps[:-1], g.zeta[:-1])
            sigma2 = tuple(
                i if sigma[i] == last else sigma[i] for i in range(last)
            )
            b2 = rec(g2, sigma2)
            keep = [i for i in range(last) if i != i0]
            minor = validate_form(linalg.submatrix(b2, keep, keep), ctx)
            target = g.zeta[-1] * (xi(minor) if n % 2 == 0 else eta(minor))
            pair = _complete_pair(
                b2[i0][i0], exps[i0], m_r, target, ctx
            )
            rows = [
                [b2[i][j] if i < last and j < last else Fraction(0)
                 for j in range(n)]
                for i in range(n)
            ]
            rows[i0][last] = rows[last][i0] = pair[0]
            rows[last][last] = pair[1]
            return linalg.mat(rows)
        # equal pair closing the last block
        if sigma[last] != last - 1:
            raise EGKError("equal pair must be adjacent")
        if g.sizes[-1] == 2:
            g2 = EGKDatum(g.sizes[:-1], g.exps[:-1], g.zeta[:-1])
            prev_zeta = g.zeta[-2] if g.r > 1 else 1
            if n % 2 == 0:
                target = g.zeta[-1] * prev_zeta if g.zeta[-1] else 1
            else:
                msum = sum(m * k for m, k in zip(g.exps, g.sizes))
                target = (
                    g.zeta[-1] * prev_zeta if (msum - g.exps[-1]) % 2 else 1
                )
        else:
            g2 = EGKDatum(
                g.sizes[:-1] + (g.sizes[-1] - 2,), g.exps, g.zeta
            )
            target = 1
        b2 = rec(g2, sigma[: n - 2])
        return linalg.block_diag(b2, _unramified_pair(target, m_r))

    entries = rec(g, sigma)
    form = validate_form(entries, ctx)
    from .reducer import is_reduced

    if not is_reduced(form, GKType(exps, sigma)):
        raise EGKError("synthesis produced a non-reduced matrix")
    return form


def _complete_pair(b00, a0: int, a1: int, target_xi: int, ctx: PrimeContext):
    """Cross entry and corner completing a diagonal value to a binary block
    with invariant pair (a0, a1) and the requested square-class indicator."""
    from .reducer import binary_gk
    from .invariants import xi

    g = (a0 + a1) // 2
    corners = [Fraction(0)] + [Fraction(v * 2**a1) for v in (1, 3, 5, 7)]
    for w in (1, 3, 5, 7):
        b01 = Fraction(w * 2**g, 2)
        for b11 in corners:
            pair = validate_form([[b00, b01], [b01, b11]], ctx)
            if not pair.nondegenerate:
                continue
            if binary_gk(pair) == (a0, a1) and xi(pair) == target_xi:
                return b01, b11
    raise EGKError("no pair completion found")
