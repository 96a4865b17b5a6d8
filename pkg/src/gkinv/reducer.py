"""Certified reduction of half-integral symmetric matrices.

A reduced form realizes its GK invariant on the nose: the exponent
sequence can be read off the matrix, pair by pair.  ``reduce_form`` turns
an arbitrary non-degenerate form into an equivalent reduced one and
returns the transform as a certificate; ``verify_certificate`` re-checks
every claim independently, so the search heuristics can never produce a
silently wrong answer.

The dyadic search keeps a reduced leading block and grows it by one of
three moves, always trying the smallest admissible new exponent first:

* pair a fixed point of the prefix with a tail coordinate whose doubled
  cross entry attains the exact half-sum valuation;
* split a scaled primitive-unramified pair off the tail (a doubled tail
  entry attains the tail's minimal valuation);
* admit a new fixed point (a tail diagonal attains it), after shearing
  away any diagonal whose exponent collides in parity with an existing
  fixed point.

Dead ends backtrack; a budget bounds the total number of attempts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .forms import (
    FormError,
    HalfIntegralForm,
    delta,
    is_unimodular,
    matrix_in_lattice,
    norm_ideal_ord,
    validate_form,
)
from .involutions import GKType, is_standard, standard_involutions
from .linalg import Matrix
from .padic import INF, PrimeContext, valuation


class ReductionError(RuntimeError):
    """No reduction found (internal failure; inputs were validated)."""


class BudgetExhausted(ReductionError):
    """The search budget ran out before a certificate was found."""


@dataclass(frozen=True)
class ReductionCertificate:
    """Unimodular U with R = B[U] reduced of the stated standard GK type."""

    u: Matrix
    reduced: HalfIntegralForm
    gk_type: GKType

    @property
    def exps(self) -> tuple[int, ...]:
        return self.gk_type.exps


def binary_gk(form: HalfIntegralForm) -> tuple[int, int]:
    """GK invariant of a non-degenerate binary form: the first entry is the
    norm order, the second is forced by the discriminant identity."""
    if form.n != 2 or not form.nondegenerate:
        raise FormError("binary_gk needs a non-degenerate 2x2 form")
    a1 = norm_ideal_ord(form)
    return (int(a1), delta(form) - int(a1))


def is_reduced(form: HalfIntegralForm, gk_type: GKType) -> bool:
    """Check the reduced-form conditions for the given GK type."""
    exps, sigma = gk_type.exps, gk_type.sigma
    if form.n != gk_type.n:
        raise FormError("size mismatch between form and GK type")
    b = form.entries
    ctx = form.ctx
    if not matrix_in_lattice(b, exps, ctx):
        return False
    for i in range(form.n):
        j = sigma[i]
        if j == i:
            if valuation(b[i][i], ctx) != exps[i]:
                return False
        elif i < j:  # exponents are non-decreasing, so exps[i] <= exps[j]
            pair = validate_form([[b[i][i], b[i][j]], [b[i][j], b[j][j]]], ctx)
            if not pair.nondegenerate:
                return False
            if binary_gk(pair) != (exps[i], exps[j]):
                return False
        for j2 in range(i + 1, form.n):
            if j2 == sigma[i]:
                continue
            if 2 * valuation(2 * b[i][j2], ctx) <= exps[i] + exps[j2]:
                return False
    return True


def dyadic_pair_conditions(form: HalfIntegralForm, gk_type: GKType) -> bool:
    """Dyadic shortcut for the pair condition: the doubled cross entry of each
    pair attains the half-sum exactly, and lowered diagonals are exact."""
    if form.ctx.p != 2:
        raise FormError("the shortcut is specific to p = 2")
    b, exps, sigma = form.entries, gk_type.exps, gk_type.sigma
    for i in range(form.n):
        j = sigma[i]
        if j == i:
            continue
        if 2 * valuation(2 * b[i][j], form.ctx) != exps[i] + exps[j]:
            return False
        if exps[i] < exps[j] and valuation(b[i][i], form.ctx) != exps[i]:
            return False
    return True


def complete_square(
    b11: Fraction | int,
    b12: Fraction | int,
    b22: Fraction | int,
    a1: int,
    a2: int,
    ctx: PrimeContext,
) -> Fraction:
    """Dyadic square completion: x with ord(x) >= (a2-a1)/2 and
    ord(b22 + 2 b12 x + b11 x^2) > a2.

    Requires ord(b11) = a1, ord(b22) = a2, ord(2 b12) > (a1+a2)/2 and an even
    non-negative gap.  A residue search over one extra digit suffices; a few
    more digits are scanned defensively.
    """
    if ctx.p != 2:
        raise FormError("complete_square is specific to p = 2")
    b11, b12, b22 = Fraction(b11), Fraction(b12), Fraction(b22)
    gap = a2 - a1
    if gap < 0 or gap % 2:
        raise FormError("exponent gap must be even and non-negative")
    if valuation(b11, ctx) != a1 or valuation(b22, ctx) != a2:
        raise FormError("diagonal orders must be exact")
    if 2 * valuation(2 * b12, ctx) <= a1 + a2:
        raise FormError("doubled cross entry must exceed the half-sum")
    scale = Fraction(2) ** (gap // 2)
    for w in range(8):
        x = w * scale
        if valuation(b22 + 2 * b12 * x + b11 * x * x, ctx) > a2:
            return x
    raise ReductionError("square completion residue search exhausted")


def _clear_matrix(
    m: Matrix, exps, sigma, ctx: PrimeContext
) -> tuple[Matrix, Matrix] | None:
    """Zero the cross rows of the reduced prefix against the tail, skipping
    fixed-point rows.  Returns (U, cleared) or None when the solve leaves
    the integers (such a prefix cannot extend)."""
    n = len(m)
    k = len(exps)
    paired = [i for i in range(k) if sigma[i] != i]
    tail = list(range(k, n))
    if not paired or not tail:
        return linalg.identity(n), m
    a = linalg.submatrix(m, paired, paired)
    c = linalg.submatrix(m, paired, tail)
    x_paired = linalg.matmul(linalg.inverse(a), c)
    rows = []
    for i in range(n):
        if i in paired:
            xr = x_paired[paired.index(i)]
            if any(valuation(x, ctx) < 0 for x in xr):
                return None
            rows.append(tuple(-x for x in xr))
        else:
            rows.append((Fraction(0),) * len(tail))
    u = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for i in range(n):
        for t, j in enumerate(tail):
            u[i][j] = rows[i][t] if i < k else u[i][j]
    u = linalg.mat(u)
    return u, linalg.congruence(m, u)


def clear_rows(
    form: HalfIntegralForm, gk_type: GKType
) -> tuple[Matrix, HalfIntegralForm]:
    """Public row clearing against a reduced leading block."""
    m = gk_type.n
    lead = validate_form(
        linalg.submatrix(form.entries, range(m), range(m)), form.ctx
    )
    if not lead.nondegenerate:
        raise FormError("leading block is degenerate")
    if not is_reduced(lead, gk_type):
        raise FormError("leading block is not reduced for the given type")
    res = _clear_matrix(form.entries, gk_type.exps, gk_type.sigma, form.ctx)
    if res is None:
        raise ReductionError("clearing transform is not integral")
    u, cleared = res
    return u, validate_form(cleared, form.ctx)


def _ordb(m: Matrix, ctx: PrimeContext, i: int, j: int):
    if i == j:
        return valuation(m[i][i], ctx)
    return valuation(2 * m[i][j], ctx)


class _DyadicSearch:
    def __init__(self, form: HalfIntegralForm, budget: int):
        self.ctx = form.ctx
        self.n = form.n
        self.left = budget
        two_b = tuple(tuple(2 * x for x in row) for row in form.entries)
        self.det_cap = int(valuation(linalg.det(two_b), self.ctx))

    def run(self, m0: Matrix) -> tuple[Matrix, Matrix, tuple[int, ...], tuple[int, ...]]:
        res = self._extend(m0, linalg.identity(self.n), (), ())
        if res is None:
            raise ReductionError("reduction search exhausted all branches")
        return res

    def _spend(self) -> None:
        if self.left <= 0:
            raise BudgetExhausted("reduction budget exhausted")
        self.left -= 1

    def _extend(self, m, u, exps, sigma):
        k = len(exps)
        if k == self.n:
            return m, u, exps, sigma
        cleared = _clear_matrix(m, exps, sigma, self.ctx)
        if cleared is None:
            return None
        u1, m1 = cleared
        u1 = linalg.matmul(u, u1)
        for move in self._moves(m1, exps, sigma):
            self._spend()
            res = self._apply(m1, u1, exps, sigma, move)
            if res is not None:
                out = self._extend(*res)
                if out is not None:
                    return out
        return None

    def _moves(self, m, exps, sigma):
        k = len(exps)
        amin = exps[-1] if exps else 0
        room = self.n - k
        cap = (self.det_cap - sum(exps)) // room
        fixed = [i for i in range(k) if sigma[i] == i]
        tail = range(k, self.n)
        moves = []
        for h in fixed:
            for j in tail:
                v = _ordb(m, self.ctx, h, j)
                if v is INF:
                    continue
                c = int(2 * v) - exps[h]
                if c < amin or c > cap:
                    continue
                if _ordb(m, self.ctx, j, j) < c:
                    continue
                moves.append((c, 0, h, j))
        tail_ords = {
            (i, j): _ordb(m, self.ctx, i, j) for i in tail for j in tail if i <= j
        }
        finite = [v for v in tail_ords.values() if v is not INF]
        if finite:
            c_tail = int(min(finite))
            if amin <= c_tail <= cap:
                collision = next(
                    (h for h in fixed if (exps[h] - c_tail) % 2 == 0), None
                )
                for (i, j), v in sorted(tail_ords.items()):
                    if v != c_tail:
                        continue
                    if i < j:
                        moves.append((c_tail, 1, i, j))
                    elif collision is None:
                        moves.append((c_tail, 2, i, i))
                    else:
                        moves.append((c_tail, 3, collision, i))
        moves.sort()
        return moves

    def _apply(self, m, u, exps, sigma, move):
        c, kind, x, y = move
        k = len(exps)
        if kind == 3:  # parity collision: shear the tail diagonal away
            h, t = x, y
            try:
                sh = complete_square(
                    m[h][h], m[h][t], m[t][t], exps[h], c, self.ctx
                )
            except (FormError, ReductionError):
                return None
            usu = [
                [Fraction(1 if i == j else 0) for j in range(self.n)]
                for i in range(self.n)
            ]
            usu[h][t] = sh
            usu = linalg.mat(usu)
            return linalg.congruence(m, usu), linalg.matmul(u, usu), exps, sigma
        if kind == 0:  # pair a prefix fixed point with tail coordinate y
            perm = self._bring_front(k, (y,))
            sigma2 = tuple(
                k if i == x else (x if i == k else sigma[i] if i < k else i)
                for i in range(k + 1)
            )
            exps2 = exps + (c,)
        elif kind == 1:  # split a scaled primitive-unramified pair (x, y)
            perm = self._bring_front(k, (x, y))
            sigma2 = sigma + (k + 1, k)
            exps2 = exps + (c, c)
        else:  # kind == 2, admit a new fixed point at x
            perm = self._bring_front(k, (x,))
            sigma2 = sigma + (k,)
            exps2 = exps + (c,)
        p = linalg.perm_matrix(perm)
        m2 = linalg.congruence(m, p)
        if not self._prefix_ok(m2, exps2, sigma2):
            return None
        return m2, linalg.matmul(u, p), exps2, sigma2

    def _bring_front(self, k: int, chosen: tuple[int, ...]) -> tuple[int, ...]:
        rest = [i for i in range(k, self.n) if i not in chosen]
        return tuple(range(k)) + chosen + tuple(rest)

    def _prefix_ok(self, m, exps, sigma) -> bool:
        k = len(exps)
        try:
            gk_type = GKType(exps, sigma)
        except ValueError:
            return False
        lead = validate_form(
            linalg.submatrix(m, range(k), range(k)), self.ctx
        )
        return lead.nondegenerate and is_reduced(lead, gk_type)


def _standardize(m, u, exps, sigma, ctx):
    """Permute within equal-exponent blocks so the involution is standard."""
    from .involutions import blocks

    bl = blocks(exps)
    target: list[int] = []
    for s in range(bl.r):
        idx = list(bl.indices(s))
        plus = [i for i in idx if sigma[i] != i and exps[sigma[i]] < exps[i]]
        dang = [i for i in idx if sigma[i] == i or exps[sigma[i]] > exps[i]]
        pairs = []
        for i in idx:
            j = sigma[i]
            if j != i and exps[j] == exps[i] and i < j:
                pairs.extend((i, j))
        target.extend(plus + pairs + dang)
    perm = tuple(target)
    inv = [0] * len(perm)
    for newpos, old in enumerate(perm):
        inv[old] = newpos
    sigma2 = tuple(inv[sigma[perm[i]]] for i in range(len(perm)))
    p = linalg.perm_matrix(perm)
    return linalg.congruence(m, p), linalg.matmul(u, p), sigma2


def jordan_split(form: HalfIntegralForm) -> ReductionCertificate:
    """Non-dyadic reduction: diagonalize with unimodular congruences, sort the
    diagonal by valuation, and attach a standard involution."""
    if form.ctx.p == 2:
        raise FormError("Jordan splitting requires p odd")
    if not form.nondegenerate:
        raise FormError("degenerate form")
    ctx = form.ctx
    n = form.n
    m = form.entries
    u = linalg.identity(n)
    for k in range(n):
        idx = range(k, n)
        best = None
        for i in idx:
            for j in range(i, n):
                v = _ordb(m, ctx, i, j)
                if v is not INF and (best is None or v < best[0]):
                    best = (v, i, j)
        _, i, j = best
        if i != j and all(valuation(m[t][t], ctx) > best[0] for t in idx):
            # expose a minimal-order diagonal entry: the sum vector works
            step = [
                [Fraction(1 if a == b else 0) for b in range(n)] for a in range(n)
            ]
            step[j][i] = Fraction(1)
            step = linalg.mat(step)
            m, u = linalg.congruence(m, step), linalg.matmul(u, step)
        piv = min(
            (t for t in idx if valuation(m[t][t], ctx) is not INF),
            key=lambda t: valuation(m[t][t], ctx),
        )
        perm = tuple(range(k)) + (piv,) + tuple(t for t in idx if t != piv)
        p = linalg.perm_matrix(perm)
        m, u = linalg.congruence(m, p), linalg.matmul(u, p)
        step = [[Fraction(1 if a == b else 0) for b in range(n)] for a in range(n)]
        for j2 in range(k + 1, n):
            step[k][j2] = -m[k][j2] / m[k][k]
        step = linalg.mat(step)
        m, u = linalg.congruence(m, step), linalg.matmul(u, step)
    order = sorted(range(n), key=lambda i: valuation(m[i][i], ctx))
    p = linalg.perm_matrix(tuple(order))
    m, u = linalg.congruence(m, p), linalg.matmul(u, p)
    exps = tuple(int(valuation(m[i][i], ctx)) for i in range(n))
    sigma = standard_involutions(exps)[0]
    cert = ReductionCertificate(u, validate_form(m, ctx), GKType(exps, sigma))
    ok, reason = verify_certificate(form, cert)
    if not ok:
        raise ReductionError(f"Jordan certificate rejected: {reason}")
    return cert


def reduce_form(form: HalfIntegralForm, budget: int = 100_000) -> ReductionCertificate:
    """Produce a verified reduction certificate for a non-degenerate form."""
    if not form.nondegenerate:
        raise FormError("degenerate form")
    if form.n == 0:
        return ReductionCertificate(
            (), validate_form((), form.ctx), GKType((), ())
        )
    if form.ctx.p != 2:
        return jordan_split(form)
    search = _DyadicSearch(form, budget)
    m, u, exps, sigma = search.run(form.entries)
    m, u, sigma = _standardize(m, u, exps, sigma, form.ctx)
    cert = ReductionCertificate(
        u, validate_form(m, form.ctx), GKType(exps, sigma)
    )
    ok, reason = verify_certificate(form, cert)
    if not ok:
        raise ReductionError(f"certificate rejected: {reason}")
    return cert


def verify_certificate(
    form: HalfIntegralForm, cert: ReductionCertificate
) -> tuple[bool, str]:
    """Independent check of a reduction certificate.  Never raises on bad
    certificates; returns (False, reason)."""
    exps = cert.gk_type.exps
    if len(exps) != form.n or cert.reduced.n != form.n:
        return False, "size mismatch"
    if any(exps[i] > exps[i + 1] for i in range(len(exps) - 1)):
        return False, "exponents not non-decreasing"
    if any(a < 0 for a in exps):
        return False, "negative exponent"
    if not is_unimodular(cert.u, form.ctx):
        return False, "transform is not unimodular"
    if linalg.congruence(form.entries, cert.u) != cert.reduced.entries:
        return False, "transform does not map the source to the claimed matrix"
    if not is_standard(exps, cert.gk_type.sigma):
        return False, "involution is not standard"
    if not is_reduced(cert.reduced, cert.gk_type):
        return False, "matrix is not reduced for the claimed type"
    return True, "ok"
