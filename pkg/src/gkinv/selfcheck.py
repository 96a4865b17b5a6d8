"""Executable property suites behind the structural claims of the library.

Each check runs a randomized or exhaustive verification of one algebraic
property; the CLI ``selftest`` subcommand and the pytest property tests both
drive these.  All randomness is seed-deterministic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .egk import (
    collapse,
    enumerate_egk,
    lift,
    naive_datum_of_diagonal,
    random_egk,
    synthesize_nondyadic,
    synthesize_reduced,
    validate_egk,
    validate_naive,
)
from .forms import (
    HalfIntegralForm,
    delta,
    direct_sum,
    in_gk_group,
    leading,
    matrix_in_lattice,
    membership,
    norm_ideal_ord,
    random_form,
    random_unimodular,
    signed_disc,
    transform,
    validate_form,
)
from .invariants import check_inverse_bounds, classify_binary, egk_of, eta, gk, xi
from .involutions import (
    GKType,
    all_involutions,
    choice_block_count,
    is_admissible,
    is_standard,
    plus_signature,
    restrict,
    standard_involutions,
)
from .oracle import (
    SearchBudget,
    exhaustive_gk_binary,
    gk_lower_search,
    greatest_in_s,
    hilbert_brute,
)
from .padic import (
    PrimeContext,
    hilbert_symbol,
    is_square,
    quad_ext,
    square_class_reps,
    valuation,
    xi_code,
    zpow,
)
from .reducer import (
    dyadic_pair_conditions,
    is_reduced,
    reduce_form,
    verify_certificate,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _result(name: str, failures: list[str]) -> CheckResult:
    return CheckResult(name, not failures, "; ".join(failures[:3]))


def _random_nonzero(rng: random.Random, ctx: PrimeContext) -> Fraction:
    while True:
        num = rng.randint(-(ctx.p**3), ctx.p**3)
        den = rng.randint(1, ctx.p**2)
        if num:
            return Fraction(num, den)


# ---------------------------------------------------------------- padic

def padic_suite(trials: int = 300, seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    out: list[CheckResult] = []
    ctxs = [PrimeContext(p) for p in (2, 3, 5)]

    fails = []
    for ctx in ctxs:
        for _ in range(trials):
            a, b, c = (_random_nonzero(rng, ctx) for _ in range(3))
            if hilbert_symbol(a, b, ctx) != hilbert_symbol(b, a, ctx):
                fails.append(f"symmetry p={ctx.p} {a},{b}")
            lhs = hilbert_symbol(a, b * c, ctx)
            rhs = hilbert_symbol(a, b, ctx) * hilbert_symbol(a, c, ctx)
            if lhs != rhs:
                fails.append(f"bimultiplicativity p={ctx.p} {a},{b},{c}")
            if hilbert_symbol(a, -a, ctx) != 1:
                fails.append(f"<a,-a> p={ctx.p} {a}")
            s = _random_nonzero(rng, ctx)
            if hilbert_symbol(a * s * s, b, ctx) != hilbert_symbol(a, b, ctx):
                fails.append(f"square-class p={ctx.p} {a},{b},{s}")
    out.append(_result("hilbert symbol algebra", fails))

    fails = []
    for ctx in ctxs:
        for _ in range(trials // 3):
            x = _random_nonzero(rng, ctx)
            ext = quad_ext(x, ctx)
            code = xi_code(x, ctx)
            if (code == 0) != (ext.d >= 1):
                fails.append(f"xi vs discriminant p={ctx.p} {x}")
            if (code * code == 1) != (ext.d == 0):
                fails.append(f"xi^2 vs discriminant p={ctx.p} {x}")
            reps = square_class_reps(ctx)
            all_plus = all(hilbert_symbol(x, r, ctx) == 1 for r in reps)
            if is_square(x, ctx) != all_plus:
                fails.append(f"square iff trivial pairing p={ctx.p} {x}")
    out.append(_result("square classes and quadratic extensions", fails))

    fails = []
    for ctx in ctxs:
        reps = square_class_reps(ctx)
        for a in reps:
            for b in reps:
                if hilbert_symbol(a, b, ctx) != hilbert_brute(a, b, ctx):
                    fails.append(f"closed form vs brute p={ctx.p} {a},{b}")
    out.append(_result("hilbert closed form equals brute table", fails))
    return out


# ---------------------------------------------------------------- qform

def _random_gk_group_element(exps, ctx, rng):
    """Random member of the exponent-compatible transform group: shears obey
    the half-difference bound, block entries are free units."""
    n = len(exps)
    u = [list(row) for row in linalg.identity(n)]
    for _ in range(4):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        need = max(0, -(-(exps[j] - exps[i]) // 2))  # ceil of half-difference
        x = rng.randint(-ctx.p, ctx.p) * ctx.p**need
        for row in u:
            row[j] += x * row[i]
    return linalg.mat(u)


def qform_suite(trials: int = 120, seed: int = 1) -> list[CheckResult]:
    rng = random.Random(seed)
    out: list[CheckResult] = []
    ctxs = [PrimeContext(p) for p in (2, 3, 5)]

    fails = []
    for _ in range(trials):
        ctx = rng.choice(ctxs)
        n = rng.randint(1, 4)
        b = random_form(n, ctx, rng, height=3)
        u1 = random_unimodular(n, ctx, rng)
        u2 = random_unimodular(n, ctx, rng)
        lhs = transform(transform(b, u1), u2)
        rhs = transform(b, linalg.matmul(u1, u2))
        if lhs.entries != rhs.entries:
            fails.append(f"composition p={ctx.p}")
        if delta(transform(b, u1)) != delta(b):
            fails.append(f"delta invariance p={ctx.p}")
        if norm_ideal_ord(transform(b, u1)) != norm_ideal_ord(b):
            fails.append(f"norm invariance p={ctx.p}")
    out.append(_result("transform composition and invariances", fails))

    fails = []
    for _ in range(trials):
        ctx = rng.choice(ctxs)
        n = rng.randint(1, 4)
        b = random_form(n, ctx, rng, height=2)
        exps = tuple(sorted(rng.randint(0, 2) for _ in range(n)))
        if membership(b, exps, strict=True) and not membership(b, exps):
            fails.append("strict does not imply lax")
        for strict in (False, True):
            if membership(b, exps, strict):
                u = _random_gk_group_element(exps, ctx, rng)
                if not in_gk_group(u, exps, ctx):
                    fails.append(f"group sampler left the group p={ctx.p}")
                elif not membership(transform(b, u), exps, strict):
                    fails.append(f"bounds not preserved p={ctx.p} {exps} strict={strict}")
    out.append(_result("membership preserved by the compatible group", fails))

    fails = []
    for _ in range(trials // 2):
        ctx = rng.choice(ctxs)
        n = rng.randint(1, 3)
        b = random_form(n, ctx, rng, height=2)
        two_b = tuple(tuple(2 * x for x in row) for row in b.entries)
        cap = int(valuation(linalg.det(two_b), ctx))
        if sum(greatest_in_s(b)) > cap:
            fails.append(f"mass bound p={ctx.p}")
        members = _enumerate_s(b, cap)
        if any(sum(m) > cap for m in members):
            fails.append(f"enumerated member beats the mass bound p={ctx.p}")
    out.append(_result("admissible sequences respect the determinant bound", fails))
    return out


def _enumerate_s(form: HalfIntegralForm, cap: int):
    n = form.n
    ctx = form.ctx
    out = []

    def rec(prefix):
        i = len(prefix)
        if i == n:
            out.append(tuple(prefix))
            return
        lo = prefix[-1] if prefix else 0
        for a in range(lo, cap + 1):
            cand = prefix + [a]
            pad = cand + [a] * (n - i - 1)
            if matrix_in_lattice(
                linalg.submatrix(form.entries, range(i + 1), range(i + 1)),
                cand,
                ctx,
            ):
                rec(cand)

    rec([])
    return [
        m for m in out if membership(form, m)
    ]


# ---------------------------------------------------------------- involutions

def involution_suite(max_n: int = 6, max_val: int = 3, seed: int = 2) -> list[CheckResult]:
    out: list[CheckResult] = []
    fails = []
    census_fails = []
    for n in range(1, max_n + 1):
        invs = all_involutions(n)
        for exps in _nondecreasing_seqs(n, max_val):
            stds = standard_involutions(exps)
            if len(stds) != 2 ** choice_block_count(exps):
                fails.append(f"count {exps}")
            if any(not is_admissible(exps, s) for s in stds):
                fails.append(f"standard not admissible {exps}")
            if any(not is_standard(exps, s) for s in stds):
                fails.append(f"standard fails own predicate {exps}")
            admissible_sigs = {
                plus_signature(exps, s) for s in invs if is_admissible(exps, s)
            }
            std_sigs = {plus_signature(exps, s) for s in stds}
            if admissible_sigs != std_sigs:
                census_fails.append(f"{exps}")
            total = sum(exps)
            for s in stds:
                fixed = [i for i in range(n) if s[i] == i]
                if n % 2 == 1 and len(fixed) != 1:
                    fails.append(f"odd-size fixed count {exps}")
                if n % 2 == 0 and len(fixed) != (0 if total % 2 == 0 else 2):
                    fails.append(f"even-size fixed count {exps}")
    out.append(_result("standard involution count and fixed points", fails))
    out.append(_result("admissible census matches standard list", census_fails))

    fails = []
    for n in range(2, max_n + 1):
        for exps in _nondecreasing_seqs(n, 2):
            for s in standard_involutions(exps):
                for k in range(1, n):
                    res = restrict(GKType(exps, s), k)
                    if res is not None and not res.standard:
                        fails.append(f"restriction not standard {exps} k={k}")
    out.append(_result("accepted restrictions stay standard", fails))
    return out


def _nondecreasing_seqs(n: int, max_val: int):
    def rec(prefix):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        lo = prefix[-1] if prefix else 0
        for v in range(lo, max_val + 1):
            yield from rec(prefix + [v])

    yield from rec([])


# ---------------------------------------------------------------- reducer

def reducer_suite(trials: int = 60, seed: int = 3) -> list[CheckResult]:
    rng = random.Random(seed)
    out: list[CheckResult] = []
    ctx2 = PrimeContext(2)
    ctxs = [PrimeContext(p) for p in (2, 3, 5)]

    fails = []
    for _ in range(trials):
        ctx = rng.choice(ctxs)
        n = rng.randint(1, 4)
        b = random_form(n, ctx, rng, height=3)
        cert = reduce_form(b)
        ok, reason = verify_certificate(b, cert)
        if not ok:
            fails.append(f"verify p={ctx.p}: {reason}")
        if sum(cert.exps) != delta(cert.reduced):
            fails.append(f"reduced mass p={ctx.p}")
        if ctx.p == 2 and not dyadic_pair_conditions(cert.reduced, cert.gk_type):
            fails.append(f"dyadic pair shortcut p={ctx.p}")
    out.append(_result("certificates verify and carry the full mass", fails))

    fails = []
    for _ in range(trials):
        n = rng.randint(1, 4)
        b = random_form(n, ctx2, rng, height=3)
        u1 = random_unimodular(n, ctx2, rng)
        u2 = random_unimodular(n, ctx2, rng)
        c1 = reduce_form(transform(b, u1))
        c2 = reduce_form(transform(b, u2))
        if c1.exps != c2.exps or c1.gk_type.sigma != c2.gk_type.sigma:
            fails.append(f"type differs across coordinates n={n}")
    out.append(_result("standard type independent of the basis", fails))

    fails = []
    for _ in range(trials):
        ctx = rng.choice(ctxs)
        n = rng.randint(2, 4)
        b = random_form(n, ctx, rng, height=2)
        cert = reduce_form(b)
        r, exps = cert.reduced, cert.exps
        u = _random_lower_unipotent(exps, ctx, rng)
        if not is_reduced(transform(r, u), cert.gk_type):
            fails.append(f"lower-unipotent stability p={ctx.p}")
        u2 = random_unimodular(n, ctx, rng)
        moved = transform(r, u2)
        if membership(moved, exps) != in_gk_group(u2, exps, ctx):
            fails.append(f"optimality group criterion p={ctx.p}")
        if reduce_form(moved).exps != exps:
            fails.append(f"gk changed under transform p={ctx.p}")
    out.append(_result("stability and optimality transforms", fails))

    fails = []
    for _ in range(trials):
        ctx = rng.choice(ctxs)
        n = rng.randint(2, 4)
        b = random_form(n, ctx, rng, height=2)
        cert = reduce_form(b)
        exps = cert.exps
        for k in range(1, n):
            if exps[k - 1] < exps[k]:
                lead = leading(cert.reduced, k)
                if gk(lead) != exps[:k]:
                    fails.append(f"leading block gk p={ctx.p} k={k}")
        m = rng.randint(1, n)
        lead = leading(b, m)
        if lead.nondegenerate and gk(lead) < exps[:m]:
            fails.append(f"represented block comparison p={ctx.p}")
    out.append(_result("leading blocks bound the invariant", fails))

    fails = []
    for _ in range(trials):
        g = random_egk(rng, max_r=2, max_m=3, max_n=4)
        exps = g.expand_exps()
        for sigma in standard_involutions(exps):
            if any(sigma[i] == i for i in range(len(exps))):
                continue
            r = synthesize_reduced(g, ctx2, sigma)
            inv = linalg.inverse(
                tuple(tuple(4 * x for x in row) for row in r.entries)
            )
            if not matrix_in_lattice(inv, tuple(-a for a in exps), ctx2):
                fails.append(f"scaled inverse bounds {g}")
    out.append(_result("pair-only reduced forms have controlled inverses", fails))

    fails = []
    for _ in range(trials):
        g = random_egk(rng, max_r=3, max_m=3, max_n=5)
        b = synthesize_reduced(g, ctx2)
        cert = reduce_form(b)  # source already optimal
        if not in_gk_group(cert.u, cert.exps, ctx2):
            fails.append(f"certificate transform left the group {g}")
    out.append(_result("optimal sources get in-group transforms", fails))
    return out


def _random_lower_unipotent(exps, ctx, rng):
    n = len(exps)
    u = [list(row) for row in linalg.identity(n)]
    for i in range(n):
        for j in range(n):
            if exps[i] > exps[j]:
                u[i][j] = Fraction(rng.randint(-ctx.p**2, ctx.p**2))
    return linalg.mat(u)


# ---------------------------------------------------------------- invariants

def invariant_suite(trials: int = 80, seed: int = 4) -> list[CheckResult]:
    rng = random.Random(seed)
    out: list[CheckResult] = []
    ctxs = [PrimeContext(p) for p in (2, 3, 5)]
    ctx2 = PrimeContext(2)

    fails = []
    for _ in range(trials):
        ctx = rng.choice(ctxs)
        n = rng.randint(1, 4)
        b = random_form(n, ctx, rng, height=3)
        if sum(gk(b)) != delta(b):
            fails.append(f"mass identity p={ctx.p}")
    out.append(_result("invariant mass equals the discriminant formula", fails))

    fails = []
    for _ in range(trials):
        ctx = rng.choice(ctxs)
        n = rng.randint(2, 4)
        b = random_form(n, ctx, rng, height=2)
        u = random_unimodular(n, ctx, rng)
        if eta(transform(b, u)) != eta(b):
            fails.append(f"clifford invariance p={ctx.p}")
        lead = leading(b, n - 1)
        if lead.nondegenerate:
            chain = eta(lead) * hilbert_symbol(
                signed_disc(b), signed_disc(lead), ctx
            )
            if eta(b) != chain:
                fails.append(f"clifford chain rule p={ctx.p}")
    out.append(_result("clifford invariant transformation laws", fails))

    fails = []
    for _ in range(trials):
        ctx = rng.choice(ctxs)
        n = rng.randint(1, 3)
        b = random_form(n, ctx, rng, height=2)
        a = rng.randint(0, 3)
        target = rng.choice((1, -1))
        k = _unramified_binary(target, a, ctx)
        summed = direct_sum(b, k)
        expect = eta(b) * zpow(target, a + int(valuation(signed_disc(b), ctx)))
        if eta(summed) != expect:
            fails.append(f"unramified pair extension p={ctx.p}")
    out.append(_result("clifford invariant under scaled unramified pairs", fails))

    fails = []
    for _ in range(trials):
        ctx = rng.choice(ctxs)
        scale = rng.randint(0, 2)
        m = rng.randint(1, 2)
        pieces = [
            _unramified_binary(rng.choice((1, -1)), scale, ctx) for _ in range(m)
        ]
        b = pieces[0]
        for piece in pieces[1:]:
            b = direct_sum(b, piece)
        u = random_unimodular(b.n, ctx, rng)
        b = transform(b, u)
        g = gk(b)
        if len(set(g)) != 1:
            fails.append(f"constant invariant expected p={ctx.p}")
        want = 1 if b.n % 2 else zpow(xi(b), g[0])
        if eta(b) != want:
            fails.append(f"constant-type clifford value p={ctx.p}")
    out.append(_result("constant-type forms", fails))

    fails = []
    for _ in range(trials):
        n = rng.choice((2, 4))
        b = random_form(n, ctx2, rng, height=3)
        cert = reduce_form(b)
        total_odd = sum(cert.exps) % 2 == 1
        fixed2 = len(cert.gk_type.fixed) == 2
        ram = quad_ext(signed_disc(b), ctx2).d > 0
        zero = xi(b) == 0
        if not (total_odd == fixed2 == ram == zero):
            fails.append(f"parity equivalences n={n}")
    out.append(_result("even-size parity equivalences", fails))

    fails = []
    for _ in range(trials // 2):
        n = rng.randint(2, 4)
        b = random_form(n, ctx2, rng, height=2)
        u1 = random_unimodular(n, ctx2, rng)
        u2 = random_unimodular(n, ctx2, rng)
        r1 = reduce_form(transform(b, u1)).reduced
        r2 = reduce_form(transform(b, u2)).reduced
        exps = gk(b)
        for k in range(1, n):
            if exps[k - 1] < exps[k]:
                f1, f2 = leading(r1, k), leading(r2, k)
                same = xi(f1) == xi(f2) if k % 2 == 0 else eta(f1) == eta(f2)
                if not same:
                    fails.append(f"leading block sign differs at k={k}")
    out.append(_result("leading-block signs stable across bases", fails))

    fails = []
    for _ in range(trials // 2):
        g = random_egk(rng, max_r=3, max_m=4, max_n=6, parity="odd_total")
        exps = g.expand_exps()
        for sigma in standard_involutions(exps):
            b = synthesize_reduced(g, ctx2, sigma)
            if not check_inverse_bounds(b, GKType(exps, sigma)):
                fails.append(f"inverse bounds {g}")
    out.append(_result("exact-inverse valuation bounds", fails))

    fails = []
    for _ in range(trials // 2):
        g = random_egk(rng, max_r=3, max_m=3, max_n=5)
        exps = g.expand_exps()
        sigma = rng.choice(standard_involutions(exps))
        gk_type = GKType(exps, sigma)
        r = synthesize_reduced(g, ctx2, sigma)
        t = _perturb_strictly(r, exps, rng)
        if not is_reduced(t, gk_type):
            fails.append(f"perturbation left the reduced set {g}")
            continue
        n = r.n
        if n % 2 == 0 and xi(t) != xi(r):
            fails.append(f"even-size sign moved {g}")
        if n % 2 == 1 and eta(t) != eta(r):
            fails.append(f"odd-size sign moved {g}")
        if n % 2 == 0 and xi(r) != 0 and eta(t) != eta(r):
            fails.append(f"clifford moved despite nonzero sign {g}")
    out.append(_result("signs stable under strict lattice perturbations", fails))
    return out


def _perturb_strictly(form: HalfIntegralForm, exps, rng) -> HalfIntegralForm:
    """Add a random symmetric matrix lying strictly inside the valuation
    lattice of ``exps`` (every bound exceeded by at least one digit)."""
    n = form.n
    rows = [list(row) for row in form.entries]
    for i in range(n):
        rows[i][i] += rng.randint(0, 2) * Fraction(2) ** (exps[i] + 1)
        for j in range(i + 1, n):
            need = (exps[i] + exps[j]) // 2 + 1  # strict, so one digit above
            bump = rng.randint(0, 2) * Fraction(2) ** need / 2
            rows[i][j] += bump
            rows[j][i] += bump
    return validate_form(rows, form.ctx)


def _unramified_binary(target_xi: int, scale: int, ctx: PrimeContext):
    if ctx.p == 2:
        rows = (
            [[0, Fraction(1, 2)], [Fraction(1, 2), 0]]
            if target_xi == 1
            else [[1, Fraction(1, 2)], [Fraction(1, 2), 1]]
        )
    else:
        u = next(
            r for r in square_class_reps(ctx)
            if valuation(r, ctx) == 0 and not is_square(r, ctx)
        )
        rows = [[1, 0], [0, -1]] if target_xi == 1 else [[1, 0], [0, -u]]
    f = Fraction(ctx.p) ** scale
    return validate_form([[f * x for x in row] for row in rows], ctx)


# ---------------------------------------------------------------- egk

def egk_suite(trials: int = 80, seed: int = 5) -> list[CheckResult]:
    rng = random.Random(seed)
    out: list[CheckResult] = []
    ctx2 = PrimeContext(2)
    ctx3 = PrimeContext(3)

    fails = []
    for g in enumerate_egk(3, 4, 6):
        h = lift(g)
        if not validate_naive(h)[0] or collapse(h) != g:
            fails.append(f"{g}")
    out.append(_result("collapse inverts lift exhaustively", fails))

    fails = []
    for _ in range(trials):
        p = rng.choice((2, 3, 5))
        ctx = PrimeContext(p)
        n = rng.randint(1, 4)
        b = random_form(n, ctx, rng, height=3)
        if not validate_egk(egk_of(b))[0]:
            fails.append(f"axioms p={p}")
    out.append(_result("computed data satisfy the axioms", fails))

    fails = []
    for _ in range(trials):
        g = random_egk(rng, max_r=3, max_m=4, max_n=6)
        h = lift(g)
        t = synthesize_nondyadic(h, ctx3)
        if naive_datum_of_diagonal(t) != h:
            fails.append(f"nondyadic synthesis {h}")
    out.append(_result("nondyadic synthesis realizes naive data", fails))

    fails = []
    for _ in range(trials):
        g = random_egk(rng, max_r=3, max_m=4, max_n=6)
        if egk_of(synthesize_reduced(g, ctx2)) != g:
            fails.append(f"dyadic round trip {g}")
    out.append(_result("dyadic synthesis round trip", fails))

    fails = []
    for _ in range(trials):
        g = random_egk(rng, max_r=2, max_m=3, max_n=5)
        exps = g.expand_exps()
        sigma = standard_involutions(exps)[0]
        b = synthesize_reduced(g, ctx2, sigma)
        n = b.n
        if n < 2:
            continue
        res = restrict(GKType(exps, sigma), n - 1)
        lead = leading(b, n - 1)
        if res is None or not lead.nondegenerate or not is_reduced(lead, res):
            continue  # the recursions presume a reduced leading block
        if n % 2 == 1 and sum(exps[: n - 1]) % 2 == 0:
            if eta(b) != eta(lead) * zpow(xi(lead), exps[-1]):
                fails.append(f"odd-size extension recursion {g}")
        if n % 2 == 0 and sum(exps) % 2 == 0:
            if eta(b) != eta(lead) * zpow(xi(b), exps[-1]):
                fails.append(f"even-size extension recursion {g}")
    out.append(_result("clifford recursions on synthesized families", fails))
    return out


# ---------------------------------------------------------------- oracle

def oracle_suite(trials: int = 40, seed: int = 6) -> list[CheckResult]:
    rng = random.Random(seed)
    out: list[CheckResult] = []
    ctxs = [PrimeContext(p) for p in (2, 3, 5)]

    fails = []
    for ctx in ctxs:
        for _ in range(trials):
            a = _random_nonzero(rng, ctx)
            b = _random_nonzero(rng, ctx)
            if hilbert_symbol(a, b, ctx) != hilbert_brute(a, b, ctx):
                fails.append(f"p={ctx.p} {a},{b}")
    out.append(_result("hilbert brute agrees on random pairs", fails))

    fails = []
    for _ in range(trials):
        p = rng.choice((2, 3))
        ctx = PrimeContext(p)
        b = random_form(2, ctx, rng, height=2)
        if norm_ideal_ord(b) != 0:
            continue
        cls = classify_binary(b, check=False)
        if not (gk(b) == exhaustive_gk_binary(b) == cls.predicted_gk):
            fails.append(f"binary routes disagree p={p}")
    out.append(_result("binary ground truth triple agreement", fails))

    fails = []
    for _ in range(trials):
        ctx = rng.choice(ctxs)
        n = rng.randint(1, 4)
        b = random_form(n, ctx, rng, height=3)
        lo = gk_lower_search(b, SearchBudget(200, seed=rng.randrange(1 << 30)))
        if tuple(lo) > tuple(gk(b)):
            fails.append(f"lower bound exceeded p={ctx.p}")
    out.append(_result("sampled search never exceeds the invariant", fails))

    fails = []
    for _ in range(trials):
        ctx = rng.choice(ctxs)
        b = random_form(rng.randint(1, 3), ctx, rng, height=2)
        two_b = tuple(tuple(2 * x for x in row) for row in b.entries)
        cap = int(valuation(linalg.det(two_b), ctx))
        members = _enumerate_s(b, cap)
        if greatest_in_s(b) != max(members):
            fails.append(f"descending search misses the maximum p={ctx.p}")
    out.append(_result("greatest admissible sequence matches enumeration", fails))
    return out


SUITES = {
    "padic": lambda trials, seed: padic_suite(trials, seed) + qform_suite(max(trials // 3, 30), seed + 1),
    "reducer": lambda trials, seed: involution_suite(seed=seed)
    + reducer_suite(max(trials // 2, 30), seed + 2)
    + invariant_suite(max(trials // 2, 30), seed + 3)
    + oracle_suite(max(trials // 4, 20), seed + 4),
    "egk": lambda trials, seed: egk_suite(max(trials // 2, 40), seed + 5),
}


def run_suites(which: str = "all", trials: int = 120, seed: int = 0) -> list[CheckResult]:
    names = list(SUITES) if which == "all" else [which]
    results: list[CheckResult] = []
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}")
        results.extend(SUITES[name](trials, seed))
    return results
