"""Command-line surface: compute invariants, emit and verify reduction
certificates, synthesize witnesses, generate corpora, run the self tests.

Forms travel as JSON ``{"p": <prime>, "matrix": [[<rational-string>, ...]]}``;
a top-level array is batch mode.  Certificates are
``{"U": matrix, "R": matrix, "ua": [ints], "sigma": [1-indexed image]}``.
All rationals are exact ``num/den`` strings, never floats.  Exit codes:
0 success, 1 invalid input, 2 internal failure or rejected verification.
"""

from __future__ import annotations

import argparse
import json
import multiprocessing
import os
import re
import sys
from fractions import Fraction

from .egk import EGKDatum, EGKError, lift, synthesize_nondyadic, synthesize_reduced
from .forms import FormError, HalfIntegralForm, delta, random_form, validate_form
from .invariants import egk_of, eta, gk, xi
from .involutions import GKType
from .padic import PrimeContext
from .reducer import (
    BudgetExhausted,
    ReductionCertificate,
    ReductionError,
    reduce_form,
    verify_certificate,
)
from .selfcheck import run_suites

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


class CliError(Exception):
    def __init__(self, code: int, payload: dict):
        super().__init__(payload.get("error", ""))
        self.code = code
        self.payload = payload


def _parse_rational(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str) or not _RATIONAL.match(s.strip()):
        raise CliError(1, {"error": "bad_rational", "value": str(s)})
    return Fraction(s.strip())


def _fmt_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _fmt_matrix(m) -> list[list[str]]:
    return [[_fmt_rational(x) for x in row] for row in m]


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise CliError(1, {"error": "file_not_found", "path": path})
    except json.JSONDecodeError as ex:
        raise CliError(1, {"error": "bad_json", "path": path, "detail": str(ex)})


def _form_from_payload(payload) -> HalfIntegralForm:
    if not isinstance(payload, dict) or "p" not in payload or "matrix" not in payload:
        raise CliError(1, {"error": "bad_form_payload"})
    try:
        ctx = PrimeContext(int(payload["p"]))
    except (ValueError, TypeError) as ex:
        raise CliError(1, {"error": "bad_prime", "detail": str(ex)})
    rows = [[_parse_rational(x) for x in row] for row in payload["matrix"]]
    try:
        return validate_form(rows, ctx)
    except FormError as ex:
        raise CliError(1, {"error": "invalid_form", "detail": str(ex)})


def _form_payload(form: HalfIntegralForm) -> dict:
    return {"p": form.ctx.p, "matrix": _fmt_matrix(form.entries)}


def _cert_payload(cert: ReductionCertificate) -> dict:
    return {
        "U": _fmt_matrix(cert.u),
        "R": _fmt_matrix(cert.reduced.entries),
        "ua": list(cert.exps),
        "sigma": [s + 1 for s in cert.gk_type.sigma],
    }


def _cert_from_payload(payload, ctx: PrimeContext) -> ReductionCertificate:
    try:
        u = tuple(
            tuple(_parse_rational(x) for x in row) for row in payload["U"]
        )
        r = validate_form(
            [[_parse_rational(x) for x in row] for row in payload["R"]], ctx
        )
        exps = tuple(int(a) for a in payload["ua"])
        sigma = tuple(int(s) - 1 for s in payload["sigma"])
        return ReductionCertificate(u, r, GKType(exps, sigma))
    except CliError:
        raise
    except (KeyError, TypeError, ValueError, FormError) as ex:
        raise CliError(1, {"error": "bad_certificate", "detail": str(ex)})


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, separators=(",", ":")))


def _compute_one(args_tuple) -> dict:
    what, payload = args_tuple
    form = _form_from_payload(payload)
    if what == "gk":
        return {"gk": list(gk(form))}
    if what == "xi":
        return {"xi": xi(form)}
    if what == "eta":
        return {"eta": eta(form)}
    if what == "delta":
        return {"delta": delta(form)}
    if what == "egk":
        d = egk_of(form)
        return {"n": list(d.sizes), "m": list(d.exps), "zeta": list(d.zeta)}
    raise CliError(1, {"error": "unknown_quantity", "what": what})


def _reduce_one(payload) -> dict:
    form = _form_from_payload(payload)
    return _cert_payload(reduce_form(form))


def _map_items(fn, items, jobs: int):
    if jobs <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with multiprocessing.Pool(jobs) as pool:
        return pool.map(fn, items)


def _cmd_compute(args) -> int:
    data = _load_json(args.input)
    batch = isinstance(data, list)
    items = [(args.what, payload) for payload in (data if batch else [data])]
    results = _map_items(_compute_one, items, args.jobs)
    _emit(results if batch else results[0])
    return 0


def _cmd_reduce(args) -> int:
    data = _load_json(args.input)
    batch = isinstance(data, list)
    items = data if batch else [data]
    results = _map_items(_reduce_one, items, args.jobs)
    out = results if batch else results[0]
    if args.emit_certificate:
        with open(args.emit_certificate, "w") as fh:
            json.dump(out, fh, sort_keys=True, separators=(",", ":"))
            fh.write("\n")
    _emit(out)
    return 0


def _cmd_verify(args) -> int:
    form = _form_from_payload(_load_json(args.input))
    cert = _cert_from_payload(_load_json(args.certificate), form.ctx)
    ok, reason = verify_certificate(form, cert)
    if ok:
        _emit({"verified": True})
        return 0
    _emit({"verified": False, "reason": reason})
    return 2


def _cmd_synth(args) -> int:
    payload = _load_json(args.egk)
    try:
        ctx = PrimeContext(int(payload["p"]))
        datum = EGKDatum(
            tuple(int(x) for x in payload["n"]),
            tuple(int(x) for x in payload["m"]),
            tuple(int(x) for x in payload["zeta"]),
        )
    except (KeyError, TypeError, ValueError) as ex:
        raise CliError(1, {"error": "bad_egk_payload", "detail": str(ex)})
    sigma = None
    if args.sigma:
        sig_payload = _load_json(args.sigma)
        try:
            sigma = tuple(int(s) - 1 for s in sig_payload["sigma"])
        except (KeyError, TypeError, ValueError) as ex:
            raise CliError(1, {"error": "bad_sigma_payload", "detail": str(ex)})
    try:
        if ctx.p == 2:
            form = synthesize_reduced(datum, ctx, sigma)
        else:
            form = synthesize_nondyadic(lift(datum), ctx)
    except EGKError as ex:
        raise CliError(1, {"error": "invalid_egk_datum", "detail": str(ex)})
    _emit(_form_payload(form))
    return 0


def _cmd_rand(args) -> int:
    import random

    ctx = PrimeContext(args.p)
    rng = random.Random(args.seed)
    forms = [
        _form_payload(random_form(args.n, ctx, rng, height=args.height))
        for _ in range(args.count)
    ]
    _emit(forms)
    return 0


def _cmd_selftest(args) -> int:
    results = run_suites(args.suite, trials=args.trials, seed=args.seed)
    bad = 0
    for r in results:
        if r.ok:
            print(f"ok   {r.name}")
        else:
            bad += 1
            print(f"FAIL {r.name}: {r.detail}")
    print(f"{len(results) - bad}/{len(results)} checks passed")
    return 0 if bad == 0 else 2


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gkinv",
        description="Gross-Keating invariants of half-integral symmetric "
        "matrices over Q_p, with verifiable reduction certificates.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="compute an invariant of a form")
    c.add_argument("--what", required=True, choices=("gk", "xi", "eta", "delta", "egk"))
    c.add_argument("--input", required=True)
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(fn=_cmd_compute)

    c = sub.add_parser("reduce", help="emit a reduction certificate")
    c.add_argument("--input", required=True)
    c.add_argument("--emit-certificate", default=None)
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(fn=_cmd_reduce)

    c = sub.add_parser("verify", help="verify a reduction certificate")
    c.add_argument("--input", required=True)
    c.add_argument("--certificate", required=True)
    c.set_defaults(fn=_cmd_verify)

    c = sub.add_parser("synth", help="synthesize a form realizing a datum")
    c.add_argument("--egk", required=True)
    c.add_argument("--sigma", default=None)
    c.set_defaults(fn=_cmd_synth)

    c = sub.add_parser("rand", help="generate a random form corpus")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--count", type=int, default=1)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--height", type=int, default=4)
    c.set_defaults(fn=_cmd_rand)

    c = sub.add_parser("selftest", help="run the property suites")
    c.add_argument("--suite", default="all", choices=("padic", "reducer", "egk", "all"))
    c.add_argument("--trials", type=int, default=120)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(fn=_cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if "GK_SEED" in os.environ and hasattr(args, "seed"):
        args.seed = int(os.environ["GK_SEED"])
    try:
        return args.fn(args)
    except CliError as ex:
        _emit(ex.payload)
        return ex.code
    except (FormError, EGKError, ValueError) as ex:
        _emit({"error": "invalid_input", "detail": str(ex)})
        return 1
    except (BudgetExhausted, ReductionError) as ex:
        _emit({"error": "internal_failure", "detail": str(ex)})
        return 2


if __name__ == "__main__":
    sys.exit(main())
