"""Gross-Keating invariants of half-integral symmetric matrices over Q_p.

Exact-arithmetic computation of the invariant, its extended block data,
and certified reduced forms, for any prime including p = 2.
"""

from .egk import EGKDatum, NaiveEGK, collapse, lift, synthesize_nondyadic, synthesize_reduced
from .forms import HalfIntegralForm, delta, membership, signed_disc, transform, validate_form
from .invariants import classify_binary, egk_of, eta, gk, xi
from .involutions import GKType, standard_involutions
from .padic import PrimeContext, hilbert_symbol, is_square, quad_ext, valuation
from .reducer import ReductionCertificate, is_reduced, reduce_form, verify_certificate

__all__ = [
    "EGKDatum",
    "GKType",
    "HalfIntegralForm",
    "NaiveEGK",
    "PrimeContext",
    "ReductionCertificate",
    "classify_binary",
    "collapse",
    "delta",
    "egk_of",
    "eta",
    "gk",
    "hilbert_symbol",
    "is_reduced",
    "is_square",
    "lift",
    "membership",
    "quad_ext",
    "reduce_form",
    "signed_disc",
    "standard_involutions",
    "synthesize_nondyadic",
    "synthesize_reduced",
    "transform",
    "validate_form",
    "valuation",
    "verify_certificate",
    "xi",
]
