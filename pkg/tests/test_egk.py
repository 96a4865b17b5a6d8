import random

import pytest

from gkinv.egk import (
    EGKDatum,
    EGKError,
    NaiveEGK,
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
from gkinv.forms import leading
from gkinv.invariants import egk_of, eta, xi
from gkinv.involutions import standard_involutions
from gkinv.padic import PrimeContext, valuation, zpow
from gkinv.reducer import is_reduced
from gkinv.involutions import GKType

CTX2 = PrimeContext(2)
CTX3 = PrimeContext(3)
CTX5 = PrimeContext(5)


def test_validate_naive_examples():
    assert validate_naive(NaiveEGK((0, 1), (1, 0)))[0]
    assert validate_naive(NaiveEGK((0, 0), (1, 1)))[0]
    ok, bad = validate_naive(NaiveEGK((1, 0), (1, 1)))
    assert not ok and bad


def test_validate_egk_examples():
    assert validate_egk(EGKDatum((1, 1), (0, 1), (1, 0)))[0]
    assert validate_egk(EGKDatum((2,), (0,), (-1,)))[0]
    ok, bad = validate_egk(EGKDatum((1,), (0,), (-1,)))
    assert not ok  # an odd first block forces the sign +1


def test_collapse_examples():
    assert collapse(NaiveEGK((0, 1), (1, 0))) == EGKDatum((1, 1), (0, 1), (1, 0))
    assert collapse(NaiveEGK((0, 0), (1, -1))) == EGKDatum((2,), (0,), (-1,))
    assert collapse(NaiveEGK((3,), (1,))) == EGKDatum((1,), (3,), (1,))


def test_lift_examples():
    assert lift(EGKDatum((1, 1), (0, 1), (1, 0))) == NaiveEGK((0, 1), (1, 0))
    assert lift(EGKDatum((2,), (0,), (1,))) == NaiveEGK((0, 0), (1, 1))
    h = lift(EGKDatum((3,), (0,), (1,)))
    assert h.a == (0, 0, 0) and h.eps[0] == 1 and h.eps[2] == 1
    with pytest.raises(EGKError):
        lift(EGKDatum((1,), (0,), (0,)))


def test_lift_surjectivity_exhaustive():
    data = enumerate_egk(3, 4, 6)
    assert len(data) > 500
    for g in data:
        h = lift(g)
        assert validate_naive(h)[0]
        assert collapse(h) == g


def test_synthesize_nondyadic_examples():
    t = synthesize_nondyadic(NaiveEGK((0, 1), (1, 0)), CTX3)
    assert [valuation(t.entries[i][i], CTX3) for i in range(2)] == [0, 1]
    assert naive_datum_of_diagonal(t) == NaiveEGK((0, 1), (1, 0))
    t = synthesize_nondyadic(NaiveEGK((0, 0), (1, -1)), CTX3)
    assert xi(t) == -1
    t = synthesize_nondyadic(NaiveEGK((2,), (1,)), CTX5)
    assert valuation(t.entries[0][0], CTX5) == 2
    with pytest.raises(EGKError):
        synthesize_nondyadic(NaiveEGK((0,), (1,)), CTX2)


def test_synthesize_nondyadic_random_round_trip():
    rng = random.Random(13)
    for _ in range(40):
        g = random_egk(rng, max_r=3, max_m=4, max_n=6)
        h = lift(g)
        for ctx in (CTX3, CTX5):
            t = synthesize_nondyadic(h, ctx)
            assert naive_datum_of_diagonal(t) == h


def test_synthesize_reduced_examples():
    form = synthesize_reduced(EGKDatum((2,), (0,), (1,)), CTX2)
    assert xi(form) == 1 and egk_of(form) == EGKDatum((2,), (0,), (1,))
    form = synthesize_reduced(EGKDatum((1, 1), (0, 1), (1, 0)), CTX2)
    assert egk_of(form) == EGKDatum((1, 1), (0, 1), (1, 0))
    form = synthesize_reduced(EGKDatum((1,), (3,), (1,)), CTX2)
    assert valuation(form.entries[0][0], CTX2) == 3
    with pytest.raises(EGKError):
        synthesize_reduced(EGKDatum((1, 1), (0, 1), (1, 0)), CTX3)


def test_synthesize_reduced_is_clean_and_reduced():
    rng = random.Random(17)
    for _ in range(25):
        g = random_egk(rng, max_r=3, max_m=4, max_n=6)
        exps = g.expand_exps()
        for sigma in standard_involutions(exps):
            form = synthesize_reduced(g, CTX2, sigma)
            assert is_reduced(form, GKType(exps, sigma))
            for i in range(form.n):
                for j in range(form.n):
                    if i != j and sigma[i] != j:
                        assert form.entries[i][j] == 0  # clean


def test_synthesize_reduced_round_trip_all_sigmas():
    rng = random.Random(19)
    for _ in range(30):
        g = random_egk(rng, max_r=3, max_m=4, max_n=6)
        assert egk_of(synthesize_reduced(g, CTX2)) == g


def test_clifford_recursion_even_extension():
    from gkinv.involutions import restrict

    rng = random.Random(23)
    for _ in range(40):
        g = random_egk(rng, max_r=2, max_m=3, max_n=6)
        exps = g.expand_exps()
        sigma = standard_involutions(exps)[0]
        b = synthesize_reduced(g, CTX2, sigma)
        n = b.n
        if n < 2:
            continue
        res = restrict(GKType(exps, sigma), n - 1)
        lead = leading(b, n - 1)
        if res is None or not lead.nondegenerate or not is_reduced(lead, res):
            continue  # the recursion presumes a reduced leading block
        if n % 2 == 0 and sum(exps) % 2 == 0:
            assert eta(b) == eta(lead) * zpow(xi(b), exps[-1])
