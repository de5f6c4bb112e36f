import math

import pytest
from hypothesis import given, settings, strategies as st

from fibperfect.contfrac_pell import (
    PellSolution,
    convergents,
    lemma4_pattern,
    lemma4_pattern_check,
    neg4_scan,
    neg4_solvable,
    neg4_to_neg1,
    neg_pell_fundamental,
    neg_pell_solvable,
    period_length,
    sqrt_cf,
)
from fibperfect.errors import DomainError

from oracles import brute_neg_pell, sqrt_cf_terms

non_squares = st.integers(min_value=2, max_value=10**6).filter(
    lambda n: math.isqrt(n) ** 2 != n
)


@pytest.mark.parametrize("N, a0, period", [
    (21, 4, (1, 1, 2, 1, 1, 8)),
    (2, 1, (2,)),
    (5, 2, (4,)),
    (3, 1, (1, 2)),
    (13, 3, (1, 1, 1, 1, 6)),
])
def test_sqrt_cf_examples(N, a0, period):
    cf = sqrt_cf(N)
    assert (cf.a0, cf.period) == (a0, period)


@pytest.mark.parametrize("N, length", [(21, 6), (2, 1), (3, 2)])
def test_period_length_examples(N, length):
    assert period_length(N) == length


@pytest.mark.parametrize("N", [0, 1, 4, 9, 144, 10**20])
def test_sqrt_cf_rejects_squares_and_small(N):
    with pytest.raises(DomainError):
        sqrt_cf(N)


@settings(max_examples=150, deadline=None)
@given(non_squares)
def test_sqrt_cf_matches_euclid_oracle(N):
    cf = sqrt_cf(N)
    l = len(cf.period)
    assert cf.a0 == math.isqrt(N)
    assert cf.period[-1] == 2 * cf.a0
    assert [cf.a0, *cf.period, *cf.period] == sqrt_cf_terms(N, 2 * l + 1)


@settings(max_examples=100, deadline=None)
@given(non_squares)
def test_period_is_minimal(N):
    period = sqrt_cf(N).period
    l = len(period)
    for d in range(1, l):
        if l % d == 0:
            assert period != period[:d] * (l // d)


def test_convergent_norms_alternate():
    for N in range(2, 400):
        if math.isqrt(N) ** 2 == N:
            continue
        cf = sqrt_cf(N)
        l = len(cf.period)
        conv = convergents(cf, 2 * l)
        for i, (p, q) in enumerate(conv):
            v = p * p - N * q * q
            assert (v < 0) == (i % 2 == 0)
        p, q = conv[l - 1]
        assert p * p - N * q * q == (-1) ** l


@pytest.mark.parametrize("N, expected", [(2, True), (5, True), (3, False), (13, True), (21, False)])
def test_neg_pell_solvable_examples(N, expected):
    assert neg_pell_solvable(N) is expected


def test_neg_pell_solvable_vs_brute_force():
    for N in range(2, 400):
        if math.isqrt(N) ** 2 == N:
            continue
        hit = brute_neg_pell(N, -1, 10**4)
        if hit is not None:
            assert neg_pell_solvable(N)
        elif neg_pell_solvable(N):
            assert neg_pell_fundamental(N).y > 10**4


@pytest.mark.parametrize("N, x, y", [(2, 1, 1), (5, 2, 1), (13, 18, 5), (10, 3, 1)])
def test_neg_pell_fundamental_examples(N, x, y):
    s = neg_pell_fundamental(N)
    assert (s.x, s.y, s.c) == (x, y, -1)


def test_neg_pell_fundamental_is_minimal():
    for N in range(2, 2000):
        if math.isqrt(N) ** 2 == N or not neg_pell_solvable(N):
            continue
        s = neg_pell_fundamental(N)
        if s.y <= 10**4:
            assert brute_neg_pell(N, -1, s.y) == (s.x, s.y)


def test_neg_pell_fundamental_unsolvable():
    with pytest.raises(DomainError):
        neg_pell_fundamental(3)


@pytest.mark.parametrize("d, xy, uv", [(5, (1, 1), (2, 1)), (13, (3, 1), (18, 5))])
def test_neg4_to_neg1_examples(d, xy, uv):
    out = neg4_to_neg1(d, PellSolution(d, -4, *xy))
    assert (out.x, out.y, out.c) == (*uv, -1)


def test_neg4_to_neg1_rejects_even_x():
    with pytest.raises(DomainError):
        neg4_to_neg1(5, PellSolution(5, -4, 4, 2))


def test_neg4_to_neg1_rejects_even_d():
    with pytest.raises(DomainError):
        neg4_to_neg1(8, PellSolution(8, -4, 2, 1))


def test_neg4_to_neg1_on_scanned_solutions():
    seen = 0
    for d in range(3, 3000, 2):
        if math.isqrt(d) ** 2 == d:
            continue
        s = neg4_scan(d, 200)
        if s is None:
            continue
        if s.x % 2:
            out = neg4_to_neg1(d, s)
            assert out.x**2 - d * out.y**2 == -1
            seen += 1
        else:
            with pytest.raises(DomainError):
                neg4_to_neg1(d, s)
    assert seen > 20


@pytest.mark.parametrize("d, expected", [(5, True), (21, False), (45, False), (13, True)])
def test_neg4_solvable_examples(d, expected):
    assert neg4_solvable(d) is expected


@pytest.mark.parametrize("d", [4, 9, 1, 25])
def test_neg4_solvable_domain(d):
    with pytest.raises(DomainError):
        neg4_solvable(d)


def test_neg4_solvable_vs_brute_force():
    # any -4 solution has y at most twice that of the least -1 solution, and
    # when -1 is unsolvable the scan to 2000 must come up empty
    for d in range(3, 5001, 2):
        if math.isqrt(d) ** 2 == d:
            continue
        solvable = neg4_solvable(d)
        hit = brute_neg_pell(d, -4, 2000)
        if hit is not None:
            assert solvable, d
        elif solvable:
            assert 2 * neg_pell_fundamental(d).y > 2000, d


@pytest.mark.parametrize("k, period", [
    (5, (1, 1, 2, 1, 1, 8)),
    (7, (1, 2, 2, 2, 1, 12)),
    (9, (1, 3, 2, 3, 1, 16)),
])
def test_lemma4_pattern_examples(k, period):
    assert lemma4_pattern(k) == (k - 1, period)
    assert lemma4_pattern_check(k)


def test_lemma4_pattern_range():
    for k in range(5, 500, 2):
        assert lemma4_pattern_check(k)
        assert period_length(k * k - 4) == 6


@pytest.mark.parametrize("k", [3, 4, 6, 1])
def test_lemma4_pattern_domain(k):
    with pytest.raises(DomainError):
        lemma4_pattern_check(k)


def test_pell_solution_checks_itself():
    with pytest.raises(DomainError):
        PellSolution(5, -1, 3, 1)
