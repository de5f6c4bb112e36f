import pytest

from fibperfect.arith_core import factorize, sigma
from fibperfect.errors import DomainError
from fibperfect.sigma3_div import (
    classify_sigma3,
    conjecture_scan,
    even_perfect_numbers,
    is_even_perfect,
    lemma6_solutions,
    lemma7_search,
    lemma8_search,
    scan_semiprimes,
    scan_two_power_times_prime,
)

ORACLE_LIMIT = 2 * 10**5


@pytest.fixture(scope="module")
def sigma3_oracle():
    """Exact sigma_3 by divisor sieve, plus distinct/total prime counts."""
    s = [0] * (ORACLE_LIMIT + 1)
    for d in range(1, ORACLE_LIMIT + 1):
        d3 = d**3
        for m in range(d, ORACLE_LIMIT + 1, d):
            s[m] += d3
    omega = [0] * (ORACLE_LIMIT + 1)
    big_omega = [0] * (ORACLE_LIMIT + 1)
    for p in range(2, ORACLE_LIMIT + 1):
        if omega[p] == 0:  # prime
            for m in range(p, ORACLE_LIMIT + 1, p):
                omega[m] += 1
            pk = p
            while pk <= ORACLE_LIMIT:
                for m in range(pk, ORACLE_LIMIT + 1, pk):
                    big_omega[m] += 1
                pk *= p
    return s, omega, big_omega


@pytest.mark.parametrize("n, divisible, cls", [
    (6, True, "even-perfect"),
    (28, False, "the-exception-28"),
    (496, True, "even-perfect"),
    (8128, True, "even-perfect"),
    (56, False, "non-dividing"),
    (14, False, "non-dividing"),
])
def test_classify_examples(n, divisible, cls):
    v = classify_sigma3(n)
    assert v.divisible is divisible
    assert v.classification == cls


def test_classify_shapes():
    assert classify_sigma3(6).shape == "semiprime-distinct"
    assert classify_sigma3(496).shape == "two-power-times-prime"
    assert classify_sigma3(30).shape == "other"
    assert classify_sigma3(9 * 5).shape == "other"


def test_classify_domain():
    with pytest.raises(DomainError):
        classify_sigma3(1)


def test_classify_other_dividing():
    # n | sigma_3(n) outside the two-prime shapes
    n = next(n for n in range(2, 10**5) if sigma(3, n) % n == 0 and len(factorize(n).factors) >= 3)
    assert classify_sigma3(n).classification == "other-dividing"


def test_even_perfect_identity():
    for p in (2, 3, 5, 7, 13):
        n = 2 ** (p - 1) * (2**p - 1)
        assert is_even_perfect(n)
        assert classify_sigma3(n).divisible is (p != 3)
        if p >= 5:
            # closed form: sigma_3(n) = 2 n (4^p + 2^p + 1) / 7 (m^2 - m + 1), m = 2^p - 1
            m = 2**p - 1
            assert (2 ** (2 * p) + 2**p + 1) % 7 == 0
            assert sigma(3, n) == 2 * n * (2 ** (2 * p) + 2**p + 1) // 7 * (m * m - m + 1)


def test_even_perfect_numbers():
    assert even_perfect_numbers(10**8) == [6, 28, 496, 8128, 33550336]
    assert not is_even_perfect(12)
    assert not is_even_perfect(2 ** 10 * (2**11 - 1))  # 2^11 - 1 = 23 * 89


def test_scan_semiprimes_examples():
    assert scan_semiprimes(10**6) == [6]
    assert scan_semiprimes(5) == []
    assert scan_semiprimes(6) == [6]


def test_scan_semiprimes_vs_oracle(sigma3_oracle):
    s, omega, big_omega = sigma3_oracle
    expected = [n for n in range(2, ORACLE_LIMIT + 1)
                if omega[n] == 2 and big_omega[n] == 2 and s[n] % n == 0]
    assert scan_semiprimes(ORACLE_LIMIT) == expected


def test_scan_two_power_times_prime_examples():
    assert [v.n for v in scan_two_power_times_prime(10**4)] == [6, 496, 8128]
    assert [v.n for v in scan_two_power_times_prime(100)] == [6]
    assert all(v.classification == "even-perfect" for v in scan_two_power_times_prime(10**4))


def test_scan_two_power_times_prime_vs_oracle(sigma3_oracle):
    s, omega, _ = sigma3_oracle
    expected = []
    for n in range(2, ORACLE_LIMIT + 1, 2):
        odd = n
        while odd % 2 == 0:
            odd //= 2
        if odd > 1 and omega[n] == 2 and omega[odd] == 1 and odd == factorize(odd).factors[0][0]:
            if s[n] % n == 0:
                expected.append(n)
    assert [v.n for v in scan_two_power_times_prime(ORACLE_LIMIT)] == expected


def test_scan_two_power_times_prime_1e8():
    out = scan_two_power_times_prime(10**8)
    assert [v.n for v in out] == [6, 496, 8128, 33550336]


def test_conjecture_scan_vs_oracle(sigma3_oracle):
    s, omega, big_omega = sigma3_oracle
    rep = conjecture_scan(ORACLE_LIMIT)
    assert rep.dividing == [n for n in range(2, ORACLE_LIMIT + 1) if omega[n] == 2 and s[n] % n == 0]
    rep_m = conjecture_scan(ORACLE_LIMIT, count="multiplicity")
    assert rep_m.dividing == [n for n in range(2, ORACLE_LIMIT + 1)
                              if big_omega[n] == 2 and s[n] % n == 0]


def test_conjecture_scan_examples():
    rep = conjecture_scan(30)
    assert rep.counterexamples == []
    assert rep.dividing == [6]
    assert rep.perfect_checked == [(6, True), (28, False)]
    assert conjecture_scan(5).counterexamples == []


def test_conjecture_scan_reports_counterexamples_as_data(monkeypatch):
    # pretend 6 were not perfect: the scan must report it, not raise
    import fibperfect.sigma3_div as mod
    monkeypatch.setattr(mod, "is_even_perfect", lambda n: n != 6 and n in (28, 496, 8128))
    rep = mod.conjecture_scan(100)
    assert [c["n"] for c in rep.counterexamples] == ["6"]


def test_conjecture_scan_rejects_bad_count():
    with pytest.raises(DomainError):
        conjecture_scan(100, count="both")


def test_prime_pair_solutions():
    assert lemma6_solutions(10**4) == [(2, 3)]
    assert lemma6_solutions(2) == []
    assert lemma6_solutions(3) == [(2, 3)]


def test_xy_minus_one_search():
    out = lemma7_search(10**3, 10**3)
    assert all(q == 1 for _, _, q in out)
    assert (1, 2, 1) in out
    assert lemma7_search(1, 2) == [(1, 2, 1)]
    assert lemma7_search(0, 10) == []


def test_xy_minus_one_vs_plain_loop():
    plain = [(x, y, (x * x - x + 1) // (x * y - 1))
             for x in range(1, 121) for y in range(2, 121)
             if (x * x - x + 1) % (x * y - 1) == 0]
    assert lemma7_search(120, 120) == plain


def test_mutual_divisibility_search():
    assert lemma8_search(2000) == [(1, 1)]
    assert lemma8_search(1) == [(1, 1)]
    assert lemma8_search(0) == []


def test_mutual_divisibility_vs_plain_loop():
    plain = [(x, y) for x in range(1, 151) for y in range(1, x + 1)
             if (y * y - y + 1) % x == 0 and (x * x - x + 1) % y == 0]
    assert lemma8_search(150) == plain
