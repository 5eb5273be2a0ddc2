import math
from fractions import Fraction

import pytest

from binomcensus.census import (
    CensusInput,
    CongruenceCase,
    DegenerateCensusError,
    asymptotic_estimate,
    census_report,
    enumerate_eligible,
    exact_sum,
    is_prime_power,
    log_power_bound,
    naive_bounds,
    normalized_ratio,
    nq,
    ratio_limit,
    refined_upper_bound,
    stratum_closed_forms,
    stratum_sums,
)
from binomcensus.fields import oracle_binomial_count

from conftest import PRIME_POWERS_49


def smallest_prime_factor_sieve(limit):
    spf = list(range(limit + 1))
    for i in range(2, int(limit**0.5) + 1):
        if spf[i] == i:
            for j in range(i * i, limit + 1, i):
                if spf[j] == j:
                    spf[j] = i
    return spf


def eligible_by_direct_filter(q, limit):
    # rad_4(t) | q-1 checked against a smallest-prime-factor sieve,
    # independent of the lattice enumeration
    spf = smallest_prime_factor_sieve(limit)
    out = []
    for t in range(1, limit + 1):
        m = t
        r = 1
        while m > 1:
            p = spf[m]
            r *= p
            while m % p == 0:
                m //= p
        r4 = 2 * r if t % 4 == 0 else r
        if (q - 1) % r4 == 0:
            out.append(t)
    return out


def test_is_prime_power():
    assert is_prime_power(49) and is_prime_power(2) and is_prime_power(32)
    assert not is_prime_power(6) and not is_prime_power(1) and not is_prime_power(100)


def test_census_input_cases():
    i13 = CensusInput.from_q(13, 100)
    assert i13.case is CongruenceCase.NOT_THREE_MOD_FOUR
    assert i13.primes == (2, 3)

    i31 = CensusInput.from_q(31, 100)
    assert i31.case is CongruenceCase.THREE_MOD_FOUR
    assert i31.primes == (3, 5)  # odd primes of 30

    assert CensusInput.from_q(2, 10).primes == ()
    i3 = CensusInput.from_q(3, 10)
    assert i3.case is CongruenceCase.THREE_MOD_FOUR and i3.primes == ()

    with pytest.raises(ValueError):
        CensusInput.from_q(6, 10)
    with pytest.raises(ValueError):
        CensusInput.from_q(13, 0)


def test_nq_examples():
    for q in (2, 3, 4, 5, 7, 9, 13):
        assert nq(q, 1) == q - 1
    assert nq(7, 2) == 3
    assert nq(7, 4) == 0  # rad4(4) = 4 does not divide 6
    assert nq(13, 2) == 6
    with pytest.raises(ValueError):
        nq(6, 2)
    with pytest.raises(ValueError):
        nq(7, 0)


@pytest.mark.parametrize("q,t", [(7, 2), (7, 3), (7, 6), (13, 2), (13, 4), (9, 8), (4, 3), (5, 4)])
def test_nq_matches_oracle(q, t, field_for):
    assert nq(q, t) == oracle_binomial_count(field_for(q), t)


def test_enumerate_examples():
    assert list(enumerate_eligible(CensusInput.from_q(4, 10))) == [(1, 3), (3, 2), (9, 2)]
    assert list(enumerate_eligible(CensusInput.from_q(3, 10))) == [(1, 2), (2, 1)]
    assert list(enumerate_eligible(CensusInput.from_q(2, 100))) == [(1, 1)]


@pytest.mark.parametrize("q", [4, 7, 11, 13, 31])
def test_enumerate_matches_direct_filter(q):
    limit = 10**4
    items = list(enumerate_eligible(CensusInput.from_q(q, limit)))
    ts = [t for t, _ in items]
    assert ts == sorted(ts)
    assert len(set(ts)) == len(ts)
    assert ts == eligible_by_direct_filter(q, limit)
    for t, n in items:
        assert n == nq(q, t)
        assert n > 0


@pytest.mark.parametrize("q", [3, 7, 11, 31])
def test_case_two_never_yields_multiples_of_four(q):
    for t, _ in enumerate_eligible(CensusInput.from_q(q, 500)):
        assert t % 4 != 0


def test_exact_sum_micro():
    assert exact_sum(CensusInput.from_q(4, 10)) == 7
    assert exact_sum(CensusInput.from_q(3, 10)) == 3
    for limit in (1, 7, 100, 10**6):
        assert exact_sum(CensusInput.from_q(2, limit)) == 1
    assert exact_sum(CensusInput.from_q(7, 100)) == 31  # hand-checkable census


def test_stratum_example_t_equal_one():
    assert stratum_sums(CensusInput.from_q(13, 1)) == (0, 0, 1)


def test_stratum_worked_example():
    inp = CensusInput.from_q(13, 6)
    a, b, c = stratum_sums(inp)
    assert (a, b, c) == (Fraction(1, 3), Fraction(5, 3), Fraction(1))
    assert exact_sum(inp) == 36
    assert 12 * (a + b + c) == 36
    # per-degree cross-check: t in {1,2,3,4,6} -> 12, 6, 8, 6, 4
    assert dict(enumerate_eligible(inp)) == {1: 12, 2: 6, 3: 8, 4: 6, 6: 4}


def test_stratum_a_closed_form_is_ratio_times_count():
    # every all-positive term equals phi(q-1)/(q-1)
    from binomcensus.lattice import strata

    inp = CensusInput.from_q(13, 1000)
    a, _, _ = stratum_sums(inp)
    assert a == Fraction(4, 12) * strata(inp.primes, 1000).plus


STRATUM_GRID = [(5, 50), (9, 1000), (13, 100000), (25, 1000), (31, 100000), (61, 1000), (7, 97), (3, 64)]


@pytest.mark.parametrize("q,limit", STRATUM_GRID)
def test_stratum_identity_grid(q, limit):
    inp = CensusInput.from_q(q, limit)
    a, b, c = stratum_sums(inp)
    total = (q - 1) * (a + b + c)
    assert total.denominator == 1
    assert total == exact_sum(inp)


@pytest.mark.parametrize("q,limit", STRATUM_GRID)
def test_closed_forms_equal_strata_grid(q, limit):
    inp = CensusInput.from_q(q, limit)
    a, b, _ = stratum_sums(inp)
    rhs_a, rhs_b = stratum_closed_forms(inp)
    assert rhs_a == a
    assert rhs_b == b


def test_closed_forms_just_above_radical():
    # only the all-ones vector fits: rhsA = phi(q-1)/(q-1)
    inp = CensusInput.from_q(13, 7)  # rad(12) = 6
    rhs_a, _ = stratum_closed_forms(inp)
    assert rhs_a == Fraction(4, 12)


def test_asymptotic_estimate_q4_closed_form():
    # s = 1, p = 3: estimate = (2/log 3) log T + 2
    for limit in (10**3, 10**6, 10**9, 10**12):
        est = asymptotic_estimate(CensusInput.from_q(4, limit))
        assert est == pytest.approx(2 * math.log(limit) / math.log(3) + 2)


def test_asymptotic_estimate_case_two_closed_form():
    # q = 7: q-1 = 2*3, factor 3*phi(6) = 6 over log 3, correction -log(4)/3.
    # The doubled-degree half contributes with totient ratio phi(3)/3, which
    # is twice phi(6)/6; hence the full factor 6/log3, verified against the
    # exact census below.
    for limit in (10**3, 10**6):
        est = asymptotic_estimate(CensusInput.from_q(7, limit))
        want = (6 / math.log(3)) * (
            math.log(limit) + 0.5 * (2 * math.log(3) - math.log(4) / 3)
        )
        assert est == pytest.approx(want)
    inp = CensusInput.from_q(7, 10**6)
    assert abs(asymptotic_estimate(inp) - exact_sum(inp)) / exact_sum(inp) < 0.02


def test_asymptotic_estimate_symmetric_in_primes():
    inp = CensusInput.from_q(61, 10**6)
    shuffled = CensusInput(
        inp.q, inp.max_t, inp.q_minus_1, inp.case, tuple(reversed(inp.primes))
    )
    assert asymptotic_estimate(inp) == pytest.approx(asymptotic_estimate(shuffled))


def test_estimators_refuse_degenerate():
    for q in (2, 3):
        inp = CensusInput.from_q(q, 1000)
        assert exact_sum(inp) in (1, 3)  # the census itself still works
        with pytest.raises(DegenerateCensusError):
            asymptotic_estimate(inp)
        with pytest.raises(DegenerateCensusError):
            normalized_ratio(inp)
        with pytest.raises(DegenerateCensusError):
            ratio_limit(inp)


def test_normalized_ratio_formula_and_limits():
    inp = CensusInput.from_q(13, 10**6)
    s = len(inp.primes)
    logs = math.prod(math.log(p) for p in inp.primes)
    want = math.factorial(s) * logs / 4 * exact_sum(inp) / math.log(10**6) ** s
    assert normalized_ratio(inp) == pytest.approx(want)
    # doubling the totient in the normalization halves the ratio
    assert normalized_ratio(inp) / 2 == pytest.approx(
        math.factorial(s) * logs / 8 * exact_sum(inp) / math.log(10**6) ** s
    )
    assert ratio_limit(inp) == 1.0
    assert ratio_limit(CensusInput.from_q(7, 100)) == 3.0


def test_refined_upper_bound():
    inp = CensusInput.from_q(13, 100)
    rb = refined_upper_bound(inp)
    # margin is reported, not asserted; internal consistency only
    assert rb.bound == pytest.approx(
        4
        / (2 * math.log(2) * math.log(3))
        * math.log(100) ** 2
        * (
            1
            + 2 * rb.m1 * (math.log(6) / math.log(100))
            + 2 * rb.m2 * (math.log(6) / math.log(100)) ** 2
        )
    )
    # R -> 0: the bound collapses to the main term
    big = CensusInput.from_q(13, 10**300)
    rb_big = refined_upper_bound(big)
    main = 4 / (2 * math.log(2) * math.log(3)) * math.log(10.0**300) ** 2
    assert rb_big.bound / main == pytest.approx(1.0, abs=0.02)

    with pytest.raises(ValueError):
        refined_upper_bound(CensusInput.from_q(17, 100))  # s = 1
    with pytest.raises(ValueError):
        refined_upper_bound(CensusInput.from_q(7, 100))  # q = 3 (mod 4)
    with pytest.raises(ValueError):
        refined_upper_bound(CensusInput.from_q(13, 6))  # T <= rad(q-1)


def test_naive_bounds_examples():
    assert naive_bounds(CensusInput.from_q(4, 10)) == (6, 9)
    assert naive_bounds(CensusInput.from_q(13, 6)) == (20, 60)
    inp2 = CensusInput.from_q(2, 50)
    assert naive_bounds(inp2) == (1, 1) and exact_sum(inp2) == 1


@pytest.mark.parametrize("q", PRIME_POWERS_49)
def test_naive_bounds_sandwich(q):
    for limit in (10, 1000, 10**6):
        inp = CensusInput.from_q(q, limit)
        lower, upper = naive_bounds(inp)
        assert lower <= exact_sum(inp) <= upper


def test_log_power_bound_arithmetic():
    b = log_power_bound(13, 10**6, exponent=2.0)
    assert b.bound == pytest.approx(12 * 10**6 / math.log(10**6) ** 2)
    assert not b.valid
    assert "undefined" in b.reason  # log log 13 < 1 kills the iterated log


def test_log_power_bound_dominates_naive_upper():
    # exponent 1: T/log T dwarfs the polylog-sized census for large T
    q, limit = 13, 10**6
    b = log_power_bound(q, limit, exponent=1.0)
    _, upper = naive_bounds(CensusInput.from_q(q, limit))
    assert b.bound > upper


def test_log_power_bound_threshold_path():
    # q large enough that all four iterated logs exist; threshold astronomic
    b = log_power_bound(2**22, 10**6, exponent=1.0, eps=0.5)
    assert b.threshold is not None and b.threshold > 10**100
    assert not b.valid and "threshold" in b.reason


def test_log_power_bound_rejects():
    with pytest.raises(ValueError):
        log_power_bound(4, 100)
    with pytest.raises(ValueError):
        log_power_bound(13, 2)


def test_exact_sum_is_integer_identity():
    # (q-1)(A+B+C) lands exactly on the integer census
    for q, limit in ((9, 10**6), (29, 10**4), (31, 10**6)):
        inp = CensusInput.from_q(q, limit)
        a, b, c = stratum_sums(inp)
        assert (q - 1) * (a + b + c) == exact_sum(inp)


def test_census_report_assembly():
    inp = CensusInput.from_q(13, 100)
    rep = census_report(inp, with_strata=True, with_bounds=True, with_asymptotic=True)
    assert rep.exact == exact_sum(inp)
    a, b, c = rep.strata
    assert (rep.q - 1) * (a + b + c) == rep.exact
    assert rep.closed_forms == (a, b)
    assert rep.bounds.naive_lower <= rep.exact <= rep.bounds.naive_upper
    assert rep.bounds.margins["naive_upper"] == rep.bounds.naive_upper - rep.exact
    assert rep.bounds.refined is not None
    assert rep.limit == 1.0

    rep2 = census_report(CensusInput.from_q(2, 50), with_asymptotic=True)
    assert rep2.exact == 1
    assert rep2.asymptotic is None and "q = 2" in rep2.asymptotic_note
