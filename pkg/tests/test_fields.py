import itertools

import pytest

from conftest import PRIME_POWERS_64

from binomcensus.arith import factor
from binomcensus.fields import (
    DEFAULT_SCAN_DEGREE_CEILING,
    build_field,
    criterion_irreducible,
    kernel_backend,
    multiplicative_order,
    oracle_binomial_count,
    oracle_binomial_scan,
    rabin_irreducible,
)


def first_rootless_monic_quadratic(p):
    # independent lex-order oracle for degree-2 modulus selection
    for b in range(p):
        for c in range(p):
            if all((x * x + b * x + c) % p for x in range(p)):
                return (c, b, 1)
    raise AssertionError


def test_build_field_prime():
    f7 = build_field(7, 1)
    assert f7.q == 7
    assert f7.modulus == (0, 1)


def test_build_field_f9_modulus_is_lex_smallest():
    f9 = build_field(3, 2)
    assert f9.modulus == first_rootless_monic_quadratic(3) == (1, 0, 1)


def test_build_field_f16():
    f16 = build_field(2, 4)
    # x^4 + x + 1: first monic irreducible quartic over F_2 in lex order
    assert f16.modulus == (1, 1, 0, 0, 1)


def test_build_field_deterministic():
    assert build_field(5, 3).modulus == build_field(5, 3).modulus


def test_build_field_rejects():
    with pytest.raises(ValueError):
        build_field(6, 1)  # not prime
    with pytest.raises(ValueError):
        build_field(2, 17)  # over the 2^16 ceiling
    with pytest.raises(ValueError):
        build_field(2, 0)
    build_field(2, 17, ceiling=1 << 20)  # explicit ceiling override


def test_element_arithmetic_f7():
    f7 = build_field(7, 1)
    assert f7.mul((3,), (5,)) == (1,)
    assert f7.add((3,), (5,)) == (1,)
    assert f7.sub((3,), (5,)) == (5,)


@pytest.mark.parametrize("q", [7, 9, 16, 25, 27])
def test_inverse_law(q, field_for):
    ctx = field_for(q)
    for a in ctx.nonzero_elements():
        assert ctx.mul(a, ctx.inv(a)) == ctx.one


def test_inverse_of_zero_raises(field_for):
    with pytest.raises(ZeroDivisionError):
        field_for(9).inv((0, 0))


def test_unit_group_exponent_f9(field_for):
    f9 = field_for(9)
    for a in f9.nonzero_elements():
        assert f9.pow(a, 8) == f9.one


def test_element_validation(field_for):
    f9 = field_for(9)
    assert f9.element([1, 2]) == (1, 2)
    with pytest.raises(ValueError):
        f9.element([1])
    with pytest.raises(ValueError):
        f9.element([3, 0])


def test_code_roundtrip(field_for):
    ctx = field_for(27)
    for code in range(27):
        assert ctx.to_code(ctx.from_code(code)) == code


def brute_order(ctx, a):
    power = a
    k = 1
    while power != ctx.one:
        power = ctx.mul(power, a)
        k += 1
    return k


def test_multiplicative_order_examples(field_for):
    f7 = field_for(7)
    assert multiplicative_order(f7, (1,)).order == 1
    assert multiplicative_order(f7, (3,)).order == 6
    assert multiplicative_order(f7, (2,)).order == 3


@pytest.mark.parametrize("q", PRIME_POWERS_64)
def test_order_record_invariants_exhaustive(q, field_for):
    ctx = field_for(q)
    q1 = factor(q - 1)
    for a in ctx.nonzero_elements():
        rec = multiplicative_order(ctx, a, q1)
        assert (q - 1) % rec.order == 0
        assert ctx.pow(a, rec.order) == ctx.one
        for ell, _ in factor(rec.order).factors:
            assert ctx.pow(a, rec.order // ell) != ctx.one
        assert rec.order == brute_order(ctx, a)


@pytest.mark.parametrize("p,e", [(2, 13), (3, 7), (5, 5), (65521, 1), (2, 16)])
def test_order_record_invariants_sampled_large(p, e):
    ctx = build_field(p, e)
    q1 = factor(ctx.q - 1)
    # a deterministic handful of elements
    for code in (1, 2, 3, ctx.q // 2, ctx.q - 2, ctx.q - 1):
        a = ctx.from_code(code)
        rec = multiplicative_order(ctx, a, q1)
        assert ctx.pow(a, rec.order) == ctx.one
        for ell, _ in factor(rec.order).factors:
            assert ctx.pow(a, rec.order // ell) != ctx.one


def test_order_of_zero_raises(field_for):
    with pytest.raises(ValueError):
        multiplicative_order(field_for(7), (0,))


def test_criterion_examples():
    q1 = factor(6)
    assert criterion_irreducible(q1, 2, 6) is True
    assert criterion_irreducible(q1, 4, 6) is False  # 7 = 3 (mod 4)
    assert criterion_irreducible(q1, 4, 3) is False
    assert criterion_irreducible(q1, 2, 3) is False  # 2 does not divide 3


def test_criterion_rejects():
    with pytest.raises(ValueError):
        criterion_irreducible(factor(6), 1, 6)
    with pytest.raises(ValueError):
        criterion_irreducible(factor(6), 2, 4)  # 4 does not divide 6


def test_rabin_examples(field_for):
    f3, f7 = field_for(3), field_for(7)
    assert rabin_irreducible(f7, [(4,), (1,)])  # x - 3
    assert rabin_irreducible(f3, [(1,), (0,), (1,)])  # x^2 + 1
    assert not rabin_irreducible(f7, [(5,), (0,), (1,)])  # x^2 - 2 = (x-3)(x-4)


def test_rabin_rejects(field_for):
    f7 = field_for(7)
    with pytest.raises(ValueError):
        rabin_irreducible(f7, [(1,), (2,)])  # not monic
    with pytest.raises(ValueError):
        rabin_irreducible(f7, [(1,)])  # constant


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_rabin_matches_root_exhaustion_low_degree(p, field_for):
    # degree 2 or 3 is irreducible over F_p iff it has no root
    ctx = field_for(p)
    elems = list(ctx.elements())
    for deg in (2, 3):
        for coeffs in itertools.product(range(p), repeat=deg):
            f = [(c,) for c in coeffs] + [(1,)]

            def value_at(x):
                acc = ctx.one
                val = ctx.zero
                for c in f:
                    val = ctx.add(val, ctx.mul(c, acc))
                    acc = ctx.mul(acc, x)
                return val

            rootless = all(value_at(x) != ctx.zero for x in elems)
            assert rabin_irreducible(ctx, f) == rootless


def test_oracle_examples(field_for):
    f7, f4 = field_for(7), field_for(4)
    squares = {f7.mul(a, a) for a in f7.nonzero_elements()}
    assert oracle_binomial_count(f7, 2) == 7 - 1 - len(squares) == 3
    assert oracle_binomial_count(f7, 4) == 0
    assert oracle_binomial_count(f4, 3) == 2
    assert oracle_binomial_count(f7, 1) == 6


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9])
def test_scan_backends_agree(q, field_for):
    ctx = field_for(q)
    for t in range(1, 21):
        ref = oracle_binomial_scan(ctx, t, backend="reference")
        pure = oracle_binomial_scan(ctx, t, backend="pure")
        assert pure == ref, (q, t)
        if kernel_backend() == "compiled":
            assert oracle_binomial_scan(ctx, t, backend="compiled") == ref, (q, t)


def test_scan_partition_independent(field_for):
    # censuses may split the a-range; any partition sums to the same count
    ctx = field_for(13)
    mask = oracle_binomial_scan(ctx, 6)
    count = oracle_binomial_count(ctx, 6)
    assert sum(mask[:5]) + sum(mask[5:]) == count
    assert sum(mask[i] for i in reversed(range(13))) == count


@pytest.mark.parametrize("q", [5, 7, 9, 13])
def test_criterion_agrees_with_oracle_small_grid(q, field_for):
    ctx = field_for(q)
    q1 = factor(q - 1)
    orders = {
        code: multiplicative_order(ctx, ctx.from_code(code), q1).order
        for code in range(1, q)
    }
    for t in range(2, 31):
        mask = oracle_binomial_scan(ctx, t)
        for code in range(1, q):
            assert criterion_irreducible(q1, t, orders[code]) == bool(mask[code]), (q, t, code)


def test_scan_ceilings(field_for, monkeypatch):
    ctx = field_for(49)
    with pytest.raises(ValueError):
        oracle_binomial_scan(ctx, 2, q_ceiling=32)
    with pytest.raises(ValueError):
        oracle_binomial_scan(ctx, DEFAULT_SCAN_DEGREE_CEILING + 1)
    with pytest.raises(ValueError):
        oracle_binomial_scan(ctx, 0)
    monkeypatch.setenv("BINOMCENSUS_ORACLE_CEILING", "32")
    with pytest.raises(ValueError):
        oracle_binomial_scan(ctx, 2)
    monkeypatch.setenv("BINOMCENSUS_ORACLE_CEILING", "64")
    assert oracle_binomial_scan(ctx, 2)  # allowed again
