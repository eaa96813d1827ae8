import math
from collections import defaultdict

import pytest

from services.arith import (
    Bipartition,
    bipartition_for,
    distinct_prime_count,
    enumerate_bipartitions,
    extended_gcd,
    factorize,
    is_prime,
    is_square_free,
    mod_inverse,
    radical_rescale,
    solve_st,
)
from services.errors import InvalidDimensionError, NotCoprimeError


def coprime_divisor_pairs(m):
    """Exhaustive scan of (d, m/d) with gcd 1, mirrored pairs dropped"""
    return [(d, m // d) for d in range(1, m + 1) if m % d == 0 and math.gcd(d, m // d) == 1 and d <= m // d]


def trial_primes(m):
    return [p for p in range(2, m + 1) if m % p == 0 and all(p % q for q in range(2, math.isqrt(p) + 1))]


@pytest.mark.parametrize(
    ["m", "factors"],
    (
        (12, ((2, 2), (3, 1))),
        (1, ()),
        (360, ((2, 3), (3, 2), (5, 1))),
        (97, ((97, 1),)),
        (2 ** 31, ((2, 31),)),
    ),
)
def test_factorize_examples(m, factors):
    f = factorize(m)
    assert f.factors == factors
    assert f.n == len(factors)
    assert math.prod(p ** e for p, e in f.factors) == m


@pytest.mark.parametrize("bad", [0, -5, 2 ** 31 + 1, 2.5, True, "12"])
def test_factorize_rejects_invalid_input(bad):
    with pytest.raises(InvalidDimensionError):
        factorize(bad)


def test_factorize_primes_increasing_and_prime():
    for m in range(2, 1001):
        f = factorize(m)
        assert list(f.primes) == trial_primes(m)
        assert all(is_prime(p) for p in f.primes)


@pytest.mark.parametrize(
    ["m", "expected"],
    (
        (12, [(1, 12), (3, 4)]),
        (7, [(1, 7)]),
        (30, [(1, 30), (2, 15), (3, 10), (5, 6)]),
        (1, [(1, 1)]),
        (360, [(1, 360), (5, 72), (8, 45), (9, 40)]),
    ),
)
def test_enumerate_bipartitions_examples(m, expected):
    pairs = enumerate_bipartitions(factorize(m))
    assert [(b.m_a, b.m_atilde) for b in pairs] == expected


def test_bipartition_count_is_power_of_two():
    for m in range(2, 1001):
        f = factorize(m)
        pairs = enumerate_bipartitions(f)
        assert len(pairs) == 2 ** (f.n - 1) == f.pair_count()
        assert [(b.m_a, b.m_atilde) for b in pairs] == coprime_divisor_pairs(m)


def test_bipartitions_are_canonical_and_duplicate_free():
    for m in range(2, 300):
        pairs = enumerate_bipartitions(factorize(m))
        keys = [(b.m_a, b.m_atilde) for b in pairs]
        assert len(set(keys)) == len(keys)
        assert pairs[0].m_a == 1 and pairs[0].kind == 'fourier'
        for b in pairs:
            assert b.m_a < b.m_atilde
            assert (b.m_atilde, b.m_a) not in keys
            assert b.m_a * b.m_atilde == m
            assert math.gcd(b.m_a, b.m_atilde) == 1


def test_subset_mask_names_the_primes_of_m_a():
    f = factorize(360)
    for b in enumerate_bipartitions(f):
        m_a = math.prod(p ** e for i, (p, e) in enumerate(f.factors) if b.subset_mask >> i & 1)
        assert m_a == b.m_a


def test_bipartition_kind_and_label():
    b = bipartition_for(12, 3)
    assert b.label == 'a=3|12'
    assert b.kind == 'prime'
    assert bipartition_for(30, 6).kind == 'composite'
    assert bipartition_for(30, 1).kind == 'fourier'


def test_bipartition_for_keeps_orientation():
    b = bipartition_for(12, 4)
    assert (b.m_a, b.m_atilde) == (4, 3)
    assert not b.is_canonical()
    mirror = b.mirrored()
    assert (mirror.m_a, mirror.m_atilde) == (3, 4)
    assert mirror.subset_mask == bipartition_for(12, 3).subset_mask


@pytest.mark.parametrize(["m", "m_a"], ((12, 5), (12, 2), (12, 6), (12, 0), (30, -3)))
def test_bipartition_for_rejects(m, m_a):
    with pytest.raises((InvalidDimensionError, NotCoprimeError)):
        bipartition_for(m, m_a)


@pytest.mark.parametrize(["a", "b"], ((240, 46), (17, 5), (0, 7), (7, 0), (-12, 18), (1, 1)))
def test_extended_gcd(a, b):
    g, x, y = extended_gcd(a, b)
    assert g == math.gcd(a, b)
    assert a * x + b * y == g


def test_mod_inverse():
    assert mod_inverse(2, 3) == 2
    assert mod_inverse(3, 4) == 3
    assert mod_inverse(5, 1) == 0
    with pytest.raises(NotCoprimeError):
        mod_inverse(4, 6)


def test_solve_st_trivial_solution():
    sol = solve_st(Bipartition(2, 3), 0)
    assert (sol.s, sol.t) == (3, 2)


@pytest.mark.parametrize("m", [2, 6, 7, 12])
def test_solve_st_fourier_pair(m):
    b = Bipartition(1, m)
    for r in range(m):
        sol = solve_st(b, r)
        assert sol.t == 1
        assert sol.s == ((-r) % m or m)


def test_solve_st_matches_scan_for_m_12():
    b = Bipartition(3, 4)
    for r in range(12):
        hits = [(s, t) for s in range(1, 5) for t in range(1, 4) if (t * 4 - s * 3 - r) % 12 == 0]
        assert len(hits) == 1
        sol = solve_st(b, r)
        assert (sol.s, sol.t) == hits[0]


def test_solve_st_unique_for_all_small_m():
    for m in range(2, 201):
        for b in enumerate_bipartitions(factorize(m)):
            hits = defaultdict(list)
            for s in range(1, b.m_atilde + 1):
                for t in range(1, b.m_a + 1):
                    hits[(t * b.m_atilde - s * b.m_a) % m].append((s, t))
            for r in range(m):
                assert len(hits[r]) == 1
                sol = solve_st(b, r)
                assert 1 <= sol.s <= b.m_atilde and 1 <= sol.t <= b.m_a
                assert (sol.t * b.m_atilde - sol.s * b.m_a - r) % m == 0
                assert (sol.s, sol.t) == hits[r][0]


def test_solve_st_accepts_negative_residues():
    b = Bipartition(3, 4)
    assert solve_st(b, -1)[1:] == solve_st(b, 11)[1:]


def test_solve_st_rejects_non_coprime():
    with pytest.raises(NotCoprimeError):
        solve_st(Bipartition(2, 6), 1)


@pytest.mark.parametrize(["m", "expected"], ((360, (30, 12)), (30, (30, 1)), (8, (2, 4)), (1, (1, 1))))
def test_radical_rescale_examples(m, expected):
    assert tuple(radical_rescale(factorize(m))) == expected


def test_radical_rescale_preserves_prime_count():
    for m in range(2, 1001):
        f = factorize(m)
        m_bar, c_mult = radical_rescale(f)
        assert m_bar * c_mult == m
        assert m % m_bar == 0
        assert is_square_free(m_bar)
        assert distinct_prime_count(m_bar) == f.n
        assert len(enumerate_bipartitions(factorize(m_bar))) == len(enumerate_bipartitions(f))


@pytest.mark.parametrize(
    ["n", "expected"],
    (
        (2, True),
        (9, False),
        (2 ** 31 - 1, True),
        (2 ** 31 + 1, False),
        (2 ** 31 + 11, True),
        (2 ** 32 + 15, True),
        (2 ** 32 + 17, False),
        (1, False),
        (-7, False),
        (7.0, False),
        (True, False),
    ),
)
def test_is_prime_beyond_dimension_limit(n, expected):
    assert is_prime(n) is expected
