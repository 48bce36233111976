import math

from hypothesis import given, strategies as st

from fockmodel import multiindex as mi


def test_graded_lex_order_two_variables():
    assert mi.enumerate_upto(2, 2) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


def test_factorial_and_binomial_values():
    assert mi.factorial((2, 3)) == 12
    assert mi.binomial((3, 2), (1, 1)) == 6
    assert mi.factorial(()) == 1


def test_power_and_below():
    assert mi.power((2, 3j), (2, 1)) == 12j
    assert sorted(mi.below((1, 1))) == [(0, 0), (0, 1), (1, 0), (1, 1)]


@given(st.integers(1, 4), st.integers(0, 6))
def test_count_matches_binomial(n, d):
    basis = mi.enumerate_upto(n, d)
    assert len(basis) == mi.count_upto(n, d) == math.comb(n + d, d)
    assert len(set(basis)) == len(basis)
    assert [mi.degree(a) for a in basis] == sorted(mi.degree(a) for a in basis)


@given(st.integers(1, 3), st.integers(0, 5))
def test_index_map_inverts_enumeration(n, d):
    idx = mi.index_map(n, d)
    assert all(idx[a] == k for k, a in enumerate(mi.enumerate_upto(n, d)))


@given(st.lists(st.integers(0, 5), min_size=1, max_size=3), st.data())
def test_add_sub_round_trip(alpha, data):
    beta = tuple(data.draw(st.integers(0, a)) for a in alpha)
    assert mi.leq(beta, alpha)
    assert mi.add(mi.sub(alpha, beta), beta) == tuple(alpha)
    assert mi.binomial(alpha, beta) * mi.factorial(beta) * mi.factorial(mi.sub(alpha, beta)) == mi.factorial(alpha)
