import math
from collections import Counter
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from symplectic_euler.exactalg import Q, QPoly, TruncSeries
from symplectic_euler.partitions import (
    Partition,
    class_size,
    pair_multisets,
    partition_count,
    partitions_of,
    sign_functions,
    t2_eps,
    t2_eps_closed,
    t2_eps_partition_sum,
    ts_transform,
    ts_transform_product,
)


@pytest.mark.parametrize("n", range(0, 16))
def test_partition_enumeration(n):
    parts = list(partitions_of(n))
    assert len(parts) == sympy.partition(n) == partition_count(n)
    assert len({p.parts for p in parts}) == len(parts)
    assert all(sum(p.parts) == n for p in parts)
    # reverse lexicographic order of part sequences
    seqs = [p.parts for p in parts]
    assert seqs == sorted(seqs, reverse=True)


@pytest.mark.parametrize("n", range(1, 10))
def test_class_sizes_sum_to_factorial(n):
    assert sum(class_size(lam) for lam in partitions_of(n)) == math.factorial(n)


def test_class_size_brute_force():
    import itertools

    n = 5
    counts = Counter()
    for perm in itertools.permutations(range(n)):
        seen, cycle = set(), []
        for i in range(n):
            if i in seen:
                continue
            length, j = 0, i
            while j not in seen:
                seen.add(j)
                j = perm[j]
                length += 1
            cycle.append(length)
        counts[tuple(sorted(cycle, reverse=True))] += 1
    for lam in partitions_of(n):
        assert class_size(lam) == counts[lam.parts]


def test_partition_views():
    lam = Partition.from_parts([3, 1, 1, 2, 1])
    assert lam.parts == (3, 2, 1, 1, 1)
    assert lam.base() == (1, 2, 3)
    assert lam.mult(1) == 3 and lam.mult(4) == 0
    assert lam.multiplicities().parts == (3, 1, 1)
    assert lam.length == 5 and lam.n == 8
    assert str(lam) == "{1^3,2,3}"
    assert len(list(sign_functions(lam))) == 2 ** 5
    with pytest.raises(ValueError):
        Partition(((2, 1), (1, 1)))


def _coefficients_of_product(N):
    # prod over pairs (m, d) of 1/(1 - x^{md}), as plain integer lists
    out = [1] + [0] * N
    for m in range(1, N + 1):
        for d in range(1, N // m + 1):
            w = m * d
            for n in range(w, N + 1):
                out[n] += out[n - w]
    return out


def test_pair_multiset_counts():
    expected = _coefficients_of_product(10)
    for n in range(11):
        ms = list(pair_multisets(n))
        assert len(ms) == expected[n]
        assert len({m.items for m in ms}) == len(ms)
        assert all(sum(m * d * e for (m, d), e in ms_.items) == n for ms_ in ms)


S_SEQS = st.lists(st.integers(0, 4), min_size=6, max_size=6)
A_SEQS = st.lists(st.integers(-3, 3), min_size=6, max_size=6)


@settings(max_examples=25, deadline=None)
@given(S_SEQS, A_SEQS)
def test_transform_agrees_with_product_form(S, a):
    N = 5
    A = TruncSeries([1] + a[:N], N, True)
    S_fn = lambda d: S[d - 1]
    # with constant coefficients, a(m, d) does not depend on d
    got = ts_transform(S_fn, lambda m, d: A[m], N)
    ref = ts_transform_product(lambda d: QPoly([S[d - 1]]), A, N)
    assert got == ref


def test_transform_with_q_dependent_coefficients():
    N = 5
    A = TruncSeries([1, Q, Q ** 2 - 1, -Q, 2, Q ** 3], N, True)
    S = lambda d: (Q ** d - Q) / d + 1
    got = ts_transform(S, lambda m, d: A[m].compose_power(d), N)
    assert got == ts_transform_product(S, A, N)


def test_transform_numeric_matches_symbolic():
    N = 4
    A = TruncSeries([1, Q, Q ** 2, Q + 1, 1], N, True)
    S = lambda d: Q ** d
    sym = ts_transform(S, lambda m, d: A[m].compose_power(d), N)
    num = ts_transform(lambda d: 3 ** d, lambda m, d: A[m](3 ** d), N, symbolic=False)
    assert sym.at_q(3) == num


def test_t2_values():
    expected = [2 * Q, 2 * Q ** 2, Q ** 3 * Fraction(4, 3) + Q * Fraction(2, 3),
                Q ** 4 * Fraction(2, 3) + Q ** 2 * Fraction(4, 3)]
    for n, e in enumerate(expected, start=1):
        assert t2_eps(Q, n, 1) == e
        assert t2_eps(Q, n, -1) == e * (-1) ** n


@given(st.integers(-5, 9), st.integers(1, 7), st.sampled_from([1, -1]))
def test_t2_forms_agree(m, n, eps):
    m = Fraction(m)
    assert t2_eps_partition_sum(m, n, eps) == t2_eps_closed(m, n, eps)


def test_t2_rejects_bad_input():
    with pytest.raises(ValueError):
        t2_eps(Q, 0, 1)
    with pytest.raises(ValueError):
        t2_eps(Q, 2, 0)
