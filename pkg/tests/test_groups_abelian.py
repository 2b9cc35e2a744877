import itertools
import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from symplectic_euler.groups import (
    AbelianGroup,
    FiniteGroup,
    abelian_groups_of_order,
    abelian_subgroups,
    epimorphism_counts,
    eulerian_phi_zpr,
    eulerian_phi_zr,
    hom_count_check,
    symplectic_group,
)
from symplectic_euler.groups.abelian import commuting_tuple_classes, commuting_tuple_count


def jordan_totient(r, n):
    out = n ** r
    for p in sympy.factorint(n):
        out = out * (p ** r - 1) // p ** r
    return out


@pytest.mark.parametrize("n", range(1, 65))
def test_number_of_abelian_groups(n):
    groups = abelian_groups_of_order(n)
    expected = math.prod(sympy.partition(e) for e in sympy.factorint(n).values())
    assert len(groups) == expected
    assert len({B.invariants for B in groups}) == len(groups)
    assert all(B.order == n for B in groups)


def test_invariant_factor_form():
    assert AbelianGroup.from_elementary_divisors([2, 4, 3]).invariants == (2, 12)
    assert AbelianGroup.from_elementary_divisors([2, 2, 2]).invariants == (2, 2, 2)
    B = AbelianGroup((2, 12))
    assert B.order == 24 and B.rank == 2 and B.primes() == [2, 3]
    assert B.sylow(2).invariants == (2, 4) and B.sylow(3).invariants == (3,)
    assert str(B) == "C2 x C12"
    with pytest.raises(ValueError):
        AbelianGroup((4, 6))
    with pytest.raises(ValueError):
        AbelianGroup((1,))


def _generates(B, tup):
    # closure of the tuple under addition, by brute force
    inv = B.invariants
    zero = tuple(0 for _ in inv)
    seen = {zero}
    frontier = [zero]
    while frontier:
        new = []
        for e in frontier:
            for g in tup:
                s = tuple((a + b) % d for a, b, d in zip(e, g, inv))
                if s not in seen:
                    seen.add(s)
                    new.append(s)
        frontier = new
    return len(seen) == B.order


@pytest.mark.parametrize("n", range(1, 17))
def test_phi_against_generating_tuples(n):
    for B in abelian_groups_of_order(n):
        elems = B.elements()
        for r in (1, 2):
            direct = sum(_generates(B, t) for t in itertools.product(elems, repeat=r))
            assert eulerian_phi_zr(B, r) == direct, (B, r)


@given(st.integers(1, 200), st.integers(1, 4))
def test_phi_of_cyclic_is_jordan_totient(n, r):
    assert eulerian_phi_zr(AbelianGroup.cyclic(n), r) == jordan_totient(r, n)


@given(st.sampled_from([(2, 4), (3,), (2, 2), (5,), (3, 9), (7,), (4,)]),
       st.sampled_from([(9,), (5,), (25,), (7,), (3, 3), (11,)]), st.integers(1, 3))
def test_phi_multiplicative_on_coprime_orders(a, b, r):
    A, B = AbelianGroup(a), AbelianGroup(b)
    if math.gcd(A.order, B.order) != 1:
        return
    divs = []
    for X in (A, B):
        for d in X.invariants:
            for p, e in sympy.factorint(d).items():
                divs.append(p ** e)
    AB = AbelianGroup.from_elementary_divisors(divs)
    assert eulerian_phi_zr(AB, r) == eulerian_phi_zr(A, r) * eulerian_phi_zr(B, r)


def test_phi_frattini_reduction():
    # phi(B) = |Phi(B)|^r phi(B / Phi(B)) for p-groups
    B = AbelianGroup((4, 8))
    for r in (2, 3):
        assert eulerian_phi_zr(B, r) == (2 * 4) ** r * eulerian_phi_zr(AbelianGroup((2, 2)), r)


def test_phi_rank_exceeding_r_vanishes():
    assert eulerian_phi_zr(AbelianGroup((2, 2, 2)), 2) == 0
    assert eulerian_phi_zr(AbelianGroup((2, 2, 2)), 3) == 7 * 6 * 4


def test_phi_p_variant_factors_over_sylow_subgroups():
    # C2 x C6 = (C2 x C2) x C3: the 3-part is cyclic and contributes phi(3)
    assert eulerian_phi_zpr(AbelianGroup((2, 6)), 2, 2) == 2 * eulerian_phi_zpr(AbelianGroup((2, 2)), 2, 2)


def test_phi_p_variant():
    # a non-cyclic Sylow subgroup away from p cannot be hit by Z alone
    assert eulerian_phi_zpr(AbelianGroup((3, 3)), 2, 2) == 0
    assert eulerian_phi_zpr(AbelianGroup((3,)), 2, 2) == 2
    assert eulerian_phi_zpr(AbelianGroup((2, 2)), 2, 2) == eulerian_phi_zr(AbelianGroup((2, 2)), 2)


@pytest.mark.parametrize("r", (1, 2, 3))
def test_epimorphism_dp_on_small_groups(r):
    for n in range(1, 33):
        for B in abelian_groups_of_order(n):
            G = B.to_finite_group()
            full = np.ones(G.N, dtype=bool).tobytes()
            counts = epimorphism_counts(G, r)
            assert counts.get(full, (None, 0))[1] == eulerian_phi_zr(B, r)
            assert sum(w for _, w in counts.values()) == G.N ** r


def test_abelian_subgroup_counts():
    S3 = FiniteGroup.from_matrix_group(symplectic_group(1, 2))
    assert len(abelian_subgroups(S3)) == 5
    SL23 = FiniteGroup.from_matrix_group(symplectic_group(1, 3))
    subs = abelian_subgroups(SL23)
    assert len(subs) == 13
    sizes = sorted(int(m.sum()) for m in subs)
    assert sizes == [1, 2, 3, 3, 3, 3, 4, 4, 4, 6, 6, 6, 6]
    C = FiniteGroup.cyclic(12)
    assert len(abelian_subgroups(C)) == 6


def test_abelian_invariants_of_subgroups():
    B = AbelianGroup((2, 4))
    G = B.to_finite_group()
    full = np.ones(G.N, dtype=bool)
    assert G.abelian_invariants(full).invariants == (2, 4)
    types = sorted(G.abelian_invariants(m).invariants for m in abelian_subgroups(G))
    # subgroups of C2 x C4: 1, three C2, C2xC2, two C4, C2xC4
    assert types == sorted([(), (2,), (2,), (2,), (2, 2), (4,), (4,), (2, 4)])


@pytest.mark.parametrize("q", (2, 3))
def test_hom_counts(q):
    G = FiniteGroup.from_matrix_group(symplectic_group(1, q))
    for r in (1, 2, 3):
        rep = hom_count_check(G, r)
        assert rep.ok, rep
    for p in (2, 3):
        for r in (1, 2):
            assert hom_count_check(G, r, p)


def test_hom_count_values():
    S3 = FiniteGroup.from_matrix_group(symplectic_group(1, 2))
    # commuting pairs in S3: sum of centralizer orders = |G| * #classes
    assert commuting_tuple_count(S3, 2) == 18
    assert commuting_tuple_classes(S3, 1) == 3
    assert commuting_tuple_count(FiniteGroup.cyclic(6), 2) == 36
    SL23 = FiniteGroup.from_matrix_group(symplectic_group(1, 3))
    assert commuting_tuple_count(SL23, 2) == 24 * 7 == 168


def test_finite_group_basics():
    C = FiniteGroup.cyclic(8)
    assert sorted(C.element_orders.tolist()) == [1, 2, 4, 4, 8, 8, 8, 8]
    assert C.p_power_mask(2).all()
    assert C.p_power_mask(3).sum() == 1
    with pytest.raises(ValueError):
        FiniteGroup(np.zeros((2, 2), dtype=int))
