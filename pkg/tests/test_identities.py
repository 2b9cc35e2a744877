import json

import pytest

from symplectic_euler.counting import ParityContext, PrimePowerOrderContext, im_poly, srim_minus_poly
from symplectic_euler.exactalg import Q, QPoly, TruncSeries
from symplectic_euler.genfun import fgl_product, fsp_at
from symplectic_euler.identities import (
    IDENTITY_IDS,
    IdentityReport,
    _compare,
    display_a_minus_n4,
    display_c_n3,
    master_cycle_index,
    master_exponent,
    run_identities,
    verify_corollary_basic,
    verify_lemma_basic,
    verify_master,
    verify_polidgl,
    verify_polidgu,
    verify_sdminus,
    verify_tsts,
)

EPS = (1, -1)


@pytest.mark.parametrize("eps", EPS)
def test_linear_and_unitary(eps):
    assert verify_polidgl(eps, 8).passed
    assert verify_polidgu(eps, 8).passed
    for q in (2, 3, 4, 5, 7):
        ctx = ParityContext.of(q)
        assert verify_polidgl(eps, 6, ctx).passed
        assert verify_polidgu(eps, 6, ctx).passed


@pytest.mark.parametrize("eps", EPS)
@pytest.mark.parametrize("parity", ["odd", "even"])
def test_symplectic_and_self_dual(eps, parity):
    ctx = ParityContext(parity)
    assert verify_tsts(eps, 8, ctx).passed
    assert verify_sdminus("SRIM", eps, 8, ctx).passed
    assert verify_sdminus("SDIM", eps, 8).passed


@pytest.mark.parametrize("q", [2, 3, 4, 5, 9])
def test_numeric_specializations(q):
    ctx = ParityContext.of(q)
    for eps in EPS:
        assert verify_tsts(eps, 6, ctx).passed
        assert verify_sdminus("SRIM", eps, 6, ctx).passed


def test_tsts_low_degree_values():
    # the right side is (1 - x)^{-eps}
    rep = verify_tsts(1, 4, ParityContext("odd", 3))
    assert rep.values == ("1", "1", "1", "1")
    rep = verify_tsts(-1, 4, ParityContext("odd", 3))
    assert rep.values == ("-1", "0", "0", "0")


@pytest.mark.parametrize("family", ["a+", "a-", "c"])
@pytest.mark.parametrize("r", range(1, 5))
def test_master_identities(family, r):
    for eps in EPS:
        assert verify_master(family, None, eps, r, 8).passed
        for p, q in [(2, 3), (3, 2), (2, 5), (5, 2)]:
            assert verify_master(family, PrimePowerOrderContext(p, q), eps, r, 6).passed


def test_master_exponents_integral_at_prime_powers():
    for family in ("a+", "a-", "c"):
        for r in range(1, 4):
            for D in range(1, 6):
                e = master_exponent(family, r, D)
                assert all(e(q).denominator == 1 for q in (2, 3, 4, 5))
                ctx = PrimePowerOrderContext(2, 3)
                assert master_exponent(family, r, D, ctx).denominator == 1


def test_cycle_index_special_cases():
    for r in (1, 2, 3):
        for q in (2, 3, 4):
            assert display_a_minus_n4(r, q) == master_cycle_index("a-", r, 4, q)
            assert display_c_n3(r, q) == master_cycle_index("c", r, 3, q)
    assert display_a_minus_n4(2, 3) == 1728
    assert display_c_n3(3, 2) == 749


def test_cycle_index_matches_series():
    for r in (1, 2, 3):
        for q in (2, 3):
            for n in range(1, 5):
                assert master_cycle_index("c", r, n, q) == fsp_at(r + 1, q, 4)[n]
                assert master_cycle_index("a-", r, n, q) == fgl_product(-1, r + 1, 4).at_q(q)[n]
                assert master_cycle_index("a+", r, n, q) == fgl_product(1, r + 1, 4).at_q(q)[n]
    sym = master_cycle_index("c", 2, 3)
    assert sym(5) == fsp_at(3, 5, 3)[3]


def test_basic_lemma_and_corollary():
    assert verify_lemma_basic(Q, 8).passed
    assert verify_lemma_basic(QPoly([3]), 6).passed
    for S in (im_poly, lambda d: srim_minus_poly(d, "odd")):
        for sign in ("+", "-"):
            for power in (1, -1):
                for k in (1, 2, 3):
                    assert verify_corollary_basic(S, k, sign, power, 7).passed


def test_failure_report_has_witness():
    lhs = [1, 2, 3]
    rhs = TruncSeries([1, 2, 4], 2, False)
    rep = _compare("polidgl", 1, lhs, rhs, 2, {"q": 3})
    assert not rep.passed and rep.fail_degree == 2
    rec = json.loads(rep.to_json())
    assert rec["status"] == "fail" and rec["degree"] == 2
    assert rec["lhs"] == "3" and rec["rhs"] == "4"


def test_run_identities_all_pass():
    reports = run_identities(N=6, r=(1, 2))
    assert reports and all(isinstance(rep, IdentityReport) for rep in reports)
    assert all(rep.passed for rep in reports), [rep.to_json() for rep in reports if not rep.passed]
    assert {rep.identity_id for rep in reports} == set(IDENTITY_IDS)


def test_run_identities_threaded_same_order():
    a = run_identities(which=["tsts", "master-c"], N=5, r=2, threads=1)
    b = run_identities(which=["tsts", "master-c"], N=5, r=2, threads=3)
    assert [x.to_json() for x in a] == [y.to_json() for y in b]


def test_bad_arguments():
    with pytest.raises(ValueError):
        run_identities(which=["nope"])
    with pytest.raises(ValueError):
        verify_polidgl(0)
    with pytest.raises(ValueError):
        verify_master("b", None, 1, 1)
    with pytest.raises(ValueError):
        verify_sdminus("XYZ", 1)
