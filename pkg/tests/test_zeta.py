import json
from fractions import Fraction

import pytest
import sympy

from pgl3zeta.enumeration import enumerate_gallery_loops, enumerate_geodesic_loops
from pgl3zeta.exactalg import IntPolynomial, RationalFunction, gcd
from pgl3zeta.operators import build_D, build_L, build_T
from pgl3zeta.zeta import (
    compute_Z,
    compute_Z1,
    compute_Z2,
    degree_audit,
    edge_zeta_certificate,
    euler_ratio_check,
    gallery_euler_factor,
    trace_powers,
    verify_series_identities,
    zeta_certificate,
    zeta_report,
)


@pytest.fixture(scope="module")
def report2(q2):
    return zeta_report(q2, order=8)


def test_Z1_against_sympy_charpoly(q2):
    T = sympy.Matrix(build_T(q2).to_dense())
    lam = sympy.Symbol("lam")
    cp = T.charpoly(lam)  # det(lam I - T)
    coeffs = cp.all_coeffs()  # leading first
    # det(1 - uT) = u^E cp(1/u) with E = T.rows: coefficient of u^k is coeffs[k]
    assert compute_Z1(q2).coeffs == tuple(int(c) for c in coeffs)


def test_constant_terms(report2):
    assert report2.Z1[0] == report2.Z2[0] == report2.D[0] == 1


def test_degree_audit(q2, q3):
    a = degree_audit(q2)
    assert a.observed_degree == 21 == a.edges
    assert a.det_T_nonzero
    assert a.claimed_degree == Fraction(9, 2) and not a.claimed_matches
    assert a.edge_count_matches
    b = degree_audit(q3)
    assert b.observed_degree == 39 and b.claimed_degree == 6
    json.dumps(b.to_json())


def test_Z2_shape(quotient):
    Z2 = compute_Z2(quotient)
    assert Z2[0] == 1
    assert all(k % 3 == 0 for k in Z2.support())
    assert Z2.degree <= 3 * len(quotient.chambers)
    assert Z2 != IntPolynomial([1])


def test_Z_reduced(q2):
    Z = compute_Z(q2)
    assert gcd(Z.numerator, Z.denominator).degree == 0
    assert Z == RationalFunction(compute_Z1(q2), compute_Z2(q2))


def test_series_identities(quotient):
    r = verify_series_identities(quotient, 10)
    assert r.trace_T_holds and r.log_holds
    assert r.rational_form_holds
    # the segment traces exceed the geodesic traces at n = 3, 6, 9
    assert r.signed_mismatches == [3, 6, 9]
    assert not r.unsigned_holds
    assert r.neg_log_derivative == r.trace_T


def test_series_order_zero(q2):
    r = verify_series_identities(q2, 0)
    assert r.signed_holds and r.unsigned_holds and r.rational_form_holds
    with pytest.raises(ValueError):
        verify_series_identities(q2, 13)


def test_certificate_on_constructed_input():
    D = IntPolynomial([1, -3, 2])
    Z1 = IntPolynomial([1, -1]) ** 2
    cert = edge_zeta_certificate(Z1, D)
    assert cert.found and cert.exponent == 2
    assert Z1 * cert.cofactor == D**2
    assert cert.cofactor[0] == 1
    Z = RationalFunction(IntPolynomial([1, -2]), IntPolynomial([1, 1]))
    cert = zeta_certificate(Z, D)
    assert cert.found and cert.exponent == 1
    assert Z.numerator * cert.cofactor == D * Z.denominator


def test_certificates_on_quotients(report2, q3):
    for rep in (report2, zeta_report(q3, order=4)):
        for cert in (rep.edge_certificate, rep.zeta_certificate):
            assert not cert.found
            assert "NO SOLUTION" in cert.to_json()["status"]
            # the leftover factor shares nothing with D
            assert gcd(cert.residual, rep.D).degree == 0
        assert any("NO SOLUTION" in d for d in rep.discrepancies)


def test_report_json_deterministic(report2, q2):
    a = json.dumps(report2.to_json())
    b = json.dumps(zeta_report(q2, order=8).to_json())
    assert a == b
    assert "timing_seconds" not in report2.to_json()
    assert report2.hard_failures == []


def test_euler_ratio(q2):
    order = 9
    Z = compute_Z(q2)
    geo = enumerate_geodesic_loops(q2, 8)
    L = build_L(q2).L
    traces = {n: t for n, t in enumerate(trace_powers(L, 2), start=1)}
    holds, lhs, rhs = euler_ratio_check(Z, geo.euler_product(8), traces, order)
    assert holds
    gal = enumerate_gallery_loops(q2, 2)
    holds, _, _ = euler_ratio_check(Z, geo.euler_product(8), gal.gallery_sum, order)
    assert not holds


def test_gallery_euler_factor_matches_Z2(q2):
    L = build_L(q2).L
    tr = {n: t for n, t in enumerate(trace_powers(L, 3), start=1)}
    fac = gallery_euler_factor(tr, 10)
    assert fac == [Fraction(c) for c in compute_Z2(q2).truncate(10).coeffs] + [Fraction(0)] * (
        10 - len(compute_Z2(q2).truncate(10).coeffs)
    )


def test_D_in_report(report2, q2):
    assert report2.D == build_D(q2)
