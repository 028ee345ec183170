import pytest

import qtelescope.certificates as certs
from qtelescope.certificates import (
    sylvester_certificate,
    sylvester_summand,
    verify_sylvester_certificate,
    verify_watson_certificate,
    watson_certificate,
    watson_summand,
)
from qtelescope.series import AQSeries, aq_poch_inf, watson_lhs


def test_watson_summand_k0():
    assert watson_summand(0, 6, 20) == aq_poch_inf(1, 1, 6, 20).invert()


def test_watson_summand_vanishes_past_truncation():
    assert watson_summand(3, 5, 30).is_zero()  # a^6 beyond a-order 5
    assert watson_summand(4, 10, 20).is_zero()  # q^38 beyond q-order 20


def test_watson_summands_sum_to_lhs():
    acc = AQSeries.zero(10, 25)
    for k in range(6):
        acc = acc + watson_summand(k, 10, 25)
    assert acc == watson_lhs(10, 25)


def test_watson_certificate_values():
    assert watson_certificate(0, 10, 25).is_zero()
    assert watson_certificate(5, 10, 25).is_zero()
    head = AQSeries.monomial(2, 2, 6, 20)
    poly = -(AQSeries.monomial(0, 0, 6, 20, -1) + AQSeries.monomial(0, 1, 6, 20, -1) + AQSeries.monomial(1, 2, 6, 20))
    want = poly * head * aq_poch_inf(1, 1, 6, 20).invert()
    assert watson_certificate(1, 6, 20) == want


def test_certificate_k0_relation():
    F = watson_summand(0, 10, 25)
    assert F - F.scale_a(1) - F.scale_a(2).shift(1, 1) == watson_certificate(1, 10, 25)
    G = sylvester_summand(0, 8, 30)
    assert G - G.scale_a(1) == sylvester_certificate(1, 8, 30)


def test_sylvester_certificate_boundaries():
    assert sylvester_certificate(0, 8, 30).is_zero()
    assert sylvester_certificate(9, 8, 30).is_zero()
    with pytest.raises(ValueError):
        sylvester_certificate(-1, 8, 30)


def test_watson_full_check():
    chk = verify_watson_certificate(6, 10, 25)
    assert chk.ok
    assert sorted(chk.results) == list(range(7))
    assert chk.to_report().ok


def test_watson_default_orders():
    assert verify_watson_certificate(6, 12, 30).ok


def test_sylvester_full_check():
    assert verify_sylvester_certificate(6, 8, 30).ok
    assert verify_sylvester_certificate(6, 12, 30).ok


def test_wrong_certificate_is_caught(monkeypatch):
    real = certs.watson_certificate

    def off_by_sign(k, a_order, q_order):
        h = real(k, a_order, q_order)
        return -h if k == 3 else h

    monkeypatch.setattr(certs, "watson_certificate", off_by_sign)
    chk = verify_watson_certificate(6, 10, 25)
    assert not chk.ok
    bad = [k for k, r in chk.results.items() if not r.ok]
    assert bad == [2, 3]
