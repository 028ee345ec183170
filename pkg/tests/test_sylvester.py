import pytest

from qtelescope.partitions import EMPTY, Partition, trapezoid_sylvester
from qtelescope.series import AQSeries, sylvester_lhs
from qtelescope.sylvester import (
    SYLVESTER,
    SylvesterBElement,
    SylvesterElement,
    sylvester_in_H,
    sylvester_phi,
    sylvester_verify_identity,
)
from qtelescope.telescoping import Dest, brute_force_F, check_cell

P = Partition


def el(n, k, lam):
    return SylvesterElement(n, k, trapezoid_sylvester(k), P(lam))


def test_in_H_examples():
    assert not sylvester_in_H(2, 0, el(2, 0, (3, 3)))
    assert sylvester_in_H(2, 1, el(2, 1, (2, 2)))
    assert not sylvester_in_H(3, 1, el(3, 1, (3, 1)))


@pytest.mark.parametrize("m", [3, 4, 5, 9])
def test_case2_single_part(m):
    img = sylvester_phi(1, 0, el(1, 0, (m,)))
    assert img.tag is Dest.TO_B
    assert img.payload == SylvesterBElement(1, el(1, 0, (m - 1,)))
    assert SYLVESTER.b_weight_exponents(img.payload) == (1, m)


def test_case3_single_two():
    img = sylvester_phi(1, 0, el(1, 0, (2,)))
    assert img.tag is Dest.UP_H
    assert img.payload == SylvesterElement(1, 1, P((1, 1)), EMPTY)
    assert sylvester_in_H(1, 1, img.payload)
    assert SYLVESTER.weight_exponents(img.payload) == (1, 2)


def test_case1_stays():
    e = el(2, 1, (2, 2))
    assert sylvester_phi(2, 1, e).tag is Dest.STAY_H


def test_identity():
    assert sylvester_lhs(8, 30) == AQSeries.one(8, 30)
    assert sylvester_verify_identity(30, 8).ok
    assert brute_force_F(SYLVESTER, 0, 30, 8) == AQSeries.one(8, 30)


@pytest.mark.parametrize("n", range(1, 9))
def test_I_n_vanishes(n):
    fn = brute_force_F(SYLVESTER, n, 30, 8)
    assert fn == fn.shift(0, n)
    assert fn.is_zero()


@pytest.mark.parametrize("n", range(1, 7))
def test_cases_and_case3_outputs(n):
    for k in range(min(3, n) + 1):
        for e in SYLVESTER.enumerate_A(n, k, 16):
            assert len(SYLVESTER.cases(n, k, e)) == 1
            img = sylvester_phi(n, k, e)
            if img.tag is Dest.UP_H:
                assert (2 * k + 3) not in img.payload.lam


@pytest.mark.parametrize("n", range(1, 7))
def test_cells(n):
    for k in range(min(3, n) + 1):
        assert check_cell(SYLVESTER, n, k, 16).ok
