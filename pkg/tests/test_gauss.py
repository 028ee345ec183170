import pytest

from oracles import count_partitions
from qtelescope.gauss import GAUSS, GaussBElement, GaussElement, gauss_in_H, gauss_phi, gauss_verify_identity
from qtelescope.partitions import EMPTY, Partition
from qtelescope.series import QSeries, gauss_lhs, gauss_rhs, qs_poch
from qtelescope.telescoping import Dest, brute_force_F, check_cell

P = Partition


def el(n, k, lam, mu):
    return GaussElement(n, k, P(lam), P(mu))


def test_in_H_examples():
    assert not gauss_in_H(2, 0, el(2, 0, (), ()))
    assert not gauss_in_H(5, 0, el(5, 0, (), (5, 5, 5)))
    assert gauss_in_H(2, 1, el(2, 1, (1,), (1, 1)))
    assert not gauss_in_H(2, 1, el(2, 1, (1, 1), (1,)))
    assert not gauss_in_H(2, 3, el(2, 3, (), ()))


def test_phi_up_branch():
    img = gauss_phi(2, 1, el(2, 1, (1, 1), (1,)))
    assert img.tag is Dest.UP_H and img.payload == el(2, 2, (2, 1), ())
    assert gauss_in_H(2, 2, img.payload)


def test_phi_zero_padding_at_k0():
    img = gauss_phi(2, 0, el(2, 0, (), (2, 1)))
    assert img.tag is Dest.UP_H and img.payload == el(2, 1, (1,), (1, 1))
    assert gauss_in_H(2, 1, img.payload)


def test_phi_t0_identity_move():
    img = gauss_phi(2, 1, el(2, 1, (1,), ()))
    assert img.tag is Dest.UP_H and img.payload == el(2, 2, (1,), ())


def test_phi_stay_and_to_b():
    e = el(2, 1, (1,), (1, 1))
    assert gauss_phi(2, 1, e).payload == e
    img = gauss_phi(4, 1, el(4, 1, (1, 1, 1), (3, 3, 1)))
    # t = m_3(mu) = 2, mu_3 = 1 <= n-2-k = 1
    assert img.tag is Dest.TO_B
    assert img.payload == GaussBElement(8, el(2, 1, (1,), (1,)))
    assert GAUSS.b_weight_exponents(img.payload) == (0, 10)


def test_identity_examples():
    assert gauss_lhs(1, 20).is_zero()
    assert gauss_lhs(2, 10).coeffs == (1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1)
    want = [count_partitions(m, [2, 4]) for m in range(21)]
    assert gauss_lhs(4, 20).coeffs == tuple(want)
    assert gauss_rhs(4, 20) == gauss_lhs(4, 20)


@pytest.mark.parametrize("n", range(0, 13))
def test_identity_to_order_30(n):
    rep = gauss_verify_identity(n, 30)
    assert rep.ok
    if n % 2:
        assert gauss_lhs(n, 30).is_zero()


@pytest.mark.parametrize("n", range(2, 9))
def test_recurrence_by_enumeration(n):
    fn = brute_force_F(GAUSS, n, 24, 0)
    prev = brute_force_F(GAUSS, n - 2, 24, 0)
    assert fn - fn.shift(0, n) == prev


def _gaussian_binomial(n, k, order):
    # [n, k] = [n-1, k-1] + q^k [n-1, k]
    if k < 0 or k > n:
        return QSeries.zero(order)
    if k == 0 or k == n:
        return QSeries.one(order)
    return _gaussian_binomial(n - 1, k - 1, order) + _gaussian_binomial(n - 1, k, order).shift(k)


@pytest.mark.parametrize("n", range(0, 11))
def test_binomial_reformulation(n):
    alt = QSeries.zero(30)
    for k in range(n + 1):
        alt = alt + _gaussian_binomial(n, k, 30) * (-1) ** k
    assert alt == qs_poch(n, 30) * gauss_lhs(n, 30)
    if n % 2 == 0:
        want = QSeries.one(30)
        for j in range(1, n, 2):
            want = want * QSeries.from_coeffs([1] + [0] * (j - 1) + [-1], 30)
        assert alt == want
    else:
        assert alt.is_zero()


@pytest.mark.parametrize("n", range(1, 7))
def test_cells_exhaustive(n):
    for k in range(n + 1):
        rec = check_cell(GAUSS, n, k, 12)
        assert rec.ok, rec.failures[:3]
