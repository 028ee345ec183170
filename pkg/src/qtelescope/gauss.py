"""Gauss's alternating sum of inverse q-factorial products.

    sum_{k=0}^n (-1)^k / ((q;q)_k (q;q)_{n-k}) = 0 (n odd), 1/((1-q^2)(1-q^4)...(1-q^n)) (n even)

``A_{n,k} = P_{n,k}`` is the set of pairs ``(lam, mu)`` with ``lam_1 <= k`` and
``mu_1 <= n - k``.  ``B_{n,k}`` is ``{0, n, 2n, ...} x P_{n-2,k}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .partitions import EMPTY, Partition, PartitionConstraint, enumerate_partitions, multiplicity
from .series import AQSeries, QSeries, gauss_lhs, gauss_rhs
from .telescoping import CellImage, CellRecord, Dest, TelescopingInstance, VerificationReport

__all__ = [
    "GaussElement",
    "GaussBElement",
    "GaussInstance",
    "GAUSS",
    "gauss_in_H",
    "gauss_phi",
    "gauss_verify_identity",
]


@dataclass(frozen=True)
class GaussElement:
    n: int
    k: int
    lam: Partition
    mu: Partition

    @property
    def weight(self) -> int:
        return self.lam.weight + self.mu.weight

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "lambda": list(self.lam), "mu": list(self.mu)}

    @classmethod
    def from_json(cls, d: dict) -> "GaussElement":
        return cls(d["n"], d["k"], Partition(d["lambda"]), Partition(d["mu"]))


@dataclass(frozen=True)
class GaussBElement:
    """``(t*n, pair)`` with pair in P_{n-2,k}; weighs q^{tn + |pair|}."""

    multiple: int
    pair: GaussElement

    def to_json(self) -> dict:
        return {"multiple": self.multiple, "pair": self.pair.to_json()}


def is_gauss_member(n: int, k: int, e: GaussElement) -> bool:
    if (e.n, e.k) != (n, k) or not 0 <= k <= n:
        return False
    return e.lam.part(1) <= k and e.mu.part(1) <= n - k


def gauss_in_H(n: int, k: int, e: GaussElement) -> bool:
    """m_k(lam) < m_{n-k}(mu), with m_0 infinite; empty by fiat for k > n."""
    if k > n:
        return False
    return multiplicity(e.lam, k) < multiplicity(e.mu, n - k)


def gauss_phi(n: int, k: int, e: GaussElement) -> CellImage:
    if gauss_in_H(n, k, e):
        return CellImage(Dest.STAY_H, e)
    lam, mu = e.lam, e.mu
    # k < n here: at k = n the right-hand multiplicity is m_0 = INFINITY
    t = multiplicity(mu, n - k)
    nxt = mu.part(t + 1)
    if nxt == n - 1 - k:
        # lam shorter than t only when k = 0 and lam is empty; pad with zeros
        bumped = [lam.part(i) + 1 for i in range(1, t + 1)] + list(lam[t:])
        lowered = [p - 1 for p in mu[:t]] + list(mu[t:])
        image = GaussElement(n, k + 1, Partition.from_parts(bumped), Partition.from_parts(lowered))
        return CellImage(Dest.UP_H, image)
    if nxt > n - 2 - k:
        raise AssertionError(f"unreachable branch: mu_(t+1)={nxt} for n={n} k={k}")
    pair = GaussElement(n - 2, k, Partition._trusted(lam[t:]), Partition._trusted(mu[t:]))
    return CellImage(Dest.TO_B, GaussBElement(t * n, pair))


class GaussInstance(TelescopingInstance):
    name = "gauss"

    def k_bound(self, n: int) -> int:
        return n

    def min_weight(self, n: int, k: int) -> int | None:
        return 0 if 0 <= k <= n else None

    def enumerate_A(self, n: int, k: int, max_weight: int) -> Iterator[GaussElement]:
        if not 0 <= k <= n:
            return
        lam_c = PartitionConstraint(max_part=k)
        mu_c = PartitionConstraint(max_part=n - k)
        for lam in enumerate_partitions(lam_c, max_weight):
            for mu in enumerate_partitions(mu_c, max_weight - lam.weight):
                yield GaussElement(n, k, lam, mu)

    def is_member(self, n: int, k: int, e) -> bool:
        return isinstance(e, GaussElement) and is_gauss_member(n, k, e)

    def in_H(self, n: int, k: int, e: GaussElement) -> bool:
        return gauss_in_H(n, k, e)

    def apply_phi(self, n: int, k: int, e: GaussElement) -> CellImage:
        return gauss_phi(n, k, e)

    def cases(self, n: int, k: int, e: GaussElement) -> list[str]:
        mk, mnk = multiplicity(e.lam, k), multiplicity(e.mu, n - k)
        out = []
        if mk < mnk:
            out.append("H")
        if mk >= mnk and k < n:
            t = mnk
            if e.mu.part(t + 1) == n - 1 - k:
                out.append("up")
            if e.mu.part(t + 1) <= n - 2 - k:
                out.append("to_b")
        return out

    def weight_exponents(self, e: GaussElement) -> tuple[int, int]:
        return 0, e.weight

    def b_weight_exponents(self, b: GaussBElement) -> tuple[int, int]:
        return 0, b.multiple + b.pair.weight

    def enumerate_B(self, n: int, k: int, max_weight: int) -> Iterator[GaussBElement]:
        if n < 2 or not 0 <= k <= n - 2:
            return
        for t in range(max_weight // n + 1):
            for pair in self.enumerate_A(n - 2, k, max_weight - t * n):
                yield GaussBElement(t * n, pair)

    def is_B_member(self, n: int, k: int, b) -> bool:
        return (
            isinstance(b, GaussBElement)
            and b.multiple >= 0
            and b.multiple % n == 0
            and is_gauss_member(n - 2, k, b.pair)
        )

    def cell_factors(self, n: int, k: int):
        if not 0 <= k <= n:
            return None
        return 0, 0, [PartitionConstraint(max_part=k), PartitionConstraint(max_part=n - k)]

    def declared_recurrence(self, n, F, q_order, a_order):
        # F_n (1 - q^n) = F_{n-2}; for n = 1 the right side is empty
        fn = F(n)
        lhs = fn - fn.shift(0, n)
        rhs = F(n - 2) if n >= 2 else AQSeries.zero(a_order, q_order)
        return lhs, rhs


def gauss_verify_identity(n: int, q_order: int) -> VerificationReport:
    rep = VerificationReport(
        command="verify", instance="gauss", options={"n": n, "q_order": q_order}
    )
    rec = CellRecord(n=n, max_weight=q_order)
    lhs, rhs = gauss_lhs(n, q_order), gauss_rhs(n, q_order)
    if lhs != rhs:
        i = next(i for i in range(q_order + 1) if lhs[i] != rhs[i])
        rec.fail("identity", None, {"q_exp": i, "lhs": str(lhs[i]), "rhs": str(rhs[i])})
    rec.counts["lhs_is_zero"] = int(lhs.is_zero())
    rep.cells.append(rec)
    return rep


GAUSS = GaussInstance()
