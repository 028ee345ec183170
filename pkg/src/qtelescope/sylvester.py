"""Sylvester's identity.

    sum_k (-1)^k q^{k(3k+1)/2} x^k (1 - x q^{2k+1}) / ((q;q)_k (x q^{k+1};q)_inf) = 1

``Q_{n,k}`` holds pairs ``(tau, lam)``: tau = (k^{k+1}, k-1, ..., 1), lam with no
part 2k+1 and exactly n - k parts greater than k.  The element weighs
``x^n q^{|tau|+|lam|}``; x lives on the a-axis of AQSeries.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from .partitions import (
    Partition,
    PartitionConstraint,
    enumerate_partitions,
    multiplicity,
    multiplicity_gt,
    trapezoid_sylvester,
)
from .series import AQSeries, sylvester_lhs
from .telescoping import (
    CellImage,
    CellRecord,
    Dest,
    TelescopingInstance,
    VerificationReport,
    brute_force_F,
)

__all__ = [
    "SylvesterElement",
    "SylvesterBElement",
    "SylvesterInstance",
    "SYLVESTER",
    "sylvester_in_H",
    "sylvester_phi",
    "sylvester_verify_identity",
]


@dataclass(frozen=True)
class SylvesterElement:
    n: int
    k: int
    tau: Partition
    lam: Partition

    @property
    def weight(self) -> int:
        return self.tau.weight + self.lam.weight

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "tau": list(self.tau), "lambda": list(self.lam)}

    @classmethod
    def from_json(cls, d: dict) -> "SylvesterElement":
        return cls(d["n"], d["k"], Partition(d["tau"]), Partition(d["lambda"]))


@dataclass(frozen=True)
class SylvesterBElement:
    """``(n, e)`` with e in Q_{n,k}; weighs q^n times the weight of e."""

    value: int
    payload: SylvesterElement

    def to_json(self) -> dict:
        out = self.payload.to_json()
        out["marker"] = {"type": "stay", "value": self.value}
        return out


def is_sylvester_member(n: int, k: int, e: SylvesterElement) -> bool:
    if (e.n, e.k) != (n, k) or not 0 <= k <= n:
        return False
    if e.tau != trapezoid_sylvester(k):
        return False
    return (2 * k + 1) not in e.lam and multiplicity_gt(e.lam, k) == n - k


def sylvester_in_H(n: int, k: int, e: SylvesterElement) -> bool:
    """m_{k+1}(lam) >= m_k(lam); never true at k = 0."""
    return multiplicity(e.lam, k + 1) >= multiplicity(e.lam, k)


def _partition(c: Counter) -> Partition:
    parts = []
    for p in sorted(c, reverse=True):
        if p > 0 and c[p] > 0:
            parts.extend([p] * c[p])
    return Partition._trusted(tuple(parts))


def _take(c: Counter, part: int, count: int = 1) -> None:
    if c[part] < count:
        raise AssertionError(f"needed {count} parts equal to {part}, have {c[part]}")
    c[part] -= count


def sylvester_phi(n: int, k: int, e: SylvesterElement) -> CellImage:
    if sylvester_in_H(n, k, e):
        return CellImage(Dest.STAY_H, e)
    c = Counter(e.lam)
    if c[2 * k + 2] == 0:
        # case 2
        if k:
            _take(c, k)
            pairs = c[k + 1]
            _take(c, k, pairs)
            _take(c, k + 1, pairs)
            c[2 * k + 1] += pairs
        out = Counter()
        for p, m in c.items():
            out[p - 1 if p > k + 1 else p] += m
        image = SylvesterElement(n, k, e.tau, _partition(out))
        return CellImage(Dest.TO_B, SylvesterBElement(n, image))
    # case 3
    if k:
        _take(c, k)
    _take(c, 2 * k + 2)
    if k:
        pairs = c[k + 1]
        _take(c, k, pairs)
        _take(c, k + 1, pairs)
        c[2 * k + 1] += pairs
    split = c.pop(2 * k + 3, 0)
    c[k + 1] += split
    c[k + 2] += split
    image = SylvesterElement(n, k + 1, trapezoid_sylvester(k + 1), _partition(c))
    return CellImage(Dest.UP_H, image)


class SylvesterInstance(TelescopingInstance):
    name = "sylvester"

    def k_bound(self, n: int) -> int:
        return n

    def min_weight(self, n: int, k: int) -> int | None:
        if not 0 <= k <= n:
            return None
        if k == 0:
            return 2 * n
        return k * (3 * k + 1) // 2 + (n - k) * (k + 1)

    def _constraints(self, n: int, k: int) -> list[PartitionConstraint]:
        big = PartitionConstraint(min_part=k + 1, forbidden_part=2 * k + 1, exact_length=n - k)
        return [PartitionConstraint(max_part=k), big]

    def enumerate_A(self, n: int, k: int, max_weight: int) -> Iterator[SylvesterElement]:
        if self.min_weight(n, k) is None:
            return
        tau = trapezoid_sylvester(k)
        rest = max_weight - tau.weight
        small_c, big_c = self._constraints(n, k)
        for big in enumerate_partitions(big_c, rest):
            for small in enumerate_partitions(small_c, rest - big.weight):
                yield SylvesterElement(n, k, tau, Partition._trusted(big + small))

    def is_member(self, n: int, k: int, e) -> bool:
        return isinstance(e, SylvesterElement) and is_sylvester_member(n, k, e)

    def in_H(self, n: int, k: int, e: SylvesterElement) -> bool:
        return sylvester_in_H(n, k, e)

    def apply_phi(self, n: int, k: int, e: SylvesterElement) -> CellImage:
        return sylvester_phi(n, k, e)

    def cases(self, n: int, k: int, e: SylvesterElement) -> list[str]:
        lam = e.lam
        up, here = multiplicity(lam, k + 1), multiplicity(lam, k)
        big = lam.count(2 * k + 2)
        out = []
        if up >= here:
            out.append("1")
        if up < here and big == 0:
            out.append("2")
        if up < here and big > 0:
            out.append("3")
        return out

    def weight_exponents(self, e: SylvesterElement) -> tuple[int, int]:
        return e.n, e.weight

    def b_weight_exponents(self, b: SylvesterBElement) -> tuple[int, int]:
        return b.payload.n, b.value + b.payload.weight

    def enumerate_B(self, n: int, k: int, max_weight: int) -> Iterator[SylvesterBElement]:
        for e in self.enumerate_A(n, k, max_weight - n):
            yield SylvesterBElement(n, e)

    def is_B_member(self, n: int, k: int, b) -> bool:
        return isinstance(b, SylvesterBElement) and b.value == n and is_sylvester_member(n, k, b.payload)

    def cell_factors(self, n: int, k: int):
        if self.min_weight(n, k) is None:
            return None
        return n, k * (3 * k + 1) // 2, self._constraints(n, k)

    def declared_recurrence(self, n, F, q_order, a_order):
        fn = F(n)
        return fn, fn.shift(0, n)


SYLVESTER = SylvesterInstance()


def sylvester_verify_identity(q_order: int, x_order: int) -> VerificationReport:
    """Left side = 1 on the (x, q) grid; I_0 = 1 and I_n = 0 for 1 <= n <= x_order by enumeration."""
    rep = VerificationReport(
        command="verify", instance="sylvester", options={"q_order": q_order, "a_order": x_order}
    )
    rec = CellRecord(max_weight=q_order)
    lhs = sylvester_lhs(x_order, q_order)
    d = lhs.first_difference(AQSeries.one(x_order, q_order))
    if d is not None:
        rec.fail("lhs_equals_one", None, {"x_exp": d[0], "q_exp": d[1], "lhs": str(d[2]), "rhs": str(d[3])})
    rep.cells.append(rec)
    for n in range(x_order + 1):
        rec = CellRecord(n=n, max_weight=q_order)
        i_n = brute_force_F(SYLVESTER, n, q_order, x_order)
        expect = AQSeries.one(x_order, q_order) if n == 0 else AQSeries.zero(x_order, q_order)
        d = i_n.first_difference(expect)
        if d is not None:
            rec.fail("I_n", None, {"x_exp": d[0], "q_exp": d[1], "got": str(d[2]), "want": str(d[3])})
        rep.cells.append(rec)
    return rep
