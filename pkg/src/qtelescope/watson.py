"""Watson's identity, which yields both Rogers-Ramanujan identities.

    sum_k (-1)^k (1 - a q^{2k}) a^{2k} q^{k(5k-1)/2} / ((q;q)_k (a q^k;q)_inf)
        = sum_n a^n q^{n^2} / (q;q)_n

``P_{n,k}`` holds triples ``(tau, lam, mu)``: tau the trapezoid (k^{2k}, k-1, ..., 1),
lam with exactly n - 2k parts, each >= k and none equal to 2k, and mu with
parts <= k.  The element weighs ``a^n q^{|tau|+|lam|+|mu|}``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from .partitions import (
    EMPTY,
    Partition,
    PartitionConstraint,
    enumerate_partitions,
    multiplicity,
    partitions_of,
    trapezoid_watson,
)
from .series import AQSeries, qs_poch, qs_poch_inf, schur_bilateral, watson_lhs, watson_rhs
from .telescoping import (
    CellImage,
    CellRecord,
    Dest,
    TelescopingInstance,
    VerificationReport,
    brute_force_F,
)

__all__ = [
    "WatsonElement",
    "WatsonBElement",
    "WatsonInstance",
    "WATSON",
    "watson_in_H",
    "watson_case",
    "watson_phi",
    "watson_verify_recurrence",
    "watson_verify_identity",
]

STAY = "stay"
DROP = "drop"


@dataclass(frozen=True)
class WatsonElement:
    n: int
    k: int
    tau: Partition
    lam: Partition
    mu: Partition

    @property
    def weight(self) -> int:
        return self.tau.weight + self.lam.weight + self.mu.weight

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "tau": list(self.tau),
            "lambda": list(self.lam),
            "mu": list(self.mu),
        }

    @classmethod
    def from_json(cls, d: dict) -> "WatsonElement":
        return cls(d["n"], d["k"], Partition(d["tau"]), Partition(d["lambda"]), Partition(d["mu"]))


@dataclass(frozen=True)
class WatsonBElement:
    """``(n, e)`` with e in P_{n,k} (kind "stay"), or ``(2n-1, e)`` with e in P_{n-1,k} (kind "drop")."""

    kind: str
    value: int
    payload: WatsonElement

    def to_json(self) -> dict:
        out = self.payload.to_json()
        out["marker"] = {"type": self.kind, "value": self.value}
        return out


def is_watson_member(n: int, k: int, e: WatsonElement) -> bool:
    if (e.n, e.k) != (n, k) or k < 0 or n < 2 * k:
        return False
    if e.tau != trapezoid_watson(k):
        return False
    lam = e.lam
    if len(lam) != n - 2 * k or (lam and lam[-1] < k) or (k and 2 * k in lam):
        return False
    return e.mu.part(1) <= k


def watson_in_H(n: int, k: int, e: WatsonElement) -> bool:
    """m_k(lam) + 2 > m_k(mu); never true at k = 0."""
    return multiplicity(e.lam, k) + 2 > multiplicity(e.mu, k)


def _lam_prime(lam: Partition, k: int) -> Counter:
    # every k-part of lam becomes a 2k-part
    c = Counter(lam)
    if k:
        c[2 * k] += c.pop(k, 0)
    return c


def watson_case(n: int, k: int, e: WatsonElement) -> int:
    """Which of the four cases applies.

    Cases 3 and 4 are told apart by the (k+1)- and (2k+2)-parts of lam',
    i.e. after k-parts are doubled.  For k >= 2 this is the same as reading
    them off lam; at k = 1 the doubled parts are themselves (k+1)-parts.  At
    k = 0 one 1-part plays the role of the (2k+1)-part.
    """
    if watson_in_H(n, k, e):
        return 1
    lam = e.lam
    if k == 0:
        m1, m2 = lam.count(1), lam.count(2)
        if m1 == 0:
            return 2
        return 3 if (m1 == 1 and m2 == 0) else 4
    if lam.count(2 * k + 1) == 0:
        return 2
    lp = _lam_prime(lam, k)
    return 3 if lp[k + 1] + lp[2 * k + 2] == 0 else 4


def _sorted(c: Counter) -> Partition:
    parts = []
    for p in sorted(c, reverse=True):
        if p > 0 and c[p] > 0:
            parts.extend([p] * c[p])
    return Partition._trusted(tuple(parts))


def watson_phi(n: int, k: int, e: WatsonElement) -> CellImage:
    case = watson_case(n, k, e)
    if case == 1:
        return CellImage(Dest.STAY_H, e)
    lam, mu = e.lam, e.mu
    if k:
        drop = lam.count(k) + 2
        mu_c = Counter(mu)
        if mu_c[k] < drop:
            raise AssertionError("case 2-4 precondition m_k(mu) >= m_k(lam) + 2 violated")
        mu_c[k] -= drop
        mu1 = _sorted(mu_c)
    else:
        mu1 = EMPTY
    lp = _lam_prime(lam, k)

    if case == 2:
        lam2 = Partition._trusted(tuple(p - 1 for p in _sorted(lp)))
        return CellImage(Dest.TO_B, WatsonBElement(STAY, n, WatsonElement(n, k, e.tau, lam2, mu1)))

    if case == 3:
        lp[2 * k + 1] -= 1
        if lp[2 * k + 1] < 0:
            raise AssertionError("case 3 needs a (2k+1)-part")
        lam2 = Partition._trusted(tuple(p - 2 for p in _sorted(lp)))
        if lam2 and lam2[-1] < 1:
            raise AssertionError(f"case 3 produced a nonpositive part from {lam}")
        payload = WatsonElement(n - 1, k, e.tau, lam2, mu1)
        return CellImage(Dest.TO_B, WatsonBElement(DROP, 2 * n - 1, payload))

    # case 4: (2k+2)-parts of lam' split into a (k+1)-part kept and a (k+1)-part sent to mu
    moved = lp.pop(2 * k + 2, 0)
    lp[k + 1] += moved
    mu_c = Counter(mu1)
    mu_c[k + 1] += moved
    lp[k + 1] -= 1
    lp[2 * k + 1] -= 1
    if lp[k + 1] < 0 or lp[2 * k + 1] < 0:
        raise AssertionError(f"case 4 ran out of parts for {e}")
    image = WatsonElement(n, k + 1, trapezoid_watson(k + 1), _sorted(lp), _sorted(mu_c))
    return CellImage(Dest.UP_H, image)


class WatsonInstance(TelescopingInstance):
    name = "watson"

    def k_bound(self, n: int) -> int:
        return n // 2

    def min_weight(self, n: int, k: int) -> int | None:
        if k < 0 or n < 2 * k:
            return None
        return k * (5 * k - 1) // 2 + (n - 2 * k) * max(k, 1)

    def _lam_constraint(self, n: int, k: int) -> PartitionConstraint:
        return PartitionConstraint(
            min_part=max(k, 1), forbidden_part=2 * k if k else None, exact_length=n - 2 * k
        )

    def enumerate_A(self, n: int, k: int, max_weight: int) -> Iterator[WatsonElement]:
        if self.min_weight(n, k) is None:
            return
        tau = trapezoid_watson(k)
        rest = max_weight - tau.weight
        mu_c = PartitionConstraint(max_part=k)
        for lam in enumerate_partitions(self._lam_constraint(n, k), rest):
            for mu in enumerate_partitions(mu_c, rest - lam.weight):
                yield WatsonElement(n, k, tau, lam, mu)

    def is_member(self, n: int, k: int, e) -> bool:
        return isinstance(e, WatsonElement) and is_watson_member(n, k, e)

    def in_H(self, n: int, k: int, e: WatsonElement) -> bool:
        return watson_in_H(n, k, e)

    def apply_phi(self, n: int, k: int, e: WatsonElement) -> CellImage:
        return watson_phi(n, k, e)

    def cases(self, n: int, k: int, e: WatsonElement) -> list[str]:
        # each predicate written out in full so overlaps would show up
        lam, mu = e.lam, e.mu
        c1 = multiplicity(lam, k) + 2 > multiplicity(mu, k)
        out = ["1"] if c1 else []
        if k == 0:
            m1, m2 = lam.count(1), lam.count(2)
            if not c1 and m1 == 0:
                out.append("2")
            if not c1 and m1 == 1 and m2 == 0:
                out.append("3")
            if not c1 and m1 > 0 and m1 + m2 > 1:
                out.append("4")
            return out
        lp = _lam_prime(lam, k)
        odd = lam.count(2 * k + 1)
        if not c1 and odd == 0:
            out.append("2")
        if not c1 and odd > 0 and lp[k + 1] + lp[2 * k + 2] == 0:
            out.append("3")
        if not c1 and odd > 0 and lp[k + 1] + lp[2 * k + 2] > 0:
            out.append("4")
        return out

    def weight_exponents(self, e: WatsonElement) -> tuple[int, int]:
        return e.n, e.weight

    def b_weight_exponents(self, b: WatsonBElement) -> tuple[int, int]:
        a, q = self.weight_exponents(b.payload)
        if b.kind == STAY:
            return a, q + b.value
        return a + 1, q + b.value

    def enumerate_B(self, n: int, k: int, max_weight: int) -> Iterator[WatsonBElement]:
        if self.min_weight(n, k) is None:
            return
        for e in self.enumerate_A(n, k, max_weight - n):
            yield WatsonBElement(STAY, n, e)
        for e in self.enumerate_A(n - 1, k, max_weight - (2 * n - 1)):
            yield WatsonBElement(DROP, 2 * n - 1, e)

    def is_B_member(self, n: int, k: int, b) -> bool:
        if not isinstance(b, WatsonBElement):
            return False
        if b.kind == STAY:
            return b.value == n and is_watson_member(n, k, b.payload)
        if b.kind == DROP:
            return b.value == 2 * n - 1 and is_watson_member(n - 1, k, b.payload)
        return False

    def cell_factors(self, n: int, k: int):
        if self.min_weight(n, k) is None:
            return None
        return n, k * (5 * k - 1) // 2, [self._lam_constraint(n, k), PartitionConstraint(max_part=k)]

    def declared_recurrence(self, n, F, q_order, a_order):
        fn = F(n)
        return fn, fn.shift(0, n) + F(n - 1).shift(1, 2 * n - 1)


WATSON = WatsonInstance()


def closed_form(n: int, q_order: int, a_order: int) -> AQSeries:
    """a^n q^{n^2} / (q;q)_n."""
    row = qs_poch(n, q_order).invert().shift(n * n) if n * n <= q_order else None
    out = AQSeries.zero(a_order, q_order)
    if row is None or n > a_order:
        return out
    return out + AQSeries.from_qseries(row, a_order).shift(n, 0)


def _compare(rec: CellRecord, check: str, lhs: AQSeries, rhs: AQSeries) -> None:
    d = lhs.first_difference(rhs)
    if d is not None:
        rec.fail(check, None, {"a_exp": d[0], "q_exp": d[1], "lhs": str(d[2]), "rhs": str(d[3])})


def watson_verify_recurrence(n: int, q_order: int, a_order: int) -> VerificationReport:
    """F_n = q^n F_n + a q^{2n-1} F_{n-1} on brute-force counts, and F_n against its closed form."""
    rep = VerificationReport(
        command="verify-recurrence", instance="watson",
        options={"n": n, "q_order": q_order, "a_order": a_order},
    )
    rec = CellRecord(n=n, max_weight=q_order)
    F = lambda m: brute_force_F(WATSON, m, q_order, a_order)  # noqa: E731
    fn = F(n)
    if n >= 1:
        lhs, rhs = WATSON.declared_recurrence(n, F, q_order, a_order)
        _compare(rec, "recurrence", lhs, rhs)
    _compare(rec, "closed_form", fn, closed_form(n, q_order, a_order))
    rep.cells.append(rec)
    return rep


def watson_verify_identity(q_order: int, a_order: int) -> VerificationReport:
    """Left side = right side = sum of brute-force F_n, plus the a=1 and a=q specializations."""
    rep = VerificationReport(
        command="verify", instance="watson", options={"q_order": q_order, "a_order": a_order}
    )
    lhs = watson_lhs(a_order, q_order)
    rhs = watson_rhs(a_order, q_order)
    brute = AQSeries.zero(a_order, q_order)
    for n in range(a_order + 1):
        brute = brute + brute_force_F(WATSON, n, q_order, a_order)

    rec = CellRecord(max_weight=q_order)
    rec.counts["check"] = 1
    _compare(rec, "lhs_equals_rhs", lhs, rhs)
    _compare(rec, "lhs_equals_enumeration", lhs, brute)
    _compare(rec, "rhs_equals_enumeration", rhs, brute)
    rep.cells.append(rec)

    rep.cells.append(schur_check(q_order, a_order))

    # a = q: sum_n q^{n^2+n}/(q;q)_n; rows beyond a_order must be invisible
    rec = CellRecord(max_weight=q_order)
    rec.counts["a_equals_q"] = 1
    if (a_order + 1) ** 2 + (a_order + 1) <= q_order:
        rec.fail("a_equals_q", None, f"a_order {a_order} too small for q_order {q_order}")
    else:
        lq = AQSeries.from_qseries(lhs.at_a_equals_q(), 0)
        expect = AQSeries.from_qseries(rhs.at_a_equals_q(), 0)
        _compare(rec, "a_equals_q", lq, expect)
    rep.cells.append(rec)
    return rep


def schur_check(q_order: int, a_order: int | None = None) -> CellRecord:
    """(a=1 specialization of the Watson left side) * (q;q)_inf = bilateral sum."""
    if a_order is None:
        a_order = 1
        while (a_order + 1) ** 2 <= q_order:
            a_order += 1
    rec = CellRecord(max_weight=q_order)
    rec.counts["a_equals_1"] = 1
    if (a_order + 1) ** 2 <= q_order:
        rec.fail("schur", None, f"a_order {a_order} too small for q_order {q_order}")
        return rec
    spec = watson_lhs(a_order, q_order).at_a_equals_one() * qs_poch_inf(q_order)
    _compare(rec, "schur", AQSeries.from_qseries(spec, 0),
             AQSeries.from_qseries(schur_bilateral(q_order), 0))
    return rec
