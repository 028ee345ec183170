"""Generic combinatorial-telescoping checks.

An instance supplies, for each ``(n, k)``, a finite-per-weight set ``A_{n,k}``,
a distinguished subset ``H_{n,k}``, a target set ``B_{n,k}`` and a map

    phi_{n,k}: A_{n,k} -> B_{n,k} + H_{n,k} + H_{n,k+1}

The functions here check, by exhaustive enumeration of weight slices, that
each ``phi_{n,k}`` is a weight-preserving bijection, that the generating
functions telescope, and that the ``H`` parts pair up into a sign-reversing
involution while the rest maps bijectively onto ``B``.
"""

from __future__ import annotations

import json
from abc import ABC, abstractmethod
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Hashable, Iterable, Iterator

from . import __version__
from .partitions import PartitionConstraint, weight_counts
from .series import AQSeries, QSeries

__all__ = [
    "Dest",
    "CellImage",
    "CellRecord",
    "VerificationReport",
    "MissingPreimage",
    "TelescopingInstance",
    "check_cell",
    "check_bijections",
    "check_telescoping",
    "brute_force_F",
    "cell_series",
    "enumerated_series",
    "build_involution",
    "global_bijection_check",
]

MAX_FAILURES = 20


class Dest(str, Enum):
    TO_B = "to_b"
    STAY_H = "stay_h"
    UP_H = "up_h"


@dataclass(frozen=True)
class CellImage:
    """Where ``phi_{n,k}`` sent an element: into B, into H_{n,k}, or into H_{n,k+1}."""

    tag: Dest
    payload: Any

    def key(self) -> tuple:
        return (self.tag, self.payload)


class MissingPreimage(LookupError):
    """An H-image has no preimage in the adjacent cell; some phi is not onto."""


def _jsonable(obj: Any) -> Any:
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, CellImage):
        return {"tag": obj.tag.value, "payload": _jsonable(obj.payload)}
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, (int, str, bool)) or obj is None:
        return obj
    return repr(obj)


@dataclass
class CellRecord:
    n: int | None = None
    k: int | None = None
    max_weight: int | None = None
    domain_size: int = 0
    failures: list[dict] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)
    suppressed: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, check: str, element: Any = None, detail: Any = None) -> None:
        if len(self.failures) >= MAX_FAILURES:
            self.suppressed += 1
            return
        entry: dict[str, Any] = {"check": check}
        if element is not None:
            entry["element"] = _jsonable(element)
        if detail is not None:
            entry["detail"] = _jsonable(detail)
        self.failures.append(entry)

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "k": self.k,
            "max_weight": self.max_weight,
            "domain_size": self.domain_size,
            "failures": self.failures,
        }
        if self.counts:
            out["counts"] = dict(self.counts)
        if self.suppressed:
            out["suppressed_failures"] = self.suppressed
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "CellRecord":
        return cls(
            n=d.get("n"),
            k=d.get("k"),
            max_weight=d.get("max_weight"),
            domain_size=d.get("domain_size", 0),
            failures=list(d.get("failures", [])),
            counts=dict(d.get("counts", {})),
            suppressed=d.get("suppressed_failures", 0),
        )


@dataclass
class VerificationReport:
    command: str
    instance: str
    cells: list[CellRecord] = field(default_factory=list)
    options: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    version: str = __version__

    @property
    def status(self) -> str:
        return "ok" if all(c.ok for c in self.cells) else "fail"

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def first_failure(self) -> tuple[CellRecord, dict] | None:
        for c in self.cells:
            if c.failures:
                return c, c.failures[0]
        return None

    def extend(self, other: "VerificationReport") -> None:
        self.cells.extend(other.cells)
        self.notes.extend(n for n in other.notes if n not in self.notes)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "instance": self.instance,
            "status": self.status,
            "version": self.version,
            "options": self.options,
            "notes": self.notes,
            "cells": [c.to_dict() for c in self.cells],
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        rep = cls(
            command=d["command"],
            instance=d["instance"],
            cells=[CellRecord.from_dict(c) for c in d.get("cells", [])],
            options=dict(d.get("options", {})),
            notes=list(d.get("notes", [])),
            version=d.get("version", __version__),
        )
        if "status" in d and d["status"] != rep.status:
            raise ValueError(f"status {d['status']!r} contradicts the cell records")
        return rep

    def to_text(self) -> str:
        lines = [f"{self.command} {self.instance}"]
        for c in self.cells:
            label = " ".join(f"{key}={val}" for key, val in (("n", c.n), ("k", c.k)) if val is not None)
            extra = " ".join(f"{key}={val}" for key, val in sorted(c.counts.items()))
            verdict = "ok" if c.ok else f"FAIL ({c.failures[0]['check']})"
            lines.append(f"  {label or '-'} domain={c.domain_size} {extra} {verdict}".rstrip())
        for note in self.notes:
            lines.append(f"  note: {note}")
        lines.append(f"status: {self.status}")
        return "\n".join(lines)


class TelescopingInstance(ABC):
    """A family ``{A_{n,k}, B_{n,k}, H_{n,k}, phi_{n,k}}`` with its weights.

    Elements carry their own ``(n, k)`` so the sets for different indices are
    disjoint as Python values.  Weights are pairs ``(a_exponent, q_exponent)``.
    """

    name: str = "abstract"

    @abstractmethod
    def k_bound(self, n: int) -> int:
        """A_{n,k} is empty for every k above this."""

    @abstractmethod
    def min_weight(self, n: int, k: int) -> int | None:
        """Least q-weight in A_{n,k}, or None when the set is empty."""

    @abstractmethod
    def enumerate_A(self, n: int, k: int, max_weight: int) -> Iterator[Any]: ...

    @abstractmethod
    def is_member(self, n: int, k: int, e: Any) -> bool: ...

    @abstractmethod
    def in_H(self, n: int, k: int, e: Any) -> bool: ...

    @abstractmethod
    def apply_phi(self, n: int, k: int, e: Any) -> CellImage: ...

    @abstractmethod
    def weight_exponents(self, e: Any) -> tuple[int, int]: ...

    @abstractmethod
    def b_weight_exponents(self, b: Any) -> tuple[int, int]: ...

    @abstractmethod
    def enumerate_B(self, n: int, k: int, max_weight: int) -> Iterator[Any]: ...

    @abstractmethod
    def is_B_member(self, n: int, k: int, b: Any) -> bool: ...

    @abstractmethod
    def cell_factors(self, n: int, k: int) -> tuple[int, int, list[PartitionConstraint]] | None:
        """A_{n,k} as ``(a_exp, q_shift, constraints)``: a product of independent partitions.

        None when A_{n,k} is empty.
        """

    @abstractmethod
    def declared_recurrence(
        self, n: int, F: Callable[[int], AQSeries], q_order: int, a_order: int
    ) -> tuple[AQSeries, AQSeries]:
        """Both sides of the recurrence the bijections imply for ``F_n``."""

    def cases(self, n: int, k: int, e: Any) -> list[str] | None:
        """Labels of every case predicate that holds for ``e``; None if not tracked."""
        return None

    # concrete helpers

    def k_values(self, n: int, max_weight: int) -> list[int]:
        out = []
        for k in range(self.k_bound(n) + 1):
            w = self.min_weight(n, k)
            if w is not None and w <= max_weight:
                out.append(k)
        return out

    def enumerate_H(self, n: int, k: int, max_weight: int) -> Iterator[Any]:
        if k > self.k_bound(n):
            return
        for e in self.enumerate_A(n, k, max_weight):
            if self.in_H(n, k, e):
                yield e

    def codomain_check(self, n: int, k: int, image: CellImage) -> bool:
        p = image.payload
        if image.tag is Dest.TO_B:
            return self.is_B_member(n, k, p)
        if image.tag is Dest.STAY_H:
            return self.is_member(n, k, p) and self.in_H(n, k, p)
        if image.tag is Dest.UP_H:
            return self.is_member(n, k + 1, p) and self.in_H(n, k + 1, p)
        return False

    def image_weight(self, image: CellImage) -> tuple[int, int]:
        if image.tag is Dest.TO_B:
            return self.b_weight_exponents(image.payload)
        return self.weight_exponents(image.payload)


def check_cell(inst: TelescopingInstance, n: int, k: int, max_weight: int) -> CellRecord:
    """Exhaustively check phi_{n,k} on the weight <= max_weight slice of A_{n,k}."""
    rec = CellRecord(n=n, k=k, max_weight=max_weight)
    hit: dict[tuple, Any] = {}
    tags: Counter = Counter()
    for e in inst.enumerate_A(n, k, max_weight):
        rec.domain_size += 1
        if not inst.is_member(n, k, e):
            rec.fail("membership", e)
        labels = inst.cases(n, k, e)
        if labels is not None and len(labels) != 1:
            rec.fail("case_exclusivity" if labels else "case_exhaustiveness", e, labels)
        try:
            img = inst.apply_phi(n, k, e)
        except Exception as exc:  # totality failure is a finding, not a crash
            rec.fail("totality", e, repr(exc))
            continue
        tags[img.tag.value] += 1
        if not inst.codomain_check(n, k, img):
            rec.fail("codomain", e, img)
        if inst.image_weight(img) != inst.weight_exponents(e):
            rec.fail("weight", e, {"image": _jsonable(img), "source": inst.weight_exponents(e),
                                   "target": inst.image_weight(img)})
        key = img.key()
        if key in hit:
            rec.fail("injectivity", e, {"collides_with": _jsonable(hit[key])})
        else:
            hit[key] = e

    targets = 0
    for b in inst.enumerate_B(n, k, max_weight):
        targets += 1
        if (Dest.TO_B, b) not in hit:
            rec.fail("surjectivity", b, "B element has no preimage")
    for h in inst.enumerate_H(n, k, max_weight):
        targets += 1
        if (Dest.STAY_H, h) not in hit:
            rec.fail("surjectivity", h, "H_{n,k} element has no preimage")
    for h in inst.enumerate_H(n, k + 1, max_weight):
        targets += 1
        if (Dest.UP_H, h) not in hit:
            rec.fail("surjectivity", h, "H_{n,k+1} element has no preimage")
    if targets != rec.domain_size and rec.ok:
        rec.fail("cardinality", None, {"domain": rec.domain_size, "codomain": targets})
    rec.counts.update(tags)
    rec.counts["codomain_size"] = targets
    return rec


def check_bijections(
    inst: TelescopingInstance, n_values: Iterable[int], k_max: int | None, max_weight: int
) -> VerificationReport:
    """check_cell over a grid of cells; cells above ``k_max`` are skipped."""
    n_values = list(n_values)
    rep = VerificationReport(
        command="check-bijection",
        instance=inst.name,
        options={"n": n_values, "k_max": k_max, "max_weight": max_weight},
    )
    for n in n_values:
        for k in inst.k_values(n, max_weight):
            if k_max is not None and k > k_max:
                continue
            rep.cells.append(check_cell(inst, n, k, max_weight))
    return rep


def _series_of(weights: Iterable[tuple[int, int]], q_order: int, a_order: int) -> AQSeries:
    grid = [[0] * (q_order + 1) for _ in range(a_order + 1)]
    for d, e in weights:
        if d <= a_order and e <= q_order:
            grid[d][e] += 1
    return AQSeries.from_rows(grid, a_order, q_order)


def enumerated_series(inst: TelescopingInstance, n: int, k: int, q_order: int, a_order: int) -> AQSeries:
    """Generating function of A_{n,k}, one element at a time."""
    if k > inst.k_bound(n):
        return AQSeries.zero(a_order, q_order)
    return _series_of(
        (inst.weight_exponents(e) for e in inst.enumerate_A(n, k, q_order)), q_order, a_order
    )


def cell_series(inst: TelescopingInstance, n: int, k: int, q_order: int, a_order: int) -> AQSeries:
    """Generating function of A_{n,k}, from counts of its independent partition factors."""
    factors = inst.cell_factors(n, k)
    if factors is None:
        return AQSeries.zero(a_order, q_order)
    a_exp, shift, constraints = factors
    if a_exp > a_order or shift > q_order:
        return AQSeries.zero(a_order, q_order)
    acc = QSeries.one(q_order - shift)
    for c in constraints:
        acc = acc * QSeries(tuple(weight_counts(c, q_order - shift)))
    row = QSeries.from_coeffs((0,) * shift + acc.coeffs, q_order)
    return AQSeries.zero(a_order, q_order) + AQSeries.from_qseries(row, a_order).shift(a_exp, 0)


def brute_force_F(inst: TelescopingInstance, n: int, q_order: int, a_order: int) -> AQSeries:
    """sum_k (-1)^k (weighted count of A_{n,k})."""
    acc = AQSeries.zero(a_order, q_order)
    for k in inst.k_values(n, q_order):
        acc = acc + cell_series(inst, n, k, q_order, a_order) * (-1) ** k
    return acc


def _diff_detail(lhs: AQSeries, rhs: AQSeries) -> dict | None:
    d = lhs.first_difference(rhs)
    if d is None:
        return None
    return {"a_exp": d[0], "q_exp": d[1], "lhs": str(d[2]), "rhs": str(d[3])}


def check_telescoping(inst: TelescopingInstance, n: int, q_order: int, a_order: int) -> VerificationReport:
    """Check f(k) = g(k) + h(k) + h(k+1) for every k by enumerating each set separately."""
    rep = VerificationReport(
        command="check-telescoping",
        instance=inst.name,
        options={"n": n, "q_order": q_order, "a_order": a_order},
    )
    ks = inst.k_values(n, q_order)
    zero = AQSeries.zero(a_order, q_order)

    def h_series(k: int) -> AQSeries:
        return _series_of(
            (inst.weight_exponents(e) for e in inst.enumerate_H(n, k, q_order)), q_order, a_order
        )

    alt_f = zero
    alt_g = zero
    h_next = h_series(ks[0]) if ks else zero
    for k in ks:
        rec = CellRecord(n=n, k=k, max_weight=q_order)
        f = enumerated_series(inst, n, k, q_order, a_order)
        g = _series_of(
            (inst.b_weight_exponents(b) for b in inst.enumerate_B(n, k, q_order)), q_order, a_order
        )
        h_k = h_next
        h_next = h_series(k + 1)
        rec.domain_size = sum(sum(r.coeffs) for r in f.rows)
        bad = _diff_detail(f, g + h_k + h_next)
        if bad:
            rec.fail("telescoping_relation", None, bad)
        alt_f = alt_f + f * (-1) ** k
        alt_g = alt_g + g * (-1) ** k
        rep.cells.append(rec)

    bounds = CellRecord(n=n, k=None, max_weight=q_order)
    if not h_series(0).is_zero() or any(True for _ in inst.enumerate_H(n, 0, q_order)):
        bounds.fail("H_0_empty", None, "H_{n,0} is not empty")
    top = inst.k_bound(n) + 1
    if any(True for _ in inst.enumerate_H(n, top, q_order)):
        bounds.fail("H_vanishes", None, f"H_{{n,{top}}} is not empty")
    bad = _diff_detail(alt_f, alt_g)
    if bad:
        bounds.fail("alternating_sums", None, bad)
    if n >= 1:
        lhs, rhs = inst.declared_recurrence(
            n, lambda m: brute_force_F(inst, m, q_order, a_order), q_order, a_order
        )
        bad = _diff_detail(lhs, rhs)
        if bad:
            bounds.fail("recurrence", None, bad)
    bounds.counts["k_cells"] = len(ks)
    rep.cells.append(bounds)
    return rep


def _phi_tables(inst: TelescopingInstance, n: int, max_weight: int):
    ks = inst.k_values(n, max_weight)
    top = (max(ks) + 1) if ks else 0
    images: dict[int, dict[Hashable, CellImage]] = {}
    for k in range(top + 1):
        if k in ks:
            images[k] = {e: inst.apply_phi(n, k, e) for e in inst.enumerate_A(n, k, max_weight)}
        else:
            images[k] = {}
    return images


def build_involution(
    inst: TelescopingInstance, n: int, max_weight: int
) -> tuple[dict[Any, Any], CellRecord]:
    """Pair up ``phi^{-1}(H)`` across adjacent k and check the pairing is a sign-reversing involution.

    The partner of an element sent to H_{n,k+1} is the preimage of the same
    element under phi_{n,k+1}; the partner of an element sent to H_{n,k} is
    its preimage under phi_{n,k-1}.  Preimages come from lookup tables over
    the forward images.
    """
    images = _phi_tables(inst, n, max_weight)
    stay_pre: dict[int, dict[Any, Any]] = {k: {} for k in images}
    up_pre: dict[int, dict[Any, Any]] = {k: {} for k in images}
    for k, table in images.items():
        for e, img in table.items():
            if img.tag is Dest.STAY_H:
                stay_pre[k][img.payload] = e
            elif img.tag is Dest.UP_H:
                up_pre[k][img.payload] = e

    psi: dict[Any, Any] = {}
    for k, table in images.items():
        for e, img in table.items():
            if img.tag is Dest.UP_H:
                partner = stay_pre.get(k + 1, {}).get(img.payload)
                if partner is None:
                    raise MissingPreimage(f"n={n} k={k + 1}: no preimage of {img.payload!r}")
                psi[e] = partner
            elif img.tag is Dest.STAY_H:
                partner = up_pre.get(k - 1, {}).get(img.payload)
                if partner is None:
                    raise MissingPreimage(f"n={n} k={k - 1}: no preimage of {img.payload!r}")
                psi[e] = partner

    rec = CellRecord(n=n, k=None, max_weight=max_weight, domain_size=len(psi))
    for e, f in psi.items():
        if e == f:
            rec.fail("fixed_point", e)
        if psi.get(f) != e:
            rec.fail("involution", e, {"image": _jsonable(f), "image_of_image": _jsonable(psi.get(f))})
        if inst.weight_exponents(e) != inst.weight_exponents(f):
            rec.fail("weight", e, _jsonable(f))
        if (e.k - f.k) % 2 == 0:
            rec.fail("sign", e, _jsonable(f))
    rec.counts["pairs"] = len(psi) // 2
    return psi, rec


def global_bijection_check(inst: TelescopingInstance, n: int, max_weight: int) -> CellRecord:
    """phi restricted to the complement of the involution's domain is a bijection onto B."""
    images = _phi_tables(inst, n, max_weight)
    rec = CellRecord(n=n, k=None, max_weight=max_weight)
    hit: dict[Any, Any] = {}
    involution_part = 0
    for k, table in images.items():
        for e, img in table.items():
            rec.domain_size += 1
            if img.tag is not Dest.TO_B:
                involution_part += 1
                continue
            if not inst.is_B_member(n, k, img.payload):
                rec.fail("codomain", e, img)
            if inst.b_weight_exponents(img.payload) != inst.weight_exponents(e):
                rec.fail("weight", e, img)
            if img.payload in hit:
                rec.fail("injectivity", e, {"collides_with": _jsonable(hit[img.payload])})
            hit[img.payload] = e
    b_total = 0
    for k in images:
        for b in inst.enumerate_B(n, k, max_weight):
            b_total += 1
            if b not in hit:
                rec.fail("surjectivity", b)
    if rec.domain_size != involution_part + len(hit):
        rec.fail("partition", None, "phi-domain and psi-domain do not cover the slice")
    rec.counts["phi_domain"] = len(hit)
    rec.counts["psi_domain"] = involution_part
    rec.counts["b_size"] = b_total
    return rec
