"""Partitions, multiplicities with ``m_0 = INFINITY``, and constrained enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

__all__ = [
    "INFINITY",
    "ExtNat",
    "Partition",
    "EMPTY",
    "PartitionConstraint",
    "multiplicity",
    "multiplicity_gt",
    "trapezoid_watson",
    "trapezoid_sylvester",
    "enumerate_partitions",
    "partitions_of",
    "weight_counts",
]


class _Infinity:
    """Absorbing infinite natural number.

    ``INFINITY + c`` is ``INFINITY``; it equals itself, is greater than every
    int, and is never strictly greater or less than itself.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __add__(self, other):
        if isinstance(other, (int, _Infinity)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("qtelescope.INFINITY")

    def __lt__(self, other) -> bool:
        if isinstance(other, (int, _Infinity)):
            return False
        return NotImplemented

    def __le__(self, other) -> bool:
        if isinstance(other, _Infinity):
            return True
        if isinstance(other, int):
            return False
        return NotImplemented

    def __gt__(self, other) -> bool:
        if isinstance(other, _Infinity):
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __ge__(self, other) -> bool:
        if isinstance(other, (int, _Infinity)):
            return True
        return NotImplemented


INFINITY = _Infinity()
ExtNat = Union[int, _Infinity]


class Partition(tuple):
    """A non-increasing tuple of positive ints."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(parts)
        for i, p in enumerate(parts):
            if not isinstance(p, int) or p < 1:
                raise ValueError(f"parts must be positive integers, got {p!r}")
            if i and parts[i - 1] < p:
                raise ValueError(f"parts must be non-increasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def _trusted(cls, parts: tuple) -> "Partition":
        return tuple.__new__(cls, parts)

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "Partition":
        """Sort descending and drop zero parts."""
        return cls._trusted(tuple(sorted((p for p in parts if p), reverse=True)))

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """1-based part ``lambda_i``, reading 0 past the end."""
        return self[i - 1] if i <= len(self) else 0

    def multiplicity(self, k: int) -> ExtNat:
        return multiplicity(self, k)

    def count_gt(self, k: int) -> int:
        return multiplicity_gt(self, k)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"


EMPTY = Partition()


def multiplicity(lam: Partition, k: int) -> ExtNat:
    if k == 0:
        return INFINITY
    return lam.count(k)


def multiplicity_gt(lam: Partition, k: int) -> int:
    n = 0
    for p in lam:
        if p <= k:
            break
        n += 1
    return n


def trapezoid_watson(k: int) -> Partition:
    """(k^{2k}, k-1, ..., 1), of weight k(5k-1)/2."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return Partition._trusted((k,) * (2 * k) + tuple(range(k - 1, 0, -1)))


def trapezoid_sylvester(k: int) -> Partition:
    """(k^{k+1}, k-1, ..., 1), of weight k(3k+1)/2."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return EMPTY
    return Partition._trusted((k,) * (k + 1) + tuple(range(k - 1, 0, -1)))


@dataclass(frozen=True)
class PartitionConstraint:
    """Optional bounds on a partition.

    ``exact_count_gt=(k, c)`` asks for exactly ``c`` parts greater than ``k``.
    """

    max_part: int | None = None
    min_part: int = 1
    forbidden_part: int | None = None
    exact_length: int | None = None
    exact_count_gt: tuple[int, int] | None = None

    def admits(self, lam: Partition) -> bool:
        if self.max_part is not None and lam and lam[0] > self.max_part:
            return False
        if lam and lam[-1] < self.min_part:
            return False
        if self.forbidden_part is not None and self.forbidden_part in lam:
            return False
        if self.exact_length is not None and len(lam) != self.exact_length:
            return False
        if self.exact_count_gt is not None:
            k, c = self.exact_count_gt
            if multiplicity_gt(lam, k) != c:
                return False
        return True


def _gen(m, cap, lo, forbidden, length, gt_k, gt_left):
    # Yields tuples with parts in [lo, cap] summing to m, lex-ascending.
    if m == 0:
        if (length is None or length == 0) and (gt_left is None or gt_left == 0):
            yield ()
        return
    if length is not None and (length == 0 or m > length * cap or m < length * lo):
        return
    if gt_left and m < gt_left * (gt_k + 1):
        return
    top = min(m, cap)
    for first in range(lo, top + 1):
        if first == forbidden:
            continue
        g = gt_left
        if gt_k is not None:
            if first > gt_k:
                if g == 0:
                    break
                g -= 1
            elif g > 0:
                continue
        nlen = None if length is None else length - 1
        for rest in _gen(m - first, first, lo, forbidden, nlen, gt_k, g):
            yield (first,) + rest


def partitions_of(m: int, constraint: PartitionConstraint = PartitionConstraint()) -> Iterator[Partition]:
    """Partitions of exactly ``m`` under ``constraint``, lexicographically ascending."""
    c = constraint
    cap = m if c.max_part is None else c.max_part
    gt_k, gt_left = (None, None) if c.exact_count_gt is None else c.exact_count_gt
    if gt_left is not None and gt_left < 0:
        return
    if c.exact_length is not None and c.exact_length < 0:
        return
    lo = max(c.min_part, 1)
    for parts in _gen(m, cap, lo, c.forbidden_part, c.exact_length, gt_k, gt_left):
        yield Partition._trusted(parts)


def enumerate_partitions(
    constraint: PartitionConstraint = PartitionConstraint(), max_weight: int = 0
) -> Iterator[Partition]:
    """Every admitted partition of weight <= max_weight, graded by weight then lex order."""
    if max_weight < 0:
        return
    for m in range(max_weight + 1):
        yield from partitions_of(m, constraint)


def weight_counts(constraint: PartitionConstraint, max_weight: int) -> list[int]:
    """Number of admitted partitions of each weight ``0..max_weight``, by enumeration."""
    return [sum(1 for _ in partitions_of(m, constraint)) for m in range(max_weight + 1)]
