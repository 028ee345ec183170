"""Truncated formal power series in ``q`` and in ``(a, q)``.

Every value carries its truncation order and every operation truncates
eagerly.  Coefficients are Python ints, so there is no overflow and no
rounding anywhere.

A bivariate series is stored as rows indexed by the exponent of ``a``;
row ``d`` is the ``QSeries`` coefficient of ``a**d``.  The same container
is used for Sylvester's ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

__all__ = [
    "NotUnit",
    "Divergent",
    "QSeries",
    "AQSeries",
    "qs_add",
    "qs_mul",
    "qs_invert",
    "qs_poch",
    "qs_poch_inf",
    "aq_poch_inf",
    "aq_scale_a",
    "watson_term",
    "watson_lhs",
    "watson_rhs",
    "sylvester_term",
    "sylvester_lhs",
    "schur_bilateral",
    "rr_product",
    "rr_sum",
    "gauss_lhs",
    "gauss_rhs",
]


class NotUnit(ArithmeticError):
    """Raised when inverting a series whose constant term is not +1 or -1."""


class Divergent(ValueError):
    """Raised for an infinite product that does not terminate under truncation."""


@dataclass(frozen=True)
class QSeries:
    """Power series ``sum coeffs[i] q**i`` known up to ``q**order``."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.coeffs, tuple):
            object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise ValueError("a QSeries needs at least the constant coefficient")

    # construction

    @classmethod
    def from_coeffs(cls, values: Iterable[int], order: int) -> "QSeries":
        """Pad with zeros or cut ``values`` so that exactly ``order + 1`` remain."""
        vals = list(values)[: order + 1]
        vals.extend([0] * (order + 1 - len(vals)))
        return cls(tuple(int(c) for c in vals))

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls((0,) * (order + 1))

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls.monomial(0, order)

    @classmethod
    def monomial(cls, exponent: int, order: int, coeff: int = 1) -> "QSeries":
        vals = [0] * (order + 1)
        if 0 <= exponent <= order:
            vals[exponent] = coeff
        return cls(tuple(vals))

    # queries

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i]

    def __len__(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> int | None:
        """Lowest exponent with a nonzero coefficient, or None for zero."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series known to order {self.order} to {order}")
        return QSeries(self.coeffs[: order + 1])

    # arithmetic

    def __add__(self, other: Union["QSeries", int]) -> "QSeries":
        if isinstance(other, int):
            return QSeries((self.coeffs[0] + other,) + self.coeffs[1:])
        n = min(self.order, other.order)
        return QSeries(tuple(self.coeffs[i] + other.coeffs[i] for i in range(n + 1)))

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Union["QSeries", int]) -> "QSeries":
        return self + (-other)

    def __rsub__(self, other: int) -> "QSeries":
        return (-self) + other

    def __mul__(self, other: Union["QSeries", int]) -> "QSeries":
        if isinstance(other, int):
            return QSeries(tuple(c * other for c in self.coeffs))
        n = min(self.order, other.order)
        u, v = self.coeffs, other.coeffs
        out = [0] * (n + 1)
        for i in range(n + 1):
            ui = u[i]
            if not ui:
                continue
            for j in range(n + 1 - i):
                if v[j]:
                    out[i + j] += ui * v[j]
        return QSeries(tuple(out))

    __rmul__ = __mul__

    def shift(self, e: int) -> "QSeries":
        """Multiply by ``q**e`` (``e >= 0``), keeping the order."""
        if e < 0:
            raise ValueError("negative shifts leave the ring")
        if e == 0:
            return self
        n = self.order
        return QSeries(((0,) * min(e, n + 1) + self.coeffs)[: n + 1])

    def invert(self) -> "QSeries":
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise NotUnit(f"constant coefficient {c0} is not a unit over the integers")
        u = self.coeffs
        n = self.order
        v = [0] * (n + 1)
        v[0] = c0
        for m in range(1, n + 1):
            s = 0
            for i in range(1, m + 1):
                if u[i]:
                    s += u[i] * v[m - i]
            v[m] = -s * c0
        return QSeries(tuple(v))

    def to_json_dict(self) -> dict:
        return AQSeries((self,)).to_json_dict()

    def __repr__(self) -> str:
        return f"QSeries({list(self.coeffs)})"


@dataclass(frozen=True)
class AQSeries:
    """Bivariate series ``sum_d rows[d](q) a**d`` on an (a_order+1) x (q_order+1) grid."""

    rows: tuple[QSeries, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.rows, tuple):
            object.__setattr__(self, "rows", tuple(self.rows))
        if not self.rows:
            raise ValueError("an AQSeries needs at least row 0")
        orders = {r.order for r in self.rows}
        if len(orders) != 1:
            raise ValueError(f"rows disagree on q-order: {sorted(orders)}")

    @classmethod
    def zero(cls, a_order: int, q_order: int) -> "AQSeries":
        z = QSeries.zero(q_order)
        return cls((z,) * (a_order + 1))

    @classmethod
    def one(cls, a_order: int, q_order: int) -> "AQSeries":
        return cls.monomial(0, 0, a_order, q_order)

    @classmethod
    def monomial(cls, d: int, e: int, a_order: int, q_order: int, coeff: int = 1) -> "AQSeries":
        z = QSeries.zero(q_order)
        rows = [z] * (a_order + 1)
        if 0 <= d <= a_order:
            rows[d] = QSeries.monomial(e, q_order, coeff)
        return cls(tuple(rows))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], a_order: int, q_order: int) -> "AQSeries":
        out = [QSeries.from_coeffs(r, q_order) for r in list(rows)[: a_order + 1]]
        out.extend([QSeries.zero(q_order)] * (a_order + 1 - len(out)))
        return cls(tuple(out))

    @classmethod
    def from_qseries(cls, u: QSeries, a_order: int) -> "AQSeries":
        """Embed a one-variable series as the a**0 row."""
        return cls((u,) + (QSeries.zero(u.order),) * a_order)

    @property
    def a_order(self) -> int:
        return len(self.rows) - 1

    @property
    def q_order(self) -> int:
        return self.rows[0].order

    def row(self, d: int) -> QSeries:
        return self.rows[d]

    def coeff(self, d: int, e: int) -> int:
        return self.rows[d].coeffs[e]

    def is_zero(self) -> bool:
        return all(r.is_zero() for r in self.rows)

    def truncate(self, a_order: int, q_order: int) -> "AQSeries":
        if a_order > self.a_order:
            raise ValueError(f"cannot extend a-order {self.a_order} to {a_order}")
        return AQSeries(tuple(r.truncate(q_order) for r in self.rows[: a_order + 1]))

    def _common(self, other: "AQSeries") -> tuple[int, int]:
        return min(self.a_order, other.a_order), min(self.q_order, other.q_order)

    def __add__(self, other: Union["AQSeries", int]) -> "AQSeries":
        if isinstance(other, int):
            return AQSeries((self.rows[0] + other,) + self.rows[1:])
        m, _ = self._common(other)
        return AQSeries(tuple(self.rows[d] + other.rows[d] for d in range(m + 1)))

    __radd__ = __add__

    def __neg__(self) -> "AQSeries":
        return AQSeries(tuple(-r for r in self.rows))

    def __sub__(self, other: Union["AQSeries", int]) -> "AQSeries":
        return self + (-other)

    def __rsub__(self, other: int) -> "AQSeries":
        return (-self) + other

    def __mul__(self, other: Union["AQSeries", QSeries, int]) -> "AQSeries":
        if isinstance(other, int):
            return AQSeries(tuple(r * other for r in self.rows))
        if isinstance(other, QSeries):
            return AQSeries(tuple(r * other for r in self.rows))
        m, n = self._common(other)
        u = [r.truncate(n) for r in self.rows[: m + 1]]
        v = [r.truncate(n) for r in other.rows[: m + 1]]
        out = []
        for d in range(m + 1):
            acc = QSeries.zero(n)
            for i in range(d + 1):
                if u[i].is_zero() or v[d - i].is_zero():
                    continue
                acc = acc + u[i] * v[d - i]
            out.append(acc)
        return AQSeries(tuple(out))

    __rmul__ = __mul__

    def shift(self, d: int, e: int) -> "AQSeries":
        """Multiply by the monomial ``a**d q**e``."""
        if d < 0 or e < 0:
            raise ValueError("negative shifts leave the ring")
        z = QSeries.zero(self.q_order)
        moved = [z] * min(d, self.a_order + 1) + [r.shift(e) for r in self.rows]
        return AQSeries(tuple(moved[: self.a_order + 1]))

    def scale_a(self, j: int) -> "AQSeries":
        """Substitute ``a -> a q**j``."""
        if j < 0:
            raise ValueError("j must be nonnegative")
        return AQSeries(tuple(r.shift(d * j) for d, r in enumerate(self.rows)))

    def invert(self) -> "AQSeries":
        # row recursion: v_0 = 1/u_0, v_d = -v_0 * sum_{i=1..d} u_i v_{d-i}
        try:
            v0 = self.rows[0].invert()
        except NotUnit as exc:
            raise NotUnit(f"constant cell is not a unit: {exc}") from None
        v = [v0]
        for d in range(1, self.a_order + 1):
            acc = QSeries.zero(self.q_order)
            for i in range(1, d + 1):
                if not self.rows[i].is_zero():
                    acc = acc + self.rows[i] * v[d - i]
            v.append(-(v0 * acc))
        return AQSeries(tuple(v))

    def at_a_equals_one(self) -> QSeries:
        """Sum the rows.  Exact only if rows beyond a_order vanish to q_order."""
        acc = QSeries.zero(self.q_order)
        for r in self.rows:
            acc = acc + r
        return acc

    def at_a_equals_q(self) -> QSeries:
        """Substitute ``a = q``, i.e. sum of ``rows[d] * q**d``."""
        acc = QSeries.zero(self.q_order)
        for d, r in enumerate(self.rows):
            acc = acc + r.shift(d)
        return acc

    def first_difference(self, other: "AQSeries") -> tuple[int, int, int, int] | None:
        """First grid cell ``(d, e, mine, theirs)`` where the two disagree on the common grid."""
        m, n = self._common(other)
        for d in range(m + 1):
            a, b = self.rows[d].coeffs, other.rows[d].coeffs
            for e in range(n + 1):
                if a[e] != b[e]:
                    return d, e, a[e], b[e]
        return None

    def to_json_dict(self) -> dict:
        return {
            "a_order": self.a_order,
            "q_order": self.q_order,
            "rows": [[str(c) for c in r.coeffs] for r in self.rows],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "AQSeries":
        rows = [[int(c) for c in r] for r in data["rows"]]
        out = cls.from_rows(rows, data["a_order"], data["q_order"])
        if len(rows) != out.a_order + 1 or any(len(r) != out.q_order + 1 for r in rows):
            raise ValueError("grid shape does not match a_order/q_order")
        return out

    def __repr__(self) -> str:
        return f"AQSeries(a_order={self.a_order}, q_order={self.q_order}, rows={[list(r.coeffs) for r in self.rows]})"


def qs_add(u: QSeries, v: QSeries) -> QSeries:
    return u + v


def qs_mul(u: QSeries, v: QSeries) -> QSeries:
    return u * v


def qs_invert(u: QSeries) -> QSeries:
    return u.invert()


def qs_poch(k: int, order: int) -> QSeries:
    """The finite product (q;q)_k = (1-q)(1-q^2)...(1-q^k)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = QSeries.one(order)
    for i in range(1, k + 1):
        if i > order:
            break
        out = out - out.shift(i)
    return out


def qs_poch_inf(order: int) -> QSeries:
    """(q;q)_infinity truncated."""
    return qs_poch(order, order)


def aq_poch_inf(d: int, e: int, a_order: int, q_order: int) -> AQSeries:
    """(a^d q^e; q)_infinity on the truncated grid."""
    if d < 0 or e < 0:
        raise ValueError("exponents must be nonnegative")
    if d == 0 and e == 0:
        raise Divergent("(1;q)_infinity is the product of (1-1)(1-q)...")
    out = AQSeries.one(a_order, q_order)
    if d > a_order:
        return out
    for i in range(e, q_order + 1):
        out = out - out.shift(d, i)
    return out


def aq_scale_a(u: AQSeries, j: int) -> AQSeries:
    return u.scale_a(j)


def _qpoch_row(k: int, a_order: int, q_order: int) -> AQSeries:
    return AQSeries.from_qseries(qs_poch(k, q_order), a_order)


def watson_term(k: int, a_order: int, q_order: int) -> AQSeries:
    """k-th summand of the Watson left side, sign included.

    (-1)^k (1 - a q^{2k}) a^{2k} q^{k(5k-1)/2} / ((q;q)_k (a q^k;q)_inf)
    """
    e = k * (5 * k - 1) // 2
    if 2 * k > a_order or e > q_order:
        return AQSeries.zero(a_order, q_order)
    head = AQSeries.monomial(2 * k, e, a_order, q_order, (-1) ** k)
    numer = head - head.shift(1, 2 * k)
    denom = aq_poch_inf(1, k, a_order, q_order) * qs_poch(k, q_order)
    return numer * denom.invert()


def watson_lhs(a_order: int, q_order: int) -> AQSeries:
    out = AQSeries.zero(a_order, q_order)
    k = 0
    while 2 * k <= a_order and k * (5 * k - 1) // 2 <= q_order:
        out = out + watson_term(k, a_order, q_order)
        k += 1
    return out


def watson_rhs(a_order: int, q_order: int) -> AQSeries:
    """Rows ``q^{n^2} / (q;q)_n``."""
    rows = []
    for n in range(a_order + 1):
        if n * n > q_order:
            rows.append(QSeries.zero(q_order))
        else:
            rows.append(qs_poch(n, q_order).invert().shift(n * n))
    return AQSeries(tuple(rows))


def sylvester_term(k: int, x_order: int, q_order: int) -> AQSeries:
    """k-th summand of the Sylvester left side; the a-axis carries x.

    (-1)^k q^{k(3k+1)/2} x^k (1 - x q^{2k+1}) / ((q;q)_k (x q^{k+1};q)_inf)
    """
    e = k * (3 * k + 1) // 2
    if k > x_order or e > q_order:
        return AQSeries.zero(x_order, q_order)
    head = AQSeries.monomial(k, e, x_order, q_order, (-1) ** k)
    numer = head - head.shift(1, 2 * k + 1)
    denom = aq_poch_inf(1, k + 1, x_order, q_order) * qs_poch(k, q_order)
    return numer * denom.invert()


def sylvester_lhs(x_order: int, q_order: int) -> AQSeries:
    out = AQSeries.zero(x_order, q_order)
    k = 0
    while k <= x_order and k * (3 * k + 1) // 2 <= q_order:
        out = out + sylvester_term(k, x_order, q_order)
        k += 1
    return out


def schur_bilateral(order: int) -> QSeries:
    """sum over all integers k of (-1)^k q^{k(5k-1)/2}."""
    vals = [0] * (order + 1)
    k = 0
    while k * (5 * k - 1) // 2 <= order:
        for j in {k, -k}:
            e = j * (5 * j - 1) // 2
            if e <= order:
                vals[e] += (-1) ** k
        k += 1
    return QSeries(tuple(vals))


def rr_product(which: int, order: int) -> QSeries:
    """Modulus-5 product side of the first (which=1) or second (which=2) Rogers-Ramanujan identity."""
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    residues = {1, 4} if which == 1 else {2, 3}
    denom = QSeries.one(order)
    for j in range(1, order + 1):
        if j % 5 in residues:
            denom = denom - denom.shift(j)
    return denom.invert()


def rr_sum(which: int, order: int) -> QSeries:
    """sum_n q^{n^2 + (which-1) n} / (q;q)_n."""
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    acc = QSeries.zero(order)
    n = 0
    while n * n + (which - 1) * n <= order:
        acc = acc + qs_poch(n, order).invert().shift(n * n + (which - 1) * n)
        n += 1
    return acc


def gauss_lhs(n: int, order: int) -> QSeries:
    """sum_{k=0}^n (-1)^k / ((q;q)_k (q;q)_{n-k})."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    acc = QSeries.zero(order)
    for k in range(n + 1):
        term = (qs_poch(k, order) * qs_poch(n - k, order)).invert()
        acc = acc + term * (-1) ** k
    return acc


def gauss_rhs(n: int, order: int) -> QSeries:
    """0 for odd n, 1/((1-q^2)(1-q^4)...(1-q^n)) for even n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n % 2:
        return QSeries.zero(order)
    denom = QSeries.one(order)
    for j in range(2, n + 1, 2):
        denom = denom - denom.shift(j)
    return denom.invert()
