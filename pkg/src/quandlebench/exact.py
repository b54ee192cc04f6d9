"""Exact arithmetic: rationals, the quadratic field Q(sqrt 5), Eisenstein
integers, and small matrices over Q(sqrt 5).

Rationals are :class:`fractions.Fraction`; nothing in this module touches
floating point except :meth:`QSqrt5.__float__`, which is for display only.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from functools import total_ordering
from math import isqrt
from typing import Iterable, Sequence, Union

Rational = Fraction
RationalLike = Union[int, Fraction]


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@total_ordering
class QSqrt5:
    """The number ``a + b*sqrt(5)`` with rational ``a`` and ``b``.

    Stored as integers ``(p + q*sqrt5) / d`` with ``d > 0`` and
    ``gcd(p, q, d) == 1``; the rational coordinates are exposed as
    :attr:`a` and :attr:`b`.
    """

    __slots__ = ("_p", "_q", "_d")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0):
        a, b = Fraction(a), Fraction(b)
        d = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        self._set(a.numerator * (d // a.denominator), b.numerator * (d // b.denominator), d)

    def _set(self, p: int, q: int, d: int) -> None:
        g = gcd(p, q, d)
        if d < 0:
            g = -g
        self._p, self._q, self._d = p // g, q // g, d // g

    @classmethod
    def _raw(cls, p: int, q: int, d: int) -> QSqrt5:
        obj = cls.__new__(cls)
        obj._set(p, q, d)
        return obj

    @property
    def a(self) -> Fraction:
        return Fraction(self._p, self._d)

    @property
    def b(self) -> Fraction:
        return Fraction(self._q, self._d)

    @classmethod
    def coerce(cls, x: QSqrt5 | RationalLike) -> QSqrt5:
        if isinstance(x, QSqrt5):
            return x
        if isinstance(x, int):
            return cls._raw(x, 0, 1)
        if isinstance(x, Fraction):
            return cls._raw(x.numerator, 0, x.denominator)
        raise TypeError(f"cannot coerce {type(x).__name__} into QSqrt5")

    def __add__(self, other):
        try:
            o = QSqrt5.coerce(other)
        except TypeError:
            return NotImplemented
        if self._d == o._d:
            return QSqrt5._raw(self._p + o._p, self._q + o._q, self._d)
        return QSqrt5._raw(self._p * o._d + o._p * self._d, self._q * o._d + o._q * self._d, self._d * o._d)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt5._raw(-self._p, -self._q, self._d)

    def __sub__(self, other):
        try:
            o = QSqrt5.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = QSqrt5.coerce(other)
        except TypeError:
            return NotImplemented
        p1, q1, p2, q2 = self._p, self._q, o._p, o._q
        return QSqrt5._raw(p1 * p2 + 5 * q1 * q2, p1 * q2 + q1 * p2, self._d * o._d)

    __rmul__ = __mul__

    def conjugate(self) -> QSqrt5:
        """Galois conjugate ``a - b*sqrt(5)``."""
        return QSqrt5._raw(self._p, -self._q, self._d)

    def norm(self) -> Fraction:
        return Fraction(self._p * self._p - 5 * self._q * self._q, self._d * self._d)

    def inverse(self) -> QSqrt5:
        n = self._p * self._p - 5 * self._q * self._q
        if n == 0:
            # the norm form has no nontrivial zeros since 5 is not a square
            raise ZeroDivisionError("inverse of zero in Q(sqrt 5)")
        # d / (p + q sqrt5) = d (p - q sqrt5) / n
        return QSqrt5._raw(self._d * self._p, -self._d * self._q, n)

    def __truediv__(self, other):
        try:
            o = QSqrt5.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return QSqrt5.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def sign(self) -> int:
        """Exact sign, decided by comparing ``a**2`` with ``5*b**2``."""
        p, q = self._p, self._q
        sa = (p > 0) - (p < 0)
        sb = (q > 0) - (q < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: the bigger square wins
        return sa if p * p > 5 * q * q else sb

    def __eq__(self, other):
        if isinstance(other, QSqrt5):
            return self._p == other._p and self._q == other._q and self._d == other._d
        try:
            o = QSqrt5.coerce(other)
        except TypeError:
            return NotImplemented
        return self == o

    def __hash__(self):
        if self._q == 0:
            return hash(Fraction(self._p, self._d))
        return hash((self._p, self._q, self._d))

    def __lt__(self, other):
        try:
            o = QSqrt5.coerce(other)
        except TypeError:
            return NotImplemented
        return (self - o).sign() < 0

    def __bool__(self):
        return bool(self._p) or bool(self._q)

    def __reduce__(self):
        return (QSqrt5, (self.a, self.b))

    def sqrt(self) -> QSqrt5:
        """Exact square root inside Q(sqrt 5); raises ValueError otherwise."""
        if not self:
            return ZERO
        if self.sign() < 0:
            raise ValueError(f"{self} is negative")
        if self.b == 0:
            r = _rational_sqrt(self.a)
            if r is not None:
                return QSqrt5(r)
            r = _rational_sqrt(self.a / 5)
            if r is not None:
                return QSqrt5(0, r)
            raise ValueError(f"{self} has no square root in Q(sqrt 5)")
        # (p + q sqrt5)^2 = a + b sqrt5  =>  p^2 + 5 q^2 = a, 2pq = b
        # p^2 solves t^2 - a t + 5 b^2/4 = 0
        disc = _rational_sqrt(self.norm())
        if disc is not None:
            for p2 in ((self.a + disc) / 2, (self.a - disc) / 2):
                p = _rational_sqrt(p2)
                if p:
                    cand = QSqrt5(p, self.b / (2 * p))
                    if cand.sign() < 0:
                        cand = -cand
                    if cand * cand == self:
                        return cand
        raise ValueError(f"{self} has no square root in Q(sqrt 5)")

    def __float__(self):
        return float(self.a) + float(self.b) * 5 ** 0.5

    def __repr__(self):
        return f"QSqrt5({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt5"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*sqrt5"

    def to_json(self) -> list[str]:
        return [str(self.a), str(self.b)]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> QSqrt5:
        return cls(Fraction(data[0]), Fraction(data[1]))


ZERO = QSqrt5(0, 0)
ONE = QSqrt5(1, 0)
SQRT5 = QSqrt5(0, 1)
PHI = QSqrt5(Fraction(1, 2), Fraction(1, 2))
PHI_INV = PHI - 1


@dataclass(frozen=True, order=True)
class Eisenstein:
    """``a + b*zeta`` where zeta is a primitive 6th root of unity,
    ``zeta**2 = zeta - 1``."""

    a: int = 0
    b: int = 0

    @classmethod
    def coerce(cls, x: Eisenstein | int) -> Eisenstein:
        if isinstance(x, Eisenstein):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {type(x).__name__} into Eisenstein")

    def __add__(self, other):
        try:
            o = Eisenstein.coerce(other)
        except TypeError:
            return NotImplemented
        return Eisenstein(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Eisenstein(-self.a, -self.b)

    def __sub__(self, other):
        try:
            o = Eisenstein.coerce(other)
        except TypeError:
            return NotImplemented
        return Eisenstein(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = Eisenstein.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.a, self.b, o.a, o.b
        return Eisenstein(a * c - b * d, a * d + b * c + b * d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if self.norm() != 1:
                raise ZeroDivisionError(f"{self} is not a unit")
            return self.conjugate() ** (-k)
        result, base = Eisenstein(1, 0), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> Eisenstein:
        # conj(zeta) = zeta**5 = 1 - zeta
        return Eisenstein(self.a + self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a + self.a * self.b + self.b * self.b

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"Eisenstein({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        zeta = "zeta" if abs(self.b) == 1 else f"{abs(self.b)}*zeta"
        if self.a == 0:
            return zeta if self.b > 0 else f"-{zeta}"
        return f"{self.a}{'+' if self.b > 0 else '-'}{zeta}"


ZETA = Eisenstein(0, 1)
ZETA_INV = ZETA.conjugate()


Vector = tuple  # tuple of QSqrt5


def vector(entries: Iterable) -> Vector:
    return tuple(QSqrt5.coerce(x) for x in entries)


def dot(u: Vector, v: Vector) -> QSqrt5:
    if len(u) != len(v):
        raise ValueError("dimension mismatch")
    total = ZERO
    for x, y in zip(u, v):
        total = total + x * y
    return total


def sub(u: Vector, v: Vector) -> Vector:
    return tuple(x - y for x, y in zip(u, v))


def scale(c, v: Vector) -> Vector:
    c = QSqrt5.coerce(c)
    return tuple(c * x for x in v)


class ExactMatrix:
    """A square matrix (dimension 3 or 4) with entries in Q(sqrt 5)."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(QSqrt5.coerce(x) for x in row) for row in rows)
        n = len(rows)
        if n not in (3, 4) or any(len(r) != n for r in rows):
            raise ValueError("ExactMatrix must be 3x3 or 4x4")
        self.rows = rows
        self._hash = hash(rows)

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def permutation(cls, perm: Sequence[int], signs: Sequence[int] | None = None) -> ExactMatrix:
        """Matrix sending basis vector ``e_j`` to ``signs[j] * e_{perm[j]}``."""
        n = len(perm)
        signs = signs or [1] * n
        rows = [[ZERO] * n for _ in range(n)]
        for j, i in enumerate(perm):
            rows[i][j] = QSqrt5(signs[j])
        return cls(rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.rows == other.rows

    def __hash__(self):
        return self._hash

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if other.dim != self.dim:
                raise ValueError("dimension mismatch")
            cols = list(zip(*other.rows))
            return ExactMatrix([[dot(r, c) for c in cols] for r in self.rows])
        v = tuple(other)
        if len(v) != self.dim:
            raise ValueError("dimension mismatch")
        return tuple(dot(r, v) for r in self.rows)

    def apply(self, v: Vector) -> Vector:
        return self @ v

    def __mul__(self, c):
        c = QSqrt5.coerce(c)
        return ExactMatrix([[c * x for x in r] for r in self.rows])

    __rmul__ = __mul__

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        return ExactMatrix([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(zip(*self.rows))

    T = property(transpose)

    def determinant(self) -> QSqrt5:
        # fraction-free enough at n <= 4: cofactor expansion
        return _det(self.rows)

    def is_orthogonal(self) -> bool:
        return self.T @ self == ExactMatrix.identity(self.dim)

    def is_special_orthogonal(self) -> bool:
        return self.is_orthogonal() and self.determinant() == ONE

    def __pow__(self, k: int) -> ExactMatrix:
        if k < 0:
            if not self.is_orthogonal():
                raise ValueError("negative powers only for orthogonal matrices")
            return self.T ** (-k)
        result, base = ExactMatrix.identity(self.dim), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def order(self, limit: int = 1000) -> int:
        ident = ExactMatrix.identity(self.dim)
        m = self
        for k in range(1, limit + 1):
            if m == ident:
                return k
            m = m @ self
        raise ValueError(f"order exceeds {limit}")

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"ExactMatrix[{body}]"


def _det(rows) -> QSqrt5:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = ZERO
    for j, x in enumerate(rows[0]):
        if not x:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = x * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total
