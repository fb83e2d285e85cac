"""Exact integer model of H_1(T^2) = Z^2 and the Dehn twist action on it.

Curves on the torus are unoriented, so a curve is stored as the canonical
representative of a +/- pair of primitive vectors: second coordinate
positive, or second coordinate zero and first coordinate positive.

The right-handed twist about ``x`` acts on homology by::

    T_x(v) = v + <x, v> x,      <x, v> = det[x | v]

so on the standard basis T_(1,0) = [[1, 1], [0, 1]] and
T_(0,1) = [[1, 0], [-1, 1]].  All arithmetic is on Python ints, so nothing
overflows however far a slide or a reduction pushes the coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Tuple, Union

from .errors import NonPrimitive, NotUnimodular, SameCurve, ZeroVector

HVector = Tuple[int, int]
VectorLike = Union["Curve", HVector]


def _vec(v: VectorLike) -> HVector:
    if isinstance(v, Curve):
        return (v.a, v.b)
    a, b = v
    return (int(a), int(b))


def ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True, order=True)
class Curve:
    """An essential simple closed curve, as a canonical primitive vector."""

    a: int
    b: int

    def __post_init__(self):
        if self.a == 0 and self.b == 0:
            raise ZeroVector("(0, 0) is not a curve class")
        if gcd(self.a, self.b) != 1:
            raise NonPrimitive(f"({self.a}, {self.b}) is not primitive")
        if not (self.b > 0 or (self.b == 0 and self.a > 0)):
            raise ValueError(
                f"({self.a}, {self.b}) is not the canonical sign; use curve_from_vector"
            )

    @property
    def vector(self) -> HVector:
        return (self.a, self.b)

    def to_json(self):
        return [self.a, self.b]

    def __repr__(self):
        return f"Curve({self.a}, {self.b})"


def curve_from_vector(v: VectorLike) -> Curve:
    """Canonical curve of the class +/-v.

    >>> curve_from_vector((11, -3))
    Curve(-11, 3)
    """
    a, b = _vec(v)
    if a == 0 and b == 0:
        raise ZeroVector("(0, 0) is not a curve class")
    if gcd(a, b) != 1:
        raise NonPrimitive(f"({a}, {b}) is not primitive")
    if b < 0 or (b == 0 and a < 0):
        a, b = -a, -b
    return Curve(a, b)


def curve(a: int, b: int) -> Curve:
    return curve_from_vector((a, b))


def algebraic_intersection(x: VectorLike, y: VectorLike) -> int:
    (x1, x2), (y1, y2) = _vec(x), _vec(y)
    return x1 * y2 - x2 * y1


def geometric_intersection(x: VectorLike, y: VectorLike) -> int:
    return abs(algebraic_intersection(x, y))


def intersection(x: VectorLike, y: VectorLike) -> Tuple[int, int]:
    """``(algebraic, geometric)`` intersection numbers of two curves."""
    alg = algebraic_intersection(x, y)
    return alg, abs(alg)


def twist_apply(x: VectorLike, k: int, v: VectorLike) -> HVector:
    """Image of ``v`` under the k-th power of the twist about ``x``."""
    x1, x2 = _vec(x)
    v1, v2 = _vec(v)
    c = k * (x1 * v2 - x2 * v1)
    return (v1 + c * x1, v2 + c * x2)


@dataclass(frozen=True)
class Mat2:
    """Element of SL(2, Z), stored row-major as [[m11, m12], [m21, m22]]."""

    m11: int
    m12: int
    m21: int
    m22: int

    def __post_init__(self):
        if self.m11 * self.m22 - self.m12 * self.m21 != 1:
            raise NotUnimodular(f"determinant of {self.rows()} is not 1")

    @classmethod
    def identity(cls) -> "Mat2":
        return _IDENTITY

    @classmethod
    def from_rows(cls, rows) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    @classmethod
    def from_tuple(cls, t) -> "Mat2":
        return cls(*t)

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.m11, self.m12, self.m21, self.m22)

    def rows(self):
        return [[self.m11, self.m12], [self.m21, self.m22]]

    to_json = rows

    def det(self) -> int:
        return self.m11 * self.m22 - self.m12 * self.m21

    def __matmul__(self, other):
        if isinstance(other, Mat2):
            return Mat2(
                self.m11 * other.m11 + self.m12 * other.m21,
                self.m11 * other.m12 + self.m12 * other.m22,
                self.m21 * other.m11 + self.m22 * other.m21,
                self.m21 * other.m12 + self.m22 * other.m22,
            )
        v1, v2 = _vec(other)
        return (self.m11 * v1 + self.m12 * v2, self.m21 * v1 + self.m22 * v2)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.m11, -self.m12, -self.m21, -self.m22)

    def inverse(self) -> "Mat2":
        return Mat2(self.m22, -self.m12, -self.m21, self.m11)

    def __pow__(self, n: int) -> "Mat2":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = _IDENTITY
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def is_identity(self) -> bool:
        return self.as_tuple() == (1, 0, 0, 1)

    def mod(self, s: int) -> Tuple[int, int, int, int]:
        return tuple(e % s for e in self.as_tuple())

    def act_on_curve(self, c: VectorLike) -> Curve:
        return curve_from_vector(self @ _vec(c))


_IDENTITY = Mat2(1, 0, 0, 1)
IOTA = Mat2(-1, 0, 0, -1)


def twist_matrix(x: VectorLike, k: int = 1) -> Mat2:
    """Matrix of T_x^k: I + k * x * (x^perp)^T with x^perp = (-x2, x1)."""
    x1, x2 = _vec(x)
    return Mat2(1 - k * x1 * x2, k * x1 * x1, -k * x2 * x2, 1 + k * x1 * x2)


@dataclass(frozen=True)
class TwistPower:
    """T_curve^power with power >= 1."""

    curve: Curve
    power: int = 1

    def __post_init__(self):
        if not isinstance(self.curve, Curve):
            object.__setattr__(self, "curve", curve_from_vector(self.curve))
        if int(self.power) < 1:
            raise ValueError("twist exponent must be positive; negate or drop it first")

    def matrix(self, sign: int = 1) -> Mat2:
        return twist_matrix(self.curve, sign * self.power)

    def to_json(self):
        return {"curve": self.curve.to_json(), "power": self.power}

    @classmethod
    def from_json(cls, obj) -> "TwistPower":
        return cls(curve_from_vector(obj["curve"]), int(obj.get("power", 1)))


def normalize_twist_exponents(pairs: Iterable[Tuple[VectorLike, int]]):
    """Turn (curve, integer exponent) pairs into TwistPowers.

    T^-s generates the same cyclic group as T^s and T^0 contributes nothing,
    so negative exponents are flipped and zero exponents dropped.
    """
    out = []
    for v, k in pairs:
        if k == 0:
            continue
        out.append(TwistPower(curve_from_vector(v), abs(int(k))))
    return out


@dataclass(frozen=True)
class PairNormalization:
    """Change of coordinates putting a pair of curves in normal form.

    ``transform = twist_matrix((1, 0), tpower) @ matrix`` sends ``x`` to
    ``x_prime = (1, 0)`` and ``y`` to +/- ``y_prime``, where
    ``y_prime = (a, n)`` with ``0 < a < n`` when ``n = geo(x, y) >= 2`` and
    ``y_prime = (0, 1)`` when ``n = 1``.
    """

    matrix: Mat2
    tpower: int
    x_prime: Curve
    y_prime: Curve

    @property
    def transform(self) -> Mat2:
        return twist_matrix((1, 0), self.tpower) @ self.matrix

    def apply(self, c: VectorLike) -> Curve:
        return self.transform.act_on_curve(c)


def normalize_pair(x: VectorLike, y: VectorLike) -> PairNormalization:
    x = curve_from_vector(x)
    y = curve_from_vector(y)
    if x == y:
        raise SameCurve(f"{x} and {y} are the same curve")
    p, q = x.vector
    # basis (x, (u, v)) of Z^2 with p*v - q*u = 1
    _, s, t = ext_gcd(p, q)
    u, v = -t, s
    m = Mat2(v, -u, -q, p)
    c, n = m @ y.vector
    if n < 0:
        c, n = -c, -n
    k = (c % n - c) // n
    return PairNormalization(m, k, Curve(1, 0), Curve(c + k * n, n))
