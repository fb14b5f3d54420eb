"""
Exact arithmetic in Q(sqrt 5).

Quad5(p, r) is p + r*sqrt(5) with rational p and r. Signs are decided
without floating point: when p and r disagree in sign the larger of p^2
and 5r^2 decides.
"""

import math
from fractions import Fraction
from numbers import Rational
from typing import Any, Dict, Union

import numpy as np

SQRT5_FLOAT = math.sqrt(5.0)
SIGN_ARRAY_LIMIT = 10**9  # 6 * limit^2 < 2^63

RationalLike = Union[int, Fraction]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def quad_sign(p, r) -> int:
    """Exact sign of p + r*sqrt(5) for rational p, r."""
    sp, sr = _sign(p), _sign(r)
    if sp == 0:
        return sr
    if sr == 0 or sp == sr:
        return sp
    # mixed signs; p^2 = 5 r^2 only for p = r = 0
    return sp if p * p > 5 * r * r else sr


class Quad5:
    """Immutable element p + r*sqrt(5) of Q(sqrt 5)."""

    __slots__ = ("_p", "_r")

    def __init__(self, p: RationalLike = 0, r: RationalLike = 0):
        if isinstance(p, float) or isinstance(r, float):
            raise TypeError("Quad5 components must be rational, not float")
        object.__setattr__(self, "_p", Fraction(p))
        object.__setattr__(self, "_r", Fraction(r))

    def __setattr__(self, name, value):
        raise AttributeError("Quad5 is immutable")

    def __reduce__(self):
        return (Quad5, (self._p, self._r))

    @property
    def p(self) -> Fraction:
        return self._p

    @property
    def r(self) -> Fraction:
        return self._r

    @classmethod
    def coerce(cls, x) -> "Quad5":
        if isinstance(x, Quad5):
            return x
        if isinstance(x, Rational) and not isinstance(x, bool):
            return cls(x, 0)
        raise TypeError(f"cannot use {type(x).__name__} as an exact Q(sqrt 5) value")

    def is_rational(self) -> bool:
        return self._r == 0

    def conjugate(self) -> "Quad5":
        return Quad5(self._p, -self._r)

    def norm(self) -> Fraction:
        """p^2 - 5 r^2"""
        return self._p * self._p - 5 * self._r * self._r

    def sign(self) -> int:
        return quad_sign(self._p, self._r)

    # arithmetic

    def __add__(self, other):
        try:
            o = Quad5.coerce(other)
        except TypeError:
            return NotImplemented
        return Quad5(self._p + o._p, self._r + o._r)

    __radd__ = __add__

    def __neg__(self):
        return Quad5(-self._p, -self._r)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = Quad5.coerce(other)
        except TypeError:
            return NotImplemented
        return Quad5(self._p - o._p, self._r - o._r)

    def __rsub__(self, other):
        try:
            o = Quad5.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = Quad5.coerce(other)
        except TypeError:
            return NotImplemented
        return Quad5(
            self._p * o._p + 5 * self._r * o._r,
            self._p * o._r + self._r * o._p,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = Quad5.coerce(other)
        except TypeError:
            return NotImplemented
        if o._r == 0:
            if o._p == 0:
                raise ZeroDivisionError("division by zero in Q(sqrt 5)")
            return Quad5(self._p / o._p, self._r / o._p)
        n = o.norm()
        num = self * o.conjugate()
        return Quad5(num._p / n, num._r / n)

    def __rtruediv__(self, other):
        try:
            o = Quad5.coerce(other)
        except TypeError:
            return NotImplemented
        return o / self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # comparisons

    def _cmp(self, other):
        try:
            o = Quad5.coerce(other)
        except TypeError:
            return None
        return (self - o).sign()

    def __eq__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __hash__(self):
        if self._r == 0:
            return hash(self._p)
        return hash((self._p, self._r))

    def __bool__(self):
        return self._p != 0 or self._r != 0

    def __float__(self):
        return float(self._p) + float(self._r) * SQRT5_FLOAT

    def __repr__(self):
        return f"Quad5({self._p}, {self._r})"

    def __str__(self):
        if self._r == 0:
            return str(self._p)
        return f"{self._p} + {self._r}*sqrt5"

    def to_json(self) -> Dict[str, Any]:
        return {
            "provenance": "exact",
            "p": str(self._p),
            "r": str(self._r),
            "decimal": float(self),
        }


SQRT5 = Quad5(0, 1)
ZERO = Quad5(0, 0)


def fits_int64_signs(*arrays: np.ndarray) -> bool:
    """True when every entry is at most SIGN_ARRAY_LIMIT in magnitude."""
    for arr in arrays:
        arr = np.asarray(arr)
        if arr.size == 0:
            continue
        if arr.dtype == object:
            if max(abs(int(x)) for x in arr.flat) > SIGN_ARRAY_LIMIT:
                return False
        elif int(np.abs(arr).max()) > SIGN_ARRAY_LIMIT:
            return False
    return True


def sign_array(P: np.ndarray, R: np.ndarray) -> np.ndarray:
    """
    Elementwise exact sign of P + R*sqrt(5) for integer arrays.

    Entries up to SIGN_ARRAY_LIMIT take the int64 path; larger entries,
    or object arrays of Python ints, are decided one by one with
    quad_sign.
    """
    if not fits_int64_signs(P, R):
        signs = np.frompyfunc(lambda p, r: quad_sign(int(p), int(r)), 2, 1)(P, R)
        return np.asarray(signs, dtype=np.int8)
    P = np.asarray(P).astype(np.int64)
    R = np.asarray(R).astype(np.int64)
    sp = np.sign(P)
    sr = np.sign(R)
    dominant = np.sign(P * P - 5 * R * R)
    mixed = sp * sr < 0
    same = np.where(sp != 0, sp, sr)
    return np.where(mixed, np.where(dominant > 0, sp, sr), same).astype(np.int8)


def exact_sqrt(x: Fraction):
    """Square root of a non-negative rational if it is rational, else None."""
    x = Fraction(x)
    if x < 0:
        return None
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None
