"""Scalar backends.

Two backends share one interface:

* exact: numpy object arrays of :class:`GaussianRational`
* float: numpy ``complex128`` arrays, governed by a :class:`ToleranceConfig`

A matrix's backend is read off its dtype; a computation never mixes the two.
"""
from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

EXACT = "exact"
FLOAT = "float"


def _frac(x):
    if type(x) is Fraction:
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (numbers.Rational, float, np.integer, np.floating)):
        return Fraction(x) if not isinstance(x, (np.integer, np.floating)) else Fraction(x.item())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class GaussianRational:
    """Element ``re + im*i`` of Q(i) with arbitrary-precision parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            re, im = re.re, re.im + _frac(im)
        elif isinstance(re, (complex, np.complexfloating)):
            re, im = Fraction(re.real), Fraction(re.imag) + _frac(im)
        self.re = _frac(re)
        self.im = _frac(im)

    @classmethod
    def _raw(cls, re, im):
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction, np.integer)):
            return GaussianRational._raw(Fraction(int(other)) if not isinstance(other, Fraction) else other,
                                         Fraction(0))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.im:
            return GaussianRational._raw(self.re * o.re, self.im * o.re)
        if not self.im:
            return GaussianRational._raw(self.re * o.re, self.re * o.im)
        return GaussianRational._raw(self.re * o.re - self.im * o.im,
                                     self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.im:
            return GaussianRational._raw(self.re / o.re, self.im / o.re)
        d = o.re * o.re + o.im * o.im
        return GaussianRational._raw((self.re * o.re + self.im * o.im) / d,
                                     (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (1 / self) ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (complex, float)):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self):
        return GaussianRational._raw(self.re, -self.im)

    def norm(self):
        """Field norm ``re**2 + im**2`` (a non-negative Fraction)."""
        return self.re * self.re + self.im * self.im

    def sort_key(self):
        return (self.re, self.im)

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


ZERO = GaussianRational._raw(Fraction(0), Fraction(0))
ONE = GaussianRational._raw(Fraction(1), Fraction(0))
I = GaussianRational._raw(Fraction(0), Fraction(1))


@dataclass(frozen=True)
class ToleranceConfig:
    """Thresholds used by the float backend.

    Rank decisions count singular values ``>= rank_rel_tol * sigma_max``.
    """

    rank_rel_tol: float = 1e-9
    eig_tol: float = 1e-9
    flow_drift_tol: float = 1e-6

    def __post_init__(self):
        for name in ("rank_rel_tol", "eig_tol", "flow_drift_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


DEFAULT_TOL = ToleranceConfig()


def gq(re=0, im=0) -> GaussianRational:
    """Shorthand constructor for exact scalars."""
    return GaussianRational(re, im)


def is_exact(a) -> bool:
    if isinstance(a, np.ndarray):
        return a.dtype == object
    return isinstance(a, GaussianRational)


def backend_of(*arrays) -> str:
    kinds = {EXACT if is_exact(a) else FLOAT for a in arrays}
    if len(kinds) > 1:
        raise TypeError("cannot mix exact and float operands")
    return kinds.pop() if kinds else FLOAT


def to_exact(a) -> np.ndarray:
    """Exact object array from numbers, strings, Fractions or complex values."""
    arr = np.asarray(a, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = x if isinstance(x, GaussianRational) else GaussianRational(x)
    return out


def to_float(a) -> np.ndarray:
    arr = np.asarray(a)
    if arr.dtype == object:
        out = np.empty(arr.shape, dtype=complex)
        for idx, x in np.ndenumerate(arr):
            out[idx] = complex(x)
        return out
    return arr.astype(complex)


def convert(a, backend: str) -> np.ndarray:
    return to_exact(a) if backend == EXACT else to_float(a)


def scalar(x, backend: str):
    return GaussianRational(x) if backend == EXACT else complex(x)


def zeros(shape, backend: str) -> np.ndarray:
    if backend == EXACT:
        out = np.empty(shape, dtype=object)
        out.fill(ZERO)
        return out
    return np.zeros(shape, dtype=complex)


def eye(n: int, backend: str) -> np.ndarray:
    out = zeros((n, n), backend)
    for i in range(n):
        out[i, i] = ONE if backend == EXACT else 1.0
    return out


def is_zero(x) -> bool:
    if isinstance(x, GaussianRational):
        return not x
    return x == 0
