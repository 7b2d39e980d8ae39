"""Truncated Taylor series (jets) in one and two variables.

Jets carry exact derivative data: coefficient m of a ``Series1`` is
f^(m)(base)/m!, and entry (m, n) of a ``Series2`` is the mixed Taylor
coefficient at the base point.  Arithmetic truncates to the smallest order
among the operands, so every coefficient that survives is exact up to
rounding.  They are used to evaluate high-order mixed partial derivatives of
the hyperbolic kernels without finite differencing.

The module also provides ``sh``/``ch``/``sh2``: hyperbolic evaluation that
dispatches on the argument type (jet, mpmath number, or machine complex), so
the same formula code runs at any precision and on jets.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import DivisionBySingularSeries, OrderExceeded
from .numutil import is_mp

DIVISION_TOL = 1e-14

_SCALARS = (int, float, complex, np.integer, np.floating, np.complexfloating)


def _conv_trunc(a: np.ndarray, b: np.ndarray, k: int) -> np.ndarray:
    """First k+1 coefficients of the product of two coefficient rows."""
    return np.convolve(a[: k + 1], b[: k + 1])[: k + 1]


def _sinh_cosh_coeffs(f: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """sinh and cosh of a 1-d coefficient row, via the coupled ODE recurrence.

    With u = sinh(f), v = cosh(f): u' = f'v and v' = f'u, which gives
    m*u_m = sum_{j=1..m} j f_j v_{m-j} (and the same with u, v swapped).
    """
    k = len(f) - 1
    s = np.zeros(k + 1, dtype=complex)
    c = np.zeros(k + 1, dtype=complex)
    s[0] = cmath.sinh(complex(f[0]))
    c[0] = cmath.cosh(complex(f[0]))
    df = np.arange(k + 1) * f
    for m in range(1, k + 1):
        s[m] = np.dot(df[1 : m + 1], c[m - 1 :: -1]) / m
        c[m] = np.dot(df[1 : m + 1], s[m - 1 :: -1]) / m
    return s, c


def _exp_coeffs(f: np.ndarray) -> np.ndarray:
    k = len(f) - 1
    e = np.zeros(k + 1, dtype=complex)
    e[0] = cmath.exp(complex(f[0]))
    df = np.arange(k + 1) * f
    for m in range(1, k + 1):
        e[m] = np.dot(df[1 : m + 1], e[m - 1 :: -1]) / m
    return e


class Series1:
    """Jet of one variable: coeffs[m] = f^(m)(base)/m!, m = 0..order."""

    __slots__ = ("base", "coeffs")

    def __init__(self, base, coeffs):
        self.base = complex(base)
        self.coeffs = np.asarray(coeffs, dtype=complex)
        if self.coeffs.ndim != 1 or len(self.coeffs) == 0:
            raise ValueError("coeffs must be a non-empty 1-d sequence")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def variable(cls, base, order: int) -> "Series1":
        """Jet of the identity function t -> t expanded at base."""
        c = np.zeros(order + 1, dtype=complex)
        c[0] = base
        if order >= 1:
            c[1] = 1.0
        return cls(base, c)

    @classmethod
    def constant(cls, value, order: int, base=0.0) -> "Series1":
        c = np.zeros(order + 1, dtype=complex)
        c[0] = value
        return cls(base, c)

    def _coerce(self, other):
        if isinstance(other, Series1):
            if other.base != self.base:
                raise ValueError("jets expanded at different base points")
            return other
        if isinstance(other, _SCALARS):
            return Series1.constant(other, self.order, self.base)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        k = min(self.order, o.order)
        return Series1(self.base, self.coeffs[: k + 1] + o.coeffs[: k + 1])

    __radd__ = __add__

    def __neg__(self):
        return Series1(self.base, -self.coeffs)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        k = min(self.order, o.order)
        return Series1(self.base, self.coeffs[: k + 1] - o.coeffs[: k + 1])

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        k = min(self.order, o.order)
        return Series1(self.base, _conv_trunc(self.coeffs, o.coeffs, k))

    __rmul__ = __mul__

    def divide(self, other, tol: float = DIVISION_TOL) -> "Series1":
        """Truncated long division; requires |constant term of divisor| > tol."""
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot divide Series1 by {type(other).__name__}")
        k = min(self.order, o.order)
        b = o.coeffs
        if abs(b[0]) <= tol:
            raise DivisionBySingularSeries(
                f"divisor constant term {b[0]} below tolerance {tol}"
            )
        q = np.zeros(k + 1, dtype=complex)
        for m in range(k + 1):
            acc = self.coeffs[m] - np.dot(b[1 : m + 1], q[m - 1 :: -1])
            q[m] = acc / b[0]
        return Series1(self.base, q)

    def __truediv__(self, other):
        try:
            return self.divide(other)
        except TypeError:
            return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _SCALARS):
            return Series1.constant(other, self.order, self.base).divide(self)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, (int, np.integer)):
            return NotImplemented
        if n < 0:
            return (Series1.constant(1.0, self.order, self.base).divide(self)) ** (-n)
        out = Series1.constant(1.0, self.order, self.base)
        for _ in range(n):
            out = out * self
        return out

    def sinh(self) -> "Series1":
        s, _ = _sinh_cosh_coeffs(self.coeffs)
        return Series1(self.base, s)

    def cosh(self) -> "Series1":
        _, c = _sinh_cosh_coeffs(self.coeffs)
        return Series1(self.base, c)

    def exp(self) -> "Series1":
        return Series1(self.base, _exp_coeffs(self.coeffs))

    def derivative(self, m: int) -> complex:
        """Value of the m-th derivative at the base point: m! * coeffs[m]."""
        if m < 0 or m > self.order:
            raise OrderExceeded(f"derivative order {m} exceeds jet order {self.order}")
        return complex(self.coeffs[m]) * math.factorial(m)

    def __repr__(self):
        return f"Series1(base={self.base}, coeffs={np.round(self.coeffs, 12)!r})"


class Series2:
    """Jet of two variables: coeffs[m, n] = mixed Taylor coefficient."""

    __slots__ = ("base", "coeffs")

    def __init__(self, base, coeffs):
        b1, b2 = base
        self.base = (complex(b1), complex(b2))
        self.coeffs = np.asarray(coeffs, dtype=complex)
        if self.coeffs.ndim != 2 or 0 in self.coeffs.shape:
            raise ValueError("coeffs must be a non-empty 2-d grid")

    @property
    def orders(self) -> tuple[int, int]:
        return (self.coeffs.shape[0] - 1, self.coeffs.shape[1] - 1)

    @classmethod
    def variable(cls, which: int, base, orders) -> "Series2":
        """Jet of the coordinate function (which = 0 or 1) at the base pair."""
        k1, k2 = orders
        c = np.zeros((k1 + 1, k2 + 1), dtype=complex)
        c[0, 0] = base[which]
        if which == 0:
            if k1 >= 1:
                c[1, 0] = 1.0
        elif which == 1:
            if k2 >= 1:
                c[0, 1] = 1.0
        else:
            raise ValueError("which must be 0 or 1")
        return cls(base, c)

    @classmethod
    def constant(cls, value, orders, base=(0.0, 0.0)) -> "Series2":
        k1, k2 = orders
        c = np.zeros((k1 + 1, k2 + 1), dtype=complex)
        c[0, 0] = value
        return cls(base, c)

    def _coerce(self, other):
        if isinstance(other, Series2):
            if other.base != self.base:
                raise ValueError("jets expanded at different base points")
            return other
        if isinstance(other, _SCALARS):
            return Series2.constant(other, self.orders, self.base)
        return None

    def _mins(self, o) -> tuple[int, int]:
        return (
            min(self.orders[0], o.orders[0]),
            min(self.orders[1], o.orders[1]),
        )

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        k1, k2 = self._mins(o)
        return Series2(
            self.base,
            self.coeffs[: k1 + 1, : k2 + 1] + o.coeffs[: k1 + 1, : k2 + 1],
        )

    __radd__ = __add__

    def __neg__(self):
        return Series2(self.base, -self.coeffs)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        k1, k2 = self._mins(o)
        return Series2(
            self.base,
            self.coeffs[: k1 + 1, : k2 + 1] - o.coeffs[: k1 + 1, : k2 + 1],
        )

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        k1, k2 = self._mins(o)
        a = self.coeffs[: k1 + 1, : k2 + 1]
        b = o.coeffs[: k1 + 1, : k2 + 1]
        out = np.zeros((k1 + 1, k2 + 1), dtype=complex)
        for i in range(k1 + 1):
            for j in range(k2 + 1):
                if a[i, j] != 0:
                    out[i:, j:] += a[i, j] * b[: k1 + 1 - i, : k2 + 1 - j]
        return Series2(self.base, out)

    __rmul__ = __mul__

    def divide(self, other, tol: float = DIVISION_TOL) -> "Series2":
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot divide Series2 by {type(other).__name__}")
        k1, k2 = self._mins(o)
        a = self.coeffs
        b = o.coeffs
        if abs(b[0, 0]) <= tol:
            raise DivisionBySingularSeries(
                f"divisor constant term {b[0, 0]} below tolerance {tol}"
            )
        q = np.zeros((k1 + 1, k2 + 1), dtype=complex)
        for m in range(k1 + 1):
            for n in range(k2 + 1):
                conv = np.sum(b[: m + 1, : n + 1] * q[m::-1, n::-1])
                q[m, n] = (a[m, n] - conv) / b[0, 0]
        return Series2(self.base, q)

    def __truediv__(self, other):
        try:
            return self.divide(other)
        except TypeError:
            return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _SCALARS):
            return Series2.constant(other, self.orders, self.base).divide(self)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, (int, np.integer)):
            return NotImplemented
        if n < 0:
            return (Series2.constant(1.0, self.orders, self.base).divide(self)) ** (-n)
        out = Series2.constant(1.0, self.orders, self.base)
        for _ in range(n):
            out = out * self
        return out

    def _sinh_cosh(self) -> tuple[np.ndarray, np.ndarray]:
        # Same coupled recurrence as the 1-d case, applied along the first
        # variable with coefficient rows (polynomials in the second variable).
        f = self.coeffs
        k1, k2 = self.orders
        s = np.zeros_like(f)
        c = np.zeros_like(f)
        s[0, :], c[0, :] = _sinh_cosh_coeffs(f[0, :])
        for m in range(1, k1 + 1):
            acc_s = np.zeros(k2 + 1, dtype=complex)
            acc_c = np.zeros(k2 + 1, dtype=complex)
            for j in range(1, m + 1):
                acc_s += j * _conv_trunc(f[j, :], c[m - j, :], k2)
                acc_c += j * _conv_trunc(f[j, :], s[m - j, :], k2)
            s[m, :] = acc_s / m
            c[m, :] = acc_c / m
        return s, c

    def sinh(self) -> "Series2":
        s, _ = self._sinh_cosh()
        return Series2(self.base, s)

    def cosh(self) -> "Series2":
        _, c = self._sinh_cosh()
        return Series2(self.base, c)

    def exp(self) -> "Series2":
        f = self.coeffs
        k1, k2 = self.orders
        e = np.zeros_like(f)
        e[0, :] = _exp_coeffs(f[0, :])
        for m in range(1, k1 + 1):
            acc = np.zeros(k2 + 1, dtype=complex)
            for j in range(1, m + 1):
                acc += j * _conv_trunc(f[j, :], e[m - j, :], k2)
            e[m, :] = acc / m
        return Series2(self.base, e)

    def partial(self, m: int, n: int) -> complex:
        """Mixed partial derivative value: m! * n! * coeffs[m, n]."""
        k1, k2 = self.orders
        if m < 0 or n < 0 or m > k1 or n > k2:
            raise OrderExceeded(
                f"partial order ({m}, {n}) exceeds jet orders ({k1}, {k2})"
            )
        return complex(self.coeffs[m, n]) * math.factorial(m) * math.factorial(n)

    def __repr__(self):
        return f"Series2(base={self.base}, orders={self.orders})"


def partial_coefficient(s: Series2, m: int, n: int) -> complex:
    """Mixed partial d^m d^n at the base point of a two-variable jet."""
    return s.partial(m, n)


def sh(x):
    """sinh dispatching on jets, mpmath numbers, and machine complex."""
    if isinstance(x, (Series1, Series2)):
        return x.sinh()
    if is_mp(x):
        import mpmath

        return mpmath.sinh(x)
    return cmath.sinh(x)


def ch(x):
    """cosh with the same dispatch as sh."""
    if isinstance(x, (Series1, Series2)):
        return x.cosh()
    if is_mp(x):
        import mpmath

        return mpmath.cosh(x)
    return cmath.cosh(x)


def sh2(x):
    """sh(x) squared; the determinant kernels depend on rapidities through it."""
    y = sh(x)
    return y * y
