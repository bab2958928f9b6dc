"""Forward-mode differentiation with tagged dual numbers.

A :class:`Dual` carries a value and a tuple of directional derivatives.  Each
call to :func:`jacobian` draws a fresh tag, so nested calls (a Jacobian of a
Jacobian) keep their infinitesimals apart: a dual with a larger tag treats
duals with smaller tags as ordinary coefficients.
"""

from __future__ import annotations

import itertools

import numpy as np

from .numeric import as_obj, mat

_tags = itertools.count(1)


class Dual:
    __slots__ = ("re", "eps", "tag")
    __array_priority__ = -1

    def __init__(self, re, eps, tag):
        self.re = re
        self.eps = tuple(eps)
        self.tag = tag

    def __repr__(self):
        return f"Dual({self.re!r}, {self.eps!r}, tag={self.tag})"

    def _same(self, other):
        return isinstance(other, Dual) and other.tag == self.tag

    def _outer(self, other):
        return isinstance(other, Dual) and other.tag > self.tag

    def __add__(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        if self._same(other):
            return Dual(self.re + other.re, (a + b for a, b in zip(self.eps, other.eps)), self.tag)
        if self._outer(other):
            return other.__radd__(self)
        return Dual(self.re + other, self.eps, self.tag)

    def __radd__(self, other):
        return Dual(other + self.re, self.eps, self.tag)

    def __neg__(self):
        return Dual(-self.re, (-a for a in self.eps), self.tag)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        if self._same(other):
            return Dual(self.re - other.re, (a - b for a, b in zip(self.eps, other.eps)), self.tag)
        if self._outer(other):
            return other.__rsub__(self)
        return Dual(self.re - other, self.eps, self.tag)

    def __rsub__(self, other):
        return Dual(other - self.re, (-a for a in self.eps), self.tag)

    def __mul__(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        if self._same(other):
            return Dual(
                self.re * other.re,
                (a * other.re + self.re * b for a, b in zip(self.eps, other.eps)),
                self.tag,
            )
        if self._outer(other):
            return other.__rmul__(self)
        return Dual(self.re * other, (a * other for a in self.eps), self.tag)

    def __rmul__(self, other):
        return Dual(other * self.re, (other * a for a in self.eps), self.tag)

    def __truediv__(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        if self._same(other):
            d = other.re * other.re
            return Dual(
                self.re / other.re,
                ((a * other.re - self.re * b) / d for a, b in zip(self.eps, other.eps)),
                self.tag,
            )
        if self._outer(other):
            return other.__rtruediv__(self)
        return Dual(self.re / other, (a / other for a in self.eps), self.tag)

    def __rtruediv__(self, other):
        d = self.re * self.re
        return Dual(other / self.re, (-other * a / d for a in self.eps), self.tag)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers of dual numbers are supported")
        out = 1
        for _ in range(n):
            out = self * out
        return out


def _value(x, tag):
    return x.re if isinstance(x, Dual) and x.tag == tag else x


def _derivs(x, tag, n):
    if isinstance(x, Dual) and x.tag == tag:
        return list(x.eps)
    return [0] * n


def value_and_jacobian(f, x):
    """Evaluate ``f`` at ``x`` and return ``(f(x), Df(x))`` by forward mode."""
    x = list(np.asarray(x, dtype=object).flat)
    n = len(x)
    tag = next(_tags)
    seeds = np.empty(n, dtype=object)
    for i, xi in enumerate(x):
        seeds[i] = Dual(xi, (1 if k == i else 0 for k in range(n)), tag)
    y = f(seeds)
    flat = list(np.asarray(y, dtype=object).flat)
    value = np.empty(len(flat), dtype=object)
    for i, yi in enumerate(flat):
        value[i] = _value(yi, tag)
    jac = mat([_derivs(yi, tag, n) for yi in flat]) if flat else np.empty((0, n), dtype=object)
    return value, jac


def jacobian(f, x):
    """Forward-mode Jacobian of a vector map; rows index outputs."""
    return value_and_jacobian(f, x)[1]


def fd_jacobian(f, x, h: float = 1e-5):
    """Central differences with one Richardson step; a float oracle for :func:`jacobian`."""
    x = np.array([float(v) for v in np.asarray(x, dtype=object).flat])

    def central(step):
        cols = []
        for i in range(len(x)):
            e = np.zeros(len(x))
            e[i] = step
            plus = np.array([float(v) for v in np.asarray(f(as_obj(x + e)), dtype=object).flat])
            minus = np.array([float(v) for v in np.asarray(f(as_obj(x - e)), dtype=object).flat])
            cols.append((plus - minus) / (2 * step))
        return np.array(cols).T

    return (4 * central(h / 2) - central(h)) / 3
