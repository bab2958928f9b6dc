"""Seeded random inputs: rationals, group elements and special matrices."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .numeric import as_obj, mat, matrix_exp, vec


def rng(seed: int = 0) -> np.random.Generator:
    return np.random.default_rng(seed)


def rational(r: np.random.Generator, num: int = 9, den: int = 5) -> Fraction:
    return Fraction(int(r.integers(-num, num + 1)), int(r.integers(1, den + 1)))


def rational_vec(r: np.random.Generator, n: int, num: int = 9, den: int = 5) -> np.ndarray:
    return vec([rational(r, num, den) for _ in range(n)])


def unit_rational(r: np.random.Generator, max_den: int = 6) -> Fraction:
    """A rational in [−1, 1] with denominator at most ``max_den``."""
    q = int(r.integers(1, max_den + 1))
    return Fraction(int(r.integers(-q, q + 1)), q)


def unit_rational_vec(r: np.random.Generator, n: int, max_den: int = 6) -> np.ndarray:
    return vec([unit_rational(r, max_den) for _ in range(n)])


def uniform_vec(r: np.random.Generator, n: int, bound: float = 2.0) -> np.ndarray:
    return as_obj(r.uniform(-bound, bound, n))


def positive_rational(r: np.random.Generator) -> Fraction:
    return Fraction(int(r.integers(1, 10)), int(r.integers(1, 6)))


def rational_sl2(r: np.random.Generator, reflect: bool = False) -> np.ndarray:
    """A product of rational shears and a diagonal scaling; det ±1."""
    q = positive_rational(r)
    A = mat([[1, rational(r)], [0, 1]]) @ mat([[1, 0], [rational(r), 1]]) @ mat([[q, 0], [0, 1 / q]])
    if reflect:
        A = A @ mat([[1, 0], [0, -1]])
    return A


def rational_boost(r: np.random.Generator) -> np.ndarray:
    """[[ch, sh], [sh, ch]] with ch = (m + 1/m)/2, sh = (m − 1/m)/2 for rational m > 0."""
    m = positive_rational(r)
    ch, sh = (m + 1 / m) / 2, (m - 1 / m) / 2
    return mat([[ch, sh], [sh, ch]])


def rational_circle(r: np.random.Generator) -> tuple:
    k = rational(r)
    return (1 - k * k) / (1 + k * k), 2 * k / (1 + k * k)


def random_special(r: np.random.Generator, eps: int) -> np.ndarray:
    """exp of hat(ω), ω uniform in [−2, 2]³: an element of SO(3) (ε = 1) or SO₀(1,2) (ε = −1)."""
    from .groups import hat

    return matrix_exp(hat(eps, [float(w) for w in r.uniform(-2, 2, 3)]))
