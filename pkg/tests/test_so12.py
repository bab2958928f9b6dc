import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sig22.geometry.so12 import (EXPECTED_FIXED_TYPE, NULL_GRAM, SO12Class, STANDARD_GRAM, ad_sl2, classify_so12,
                                 detect_frame, fixed_vector, in_so012, sl2_rotation, to_null_frame)
from sig22.numeric import as_obj, diag, eye, inverse, mat, to_float
from sig22.sampling import random_special, rational_sl2, rng


def test_identity():
    assert classify_so12(eye(3)) is SO12Class.IDENTITY


@pytest.mark.parametrize("phi", [math.pi / 4, math.pi / 2, 1.0])
def test_ad_of_rotation_is_elliptic(phi):
    A = ad_sl2(sl2_rotation(phi))
    assert in_so012(A)
    tr = float(sum(A[i, i] for i in range(3)))
    assert tr == pytest.approx(1 + 2 * math.cos(2 * phi))
    assert classify_so12(A) is SO12Class.ELLIPTIC


def test_quarter_turn_has_trace_minus_one():
    A = ad_sl2(sl2_rotation(math.pi / 2))
    assert float(sum(A[i, i] for i in range(3))) == pytest.approx(-1)


def test_diagonal_null_frame_element_is_hyperbolic():
    A = diag([4, 1, Fraction(1, 4)])
    assert detect_frame(A) == "null"
    assert classify_so12(A) is SO12Class.HYPERBOLIC
    assert sum(A[i, i] for i in range(3)) == Fraction(21, 4)
    assert fixed_vector(A, "null")[1] == "spacelike"


def test_unipotent_is_parabolic_exactly():
    A = ad_sl2(mat([[1, 1], [0, 1]]))
    assert classify_so12(A) is SO12Class.PARABOLIC
    assert fixed_vector(A)[1] == "lightlike"


def test_ad_of_diagonal_is_hyperbolic():
    A = ad_sl2(mat([[2, 0], [0, Fraction(1, 2)]]))
    assert classify_so12(A) is SO12Class.HYPERBOLIC
    assert fixed_vector(A)[1] == "spacelike"


def test_not_in_group():
    with pytest.raises(ValueError):
        classify_so12(diag([2, 1, 1]))
    assert not in_so012(diag([-1, 1, -1]))


@given(st.integers(0, 10**6))
def test_ad_lands_in_so012(seed):
    g = rational_sl2(rng(seed))
    A = ad_sl2(g)
    assert not np.any(A.T @ STANDARD_GRAM @ A - STANDARD_GRAM)
    assert in_so012(A)


def _trace_class(g):
    """Upstairs oracle: |tr g| < 2 elliptic, = 2 parabolic (or ±I), > 2 hyperbolic."""
    t = abs(float(g[0, 0] + g[1, 1]))
    if abs(t - 2) < 1e-9:
        return SO12Class.PARABOLIC
    return SO12Class.ELLIPTIC if t < 2 else SO12Class.HYPERBOLIC


@given(st.integers(0, 10**6), st.floats(0.05, 3.0))
def test_classification_matches_sl2_trace(seed, phi):
    r = rng(seed)
    h = rational_sl2(r)
    for g in (h, h @ as_obj(to_float(sl2_rotation(phi))) @ inverse(h), h @ mat([[1, 2], [0, 1]]) @ inverse(h)):
        A = ad_sl2(g)
        got = classify_so12(A)
        assert got is _trace_class(g)
        assert fixed_vector(A)[1] == EXPECTED_FIXED_TYPE[got]


def test_conjugation_invariance_over_random_conjugations():
    r = rng(9)
    for _ in range(100):
        A = random_special(r, -1)
        C = random_special(r, -1)
        assert classify_so12(C @ A @ inverse(C)) is classify_so12(A)


def test_null_frame_round_trip():
    A = ad_sl2(mat([[3, 1], [2, 1]]))
    B = to_null_frame(A)
    assert detect_frame(B) == "null"
    assert np.allclose(to_float(B).T @ to_float(NULL_GRAM) @ to_float(B), to_float(NULL_GRAM))
    assert classify_so12(B) is classify_so12(A)


def test_parabolic_tolerance():
    A = ad_sl2(mat([[1, 1e-3], [0, 1]]))
    assert classify_so12(as_obj(to_float(A))) is SO12Class.PARABOLIC
    near = ad_sl2(as_obj(to_float(sl2_rotation(1e-5))))
    assert classify_so12(near) is SO12Class.PARABOLIC
    assert classify_so12(near, parabolic_tol=1e-12) is SO12Class.ELLIPTIC
