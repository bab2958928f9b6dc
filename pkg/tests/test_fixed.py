import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sig22.catalog import SpaceSpec
from sig22.geometry import extrinsic
from sig22.geometry.fixed import fixed_point, fixed_point_residual, model_residual
from sig22.geometry.so12 import SO12Class, classify_so12, fixed_vector
from sig22.groups import AffineElement, hat
from sig22.numeric import as_obj, diag, eye, is_exact_array, mat, matrix_exp, vec
from sig22.sampling import random_special, rng


def test_identity_returns_base_point():
    spec = SpaceSpec.Z(1, 0)
    p = fixed_point(spec, AffineElement.identity())
    assert list(p) == [0, 0, 0, 1, 0, 0]


def test_pure_translation():
    spec = SpaceSpec.Z(1, 3)
    p = fixed_point(spec, AffineElement(vec([0, 0, 1]), eye(3)))
    assert list(p) == [0, 0, 0, 0, 0, 1]
    assert is_exact_array(p)
    p = fixed_point(spec, AffineElement(vec([1, 1, 0]), eye(3)))
    assert fixed_point_residual(spec, AffineElement(vec([1, 1, 0]), eye(3)), p) <= 1e-15


def test_quarter_turn_about_e1():
    spec = SpaceSpec.Z(1, 0)
    A = mat([[1, 0, 0], [0, 0, -1], [0, 1, 0]])
    iso = AffineElement(vec([0, 1, 0]), A)
    p = fixed_point(spec, iso)
    assert np.allclose(np.array(p[3:], dtype=float), [1, 0, 0])
    assert fixed_point_residual(spec, iso, p) <= 1e-12
    assert model_residual(spec, p) <= 1e-12


@given(st.integers(0, 10**6), st.sampled_from([Fraction(-1), Fraction(0), Fraction(2)]))
def test_every_euclidean_motion_has_a_fixed_point(seed, c):
    r = rng(seed)
    iso = AffineElement(as_obj(r.uniform(-2, 2, 3)), random_special(r, 1))
    spec = SpaceSpec.Z(1, c)
    p = fixed_point(spec, iso)
    assert p is not None
    assert fixed_point_residual(spec, iso, p) <= 1e-9
    assert model_residual(spec, p) <= 1e-9


def _lorentz_with_class(r, wanted):
    while True:
        A = random_special(r, -1)
        if classify_so12(A) is wanted:
            return A


@given(st.integers(0, 10**6))
def test_elliptic_elements_fix_a_point_of_z_minus(seed):
    r = rng(seed)
    A = _lorentz_with_class(r, SO12Class.ELLIPTIC)
    iso = AffineElement(as_obj(r.uniform(-2, 2, 3)), A, "SO0(1,2)")
    spec = SpaceSpec.Z(-1, 1)
    p = fixed_point(spec, iso)
    assert p is not None and p[3] > 0
    assert fixed_point_residual(spec, iso, p) <= 1e-9


@given(st.integers(0, 10**6))
def test_hyperbolic_elements_fix_a_point_of_zprime(seed):
    r = rng(seed)
    A = _lorentz_with_class(r, SO12Class.HYPERBOLIC)
    iso = AffineElement(as_obj(r.uniform(-2, 2, 3)), A, "SO0(1,2)")
    spec = SpaceSpec.Zprime(0)
    p = fixed_point(spec, iso)
    assert p is not None
    assert fixed_point_residual(spec, iso, p) <= 1e-9


def test_wrong_causal_type_has_no_solution():
    boost = mat([[Fraction(5, 4), Fraction(3, 4), 0], [Fraction(3, 4), Fraction(5, 4), 0], [0, 0, 1]])
    rot = mat([[1, 0, 0], [0, 0, -1], [0, 1, 0]])
    b = vec([0, 0, 1])
    assert fixed_point(SpaceSpec.Z(-1, 0), AffineElement(b, boost, "SO0(1,2)")) is None
    assert fixed_point(SpaceSpec.Zprime(0), AffineElement(b, rot, "SO0(1,2)")) is None


def test_parabolic_translation_along_fixed_null_line():
    A = as_obj(matrix_exp(hat(-1, [1, 1, 0])))
    assert classify_so12(A) is SO12Class.PARABOLIC
    k, kind = fixed_vector(A)
    assert kind == "lightlike"
    assert fixed_point(SpaceSpec.Z(-1, 0), AffineElement(vec([1, 0, 0]), A, "SO0(1,2)")) is None


def test_solver_is_only_for_z_models():
    with pytest.raises(ValueError):
        fixed_point(SpaceSpec.N(1), AffineElement.identity())
