"""Fixed points of Z(ε,c) and Z′(c) isometries (b, A): Au = u and (A − I)v = −b × u."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..catalog import SpaceSpec
from ..groups import AffineElement, cross_eps, eps_gram
from ..numeric import Tolerance, as_obj, eye, is_exact_array, nullspace, to_float, zeros
from .extrinsic import extrinsic_space, model_eps

REFINE_STEPS = 3


def _normalize_sign(u):
    """First nonzero component positive (u1 > 0 on a two-sheeted hyperboloid)."""
    for x in u:
        if abs(float(x)) > 1e-12:
            return u if float(x) > 0 else -u
    return u


def _unit(u, G, target):
    q = float(u @ G @ u)
    if q == 0 or (q > 0) != (target > 0):
        return None
    return _normalize_sign(to_float(u) / math.sqrt(q / target))


def _exact_unit(b, eps, target):
    """b/‖b‖ in rationals when the squared norm is a rational square."""
    if not is_exact_array(b):
        return None
    q = Fraction(b @ eps_gram(eps) @ b) / target
    if q <= 0:
        return None
    num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if num * num != q.numerator or den * den != q.denominator:
        return None
    return _normalize_sign(b / Fraction(num, den))


def _perp_basis(u, G, target) -> np.ndarray:
    """Two G-orthogonal vectors spanning u⊥, by Gram–Schmidt against the standard basis."""
    out = []
    for e in np.eye(3):
        w = e - (e @ G @ u) / target * u
        for b in out:
            w = w - (w @ G @ b) / (b @ G @ b) * b
        if abs(w @ G @ w) > 1e-8:
            out.append(w)
        if len(out) == 2:
            break
    return np.array(out).T


def _rational(a) -> np.ndarray:
    """Exact copy of a float or rational array (every float is a dyadic rational)."""
    return np.array([Fraction(x) for x in np.asarray(a, dtype=object).flat], dtype=object).reshape(np.shape(a))


def _equations(eps, target, A, b, u, v):
    """Au − u, Av + b×Au − v, ⟨u,u⟩ − target, ⟨u,v⟩; exact on rational input."""
    G = eps_gram(eps)
    Au = A @ u
    return np.concatenate([Au - u, A @ v + cross_eps(eps, b, Au) - v, [u @ G @ u - target, u @ G @ v]])


def _refine(eps, target, A, b, u, v):
    """Gauss–Newton steps with residuals evaluated exactly and corrections solved in float."""
    Ae, be = _rational(A), _rational(b)
    Af = to_float(A)
    G = to_float(eps_gram(eps))
    bx = np.array([to_float(cross_eps(eps, b, e)) for e in np.eye(3)]).T  # w ↦ b × w
    for _ in range(REFINE_STEPS):
        r = to_float(_equations(eps, target, Ae, be, _rational(u), _rational(v)))
        J = np.zeros((8, 6))
        J[0:3, 0:3] = Af - np.eye(3)
        J[3:6, 0:3] = bx @ Af
        J[3:6, 3:6] = Af - np.eye(3)
        J[6, 0:3] = 2 * (G @ u)
        J[7, 0:3] = G @ v
        J[7, 3:6] = G @ u
        step = np.linalg.lstsq(J, -r, rcond=None)[0]
        u, v = u + step[0:3], v + step[3:6]
    return u, v


def fixed_point(spec: SpaceSpec, iso: AffineElement):
    """A point (v, u) of the model fixed by iso, or None.

    Solvable for every element of ℝ³⋊SO(3) on Z(1,c), for elliptic A on Z(−1,c)
    and for hyperbolic A on Z′(c).  Other inputs return None when no fixed point
    of this form exists.
    """
    if spec.family not in ("Z", "Zprime"):
        raise ValueError(f"no fixed-point solver for {spec.family}")
    eps = model_eps(spec)
    target = spec.eps if spec.family == "Z" else 1
    G = to_float(eps_gram(eps))
    A, b = as_obj(iso.A), as_obj(iso.b)
    E = extrinsic_space(spec)

    K = nullspace(A - eye(3), Tolerance(1e-8, 1e-8))
    if K.shape[1] == 3:
        if not np.any(to_float(b)):
            return E.base_point
        u = _exact_unit(b, eps, target)
        if u is not None:
            return np.concatenate([zeros(3), u])
        u = _unit(to_float(b), G, target)
        if u is None:
            return None
        return _accept(spec, iso, u, np.zeros(3))
    if K.shape[1] != 1:
        return None
    u = _unit(to_float(K[:, 0]), G, target)
    if u is None:
        return None
    B = _perp_basis(u, G, target)
    if B.shape[1] != 2:
        return None
    rhs = -to_float(cross_eps(eps, b, u))
    M = B.T @ G @ (to_float(A) - np.eye(3)) @ B
    if abs(np.linalg.det(M)) < 1e-12:
        return None
    v = B @ np.linalg.solve(M, B.T @ G @ rhs)
    u, v = _refine(eps, target, A, b, u, v)
    return _accept(spec, iso, u, v)


def _accept(spec, iso, u, v, limit: float = 1e-9):
    point = as_obj(np.concatenate([v, u]))
    if model_residual(spec, point) > limit or fixed_point_residual(spec, iso, point) > limit:
        return None
    return point


def model_residual(spec: SpaceSpec, point) -> float:
    """Defining-equation residual of a float point, evaluated exactly."""
    res = extrinsic_space(spec).residual(_rational(point))
    return float(max(abs(x) for x in res))


def fixed_point_residual(spec: SpaceSpec, iso: AffineElement, point) -> float:
    """max |(b,A)·p − p|, evaluated exactly on the float data."""
    eps = model_eps(spec)
    p = _rational(point)
    A, b = _rational(iso.A), _rational(iso.b)
    Au = A @ p[3:6]
    image = np.concatenate([A @ p[0:3] + cross_eps(eps, b, Au), Au])
    return float(max(abs(x) for x in image - p))
