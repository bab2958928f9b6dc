"""Extrinsic models: N(κ) in ℂ²×ℝ and ℝ⁵, Z(ε,c) and Z′(c) in ℝ⁶."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from ..catalog import SpaceSpec
from ..checks import Check, residual_check
from ..dual import jacobian, value_and_jacobian
from ..groups import AffineElement, cross_eps, eps_gram
from ..numeric import (SymBilinearForm, Tolerance, as_obj, eye, inverse, is_exact_array, max_abs, nullspace,
                       signature, to_float, vec, zeros)
from .. import sampling

EMBEDDINGS = {
    "N": ("complex", "real"),
    "Z": ("standard",),
    "Zprime": ("standard",),
}


@dataclass(frozen=True, eq=False)
class ExtrinsicSpace:
    """A submanifold {F = 0} of a pseudo-Euclidean space with a sampler for its points."""
    name: str
    gram: SymBilinearForm
    equations: Callable
    base_point: np.ndarray
    sampler: Callable
    coordinates: tuple = ()

    @property
    def ambient_dim(self) -> int:
        return self.gram.dim

    def residual(self, x) -> np.ndarray:
        return np.asarray(self.equations(np.asarray(x, dtype=object)), dtype=object)

    def gradients(self, x) -> np.ndarray:
        return jacobian(self.equations, x)

    def tangent_basis(self, x, tol: Tolerance | None = None) -> np.ndarray:
        return nullspace(self.gradients(x), tol)

    def sample(self, r: np.random.Generator) -> np.ndarray:
        return self.sampler(r)

    def induced_signature(self, x, tol: Tolerance | None = None):
        T = self.tangent_basis(x, tol)
        return signature(T.T @ self.gram.gram @ T, tol)


def _n_complex(kappa) -> ExtrinsicSpace:
    # (p1, p2, x, q1, q2) with η1 = p1 + ip2, η2 = q1 + iq2
    g = zeros(5, 5)
    g[0, 3] = g[3, 0] = g[1, 4] = g[4, 1] = Fraction(1)
    g[2, 2] = Fraction(kappa)

    def eqs(y):
        return [y[2] + (y[3] * y[3] + y[4] * y[4]) / 2]

    def sample(r):
        p, q = sampling.rational_vec(r, 2), sampling.rational_vec(r, 2)
        return vec([p[0], p[1], -(q[0] * q[0] + q[1] * q[1]) / 2, q[0], q[1]])

    return ExtrinsicSpace(f"N({kappa}) complex", SymBilinearForm(g), eqs, vec([0, 0, 0, 0, 0]), sample,
                          ("p1", "p2", "x", "q1", "q2"))


def _n_real(kappa) -> ExtrinsicSpace:
    g = zeros(5, 5)
    g[0, 3] = g[3, 0] = g[1, 4] = g[4, 1] = Fraction(-1)
    g[2, 2] = Fraction(-kappa)

    def eqs(y):
        return [y[2] - y[3] * y[4]]

    def sample(r):
        p, q = sampling.rational_vec(r, 2), sampling.rational_vec(r, 2)
        return vec([p[0], p[1], q[0] * q[1], q[0], q[1]])

    return ExtrinsicSpace(f"N({kappa}) real", SymBilinearForm(g), eqs, vec([0, 0, 0, 0, 0]), sample,
                          ("p1", "p2", "x", "q1", "q2"))


def _vu_gram(G, c, sign) -> np.ndarray:
    """sign · (⟨u,v'⟩ + ⟨v,u'⟩ − 2c⟨u,u'⟩) on (v, u) ∈ ℝ³ ⊕ ℝ³."""
    g = zeros(6, 6)
    g[0:3, 3:6] = G
    g[3:6, 0:3] = G
    g[3:6, 3:6] = -2 * c * G
    return sign * g


def _sphere_like(r, eps, target):
    """Rational u with ⟨u,u⟩_ε = target; for the two-sheeted case u1 > 0."""
    if eps == 1:
        s, t = sampling.rational(r), sampling.rational(r)
        d = 1 + s * s + t * t
        return vec([(1 - s * s - t * t) / d, 2 * s / d, 2 * t / d])
    if target == -1:
        while True:
            s, t = sampling.rational(r, 4, 5), sampling.rational(r, 4, 5)
            if s * s + t * t <= Fraction(1, 2):
                break
        d = 1 - s * s - t * t
        return vec([(1 + s * s + t * t) / d, 2 * s / d, 2 * t / d])
    B = sampling.rational_boost(r)
    c, s = sampling.rational_circle(r)
    return vec([B[0, 1] * c, B[1, 1] * c, s])


def _z_like(name, eps, c, sign, target) -> ExtrinsicSpace:
    G = eps_gram(eps)
    target = Fraction(target)

    def eqs(y):
        v, u = y[0:3], y[3:6]
        return [u @ G @ u - target, u @ G @ v]

    def sample(r):
        u = _sphere_like(r, eps, target)
        w = sampling.rational_vec(r, 3)
        v = w - (w @ G @ u) / target * u
        return np.concatenate([v, u])

    base = vec([0, 0, 0, 1, 0, 0]) if target == eps else vec([0, 0, 0, 0, 1, 0])
    return ExtrinsicSpace(name, SymBilinearForm(_vu_gram(G, c, sign)), eqs, base, sample,
                          ("v1", "v2", "v3", "u1", "u2", "u3"))


def extrinsic_space(spec: SpaceSpec, which: str = "standard") -> ExtrinsicSpace:
    f = spec.family
    if f == "N":
        if which == "complex":
            return _n_complex(spec.kappa)
        if which == "real":
            return _n_real(spec.kappa)
        raise ValueError("N has the embeddings 'complex' and 'real'")
    if f == "Z":
        return _z_like(spec.label, spec.eps, spec.c, 1, spec.eps)
    if f == "Zprime":
        return _z_like(spec.label, -1, spec.c, -1, 1)
    raise ValueError(f"no extrinsic model for {f}")


def default_embedding(spec: SpaceSpec) -> str:
    return EMBEDDINGS[spec.family][0]


# -- reflections ---------------------------------------------------------------

def reflection(E: ExtrinsicSpace, x, tol: Tolerance | None = None):
    """The affine map s_x(y) = x + R(y − x), R = −id on T_xM and id on the normal space."""
    tol = tol or Tolerance()
    x = np.asarray(x, dtype=object)
    T = E.tangent_basis(x, tol)
    G = E.gram.gram
    TGT = T.T @ G @ T
    if signature(TGT, tol)[2] != 0:
        raise ValueError("tangent space is degenerate")
    proj = T @ inverse(TGT) @ T.T @ G
    R = eye(E.ambient_dim) - 2 * proj

    def s(y):
        return x + R @ (np.asarray(y, dtype=object) - x)

    return s, R


def reflection_check(E: ExtrinsicSpace, x, samples, tol: Tolerance | None = None) -> Check:
    """Max defining-equation residual of s_x over the samples, plus s_x(x) = x and s_x² = id."""
    tol = tol or Tolerance()
    if max_abs(E.residual(x)) > 1e-10:
        raise ValueError("base point is not on the submanifold")
    s, R = reflection(E, x, tol)
    res = [E.residual(s(y)) for y in samples]
    res.append(s(x) - np.asarray(x, dtype=object))
    res.append(R @ R - eye(E.ambient_dim))
    return residual_check("reflection", res, tol, samples=len(samples))


def iota(kappa, xi) -> np.ndarray:
    """ι(ξ1,ξ2) = (ξ1 − (κ/4)|ξ2|²ξ2, −½|ξ2|², ξ2) on real coordinates (x1, y1, x2, y2)."""
    xi = np.asarray(xi, dtype=object)
    r2 = xi[2] * xi[2] + xi[3] * xi[3]
    k4 = Fraction(kappa, 4)
    return vec([xi[0] - k4 * r2 * xi[2], xi[1] - k4 * r2 * xi[3], -r2 / 2, xi[2], xi[3]])


def complex_coordinate_metric(kappa, xi) -> np.ndarray:
    """dξ1dξ̄2 + dξ2dξ̄1 − (κ/2)|ξ2|²dξ2dξ̄2 as a real 4×4 gram."""
    xi = np.asarray(xi, dtype=object)
    r2 = xi[2] * xi[2] + xi[3] * xi[3]
    g = zeros(4, 4)
    g[0, 2] = g[2, 0] = g[1, 3] = g[3, 1] = Fraction(1)
    g[2, 2] = g[3, 3] = -Fraction(kappa, 2) * r2
    return g


def iota_isometry_check(kappa, samples, tol: Tolerance | None = None) -> Check:
    E = _n_complex(kappa)
    G = E.gram.gram
    res = []
    for xi in samples:
        image, J = value_and_jacobian(lambda y: iota(kappa, y), xi)
        res.append(E.residual(image))
        res.append(J.T @ G @ J - complex_coordinate_metric(kappa, xi))
    return residual_check("iota_pullback", res, tol, samples=len(samples))


def n_chart_to_complex(kappa, p) -> np.ndarray:
    """(v, u) ↦ ξ with ξ1 = (v2 + (κ/12)u1|u|², −v1 + (κ/12)u2|u|²), ξ2 = u."""
    p = np.asarray(p, dtype=object)
    v, u = p[0:2], p[2:4]
    r2 = u[0] * u[0] + u[1] * u[1]
    k12 = Fraction(kappa, 12)
    return vec([v[1] + k12 * u[0] * r2, -v[0] + k12 * u[1] * r2, u[0], u[1]])


# -- the Z and Z' actions ------------------------------------------------------

def affine_action(eps, iso: AffineElement, point) -> np.ndarray:
    """(b,A)(v,u) = (Av + b ×_ε Au, Au)."""
    p = np.asarray(point, dtype=object)
    A, b = iso.A, iso.b
    Au = A @ p[3:6]
    return np.concatenate([A @ p[0:3] + cross_eps(eps, b, Au), Au])


def model_eps(spec: SpaceSpec) -> int:
    return spec.eps if spec.family == "Z" else -1


def embedded_pullback_check(spec: SpaceSpec, iso: AffineElement, points, tol: Tolerance | None = None) -> Check:
    """Metric pullback on a tangent basis, plus the image staying on M."""
    E = extrinsic_space(spec)
    G = E.gram.gram
    eps = model_eps(spec)
    res = []
    for x in points:
        image, J = value_and_jacobian(lambda y: affine_action(eps, iso, y), x)
        T = E.tangent_basis(x, tol)
        if not (is_exact_array(J) and is_exact_array(T)):
            # a Euclidean-orthonormal basis keeps float roundoff at the scale of the point
            T = as_obj(np.linalg.qr(to_float(T))[0])
        JT = J @ T
        res.append(JT.T @ G @ JT - T.T @ G @ T)
        res.append(E.residual(image))
    return residual_check("pullback", res, tol, samples=len(points))
