"""Coordinate models for X1, X2, Y and N: closed-form metrics, group metrics and isometries."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Callable

import numpy as np

from ..catalog import SpaceSpec
from ..checks import Check, residual_check
from ..dual import jacobian, value_and_jacobian
from ..groups import (HeisExtElement, NGroupElement, L_of, catalog_in_group_basis,
                      transvection_group)
from ..numeric import Tolerance, as_obj, det, diag, eye, inverse, mat, signature, zeros

CHART_FAMILIES = ("X1", "X2", "Y", "N")


def _require_chart(spec: SpaceSpec):
    if spec.family not in CHART_FAMILIES:
        raise ValueError(f"{spec.family} has no global chart here; use its extrinsic model")


@dataclass(frozen=True)
class CoordinateModel:
    spec: SpaceSpec
    coordinates: tuple
    metric: Callable

    def __call__(self, point) -> np.ndarray:
        return self.metric(np.asarray(point, dtype=object))

    def signature_at(self, point):
        return signature(self(point))


def _plane_wave(flat_x, H):
    """2dudv + flat_x + H du² on (v, x1, x2, u)."""
    def metric(p):
        g = zeros(4, 4)
        g[0, 3] = g[3, 0] = Fraction(1)
        g[1:3, 1:3] = flat_x
        g[3, 3] = H(p[1], p[2])
        return g
    return metric


def model_metric(spec: SpaceSpec) -> CoordinateModel:
    """Closed-form metric components in the chart coordinates."""
    _require_chart(spec)
    f = spec.family
    if f == "X1":
        e1, e2, lam = spec.eps1, spec.eps2, spec.lam
        metric = _plane_wave(diag([-1, 1]), lambda x1, x2: -e1 * x1 * x1 - e2 * lam * lam * x2 * x2)
        return CoordinateModel(spec, ("v", "x1", "x2", "u"), metric)
    if f == "X2":
        nu = spec.nu
        metric = _plane_wave(diag([-1, 1]), lambda x1, x2: (nu * nu - 1) * (x1 * x1 - x2 * x2) - 4 * nu * x1 * x2)
        return CoordinateModel(spec, ("v", "x1", "x2", "u"), metric)
    if f == "Y":
        e, k = spec.eps, spec.kappa
        metric = _plane_wave(mat([[0, -e], [-e, -e * k]]), lambda x1, x2: 2 * x1 * x2 - k * x2 * x2)
        return CoordinateModel(spec, ("v", "x1", "x2", "u"), metric)

    k3 = Fraction(-spec.kappa, 3)

    def n_metric(p):
        u1, u2 = p[2], p[3]
        g = zeros(4, 4)
        g[2, 1] = g[1, 2] = Fraction(1)
        g[3, 0] = g[0, 3] = Fraction(-1)
        g[2, 2] = k3 * u2 * u2
        g[3, 3] = k3 * u1 * u1
        g[2, 3] = g[3, 2] = -k3 * u1 * u2
        return g

    return CoordinateModel(spec, ("v1", "v2", "u1", "u2"), n_metric)


@lru_cache(maxsize=None)
def origin_gram(spec: SpaceSpec) -> np.ndarray:
    """Gram of the triple restricted to the chart directions at the origin."""
    _require_chart(spec)
    G = catalog_in_group_basis(spec).gram.gram
    idx = transvection_group(spec).origin_indices()
    return G[np.ix_(idx, idx)]


def group_metric(spec: SpaceSpec, point) -> np.ndarray:
    """Left-translate the origin gram to ``point`` along the group action."""
    _require_chart(spec)
    G = transvection_group(spec)
    g = G.phi_inv(point)
    Dl = jacobian(lambda q: G.phi(G.mul(g, G.phi_inv(q))), zeros(4))
    Dl_inv = inverse(Dl)
    return Dl_inv.T @ origin_gram(spec) @ Dl_inv


# -- isometries --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ChartIsometry:
    """g ∘ Ψ with g in the transvection group and Ψ a linear automorphism fixing the origin.

    Ψ is stored as its matrix on group coordinates.
    """
    spec: SpaceSpec
    g: object
    Psi: np.ndarray
    label: str = ""

    def __post_init__(self):
        _require_chart(self.spec)
        object.__setattr__(self, "Psi", as_obj(self.Psi))

    @property
    def group(self):
        return transvection_group(self.spec)

    def apply_psi(self, h):
        E = self.group.element
        return E.from_coords(self.Psi @ h.coords())

    def __call__(self, point) -> np.ndarray:
        G = self.group
        return G.phi(G.mul(self.g, self.apply_psi(G.phi_inv(point))))

    def __matmul__(self, other: "ChartIsometry") -> "ChartIsometry":
        G = self.group
        return ChartIsometry(self.spec, G.mul(self.g, self.apply_psi(other.g)), self.Psi @ other.Psi)

    @classmethod
    def identity(cls, spec: SpaceSpec) -> "ChartIsometry":
        G = transvection_group(spec)
        return cls(spec, G.identity(), eye(G.dim), "identity")

    @classmethod
    def translation(cls, spec: SpaceSpec, g) -> "ChartIsometry":
        return cls(spec, g, eye(transvection_group(spec).dim), "translation")


def _gl_psi(r, S) -> np.ndarray:
    P = zeros(6, 6)
    P[0, 0] = P[5, 5] = Fraction(r)
    P[1:5, 1:5] = as_obj(S)
    return P


def _gl_psi_valid(spec: SpaceSpec, r, S, tol: Tolerance | None = None) -> bool:
    tol = tol or Tolerance()
    L, W = L_of(spec)
    S = as_obj(S)
    return tol.allclose(S @ L, r * (L @ S)) and tol.allclose(S.T @ W @ S, r * W)


def x1_discrete(spec: SpaceSpec, d1: int, d2: int, d3: int, g=None) -> ChartIsometry:
    """(δ1,δ2,δ3)·(v,x,u) = (δ3v, δ1δ3x1, δ2δ3x2, δ3u), composed with the translation g."""
    if spec.family != "X1":
        raise ValueError("the ℤ₂³ factor belongs to X1")
    S = diag([d1, d2, d1 * d3, d2 * d3])
    return ChartIsometry(spec, g or HeisExtElement.identity(), _gl_psi(d3, S), f"discrete{(d1, d2, d3)}")


def x1_o11(spec: SpaceSpec, A, theta: bool = False, g=None) -> ChartIsometry:
    """A·(v,x,u) = (v, Ax, u) for A ∈ O(1,1); needs λ = 1 and ε1 = −ε2."""
    if not (spec.family == "X1" and spec.lam == 1 and spec.eps1 == -spec.eps2):
        raise ValueError("the O(1,1) factor exists only for X1(ε,−ε,1)")
    A = as_obj(A)
    eta = diag([-1, 1])
    if not Tolerance(1e-9, 1e-9).allclose(A.T @ eta @ A, eta):
        raise ValueError("A is not in O(1,1) for the form −dx1² + dx2²")
    r = -1 if theta else 1
    S = zeros(4, 4)
    S[0:2, 0:2] = inverse(A).T
    S[2:4, 2:4] = r * A
    return ChartIsometry(spec, g or HeisExtElement.identity(), _gl_psi(r, S), "O(1,1)" + ("·θ" if theta else ""))


def sign_discrete(spec: SpaceSpec, d1: int, d2: int, g=None) -> ChartIsometry:
    """The ℤ₂×ℤ₂ factor of X2 and Y: (v,x,u) ↦ (δ2v, δ1δ2x, δ2u)."""
    if spec.family not in ("X2", "Y"):
        raise ValueError("the ℤ₂×ℤ₂ factor belongs to X2 and Y")
    S = diag([d1, d1, d1 * d2, d1 * d2])
    return ChartIsometry(spec, g or HeisExtElement.identity(), _gl_psi(d2, S), f"discrete{(d1, d2)}")


def n_linear(spec: SpaceSpec, S, g=None) -> ChartIsometry:
    """Ψ_S(z,a,l) = (|S|Sz, |S|a, Sl) for S ∈ SL±(2,ℝ)."""
    if spec.family != "N":
        raise ValueError("SL±(2) acts on N only")
    S = as_obj(S)
    d = det(S)
    if not Tolerance(1e-9, 1e-9).close(abs(d), 1):
        raise ValueError("S must have determinant ±1")
    s = 1 if d > 0 else -1
    P = zeros(5, 5)
    P[0:2, 0:2] = s * S
    P[2, 2] = Fraction(s)
    P[3:5, 3:5] = S
    return ChartIsometry(spec, g or NGroupElement.identity(), P, "SL(2)" if s > 0 else "SL±(2)·det-1")


def check_psi_automorphism(iso: ChartIsometry, samples, tol: Tolerance | None = None) -> Check:
    """Ψ(xy) = Ψ(x)Ψ(y) on sample pairs."""
    G = iso.group
    res = []
    for x, y in samples:
        lhs = iso.apply_psi(G.mul(x, y)).coords()
        rhs = G.mul(iso.apply_psi(x), iso.apply_psi(y)).coords()
        res.append(lhs - rhs)
    return residual_check("psi_automorphism", res, tol, samples=len(res))


def closed_form_action(spec: SpaceSpec, g, S, point) -> np.ndarray:
    """The displayed action formulas, independent of the chart machinery.

    X/Y: t·(z,a)·(v,x,u) = (M(z, e^{−uL}a)(v,x), u+t), S unused.
    N: (z,a,l)·S·(v,u) = (|S|Sv + z − (κ/3)α(l,Su)(Su+½l) − κa(Su+l), Su+l).
    """
    from ..groups import alpha2, heisenberg_affine_rep
    from ..numeric import matrix_exp

    p = np.asarray(point, dtype=object)
    if spec.family in ("X1", "X2", "Y"):
        L, _ = L_of(spec)
        b = matrix_exp(L, -p[3]) @ g.a
        M = heisenberg_affine_rep(g.z, b)
        head = M @ np.concatenate([p[0:3], [Fraction(1)]])
        return np.concatenate([head[0:3], [p[3] + g.t]])
    S = as_obj(S)
    s = 1 if det(S) > 0 else -1
    k = spec.kappa
    v, u = p[0:2], p[2:4]
    Su = S @ u
    al = alpha2(g.l, Su)
    new_v = s * (S @ v) + g.z - Fraction(k, 3) * al * (Su + g.l / 2) - k * g.a * (Su + g.l)
    return np.concatenate([new_v, Su + g.l])


def pullback_residuals(spec: SpaceSpec, iso, points) -> list:
    """JᵀG(φ(p))J − G(p) at each point, J the dual-number Jacobian of the isometry."""
    model = model_metric(spec)
    out = []
    for p in points:
        image, J = value_and_jacobian(iso, p)
        out.append(J.T @ model(image) @ J - model(p))
    return out


def pullback_check(spec: SpaceSpec, iso, points, tol: Tolerance | None = None) -> Check:
    if spec.family in ("Z", "Zprime"):
        from .extrinsic import embedded_pullback_check

        return embedded_pullback_check(spec, iso, points, tol)
    return residual_check("pullback", pullback_residuals(spec, iso, points), tol, samples=len(points))
