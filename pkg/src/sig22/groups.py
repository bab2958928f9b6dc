"""Transvection and isometry groups: G_L = H(ω)⋊ℝ, the N(κ) group and affine groups.

Group elements are stored in coordinates.  All multiplication laws are
polynomial apart from exp(tL), so they evaluate on Fractions, floats and dual
numbers alike.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .catalog import SpaceSpec, build_triple, l_of, semidirect_presentation, y_basis
from .dual import jacobian
from .lie import LieAlgebra
from .numeric import Tolerance, as_obj, det, diag, eye, inverse, mat, matrix_exp, solve, vec, zeros

HALF = Fraction(1, 2)

OMEGA0 = mat([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
"""Gram of ω₀(a, a') = a1a3' − a3a1' + a2a4' − a4a2'; a₊ = (a1, a2), a₋ = (a3, a4)."""


def omega(a, b, form=OMEGA0):
    return np.asarray(a, dtype=object) @ form @ np.asarray(b, dtype=object)


def _plus(a):
    out = np.array(a, dtype=object)
    out[2:] = Fraction(0)
    return out


def _minus(a):
    out = np.array(a, dtype=object)
    out[:2] = Fraction(0)
    return out


# -- G_L ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HeisExtElement:
    """t·(z, a) in H(ω)⋊ℝ."""
    z: object
    a: np.ndarray
    t: object

    def __post_init__(self):
        object.__setattr__(self, "a", np.asarray(self.a, dtype=object))

    @classmethod
    def identity(cls):
        return cls(Fraction(0), vec([0, 0, 0, 0]), Fraction(0))

    @classmethod
    def from_coords(cls, c):
        c = np.asarray(c, dtype=object)
        return cls(c[0], c[1:5], c[5])

    def coords(self) -> np.ndarray:
        out = np.empty(6, dtype=object)
        out[0], out[1:5], out[5] = self.z, self.a, self.t
        return out


def heis_mul(form, x, y):
    """(z,a)·(z',a') = (z + z' + ½ω(a,a'), a + a')."""
    (z, a), (z2, a2) = x, y
    return (z + z2 + HALF * omega(a, a2, form), np.asarray(a, dtype=object) + np.asarray(a2, dtype=object))


def gL_mul(L, form, x: HeisExtElement, y: HeisExtElement) -> HeisExtElement:
    """t·(z,a) · t'·(z',a') = (t+t')·((z, e^{−t'L}a)·(z',a'))."""
    a_moved = matrix_exp(L, -y.t) @ x.a
    z, a = heis_mul(form, (x.z, a_moved), (y.z, y.a))
    return HeisExtElement(z, a, x.t + y.t)


def gL_inv(L, x: HeisExtElement) -> HeisExtElement:
    return HeisExtElement(-x.z, -(matrix_exp(L, x.t) @ x.a), -x.t)


def L_of(spec: SpaceSpec):
    """(L, ω₀) presenting the transvection group of an X or Y space as G_L."""
    f = spec.family
    if f == "X1":
        e1, e2, lam = spec.eps1, spec.eps2, spec.lam
        L = mat([[0, 0, -e1, 0], [0, 0, 0, -e2 * lam * lam], [-1, 0, 0, 0], [0, 1, 0, 0]])
    elif f == "X2":
        nu = spec.nu
        L = mat([[0, 0, nu * nu - 1, -2 * nu], [0, 0, -2 * nu, -(nu * nu - 1)], [-1, 0, 0, 0], [0, 1, 0, 0]])
    elif f == "Y":
        e, k = spec.eps, spec.kappa
        L = mat([[0, 0, 0, 1], [0, 0, 1, -k], [e * k, -e, 0, 0], [-e, 0, 0, 0]])
    else:
        raise ValueError(f"{f} is not presented as a Heisenberg extension G_L")
    return L, OMEGA0


def a_basis_change(spec: SpaceSpec) -> np.ndarray:
    """Matrix T with â = T a taking the catalog module coordinates to ω₀-coordinates."""
    if spec.family == "X1":
        return diag([-1, spec.lam, 1, 1])
    if spec.family == "X2":
        nu = spec.nu
        return mat([[-nu, -1, 0, 0], [1, -nu, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    raise ValueError("only X1 and X2 use a module basis change")


@lru_cache(maxsize=None)
def _ad_basis(eps) -> tuple:
    l = l_of(SpaceSpec.Z(eps, 0))
    return tuple(l.ad(l.basis(i)) for i in range(3))


def group_basis(spec: SpaceSpec) -> np.ndarray:
    """Columns: the group's coordinate directions at the identity, in catalog triple coordinates."""
    f = spec.family
    if f in ("X1", "X2"):
        P = zeros(6, 6)
        P[0, 0] = P[5, 5] = Fraction(1)
        P[1:5, 1:5] = inverse(a_basis_change(spec))
        return P
    if f == "Y":
        return y_basis(spec.eps, spec.kappa)
    if f == "N":
        # z ∈ l is identified with −α(z,·) ∈ l*: ∂z1 ↦ −σ², ∂z2 ↦ σ¹
        return mat([
            [0, 1, 0, 0, 0],
            [-1, 0, 0, 0, 0],
            [0, 0, 1, 0, 0],
            [0, 0, 0, 1, 0],
            [0, 0, 0, 0, 1],
        ])
    if f in ("Z", "Zprime"):
        return inverse(semidirect_presentation(spec).F)
    raise ValueError(f)


class GLGroup:
    """G_L with the chart Φ(t·(z,a)Ĝ₊) = (z + ½ω(a₊,a₋), a₋, t)."""

    dim = 6
    chart_dim = 4

    def __init__(self, L, form=OMEGA0):
        self.L = as_obj(L)
        self.form = as_obj(form)

    @classmethod
    def of(cls, spec: SpaceSpec) -> "GLGroup":
        return cls(*L_of(spec))

    element = HeisExtElement

    def mul(self, x, y):
        return gL_mul(self.L, self.form, x, y)

    def inv(self, x):
        return gL_inv(self.L, x)

    def identity(self):
        return HeisExtElement.identity()

    def phi(self, g: HeisExtElement) -> np.ndarray:
        ap, am = _plus(g.a), _minus(g.a)
        return vec([g.z + HALF * omega(ap, am, self.form), am[2], am[3], g.t])

    def phi_inv(self, p) -> HeisExtElement:
        p = np.asarray(p, dtype=object)
        return HeisExtElement(p[0], vec([0, 0, p[1], p[2]]), p[3])

    def stabilizer(self, a_plus) -> HeisExtElement:
        return HeisExtElement(Fraction(0), vec([a_plus[0], a_plus[1], 0, 0]), Fraction(0))

    def origin_indices(self):
        """Group coordinates matching the chart directions (v, x1, x2, u)."""
        return [0, 3, 4, 5]


# -- N(κ) -----------------------------------------------------------------

def alpha2(l, m):
    return l[0] * m[1] - l[1] * m[0]


@dataclass(frozen=True, eq=False)
class NGroupElement:
    z: np.ndarray
    a: object
    l: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "z", np.asarray(self.z, dtype=object))
        object.__setattr__(self, "l", np.asarray(self.l, dtype=object))

    @classmethod
    def identity(cls):
        return cls(vec([0, 0]), Fraction(0), vec([0, 0]))

    @classmethod
    def from_coords(cls, c):
        c = np.asarray(c, dtype=object)
        return cls(c[0:2], c[2], c[3:5])

    def coords(self) -> np.ndarray:
        out = np.empty(5, dtype=object)
        out[0:2], out[2], out[3:5] = self.z, self.a, self.l
        return out


def n_mul(kappa, x: NGroupElement, y: NGroupElement) -> NGroupElement:
    """(z,a,l)(ẑ,â,l̂) = (z+ẑ+(κ/3)α(l,l̂)(l+½l̂)+κâl, a+â+½α(l,l̂), l+l̂)."""
    al = alpha2(x.l, y.l)
    k3 = Fraction(kappa, 3) if not isinstance(kappa, float) else kappa / 3
    z = x.z + y.z + k3 * al * (x.l + HALF * y.l) + kappa * y.a * x.l
    return NGroupElement(z, x.a + y.a + HALF * al, x.l + y.l)


def n_inv(kappa, x: NGroupElement) -> NGroupElement:
    return NGroupElement(-x.z + kappa * x.a * x.l, -x.a, -x.l)


class NGroup:
    """The N(κ) group with chart Φ((z,a,l)Ĝ₊) = (z − κal, l)."""

    dim = 5
    chart_dim = 4
    element = NGroupElement

    def __init__(self, kappa):
        self.kappa = kappa

    @classmethod
    def of(cls, spec: SpaceSpec) -> "NGroup":
        return cls(spec.kappa)

    def mul(self, x, y):
        return n_mul(self.kappa, x, y)

    def inv(self, x):
        return n_inv(self.kappa, x)

    def identity(self):
        return NGroupElement.identity()

    def phi(self, g: NGroupElement) -> np.ndarray:
        v = g.z - self.kappa * g.a * g.l
        out = np.empty(4, dtype=object)
        out[0:2], out[2:4] = v, g.l
        return out

    def phi_inv(self, p) -> NGroupElement:
        p = np.asarray(p, dtype=object)
        return NGroupElement(p[0:2], Fraction(0), p[2:4])

    def stabilizer(self, a) -> NGroupElement:
        return NGroupElement(vec([0, 0]), a, vec([0, 0]))

    def origin_indices(self):
        return [0, 1, 3, 4]


def transvection_group(spec: SpaceSpec):
    if spec.family in ("X1", "X2", "Y"):
        return GLGroup.of(spec)
    if spec.family == "N":
        return NGroup.of(spec)
    raise ValueError(f"{spec.family} is handled through its extrinsic model, not a chart")


def chart_phi(spec: SpaceSpec, g) -> np.ndarray:
    return transvection_group(spec).phi(g)


def chart_phi_inverse(spec: SpaceSpec, point):
    return transvection_group(spec).phi_inv(point)


# -- the affine Heisenberg representation -----------------------------------

def heisenberg_affine_rep(z, a) -> np.ndarray:
    """4×4 homogeneous matrix of M(z,a) = ([[1, a₊ᵀ], [0, I]], (z + ½⟨a₊,a₋⟩, a₋)) on ℝ³."""
    a = np.asarray(a, dtype=object)
    ap, am = a[:2], a[2:]
    M = eye(4)
    M[0, 1], M[0, 2] = ap[0], ap[1]
    M[0, 3] = z + HALF * (ap @ am)
    M[1, 3], M[2, 3] = am[0], am[1]
    return M


def heisenberg_affine_unrep(M):
    """Recover (z, a) from M(z, a)."""
    M = np.asarray(M, dtype=object)
    ap = M[0, 1:3]
    am = M[1:3, 3]
    z = M[0, 3] - HALF * (ap @ am)
    return z, vec([ap[0], ap[1], am[0], am[1]])


# -- affine groups for Z and Z' -----------------------------------------------

def eps_gram(eps) -> np.ndarray:
    return diag([eps, 1, 1])


def cross_eps(eps, u, v) -> np.ndarray:
    """e1×e2 = e3, e2×e3 = εe1, e3×e1 = e2."""
    u, v = np.asarray(u, dtype=object), np.asarray(v, dtype=object)
    out = np.empty(3, dtype=object)
    out[0] = eps * (u[1] * v[2] - u[2] * v[1])
    out[1] = u[2] * v[0] - u[0] * v[2]
    out[2] = u[0] * v[1] - u[1] * v[0]
    return out


AFFINE_GROUPS = {
    "SO(3)": (1, True, False),
    "O(3)": (1, False, False),
    "SO0(1,2)": (-1, True, True),
    "O+(1,2)": (-1, False, True),
    "O(1,2)": (-1, False, False),
}
"""name -> (ε of the gram diag(ε,1,1), determinant one, time orientation preserved)."""


def in_group(A, group: str, tol: Tolerance | None = None) -> bool:
    tol = tol or Tolerance(1e-8, 1e-8)
    eps, special, orthochronous = AFFINE_GROUPS[group]
    A = as_obj(A)
    G = eps_gram(eps)
    if not tol.allclose(A.T @ G @ A, G):
        return False
    if special and not tol.close(det(A), 1):
        return False
    if orthochronous and not float(A[0, 0]) > 0:
        return False
    return True


def det_sign(A) -> int:
    return 1 if float(det(A)) > 0 else -1


@dataclass(frozen=True, eq=False)
class AffineElement:
    """(b, A) acting on ℝ³ by x ↦ |A|Ax + b; composition (b1 + |A1|A1b2, A1A2)."""
    b: np.ndarray
    A: np.ndarray
    group: str = "SO(3)"

    def __post_init__(self):
        object.__setattr__(self, "b", np.asarray(self.b, dtype=object))
        object.__setattr__(self, "A", as_obj(self.A))
        if self.group not in AFFINE_GROUPS:
            raise ValueError(f"unknown group {self.group}")
        if not in_group(self.A, self.group):
            raise ValueError(f"matrix is not in {self.group}")

    @property
    def eps(self) -> int:
        return AFFINE_GROUPS[self.group][0]

    def __matmul__(self, other: "AffineElement") -> "AffineElement":
        s = det_sign(self.A)
        group = self.group if self.group == other.group else _wider(self.group, other.group)
        return AffineElement(self.b + s * (self.A @ other.b), self.A @ other.A, group)

    def inverse(self) -> "AffineElement":
        Ai = inverse(self.A)
        s = det_sign(self.A)
        return AffineElement(-s * (Ai @ self.b), Ai, self.group)

    @classmethod
    def identity(cls, group="SO(3)"):
        return cls(vec([0, 0, 0]), eye(3), group)


def _wider(g1, g2):
    for g in ("O(3)", "O(1,2)", "O+(1,2)"):
        if AFFINE_GROUPS[g][0] == AFFINE_GROUPS[g1][0] and g in (g1, g2):
            return g
    return g1


def ad_basis(eps) -> list:
    """ad(e_i) on l = su(2) or sl(2,ℝ); ad(ω)u = ω ×_ε u."""
    return list(_ad_basis(eps))


def hat(eps, w) -> np.ndarray:
    out = zeros(3, 3)
    for wi, ad in zip(w, ad_basis(eps)):
        out = out + wi * ad
    return out


# -- structure constants from multiplication ---------------------------------

def _conjugation_bracket(conj, n: int) -> LieAlgebra:
    """c_ij^k = ∂x_i ∂y_j of conj(x, y) = g(x) h(y) g(x)⁻¹ at the identity."""
    origin = zeros(n)

    def inner(x):
        return jacobian(lambda y: conj(x, y), origin).ravel()

    H = jacobian(inner, origin)  # rows (k, j), columns i
    c = zeros(n, n, n)
    for k in range(n):
        for j in range(n):
            for i in range(n):
                c[i, j, k] = H[k * n + j, i]
    return LieAlgebra(c)


def structure_constants_from_group(spec: SpaceSpec) -> LieAlgebra:
    """Lie bracket in the group's coordinate directions, by dual-number commutators."""
    f = spec.family
    if f in ("X1", "X2", "Y", "N"):
        G = transvection_group(spec)
        E = G.element

        def conj(x, y):
            g, h = E.from_coords(x), E.from_coords(y)
            return G.mul(G.mul(g, h), G.inv(g)).coords()

        return _conjugation_bracket(conj, G.dim)
    if f in ("Z", "Zprime"):
        eps = spec.eps if f == "Z" else -1
        M = np.stack([a.ravel() for a in ad_basis(eps)], axis=1)
        readout = inverse(M.T @ M) @ M.T

        def cayley(w):
            K = hat(eps, w) * HALF
            return solve(eye(3) - K, eye(3) + K)

        def mul(x, y):
            (b1, A1), (b2, A2) = x, y
            return b1 + A1 @ b2, A1 @ A2

        def inv(x):
            b, A = x
            Ai = inverse(A)
            return -(Ai @ b), Ai

        def conj(x, y):
            g = (x[:3], cayley(x[3:]))
            h = (y[:3], cayley(y[3:]))
            b, A = mul(mul(g, h), inv(g))
            out = np.empty(6, dtype=object)
            out[:3] = b
            out[3:] = readout @ (A - eye(3)).ravel()
            return out

        return _conjugation_bracket(conj, 6)
    raise ValueError(f)


@lru_cache(maxsize=None)
def catalog_in_group_basis(spec: SpaceSpec):
    """The catalog triple rewritten in the group's coordinate directions."""
    return build_triple(spec).change_basis(group_basis(spec))
