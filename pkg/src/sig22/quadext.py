"""Quadratic extensions d = l* ⊕ a ⊕ l and their cocycle calculus."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .checks import Check, Report, residual_check
from .lie import InvolutiveMetricLieAlgebra, LieAlgebra, automorphism_residual
from .numeric import SymBilinearForm, Tolerance, as_obj, eye, zeros


@dataclass(frozen=True, eq=False)
class OrthogonalModule:
    """A representation ρ of (l, θ_l) on (a, ⟨,⟩_a) with compatible involution θ_a."""
    l: LieAlgebra
    theta_l: np.ndarray
    rho: tuple  # rho[i] is the matrix of ρ(e_i) on a
    gram_a: SymBilinearForm
    theta_a: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "theta_l", as_obj(self.theta_l))
        object.__setattr__(self, "theta_a", as_obj(self.theta_a))
        object.__setattr__(self, "rho", tuple(as_obj(r) for r in self.rho))
        if not isinstance(self.gram_a, SymBilinearForm):
            object.__setattr__(self, "gram_a", SymBilinearForm(self.gram_a))
        if len(self.rho) != self.l.dim:
            raise ValueError("need one ρ matrix per basis vector of l")
        if any(r.shape != (self.a_dim, self.a_dim) for r in self.rho):
            raise ValueError("ρ matrices must act on a")

    @property
    def l_dim(self) -> int:
        return self.l.dim

    @property
    def a_dim(self) -> int:
        return self.gram_a.dim

    def rho_of(self, x) -> np.ndarray:
        out = zeros(self.a_dim, self.a_dim)
        for xi, r in zip(x, self.rho):
            out = out + xi * r
        return out

    def check(self, tol: Tolerance | None = None) -> Report:
        rep = Report("module")
        l, G = self.l, self.gram_a.gram
        hom = []
        for i, j in combinations(range(l.dim), 2):
            hom.append(self.rho_of(l.bracket(l.basis(i), l.basis(j)))
                       - (self.rho[i] @ self.rho[j] - self.rho[j] @ self.rho[i]))
        rep.add(residual_check("rho_homomorphism", hom, tol))
        rep.add(residual_check("rho_skew", [r.T @ G + G @ r for r in self.rho], tol))
        ta, tl = self.theta_a, self.theta_l
        rep.add(residual_check("theta_a_isometric_involution", [ta @ ta - eye(self.a_dim), ta.T @ G @ ta - G], tol))
        rep.add(residual_check("theta_l_automorphism",
                               [tl @ tl - eye(l.dim)] + automorphism_residual(l, tl), tol))
        eq = [ta @ self.rho_of(tl[:, i]) - self.rho[i] @ ta for i in range(l.dim)]
        rep.add(residual_check("theta_equivariance", eq, tol))
        return rep


@dataclass(frozen=True, eq=False)
class QuadraticCocycle:
    """alpha[i, j] ∈ a is α(e_i, e_j); gamma[i, j, k] is γ(e_i, e_j, e_k)."""
    alpha: np.ndarray
    gamma: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_obj(self.alpha))
        object.__setattr__(self, "gamma", as_obj(self.gamma))

    @classmethod
    def zero(cls, l_dim: int, a_dim: int) -> "QuadraticCocycle":
        return cls(zeros(l_dim, l_dim, a_dim), zeros(l_dim, l_dim, l_dim))

    @classmethod
    def from_values(cls, l_dim: int, a_dim: int, alpha: dict = None, gamma: dict = None) -> "QuadraticCocycle":
        """Fill antisymmetric forms from ``{(i, j): a-vector}`` and ``{(i, j, k): value}``."""
        al = zeros(l_dim, l_dim, a_dim)
        for (i, j), v in (alpha or {}).items():
            v = as_obj(v) if isinstance(v, np.ndarray) else np.array([Fraction(x) for x in v], dtype=object)
            al[i, j], al[j, i] = v, -v
        ga = zeros(l_dim, l_dim, l_dim)
        for (i, j, k), v in (gamma or {}).items():
            for perm, sign in _perms3(i, j, k):
                ga[perm] = sign * (v if isinstance(v, (float, Fraction)) else Fraction(v))
        return cls(al, ga)

    def alpha_of(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", np.asarray(x, dtype=object), np.asarray(y, dtype=object), self.alpha)

    def gamma_of(self, x, y, z):
        return np.einsum("i,j,k,ijk->", np.asarray(x, dtype=object), np.asarray(y, dtype=object),
                         np.asarray(z, dtype=object), self.gamma)


def _perms3(i, j, k):
    return [((i, j, k), 1), ((j, k, i), 1), ((k, i, j), 1), ((j, i, k), -1), ((i, k, j), -1), ((k, j, i), -1)]


def d_alpha(module: OrthogonalModule, cocycle: QuadraticCocycle, x, y, z) -> np.ndarray:
    """(dα)(x,y,z) = ρ(x)α(y,z) − ρ(y)α(x,z) + ρ(z)α(x,y) − α([x,y],z) + α([x,z],y) − α([y,z],x)."""
    l, rho, al = module.l, module.rho_of, cocycle.alpha_of
    return (rho(x) @ al(y, z) - rho(y) @ al(x, z) + rho(z) @ al(x, y)
            - al(l.bracket(x, y), z) + al(l.bracket(x, z), y) - al(l.bracket(y, z), x))


def d_gamma(l: LieAlgebra, cocycle: QuadraticCocycle, xs) -> object:
    """Chevalley–Eilenberg differential of a scalar 3-form on four arguments."""
    g = cocycle.gamma_of
    total = Fraction(0)
    for i, j in combinations(range(4), 2):
        rest = [xs[k] for k in range(4) if k not in (i, j)]
        total = total + (-1) ** (i + j) * g(l.bracket(xs[i], xs[j]), *rest)
    return total


def alpha_wedge_alpha(module: OrthogonalModule, cocycle: QuadraticCocycle, xs) -> object:
    """⟨α∧α⟩ on four arguments: the (2,2)-shuffle sum of ⟨α(·,·), α(·,·)⟩_a."""
    ip, al = module.gram_a, cocycle.alpha_of
    x1, x2, x3, x4 = xs
    return 2 * (ip(al(x1, x2), al(x3, x4)) - ip(al(x1, x3), al(x2, x4)) + ip(al(x1, x4), al(x2, x3)))


def check_cocycle(module: OrthogonalModule, cocycle: QuadraticCocycle, tol: Tolerance | None = None) -> Report:
    l = module.l
    m, k = l.dim, module.a_dim
    if cocycle.alpha.shape != (m, m, k) or cocycle.gamma.shape != (m, m, m):
        raise ValueError("cocycle dimensions do not match the module")
    basis = [l.basis(i) for i in range(m)]
    rep = Report("cocycle")
    da = [d_alpha(module, cocycle, *(basis[i] for i in idx)) for idx in combinations(range(m), 3)]
    rep.add(residual_check("d_alpha", da, tol, samples=max(1, len(da))))
    dg = []
    for idx in combinations(range(m), 4):
        xs = [basis[i] for i in idx]
        dg.append(d_gamma(l, cocycle, xs) - alpha_wedge_alpha(module, cocycle, xs) / 2)
    rep.add(residual_check("d_gamma", dg, tol, samples=max(1, len(dg))))
    tl, ta = module.theta_l, module.theta_a
    al_eq = [ta @ cocycle.alpha_of(tl @ x, tl @ y) - cocycle.alpha_of(x, y)
             for x, y in combinations(basis, 2)]
    rep.add(residual_check("alpha_theta", al_eq, tol))
    ga_eq = [cocycle.gamma_of(tl @ x, tl @ y, tl @ z) - cocycle.gamma_of(x, y, z)
             for x, y, z in combinations(basis, 3)]
    rep.add(residual_check("gamma_theta", ga_eq, tol))
    return rep


@dataclass(frozen=True, eq=False)
class SymmetricTriple(InvolutiveMetricLieAlgebra):
    """A symmetric triple with labelled index ranges, e.g. ``{"l*": (0, 1), "a": (1, 5), "l": (5, 6)}``."""
    blocks: dict = field(default_factory=dict)

    def block(self, name: str) -> range:
        lo, hi = self.blocks[name]
        return range(lo, hi)

    def block_basis(self, name: str) -> np.ndarray:
        cols = list(self.block(name))
        out = zeros(self.dim, len(cols))
        for k, i in enumerate(cols):
            out[i, k] = Fraction(1)
        return out

    def change_basis(self, P, label: str = "", blocks=None) -> "SymmetricTriple":
        """The same triple written in the basis formed by the columns of ``P``."""
        from .numeric import inverse
        P = as_obj(P)
        Pinv = inverse(P)
        return SymmetricTriple(self.algebra.change_basis(P), SymBilinearForm(P.T @ self.gram.gram @ P),
                               Pinv @ self.theta @ P, label or self.label, blocks=blocks or {})


def build_quadratic_extension(module: OrthogonalModule, cocycle: QuadraticCocycle, label: str = "",
                              tol: Tolerance | None = None, check: bool = True) -> SymmetricTriple:
    """Structure constants, gram and involution of d = l* ⊕ a ⊕ l (dual basis σ^i of l*)."""
    if check:
        rep = check_cocycle(module, cocycle, tol)
        if not rep.passed:
            raise ValueError(f"cocycle check failed: {[c.name for c in rep.failures()]}")
    l = module.l
    m, k = l.dim, module.a_dim
    n = 2 * m + k
    Z, A, Lb = 0, m, m + k  # offsets of the three blocks
    G_a = module.gram_a.gram
    c = zeros(n, n, n)

    def put(i, j, vec_out):
        for r, v in enumerate(vec_out):
            c[i, j, r] = v
            c[j, i, r] = -v

    for i in range(m):
        ei = l.basis(i)
        for j in range(m):
            ej = l.basis(j)
            if j > i:
                out = zeros(n)
                for r in range(m):
                    out[Z + r] = cocycle.gamma_of(ei, ej, l.basis(r))
                out[A:A + k] = cocycle.alpha_of(ei, ej)
                out[Lb:Lb + m] = l.bracket(ei, ej)
                put(Lb + i, Lb + j, out)
            # [e_i, σ^j] = ad*(e_i)σ^j = −σ^j ∘ ad(e_i)
            out = zeros(n)
            for r in range(m):
                out[Z + r] = -l.bracket(ei, l.basis(r))[j]
            put(Lb + i, Z + j, out)
        for p in range(k):
            ap = zeros(k)
            ap[p] = Fraction(1)
            # [e_i, a_p] = ρ(e_i)a_p − ⟨a_p, α(e_i, ·)⟩
            out = zeros(n)
            out[A:A + k] = module.rho[i] @ ap
            for r in range(m):
                out[Z + r] = -(ap @ G_a @ cocycle.alpha_of(ei, l.basis(r)))
            put(Lb + i, A + p, out)
    for p in range(k):
        for q in range(p + 1, k):
            # [a_p, a_q] = ⟨ρ(·)a_p, a_q⟩
            out = zeros(n)
            for r in range(m):
                out[Z + r] = (module.rho[r][:, p]) @ G_a[:, q]
            put(A + p, A + q, out)

    gram = zeros(n, n)
    gram[A:A + k, A:A + k] = G_a
    for i in range(m):
        gram[Z + i, Lb + i] = gram[Lb + i, Z + i] = Fraction(1)
    theta = zeros(n, n)
    theta[Z:Z + m, Z:Z + m] = module.theta_l.T
    theta[A:A + k, A:A + k] = module.theta_a
    theta[Lb:Lb + m, Lb:Lb + m] = module.theta_l
    names = tuple(f"s{i + 1}" for i in range(m)) + tuple(f"a{p + 1}" for p in range(k)) + l.names
    return SymmetricTriple(LieAlgebra(c, names), SymBilinearForm(gram), theta, label,
                           blocks={"l*": (Z, Z + m), "a": (A, A + k), "l": (Lb, Lb + m)})


def check_symmetric_triple(T: InvolutiveMetricLieAlgebra, tol: Tolerance | None = None,
                           expected_signature=(2, 2)) -> Report:
    return T.check(tol, expected_signature)


def ideal_checks(T: SymmetricTriple, samples: int = 200, seed: int = 0, tol: Tolerance | None = None) -> Check:
    """l* is an isotropic ideal preserved by random inner automorphisms exp(ad x)."""
    from .numeric import matrix_exp

    rng = np.random.default_rng(seed)
    Zb = T.block_basis("l*")
    outside = [i for i in range(T.dim) if i not in T.block("l*")]
    res = [Zb.T @ T.gram.gram @ Zb]
    for i in range(T.dim):
        res.append(T.algebra.ad(T.algebra.basis(i))[outside, :] @ Zb)
    for _ in range(samples):
        x = rng.uniform(-1, 1, T.dim)
        F = matrix_exp(T.algebra.ad(as_obj(x)), 1)
        res.append(F[outside, :] @ Zb)
    return residual_check("balanced_ideal", res, tol, samples=samples)
