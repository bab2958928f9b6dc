"""The six families of (2,2) symmetric spaces, their triples and presentations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .checks import Report, bool_check, residual_check
from .lie import InvolutiveMetricLieAlgebra, LieAlgebra, beta_l, derivation_residual, killing_form
from .numeric import SymBilinearForm, Tolerance, as_obj, diag, eye, inverse, is_exact, mat, nullspace, rank, render_scalar, zeros
from .quadext import OrthogonalModule, QuadraticCocycle, SymmetricTriple, build_quadratic_extension

FAMILIES = ("X1", "X2", "N", "Y", "Z", "Zprime")

PARAMS = {
    "X1": ("eps1", "eps2", "lam"),
    "X2": ("nu",),
    "N": ("kappa",),
    "Y": ("eps", "kappa"),
    "Z": ("eps", "c"),
    "Zprime": ("c",),
}

DOMAINS = {
    "X1": "eps1, eps2 in {1, -1}; lam > 0",
    "X2": "nu > 0",
    "N": "kappa in {1, -1}",
    "Y": "eps, kappa in {1, -1}",
    "Z": "eps in {1, -1}; c real",
    "Zprime": "c real",
}


def _sign(x, name):
    if x not in (1, -1):
        raise ValueError(f"{name} must be 1 or -1, got {x}")
    return int(x)


def _scalar(x):
    if isinstance(x, float):
        return x
    return Fraction(x)


@dataclass(frozen=True)
class SpaceSpec:
    family: str
    eps1: int | None = None
    eps2: int | None = None
    lam: object = None
    nu: object = None
    kappa: int | None = None
    eps: int | None = None
    c: object = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        wanted = PARAMS[self.family]
        for name in ("eps1", "eps2", "lam", "nu", "kappa", "eps", "c"):
            value = getattr(self, name)
            if name not in wanted:
                if value is not None:
                    raise ValueError(f"{self.family} takes no parameter {name}")
                continue
            if value is None:
                raise ValueError(f"{self.family} needs parameter {name}")
            if name in ("eps1", "eps2", "kappa", "eps"):
                object.__setattr__(self, name, _sign(value, name))
            else:
                value = _scalar(value)
                if name in ("lam", "nu") and not value > 0:
                    raise ValueError(f"{name} must be strictly positive, got {value}")
                object.__setattr__(self, name, value)

    @classmethod
    def X1(cls, eps1, eps2, lam):
        return cls("X1", eps1=eps1, eps2=eps2, lam=lam)

    @classmethod
    def X2(cls, nu):
        return cls("X2", nu=nu)

    @classmethod
    def N(cls, kappa):
        return cls("N", kappa=kappa)

    @classmethod
    def Y(cls, eps, kappa):
        return cls("Y", eps=eps, kappa=kappa)

    @classmethod
    def Z(cls, eps, c):
        return cls("Z", eps=eps, c=c)

    @classmethod
    def Zprime(cls, c):
        return cls("Zprime", c=c)

    @property
    def params(self) -> dict:
        return {name: getattr(self, name) for name in PARAMS[self.family]}

    @property
    def label(self) -> str:
        inner = ",".join(render_scalar(v) for v in self.params.values())
        return f"{self.family}({inner})"

    @property
    def is_exact(self) -> bool:
        return all(is_exact(v) for v in self.params.values())

    def __str__(self):
        return self.label


HALF = Fraction(1, 2)
GRID_POSITIVE = (HALF, Fraction(1), Fraction(2))
GRID_C = (Fraction(-1), Fraction(0), Fraction(1))
FULL_POSITIVE = GRID_POSITIVE + (Fraction(1, 3), Fraction(3))
FULL_C = GRID_C + (Fraction(-2), Fraction(2))


def grid(full: bool = False) -> list[SpaceSpec]:
    """Parameter grid in stable (family, parameter) order."""
    pos = sorted(FULL_POSITIVE if full else GRID_POSITIVE)
    cs = sorted(FULL_C if full else GRID_C)
    out = []
    out += [SpaceSpec.X1(e1, e2, lam) for e1 in (1, -1) for e2 in (1, -1) for lam in pos]
    out += [SpaceSpec.X2(nu) for nu in pos]
    out += [SpaceSpec.N(k) for k in (1, -1)]
    out += [SpaceSpec.Y(e, k) for e in (1, -1) for k in (1, -1)]
    out += [SpaceSpec.Z(e, c) for e in (1, -1) for c in cs]
    out += [SpaceSpec.Zprime(c) for c in cs]
    return out


# -- the Lie algebras l ----------------------------------------------------

def l_Y(eps) -> LieAlgebra:
    """[e1,e2] = e3, [e1,e3] = −ε e2."""
    return LieAlgebra.from_brackets(3, {(0, 1): {2: 1}, (0, 2): {1: -eps}})


def l_Z(eps) -> LieAlgebra:
    """[e1,e2] = e3, [e1,e3] = −e2, [e2,e3] = ε e1: su(2) for ε = 1, sl(2,R) for ε = −1."""
    return LieAlgebra.from_brackets(3, {(0, 1): {2: 1}, (0, 2): {1: -1}, (1, 2): {0: eps}})


def theta_l_of(spec: SpaceSpec) -> np.ndarray:
    return {
        "X1": diag([-1]), "X2": diag([-1]), "N": diag([-1, -1]),
        "Y": diag([-1, -1, 1]), "Z": diag([1, -1, -1]), "Zprime": diag([-1, 1, -1]),
    }[spec.family]


def l_of(spec: SpaceSpec) -> LieAlgebra:
    f = spec.family
    if f in ("X1", "X2"):
        return LieAlgebra.abelian(1)
    if f == "N":
        return LieAlgebra.abelian(2)
    if f == "Y":
        return l_Y(spec.eps)
    if f == "Z":
        return l_Z(spec.eps)
    return l_Z(-1)


def beta_of(spec: SpaceSpec) -> SymBilinearForm:
    """The invariant form on l used by the l⋊l presentation (Z and Z′)."""
    if spec.family == "Z":
        return beta_l(l_Z(spec.eps), spec.eps)
    if spec.family == "Zprime":
        return SymBilinearForm(killing_form(l_Z(-1)).gram / 2)
    raise ValueError("beta is only defined for Z and Z'")


def module_of(spec: SpaceSpec) -> tuple[OrthogonalModule, QuadraticCocycle]:
    f = spec.family
    l, tl = l_of(spec), theta_l_of(spec)
    if f == "X1":
        e1, e2, lam = spec.eps1, spec.eps2, spec.lam
        rho = mat([[0, 0, e1, 0], [0, 0, 0, -e2 * lam], [1, 0, 0, 0], [0, lam, 0, 0]])
        mod = OrthogonalModule(l, tl, (rho,), SymBilinearForm(diag([e1, e2, -1, 1])), diag([1, 1, -1, -1]))
        return mod, QuadraticCocycle.zero(1, 4)
    if f == "X2":
        nu = spec.nu
        rho = mat([[0, 0, -nu, 1], [0, 0, 1, nu], [nu, 1, 0, 0], [1, -nu, 0, 0]])
        mod = OrthogonalModule(l, tl, (rho,), SymBilinearForm(diag([-1, 1, -1, 1])), diag([1, 1, -1, -1]))
        return mod, QuadraticCocycle.zero(1, 4)
    if f == "N":
        mod = OrthogonalModule(l, tl, (zeros(1, 1), zeros(1, 1)), SymBilinearForm(diag([spec.kappa])), diag([1]))
        return mod, QuadraticCocycle.from_values(2, 1, alpha={(0, 1): [1]})
    gamma = {"Y": lambda: spec.kappa, "Z": lambda: spec.c, "Zprime": lambda: spec.c}[f]()
    mod = OrthogonalModule(l, tl, (zeros(0, 0),) * 3, SymBilinearForm(zeros(0, 0)), zeros(0, 0))
    return mod, QuadraticCocycle.from_values(3, 0, gamma={(0, 1, 2): gamma})


def build_triple(spec: SpaceSpec, tol: Tolerance | None = None, check: bool = True) -> SymmetricTriple:
    module, cocycle = module_of(spec)
    return build_quadratic_extension(module, cocycle, label=spec.label, tol=tol, check=check)


# -- presentations ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PresentationMap:
    """A linear map ``F`` from source coordinates to target coordinates."""
    source: InvolutiveMetricLieAlgebra
    target: InvolutiveMetricLieAlgebra
    F: np.ndarray

    def apply(self, x):
        return as_obj(self.F) @ np.asarray(x, dtype=object)

    def check(self, tol: Tolerance | None = None) -> Report:
        S, T, F = self.source, self.target, as_obj(self.F)
        rep = Report("presentation")
        rep.add(bool_check("invertible", rank(F, tol) == S.dim == T.dim))
        hom = []
        for i in range(S.dim):
            for j in range(i + 1, S.dim):
                ei, ej = S.algebra.basis(i), S.algebra.basis(j)
                hom.append(F @ S.bracket(ei, ej) - T.bracket(F @ ei, F @ ej))
        rep.add(residual_check("homomorphism", hom, tol))
        rep.add(residual_check("isometry", F.T @ T.gram.gram @ F - S.gram.gram, tol))
        rep.add(residual_check("theta_equivariance", F @ S.theta - T.theta @ F, tol))
        return rep


def semidirect_triple(l: LieAlgebra, beta: SymBilinearForm, theta_l, c, label: str = "") -> SymmetricTriple:
    """l⋊l with ⟨(v,u),(v',u')⟩ = β(v,u') + β(v',u) − 2cβ(u,u') and θ_l ⊕ θ_l.

    The first factor is an abelian ideal on which the second acts by ad.
    """
    m = l.dim
    n = 2 * m
    cst = zeros(n, n, n)
    for i in range(m):
        for j in range(m):
            br = l.structure[i, j]
            for k in range(m):
                cst[m + i, m + j, m + k] = br[k]  # [u, u']
                cst[m + i, j, k] = br[k]          # [u, v'] = ad(u)v'
                cst[j, m + i, k] = -br[k]
    B = beta.gram
    gram = zeros(n, n)
    gram[:m, m:] = B
    gram[m:, :m] = B
    gram[m:, m:] = -2 * Fraction(c) * B if not isinstance(c, float) else -2 * c * B
    th = zeros(n, n)
    th[:m, :m] = as_obj(theta_l)
    th[m:, m:] = as_obj(theta_l)
    names = tuple(f"v{i + 1}" for i in range(m)) + tuple(f"u{i + 1}" for i in range(m))
    return SymmetricTriple(LieAlgebra(cst, names), SymBilinearForm(gram), th, label,
                           blocks={"v": (0, m), "u": (m, n)})


def dc_isomorphism(eps, c, prime: bool = False) -> PresentationMap:
    """Map from the γ = c presentation to l⋊l: z + l ↦ (β⁻¹z + c l, l)."""
    spec = SpaceSpec.Zprime(c) if prime else SpaceSpec.Z(eps, c)
    source = build_triple(spec)
    l, beta = l_of(spec), beta_of(spec)
    target = semidirect_triple(l, beta, theta_l_of(spec), spec.c, label=spec.label + " l⋊l")
    m = l.dim
    F = zeros(2 * m, 2 * m)
    F[:m, :m] = inverse(beta.gram)
    F[:m, m:] = spec.c * eye(m)
    F[m:, m:] = eye(m)
    return PresentationMap(source, target, F)


def semidirect_presentation(spec: SpaceSpec) -> PresentationMap:
    if spec.family == "Z":
        return dc_isomorphism(spec.eps, spec.c)
    if spec.family == "Zprime":
        return dc_isomorphism(None, spec.c, prime=True)
    raise ValueError("l⋊l presentations exist for Z and Z' only")


def y_basis(eps, kappa) -> np.ndarray:
    """Columns b1..b6 in the coordinates (σ1, σ2, σ3, e1, e2, e3)."""
    k2 = Fraction(kappa, 2)
    cols = [
        [1, 0, 0, 0, 0, 0],             # b1 = σ1
        [0, 0, k2, 0, 0, -1],           # b2 = −e3 + (κ/2)σ3
        [0, 0, 1, 0, 0, 0],             # b3 = σ3
        [0, eps, 0, 0, 0, 0],           # b4 = εσ2
        [0, eps * k2, 0, 0, -1, 0],     # b5 = −e2 + (εκ/2)σ2
        [0, 0, 0, 1, 0, 0],             # b6 = e1
    ]
    return mat(cols).T


def y_expected_algebra(eps, kappa) -> LieAlgebra:
    """Commutators of b1..b6: [b2,b4] = [b3,b5] = b1 and the action of b6."""
    return LieAlgebra.from_brackets(6, {
        (1, 3): {0: 1}, (2, 4): {0: 1},
        (5, 1): {4: -eps, 3: eps * kappa},
        (5, 2): {3: -eps},
        (5, 3): {2: 1},
        (5, 4): {1: 1, 2: -kappa},
    })


def y_heisenberg_presentation(eps, kappa) -> PresentationMap:
    source = build_triple(SpaceSpec.Y(eps, kappa))
    P = y_basis(eps, kappa)
    target = source.change_basis(P, label=source.label + " b-basis")
    return PresentationMap(source, target, inverse(P))


# -- complex and para-complex structures ------------------------------------

def _lift(triple: SymmetricTriple, J_l) -> np.ndarray:
    """(−J_l*) ⊕ 0 ⊕ J_l on l* ⊕ a ⊕ l."""
    J_l = as_obj(J_l)
    J = zeros(triple.dim, triple.dim)
    zs, ls = triple.block("l*"), triple.block("l")
    J[zs.start:zs.stop, zs.start:zs.stop] = -J_l.T
    J[ls.start:ls.stop, ls.start:ls.stop] = J_l
    return J


def hermitian_J(spec: SpaceSpec):
    if spec.family == "N":
        return _lift(build_triple(spec), mat([[0, -1], [1, 0]]))
    if spec.family == "Z":
        l = l_of(spec)
        return _lift(build_triple(spec), l.ad(l.basis(0)))
    return None


def para_J(spec: SpaceSpec):
    if spec.family == "N":
        return _lift(build_triple(spec), diag([1, -1]))
    if spec.family == "Zprime":
        l = l_of(spec)
        return _lift(build_triple(spec), l.ad(l.basis(1)))
    return None


def check_J(triple: SymmetricTriple, J, square_sign: int, tol: Tolerance | None = None) -> Report:
    """Axioms of a parallel (para-)complex structure encoded as a derivation."""
    J = as_obj(J)
    G, th = triple.gram.gram, triple.theta
    M, P = triple.minus_basis, triple.plus_basis
    rep = Report("J")
    rep.add(residual_check("J_antisymmetric", J.T @ G + G @ J, tol))
    rep.add(residual_check("J_derivation", derivation_residual(triple.algebra, J), tol))
    rep.add(residual_check("J_commutes_theta", J @ th - th @ J, tol))
    rep.add(residual_check("J_kills_g_plus", J @ P, tol))
    rep.add(residual_check("J_squared", J @ J @ M - square_sign * M, tol))
    return rep


def compatible_endomorphisms(triple: SymmetricTriple) -> np.ndarray:
    """Basis (as an array of matrices) of the antisymmetric derivations commuting with θ and killing g₊.

    These are exactly the candidates for J; an empty or nilpotent space rules J out.
    """
    n = triple.dim
    G, th, A = triple.gram.gram, triple.theta, triple.algebra
    P = triple.plus_basis
    rows = []

    def lin(fn):
        # collect the linear conditions fn(E) = 0 for each elementary matrix E
        cols = []
        for idx in range(n * n):
            E = zeros(n, n)
            E[divmod(idx, n)] = Fraction(1)
            cols.append(np.concatenate([np.asarray(r, dtype=object).ravel() for r in fn(E)]))
        return np.stack(cols, axis=1)

    rows.append(lin(lambda E: [E.T @ G + G @ E]))
    rows.append(lin(lambda E: [E @ th - th @ E]))
    rows.append(lin(lambda E: [E @ P]))
    rows.append(lin(lambda E: derivation_residual(A, E)))
    K = nullspace(np.concatenate(rows, axis=0))
    return np.array([K[:, k].reshape(n, n) for k in range(K.shape[1])], dtype=object)
