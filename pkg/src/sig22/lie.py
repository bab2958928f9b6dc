"""Lie algebras given by dense structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .checks import Check, Report, bool_check, residual_check
from .numeric import (SymBilinearForm, Tolerance, as_obj, eye, inverse, is_zero_matrix, nullspace,
                      rank, signature, zeros)


def _is_zero(x) -> bool:
    return isinstance(x, (int, float, Fraction)) and x == 0


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """``structure[i, j, k]`` is the coefficient of e_k in [e_i, e_j]."""
    structure: np.ndarray
    names: tuple = ()

    def __post_init__(self):
        c = as_obj(self.structure)
        n = c.shape[0]
        if c.shape != (n, n, n):
            raise ValueError("structure constants must have shape (n, n, n)")
        object.__setattr__(self, "structure", c)
        sparse = {}
        for (i, j, k), v in np.ndenumerate(c):
            if v != 0:
                sparse.setdefault((i, j), []).append((k, v))
        object.__setattr__(self, "_sparse", sparse)
        if not self.names:
            object.__setattr__(self, "names", tuple(f"e{i + 1}" for i in range(n)))

    @classmethod
    def from_brackets(cls, n: int, brackets: dict, names=()) -> "LieAlgebra":
        """Build from ``{(i, j): {k: coeff}}`` (0-based), filling in antisymmetry."""
        c = zeros(n, n, n)
        for (i, j), out in brackets.items():
            for k, v in out.items():
                c[i, j, k] = Fraction(v) if not isinstance(v, float) else v
                c[j, i, k] = -c[i, j, k]
        return cls(c, tuple(names))

    @classmethod
    def abelian(cls, n: int) -> "LieAlgebra":
        return cls(zeros(n, n, n))

    @property
    def dim(self) -> int:
        return self.structure.shape[0]

    def basis(self, i: int) -> np.ndarray:
        v = zeros(self.dim)
        v[i] = Fraction(1)
        return v

    def bracket(self, x, y) -> np.ndarray:
        x, y = np.asarray(x, dtype=object), np.asarray(y, dtype=object)
        if x.shape != (self.dim,) or y.shape != (self.dim,):
            raise ValueError("bracket arguments must be vectors of the algebra's dimension")
        out = zeros(self.dim)
        xs = [(i, xi) for i, xi in enumerate(x) if not _is_zero(xi)]
        ys = [(j, yj) for j, yj in enumerate(y) if not _is_zero(yj)]
        for i, xi in xs:
            for j, yj in ys:
                for k, v in self._sparse.get((i, j), ()):
                    out[k] = out[k] + xi * yj * v
        return out

    def ad(self, x) -> np.ndarray:
        """Matrix of ad(x): column j is [x, e_j]."""
        out = zeros(self.dim, self.dim)
        for i, xi in enumerate(np.asarray(x, dtype=object)):
            if _is_zero(xi):
                continue
            for j in range(self.dim):
                for k, v in self._sparse.get((i, j), ()):
                    out[k, j] = out[k, j] + xi * v
        return out

    def change_basis(self, P) -> "LieAlgebra":
        """Structure constants in the basis given by the columns of ``P``."""
        P = as_obj(P)
        Pinv = inverse(P)
        c = np.einsum("ia,jb,ijk,ck->abc", P, P, self.structure, Pinv)
        return LieAlgebra(c)

    def is_antisymmetric(self) -> bool:
        return is_zero_matrix(self.structure + np.transpose(self.structure, (1, 0, 2)))


def check_jacobi(A: LieAlgebra, tol: Tolerance | None = None) -> Check:
    """[[e_i,e_j],e_k] + cyclic on all i < j < k."""
    res = []
    for i, j, k in combinations(range(A.dim), 3):
        ei, ej, ek = A.basis(i), A.basis(j), A.basis(k)
        res.append(A.bracket(A.bracket(ei, ej), ek) + A.bracket(A.bracket(ej, ek), ei)
                   + A.bracket(A.bracket(ek, ei), ej))
    return residual_check("jacobi", res, tol, samples=max(1, len(res)))


def killing_form(A: LieAlgebra) -> SymBilinearForm:
    ads = [A.ad(A.basis(i)) for i in range(A.dim)]
    g = zeros(A.dim, A.dim)
    for i in range(A.dim):
        for j in range(A.dim):
            g[i, j] = np.trace(ads[i] @ ads[j])
    return SymBilinearForm(g)


def beta_l(A: LieAlgebra, eps) -> SymBilinearForm:
    """−ε/2 times the Killing form."""
    return SymBilinearForm(killing_form(A).gram * (-Fraction(eps) / 2))


def derivation_residual(A: LieAlgebra, D) -> list:
    D = as_obj(D)
    out = []
    for i in range(A.dim):
        for j in range(i + 1, A.dim):
            ei, ej = A.basis(i), A.basis(j)
            out.append(D @ A.bracket(ei, ej) - A.bracket(D @ ei, ej) - A.bracket(ei, D @ ej))
    return out


def is_derivation(A: LieAlgebra, D, tol: Tolerance | None = None) -> bool:
    return residual_check("derivation", derivation_residual(A, D), tol).passed


def automorphism_residual(A: LieAlgebra, F) -> list:
    F = as_obj(F)
    out = []
    for i in range(A.dim):
        for j in range(i + 1, A.dim):
            ei, ej = A.basis(i), A.basis(j)
            out.append(F @ A.bracket(ei, ej) - A.bracket(F @ ei, F @ ej))
    return out


def is_automorphism(A: LieAlgebra, F, tol: Tolerance | None = None) -> bool:
    F = as_obj(F)
    if rank(F, tol) != A.dim:
        return False
    return residual_check("automorphism", automorphism_residual(A, F), tol).passed


def ad_invariance(A: LieAlgebra, gram, tol: Tolerance | None = None) -> Check:
    """⟨[x,y],z⟩ + ⟨y,[x,z]⟩ on all basis triples, i.e. ad(x)ᵀG + G ad(x) = 0."""
    G = gram.gram if isinstance(gram, SymBilinearForm) else as_obj(gram)
    res = []
    for i in range(A.dim):
        ad = A.ad(A.basis(i))
        res.append(ad.T @ G + G @ ad)
    return residual_check("ad_invariance", res, tol, samples=A.dim)


def invariant_subspace_dim(reps, dim: int, tol: Tolerance | None = None) -> int:
    """Dimension of the joint kernel of the given matrices on a ``dim``-space."""
    reps = [as_obj(r) for r in reps]
    if not reps:
        return dim
    return dim - rank(np.concatenate(reps, axis=0), tol)


@dataclass(frozen=True, eq=False)
class InvolutiveMetricLieAlgebra:
    algebra: LieAlgebra
    gram: SymBilinearForm
    theta: np.ndarray
    label: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "theta", as_obj(self.theta))
        if not isinstance(self.gram, SymBilinearForm):
            object.__setattr__(self, "gram", SymBilinearForm(self.gram))
        n = self.algebra.dim
        if self.gram.dim != n or self.theta.shape != (n, n):
            raise ValueError("algebra, gram and theta dimensions disagree")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def bracket(self, x, y):
        return self.algebra.bracket(x, y)

    def inner(self, x, y):
        return np.asarray(x, dtype=object) @ self.gram.gram @ np.asarray(y, dtype=object)

    @property
    def plus_basis(self) -> np.ndarray:
        """Columns span g₊ = ker(θ − 1)."""
        if "plus" not in self._cache:
            self._cache["plus"] = nullspace(self.theta - eye(self.dim))
        return self._cache["plus"]

    @property
    def minus_basis(self) -> np.ndarray:
        """Columns span g₋ = ker(θ + 1)."""
        if "minus" not in self._cache:
            self._cache["minus"] = nullspace(self.theta + eye(self.dim))
        return self._cache["minus"]

    def minus_signature(self):
        return signature(self.gram.restrict(self.minus_basis))

    def holonomy_reps(self) -> list:
        """ad(x)|g₋ for x running over a basis of g₊, written in the g₋ basis."""
        M = self.minus_basis
        # left inverse of M on its column space
        proj = _left_inverse(M)
        return [proj @ self.algebra.ad(self.plus_basis[:, i]) @ M for i in range(self.plus_basis.shape[1])]

    def parallel_field_dim(self) -> int:
        return invariant_subspace_dim(self.holonomy_reps(), self.minus_basis.shape[1])

    def check(self, tol: Tolerance | None = None, expected_signature=(2, 2)) -> Report:
        """The symmetric-triple axioms."""
        A, G, th = self.algebra, self.gram.gram, self.theta
        n = self.dim
        rep = Report(self.label or "triple")
        rep.add(check_jacobi(A, tol))
        rep.add(residual_check("theta_involution", th @ th - eye(n), tol))
        rep.add(residual_check("theta_isometry", th.T @ G @ th - G, tol))
        rep.add(residual_check("theta_automorphism", automorphism_residual(A, th), tol))
        rep.add(bool_check("nondegenerate", self.gram.is_nondegenerate(tol),
                           f"rank {rank(G, tol)} of {n}"))
        rep.add(ad_invariance(A, G, tol))
        rep.add(self._transvection_check(tol))
        sig = self.minus_signature()
        ok = expected_signature is None or tuple(sig[:2]) == tuple(expected_signature) and sig[2] == 0
        rep.add(bool_check("signature_g_minus", ok, f"signature {sig}"))
        return rep

    def _transvection_check(self, tol) -> Check:
        M, P = self.minus_basis, self.plus_basis
        brackets = [self.bracket(M[:, i], M[:, j]) for i in range(M.shape[1]) for j in range(i + 1, M.shape[1])]
        if not brackets:
            return bool_check("transvection", P.shape[1] == 0)
        B = np.stack(brackets, axis=1)
        # each bracket lies in g₊ and together they span it
        inside = is_zero_matrix(self.theta @ B - B, tol)
        spans = rank(B, tol) == P.shape[1]
        return bool_check("transvection", inside and spans, f"rank [g-,g-] = {rank(B, tol)}, dim g+ = {P.shape[1]}")


def _left_inverse(M):
    """(MᵀM)⁻¹Mᵀ, exact when M is."""
    return inverse(M.T @ M) @ M.T
