"""Curvature R(X,Y)Z = [[X,Y],Z] of a symmetric triple on g₋ and the parallel vector fields."""

from __future__ import annotations

from itertools import product

import numpy as np

from ..catalog import SpaceSpec, build_triple
from ..checks import Report, residual_check
from ..lie import InvolutiveMetricLieAlgebra
from ..numeric import Tolerance, is_zero_matrix


def _require_minus(T: InvolutiveMetricLieAlgebra, x, tol):
    x = np.asarray(x, dtype=object)
    if not is_zero_matrix(T.theta @ x + x, tol):
        raise ValueError("curvature arguments must lie in g₋")
    return x


def curvature(T: InvolutiveMetricLieAlgebra, X, Y, Z, tol: Tolerance | None = None) -> np.ndarray:
    X, Y, Z = (_require_minus(T, v, tol) for v in (X, Y, Z))
    return T.bracket(T.bracket(X, Y), Z)


def curvature_checks(T: InvolutiveMetricLieAlgebra, tol: Tolerance | None = None) -> Report:
    """Pair symmetries and the first Bianchi identity on all basis quadruples of g₋."""
    M = T.minus_basis
    basis = [M[:, i] for i in range(M.shape[1])]
    n = len(basis)
    R = {}
    for i, j, k in product(range(n), repeat=3):
        R[i, j, k] = curvature(T, basis[i], basis[j], basis[k], tol)
    inside, skew, pair, bianchi = [], [], [], []
    for i, j, k in product(range(n), repeat=3):
        r = R[i, j, k]
        inside.append(T.theta @ r + r)
        bianchi.append(r + R[j, k, i] + R[k, i, j])
        for w in range(n):
            rijkw = T.inner(r, basis[w])
            skew.append(rijkw + T.inner(R[j, i, k], basis[w]))
            pair.append(rijkw - T.inner(R[k, w, i], basis[j]))
    rep = Report("curvature")
    rep.add(residual_check("curvature_in_g_minus", inside, tol))
    rep.add(residual_check("curvature_skew", skew, tol))
    rep.add(residual_check("curvature_pair_symmetry", pair, tol))
    rep.add(residual_check("curvature_bianchi", bianchi, tol))
    return rep


def parallel_field_dim(spec: SpaceSpec) -> int:
    """Dimension of the ad(g₊)-invariant subspace of g₋."""
    return build_triple(spec).parallel_field_dim()


EXPECTED_PARALLEL = {"X1": 1, "X2": 1, "Y": 1, "N": 2, "Z": 0, "Zprime": 0}
