"""Elements of SO₀(1,2): trace classification, fixed vectors and the Ad map from SL(2,ℝ)."""

from __future__ import annotations

import enum
import math
from fractions import Fraction

import numpy as np

from ..numeric import Tolerance, as_obj, det, diag, eye, is_exact_array, mat, nullspace, to_float

STANDARD_GRAM = diag([-1, 1, 1])
STANDARD_FUTURE = (1, 0, 0)
NULL_GRAM = mat([[0, 0, 1], [0, 1, 0], [1, 0, 0]])
NULL_FUTURE = (1, 0, -1)

FRAMES = {"standard": (STANDARD_GRAM, STANDARD_FUTURE), "null": (NULL_GRAM, NULL_FUTURE)}

PARABOLIC_TOL = 1e-7


class SO12Class(enum.Enum):
    IDENTITY = "Identity"
    ELLIPTIC = "Elliptic"
    PARABOLIC = "Parabolic"
    HYPERBOLIC = "Hyperbolic"

    def __str__(self):
        return self.value


def in_so012(A, frame: str = "standard", tol: Tolerance | None = None) -> bool:
    tol = tol or Tolerance(1e-8, 1e-8)
    G, tau = FRAMES[frame]
    A = as_obj(A)
    if A.shape != (3, 3):
        return False
    if is_exact_array(A):
        if np.any(A.T @ G @ A - G) or det(A) != 1:
            return False
    else:
        # roundoff in AᵀGA grows with ‖A‖²
        Af = to_float(A)
        scale = max(1.0, float(np.max(np.abs(Af))) ** 2)
        if np.max(np.abs(Af.T @ to_float(G) @ Af - to_float(G))) > tol.abs_tol * scale:
            return False
        if abs(np.linalg.det(Af) - 1) > tol.abs_tol * scale ** 1.5:
            return False
    tau = as_obj(np.array(tau))
    return float((A @ tau) @ G @ tau) < 0


def detect_frame(A, tol: Tolerance | None = None) -> str:
    """The first frame in which A lies in SO₀(1,2)."""
    for frame in FRAMES:
        if in_so012(A, frame, tol):
            return frame
    raise ValueError("matrix is not in SO₀(1,2) for the forms diag(−1,1,1) or the null pairing")


def classify_so12(A, frame: str = "auto", tol: Tolerance | None = None,
                  parabolic_tol: float = PARABOLIC_TOL) -> SO12Class:
    """Identity, else by trace: > 3 hyperbolic, = 3 parabolic, < 3 elliptic."""
    A = as_obj(A)
    frame = detect_frame(A, tol) if frame == "auto" else frame
    if not in_so012(A, frame, tol):
        raise ValueError(f"matrix is not in SO₀(1,2) ({frame} frame)")
    exact = is_exact_array(A)
    if exact and not np.any(A - eye(3)):
        return SO12Class.IDENTITY
    if not exact and np.max(np.abs(to_float(A) - np.eye(3))) <= parabolic_tol:
        return SO12Class.IDENTITY
    tr = sum(A[i, i] for i in range(3))
    if exact:
        d = Fraction(tr) - 3
        return SO12Class.PARABOLIC if d == 0 else (SO12Class.HYPERBOLIC if d > 0 else SO12Class.ELLIPTIC)
    d = float(tr) - 3
    if abs(d) <= parabolic_tol:
        return SO12Class.PARABOLIC
    return SO12Class.HYPERBOLIC if d > 0 else SO12Class.ELLIPTIC


def fixed_vector(A, frame: str = "standard", tol: Tolerance | None = None):
    """A nonzero fixed vector of A ≠ I and its causal type ("timelike", "lightlike", "spacelike")."""
    A = as_obj(A)
    G, _ = FRAMES[frame]
    if is_exact_array(A):
        K = nullspace(A - eye(3), tol)
        if K.shape[1] != 1:
            raise ValueError(f"fixed space has dimension {K.shape[1]}")
        k = K[:, 0]
    else:
        # every element has eigenvalue 1; the least singular direction of A − I stays well defined near I
        k = as_obj(np.linalg.svd(to_float(A) - np.eye(3))[2][-1])
    q = k @ G @ k
    scale = float(k @ k)
    if is_exact_array(k):
        kind = "lightlike" if q == 0 else ("timelike" if q < 0 else "spacelike")
    else:
        qf = float(q) / scale
        # a timelike axis of a strongly boosted element is only ~1/‖A‖ away from the light cone
        cutoff = 1e-6 / max(1.0, float(np.max(np.abs(to_float(A))))) ** 2
        kind = "lightlike" if abs(qf) <= cutoff else ("timelike" if qf < 0 else "spacelike")
    return k, kind


EXPECTED_FIXED_TYPE = {
    SO12Class.ELLIPTIC: "timelike",
    SO12Class.PARABOLIC: "lightlike",
    SO12Class.HYPERBOLIC: "spacelike",
}

SL2_BASIS = (
    mat([[0, Fraction(-1, 2)], [Fraction(1, 2), 0]]),
    mat([[Fraction(1, 2), 0], [0, Fraction(-1, 2)]]),
    mat([[0, Fraction(1, 2)], [Fraction(1, 2), 0]]),
)
"""Basis of sl(2,ℝ) orthonormal for 2tr(XY), with the timelike rotation generator first."""


def _sl2_coords(X) -> list:
    return [X[1, 0] - X[0, 1], 2 * X[0, 0], X[0, 1] + X[1, 0]]


def ad_sl2(g) -> np.ndarray:
    """Ad(g) on sl(2,ℝ) in the basis above: an element of SO₀(1,2)."""
    g = as_obj(g)
    a, b, c, d = g[0, 0], g[0, 1], g[1, 0], g[1, 1]
    ginv = as_obj(np.array([[d, -b], [-c, a]], dtype=object))
    cols = [_sl2_coords(g @ X @ ginv) for X in SL2_BASIS]
    return as_obj(np.array(cols, dtype=object).T)


def sl2_rotation(phi: float) -> np.ndarray:
    return as_obj(np.array([[math.cos(phi), -math.sin(phi)], [math.sin(phi), math.cos(phi)]]))


# columns f1 = (e1 + e3)/√2, e2, f3 = (e3 − e1)/√2: ⟨f1,f3⟩ = 1 and f1 − f3 is future
NULL_TO_STANDARD = np.array([[1.0, 0.0, -1.0], [0.0, 1.0, 0.0], [1.0, 0.0, 1.0]]) / np.array([math.sqrt(2), 1.0, math.sqrt(2)])


def to_null_frame(A) -> np.ndarray:
    """Rewrite A from the standard frame into the null basis (f1, e2, f3)."""
    C = NULL_TO_STANDARD
    return as_obj(np.linalg.solve(C, to_float(A) @ C))
