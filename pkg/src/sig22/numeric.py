"""Scalars, tolerances, small dense matrices and bilinear forms.

Matrices are numpy arrays of dtype ``object`` so the same code runs on
``Fraction`` entries (exact path), Python floats, and dual numbers.  Float
kernels (eigenvalues, SVD, the scaling-and-squaring exponential) convert to
``float64`` internally.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from numbers import Rational

import numpy as np

DEFAULT_ABS_TOL = 1e-9
DEFAULT_REL_TOL = 1e-9


def _env_tol() -> float:
    raw = os.environ.get("SIG22_TOL")
    return float(raw) if raw else DEFAULT_ABS_TOL


def is_exact(x) -> bool:
    return isinstance(x, Rational)


def exact(x) -> Fraction:
    """Convert an int, Fraction or rational string such as ``"-3/4"``."""
    if isinstance(x, float):
        raise TypeError("refusing to convert a float to an exact rational")
    return Fraction(x)


def parse_scalar(text: str):
    """Parse ``"1/2"`` or ``"3"`` as a Fraction and ``"0.25"`` or ``"1e-3"`` as a float."""
    text = text.strip()
    if any(ch in text for ch in ".eE") and "/" not in text:
        return float(text)
    return Fraction(text)


def render_scalar(x) -> str:
    if isinstance(x, Rational):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return format(float(x), ".17g")


@dataclass(frozen=True)
class Tolerance:
    abs_tol: float = DEFAULT_ABS_TOL
    rel_tol: float = DEFAULT_REL_TOL

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be strictly positive")

    @classmethod
    def default(cls) -> "Tolerance":
        return cls(abs_tol=_env_tol())

    def close(self, x, y) -> bool:
        if is_exact(x) and is_exact(y):
            return x == y
        x, y = float(x), float(y)
        return abs(x - y) <= self.abs_tol + self.rel_tol * max(abs(x), abs(y))

    def is_zero(self, x) -> bool:
        return self.close(x, 0)

    def allclose(self, a, b) -> bool:
        a, b = np.asarray(a, dtype=object), np.asarray(b, dtype=object)
        if a.shape != b.shape:
            return False
        return all(self.close(x, y) for x, y in zip(a.flat, b.flat))


# -- arrays ---------------------------------------------------------------

def _clean(x):
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.integer, int)) and not isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, bool):
        return Fraction(int(x))
    return x


def vec(values) -> np.ndarray:
    """Object vector; integers become Fractions so the exact path is the default."""
    out = np.empty(len(values), dtype=object)
    for i, v in enumerate(values):
        out[i] = _clean(v)
    return out


def mat(rows) -> np.ndarray:
    rows = [list(r) for r in rows]
    n = len(rows)
    m = len(rows[0]) if n else 0
    if any(len(r) != m for r in rows):
        raise ValueError("ragged matrix")
    out = np.empty((n, m), dtype=object)
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            out[i, j] = _clean(v)
    return out


def as_obj(a) -> np.ndarray:
    """Object-dtype copy of an array-like, with numpy scalars turned into Python scalars."""
    a = np.asarray(a)
    if a.dtype == object:
        out = np.empty(a.shape, dtype=object)
        for idx, v in np.ndenumerate(a):
            out[idx] = _clean(v)
        return out
    if np.issubdtype(a.dtype, np.integer):
        return np.vectorize(lambda v: Fraction(int(v)), otypes=[object])(a) if a.size else a.astype(object)
    return np.array(a.tolist(), dtype=object).reshape(a.shape) if a.size else a.astype(object)


def zeros(*shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def eye(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def diag(values) -> np.ndarray:
    values = vec(values)
    out = zeros(len(values), len(values))
    for i, v in enumerate(values):
        out[i, i] = v
    return out


def is_exact_array(a) -> bool:
    return all(is_exact(x) for x in np.asarray(a, dtype=object).flat)


def to_float(a) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in np.atleast_2d(a)], dtype=float).reshape(np.shape(a))


def max_abs(a):
    """Largest entry modulus; exact when all entries are exact."""
    flat = list(np.asarray(a, dtype=object).flat)
    if not flat:
        return Fraction(0)
    if all(is_exact(x) for x in flat):
        return max(abs(Fraction(x)) for x in flat)
    return max(abs(float(x)) for x in flat)


def is_zero_matrix(a, tol: Tolerance | None = None) -> bool:
    tol = tol or Tolerance()
    return all(tol.is_zero(x) for x in np.asarray(a, dtype=object).flat)


# -- exact linear algebra ---------------------------------------------------

def _integer_rows(a) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (rank-preserving)."""
    rows = []
    for row in np.asarray(a, dtype=object):
        fr = [Fraction(x) for x in row]
        lcm = 1
        for x in fr:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        rows.append([int(x * lcm) for x in fr])
    return rows


def _bareiss_rank(rows: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination (Bareiss) on an integer matrix."""
    m = [r[:] for r in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    rank = 0
    prev = 1
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, n_rows):
            for c in range(col + 1, n_cols):
                m[r][c] = (p * m[r][c] - m[r][col] * m[rank][c]) // prev
            m[r][col] = 0
        prev = p
        rank += 1
        if rank == n_rows:
            break
    return rank


def rank(a, tol: Tolerance | None = None) -> int:
    a = np.asarray(a, dtype=object)
    if a.size == 0:
        return 0
    if is_exact_array(a):
        return _bareiss_rank(_integer_rows(a))
    tol = tol or Tolerance()
    s = np.linalg.svd(to_float(a), compute_uv=False)
    cutoff = tol.abs_tol + tol.rel_tol * (s[0] if s.size else 0.0)
    return int(np.sum(s > cutoff))


def rref(a):
    """Reduced row echelon form over Fractions; returns (matrix, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in np.asarray(a, dtype=object)]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        p = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return mat(m) if m else zeros(0, n_cols), pivots


def nullspace(a, tol: Tolerance | None = None) -> np.ndarray:
    """Basis of the kernel as columns (exact when ``a`` is exact)."""
    a = np.asarray(a, dtype=object)
    n = a.shape[1]
    if a.shape[0] == 0:
        return eye(n)
    if is_exact_array(a):
        r, pivots = rref(a)
        free = [c for c in range(n) if c not in pivots]
        basis = zeros(n, len(free))
        for k, f in enumerate(free):
            basis[f, k] = Fraction(1)
            for i, p in enumerate(pivots):
                basis[p, k] = -r[i, f]
        return basis
    tol = tol or Tolerance()
    u, s, vt = np.linalg.svd(to_float(a))
    cutoff = tol.abs_tol + tol.rel_tol * (s[0] if s.size else 0.0)
    k = int(np.sum(s > cutoff))
    return as_obj(vt[k:].T)


def solve(a, b):
    """Solve ``a x = b`` for square ``a`` by Gauss-Jordan on object entries.

    Works for Fractions, floats (partial pivoting) and dual numbers (pivot on
    the real part).
    """
    a = np.array(a, dtype=object)
    b = np.array(b, dtype=object)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("solve needs a square matrix")
    vector = b.ndim == 1
    if vector:
        b = b.reshape(n, 1)
    m = np.concatenate([a, b], axis=1)

    def size(x):
        while hasattr(x, "re"):
            x = x.re
        return abs(float(x))

    for c in range(n):
        p = max(range(c, n), key=lambda i: size(m[i, c]))
        if size(m[p, c]) == 0:
            raise np.linalg.LinAlgError("singular matrix")
        if p != c:
            m[[c, p]] = m[[p, c]]
        m[c] = m[c] / m[c, c]
        for i in range(n):
            if i != c:
                m[i] = m[i] - m[i, c] * m[c]
    x = m[:, n:]
    return x[:, 0] if vector else x


def inverse(a):
    return solve(a, eye(np.asarray(a).shape[0]))


def det(a):
    """Determinant by fraction-preserving elimination (exact on Fractions)."""
    m = [[x for x in row] for row in np.asarray(a, dtype=object)]
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            out = -out
        out = out * m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out


# -- symmetric bilinear forms ----------------------------------------------

@dataclass(frozen=True, eq=False)
class SymBilinearForm:
    gram: np.ndarray

    def __post_init__(self):
        g = as_obj(self.gram)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise ValueError("gram must be square")
        if not Tolerance().allclose(g, g.T):
            raise ValueError("gram must be symmetric")
        object.__setattr__(self, "gram", g)

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    def __call__(self, x, y):
        return vec(x) @ self.gram @ vec(y) if not isinstance(x, np.ndarray) else x @ self.gram @ y

    def restrict(self, basis) -> "SymBilinearForm":
        """Gram of the form on the span of the columns of ``basis``."""
        basis = as_obj(basis)
        return SymBilinearForm(basis.T @ self.gram @ basis)

    def is_nondegenerate(self, tol: Tolerance | None = None) -> bool:
        return rank(self.gram, tol) == self.dim


def signature(form, tol: Tolerance | None = None) -> tuple[int, int, int]:
    """Sylvester counts (p, q, r) of positive, negative and zero directions."""
    g = form.gram if isinstance(form, SymBilinearForm) else as_obj(form)
    n = g.shape[0]
    if n == 0:
        return (0, 0, 0)
    if is_exact_array(g):
        return _exact_signature(g)
    tol = tol or Tolerance()
    w = np.linalg.eigvalsh(to_float(g))
    cutoff = tol.abs_tol + tol.rel_tol * float(np.max(np.abs(w)))
    p = int(np.sum(w > cutoff))
    q = int(np.sum(w < -cutoff))
    return (p, q, n - p - q)


def _exact_signature(g) -> tuple[int, int, int]:
    """Symmetric Gaussian elimination by congruences over Fractions."""
    m = [[Fraction(x) for x in row] for row in g]
    n = len(m)
    p = q = 0
    active = list(range(n))
    while active:
        k = next((i for i in active if m[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in active for j in active if i < j and m[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # adding row/col j to row/col i makes the (i,i) entry 2 m_ij + m_jj = 2 m_ij
            for c in range(n):
                m[i][c] += m[j][c]
            for r in range(n):
                m[r][i] += m[r][j]
            k = i
        piv = m[k][k]
        if piv > 0:
            p += 1
        else:
            q += 1
        active.remove(k)
        # Schur complement of the pivot
        for i in active:
            f = m[i][k] / piv
            if f:
                for j in active:
                    m[i][j] -= f * m[k][j]
    return (p, q, n - p - q)


# -- matrix exponential -----------------------------------------------------

def _is_nilpotent_exact(a) -> bool:
    return _nilpotent_cached(tuple(a.flat), a.shape[0])


@lru_cache(maxsize=512)
def _nilpotent_cached(entries: tuple, n: int) -> bool:
    a = np.array(entries, dtype=object).reshape(n, n)
    power = a
    for _ in range(n):
        power = power @ a
    return not any(power.flat) if n else True


def _expm_float(a: np.ndarray) -> np.ndarray:
    """exp(a) by scaling and squaring with a truncated Taylor series."""
    n = a.shape[0]
    norm = np.max(np.sum(np.abs(a), axis=0)) if n else 0.0
    s = max(0, int(math.ceil(math.log2(norm / 0.5)))) if norm > 0.5 else 0
    b = a / (2.0 ** s)
    result = np.eye(n)
    term = np.eye(n)
    for k in range(1, 40):
        term = term @ b / k
        result = result + term
        if np.max(np.abs(term)) <= 1e-18 * max(1.0, np.max(np.abs(result))):
            break
    for _ in range(s):
        result = result @ result
    return result


def matrix_exp(L, t=1):
    """exp(t L).

    Exact finite series when ``L`` and ``t`` are exact and ``L`` is nilpotent;
    float scaling and squaring otherwise.  ``t`` may be a dual number, in which
    case the derivative ``L exp(t L)`` is propagated.
    """
    from .dual import Dual

    L = as_obj(L)
    if L.ndim != 2 or L.shape[0] != L.shape[1]:
        raise ValueError("matrix_exp needs a square matrix")
    n = L.shape[0]
    if isinstance(t, Dual):
        e = matrix_exp(L, t.re)
        le = L @ e
        out = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                out[i, j] = Dual(e[i, j], tuple(le[i, j] * d for d in t.eps), t.tag)
        return out
    if is_exact(t) and is_exact_array(L) and _is_nilpotent_exact(L):
        t = Fraction(t)
        result = eye(n)
        term = eye(n)
        for k in range(1, n + 1):
            term = term @ L * (t / k)
            result = result + term
        return result
    return as_obj(_expm_float(to_float(L) * float(t)))
