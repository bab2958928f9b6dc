from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sig22.catalog import SpaceSpec, grid
from sig22.dual import jacobian
from sig22.groups import (AffineElement, GLGroup, HeisExtElement, NGroup, NGroupElement, OMEGA0, L_of,
                          catalog_in_group_basis, cross_eps, eps_gram, gL_inv, gL_mul, heis_mul,
                          heisenberg_affine_rep, heisenberg_affine_unrep, in_group, omega,
                          structure_constants_from_group, transvection_group)
from sig22.numeric import as_obj, diag, eye, is_exact_array, mat, matrix_exp, max_abs, to_float, vec, zeros
from sig22.sampling import random_special, rng

from conftest import fractions, rational_vectors, unit_vectors


def nilpotent_symplectic(S):
    """[[0, 0], [S, 0]] with S symmetric lies in sp(ω₀) and squares to zero."""
    L = zeros(4, 4)
    L[2:4, 0:2] = S
    return L


symmetric_2x2 = st.tuples(fractions(), fractions(), fractions()).map(lambda t: mat([[t[0], t[1]], [t[1], t[2]]]))


def test_heisenberg_product():
    z, a = heis_mul(OMEGA0, (0, vec([1, 0, 0, 0])), (0, vec([0, 0, 1, 0])))
    assert z == Fraction(1, 2)
    assert list(a) == [1, 0, 1, 0]


@given(symmetric_2x2, rational_vectors(6), rational_vectors(6), rational_vectors(6))
def test_gl_associativity_exact_for_nilpotent_l(S, x, y, w):
    L = nilpotent_symplectic(S)
    assert not np.any(L.T @ OMEGA0 + OMEGA0 @ L)
    g, h, k = (HeisExtElement.from_coords(c) for c in (x, y, w))
    lhs = gL_mul(L, OMEGA0, gL_mul(L, OMEGA0, g, h), k).coords()
    rhs = gL_mul(L, OMEGA0, g, gL_mul(L, OMEGA0, h, k)).coords()
    assert is_exact_array(lhs)
    assert not np.any(lhs - rhs)
    e = gL_mul(L, OMEGA0, g, gL_inv(L, g))
    assert not np.any(e.coords())


@pytest.mark.parametrize("spec", [SpaceSpec.X1(1, -1, 1), SpaceSpec.X2(Fraction(1, 2)), SpaceSpec.Y(1, 1),
                                  SpaceSpec.Y(-1, -1)], ids=str)
@given(data=st.data())
def test_gl_associativity_float(spec, data):
    G = GLGroup.of(spec)
    g, h, k = (G.element.from_coords(data.draw(unit_vectors(6))) for _ in range(3))
    lhs = G.mul(G.mul(g, h), k).coords()
    rhs = G.mul(g, G.mul(h, k)).coords()
    assert max_abs(lhs - rhs) <= 1e-12
    assert max_abs(G.mul(g, G.inv(g)).coords()) <= 1e-12
    assert not np.any(G.mul(G.identity(), g).coords() - g.coords())


def test_l_of_matches_displayed_formulas():
    a = vec([1, 2, 3, 4])
    L, _ = L_of(SpaceSpec.X1(1, -1, 1))
    assert list(L @ a) == [-3, 4, -1, 2]
    L, _ = L_of(SpaceSpec.X2(1))
    assert list(L @ a) == [-8, -6, -1, 2]
    for e in (1, -1):
        for k in (1, -1):
            L, _ = L_of(SpaceSpec.Y(e, k))
            assert list(L @ a) == [4, 3 - k * 4, e * k * 1 - e * 2, -e * 1]


@pytest.mark.parametrize("spec", [s for s in grid() if s.family in ("X1", "X2", "Y")], ids=str)
def test_l_is_symplectic(spec):
    L, W = L_of(spec)
    assert not np.any(L.T @ W + W @ L)


def test_y_l_is_not_nilpotent():
    L, _ = L_of(SpaceSpec.Y(1, 1))
    assert np.any(np.linalg.matrix_power(L, 4))


def test_matrix_exp_of_y_l_against_series():
    import mpmath

    mpmath.mp.dps = 40
    L, _ = L_of(SpaceSpec.Y(1, -1))
    A = mpmath.matrix(to_float(L).tolist()) * mpmath.mpf(1) / 2
    series, term = mpmath.eye(4), mpmath.eye(4)
    for k in range(1, 60):
        term = term * A / k
        series += term
    expected = np.array(series.tolist(), dtype=float)
    assert np.allclose(to_float(matrix_exp(L, Fraction(1, 2))), expected, rtol=1e-14, atol=1e-14)


def test_n_product_example():
    z = NGroupElement(vec([0, 0]), Fraction(0), vec([1, 0]))
    w = NGroupElement(vec([0, 0]), Fraction(0), vec([0, 1]))
    G = NGroup(1)
    p = G.mul(z, w)
    assert list(p.z) == [Fraction(1, 3), Fraction(1, 6)]
    assert p.a == Fraction(1, 2)
    assert list(p.l) == [1, 1]


@given(st.sampled_from([1, -1]), rational_vectors(5), rational_vectors(5), rational_vectors(5))
def test_n_group_axioms_exact(kappa, x, y, w):
    G = NGroup(kappa)
    g, h, k = (NGroupElement.from_coords(c) for c in (x, y, w))
    assert not np.any(G.mul(G.mul(g, h), k).coords() - G.mul(g, G.mul(h, k)).coords())
    assert not np.any(G.mul(g, G.inv(g)).coords())
    assert not np.any(G.mul(G.inv(g), g).coords())


@given(rational_vectors(2), rational_vectors(5))
def test_n_z_block_is_central(z, x):
    G = NGroup(-1)
    c = NGroupElement(z, Fraction(0), vec([0, 0]))
    g = NGroupElement.from_coords(x)
    lhs, rhs = G.mul(c, g), G.mul(g, c)
    assert not np.any(lhs.coords() - rhs.coords())
    assert not np.any(lhs.coords()[:2] - g.coords()[:2] - z)


@given(rational_vectors(5))
def test_n_chart_round_trip_and_coset_representative(x):
    G = NGroup(1)
    g = NGroupElement.from_coords(x)
    p = G.phi(g)
    rep = G.phi_inv(p)
    # g and Φ⁻¹Φ(g) differ by the stabilizer (0, a, 0) on the right
    moved = G.mul(rep, G.stabilizer(g.a))
    assert not np.any(moved.coords() - g.coords())
    assert not np.any(G.phi(rep) - p)


def test_heisenberg_affine_rep():
    assert not np.any(heisenberg_affine_rep(0, vec([0, 0, 0, 0])) - eye(4))
    a = vec([1, 2, 3, 5])
    M = heisenberg_affine_rep(Fraction(7), a)
    assert M[0, 3] == 7 + Fraction(1, 2) * (1 * 3 + 2 * 5)
    z, b = heisenberg_affine_unrep(M)
    assert z == 7 and list(b) == list(a)


@given(fractions(), rational_vectors(4), fractions(), rational_vectors(4))
def test_heisenberg_rep_is_homomorphism(z1, a1, z2, a2):
    z, a = heis_mul(OMEGA0, (z1, a1), (z2, a2))
    lhs = heisenberg_affine_rep(z1, a1) @ heisenberg_affine_rep(z2, a2)
    assert not np.any(lhs - heisenberg_affine_rep(z, a))


def test_gl_chart_example():
    G = GLGroup.of(SpaceSpec.X1(1, 1, 1))
    t = Fraction(3)
    p = G.phi(HeisExtElement(Fraction(0), vec([1, 0, 1, 0]), t))
    assert list(p) == [Fraction(1, 2), 1, 0, 3]
    assert not np.any(G.phi(G.identity()))


@pytest.mark.parametrize("spec", [SpaceSpec.X1(-1, 1, 2), SpaceSpec.X2(3), SpaceSpec.Y(-1, 1)], ids=str)
def test_left_translation_differential_at_origin(spec):
    G = transvection_group(spec)
    L, _ = L_of(spec)
    x0 = vec([0, 0, Fraction(2, 3), Fraction(-1, 2)])
    g = G.phi_inv(vec([0, x0[2], x0[3], Fraction(1, 4)]))
    D = jacobian(lambda q: G.phi(G.mul(g, G.phi_inv(q))), zeros(4))
    expected = eye(4)
    expected[0, 3] = omega(x0, L @ x0) / 2
    assert max_abs(D - expected) <= 1e-13


@pytest.mark.parametrize("spec", grid(), ids=str)
def test_structure_constants_from_group(spec):
    A = structure_constants_from_group(spec)
    B = catalog_in_group_basis(spec).algebra
    worst = max_abs(A.structure - B.structure)
    if spec.family in ("N", "X1", "X2"):
        assert worst == 0
    else:
        assert worst <= 1e-9


def test_structure_constants_abelian():
    from sig22.groups import _conjugation_bracket

    A = _conjugation_bracket(lambda x, y: y, 3)
    assert not np.any(A.structure)


def test_cross_products():
    e1, e2, e3 = vec([1, 0, 0]), vec([0, 1, 0]), vec([0, 0, 1])
    assert list(cross_eps(1, e1, e2)) == list(e3)
    assert list(cross_eps(-1, e2, e3)) == list(-e1)
    assert not any(cross_eps(-1, e2, e2))


@given(st.sampled_from([1, -1]), rational_vectors(3), rational_vectors(3))
def test_cross_product_is_g_orthogonal(eps, u, v):
    w = cross_eps(eps, u, v)
    G = eps_gram(eps)
    assert w @ G @ u == 0 and w @ G @ v == 0


@pytest.mark.parametrize("eps", [1, -1])
def test_affine_composition_is_associative(eps):
    r = rng(11)
    group = "O(3)" if eps == 1 else "O(1,2)"
    flips = [eye(3), -eye(3)] if eps == 1 else [eye(3), diag([-1, 1, 1]), diag([1, -1, 1])]
    els = [AffineElement(as_obj(r.uniform(-1, 1, 3)), random_special(r, eps) @ flips[k % len(flips)], group)
           for k in range(6)]
    for g, h, k in zip(els, els[1:], els[2:]):
        lhs, rhs = (g @ h) @ k, g @ (h @ k)
        assert max_abs(lhs.A - rhs.A) <= 1e-12 and max_abs(lhs.b - rhs.b) <= 1e-12
        e = g @ g.inverse()
        assert max_abs(e.A - eye(3)) <= 1e-12 and max_abs(e.b) <= 1e-12


def test_group_membership():
    assert in_group(diag([1, -1, -1]), "SO(3)")
    assert not in_group(diag([-1, 1, 1]), "SO0(1,2)")
    assert in_group(diag([1, -1, 1]), "O+(1,2)")
    assert in_group(diag([-1, 1, 1]), "O(1,2)")
    with pytest.raises(ValueError):
        AffineElement(vec([0, 0, 0]), diag([2, 1, 1]), "O(3)")
