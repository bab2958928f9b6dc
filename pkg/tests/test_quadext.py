"""The quadratic-extension bracket against a direct evaluation of its defining formulas."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sig22.catalog import SpaceSpec, build_triple, grid, l_Z, module_of
from sig22.lie import LieAlgebra, check_jacobi
from sig22.numeric import SymBilinearForm, diag, eye, zeros
from sig22.quadext import (OrthogonalModule, QuadraticCocycle, alpha_wedge_alpha, build_quadratic_extension,
                           check_cocycle)

from conftest import rational_vectors


def direct_bracket(module, cocycle, x, y):
    """[σ+a+l, σ'+a'+l'] from the four bracket formulas of a quadratic extension."""
    l, m, k = module.l, module.l_dim, module.a_dim
    G = module.gram_a.gram

    def split(v):
        return v[:m], v[m:m + k], v[m + k:]

    z1, a1, l1 = split(x)
    z2, a2, l2 = split(y)
    basis = [l.basis(r) for r in range(m)]
    out_z = zeros(m)
    for r, e in enumerate(basis):
        # γ(l,l',·) + ⟨ρ(·)a, a'⟩ − ⟨a', α(l,·)⟩ + ⟨a, α(l',·)⟩ + (ad*(l)z' − ad*(l')z)
        out_z[r] = (cocycle.gamma_of(l1, l2, e) + (module.rho_of(e) @ a1) @ G @ a2
                    - a2 @ G @ cocycle.alpha_of(l1, e) + a1 @ G @ cocycle.alpha_of(l2, e)
                    - z2 @ l.bracket(l1, e) + z1 @ l.bracket(l2, e))
    out_a = cocycle.alpha_of(l1, l2) + module.rho_of(l1) @ a2 - module.rho_of(l2) @ a1
    out_l = l.bracket(l1, l2)
    return np.concatenate([out_z, out_a, out_l])


SPECS = grid()


@pytest.mark.parametrize("spec", SPECS, ids=str)
@settings(max_examples=10)
@given(data=st.data())
def test_bracket_matches_direct_formulas(spec, data):
    T = build_triple(spec)
    module, cocycle = module_of(spec)
    x = data.draw(rational_vectors(T.dim))
    y = data.draw(rational_vectors(T.dim))
    assert not np.any(T.bracket(x, y) - direct_bracket(module, cocycle, x, y))


def test_n_cocycle_passes():
    module, cocycle = module_of(SpaceSpec.N(1))
    rep = check_cocycle(module, cocycle)
    assert rep.passed
    assert all(c.max_residual == "exact" for c in rep.checks)


def test_zero_cocycle_passes_for_any_module():
    module, _ = module_of(SpaceSpec.X2(Fraction(3)))
    assert check_cocycle(module, QuadraticCocycle.zero(1, 4)).passed


def test_cartan_three_form_is_closed():
    for eps in (1, -1):
        module, cocycle = module_of(SpaceSpec.Z(eps, Fraction(7, 3)))
        assert check_cocycle(module, cocycle).passed


def test_alpha_wedge_alpha_vanishes_on_two_dim_l():
    module, cocycle = module_of(SpaceSpec.N(-1))
    e = [module.l.basis(0), module.l.basis(1)]
    assert alpha_wedge_alpha(module, cocycle, [e[0], e[1], e[0], e[1]]) == 0


def test_bad_cocycle_is_rejected():
    # abelian ℝ⁴, α(e1,e2) = α(e3,e4) = a₀, γ = 0: ⟨α∧α⟩ ≠ 0 = dγ
    l = LieAlgebra.abelian(4)
    module = OrthogonalModule(l, diag([-1] * 4), (zeros(1, 1),) * 4, SymBilinearForm(diag([1])), diag([1]))
    bad = QuadraticCocycle.from_values(4, 1, alpha={(0, 1): [1], (2, 3): [1]})
    rep = check_cocycle(module, bad)
    assert rep["d_alpha"].passed
    assert not rep["d_gamma"].passed
    with pytest.raises(ValueError):
        build_quadratic_extension(module, bad)


def test_zero_data_gives_abelian_algebra():
    l = LieAlgebra.abelian(2)
    module = OrthogonalModule(l, diag([-1, -1]), (zeros(1, 1),) * 2, SymBilinearForm(diag([1])), diag([1]))
    T = build_quadratic_extension(module, QuadraticCocycle.zero(2, 1))
    assert not np.any(T.algebra.structure)
    assert T.gram.is_nondegenerate()


def test_n_triple_brackets_after_identification():
    """In group coordinates (z, a, l): [z+a+l, ẑ+â+l̂] = κ(âl − al̂) + α(l,l̂)a₀."""
    from sig22.groups import catalog_in_group_basis

    rng = np.random.default_rng(5)
    for kappa in (1, -1):
        T = catalog_in_group_basis(SpaceSpec.N(kappa))
        for _ in range(20):
            x = np.array([Fraction(int(v)) for v in rng.integers(-5, 6, 5)], dtype=object)
            y = np.array([Fraction(int(v)) for v in rng.integers(-5, 6, 5)], dtype=object)
            a, l, ah, lh = x[2], x[3:5], y[2], y[3:5]
            al = l[0] * lh[1] - l[1] * lh[0]
            expected = np.concatenate([kappa * (ah * l - a * lh), [al], [0, 0]])
            assert not np.any(T.bracket(x, y) - expected)


@pytest.mark.parametrize("g234", [Fraction(t, 2) for t in range(-4, 5)])
def test_half_factor_matches_jacobi_of_the_extension(g234):
    # l = aff(1) ⊕ ℝ², [e1,e2] = e2; α(e1,e2) = α(e3,e4) = a₀ is closed with ⟨α∧α⟩ ≠ 0,
    # so the extension is a Lie algebra for exactly one value of γ(e2,e3,e4)
    c = zeros(4, 4, 4)
    c[0, 1, 1], c[1, 0, 1] = Fraction(1), Fraction(-1)
    module = OrthogonalModule(LieAlgebra(c), eye(4), (zeros(1, 1),) * 4, SymBilinearForm(diag([1])), diag([1]))
    cocycle = QuadraticCocycle.from_values(4, 1, alpha={(0, 1): [1], (2, 3): [1]}, gamma={(1, 2, 3): g234})
    rep = check_cocycle(module, cocycle)
    assert rep["d_alpha"].passed
    jacobi = check_jacobi(build_quadratic_extension(module, cocycle, check=False).algebra)
    assert jacobi.passed == rep.passed == (g234 == -1)
