from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from kolsym import cli
from kolsym import liealg as la
from kolsym import reduce as rd
from kolsym import sympoly as sp

B = la.kolmogorov_basis()
BASIS = [B[k] for k in la.KOLMOGOROV_LABELS]
S = sp.KOLMOGOROV

coefs = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5), min_size=8, max_size=8)


def combo(c):
    return la.linear_combination(c, BASIS)


@given(coefs, coefs)
def test_bracket_is_antisymmetric(a, b):
    X, Y = combo(a), combo(b)
    assert la.bracket(X, Y) == -la.bracket(Y, X)


@given(coefs, coefs, coefs)
def test_jacobi_on_random_elements(a, b, c):
    X, Y, Z = combo(a), combo(b), combo(c)
    total = la.bracket(X, la.bracket(Y, Z)) + la.bracket(Y, la.bracket(Z, X)) + la.bracket(Z, la.bracket(X, Y))
    assert total.is_zero()


@given(coefs)
def test_linear_combinations_stay_symmetries(a):
    assert la.check_symmetry(combo(a), sp.kolmogorov_pde()).is_zero()


@given(coefs, coefs)
def test_ad_is_a_homomorphism(a, b):
    X, Y = combo(a), combo(b)
    adx, ady = la.ad_matrix(X, BASIS), la.ad_matrix(Y, BASIS)
    n = len(BASIS)
    # row convention reverses the order of the matrix product
    comm = [[sum(ady[i][k] * adx[k][j] - adx[i][k] * ady[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]
    assert la.ad_matrix(la.bracket(X, Y), BASIS) == comm


def test_structure_table_matches_shipped_relations():
    table = la.structure_table(BASIS, la.KOLMOGOROV_LABELS)
    assert table.nonzero_relations() == la.KOLMOGOROV_RELATIONS
    assert len(la.KOLMOGOROV_RELATIONS) == 15


@pytest.mark.parametrize("field", [
    la.VectorField.make(S, [0, 1, 0], 0, "dx"),
    la.VectorField.make(S, [0, 0, 0], S.var("x") * S.u(), "x u du"),
    la.VectorField.make(S, [0, 0, S.var("y")], 0, "y dy"),
])
def test_non_symmetries_leave_a_residual(field):
    assert not la.check_symmetry(field, sp.kolmogorov_pde()).is_zero()


def test_linear_superposition_field_is_symmetry():
    # f = x is a solution, so x d_u is in the infinite-dimensional ideal.
    V = la.VectorField.make(S, [0, 0, 0], S.var("x"), "x du")
    assert la.check_symmetry(V, sp.kolmogorov_pde()).is_zero()


def test_structure_table_rejects_open_span():
    with pytest.raises(la.NotClosedError):
        la.structure_table([B["Pt"], B["P3"]], ["Pt", "P3"])


def test_levi_action_agrees_up_to_sign_of_k():
    assert cli.levi_matrices_up_to_k_sign().passed


def test_levi_mismatches_are_confined_to_k():
    rep = la.verify_levi_action({k: B[k] for k in ("Pt", "D", "K")}, [B[k] for k in ("P3", "P2", "P1", "P0", "I")])
    assert {m[0] for m in rep.mismatches} == {"K"}
    assert all(found == -expected for _, _, _, found, expected in rep.mismatches)


@pytest.mark.parametrize("action,n", [("Pt", 3), ("D", 3), ("K", 3), ("Pt", 0)])
def test_rep_matrix_shapes(action, n):
    m = la.rep_matrix(action, n)
    assert len(m) == n + 1 and all(len(r) == n + 1 for r in m)


@pytest.mark.parametrize("eps", [1, -1])
def test_all_listed_subalgebras_close(eps):
    subs = {**la.one_dim_subalgebras(eps=eps), **la.two_dim_subalgebras(eps=eps)}
    assert len(subs) == 8 + 15
    assert all(la.closure_check(s) and s.is_independent() for s in subs.values())


def test_heat_isq_subalgebras_close():
    assert all(la.closure_check(s) for s in la.heat_isq_subalgebras().values())


def test_non_closed_pair_detected():
    assert not la.closure_check(la.Subalgebra.of("x", [B["Pt"] + B["P3"], B["D"]]))


@pytest.mark.parametrize("row", sorted(la.normalizer_expectations()))
def test_normalizers(row):
    s, want = la.normalizer_expectations()[row]
    assert la.same_span(la.normalizer(s, BASIS).basis, want)


def test_center_has_full_normalizer():
    N = la.normalizer(la.Subalgebra.of("I", [B["I"]]), BASIS)
    assert N.dim == 8


def test_discr_matches_sympy_discriminant():
    a0, a1, a2, a3, x = sympy.symbols("a0 a1 a2 a3 x")
    ref = sympy.discriminant(a3 * x ** 3 + 3 * a2 * x ** 2 + 3 * a1 * x + a0, x)
    ours = la.discr(la.BinaryCubic(a0, a1, a2, a3))
    assert sympy.expand(ref + 27 * ours) == 0


def test_binary_cubic_from_field():
    c = la.BinaryCubic.from_field(B["P3"] + B["P2"].scale(6) + B["P0"].scale(2))
    assert (c.a0, c.a1, c.a2, c.a3) == (2, 0, 2, 1)


@given(st.fractions(min_value=-20, max_value=20, max_denominator=9), st.sampled_from([1, -1]))
def test_quartic_delta_closed_form(alpha, eps):
    q = la.quartic_invariants(alpha, eps)
    assert q.delta == -Fraction(1, 432) * (alpha * alpha + 16 * eps) ** 4


def test_quartic_rejects_bad_eps():
    with pytest.raises(ValueError):
        la.quartic_invariants(Fraction(1), 0)


@pytest.mark.parametrize("row", ["1.2_0", "1.5", "1.6", "1.7"])
def test_induced_algebras_are_symmetries_of_fixture(row):
    fx = la.reduced_fixture(row)
    assert all(la.check_symmetry(V, fx).is_zero() for V in la.induced_algebra(row))


@pytest.mark.parametrize("row", ["1.1", "1.2_0", "1.5", "1.6", "1.7"])
def test_hidden_dimensions_consistent(row):
    hidden, induced = rd.hidden_symmetry_dimensions()[row]
    assert len(la.hidden_algebra(row)) == hidden
    assert len(la.induced_algebra(row)) == induced
