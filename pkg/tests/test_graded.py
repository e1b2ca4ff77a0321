from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dkit.algebra import Algebra
from dkit.catalog import LOOP_CASES, _MatrixBasis, _matmul, _sl_basis, catalog_get
from dkit.errors import MissingRootOfUnity, NotOrderM, WindowTooSmall
from dkit.graded import (PeriodicGradedAlgebra, constructions_agree, epsilon_extend, fixed_point_form,
                         loop_from_automorphism, margin, graded_cent_solver, reynolds_projector,
                         restrict_to_R, rho_restrict, sigma_S, degree_derivation, verify_delta,
                         verify_main_theorem_graded, window_der_solver, window_is_derivation,
                         window_solution, _restricted)
from dkit.linalg import QQ


def loop(case):
    base, aut, m = LOOP_CASES[case]
    return loop_from_automorphism(catalog_get(base), aut, m)


@pytest.mark.parametrize("case,dims", [("a2-twisted", [3, 5]), ("a1-untwisted", [3]),
                                       ("a1-twisted", [1, 2]), ("a2-inner3", [2, 3, 3])])
def test_residue_dimensions(case, dims):
    B = loop(case)
    assert [c.dim for c in B.components] == dims
    assert B.dim(-7) == dims[-7 % len(dims)]


@pytest.mark.parametrize("case", list(LOOP_CASES))
def test_two_constructions_agree(case):
    base, aut, m = LOOP_CASES[case]
    g = catalog_get(base)
    assert constructions_agree(loop_from_automorphism(g, aut, m), fixed_point_form(g, aut, m))


def test_sl2_twisted_components():
    B = loop("a1-twisted")
    # h spans the fixed part, e and f the (-1)-eigenspace
    assert B.components[0].basis == ((0, 1, 0),)
    assert B.components[1].dim == 2


def test_products_respect_grading():
    B = loop("a2-twisted")
    for i in range(-2, 3):
        for j in range(-2, 3):
            P = B.product(i, j)
            assert len(P) == B.dim(i) and all(len(row) == B.dim(j) for row in P)
            assert all(len(z) == B.dim(i + j) for row in P for z in row)


def _cyclic_sl3():
    mats, names = _sl_basis(3)
    P = ((0, 0, 1), (1, 0, 0), (0, 1, 0))
    Pt = tuple(zip(*P))
    return _MatrixBasis(mats).induced(lambda X: _matmul(_matmul(P, X), Pt))


def test_missing_root_of_unity():
    g = catalog_get("sl3")
    with pytest.raises(MissingRootOfUnity):
        loop_from_automorphism(g, _cyclic_sl3(), 3)


def test_wrong_order():
    with pytest.raises(NotOrderM):
        loop_from_automorphism(catalog_get("sl2"), "conj_h", 3)


def test_multiloop_reserved():
    B = loop("a1-untwisted")
    with pytest.raises(NotImplementedError):
        PeriodicGradedAlgebra(B.base, B.automorphism, (1, 1), B.zeta, B.components, B.products)


# -- epsilon -------------------------------------------------------------------


def test_epsilon_examples():
    assert epsilon_extend({1: 1}, 2).apply(1) == {1: Fraction(1, 2)}
    assert epsilon_extend({}, 2).apply(5) == {}
    d = epsilon_extend({2: 1}, 3)       # t^2 d/dt
    assert d.apply(1) == {4: Fraction(1, 3)}
    assert d.apply(3) == {6: 1}         # t -> t^2


laurent = st.dictionaries(st.integers(-3, 3), st.fractions(min_value=-3, max_value=3, max_denominator=3),
                          max_size=3)


@given(laurent, st.integers(1, 4), st.integers(-4, 4))
def test_epsilon_restricts_to_d(d, m, n):
    D = epsilon_extend(d, m)
    # d(t^n) = n t^{n-1} d(t)
    want = {}
    for e, c in d.items():
        want[n - 1 + e] = want.get(n - 1 + e, 0) + n * c
    want = {k: v for k, v in want.items() if v != 0}
    assert restrict_to_R(D, n) == want


@given(laurent, st.integers(1, 4), st.integers(-6, 6), st.integers(-6, 6))
def test_epsilon_is_leibniz(d, m, i, j):
    D = epsilon_extend(d, m)

    def shift(p, k):
        return {e + k: c for e, c in p.items()}
    lhs = D.apply(i + j)
    rhs = shift(D.apply(i), j)
    for e, c in shift(D.apply(j), i).items():
        rhs[e] = rhs.get(e, 0) + c
    assert lhs == {e: c for e, c in rhs.items() if c != 0}


# -- pi and rho ----------------------------------------------------------------


@pytest.mark.parametrize("case", list(LOOP_CASES))
def test_reynolds_identities(case):
    checks = reynolds_projector(loop(case)).check()
    assert all(checks.values()), checks


def test_pi_kills_wrong_residue():
    B = loop("a2-twisted")
    pi = reynolds_projector(B)
    for b in B.basis(0):
        # b (x) t^{1/2} has degree 1 but b is sigma-fixed
        assert all(x == 0 for x in pi.to_component(1) @ b)


def test_rho_of_degree_derivation_is_derivation():
    B = loop("a2-twisted")
    pi = reynolds_projector(B)
    for delta in (-1, 0, 2):
        f = rho_restrict(sigma_S(degree_derivation(2, delta), B.base, -6, 6, delta), pi)
        assert window_is_derivation(B, f)


# -- window solvers ------------------------------------------------------------


@pytest.mark.parametrize("case,delta,want", [("a1-untwisted", 0, 4), ("a1-untwisted", 1, 4),
                                             ("a1-twisted", 0, 2), ("a1-twisted", 1, 2),
                                             ("a2-twisted", 1, 5)])
def test_window_der_dims(case, delta, want):
    B = loop(case)
    rep = window_der_solver(B, delta, margin(B, delta) + 3)
    assert rep.status == "pass"
    assert rep.dim == want == rep.predicted


@pytest.mark.parametrize("case,delta,want", [("a1-untwisted", 1, 1), ("a1-twisted", 1, 0),
                                             ("a1-twisted", 2, 1), ("a2-twisted", 0, 1)])
def test_window_cent_dims(case, delta, want):
    B = loop(case)
    assert graded_cent_solver(B, delta, margin(B, delta) + 3).dim == want


def test_inner3_over_cyclotomic_field():
    B = loop("a2-inner3")
    rep = window_der_solver(B, 0, 5)
    assert rep.dim == 3 == rep.predicted


def test_zero_algebra():
    g = Algebra(QQ, 0, [], flavor="lie", name="zero")
    B = loop_from_automorphism(g, "id", 1)
    for delta in (-1, 0, 2):
        assert window_der_solver(B, delta, margin(B, delta) + 2).dim == 0
        assert graded_cent_solver(B, delta, margin(B, delta) + 2).dim == 0


def test_window_below_floor():
    with pytest.raises(WindowTooSmall):
        window_der_solver(loop("a2-twisted"), 2, 5)


def test_unstable_window_reports_no_number():
    B = loop_from_automorphism(catalog_get("h3"), "id", 1)
    rep = window_der_solver(B, 0, 6)
    assert rep.status == "inconclusive" and rep.dim is None and rep.predicted is None


@pytest.mark.parametrize("W", [5, 6])
def test_restriction_shrinks_with_window(W):
    # solutions on a larger window, cut to the same central blocks, form a subspace
    B = loop("a1-twisted")
    delta = 1
    lay, space = window_solution(B, delta, W)
    lay2, space2 = window_solution(B, delta, W + 2)
    G = margin(B, delta)
    small = space.project(lay.block_coords(-W + G, W - G))
    big = space2.project(lay2.block_coords(-W + G, W - G))
    assert small.contains(big)
    assert _restricted(B, lay, space, W, delta).dim >= big.dim


def test_untwisted_sl2_decomposition():
    r = verify_delta(loop("a1-untwisted"), 0, 5)
    assert (r.der.inner_dim, r.der.sigma_dim) == (3, 1)
    assert r.status == "pass" and r.h1 == 1


def test_verify_empty_range():
    res = verify_main_theorem_graded(catalog_get("sl2"), "id", 1, [], 5)
    assert res.results == [] and res.status == "pass"


def test_verify_parallel_matches_serial():
    g = catalog_get("sl2")
    a = verify_main_theorem_graded(g, "conj_h", 2, range(-1, 2), 6)
    b = verify_main_theorem_graded(g, "conj_h", 2, range(-1, 2), 6, parallel=True)
    assert [(r.delta, r.der.dim, r.cent.dim, r.checks) for r in a.results] == \
        [(r.delta, r.der.dim, r.cent.dim, r.checks) for r in b.results]
    assert a.status == b.status == "pass"
