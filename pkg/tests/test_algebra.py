from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dkit.algebra import (Algebra, CommutativeExtension, base_change_algebra, base_change_dimodule,
                          check_automorphism, dual_dimodule, is_central, is_perfect, is_semisimple_lie,
                          lie_module_to_dimodule, regular_dimodule, twisted_dimodule)
from dkit.catalog import catalog_get, catalog_names, extension_get, sl2_irrep
from dkit.errors import FieldMismatch, FlavorViolation, InvalidInput, NotAutomorphism, NotOrderM
from dkit.linalg import QQ, ExactMatrix, cyclotomic_field

coeff = st.fractions(min_value=-3, max_value=3, max_denominator=3)


def vec(n):
    return st.lists(coeff, min_size=n, max_size=n).map(tuple)


@pytest.mark.parametrize("name", catalog_names())
def test_catalog_builds_and_validates(name):
    A = catalog_get(name)
    A.validate_flavor()
    for key, aut in A.automorphisms.items():
        check_automorphism(A, aut.matrix)
        assert (aut.matrix ** aut.order).is_identity()


def test_known_dimensions():
    assert [catalog_get(n).dim for n in ("sl2", "sl3", "gl2", "M2", "h3", "jordan_H2")] == [3, 8, 4, 4, 3, 3]
    assert is_semisimple_lie(catalog_get("sl3"))
    assert not is_semisimple_lie(catalog_get("gl2"))
    assert not is_semisimple_lie(catalog_get("h3"))
    assert is_perfect(catalog_get("sl2")) and not is_perfect(catalog_get("h3"))
    assert is_central(catalog_get("M2")) and is_central(catalog_get("quaternion(-1,-1)"))


def test_jacobi_violation_is_named():
    # antisymmetric, but [x,[y,z]] + ... fails: [x,y] = x, [y,z] = y, [z,x] = z
    entries = [(0, 1, 0, 1), (1, 0, 0, -1), (1, 2, 1, 1), (2, 1, 1, -1), (2, 0, 2, 1), (0, 2, 2, -1)]
    with pytest.raises(FlavorViolation) as exc:
        Algebra.from_entries(QQ, 3, entries, flavor="lie")
    assert exc.value.law == "Jacobi"
    assert exc.value.indices == (0, 1, 2)


def test_antisymmetry_violation():
    with pytest.raises(FlavorViolation) as exc:
        Algebra.from_entries(QQ, 1, [(0, 0, 0, 1)], flavor="lie")
    assert exc.value.law == "antisymmetry"


def test_associativity_violation():
    with pytest.raises(FlavorViolation):
        Algebra.from_entries(QQ, 2, [(0, 0, 1, 1), (1, 0, 0, 1)], flavor="associative")


def test_bad_flavor_and_indices():
    with pytest.raises(InvalidInput):
        Algebra.from_entries(QQ, 2, [], flavor="weird")
    with pytest.raises(InvalidInput):
        Algebra.from_entries(QQ, 2, [(0, 2, 0, 1)])


@given(vec(3), vec(3))
def test_sl2_antisymmetric_product(x, y):
    L = catalog_get("sl2")
    assert L.mul(x, y) == tuple(-c for c in L.mul(y, x))


@given(vec(4), vec(4), vec(4))
def test_quaternions_associative(x, y, z):
    H = catalog_get("quaternion(-1,-1)")
    assert H.mul(H.mul(x, y), z) == H.mul(x, H.mul(y, z))


@given(vec(3), vec(3))
def test_jordan_identity(x, y):
    J = catalog_get("jordan_H2")
    x2 = J.mul(x, x)
    assert J.mul(J.mul(x2, y), x) == J.mul(x2, J.mul(y, x))


def test_automorphism_checks():
    L = catalog_get("sl2")
    with pytest.raises(NotAutomorphism):
        check_automorphism(L, ExactMatrix.from_rows([[2, 0, 0], [0, 1, 0], [0, 0, 1]]))
    with pytest.raises(NotOrderM):
        L.add_automorphism("bad", L.automorphism("conj_h").matrix, 3)
    assert L.automorphism("id").matrix.is_identity()


def test_sl3_automorphisms():
    for name, key in (("sl3", "diagram2"), ("sl3[zeta3]", "inner3")):
        A = catalog_get(name)
        aut = A.automorphism(key)
        check_automorphism(A, aut.matrix)
    assert catalog_get("sl3[zeta3]").field == cyclotomic_field(3)


def test_with_field_only_from_rationals():
    A = catalog_get("sl3[zeta3]")
    with pytest.raises(FieldMismatch):
        A.with_field(QQ)


def test_regular_and_dual_dimodules():
    A = catalog_get("M2")
    R = regular_dimodule(A)
    x, y = A.basis_vector(1), A.basis_vector(2)
    assert R.act_left(x, y) == A.mul(x, y) and R.act_right(y, x) == A.mul(y, x)
    D = dual_dimodule(A)
    # (a.phi)(b) = phi(b a)
    for a, p, b in product(range(4), repeat=3):
        phi = A.basis_vector(p)
        lhs = D.act_left(A.basis_vector(a), phi)[b]
        rhs = A.mul(A.basis_vector(b), A.basis_vector(a))[p]
        assert lhs == rhs


@pytest.mark.parametrize("n", range(5))
def test_irreps_are_lie_modules(n):
    M = lie_module_to_dimodule(catalog_get("sl2"), sl2_irrep(n))
    assert M.dim == n + 1


def test_non_module_rejected():
    L = catalog_get("sl2")
    mats = sl2_irrep(1)
    with pytest.raises(InvalidInput):
        lie_module_to_dimodule(L, [mats[0], mats[0], mats[2]])


def test_twisted_dimodule_action():
    A = catalog_get("Z2")
    phi = A.automorphism("sign").matrix
    M = twisted_dimodule(A, phi)
    g = A.basis_vector(1)
    assert M.act_left(g, A.basis_vector(0)) == (0, -1)
    assert M.act_right(A.basis_vector(0), g) == (0, 1)


@pytest.mark.parametrize("ext", ["dual", "split2", "gauss"])
def test_base_change_is_bilinear_extension(ext):
    A = catalog_get("sl2")
    K = extension_get(ext)
    AK = base_change_algebra(A, K)
    assert AK.dim == A.dim * K.dim
    AK.validate_flavor()
    # (e_i (x) 1)(e_j (x) 1) = e_i e_j (x) 1
    for i, j in product(range(3), repeat=2):
        xi = [0] * AK.dim
        xj = [0] * AK.dim
        xi[i * K.dim] = 1
        xj[j * K.dim] = 1
        prod_ = AK.mul(tuple(map(Fraction, xi)), tuple(map(Fraction, xj)))
        want = [Fraction(0)] * AK.dim
        for l, c in enumerate(A.table[i][j]):
            want[l * K.dim] = c
        assert list(prod_) == want
    MK = base_change_dimodule(regular_dimodule(A), K, AK)
    assert MK.dim == AK.dim
    assert all(MK.left[i] == tuple(AK.table[i][a] for a in range(AK.dim)) for i in range(AK.dim))


def test_extensions_are_commutative_unital():
    for name in ("k", "dual", "split2", "gauss"):
        K = extension_get(name)
        assert isinstance(K, CommutativeExtension)
        assert K.mul(K.unit, K.unit) == K.unit
