"""Built-in algebras, modules, extensions and automorphisms used by tests and the CLI."""

from __future__ import annotations

import os
import re
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .algebra import (Algebra, CommutativeExtension, Dimodule, dual_dimodule,
                      lie_module_to_dimodule, regular_dimodule, trivial_dimodule, twisted_dimodule)
from .errors import UnknownName
from .linalg import QQ, ExactMatrix, FieldSpec, cyclotomic_field, primitive_root, solve


def _unit_matrix(n, i, j):
    return tuple(tuple(1 if (r, c) == (i, j) else 0 for c in range(n)) for r in range(n))


def _matmul(X, Y):
    n = len(X)
    return tuple(tuple(sum(X[i][k] * Y[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _bracket(X, Y):
    P, Q = _matmul(X, Y), _matmul(Y, X)
    return tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(P, Q))


def _flat(X):
    return [x for r in X for x in r]


class _MatrixBasis:
    """Coordinates with respect to a basis of a space of square matrices."""

    def __init__(self, mats):
        self.mats = mats
        self.n = len(mats[0])
        self.B = ExactMatrix.from_columns([_flat(m) for m in mats], self.n * self.n)

    def coords(self, X):
        x = solve(self.B, [Fraction(v) for v in _flat(X)])
        if x is None:
            raise ValueError("matrix outside the span of the basis")
        return x

    def algebra(self, product, names, flavor, name):
        d = len(self.mats)
        table = [[self.coords(product(self.mats[i], self.mats[j])) for j in range(d)] for i in range(d)]
        return Algebra(QQ, d, table, names, flavor, name=name)

    def induced(self, fn) -> ExactMatrix:
        return ExactMatrix.from_columns([self.coords(fn(m)) for m in self.mats], len(self.mats))


def _sl_basis(n):
    mats, names = [], []
    for i in range(n):
        for j in range(i + 1, n):
            mats.append(_unit_matrix(n, i, j))
            names.append(f"E{i + 1}{j + 1}")
    for k in range(n - 1):
        mats.append(tuple(tuple((1 if r == k else -1 if r == k + 1 else 0) if r == c else 0
                                for c in range(n)) for r in range(n)))
        names.append(f"H{k + 1}")
    for i in range(n):
        for j in range(i):
            mats.append(_unit_matrix(n, i, j))
            names.append(f"E{i + 1}{j + 1}")
    if n == 2:
        names = ["e", "h", "f"]
    return mats, names


def sl(n: int) -> Algebra:
    mats, names = _sl_basis(n)
    mb = _MatrixBasis(mats)
    A = mb.algebra(_bracket, names, "lie", f"sl{n}")
    if n == 2:
        conj = lambda X: tuple(tuple(X[i][j] * (1 if i == j else -1) for j in range(2)) for i in range(2))  # noqa: E731
        A.add_automorphism("conj_h", mb.induced(conj), 2)
    if n >= 3:
        # X -> -X^T; for n = 3 this is the diagram automorphism of A2 (order 2)
        neg_t = lambda X: tuple(tuple(-X[j][i] for j in range(n)) for i in range(n))  # noqa: E731
        A.add_automorphism("diagram2", mb.induced(neg_t), 2)
    return A


def sl3_over_cyclotomic3() -> Algebra:
    """sl3 over Q(zeta_3) with the order-3 inner automorphism Ad diag(1, z, z^2)."""
    F = cyclotomic_field(3)
    A = sl(3).with_field(F)
    A.name = "sl3[zeta3]"
    z = primitive_root(F, 3)
    mats, _ = _sl_basis(3)
    diag = []
    for X in mats:
        (i, j) = next((r, c) for r in range(3) for c in range(3) if X[r][c] != 0)
        diag.append(z ** ((i - j) % 3) if i != j else F.one)
    rows = [[diag[i] if i == j else F.zero for j in range(8)] for i in range(8)]
    A.add_automorphism("inner3", ExactMatrix.from_rows(rows, 8, F), 3)
    return A


def gl(n: int) -> Algebra:
    mats = [_unit_matrix(n, i, j) for i in range(n) for j in range(n)]
    names = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return _MatrixBasis(mats).algebra(_bracket, names, "lie", f"gl{n}")


def matrix_algebra(n: int) -> Algebra:
    mats = [_unit_matrix(n, i, j) for i in range(n) for j in range(n)]
    names = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return _MatrixBasis(mats).algebra(_matmul, names, "associative", f"M{n}")


def quaternion(a, b) -> Algebra:
    """(a, b)_Q with basis 1, i, j, k: i^2 = a, j^2 = b, ij = -ji = k."""
    a, b = Fraction(a), Fraction(b)
    # index 0 = 1, 1 = i, 2 = j, 3 = k
    prods = {
        (1, 1): (0, a), (2, 2): (0, b), (3, 3): (0, -a * b),
        (1, 2): (3, 1), (2, 1): (3, -1),
        (1, 3): (2, a), (3, 1): (2, -a),
        (2, 3): (1, -b), (3, 2): (1, b),
    }
    entries = [(0, x, x, 1) for x in range(4)] + [(x, 0, x, 1) for x in range(1, 4)]
    entries += [(x, y, l, c) for (x, y), (l, c) in prods.items()]
    name = f"quaternion({_fmt(a)},{_fmt(b)})"
    return Algebra.from_entries(QQ, 4, entries, basis_names=["1", "i", "j", "k"], flavor="associative", name=name)


def _fmt(x: Fraction) -> str:
    return str(x)


def heisenberg() -> Algebra:
    return Algebra.from_entries(QQ, 3, [(0, 1, 2, 1), (1, 0, 2, -1)], basis_names=["x", "y", "z"],
                                flavor="lie", name="h3")


def abelian(n: int) -> Algebra:
    return Algebra.from_entries(QQ, n, [], flavor="lie", name=f"abelian{n}")


def jordan_h2() -> Algebra:
    """Symmetric 2x2 rational matrices with a o b = (ab + ba)/2."""
    mats = [((1, 0), (0, 0)), ((0, 0), (0, 1)), ((0, 1), (1, 0))]
    half = Fraction(1, 2)

    def jprod(X, Y):
        P, Q = _matmul(X, Y), _matmul(Y, X)
        return tuple(tuple(half * (p + q) for p, q in zip(r, s)) for r, s in zip(P, Q))

    return _MatrixBasis(mats).algebra(jprod, ["E11", "E22", "S12"], "jordan", "jordan_H2")


def group_algebra_z2() -> Algebra:
    """Q[g]/(g^2 - 1) with the sign automorphism g -> -g."""
    A = Algebra.from_entries(QQ, 2, [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1)],
                             basis_names=["1", "g"], flavor="associative", name="Z2")
    A.add_automorphism("sign", ExactMatrix.from_rows([[1, 0], [0, -1]]), 2)
    return A


def sl2_irrep(n: int) -> list[ExactMatrix]:
    """Action matrices of e, h, f on V(n) with basis v_0..v_n."""
    d = n + 1
    E = [[0] * d for _ in range(d)]
    H = [[0] * d for _ in range(d)]
    F = [[0] * d for _ in range(d)]
    for k in range(d):
        H[k][k] = n - 2 * k
        if k + 1 < d:
            F[k + 1][k] = k + 1
        if k >= 1:
            E[k - 1][k] = n - k + 1
    return [ExactMatrix.from_rows(m, d) for m in (E, H, F)]


# -- name lookup --------------------------------------------------------------

_BUILTIN = {
    "sl3[zeta3]": sl3_over_cyclotomic3,
    "h3": heisenberg,
    "heisenberg": heisenberg,
    "jordan_H2": jordan_h2,
    "H2": jordan_h2,
    "Z2": group_algebra_z2,
    "Q[Z2]": group_algebra_z2,
}

_PATTERNS = [
    (re.compile(r"sl(\d+)$"), lambda m: sl(int(m.group(1)))),
    (re.compile(r"gl(\d+)$"), lambda m: gl(int(m.group(1)))),
    (re.compile(r"M(\d+)(\(Q\))?$"), lambda m: matrix_algebra(int(m.group(1)))),
    (re.compile(r"abelian(\d+)$"), lambda m: abelian(int(m.group(1)))),
    (re.compile(r"quaternion\(\s*(-?\d+(?:/\d+)?)\s*,\s*(-?\d+(?:/\d+)?)\s*\)$"),
     lambda m: quaternion(m.group(1), m.group(2))),
]


@lru_cache(maxsize=None)
def _builtin(name: str) -> Algebra:
    if name in _BUILTIN:
        return _BUILTIN[name]()
    for pat, fn in _PATTERNS:
        m = pat.match(name)
        if m:
            if pat.pattern.startswith("sl") and int(m.group(1)) < 2:
                break
            return fn(m)
    raise KeyError(name)


def catalog_get(name: str) -> Algebra:
    """Look up a built-in algebra, falling back to ``$DKIT_CATALOG_DIR/<name>.json``."""
    try:
        return _builtin(name)
    except KeyError:
        pass
    user_dir = os.environ.get("DKIT_CATALOG_DIR")
    if user_dir:
        path = Path(user_dir) / f"{name}.json"
        if path.exists():
            from .io import load_algebra
            return load_algebra(path)
    raise UnknownName(f"unknown algebra {name!r}")


def catalog_names() -> list[str]:
    return ["sl2", "sl3", "sl3[zeta3]", "gl2", "M2", "quaternion(-1,-1)", "h3", "abelian1", "jordan_H2", "Z2"]


_EXTENSIONS = {
    "k": lambda: CommutativeExtension.trivial(),
    "dual": lambda: CommutativeExtension.from_modulus([0, 0, 1], name="dual"),
    "Q[x]/(x^2)": lambda: CommutativeExtension.from_modulus([0, 0, 1], name="dual"),
    "split2": lambda: CommutativeExtension.split(2, name="split2"),
    "QxQ": lambda: CommutativeExtension.split(2, name="split2"),
    "gauss": lambda: CommutativeExtension.from_modulus([1, 0, 1], name="gauss"),
    "Q(i)": lambda: CommutativeExtension.from_modulus([1, 0, 1], name="gauss"),
}


@lru_cache(maxsize=None)
def extension_get(name: str) -> CommutativeExtension:
    try:
        return _EXTENSIONS[name]()
    except KeyError:
        raise UnknownName(f"unknown commutative extension {name!r}") from None


def module_get(A: Algebra, name: str) -> Dimodule:
    """Standard dimodules: regular/adjoint, dual, trivial, V(n) for sl2, twisted:<automorphism>."""
    if name in ("regular", "adjoint"):
        return regular_dimodule(A)
    if name == "dual":
        return dual_dimodule(A)
    if name == "trivial":
        return trivial_dimodule(A)
    m = re.match(r"V\((\d+)\)$", name)
    if m:
        if A.name != "sl2":
            raise UnknownName("V(n) modules are defined for sl2 only")
        n = int(m.group(1))
        return lie_module_to_dimodule(A, sl2_irrep(n), name=f"V({n})")
    if name.startswith("twisted:"):
        return twisted_dimodule(A, A.automorphism(name.split(":", 1)[1]).matrix)
    raise UnknownName(f"unknown module {name!r} for {A.name}")


# (base algebra, automorphism, order) for the graded verifier
LOOP_CASES = {
    "a2-twisted": ("sl3", "diagram2", 2),
    "a1-untwisted": ("sl2", "id", 1),
    "a1-twisted": ("sl2", "conj_h", 2),
    "a2-inner3": ("sl3[zeta3]", "inner3", 3),
}


def field_for(name: str) -> FieldSpec:
    return catalog_get(name).field
