"""Independent reference computations written directly in sympy."""

from itertools import product

import sympy


def _hom_symbols(n, m):
    return sympy.Matrix(m, n, lambda b, a: sympy.Symbol(f"f{a}_{b}"))


def _equations(A, M, centroid):
    n, m = A.dim, M.dim
    F = _hom_symbols(n, m)
    eqs = []
    for i, j in product(range(n), repeat=2):
        fij = F * sympy.Matrix(A.table[i][j])
        fi, fj = F[:, i], F[:, j]
        # f(e_i) . e_j and e_i . f(e_j)
        right = sympy.Matrix([sum(fi[a] * M.right[a][j][b] for a in range(m)) for b in range(m)])
        left = sympy.Matrix([sum(M.left[i][a][b] * fj[a] for a in range(m)) for b in range(m)])
        if centroid:
            eqs.extend(fij - right)
            eqs.extend(fij - left)
        else:
            eqs.extend(fij - right - left)
    return eqs, list(F.T)


def der_dim(A, M, centroid=False):
    eqs, syms = _equations(A, M, centroid)
    if not syms:
        return 0
    mat, _ = sympy.linear_eq_to_matrix(eqs, syms)
    return len(syms) - mat.rank()
