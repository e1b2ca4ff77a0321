"""Structure-constant algebras, dimodules, and base change.

An :class:`Algebra` is a finite-dimensional vector space with a bilinear
product given on a basis; no identity (associativity, Jacobi, ...) is assumed
unless a flavor tag asks for it, in which case it is checked exactly on all
basis tuples when the object is built.

A :class:`Dimodule` carries a left action ``e_i . m_a`` and a right action
``m_a . e_i`` that need not be related in any way.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .errors import (DimoduleMismatch, FieldMismatch, FlavorViolation, InvalidInput,
                     NotAutomorphism, NotOrderM)
from .linalg import QQ, ExactMatrix, FieldSpec, LinearSubspace, rank

FLAVORS = ("lie", "associative", "jordan", "generic")


def _vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _vscale(c, v):
    return tuple(c * a for a in v)


def _is_zero(v) -> bool:
    return all(x == 0 for x in v)


@dataclass(frozen=True, eq=False)
class Automorphism:
    """Algebra automorphism; column ``i`` of ``matrix`` is the image of ``e_i``."""

    name: str
    matrix: ExactMatrix
    order: int


@dataclass(frozen=True, eq=False)
class ScalarStructure:
    """Action of a commutative ring ``ring`` by the matrices of its basis elements."""

    ring: "CommutativeExtension"
    matrices: tuple[ExactMatrix, ...]


class Algebra:
    """Finite-dimensional algebra over ``field`` with basis products ``table[i][j]``."""

    def __init__(self, field: FieldSpec, dim: int, table, basis_names: Sequence[str] | None = None,
                 flavor: str = "generic", automorphisms: dict | None = None,
                 scalars: ScalarStructure | None = None, name: str | None = None, validate: bool = True):
        if flavor not in FLAVORS:
            raise InvalidInput(f"unknown flavor {flavor!r}")
        self.field = field
        self.dim = dim
        el = field.element
        self.table = tuple(tuple(tuple(el(x) for x in table[i][j]) for j in range(dim)) for i in range(dim))
        for i, j in product(range(dim), repeat=2):
            if len(self.table[i][j]) != dim:
                raise InvalidInput(f"product e_{i} e_{j} has wrong length")
        self.basis_names = tuple(basis_names) if basis_names is not None else tuple(f"e{i}" for i in range(dim))
        if len(self.basis_names) != dim:
            raise InvalidInput("basis_names length differs from dim")
        self.flavor = flavor
        self.name = name
        self.scalars = scalars
        self._sparse = tuple(tuple(tuple((l, c) for l, c in enumerate(self.table[i][j]) if c != 0)
                                   for j in range(dim)) for i in range(dim))
        if validate:
            self.validate_flavor()
        self.automorphisms: dict[str, Automorphism] = {}
        for key, aut in (automorphisms or {}).items():
            self.add_automorphism(key, aut.matrix if isinstance(aut, Automorphism) else aut[0],
                                  aut.order if isinstance(aut, Automorphism) else aut[1])

    @classmethod
    def from_entries(cls, field: FieldSpec, dim: int, entries, **kw) -> "Algebra":
        """Build from sparse ``(i, j, l, c)`` entries meaning ``e_i e_j += c e_l``."""
        z = field.zero
        table = [[[z] * dim for _ in range(dim)] for _ in range(dim)]
        for i, j, l, c in entries:
            if not (0 <= i < dim and 0 <= j < dim and 0 <= l < dim):
                raise InvalidInput(f"structure index out of range in entry {(i, j, l)}")
            table[i][j][l] = table[i][j][l] + field.element(c)
        return cls(field, dim, table, **kw)

    def entries(self):
        """Sparse ``(i, j, l, c)`` listing in lexicographic (i, j) order."""
        return [(i, j, l, c) for i in range(self.dim) for j in range(self.dim) for l, c in self._sparse[i][j]]

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim}, flavor={self.flavor})"

    # -- arithmetic --------------------------------------------------------

    def zero(self):
        return (self.field.zero,) * self.dim

    def basis_vector(self, i: int):
        z, o = self.field.zero, self.field.one
        return tuple(o if k == i else z for k in range(self.dim))

    def mul(self, x, y):
        out = [self.field.zero] * self.dim
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            row = self._sparse[i]
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                c = xi * yj
                for l, s in row[j]:
                    out[l] = out[l] + c * s
        return tuple(out)

    def left_mult(self, x) -> ExactMatrix:
        """Matrix of y -> x y."""
        cols = [self.mul(x, self.basis_vector(j)) for j in range(self.dim)]
        return ExactMatrix.from_columns(cols, self.dim, self.field)

    def right_mult(self, x) -> ExactMatrix:
        cols = [self.mul(self.basis_vector(j), x) for j in range(self.dim)]
        return ExactMatrix.from_columns(cols, self.dim, self.field)

    # -- validation --------------------------------------------------------

    def validate_flavor(self):
        n, t, mul, e = self.dim, self.table, self.mul, self.basis_vector
        if self.flavor == "lie":
            for i in range(n):
                if not _is_zero(t[i][i]):
                    raise FlavorViolation("antisymmetry", (i, i))
                for j in range(i + 1, n):
                    if not _is_zero(_vadd(t[i][j], t[j][i])):
                        raise FlavorViolation("antisymmetry", (i, j))
            for i in range(n):
                for j in range(i + 1, n):
                    for l in range(j + 1, n):
                        s = _vadd(_vadd(mul(t[i][j], e(l)), mul(t[j][l], e(i))), mul(t[l][i], e(j)))
                        if not _is_zero(s):
                            raise FlavorViolation("Jacobi", (i, j, l))
        elif self.flavor == "associative":
            for i, j, l in product(range(n), repeat=3):
                if mul(t[i][j], e(l)) != mul(e(i), t[j][l]):
                    raise FlavorViolation("associativity", (i, j, l))
        elif self.flavor == "jordan":
            for i in range(n):
                for j in range(i + 1, n):
                    if t[i][j] != t[j][i]:
                        raise FlavorViolation("commutativity", (i, j))
            # full linearization of (x^2 y) x = x^2 (y x)
            for x, y, z, w in product(range(n), repeat=4):
                lhs = _vadd(_vadd(mul(mul(t[x][z], e(y)), e(w)), mul(mul(t[z][w], e(y)), e(x))),
                            mul(mul(t[w][x], e(y)), e(z)))
                rhs = _vadd(_vadd(mul(t[x][z], t[y][w]), mul(t[z][w], t[y][x])), mul(t[w][x], t[y][z]))
                if lhs != rhs:
                    raise FlavorViolation("Jordan identity", (x, y, z, w))

    def add_automorphism(self, key: str, matrix: ExactMatrix, order: int) -> Automorphism:
        check_automorphism(self, matrix)
        n = self.dim
        one = ExactMatrix.identity(n, self.field)
        if order < 1 or matrix ** order != one:
            raise NotOrderM(f"automorphism {key!r}: power {order} is not the identity")
        for k in range(1, order):
            if matrix ** k == one:
                raise NotOrderM(f"automorphism {key!r} has order {k} < {order}")
        aut = Automorphism(key, matrix, order)
        self.automorphisms[key] = aut
        return aut

    def automorphism(self, key: str) -> Automorphism:
        from .errors import UnknownName
        if key in ("id", "identity") and key not in self.automorphisms:
            return Automorphism("id", ExactMatrix.identity(self.dim, self.field), 1)
        try:
            return self.automorphisms[key]
        except KeyError:
            raise UnknownName(f"algebra {self.name!r} has no automorphism {key!r}") from None

    def with_field(self, field: FieldSpec) -> "Algebra":
        """Same structure constants (which must be rational) read in a larger field."""
        if not self.field.is_rational and self.field != field:
            raise FieldMismatch("can only extend algebras defined over Q")
        table = [[[field.element(c) for c in self.table[i][j]] for j in range(self.dim)] for i in range(self.dim)]
        return Algebra(field, self.dim, table, self.basis_names, self.flavor, name=self.name, validate=False)


def check_automorphism(A: Algebra, matrix: ExactMatrix):
    n = A.dim
    if matrix.shape != (n, n):
        raise NotAutomorphism(f"matrix shape {matrix.shape} does not match dim {n}")
    if rank(matrix) != n:
        raise NotAutomorphism("matrix is singular")
    images = [matrix.column(i) for i in range(n)]
    for i, j in product(range(n), repeat=2):
        lhs = matrix @ A.table[i][j]
        if tuple(lhs) != A.mul(images[i], images[j]):
            raise NotAutomorphism(f"not multiplicative on basis pair {(i, j)}")


class CommutativeExtension(Algebra):
    """Commutative associative unital algebra K, free of finite rank over the base field."""

    def __init__(self, field, dim, table, unit, basis_names=None, name=None):
        super().__init__(field, dim, table, basis_names, "associative", name=name)
        self.unit = tuple(field.element(x) for x in unit)
        for i in range(dim):
            for j in range(i + 1, dim):
                if self.table[i][j] != self.table[j][i]:
                    raise FlavorViolation("commutativity", (i, j))
            e = self.basis_vector(i)
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                raise FlavorViolation("unit law", (i,))

    @classmethod
    def from_modulus(cls, coeffs, field: FieldSpec = QQ, name=None) -> "CommutativeExtension":
        """field[x]/(f) with basis 1, x, ..., x^{n-1}; ``coeffs`` low degree first, f monic."""
        f = [field.element(c) for c in coeffs]
        n = len(f) - 1
        if n < 1 or f[-1] != 1:
            raise InvalidInput("modulus must be monic of degree >= 1")
        z = field.zero

        def reduce(p):
            p = list(p)
            for k in range(len(p) - 1, n - 1, -1):
                c = p[k]
                if c != 0:
                    for i in range(n):
                        p[k - n + i] = p[k - n + i] - c * f[i]
                    p[k] = z
            return p[:n] + [z] * (n - len(p[:n]))

        table = []
        for i in range(n):
            row = []
            for j in range(n):
                p = [z] * (i + j + 1)
                p[i + j] = field.one
                row.append(reduce(p))
            table.append(row)
        names = ["1"] + [f"x^{k}" if k > 1 else "x" for k in range(1, n)]
        unit = [field.one] + [z] * (n - 1)
        ext = cls(field, n, table, unit, names, name=name)
        ext.modulus = tuple(f)
        return ext

    @classmethod
    def split(cls, n: int, field: FieldSpec = QQ, name=None) -> "CommutativeExtension":
        """k^n with componentwise product (split etale)."""
        z, o = field.zero, field.one
        table = [[[o if (i == j == l) else z for l in range(n)] for j in range(n)] for i in range(n)]
        return cls(field, n, table, [o] * n, [f"p{i}" for i in range(n)], name=name)

    @classmethod
    def trivial(cls, field: FieldSpec = QQ) -> "CommutativeExtension":
        return cls(field, 1, [[[field.one]]], [field.one], ["1"], name="k")


# -- dimodules ----------------------------------------------------------------


class Dimodule:
    """Left action ``left[i][a] = e_i . m_a`` and right action ``right[a][i] = m_a . e_i``."""

    def __init__(self, algebra: Algebra, dim: int, left, right, scalars: ScalarStructure | None = None,
                 name: str | None = None):
        self.algebra = algebra
        self.dim = dim
        el = algebra.field.element
        n = algebra.dim
        self.left = tuple(tuple(tuple(el(x) for x in left[i][a]) for a in range(dim)) for i in range(n))
        self.right = tuple(tuple(tuple(el(x) for x in right[a][i]) for i in range(n)) for a in range(dim))
        for i, a in product(range(n), range(dim)):
            if len(self.left[i][a]) != dim or len(self.right[a][i]) != dim:
                raise InvalidInput("action vector has wrong length")
        self.scalars = scalars
        self.name = name

    @classmethod
    def from_entries(cls, algebra: Algebra, dim: int, left_entries, right_entries, **kw) -> "Dimodule":
        z = algebra.field.zero
        n = algebra.dim
        left = [[[z] * dim for _ in range(dim)] for _ in range(n)]
        right = [[[z] * dim for _ in range(n)] for _ in range(dim)]
        for i, a, b, c in left_entries:
            if not (0 <= i < n and 0 <= a < dim and 0 <= b < dim):
                raise InvalidInput(f"left action index out of range in {(i, a, b)}")
            left[i][a][b] = left[i][a][b] + algebra.field.element(c)
        for a, i, b, c in right_entries:
            if not (0 <= i < n and 0 <= a < dim and 0 <= b < dim):
                raise InvalidInput(f"right action index out of range in {(a, i, b)}")
            right[a][i][b] = right[a][i][b] + algebra.field.element(c)
        return cls(algebra, dim, left, right, **kw)

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    def act_left(self, x, m):
        out = [self.field.zero] * self.dim
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for a, ma in enumerate(m):
                if ma == 0:
                    continue
                c = xi * ma
                for b, v in enumerate(self.left[i][a]):
                    if v != 0:
                        out[b] = out[b] + c * v
        return tuple(out)

    def act_right(self, m, x):
        out = [self.field.zero] * self.dim
        for a, ma in enumerate(m):
            if ma == 0:
                continue
            for i, xi in enumerate(x):
                if xi == 0:
                    continue
                c = xi * ma
                for b, v in enumerate(self.right[a][i]):
                    if v != 0:
                        out[b] = out[b] + c * v
        return tuple(out)

    def left_matrix(self, i: int) -> ExactMatrix:
        return ExactMatrix.from_columns(self.left[i], self.dim, self.field)

    def right_matrix(self, i: int) -> ExactMatrix:
        return ExactMatrix.from_columns([self.right[a][i] for a in range(self.dim)], self.dim, self.field)

    def same_as(self, other: "Dimodule") -> bool:
        return self.dim == other.dim and self.left == other.left and self.right == other.right

    def __repr__(self):
        return f"Dimodule({self.name or '?'} over {self.algebra!r}, dim={self.dim})"


def regular_dimodule(A: Algebra) -> Dimodule:
    left = [[A.table[i][a] for a in range(A.dim)] for i in range(A.dim)]
    right = [[A.table[a][i] for i in range(A.dim)] for a in range(A.dim)]
    return Dimodule(A, A.dim, left, right, scalars=A.scalars, name="regular")


def dual_dimodule(A: Algebra) -> Dimodule:
    """A* with (a.phi)(a') = phi(a'a) and (phi.a)(a') = phi(a a'), in the dual basis."""
    n, t = A.dim, A.table
    left = [[[t[j][i][a] for j in range(n)] for a in range(n)] for i in range(n)]
    right = [[[t[i][j][a] for j in range(n)] for i in range(n)] for a in range(n)]
    scalars = None
    if A.scalars is not None:
        # (r.phi)(a) = phi(r a): transpose of the action on A
        scalars = ScalarStructure(A.scalars.ring, tuple(m.T for m in A.scalars.matrices))
    return Dimodule(A, n, left, right, scalars=scalars, name="dual")


def trivial_dimodule(A: Algebra, dim: int = 1) -> Dimodule:
    z = A.field.zero
    left = [[[z] * dim for _ in range(dim)] for _ in range(A.dim)]
    right = [[[z] * dim for _ in range(A.dim)] for _ in range(dim)]
    return Dimodule(A, dim, left, right, name="trivial")


def lie_module_to_dimodule(A: Algebra, action: Sequence[ExactMatrix], name=None) -> Dimodule:
    """Canonical dimodule of a Lie module: left = given action, right m.l = -l.m."""
    if len(action) != A.dim:
        raise DimoduleMismatch("need one action matrix per basis element")
    dim = action[0].nrows if action else 0
    for i, j in product(range(A.dim), repeat=2):
        lhs = _combine(action, A.table[i][j], dim, A.field)
        rhs = action[i] @ action[j] - action[j] @ action[i]
        if lhs != rhs:
            raise InvalidInput(f"action is not a Lie module action on basis pair {(i, j)}")
    left = [[action[i].column(a) for a in range(dim)] for i in range(A.dim)]
    right = [[_vscale(-1, action[i].column(a)) for i in range(A.dim)] for a in range(dim)]
    return Dimodule(A, dim, left, right, name=name)


def _combine(mats, coeffs, dim, field) -> ExactMatrix:
    out = ExactMatrix.zeros(dim, dim, field)
    for c, m in zip(coeffs, mats):
        if c != 0:
            out = out + m.scale(c)
    return out


def twisted_dimodule(A: Algebra, phi: ExactMatrix) -> Dimodule:
    """A with a.m = phi(a) m and m.a = m a."""
    check_automorphism(A, phi)
    n = A.dim
    left = [[A.mul(phi.column(i), A.basis_vector(a)) for a in range(n)] for i in range(n)]
    right = [[A.table[a][i] for i in range(n)] for a in range(n)]
    return Dimodule(A, n, left, right, name="twisted")


# -- base change --------------------------------------------------------------


def _check_field(A: Algebra, K: Algebra):
    if A.field != K.field:
        raise FieldMismatch(f"{A!r} and {K!r} are over different fields")


def base_change_algebra(A: Algebra, K: CommutativeExtension) -> Algebra:
    """A tensor K with basis e_i (x) u_p at index i*dim K + p; records the K-structure."""
    _check_field(A, K)
    n, r = A.dim, K.dim
    z = A.field.zero
    N = n * r
    table = [[[z] * N for _ in range(N)] for _ in range(N)]
    for i, j in product(range(n), repeat=2):
        for l, c in A._sparse[i][j]:
            for p, q in product(range(r), repeat=2):
                for s, k in K._sparse[p][q]:
                    row = table[i * r + p][j * r + q]
                    row[l * r + s] = row[l * r + s] + c * k
    names = [f"{a}*{u}" for a in A.basis_names for u in K.basis_names]
    scalars = ScalarStructure(K, tuple(_scalar_matrix(n, K, s) for s in range(r)))
    return Algebra(A.field, N, table, names, A.flavor, scalars=scalars,
                   name=f"{A.name}_{K.name}" if A.name else None, validate=False)


def _scalar_matrix(n: int, K: Algebra, s: int) -> ExactMatrix:
    """Matrix of multiplication by u_s on V (x) K with dim V = n."""
    r = K.dim
    N = n * r
    z = K.field.zero
    rows = [[z] * N for _ in range(N)]
    for a in range(n):
        for p in range(r):
            for t, k in K._sparse[s][p]:
                rows[a * r + t][a * r + p] = rows[a * r + t][a * r + p] + k
    return ExactMatrix.from_rows(rows, N, K.field)


def base_change_dimodule(M: Dimodule, K: CommutativeExtension, AK: Algebra | None = None) -> Dimodule:
    """M (x) K over A (x) K: (a (x) s1).(m (x) s2) = (a.m) (x) s1 s2, and symmetrically."""
    A = M.algebra
    _check_field(A, K)
    if AK is None:
        AK = base_change_algebra(A, K)
    n, m, r = A.dim, M.dim, K.dim
    z = A.field.zero
    D = m * r
    left = [[[z] * D for _ in range(D)] for _ in range(n * r)]
    right = [[[z] * (D) for _ in range(n * r)] for _ in range(D)]
    for i, a in product(range(n), range(m)):
        lv = [(b, c) for b, c in enumerate(M.left[i][a]) if c != 0]
        rv = [(b, c) for b, c in enumerate(M.right[a][i]) if c != 0]
        for p, q in product(range(r), repeat=2):
            for s, k in K._sparse[p][q]:
                row = left[i * r + p][a * r + q]
                for b, c in lv:
                    row[b * r + s] = row[b * r + s] + c * k
                row = right[a * r + q][i * r + p]
                for b, c in rv:
                    row[b * r + s] = row[b * r + s] + c * k
    scalars = ScalarStructure(K, tuple(_scalar_matrix(m, K, s) for s in range(r)))
    return Dimodule(AK, D, left, right, scalars=scalars, name=f"{M.name}_{K.name}" if M.name else None)


# -- structural predicates ----------------------------------------------------


def derived_subalgebra(A: Algebra) -> LinearSubspace:
    return LinearSubspace.span([A.table[i][j] for i in range(A.dim) for j in range(A.dim)], A.dim, A.field)


def is_perfect(A: Algebra) -> bool:
    return derived_subalgebra(A).dim == A.dim


def is_central(A: Algebra) -> bool:
    from .solvers import cent_space, hom_identity
    C = cent_space(A, regular_dimodule(A)).space
    return C.dim == 1 and C.contains(hom_identity(A.dim, A.field))


def killing_form(A: Algebra) -> ExactMatrix:
    ads = [A.left_mult(A.basis_vector(i)) for i in range(A.dim)]
    rows = []
    for i in range(A.dim):
        rows.append([_trace(ads[i] @ ads[j]) for j in range(A.dim)])
    return ExactMatrix.from_rows(rows, A.dim, A.field) if A.dim else ExactMatrix((), 0)


def _trace(M: ExactMatrix):
    s = 0
    for i in range(M.nrows):
        s = s + M[i, i]
    return s


def is_semisimple_lie(A: Algebra) -> bool:
    """Cartan's criterion: nondegenerate Killing form (characteristic zero)."""
    if A.flavor != "lie":
        return False
    if A.dim == 0:
        return True
    return rank(killing_form(A)) == A.dim
