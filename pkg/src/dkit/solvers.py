"""Derivations, centroids, inner derivations and first cohomology as nullspaces.

A linear map f: A -> M is stored as a flat vector with ``f[a*dim M + b]`` the
coefficient of ``m_b`` in ``f(e_a)``: the image of each basis element is
contiguous (target coordinate fastest).  Every space below is a
:class:`~dkit.linalg.LinearSubspace` of that coordinate space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .algebra import (Algebra, CommutativeExtension, Dimodule, base_change_algebra,
                      base_change_dimodule, is_perfect, regular_dimodule)
from .errors import (DimoduleMismatch, InnerNotContained, MissingKStructure, NotPerfect,
                     RStructureInvalid)
from .linalg import ExactMatrix, FieldSpec, LinearSubspace, RowReducer

# -- Hom coordinates ----------------------------------------------------------


def hom_apply(f, dim_a: int, dim_m: int, x):
    out = [0] * dim_m
    for a, xa in enumerate(x):
        if xa == 0:
            continue
        base = a * dim_m
        for b in range(dim_m):
            v = f[base + b]
            if v != 0:
                out[b] = out[b] + xa * v
    return tuple(out)


def hom_to_matrix(f, dim_a: int, dim_m: int, field: FieldSpec) -> ExactMatrix:
    return ExactMatrix.from_rows([[f[a * dim_m + b] for a in range(dim_a)] for b in range(dim_m)], dim_a, field)


def matrix_to_hom(F: ExactMatrix) -> tuple:
    return tuple(F[b, a] for a in range(F.ncols) for b in range(F.nrows))


def hom_identity(n: int, field: FieldSpec) -> tuple:
    return matrix_to_hom(ExactMatrix.identity(n, field))


def hom_precompose(f, S: ExactMatrix, dim_m: int) -> tuple:
    """f o S for S an endomorphism of the source."""
    n = S.nrows
    out = []
    for a in range(n):
        img = hom_apply(f, n, dim_m, S.column(a))
        out.extend(img)
    return tuple(out)


def hom_postcompose(T: ExactMatrix, f, dim_a: int) -> tuple:
    """T o f for T an endomorphism of the target."""
    m = T.nrows
    out = []
    for a in range(dim_a):
        out.extend(T @ f[a * m:(a + 1) * m])
    return tuple(out)


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


# -- constraint rows ----------------------------------------------------------


def _check_pair(A: Algebra, M: Dimodule):
    if M.algebra is not A and (M.algebra.dim != A.dim or M.algebra.table != A.table):
        raise DimoduleMismatch(f"{M!r} is not a dimodule of {A!r}")


def _leibniz_rows(A: Algebra, M: Dimodule):
    """Rows of delta_A: (delta f)(e_i, e_j) = f(e_i e_j) - f(e_i).e_j - e_i.f(e_j)."""
    n, dm = A.dim, M.dim
    for i, j in product(range(n), repeat=2):
        for c in range(dm):
            row = {}
            for l, coef in A._sparse[i][j]:
                k = l * dm + c
                row[k] = row.get(k, 0) + coef
            for b in range(dm):
                v = M.right[b][j][c]
                if v != 0:
                    k = i * dm + b
                    row[k] = row.get(k, 0) - v
                v = M.left[i][b][c]
                if v != 0:
                    k = j * dm + b
                    row[k] = row.get(k, 0) - v
            yield row


def _centroid_rows(A: Algebra, M: Dimodule):
    n, dm = A.dim, M.dim
    for i, j in product(range(n), repeat=2):
        for c in range(dm):
            base = {}
            for l, coef in A._sparse[i][j]:
                k = l * dm + c
                base[k] = base.get(k, 0) + coef
            r1, r2 = dict(base), dict(base)
            for b in range(dm):
                v = M.right[b][j][c]
                if v != 0:
                    r1[i * dm + b] = r1.get(i * dm + b, 0) - v
                v = M.left[i][b][c]
                if v != 0:
                    r2[j * dm + b] = r2.get(j * dm + b, 0) - v
            yield r1
            yield r2


def _linearity_rows(A: Algebra, M: Dimodule):
    """d(s.e_a) - s.d(e_a) = 0 for every basis scalar s of the recorded ring."""
    if A.scalars is None or M.scalars is None:
        raise MissingKStructure("relative computation needs a recorded scalar structure on both sides")
    if A.scalars.ring.dim != M.scalars.ring.dim or A.scalars.ring.table != M.scalars.ring.table:
        raise MissingKStructure("algebra and dimodule carry different scalar rings")
    n, dm = A.dim, M.dim
    for SA, SM in zip(A.scalars.matrices, M.scalars.matrices):
        for a in range(n):
            for c in range(dm):
                row = {}
                for l in range(n):
                    v = SA[l, a]
                    if v != 0:
                        row[l * dm + c] = row.get(l * dm + c, 0) + v
                for b in range(dm):
                    v = SM[c, b]
                    if v != 0:
                        row[a * dm + b] = row.get(a * dm + b, 0) - v
                yield row


def _solve(rows, ncols: int, field: FieldSpec) -> LinearSubspace:
    red = RowReducer(ncols, field)
    for r in rows:
        red.add(r)
    return red.kernel()


def delta_operator(A: Algebra, M: Dimodule) -> ExactMatrix:
    """Matrix of delta_A : Hom(A, M) -> Hom(A (x) A, M), rows indexed by (i, j, c)."""
    _check_pair(A, M)
    ncols = A.dim * M.dim
    z = A.field.zero
    rows = []
    for r in _leibniz_rows(A, M):
        dense = [z] * ncols
        for k, v in r.items():
            dense[k] = v
        rows.append(dense)
    return ExactMatrix.from_rows(rows, ncols, A.field)


# -- spaces -------------------------------------------------------------------


@dataclass
class DerivationSpace:
    source: Algebra
    target: Dimodule
    relative_to: str
    space: LinearSubspace

    @property
    def dim(self) -> int:
        return self.space.dim

    def maps(self):
        return [hom_to_matrix(v, self.source.dim, self.target.dim, self.source.field) for v in self.space.basis]


@dataclass
class CentroidSpace(DerivationSpace):
    pass


def _relative(relative_to: str) -> bool:
    if relative_to not in ("k", "K", "R"):
        raise ValueError(f"relative_to must be k, K or R, not {relative_to!r}")
    return relative_to != "k"


def der_space(A: Algebra, M: Dimodule | None = None, relative_to: str = "k") -> DerivationSpace:
    M = regular_dimodule(A) if M is None else M
    _check_pair(A, M)
    rows = _leibniz_rows(A, M)
    if _relative(relative_to):
        rows = list(rows) + list(_linearity_rows(A, M))
    return DerivationSpace(A, M, relative_to, _solve(rows, A.dim * M.dim, A.field))


def cent_space(A: Algebra, M: Dimodule | None = None, relative_to: str = "k") -> CentroidSpace:
    M = regular_dimodule(A) if M is None else M
    _check_pair(A, M)
    rows = _centroid_rows(A, M)
    if _relative(relative_to):
        rows = list(rows) + list(_linearity_rows(A, M))
    return CentroidSpace(A, M, relative_to, _solve(rows, A.dim * M.dim, A.field))


def is_derivation(A: Algebra, M: Dimodule, f) -> bool:
    """Check the Leibniz rule on all basis pairs by direct evaluation."""
    n, dm = A.dim, M.dim
    imgs = [f[a * dm:(a + 1) * dm] for a in range(n)]
    for i, j in product(range(n), repeat=2):
        lhs = hom_apply(f, n, dm, A.table[i][j])
        rhs = _add(M.act_right(imgs[i], A.basis_vector(j)), M.act_left(A.basis_vector(i), imgs[j]))
        if any(x != y for x, y in zip(lhs, rhs)):
            return False
    return True


def is_centroidal(A: Algebra, M: Dimodule, f) -> bool:
    n, dm = A.dim, M.dim
    imgs = [f[a * dm:(a + 1) * dm] for a in range(n)]
    for i, j in product(range(n), repeat=2):
        lhs = hom_apply(f, n, dm, A.table[i][j])
        r1 = M.act_right(imgs[i], A.basis_vector(j))
        r2 = M.act_left(A.basis_vector(i), imgs[j])
        if any(x != y for x, y in zip(lhs, r1)) or any(x != y for x, y in zip(lhs, r2)):
            return False
    return True


def ider_lie(L: Algebra, M: Dimodule) -> LinearSubspace:
    """Span of the maps l -> l.m over a basis of M."""
    _check_pair(L, M)
    n, dm = L.dim, M.dim
    vecs = [[M.left[a][b][c] for a in range(n) for c in range(dm)] for b in range(dm)]
    return LinearSubspace.span(vecs, n * dm, L.field)


def ider_assoc(B: Algebra, N: Dimodule) -> LinearSubspace:
    """Span of the maps b -> b.n - n.b over a basis of N."""
    _check_pair(B, N)
    n, dm = B.dim, N.dim
    vecs = [[N.left[a][b][c] - N.right[b][a][c] for a in range(n) for c in range(dm)] for b in range(dm)]
    return LinearSubspace.span(vecs, n * dm, B.field)


@dataclass
class Cohomology:
    der: DerivationSpace
    inner: LinearSubspace

    @property
    def dim(self) -> int:
        return self.der.dim - self.inner.dim


def _h1(der: DerivationSpace, inner: LinearSubspace) -> Cohomology:
    if not der.space.contains(inner):
        raise InnerNotContained("inner derivations are not contained in Der; the input is not modelled consistently")
    return Cohomology(der, inner)


def h1_lie(L: Algebra, M: Dimodule) -> Cohomology:
    return _h1(der_space(L, M), ider_lie(L, M))


def hh1_assoc(B: Algebra, N: Dimodule | None = None) -> Cohomology:
    N = regular_dimodule(B) if N is None else N
    return _h1(der_space(B, N), ider_assoc(B, N))


# -- comparison map omega -----------------------------------------------------


@dataclass
class OmegaReport:
    dim_der_k: int
    dim_K: int
    dim_der_K: int
    images_in_der_K: bool
    rank_images: int

    @property
    def dims_match(self) -> bool:
        return self.dim_der_k * self.dim_K == self.dim_der_K

    @property
    def injective(self) -> bool:
        return self.rank_images == self.dim_der_k * self.dim_K

    @property
    def passed(self) -> bool:
        return self.dims_match and self.images_in_der_K and self.injective


def omega_map(f, dim_a: int, dim_m: int, K: CommutativeExtension, p: int) -> tuple:
    """omega(f (x) u_p): e_a (x) u_q -> f(e_a) (x) u_p u_q, in Hom(A_K, M_K) coordinates."""
    r = K.dim
    D = dim_m * r
    out = [K.field.zero] * (dim_a * r * D)
    for a in range(dim_a):
        for q in range(r):
            base = (a * r + q) * D
            for s, k in K._sparse[p][q]:
                for b in range(dim_m):
                    v = f[a * dim_m + b]
                    if v != 0:
                        out[base + b * r + s] = out[base + b * r + s] + v * k
    return tuple(out)


def omega_compare(A: Algebra, M: Dimodule, K: CommutativeExtension) -> OmegaReport:
    der = der_space(A, M)
    AK = base_change_algebra(A, K)
    MK = base_change_dimodule(M, K, AK)
    derK = der_space(AK, MK, relative_to="K")
    imgs = [omega_map(f, A.dim, M.dim, K, p) for f in der.space.basis for p in range(K.dim)]
    inside = all(derK.space.contains(v) for v in imgs)
    rk = LinearSubspace.span(imgs, AK.dim * MK.dim, A.field).dim
    return OmegaReport(der.dim, K.dim, derK.dim, inside, rk)


# -- eta and its exact sequence ----------------------------------------------


def _check_r_structure(B: Algebra, N: Dimodule):
    if B.scalars is None or N.scalars is None:
        raise RStructureInvalid("both the algebra and the dimodule need an R-structure")
    R = B.scalars.ring
    if N.scalars.ring.table != R.table:
        raise RStructureInvalid("algebra and dimodule use different rings R")
    for name, mats, dim in (("algebra", B.scalars.matrices, B.dim), ("dimodule", N.scalars.matrices, N.dim)):
        unit = ExactMatrix.zeros(dim, dim, B.field)
        for c, m in zip(R.unit, mats):
            if c != 0:
                unit = unit + m.scale(c)
        if not unit.is_identity():
            raise RStructureInvalid(f"unit of R does not act as identity on the {name}")
        for p, q in product(range(R.dim), repeat=2):
            prod_ = ExactMatrix.zeros(dim, dim, B.field)
            for s, k in R._sparse[p][q]:
                prod_ = prod_ + mats[s].scale(k)
            if mats[p] @ mats[q] != prod_:
                raise RStructureInvalid(f"R-action on the {name} is not multiplicative at {(p, q)}")
    SB, SN = B.scalars.matrices, N.scalars.matrices
    for p in range(R.dim):
        for i, j in product(range(B.dim), repeat=2):
            ei, ej = B.basis_vector(i), B.basis_vector(j)
            rij = SB[p] @ B.table[i][j]
            if rij != B.mul(SB[p] @ ei, ej) or rij != B.mul(ei, SB[p] @ ej):
                raise RStructureInvalid(f"B is not an R-algebra at {(p, i, j)}")
        for i, a in product(range(B.dim), range(N.dim)):
            ei, ma = B.basis_vector(i), _unit(N.dim, a, B.field)
            lhs = SN[p] @ N.act_left(ei, ma)
            if lhs != N.act_left(SB[p] @ ei, ma) or lhs != N.act_left(ei, SN[p] @ ma):
                raise RStructureInvalid(f"left action not R-compatible at {(p, i, a)}")
            lhs = SN[p] @ N.act_right(ma, ei)
            if lhs != N.act_right(SN[p] @ ma, ei) or lhs != N.act_right(ma, SB[p] @ ei):
                raise RStructureInvalid(f"right action not R-compatible at {(p, a, i)}")


def _unit(n, a, field):
    z, o = field.zero, field.one
    return tuple(o if k == a else z for k in range(n))


def eta_value(B: Algebra, N: Dimodule, d, p: int) -> tuple:
    """eta(d)(u_p): b -> d(u_p b) - u_p d(b)."""
    SB, SN = B.scalars.matrices[p], N.scalars.matrices[p]
    return _sub(hom_precompose(d, SB, N.dim), hom_postcompose(SN, d, B.dim))


@dataclass
class EtaReport:
    der_k: DerivationSpace
    der_R: DerivationSpace
    cent: CentroidSpace
    image_dim: int
    kernel: LinearSubspace
    values_in_cent: bool
    values_are_derivations: bool

    @property
    def exact(self) -> bool:
        return self.kernel == self.der_R.space

    @property
    def passed(self) -> bool:
        return self.exact and self.values_in_cent and self.values_are_derivations


def _is_der_into_cent(B: Algebra, N: Dimodule, D) -> bool:
    """D[p] = D(u_p) in Hom(B, N); check D(u_p u_q) = D(u_p).u_q + u_p.D(u_q)."""
    R = B.scalars.ring
    SB, SN = B.scalars.matrices, N.scalars.matrices
    for p, q in product(range(R.dim), repeat=2):
        lhs = [0] * len(D[0]) if D else []
        for s, k in R._sparse[p][q]:
            lhs = [x + k * y for x, y in zip(lhs, D[s])]
        rhs = _add(hom_precompose(D[p], SB[q], N.dim), hom_postcompose(SN[p], D[q], B.dim))
        if any(x != y for x, y in zip(lhs, rhs)):
            return False
    return True


def eta_map(B: Algebra, N: Dimodule | None = None) -> EtaReport:
    """The map Der_k(B,N) -> Der_k(R, Cent_k(B,N)) on a basis, with its exactness checks."""
    N = regular_dimodule(B) if N is None else N
    _check_pair(B, N)
    _check_r_structure(B, N)
    R = B.scalars.ring
    der_k = der_space(B, N)
    der_R = der_space(B, N, relative_to="R")
    cent = cent_space(B, N)
    values = [[eta_value(B, N, d, p) for p in range(R.dim)] for d in der_k.space.basis]
    in_cent = all(cent.space.contains(v) for vs in values for v in vs)
    are_der = all(_is_der_into_cent(B, N, vs) for vs in values)
    # kernel of eta in Der-coordinates, pushed back into Hom(B, N)
    hom_dim = B.dim * N.dim
    red = RowReducer(der_k.dim, B.field)
    for p in range(R.dim):
        for k in range(hom_dim):
            red.add({i: vs[p][k] for i, vs in enumerate(values) if vs[p][k] != 0})
    image_dim = red.rank
    coeffs = red.kernel().basis
    kern = [tuple(sum((c * v[k] for c, v in zip(cs, der_k.space.basis) if c != 0), B.field.zero)
                  for k in range(hom_dim)) for cs in coeffs]
    kernel = LinearSubspace.span(kern, hom_dim, B.field)
    return EtaReport(der_k, der_R, cent, image_dim, kernel, in_cent, are_der)


# -- derivations of R into the centroid, and the untwisted section --------------


def der_into_centroid(B: Algebra, N: Dimodule, cent: LinearSubspace) -> list[list[tuple]]:
    """Basis of Der_k(R, Cent_k(B,N)), each element as [D(u_0), D(u_1), ...] in Hom(B,N)."""
    R = B.scalars.ring
    SB, SN = B.scalars.matrices, N.scalars.matrices
    chis = cent.basis
    nc = len(chis)
    hom_dim = B.dim * N.dim
    right = [[hom_precompose(chi, SB[q], N.dim) for q in range(R.dim)] for chi in chis]
    left = [[hom_postcompose(SN[p], chi, B.dim) for p in range(R.dim)] for chi in chis]
    # unknown y[p, c] at index p*nc + c, D(u_p) = sum_c y[p, c] chi_c
    rows = []
    for p, q in product(range(R.dim), repeat=2):
        for k in range(hom_dim):
            row = {}
            for s, coef in R._sparse[p][q]:
                for c in range(nc):
                    v = chis[c][k]
                    if v != 0:
                        row[s * nc + c] = row.get(s * nc + c, 0) + coef * v
            for c in range(nc):
                v = right[c][q][k]
                if v != 0:
                    row[p * nc + c] = row.get(p * nc + c, 0) - v
                v = left[c][p][k]
                if v != 0:
                    row[q * nc + c] = row.get(q * nc + c, 0) - v
            rows.append(row)
    ys = _solve(rows, R.dim * nc, B.field)
    out = []
    for y in ys.basis:
        D = []
        for p in range(R.dim):
            v = [B.field.zero] * hom_dim
            for c in range(nc):
                if y[p * nc + c] != 0:
                    v = [a + y[p * nc + c] * b for a, b in zip(v, chis[c])]
            D.append(tuple(v))
        out.append(D)
    return out


@dataclass
class SectionReport:
    der_k: DerivationSpace
    der_S: DerivationSpace
    der_into_cent: list
    sections: list
    sections_are_derivations: bool
    section_identity: bool
    sum_is_der_k: bool
    intersection_zero: bool
    dim_der_A: int = 0
    dim_cent_A: int = 0
    dim_der_S: int = 0
    dim_S: int = 0
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (self.sections_are_derivations and self.section_identity and self.sum_is_der_k
                and self.intersection_zero)

    @property
    def block_formula_dim(self) -> int:
        """dim Der_k(A) * dim S + dim Cent_k(A) * dim Der_k(S)."""
        return self.dim_der_A * self.dim_S + self.dim_cent_A * self.dim_der_S


def sigma_section_untwisted(A: Algebra, S: CommutativeExtension, M: Dimodule | None = None) -> SectionReport:
    """sigma(d)(a (x) s) = d(s)(a (x) 1_S) on a basis of Der_k(S, Cent_k(A_S, M))."""
    if not is_perfect(A):
        raise NotPerfect(f"{A!r} is not perfect; the section construction needs A = A'")
    AS = base_change_algebra(A, S)
    M = base_change_dimodule(regular_dimodule(A), S, AS) if M is None else M
    _check_pair(AS, M)
    _check_r_structure(AS, M)
    der_k = der_space(AS, M)
    der_S = der_space(AS, M, relative_to="K")
    cent = cent_space(AS, M).space
    Ds = der_into_centroid(AS, M, cent)
    r, dm = S.dim, M.dim
    sections = []
    for D in Ds:
        vec = []
        for a in range(A.dim):
            # e_a (x) 1_S as a vector of A_S
            x = [AS.field.zero] * AS.dim
            for q, c in enumerate(S.unit):
                x[a * r + q] = c
            for p in range(r):
                vec.extend(hom_apply(D[p], AS.dim, dm, x))
        sections.append(tuple(vec))
    are_der = all(is_derivation(AS, M, s) for s in sections)
    ident = all(eta_value(AS, M, s, p) == D[p] for s, D in zip(sections, Ds) for p in range(r))
    sig = LinearSubspace.span(sections, AS.dim * dm, A.field)
    total = der_S.space + sig
    rep = SectionReport(der_k, der_S, Ds, sections, are_der, ident, total == der_k.space,
                        der_S.space.intersect(sig).dim == 0 and sig.dim == len(sections))
    rep.dim_der_A = der_space(A).dim
    rep.dim_cent_A = cent_space(A).dim
    rep.dim_der_S = der_space(S).dim
    rep.dim_S = S.dim
    return rep
