"""Finite Galois descent: twisted forms as fixed points of a cocycle-twisted action.

Conventions.  S = Q[x]/(f) with basis 1, x, ..., and A_S = A (x) S with basis
e_i (x) u_p at index i*dim S + p (as in :func:`base_change_algebra`).  Each
gamma in Gamma is a Q-matrix on S (column p = gamma(u_p)) and acts on A_S by
I (x) gamma.  A cocycle assigns to gamma an S-linear automorphism z_gamma of A_S;
the twisted action is x -> z_gamma(gamma x), and the form B is its fixed space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .algebra import (Algebra, CommutativeExtension, Dimodule, base_change_algebra,
                      base_change_dimodule, check_automorphism, dual_dimodule, is_central,
                      is_perfect, regular_dimodule)
from .errors import (CocycleInvalid, InvalidInput, NotAForm, NotAutomorphism, NotSeparable,
                     PreconditionFailed)
from .linalg import QQ, ExactMatrix, FieldSpec, LinearSubspace, inverse, nullspace, rank
from .solvers import (cent_space, der_space, hom_apply, hh1_assoc, h1_lie, is_centroidal,
                      is_derivation)


def _kron_identity(n: int, g: ExactMatrix) -> ExactMatrix:
    """I_n (x) g on the index i*r + p."""
    r = g.nrows
    rows = [[0] * (n * r) for _ in range(n * r)]
    for a in range(n):
        for p in range(r):
            for q in range(r):
                rows[a * r + p][a * r + q] = g[p, q]
    return ExactMatrix.from_rows(rows, n * r)


def _kron_right(M: ExactMatrix, r: int) -> ExactMatrix:
    """M (x) I_r on the index i*r + p."""
    n = M.nrows
    rows = [[0] * (n * r) for _ in range(n * r)]
    for i in range(n):
        for j in range(M.ncols):
            for p in range(r):
                rows[i * r + p][j * r + p] = M[i, j]
    return ExactMatrix.from_rows(rows, M.ncols * r)


@dataclass(eq=False)
class GaloisSetup:
    """A finite Galois extension S/Q with its group given by explicit matrices."""

    S: CommutativeExtension
    gamma: dict
    identity: str = "id"
    table: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        S = self.S
        mod = getattr(S, "modulus", None)
        if mod is None:
            raise InvalidInput("S must be given by a modulus")
        if not FieldSpec.quotient(mod).separable:
            raise NotSeparable(f"modulus {list(mod)} is not separable")
        r = S.dim
        for name, g in self.gamma.items():
            if g.shape != (r, r):
                raise InvalidInput(f"Gamma element {name!r} has shape {g.shape}, expected {(r, r)}")
            try:
                check_automorphism(S, g)
            except NotAutomorphism as e:
                raise InvalidInput(f"Gamma element {name!r} is not a field automorphism: {e}") from None
            if tuple(g @ S.unit) != S.unit:
                raise InvalidInput(f"Gamma element {name!r} does not fix 1")
        if self.identity not in self.gamma or not self.gamma[self.identity].is_identity():
            raise InvalidInput("Gamma must contain the identity under its declared name")
        for a, b in product(self.gamma, repeat=2):
            c = self._lookup(self.gamma[a] @ self.gamma[b])
            if c is None:
                raise InvalidInput(f"Gamma is not closed: {a} o {b}")
            self.table[(a, b)] = c
        if len(self.gamma) != r:
            raise InvalidInput(f"|Gamma| = {len(self.gamma)} but dim S = {r}")
        rows = []
        one = ExactMatrix.identity(r)
        for g in self.gamma.values():
            rows.extend((g - one).rows)
        if nullspace(ExactMatrix.from_rows(rows, r)).dim != 1:
            raise InvalidInput("fixed field of Gamma is larger than Q")

    def _lookup(self, M):
        return next((k for k, g in self.gamma.items() if g == M), None)

    @property
    def order(self) -> int:
        return len(self.gamma)

    def on(self, n: int) -> dict:
        """Action of Gamma on V (x) S for dim V = n."""
        return {k: _kron_identity(n, g) for k, g in self.gamma.items()}

    def average(self) -> ExactMatrix:
        """(1/|Gamma|) sum of gamma on S: the projection onto Q = S^Gamma."""
        r = self.S.dim
        P = ExactMatrix.zeros(r, r)
        for g in self.gamma.values():
            P = P + g
        return P.scale(Fraction(1, self.order))


def gauss_setup() -> GaloisSetup:
    S = CommutativeExtension.from_modulus([1, 0, 1], name="gauss")
    return GaloisSetup(S, {"id": ExactMatrix.identity(2), "conj": ExactMatrix.from_rows([[1, 0], [0, -1]])})


def cyclotomic_setup(m: int) -> GaloisSetup:
    """Q(zeta_m) with Gamma = {zeta -> zeta^k : gcd(k, m) = 1}."""
    from math import gcd
    from .linalg import cyclotomic_field
    F = cyclotomic_field(m)
    if F.is_rational:
        raise InvalidInput("Q(zeta_m) = Q for m <= 2")
    S = CommutativeExtension.from_modulus(F.modulus, name=f"cyclotomic{m}")
    r = F.degree
    z = F.gen()
    gamma = {}
    for k in range(1, m):
        if gcd(k, m) == 1:
            cols = [list((z ** (k * p)).c) + [0] * (r - len((z ** (k * p)).c)) for p in range(r)]
            gamma["id" if k == 1 else f"zeta^{k}"] = ExactMatrix.from_columns(cols, r)
    return GaloisSetup(S, gamma)


@dataclass(eq=False)
class Cocycle:
    """z_gamma as matrices on A_S, validated against a setup."""

    A: Algebra
    setup: GaloisSetup
    z: dict
    AS: Algebra = field(init=False, repr=False)

    def __post_init__(self):
        A, st = self.A, self.setup
        self.AS = base_change_algebra(A, st.S)
        N = self.AS.dim
        if set(self.z) != set(st.gamma):
            raise CocycleInvalid("cocycle must be indexed by Gamma", None)
        for k, M in self.z.items():
            if M.shape != (N, N):
                raise CocycleInvalid(f"z_{k} has shape {M.shape}, expected {(N, N)}", (k,))
            for s in self.AS.scalars.matrices:
                if M @ s != s @ M:
                    raise CocycleInvalid(f"z_{k} is not S-linear", (k,))
            try:
                check_automorphism(self.AS, M)
            except NotAutomorphism as e:
                raise CocycleInvalid(f"z_{k} is not an algebra automorphism: {e}", (k,)) from None
        if not self.z[st.identity].is_identity():
            raise CocycleInvalid("z at the identity is not the identity", (st.identity,))
        act = st.on(A.dim)
        for g, t in product(st.gamma, repeat=2):
            gt = st.table[(g, t)]
            conj = act[g] @ self.z[t] @ inverse(act[g])
            if self.z[gt] != self.z[g] @ conj:
                raise CocycleInvalid(f"cocycle condition fails at ({g}, {t})", (g, t))

    def twisted_action(self) -> dict:
        act = self.setup.on(self.A.dim)
        return {k: self.z[k] @ act[k] for k in self.z}


def trivial_cocycle(A: Algebra, setup: GaloisSetup) -> Cocycle:
    N = A.dim * setup.S.dim
    return Cocycle(A, setup, {k: ExactMatrix.identity(N) for k in setup.gamma})


@dataclass(eq=False)
class TwistedForm:
    B: Algebra
    embedding: ExactMatrix          # columns: basis of B inside A_S
    space: LinearSubspace
    cocycle: Cocycle

    @property
    def AS(self) -> Algebra:
        return self.cocycle.AS

    def mu(self) -> ExactMatrix:
        """b (x) u_p -> u_p . iota(b), from B_S (index a*r + p) to A_S."""
        S = self.cocycle.setup.S
        r = S.dim
        cols = []
        for a in range(self.B.dim):
            b = self.embedding.column(a)
            for p in range(r):
                cols.append(self.AS.scalars.matrices[p] @ b)
        return ExactMatrix.from_columns(cols, self.AS.dim)


def twisted_form(A: Algebra, setup: GaloisSetup, z) -> TwistedForm:
    coc = z if isinstance(z, Cocycle) else Cocycle(A, setup, z)
    AS = coc.AS
    N = AS.dim
    one = ExactMatrix.identity(N)
    rows = []
    for M in coc.twisted_action().values():
        rows.extend((M - one).rows)
    V = nullspace(ExactMatrix.from_rows(rows, N))
    if V.dim != A.dim:
        raise NotAForm(f"fixed space has dim {V.dim}, expected {A.dim}")
    n = V.dim
    table = []
    for x in V.basis:
        row = []
        for y in V.basis:
            p = AS.mul(x, y)
            if not V.contains(p):
                raise NotAForm("fixed space is not closed under multiplication")
            row.append(V.coordinates(p))
        table.append(row)
    B = Algebra(QQ, n, table, [f"b{i}" for i in range(n)], A.flavor,
                name=f"form({A.name})" if A.name else None)
    emb = ExactMatrix.from_columns(V.basis, N)
    form = TwistedForm(B, emb, V, coc)
    if rank(form.mu()) != N:
        raise NotAForm("S-span of the fixed space is not all of A_S")
    return form


# -- the quaternion example ---------------------------------------------------


def _ad_matrix(mats, J, Jinv):
    from .catalog import _MatrixBasis, _matmul
    mb = _MatrixBasis(mats)
    return mb.induced(lambda X: _matmul(_matmul(J, X), Jinv))


def quaternion_case(base: str = "M2") -> tuple[Algebra, GaloisSetup, Cocycle]:
    """A in {M2, sl2} over Q(i) with z_conj = Ad(J) (x) id, J = ((0, 1), (-1, 0))."""
    from .catalog import _sl_basis, catalog_get
    A = catalog_get(base)
    st = gauss_setup()
    J = ((0, 1), (-1, 0))
    Jinv = ((0, -1), (1, 0))
    if base == "M2":
        mats = [tuple(tuple(1 if (r, c) == (i, j) else 0 for c in range(2)) for r in range(2))
                for i in range(2) for j in range(2)]
    elif base == "sl2":
        mats = _sl_basis(2)[0]
    else:
        raise InvalidInput("quaternion case is defined for M2 and sl2")
    ad = _ad_matrix(mats, J, Jinv)
    N = A.dim * st.S.dim
    z = {"id": ExactMatrix.identity(N), "conj": _kron_right(ad, st.S.dim)}
    return A, st, Cocycle(A, st, z)


DESCENT_CASES = {
    "quaternion": lambda: quaternion_case("M2"),
    "sl2-compact": lambda: quaternion_case("sl2"),
    "trivial": lambda: (lambda A, st: (A, st, trivial_cocycle(A, st)))(*_m2_gauss()),
}


def _m2_gauss():
    from .catalog import catalog_get
    return catalog_get("M2"), gauss_setup()


def structure_matches(B: Algebra, C: Algebra, images) -> bool:
    """Whether e_i -> images[i] (vectors of C) preserves all basis products of B."""
    for i, j in product(range(B.dim), repeat=2):
        lhs = [0] * C.dim
        for l, c in B._sparse[i][j]:
            lhs = [u + c * v for u, v in zip(lhs, images[l])]
        if tuple(lhs) != C.mul(images[i], images[j]):
            return False
    return True


def find_quaternion_isomorphism(B: Algebra, a=-1, b=-1, coeffs=(-1, 0, 1)):
    """Search u, v in B with small coordinates, u^2 = a, v^2 = b, uv = -vu.

    Returns the images of 1, i, j, k of quaternion(a, b) in B, or None.
    """
    from .catalog import quaternion
    H = quaternion(a, b)
    unit = _unit_of(B)
    if unit is None:
        return None
    cands = [tuple(Fraction(c) for c in v) for v in product(coeffs, repeat=B.dim) if any(v)]
    sq_a = [u for u in cands if B.mul(u, u) == tuple(Fraction(a) * x for x in unit)]
    sq_b = [v for v in cands if B.mul(v, v) == tuple(Fraction(b) * x for x in unit)]
    for u in sq_a:
        for v in sq_b:
            uv = B.mul(u, v)
            if uv != tuple(-x for x in B.mul(v, u)):
                continue
            images = [unit, u, v, uv]
            if rank(ExactMatrix.from_columns(images, B.dim)) == 4 and structure_matches(H, B, images):
                return images
    return None


def _unit_of(B: Algebra):
    """Two-sided identity, solved linearly; None if absent."""
    n = B.dim
    rows, rhs = [], []
    for j in range(n):
        L = B.right_mult(B.basis_vector(j))   # u -> u e_j
        R = B.left_mult(B.basis_vector(j))    # u -> e_j u
        for M in (L, R):
            for t in range(n):
                rows.append(list(M.rows[t]))
                rhs.append(Fraction(1) if t == j else Fraction(0))
    from .linalg import solve
    u = solve(ExactMatrix.from_rows(rows, n), rhs)
    return tuple(u) if u is not None else None


# -- averaging and the finite-dimensional verifier ----------------------------


@dataclass
class Projector:
    matrix: ExactMatrix
    image: LinearSubspace

    @property
    def idempotent(self) -> bool:
        return self.matrix @ self.matrix == self.matrix


def averaging_pi(action: dict) -> Projector:
    """(1/|Gamma|) sum of the given action matrices."""
    mats = list(action.values())
    n = mats[0].nrows
    P = ExactMatrix.zeros(n, n)
    for M in mats:
        P = P + M
    P = P.scale(Fraction(1, len(mats)))
    return Projector(P, LinearSubspace.span(P.T.rows, n))


@dataclass
class DescentReport:
    algebra: str
    module: str
    dims: dict
    checks: dict

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def _rho(f, dim_bs: int, dim_ns: int, r: int, avg_row, dim_b: int, dim_n: int):
    """pi o f o iota as a Hom(B, N) vector: iota(b) = b (x) 1, pi(n (x) u_p) = avg(u_p) n."""
    out = []
    for a in range(dim_b):
        x = [0] * dim_bs
        x[a * r] = 1
        y = hom_apply(f, dim_bs, dim_ns, x)
        for m in range(dim_n):
            out.append(sum(y[m * r + p] * avg_row[p] for p in range(r)))
    return tuple(out)


def verify_main_theorem_fd(A: Algebra, setup: GaloisSetup, z, module: str = "regular") -> DescentReport:
    if not is_perfect(A):
        raise PreconditionFailed("(i) A perfect", f"{A!r} is not perfect")
    if not is_central(A):
        raise PreconditionFailed("(ii) A central", f"{A!r} is not central")
    form = twisted_form(A, setup, z)
    B = form.B
    S = setup.S
    r = S.dim
    if module == "regular":
        N = regular_dimodule(B)
    elif module == "dual":
        N = dual_dimodule(B)
    else:
        raise InvalidInput(f"unknown module {module!r}")
    BS = base_change_algebra(B, S)
    NS = base_change_dimodule(N, S, BS)
    avg = setup.average()
    avg_row = avg.rows[0]   # coefficient of 1 in avg(u_p)
    checks, dims = {}, {}

    mu = form.mu()
    images = [mu.column(k) for k in range(BS.dim)]
    checks["mu_is_algebra_isomorphism"] = rank(mu) == BS.dim and structure_matches(BS, form.AS, images)
    pi_twisted = averaging_pi(form.cocycle.twisted_action())
    checks["pi_idempotent"] = pi_twisted.idempotent
    checks["pi_image_is_B"] = pi_twisted.image == form.space
    Pi = _kron_identity(B.dim, avg)
    checks["pi_transport"] = mu @ Pi @ inverse(mu) == pi_twisted.matrix

    # pi(b.m) = b.pi(m), pi(m.b) = pi(m).b on basis pairs, with N_S = N (x) S
    PiN = _kron_identity(N.dim, avg)
    ok_l = ok_r = True
    for i in range(B.dim):
        bi = [0] * BS.dim
        bi[i * r] = 1
        for c in range(NS.dim):
            m = [0] * NS.dim
            m[c] = 1
            if tuple(PiN @ NS.act_left(bi, m)) != NS.act_left(bi, PiN @ m):
                ok_l = False
            if tuple(PiN @ NS.act_right(m, bi)) != NS.act_right(PiN @ m, bi):
                ok_r = False
    checks["pi_left_equivariant"] = ok_l
    checks["pi_right_equivariant"] = ok_r

    derS = der_space(BS, NS)
    centS = cent_space(BS, NS)
    der = der_space(B, N)
    cent = cent_space(B, N)
    rho_der = [_rho(f, BS.dim, NS.dim, r, avg_row, B.dim, N.dim) for f in derS.space.basis]
    rho_cent = [_rho(f, BS.dim, NS.dim, r, avg_row, B.dim, N.dim) for f in centS.space.basis]
    checks["rho_preserves_der"] = all(is_derivation(B, N, f) for f in rho_der)
    checks["rho_preserves_cent"] = all(is_centroidal(B, N, f) for f in rho_cent)
    checks["rho_onto_der"] = LinearSubspace.span(rho_der, B.dim * N.dim) == der.space
    checks["rho_onto_cent"] = LinearSubspace.span(rho_cent, B.dim * N.dim) == cent.space
    dims["der_S"] = derS.dim
    dims["der"] = der.dim
    dims["der_R"] = der_space(B, N, relative_to="R").dim if B.scalars else der.dim
    dims["cent"] = cent.dim
    # R = Q: a derivation of Q into any Q-space kills 1, so Der_k(R, Cent) = 0
    k = CommutativeExtension.trivial()
    cent_mod = Dimodule(k, cent.dim, [[_e(cent.dim, a) for a in range(cent.dim)]],
                        [[_e(cent.dim, a)] for a in range(cent.dim)], name="Cent")
    dims["der_R_into_cent"] = der_space(k, cent_mod).dim
    checks["collapse"] = dims["der_R"] == dims["der"] and dims["der_R_into_cent"] == 0
    if B.flavor == "associative":
        h = hh1_assoc(B, N)
        dims["inner"] = h.inner.dim
        dims["h1"] = h.dim
        if module == "regular":
            zB = cent_space(B, N).dim   # Z(B) = Cent(B) for unital B
            dims["center"] = zB
            checks["hh1_zero"] = h.dim == 0
    elif B.flavor == "lie":
        h = h1_lie(B, N)
        dims["inner"] = h.inner.dim
        dims["h1"] = h.dim
        if module == "regular":
            checks["h1_zero"] = h.dim == 0
    dims["dim_B"] = B.dim
    checks["form_dimension"] = B.dim == A.dim
    checks["form_perfect"] = is_perfect(B)
    if module == "regular":
        checks["form_central"] = cent.dim == 1
    return DescentReport(A.name or "?", module, dims, checks)


def _e(n, a):
    return tuple(1 if k == a else 0 for k in range(n))
