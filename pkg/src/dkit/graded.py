"""Twisted loop algebras as periodic Z-graded algebras, and windowed degree-wise solvers.

For g with an automorphism sigma of order m, the loop algebra
L(g, sigma) = sum_i g_{i mod m} (x) t^{i/m} sits inside A_S = g (x) k[t^{+-1/m}]
and is an algebra over R = k[t^{+-1}].  We use the fine grading
deg(x (x) t^{i/m}) = i, so R lives in degrees divisible by m.  Component i has
the basis of the eigenspace g_{i mod m}; multiplication by t^n is the identity
on coordinates and shifts the degree by n*m.

A homogeneous map of degree delta is a family f_i: B_i -> B_{i+delta}.  On a
finite window [-W, W] the derivation (or centroid) identities become a finite
linear system; boundary degrees are under-constrained, so dimensions are read
off on the central window [-W+G, W-G] with G = m + |delta| and only trusted when
they agree for W and W+2.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Algebra, Automorphism, is_perfect, is_semisimple_lie
from .errors import (MissingRootOfUnity, NotOrderM, NotRLinear, PreconditionFailed,
                     WindowTooSmall)
from .linalg import ExactMatrix, FieldSpec, LinearSubspace, RowReducer, nullspace, primitive_root


@dataclass(eq=False)
class PeriodicGradedAlgebra:
    """B = L(g, sigma): one component basis per residue class, products per residue pair."""

    base: Algebra
    automorphism: Automorphism
    periods: tuple[int, ...]
    zeta: object
    components: tuple[LinearSubspace, ...]
    products: dict = field(repr=False)

    def __post_init__(self):
        if len(self.periods) != 1:
            raise NotImplementedError("only single loops (one period) are supported")

    @property
    def m(self) -> int:
        return self.periods[0]

    @property
    def field(self) -> FieldSpec:
        return self.base.field

    def residue(self, i: int) -> int:
        return i % self.m

    def dim(self, i: int) -> int:
        return self.components[i % self.m].dim

    def basis(self, i: int):
        return self.components[i % self.m].basis

    def to_component(self, i: int, v):
        return self.components[i % self.m].coordinates(v)

    def product(self, i: int, j: int):
        """prod[a][b] = coordinates of x_a y_b in component i + j, for x_a in B_i, y_b in B_j."""
        return self.products[(i % self.m, j % self.m)]

    def mul(self, i: int, x, j: int, y):
        P = self.product(i, j)
        d = self.dim(i + j)
        out = [self.field.zero] * d
        for a, xa in enumerate(x):
            if xa == 0:
                continue
            for b, yb in enumerate(y):
                if yb == 0:
                    continue
                c = xa * yb
                for t, v in enumerate(P[a][b]):
                    if v != 0:
                        out[t] = out[t] + c * v
        return tuple(out)


def _as_automorphism(g: Algebra, sigma) -> Automorphism:
    if isinstance(sigma, Automorphism):
        return sigma
    if isinstance(sigma, str):
        return g.automorphism(sigma)
    return Automorphism("custom", sigma, 0)


def _root(g: Algebra, sigma: Automorphism, m: int):
    one = ExactMatrix.identity(g.dim, g.field)
    if m < 1 or sigma.matrix ** m != one:
        raise NotOrderM(f"sigma^{m} is not the identity")
    zeta = primitive_root(g.field, m)
    if zeta is None:
        raise MissingRootOfUnity(f"{g.field!r} has no primitive {m}-th root of unity")
    return zeta


def _products(g: Algebra, comps) -> dict:
    m = len(comps)
    prods = {}
    for r in range(m):
        for s in range(m):
            tgt = comps[(r + s) % m]
            prods[(r, s)] = [[tgt.coordinates(g.mul(x, y)) for y in comps[s].basis] for x in comps[r].basis]
    return prods


def _build(g, sigma, m, zeta, comps) -> PeriodicGradedAlgebra:
    if sum(c.dim for c in comps) != g.dim:
        raise NotOrderM("eigenspaces do not add up to g")
    try:
        prods = _products(g, comps)
    except ValueError:
        raise NotOrderM("products do not respect the residue grading") from None
    return PeriodicGradedAlgebra(g, sigma, (m,), zeta, tuple(comps), prods)


def loop_from_automorphism(g: Algebra, sigma, m: int) -> PeriodicGradedAlgebra:
    """Components as images of the spectral projectors (1/m) sum_k zeta^{-rk} sigma^k."""
    sigma = _as_automorphism(g, sigma)
    zeta = _root(g, sigma, m)
    powers = [sigma.matrix ** k for k in range(m)]
    comps = []
    for r in range(m):
        P = ExactMatrix.zeros(g.dim, g.dim, g.field)
        for k in range(m):
            P = P + powers[k].scale(zeta ** ((-r * k) % m))
        P = P.scale(Fraction(1, m))
        comps.append(LinearSubspace.span(P.T.rows, g.dim, g.field))
    return _build(g, sigma, m, zeta, comps)


def fixed_point_form(g: Algebra, sigma, m: int) -> PeriodicGradedAlgebra:
    """Components as fixed points of x (x) t^{i/m} -> sigma(x) (x) zeta^{-i} t^{i/m}."""
    sigma = _as_automorphism(g, sigma)
    zeta = _root(g, sigma, m)
    one = ExactMatrix.identity(g.dim, g.field)
    comps = [nullspace(sigma.matrix.scale(zeta ** ((-i) % m)) - one) for i in range(m)]
    return _build(g, sigma, m, zeta, comps)


def constructions_agree(B1: PeriodicGradedAlgebra, B2: PeriodicGradedAlgebra) -> bool:
    return B1.m == B2.m and all(c1 == c2 for c1, c2 in zip(B1.components, B2.components))


# -- windowed maps ------------------------------------------------------------


@dataclass
class WindowedHomogeneousMap:
    """Blocks f_i: source_i -> target_{i+shift} as (dim target x dim source) matrices."""

    shift: int
    window: tuple[int, int]
    blocks: dict

    def __sub__(self, other):
        keys = sorted(set(self.blocks) & set(other.blocks))
        return WindowedHomogeneousMap(self.shift, self.window, {i: self.blocks[i] - other.blocks[i] for i in keys})

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks.values())


class _Layout:
    """Unknown indexing for homogeneous maps B_i -> B_{i+delta}, i in [lo, hi]."""

    def __init__(self, B: PeriodicGradedAlgebra, delta: int, lo: int, hi: int):
        self.B, self.delta, self.lo, self.hi = B, delta, lo, hi
        self.offset = {}
        n = 0
        for i in range(lo, hi + 1):
            self.offset[i] = n
            n += B.dim(i) * B.dim(i + delta)
        self.size = n

    def idx(self, i, a, b):
        return self.offset[i] + a * self.B.dim(i + self.delta) + b

    def block_coords(self, lo, hi):
        out = []
        for i in range(max(lo, self.lo), min(hi, self.hi) + 1):
            out.extend(range(self.offset[i], self.offset[i] + self.B.dim(i) * self.B.dim(i + self.delta)))
        return out

    def to_map(self, v) -> WindowedHomogeneousMap:
        B, d = self.B, self.delta
        blocks = {}
        for i in range(self.lo, self.hi + 1):
            ds, dt = B.dim(i), B.dim(i + d)
            rows = [[v[self.idx(i, a, b)] for a in range(ds)] for b in range(dt)]
            blocks[i] = ExactMatrix.from_rows(rows, ds, B.field)
        return WindowedHomogeneousMap(d, (self.lo, self.hi), blocks)

    def from_map(self, f: WindowedHomogeneousMap) -> tuple:
        z = self.B.field.zero
        v = [z] * self.size
        for i in range(self.lo, self.hi + 1):
            M = f.blocks[i]
            for a in range(M.ncols):
                for b in range(M.nrows):
                    v[self.idx(i, a, b)] = M[b, a]
        return tuple(v)


def _pairs(W: int, delta: int):
    for i in range(-W, W + 1):
        for j in range(-W, W + 1):
            s = i + j
            if -W <= s <= W and -W <= s + delta <= W:
                yield i, j, s


def _window_rows(B: PeriodicGradedAlgebra, lay: _Layout, W: int, centroid: bool):
    d = lay.delta
    for i, j, s in _pairs(W, d):
        P = B.product(i, j)
        Pi = B.product(i + d, j)   # f_i(x) . y
        Pj = B.product(i, j + d)   # x . f_j(y)
        dt = B.dim(s + d)
        di, dj = B.dim(i + d), B.dim(j + d)
        for a in range(B.dim(i)):
            for b in range(B.dim(j)):
                z = P[a][b]
                for t in range(dt):
                    base = {}
                    for c, v in enumerate(z):
                        if v != 0:
                            k = lay.idx(s, c, t)
                            base[k] = base.get(k, 0) + v
                    left = {}
                    for u in range(di):
                        v = Pi[u][b][t]
                        if v != 0:
                            k = lay.idx(i, a, u)
                            left[k] = left.get(k, 0) - v
                    right = {}
                    for u in range(dj):
                        v = Pj[a][u][t]
                        if v != 0:
                            k = lay.idx(j, b, u)
                            right[k] = right.get(k, 0) - v
                    if centroid:
                        r1 = dict(base)
                        for k, v in left.items():
                            r1[k] = r1.get(k, 0) + v
                        r2 = dict(base)
                        for k, v in right.items():
                            r2[k] = r2.get(k, 0) + v
                        yield r1
                        yield r2
                    else:
                        row = base
                        for part in (left, right):
                            for k, v in part.items():
                                row[k] = row.get(k, 0) + v
                        yield row


def window_solution(B: PeriodicGradedAlgebra, delta: int, W: int, centroid: bool = False):
    lay = _Layout(B, delta, -W, W)
    red = RowReducer(lay.size, B.field)
    for row in _window_rows(B, lay, W, centroid):
        red.add(row)
    return lay, red.kernel()


def margin(B: PeriodicGradedAlgebra, delta: int) -> int:
    return B.m + abs(delta)


def _restricted(B, lay, space, W, delta) -> LinearSubspace:
    G = margin(B, delta)
    return space.project(lay.block_coords(-W + G, W - G))


@dataclass
class GradedDerivationReport:
    delta: int
    window: int
    kind: str
    dim_component: int
    raw_dim: int
    restricted_dim: int
    restricted_dim_next: int
    predicted: int | None
    inner_dim: int = 0
    sigma_dim: int = 0
    layout: object = field(default=None, repr=False)
    space: LinearSubspace | None = field(default=None, repr=False)
    restricted: LinearSubspace | None = field(default=None, repr=False)

    @property
    def stabilized(self) -> bool:
        return self.restricted_dim == self.restricted_dim_next

    @property
    def status(self) -> str:
        if not self.stabilized:
            return "inconclusive"
        if self.predicted is not None and self.predicted != self.restricted_dim:
            return "mismatch"
        return "pass"

    @property
    def dim(self) -> int | None:
        """The degree-delta dimension, or None when the window did not stabilize."""
        return self.restricted_dim if self.stabilized else None


def _check_window(B, delta, W):
    if W < margin(B, delta) + 2:
        raise WindowTooSmall(f"window {W} is below the floor m + |delta| + 2 = {margin(B, delta) + 2}")


def _solve_pair(B, delta, W, centroid):
    lay, space = window_solution(B, delta, W, centroid)
    res = _restricted(B, lay, space, W, delta)
    lay2, space2 = window_solution(B, delta, W + 2, centroid)
    res2 = _restricted(B, lay2, space2, W + 2, delta)
    return lay, space, res, res2


def inner_maps(B: PeriodicGradedAlgebra, delta: int, lay: _Layout) -> list[tuple]:
    """ad(x) for x in a basis of B_delta, as window vectors."""
    out = []
    for x in range(B.dim(delta)):
        blocks = {}
        for i in range(lay.lo, lay.hi + 1):
            P = B.product(delta, i)
            rows = [[P[x][b][t] for b in range(B.dim(i))] for t in range(B.dim(i + delta))]
            blocks[i] = ExactMatrix.from_rows(rows, B.dim(i), B.field)
        out.append(lay.from_map(WindowedHomogeneousMap(delta, (lay.lo, lay.hi), blocks)))
    return out


def window_der_solver(B: PeriodicGradedAlgebra, delta: int, W: int) -> GradedDerivationReport:
    _check_window(B, delta, W)
    lay, space, res, res2 = _solve_pair(B, delta, W, centroid=False)
    predicted = None
    if is_semisimple_lie(B.base):
        predicted = B.dim(delta) + (1 if delta % B.m == 0 and B.base.dim else 0)
    G = margin(B, delta)
    coords = lay.block_coords(-W + G, W - G)
    inner = LinearSubspace.span([[v[c] for c in coords] for v in inner_maps(B, delta, lay)], len(coords), B.field)
    rep = GradedDerivationReport(delta, W, "der", B.dim(delta), space.dim, res.dim, res2.dim, predicted,
                                 inner_dim=inner.dim, sigma_dim=res.dim - inner.dim,
                                 layout=lay, space=space, restricted=res)
    return rep


def graded_cent_solver(B: PeriodicGradedAlgebra, delta: int, W: int) -> GradedDerivationReport:
    _check_window(B, delta, W)
    lay, space, res, res2 = _solve_pair(B, delta, W, centroid=True)
    predicted = 1 if delta % B.m == 0 and B.base.dim else 0
    return GradedDerivationReport(delta, W, "cent", B.dim(delta), space.dim, res.dim, res2.dim, predicted,
                                  layout=lay, space=space, restricted=res)


def window_is_derivation(B: PeriodicGradedAlgebra, f: WindowedHomogeneousMap) -> bool:
    """Leibniz rule on every basis pair whose three degrees lie in the map's window."""
    lo, hi = f.window
    d = f.shift
    for i in range(lo, hi + 1):
        for j in range(lo, hi + 1):
            s = i + j
            if not lo <= s <= hi:
                continue
            Fi, Fj, Fs = f.blocks[i], f.blocks[j], f.blocks[s]
            P = B.product(i, j)
            for a in range(B.dim(i)):
                x = _e(B.dim(i), a, B.field)
                fx = Fi @ x
                for b in range(B.dim(j)):
                    y = _e(B.dim(j), b, B.field)
                    lhs = Fs @ P[a][b]
                    rhs = [p + q for p, q in zip(B.mul(i + d, fx, j, y), B.mul(i, x, j + d, Fj @ y))]
                    if any(u != v for u, v in zip(lhs, rhs)):
                        return False
    return True


def _e(n, a, field):
    z, o = field.zero, field.one
    return tuple(o if k == a else z for k in range(n))


# -- the maps epsilon, pi, rho, rho-tilde, sigma --------------------------------


@dataclass(frozen=True)
class SDerivation:
    """A k-derivation of S = k[t^{+-1/m}], given on monomials t^{j/m} (fine exponents)."""

    m: int
    # image of t as a Laurent polynomial in t^{1/m}: {fine exponent: coefficient}
    image_of_t_root: tuple

    def apply(self, j: int) -> dict:
        """Image of t^{j/m} = j * t^{(j-1)/m} * D(t^{1/m})."""
        out = {}
        for e, c in self.image_of_t_root:
            k = j - 1 + e
            out[k] = out.get(k, 0) + Fraction(j) * c
        return {k: v for k, v in out.items() if v != 0}


def epsilon_extend(d_of_t: dict, m: int) -> SDerivation:
    """Unique extension to S of the derivation of R = k[t^{+-1}] with d(t) = ``d_of_t``.

    ``d_of_t`` maps R-exponents to coefficients.  Leibniz on t = (t^{1/m})^m forces
    D(t^{1/m}) = (1/m) t^{1/m - 1} d(t).
    """
    img = {}
    for e, c in d_of_t.items():
        k = 1 - m + m * e   # fine exponent of t^{1/m - 1} t^e
        img[k] = img.get(k, 0) + Fraction(c) / m
    return SDerivation(m, tuple(sorted((k, v) for k, v in img.items() if v != 0)))


def restrict_to_R(D: SDerivation, n: int) -> dict:
    """D(t^n) as {R-exponent: coefficient}; defined when the image is integral."""
    out = D.apply(n * D.m)
    if any(k % D.m for k in out):
        raise ValueError("image of t^n is not in R")
    return {k // D.m: v for k, v in out.items()}


def degree_derivation(m: int, delta: int) -> SDerivation:
    """t^{delta/m} * t d/dt on S, homogeneous of fine degree delta."""
    # t d/dt sends t^{1/m} to (1/m) t^{1/m}
    return SDerivation(m, ((1 + delta, Fraction(1, m)),))


class ReynoldsProjector:
    """pi on A_S = g (x) S: average of x (x) t^{l/m} -> sigma^k(x) zeta^{-lk} (x) t^{l/m} over k."""

    def __init__(self, B: PeriodicGradedAlgebra):
        self.B = B
        g, m = B.base, B.m
        powers = [B.automorphism.matrix ** k for k in range(m)]
        self._mats = []
        for r in range(m):
            P = ExactMatrix.zeros(g.dim, g.dim, g.field)
            for k in range(m):
                P = P + powers[k].scale(B.zeta ** ((-r * k) % m))
            self._mats.append(P.scale(Fraction(1, m)))
        # pi_l expressed in component coordinates: (dim B_l) x (dim g)
        self._to_comp = []
        for r in range(m):
            cols = [B.to_component(r, self._mats[r].column(c)) for c in range(g.dim)]
            self._to_comp.append(ExactMatrix.from_columns(cols, B.dim(r), g.field))

    def matrix(self, l: int) -> ExactMatrix:
        return self._mats[l % self.B.m]

    def to_component(self, l: int) -> ExactMatrix:
        return self._to_comp[l % self.B.m]

    def inclusion(self, i: int) -> ExactMatrix:
        B = self.B
        return ExactMatrix.from_columns(B.basis(i), B.base.dim, B.field)

    def check(self, degrees=range(-2, 3)) -> dict:
        """pi o incl = id, pi^2 = pi, R-linearity, and pi(b.x) = b.pi(x), pi(x.b) = pi(x).b."""
        B, g = self.B, self.B.base
        checks = {"restricts_to_identity": True, "idempotent": True, "r_linear": True,
                  "left_equivariant": True, "right_equivariant": True}
        for l in degrees:
            if not (self.to_component(l) @ self.inclusion(l)).is_identity():
                checks["restricts_to_identity"] = False
            P = self.matrix(l)
            if P @ P != P:
                checks["idempotent"] = False
            if self.matrix(l + B.m) != P:
                checks["r_linear"] = False
        for i in degrees:
            for l in degrees:
                for a, b_vec in enumerate(B.basis(i)):
                    for c in range(g.dim):
                        x = _e(g.dim, c, g.field)
                        pi_x = self.to_component(l) @ x
                        unit = _e(B.dim(i), a, B.field)
                        lhs = self.to_component(i + l) @ g.mul(b_vec, x)
                        if tuple(lhs) != B.mul(i, unit, l, pi_x):
                            checks["left_equivariant"] = False
                        lhs = self.to_component(l + i) @ g.mul(x, b_vec)
                        if tuple(lhs) != B.mul(l, pi_x, i, unit):
                            checks["right_equivariant"] = False
        if not checks["r_linear"]:
            raise NotRLinear("Reynolds projector is not R-linear")
        return checks


def reynolds_projector(B: PeriodicGradedAlgebra) -> ReynoldsProjector:
    return ReynoldsProjector(B)


def sigma_S(D: SDerivation, g: Algebra, lo: int, hi: int, shift: int) -> WindowedHomogeneousMap:
    """sigma_S(D)(x (x) s) = D(s)(x (x) 1) on A_S, for D homogeneous of fine degree ``shift``."""
    blocks = {}
    ident = ExactMatrix.identity(g.dim, g.field)
    for l in range(lo, hi + 1):
        img = D.apply(l)
        coef = img.get(l + shift, 0)
        if set(img) - {l + shift}:
            raise ValueError("derivation is not homogeneous of the given degree")
        blocks[l] = ident.scale(coef)
    return WindowedHomogeneousMap(shift, (lo, hi), blocks)


def rho_restrict(f: WindowedHomogeneousMap, pi: ReynoldsProjector) -> WindowedHomogeneousMap:
    """rho(f) = pi o f restricted to B, blockwise."""
    d = f.shift
    blocks = {i: pi.to_component(i + d) @ f.blocks[i] @ pi.inclusion(i) for i in f.blocks}
    return WindowedHomogeneousMap(d, f.window, blocks)


def rho_double(D: SDerivation, n: int, pi: ReynoldsProjector, lo: int, hi: int) -> WindowedHomogeneousMap:
    """rho-tilde(D)(t^n) = rho(multiplication by D(t^n)) on B."""
    g = pi.B.base
    img = D.apply(n * D.m)
    if len(img) > 1:
        raise ValueError("expected a homogeneous derivation")
    (e, c), = img.items() if img else ((n * D.m, 0),)
    mult = WindowedHomogeneousMap(e, (lo, hi), {l: ExactMatrix.identity(g.dim, g.field).scale(c)
                                               for l in range(lo, hi + 1)})
    return rho_restrict(mult, pi)


def eta_B(f: WindowedHomogeneousMap, n: int, B: PeriodicGradedAlgebra) -> WindowedHomogeneousMap:
    """eta(f)(t^n): b -> f(t^n b) - t^n f(b); t^n is the identity on coordinates."""
    lo, hi = f.window
    step = n * B.m
    blocks = {i: f.blocks[i + step] - f.blocks[i] for i in range(lo, hi + 1) if lo <= i + step <= hi}
    return WindowedHomogeneousMap(f.shift + step, f.window, blocks)


def sigma_part(B: PeriodicGradedAlgebra, delta: int, lo: int, hi: int, pi: ReynoldsProjector):
    """rho o sigma_S o epsilon applied to t^{delta/m} t d/dt (only for delta = 0 mod m)."""
    if delta % B.m:
        return None
    n = delta // B.m
    D = epsilon_extend({n + 1: 1}, B.m)
    return rho_restrict(sigma_S(D, B.base, lo, hi, delta), pi)


# -- the verifier -------------------------------------------------------------


@dataclass
class DeltaResult:
    delta: int
    dim_component: int
    der: GradedDerivationReport
    cent: GradedDerivationReport
    h1: int | None
    checks: dict

    @property
    def status(self) -> str:
        if "inconclusive" in (self.der.status, self.cent.status):
            return "inconclusive"
        if self.der.status != "pass" or self.cent.status != "pass" or not all(self.checks.values()):
            return "fail"
        return "pass"


@dataclass
class GradedVerification:
    base: str
    automorphism: str
    m: int
    window: int
    preconditions: dict
    results: list

    @property
    def status(self) -> str:
        st = [r.status for r in self.results]
        if "fail" in st or not all(self.preconditions.values()):
            return "fail"
        if "inconclusive" in st:
            return "inconclusive"
        return "pass"


def verify_delta(B: PeriodicGradedAlgebra, delta: int, W: int) -> DeltaResult:
    pi = reynolds_projector(B)
    der = window_der_solver(B, delta, W)
    cent = graded_cent_solver(B, delta, W)
    lay = der.layout
    checks = {}
    # explicit spanning set: inner part plus the lifted degree derivation
    span = inner_maps(B, delta, lay)
    sp = sigma_part(B, delta, -W, W, pi)
    if sp is not None:
        checks["sigma_part_is_derivation"] = window_is_derivation(B, sp)
        span.append(lay.from_map(sp))
    checks["spanning_set_in_solutions"] = all(der.space.contains(v) for v in span)
    G = margin(B, delta)
    coords = lay.block_coords(-W + G, W - G)
    span_res = LinearSubspace.span([[v[c] for c in coords] for v in span], len(coords), B.field)
    checks["spanning_set_spans"] = span_res == der.restricted
    # eta_B o rho o sigma_S = rho-tilde on the degree-delta derivation of S
    D = degree_derivation(B.m, delta)
    lifted = rho_restrict(sigma_S(D, B.base, -W, W, delta), pi)
    checks["rho_preserves_derivations"] = window_is_derivation(B, lifted)
    ok = True
    for n in (-1, 1, 2):
        lhs = eta_B(lifted, n, B)
        rhs = rho_double(D, n, pi, -W, W)
        for i, blk in lhs.blocks.items():
            if blk != rhs.blocks[i]:
                ok = False
    checks["eta_rho_sigma_equals_rho_tilde"] = ok
    h1 = der.restricted_dim - der.inner_dim if der.stabilized else None
    if h1 is not None:
        checks["h1_matches_der_R"] = h1 == (1 if delta % B.m == 0 else 0)
    return DeltaResult(delta, B.dim(delta), der, cent, h1, checks)


def verify_main_theorem_graded(g: Algebra, sigma, m: int, deltas, W: int,
                               parallel: bool = False) -> GradedVerification:
    sigma = _as_automorphism(g, sigma)
    if not is_semisimple_lie(g):
        raise PreconditionFailed("(i) semisimple g", f"{g!r} is not a semisimple Lie algebra")
    if not is_perfect(g):
        raise PreconditionFailed("(i) A perfect")
    B = loop_from_automorphism(g, sigma, m)
    pre = {"g_semisimple": True, "g_perfect": True, "sigma_order": True}
    pre.update({f"pi_{k}": v for k, v in reynolds_projector(B).check().items()})
    deltas = list(deltas)
    if parallel and len(deltas) > 1:
        with ProcessPoolExecutor() as ex:
            results = list(ex.map(verify_delta, [B] * len(deltas), deltas, [W] * len(deltas)))
    else:
        results = [verify_delta(B, d, W) for d in deltas]
    results.sort(key=lambda r: r.delta)
    return GradedVerification(g.name or "?", sigma.name, m, W, pre, results)
