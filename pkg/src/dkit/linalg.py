"""Exact scalars over Q and Q[x]/(f), dense exact matrices, and subspace arithmetic.

Scalars over Q are plain :class:`fractions.Fraction` values.  Scalars of a
quotient ring Q[x]/(f) are :class:`QuotientElement` instances; both support the
ordinary arithmetic operators, so the elimination routines below are written
once against the operator protocol.

Coefficient lists of polynomials are stored lowest degree first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Sequence

from .errors import AmbientMismatch, NotInvertible, ParseError

# -- polynomial helpers (lists of Fractions, low degree first) ---------------


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_divmod(a, b):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    r = [Fraction(x) for x in a]
    lead = Fraction(b[-1])
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        c = r[-1] / lead
        q[shift] = c
        for i, bi in enumerate(b):
            r[i + shift] -= c * bi
        r = _trim(r)
    return _trim(q), r


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([Fraction(x) - y for x, y in zip(a, b)])


def poly_xgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g and g monic (or zero)."""
    r0, r1 = _trim(a), _trim(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1))
    if r0:
        lead = r0[-1]
        r0 = [x / lead for x in r0]
        s0 = [x / lead for x in s0]
        t0 = [x / lead for x in t0]
    return r0, s0, t0


def poly_derivative(p):
    return _trim([Fraction(i) * c for i, c in enumerate(p)][1:])


def cyclotomic_poly(m: int) -> list[Fraction]:
    """Coefficients of the m-th cyclotomic polynomial, by dividing out proper divisors."""
    if m < 1:
        raise ValueError("m must be positive")
    p = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    for d in range(1, m):
        if m % d == 0:
            p, r = poly_divmod(p, cyclotomic_poly(d))
            assert not r
    return p


# -- fields -------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """Q (``kind="rationals"``) or Q[x]/(f) for monic ``f`` (``kind="quotient"``)."""

    kind: str = "rationals"
    modulus: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.kind == "rationals":
            if self.modulus is not None:
                raise ValueError("rationals carry no modulus")
        elif self.kind == "quotient":
            if self.modulus is None:
                raise ValueError("quotient field needs a modulus")
            mod = tuple(Fraction(c) for c in self.modulus)
            if len(_trim(mod)) != len(mod) or len(mod) < 2:
                raise ValueError("modulus must have degree >= 1 and no trailing zeros")
            if mod[-1] != 1:
                raise ValueError("modulus must be monic")
            object.__setattr__(self, "modulus", mod)
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def quotient(cls, coeffs: Iterable) -> "FieldSpec":
        return cls("quotient", tuple(Fraction(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return 1 if self.kind == "rationals" else len(self.modulus) - 1

    @cached_property
    def separable(self) -> bool:
        if self.kind == "rationals":
            return True
        g, _, _ = poly_xgcd(self.modulus, poly_derivative(self.modulus))
        return len(g) == 1

    @property
    def is_rational(self) -> bool:
        return self.kind == "rationals"

    def element(self, x):
        if self.kind == "rationals":
            if isinstance(x, Fraction):
                return x
            if isinstance(x, QuotientElement):
                raise TypeError("cannot coerce a quotient element into Q")
            return Fraction(x)
        if isinstance(x, QuotientElement):
            if x.spec is not self and x.spec != self:
                raise TypeError("element belongs to another field")
            return x
        if isinstance(x, (list, tuple)):
            return QuotientElement(x, self)
        return QuotientElement((x,), self)

    @property
    def zero(self):
        return self.element(0)

    @property
    def one(self):
        return self.element(1)

    def gen(self):
        """The class of x in Q[x]/(f)."""
        if self.kind == "rationals":
            raise ValueError("Q has no generator")
        return QuotientElement((0, 1), self)

    # serialization: "p/q" strings for Q, coefficient lists otherwise
    def parse(self, s):
        try:
            if self.kind == "rationals":
                if isinstance(s, (list, tuple)):
                    raise ParseError(f"expected a rational literal, got list {s!r}")
                return Fraction(s)
            if isinstance(s, (list, tuple)):
                return QuotientElement([Fraction(c) for c in s], self)
            return QuotientElement((Fraction(s),), self)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad scalar literal {s!r}: {exc}") from None

    def format(self, x):
        x = self.element(x)
        if self.kind == "rationals":
            return str(x)
        if all(c == 0 for c in x.c[1:]):
            return str(x.c[0])
        return [str(c) for c in x.c]

    def to_json(self):
        if self.kind == "rationals":
            return "Q"
        return {"modulus": [str(c) for c in self.modulus]}

    @classmethod
    def from_json(cls, obj) -> "FieldSpec":
        if obj in (None, "Q", "QQ", "rationals"):
            return QQ
        if isinstance(obj, dict) and "modulus" in obj:
            try:
                return cls.quotient(Fraction(c) for c in obj["modulus"])
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad modulus: {exc}") from None
        if isinstance(obj, str) and obj.startswith("cyclotomic"):
            try:
                m = int(obj[len("cyclotomic"):].strip("()_ "))
            except ValueError:
                raise ParseError(f"bad field {obj!r}") from None
            return cyclotomic_field(m)
        raise ParseError(f"unrecognized field specification {obj!r}")

    def __repr__(self):
        if self.kind == "rationals":
            return "QQ"
        return f"FieldSpec.quotient({[str(c) for c in self.modulus]})"


QQ = FieldSpec()


def cyclotomic_field(m: int) -> FieldSpec:
    """Q(zeta_m); for m <= 2 the root of unity is rational and Q is returned."""
    if m <= 2:
        return QQ
    return FieldSpec.quotient(cyclotomic_poly(m))


class QuotientElement:
    """Element of Q[x]/(f), stored as its reduced representative."""

    __slots__ = ("c", "spec")

    def __init__(self, coeffs, spec: FieldSpec):
        self.spec = spec
        mod = spec.modulus
        n = len(mod) - 1
        c = [Fraction(x) for x in coeffs]
        if len(c) > n:
            # reduce by the monic modulus
            for k in range(len(c) - 1, n - 1, -1):
                t = c[k]
                if t:
                    for i in range(n):
                        c[k - n + i] -= t * mod[i]
            c = c[:n]
        elif len(c) < n:
            c += [Fraction(0)] * (n - len(c))
        self.c = tuple(c)

    def _lift(self, other):
        if isinstance(other, QuotientElement):
            return other.c
        if isinstance(other, (int, Fraction)):
            return (Fraction(other),) + (Fraction(0),) * (len(self.c) - 1)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuotientElement([a + b for a, b in zip(self.c, o)], self.spec)

    __radd__ = __add__

    def __neg__(self):
        return QuotientElement([-a for a in self.c], self.spec)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuotientElement([a - b for a, b in zip(self.c, o)], self.spec)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuotientElement([a * other for a in self.c], self.spec)
        if not isinstance(other, QuotientElement):
            return NotImplemented
        return QuotientElement(poly_mul(self.c, other.c) or [0], self.spec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return QuotientElement([a / other for a in self.c], self.spec)
        if not isinstance(other, QuotientElement):
            return NotImplemented
        return self * invert(other, self.spec)

    def __rtruediv__(self, other):
        return invert(self, self.spec) * other

    def __pow__(self, n: int):
        if n < 0:
            return invert(self, self.spec) ** (-n)
        out = QuotientElement((1,), self.spec)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QuotientElement):
            return self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c[0] == other and not any(self.c[1:])
        return NotImplemented

    def __hash__(self):
        if not any(self.c[1:]):
            return hash(self.c[0])
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        terms = []
        for i, a in enumerate(self.c):
            if a:
                terms.append(str(a) if i == 0 else f"{a}*x^{i}")
        return "(" + (" + ".join(terms) or "0") + ")"


def invert(x, spec: FieldSpec = QQ):
    """Multiplicative inverse; extended gcd against the modulus for quotient rings."""
    x = spec.element(x)
    if x == 0:
        raise ZeroDivisionError("cannot invert zero")
    if spec.is_rational:
        return 1 / x
    g, s, _ = poly_xgcd(list(x.c), list(spec.modulus))
    if len(g) != 1:
        raise NotInvertible(f"{x!r} shares a factor with the modulus; Q[x]/(f) is not a field here")
    return QuotientElement(s or [0], spec)


def _multiplicative_order_is(z, m: int, one) -> bool:
    if z ** m != one:
        return False
    for p in range(2, m + 1):
        if m % p == 0 and all(p % q for q in range(2, p)):
            if z ** (m // p) == one:
                return False
    return True


def primitive_root(spec: FieldSpec, m: int):
    """A primitive m-th root of unity in ``spec``, or None when none is found."""
    if m == 1:
        return spec.one
    if m == 2:
        return -spec.one
    if spec.is_rational:
        return None
    x = spec.gen()
    one = spec.one
    for j in range(1, 2 * m + 1):
        try:
            z = x ** j
        except NotInvertible:
            return None
        for cand in (z, -z):
            if _multiplicative_order_is(cand, m, one):
                return cand
    return None


# -- matrices -----------------------------------------------------------------


@dataclass(frozen=True)
class ExactMatrix:
    """Dense row-major matrix of exact scalars."""

    rows: tuple[tuple, ...]
    ncols: int

    def __post_init__(self):
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None, field: FieldSpec = QQ):
        rows = tuple(tuple(field.element(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        return cls(rows, ncols)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int, field: FieldSpec = QQ):
        return cls.from_rows([[c[i] for c in cols] for i in range(nrows)], len(cols), field)

    @classmethod
    def zeros(cls, n: int, m: int, field: FieldSpec = QQ):
        z = field.zero
        return cls(tuple((z,) * m for _ in range(n)), m)

    @classmethod
    def identity(cls, n: int, field: FieldSpec = QQ):
        z, o = field.zero, field.one
        return cls(tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(tuple(zip(*self.rows)) if self.rows else tuple(() for _ in range(self.ncols)),
                           len(self.rows))

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.T.rows
            return ExactMatrix(tuple(tuple(_dot(r, c) for c in cols) for r in self.rows), other.ncols)
        v = tuple(other)
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(_dot(r, v) for r in self.rows)

    def __add__(self, other: "ExactMatrix"):
        return ExactMatrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
                           self.ncols)

    def __sub__(self, other: "ExactMatrix"):
        return ExactMatrix(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
                           self.ncols)

    def scale(self, c) -> "ExactMatrix":
        return ExactMatrix(tuple(tuple(c * a for a in r) for r in self.rows), self.ncols)

    def __pow__(self, n: int) -> "ExactMatrix":
        if self.nrows != self.ncols or n < 0:
            raise ValueError("power needs a square matrix and n >= 0")
        one = next((x for r in self.rows for x in r), Fraction(0))
        field = one.spec if isinstance(one, QuotientElement) else QQ
        out = ExactMatrix.identity(self.nrows, field)
        base = self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and all(
            (x == 1) if i == j else (x == 0) for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def to_json(self, field: FieldSpec = QQ):
        return [[field.format(x) for x in r] for r in self.rows]


def _dot(u, v):
    s = 0
    for a, b in zip(u, v):
        if a and b:
            s = s + a * b
    return s


# -- elimination --------------------------------------------------------------


class RowReducer:
    """Incremental reduced row echelon form over sparse rows.

    Rows are ``{column: value}`` dicts.  The pivot rows are kept fully reduced,
    so reducing a new row needs one pass over the pivot columns it touches.
    Pivot choice is the smallest column index, which makes the final basis the
    unique RREF of the row space.
    """

    def __init__(self, ncols: int, field: FieldSpec = QQ):
        self.ncols = ncols
        self.field = field
        self.pivots: dict[int, dict] = {}

    def reduce(self, row: dict) -> dict:
        el = self.field.element
        out = {}
        for j, v in row.items():
            if v != 0:
                out[j] = el(v)
        for c in [c for c in out if c in self.pivots]:
            coef = out[c]
            for j, v in self.pivots[c].items():
                nv = out.get(j, 0) - coef * v
                if nv == 0:
                    out.pop(j, None)
                else:
                    out[j] = nv
        return out

    def add(self, row: dict) -> bool:
        """Insert a row; return True if it enlarged the row space."""
        row = self.reduce(row)
        if not row:
            return False
        c = min(row)
        p = row[c]
        if p != 1:
            row = {j: v / p for j, v in row.items()}
        for prow in self.pivots.values():
            coef = prow.get(c)
            if coef is not None:
                for j, v in row.items():
                    nv = prow.get(j, 0) - coef * v
                    if nv == 0:
                        prow.pop(j, None)
                    else:
                        prow[j] = nv
        self.pivots[c] = row
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def basis(self) -> list[tuple]:
        z = self.field.zero
        out = []
        for c in sorted(self.pivots):
            v = [z] * self.ncols
            for j, x in self.pivots[c].items():
                v[j] = x
            out.append(tuple(v))
        return out

    def kernel(self) -> "LinearSubspace":
        """Solution space of the system whose rows were added."""
        z, one = self.field.zero, self.field.one
        free = [j for j in range(self.ncols) if j not in self.pivots]
        vecs = []
        for f in free:
            v = [z] * self.ncols
            v[f] = one
            for c, prow in self.pivots.items():
                x = prow.get(f)
                if x is not None:
                    v[c] = -x
            vecs.append(v)
        return LinearSubspace.span(vecs, self.ncols, self.field)


def _field_of(rows) -> FieldSpec:
    for r in rows:
        for x in r:
            if isinstance(x, QuotientElement):
                return x.spec
    return QQ


def _integer_rows(rows):
    out = []
    for r in rows:
        r = [Fraction(x) for x in r]
        den = lcm(*(x.denominator for x in r)) if r else 1
        out.append([x.numerator * (den // x.denominator) for x in r])
    return out


def bareiss_echelon(rows: list[list[int]], ncols: int):
    """Fraction-free row echelon form in place. Returns (pivot columns, sign, last pivot)."""
    nrows = len(rows)
    r = 0
    prev = 1
    sign = 1
    pivcols = []
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
            sign = -sign
        piv_row = rows[r]
        pv = piv_row[c]
        for i in range(r + 1, nrows):
            row = rows[i]
            a = row[c]
            if a:
                for j in range(c + 1, ncols):
                    row[j] = (pv * row[j] - a * piv_row[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = (pv * row[j]) // prev
            row[c] = 0
        prev = pv
        pivcols.append(c)
        r += 1
    return pivcols, sign, prev


def _gauss_echelon(rows: list[list], ncols: int):
    """Plain Gauss-Jordan echelon (used for quotient-ring scalars)."""
    nrows = len(rows)
    r = 0
    pivcols = []
    sign = 1
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
            sign = -sign
        pv = rows[r][c]
        for i in range(r + 1, nrows):
            a = rows[i][c]
            if a != 0:
                f = a / pv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivcols.append(c)
        r += 1
    return pivcols, sign


def _echelon(M: ExactMatrix):
    field = _field_of(M.rows)
    if field.is_rational:
        rows = _integer_rows(M.rows)
        pivcols, _, _ = bareiss_echelon(rows, M.ncols)
    else:
        rows = [list(r) for r in M.rows]
        pivcols, _ = _gauss_echelon(rows, M.ncols)
    return rows, pivcols, field


def rank(M: ExactMatrix) -> int:
    return len(_echelon(M)[1])


def nullspace(M: ExactMatrix) -> "LinearSubspace":
    """Solution space of M v = 0, returned in canonical RREF basis."""
    rows, pivcols, field = _echelon(M)
    n = M.ncols
    piv_set = set(pivcols)
    z, one = field.zero, field.one
    vecs = []
    for f in range(n):
        if f in piv_set:
            continue
        x = [z] * n
        x[f] = one
        for r in range(len(pivcols) - 1, -1, -1):
            c = pivcols[r]
            row = rows[r]
            s = 0
            for j in range(c + 1, n):
                if row[j] and x[j]:
                    s = s + row[j] * x[j]
            x[c] = field.element(-s) / row[c] if s != 0 else z
        vecs.append(x)
    return LinearSubspace.span(vecs, n, field)


def det(M: ExactMatrix):
    if M.nrows != M.ncols:
        raise ValueError("determinant of a non-square matrix")
    n = M.nrows
    field = _field_of(M.rows)
    if n == 0:
        return field.one
    if field.is_rational:
        rows = [[Fraction(x) for x in r] for r in M.rows]
        dens = [lcm(*(x.denominator for x in r)) for r in rows]
        irows = _integer_rows(rows)
        pivcols, sign, last = bareiss_echelon(irows, n)
        if len(pivcols) < n:
            return Fraction(0)
        scale = 1
        for d in dens:
            scale *= d
        return Fraction(sign * last, scale)
    rows = [list(r) for r in M.rows]
    pivcols, sign = _gauss_echelon(rows, n)
    if len(pivcols) < n:
        return field.zero
    out = field.one * sign
    for i in range(n):
        out = out * rows[i][i]
    return out


def solve(M: ExactMatrix, b: Sequence):
    """One solution x of M x = b, or None if the system is inconsistent."""
    field = _field_of(M.rows + (tuple(b),))
    red = RowReducer(M.ncols + 1, field)
    for r, bi in zip(M.rows, b):
        row = {j: x for j, x in enumerate(r) if x != 0}
        if bi != 0:
            row[M.ncols] = bi
        red.add(row)
    if M.ncols in red.pivots:
        return None
    x = [field.zero] * M.ncols
    for c, prow in red.pivots.items():
        x[c] = prow.get(M.ncols, field.zero)
    return tuple(x)


def inverse(M: ExactMatrix) -> ExactMatrix:
    n = M.nrows
    if n != M.ncols:
        raise ValueError("inverse of a non-square matrix")
    field = _field_of(M.rows)
    red = RowReducer(2 * n, field)
    for i, r in enumerate(M.rows):
        row = {j: x for j, x in enumerate(r) if x != 0}
        row[n + i] = field.one
        red.add(row)
    if any(c not in red.pivots for c in range(n)) or len(red.pivots) != n:
        raise NotInvertible("singular matrix")
    rows = []
    for c in range(n):
        prow = red.pivots[c]
        rows.append([prow.get(n + j, field.zero) for j in range(n)])
    return ExactMatrix.from_rows(rows, n, field)


# -- subspaces ----------------------------------------------------------------


@dataclass(frozen=True)
class LinearSubspace:
    """Subspace of k^n stored by its reduced row echelon basis.

    Equality is entry-by-entry comparison of the canonical bases.
    """

    ambient_dim: int
    basis: tuple[tuple, ...]
    field: FieldSpec = field(default=QQ, compare=False)

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int, field: FieldSpec = QQ) -> "LinearSubspace":
        red = RowReducer(ambient_dim, field)
        for v in vectors:
            if len(v) != ambient_dim:
                raise AmbientMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            red.add({j: x for j, x in enumerate(v) if x != 0})
        return cls(ambient_dim, tuple(red.basis()), field)

    @classmethod
    def zero(cls, ambient_dim: int, field: FieldSpec = QQ) -> "LinearSubspace":
        return cls(ambient_dim, (), field)

    @classmethod
    def full(cls, ambient_dim: int, field: FieldSpec = QQ) -> "LinearSubspace":
        return cls.span(ExactMatrix.identity(ambient_dim, field).rows, ambient_dim, field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def _pivots(self) -> dict:
        piv = {}
        for v in self.basis:
            c = next(j for j, x in enumerate(v) if x != 0)
            piv[c] = {j: x for j, x in enumerate(v) if x != 0}
        return piv

    def _reducer(self) -> RowReducer:
        red = RowReducer(self.ambient_dim, self.field)
        red.pivots = {c: dict(r) for c, r in self._pivots.items()}
        return red

    def _check(self, other: "LinearSubspace"):
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch(f"ambient dimensions {self.ambient_dim} and {other.ambient_dim} differ")

    def contains(self, v) -> bool:
        if isinstance(v, LinearSubspace):
            self._check(v)
            return all(self.contains(w) for w in v.basis)
        if len(v) != self.ambient_dim:
            raise AmbientMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        red = RowReducer(self.ambient_dim, self.field)
        red.pivots = self._pivots
        return not red.reduce({j: x for j, x in enumerate(v) if x != 0})

    __contains__ = contains

    def coordinates(self, v) -> tuple:
        """Coordinates of ``v`` in the stored basis (read off at the pivot columns)."""
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return tuple(v[c] for c in sorted(self._pivots))

    def __add__(self, other: "LinearSubspace") -> "LinearSubspace":
        self._check(other)
        return LinearSubspace.span(self.basis + other.basis, self.ambient_dim, self.field)

    sum = __add__

    def annihilator(self) -> "LinearSubspace":
        """Vectors w with w . u = 0 for all u in the subspace."""
        red = RowReducer(self.ambient_dim, self.field)
        red.pivots = {c: dict(r) for c, r in self._pivots.items()}
        return red.kernel()

    def intersect(self, other: "LinearSubspace") -> "LinearSubspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return LinearSubspace.zero(self.ambient_dim, self.field)
        ann = other.annihilator().basis
        # x = sum c_i u_i lies in other iff w . x = 0 for every w in ann(other)
        red = RowReducer(self.dim, self.field)
        for w in ann:
            red.add({i: _dot(w, u) for i, u in enumerate(self.basis)})
        coeffs = red.kernel().basis
        vecs = [tuple(_dot(c, col) for col in zip(*self.basis)) for c in coeffs]
        return LinearSubspace.span(vecs, self.ambient_dim, self.field)

    def project(self, coords: Sequence[int]) -> "LinearSubspace":
        """Image under the coordinate projection onto ``coords`` (in the given order)."""
        return LinearSubspace.span([[v[c] for c in coords] for v in self.basis], len(coords), self.field)

    def equal(self, other: "LinearSubspace") -> bool:
        self._check(other)
        return self == other

    def to_json(self):
        return {"ambient_dim": self.ambient_dim,
                "basis": [[self.field.format(x) for x in v] for v in self.basis]}
