"""Dense exact linear algebra over cyclotomic fields.

Matrices, canonical row-echelon subspaces, eigenspaces of finite-order
operators, and quadratic forms.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclo import CycNum, ONE, ZERO, lcm, zeta
from .errors import (
    DimensionMismatch,
    NotFiniteOrder,
    OrderExceedsCap,
    Singular,
)


class Mat:
    """Rectangular matrix of CycNum entries, reconciled to a common order."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        entries = [[CycNum._coerce(x) for x in row] for row in entries]
        if not entries or not entries[0]:
            raise ValueError("matrix must be nonempty")
        if any(len(r) != len(entries[0]) for r in entries):
            raise ValueError("ragged rows")
        order = 1
        for row in entries:
            for x in row:
                order = lcm(order, x.order)
        entries = tuple(tuple(x.embed(order) for x in row) for row in entries)
        object.__setattr__(self, "rows", len(entries))
        object.__setattr__(self, "cols", len(entries[0]))
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *a):
        raise AttributeError("Mat is immutable")

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, values):
        values = [CycNum._coerce(v) for v in values]
        n = len(values)
        return cls(
            [[values[i] if i == j else ZERO for j in range(n)] for i in range(n)]
        )

    @classmethod
    def zero(cls, rows, cols):
        return cls([[ZERO] * cols for _ in range(rows)])

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        if self.rows != other.rows or self.cols != other.cols:
            return False
        return all(
            a == b for r1, r2 in zip(self.entries, other.entries) for a, b in zip(r1, r2)
        )

    def __hash__(self):
        return hash(
            tuple(tuple(x.key() for x in row) for row in self.entries)
        )

    def key(self):
        return tuple(tuple(x.key() for x in row) for row in self.entries)

    def __repr__(self):
        body = "; ".join(
            ", ".join(repr(x) for x in row) for row in self.entries
        )
        return f"Mat[{body}]"

    def __mul__(self, other):
        if isinstance(other, Mat):
            if self.cols != other.rows:
                raise DimensionMismatch("matrix product shape mismatch")
            return Mat(
                [
                    [
                        sum(
                            (self.entries[i][k] * other.entries[k][j] for k in range(self.cols)),
                            ZERO,
                        )
                        for j in range(other.cols)
                    ]
                    for i in range(self.rows)
                ]
            )
        c = CycNum._coerce(other)
        return Mat([[c * x for x in row] for row in self.entries])

    def __rmul__(self, other):
        return self * other

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch("matrix sum shape mismatch")
        return Mat(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other):
        return self + (other * CycNum.from_rational(-1))

    def __neg__(self):
        return self * CycNum.from_rational(-1)

    def __pow__(self, k):
        if self.rows != self.cols:
            raise DimensionMismatch("power of nonsquare matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result = Mat.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def transpose(self):
        return Mat(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def apply(self, vec):
        """Matrix times column vector (a sequence of CycNum)."""
        vec = [CycNum._coerce(v) for v in vec]
        if len(vec) != self.cols:
            raise DimensionMismatch("vector length mismatch")
        return tuple(
            sum((self.entries[i][j] * vec[j] for j in range(self.cols)), ZERO)
            for i in range(self.rows)
        )

    def det(self) -> CycNum:
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of nonsquare matrix")
        rows = [list(r) for r in self.entries]
        n = self.rows
        det = ONE
        for c in range(n):
            pr = next((i for i in range(c, n) if not rows[i][c].is_zero()), None)
            if pr is None:
                return ZERO
            if pr != c:
                rows[c], rows[pr] = rows[pr], rows[c]
                det = -det
            piv = rows[c][c]
            det = det * piv
            inv = piv.inverse()
            for i in range(c + 1, n):
                f = rows[i][c] * inv
                if not f.is_zero():
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
        return det

    def inverse(self) -> "Mat":
        if self.rows != self.cols:
            raise DimensionMismatch("inverse of nonsquare matrix")
        n = self.rows
        work = [list(r) + list(Mat.identity(n).entries[i]) for i, r in enumerate(self.entries)]
        for c in range(n):
            pr = next((i for i in range(c, n) if not work[i][c].is_zero()), None)
            if pr is None:
                raise Singular("matrix is singular")
            work[c], work[pr] = work[pr], work[c]
            inv = work[c][c].inverse()
            work[c] = [x * inv for x in work[c]]
            for i in range(n):
                if i != c and not work[i][c].is_zero():
                    f = work[i][c]
                    work[i] = [x - f * y for x, y in zip(work[i], work[c])]
        return Mat([row[n:] for row in work])

    def rank(self) -> int:
        return len(_rref([list(r) for r in self.entries])[1])

    def is_scalar(self):
        """Return the scalar c when the matrix equals c*I, else None."""
        if self.rows != self.cols:
            return None
        c = self.entries[0][0]
        for i in range(self.rows):
            for j in range(self.cols):
                want = c if i == j else ZERO
                if self.entries[i][j] != want:
                    return None
        return c

    def is_identity(self) -> bool:
        c = self.is_scalar()
        return c is not None and c.is_one()


def _rref(rows):
    """In-place reduced row echelon form; returns (rows, pivot columns)."""
    if not rows:
        return rows, []
    ncols = len(rows[0])
    r = 0
    pivots = []
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


class Subspace:
    """Linear subspace given by a canonical reduced-row-echelon basis."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim, vectors):
        rows = [[CycNum._coerce(x) for x in v] for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise DimensionMismatch("vector length != ambient dimension")
        rows, pivots = _rref(rows)
        rows = rows[: len(pivots)]
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", tuple(tuple(r) for r in rows))

    def __setattr__(self, *a):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def full(cls, n):
        return cls(n, Mat.identity(n).entries)

    @classmethod
    def zero(cls, n):
        return cls(n, [])

    @property
    def dim(self):
        return len(self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.dim == other.dim
            and all(
                a == b for r1, r2 in zip(self.basis, other.basis) for a, b in zip(r1, r2)
            )
        )

    def __hash__(self):
        return hash(
            (self.ambient_dim, tuple(tuple(x.key() for x in r) for r in self.basis))
        )

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient_dim})"

    def contains_vector(self, vec) -> bool:
        vec = [CycNum._coerce(v) for v in vec]
        rows = [list(r) for r in self.basis] + [vec]
        _, pivots = _rref(rows)
        return len(pivots) == self.dim

    def contains_subspace(self, other) -> bool:
        return all(self.contains_vector(v) for v in other.basis)

    def intersect(self, other) -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("ambient dimensions differ")
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        # solve A^T u = B^T w: kernel of [A^T | -B^T]
        n = self.ambient_dim
        a, b = self.basis, other.basis
        stacked = Mat(
            [
                [a[j][i] for j in range(len(a))]
                + [-b[j][i] for j in range(len(b))]
                for i in range(n)
            ]
        )
        ker = kernel(stacked)
        vectors = []
        for coef in ker.basis:
            u = coef[: len(a)]
            vec = [
                sum((u[j] * a[j][i] for j in range(len(a))), ZERO) for i in range(n)
            ]
            vectors.append(vec)
        return Subspace(n, vectors)

    def image_under(self, m: Mat) -> "Subspace":
        return Subspace(m.rows, [m.apply(v) for v in self.basis])


def kernel(m: Mat) -> Subspace:
    """Right null space of a matrix."""
    rows, pivots = _rref([list(r) for r in m.entries])
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [ZERO] * m.cols
        vec[fc] = ONE
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][fc]
        basis.append(vec)
    return Subspace(m.cols, basis)


@dataclass(frozen=True)
class OrderInfo:
    order: int  # least n with M^n = identity
    projective_order: int  # least n with M^n scalar
    scalar: CycNum  # the scalar at the projective order


def operator_order(m: Mat, cap: int = 360) -> OrderInfo:
    """Order data of an invertible matrix, by direct iteration up to cap."""
    if m.rows != m.cols:
        raise DimensionMismatch("order of nonsquare matrix")
    power = m
    proj = None
    proj_scalar = None
    for n in range(1, cap + 1):
        c = power.is_scalar()
        if c is not None:
            if proj is None:
                proj = n
                proj_scalar = c
            if c.is_one():
                return OrderInfo(n, proj, proj_scalar)
        power = power * m
    raise OrderExceedsCap(f"no power up to {cap} is the identity")


def eigenspaces_finite_order(m: Mat, cap: int = 360):
    """All nonzero eigenspaces of a finite-order operator.

    Eigenvalue candidates are exactly the n-th roots of unity for n the
    operator order; finite order over characteristic zero guarantees the
    spaces sum to the ambient space.
    """
    try:
        info = operator_order(m, cap)
    except OrderExceedsCap as exc:
        raise NotFiniteOrder(str(exc)) from exc
    n = info.order
    spaces = []
    total = 0
    for k in range(n):
        lam = zeta(n, k)
        space = kernel(m - lam * Mat.identity(m.rows))
        if space.dim:
            spaces.append((lam, space))
            total += space.dim
    if total != m.rows:
        raise NotFiniteOrder("eigenspaces do not exhaust the ambient space")
    return spaces


class Quadric:
    """Quadratic form stored by its symmetric Gram matrix."""

    __slots__ = ("gram",)

    def __init__(self, gram: Mat):
        if not isinstance(gram, Mat):
            gram = Mat(gram)
        if gram.rows != gram.cols:
            raise DimensionMismatch("Gram matrix must be square")
        if gram != gram.transpose():
            raise ValueError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", gram)

    def __setattr__(self, *a):
        raise AttributeError("Quadric is immutable")

    @classmethod
    def from_diagonal(cls, values):
        return cls(Mat.diagonal(values))

    @property
    def size(self):
        return self.gram.rows

    def __eq__(self, other):
        return isinstance(other, Quadric) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        return f"Quadric({self.gram!r})"

    def evaluate(self, v) -> CycNum:
        return self.polar(v, v)

    def polar(self, u, v) -> CycNum:
        u = [CycNum._coerce(x) for x in u]
        v = [CycNum._coerce(x) for x in v]
        if len(u) != self.size or len(v) != self.size:
            raise DimensionMismatch("vector length mismatch")
        gv = self.gram.apply(v)
        return sum((a * b for a, b in zip(u, gv)), ZERO)

    def restrict(self, s: Subspace) -> "Quadric | None":
        """Gram matrix of the form restricted to the basis of s.

        Returns None for the zero subspace (empty matrix)."""
        if s.ambient_dim != self.size:
            raise DimensionMismatch("subspace ambient dimension mismatch")
        if s.dim == 0:
            return None
        return Quadric(
            Mat(
                [
                    [self.polar(s.basis[i], s.basis[j]) for j in range(s.dim)]
                    for i in range(s.dim)
                ]
            )
        )

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.gram.entries for x in row)


def quadric_eval(q: Quadric, v) -> CycNum:
    return q.evaluate(v)


def quadric_polar(q: Quadric, u, v) -> CycNum:
    return q.polar(u, v)


def gram_restrict(q: Quadric, s: Subspace):
    return q.restrict(s)


def contragredient(m: Mat) -> Mat:
    """Inverse transpose: the action on points dual to one on coordinates."""
    return m.inverse().transpose()


def kronecker(a: Mat, b: Mat) -> Mat:
    return Mat(
        [
            [
                a.entries[i][j] * b.entries[k][l]
                for j in range(a.cols)
                for l in range(b.cols)
            ]
            for i in range(a.rows)
            for k in range(b.rows)
        ]
    )
