"""Integer matrices, Smith normal form, and lattice quotients."""

from __future__ import annotations

from fractions import Fraction


class IntMatrix:
    """Dense rectangular matrix with arbitrary-precision integer entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        entries = tuple(tuple(int(x) for x in row) for row in entries)
        if not entries or not entries[0]:
            raise ValueError("matrix must be nonempty")
        if any(len(r) != len(entries[0]) for r in entries):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", len(entries))
        object.__setattr__(self, "cols", len(entries[0]))
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *a):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "IntMatrix(" + repr([list(r) for r in self.entries]) + ")"

    def __mul__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return IntMatrix(
            [
                [
                    sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
                    for j in range(other.cols)
                ]
                for i in range(self.rows)
            ]
        )

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")
        return IntMatrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")
        return IntMatrix(
            [
                [a - b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __pow__(self, k):
        if self.rows != self.cols:
            raise ValueError("power of nonsquare matrix")
        result = IntMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def transpose(self):
        return IntMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def is_identity(self):
        return self == IntMatrix.identity(self.rows) if self.rows == self.cols else False


def smith_normal_form(a: IntMatrix):
    """Return (D, U, V) with U*A*V = D, U and V unimodular, D diagonal with
    each invariant factor dividing the next.  Diagonal entries are
    nonnegative."""
    m, n = a.rows, a.cols
    d = [list(r) for r in a.entries]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):
        d[dst] = [x + f * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for row in d:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(m, n):
        # find pivot of minimal absolute value in the remaining block
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = abs(d[i][j])
                if x and (best is None or x < best):
                    best = x
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        swap_rows(t, pi)
        swap_cols(t, pj)
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, m):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    add_row(t, i, -q)
                    if d[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    add_col(t, j, -q)
                    if d[t][j]:
                        swap_cols(t, j)
                        dirty = True
        if d[t][t] < 0:
            negate_row(t)
        t += 1

    # enforce divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(min(m, n) - 1):
            a_, b_ = d[i][i], d[i + 1][i + 1]
            if b_ % (a_ if a_ else 1) != 0 or (a_ == 0 and b_ != 0):
                # fold entry (i+1, i+1) into the block and re-reduce
                add_col(i + 1, i, 1)
                _rediagonalize(d, u, v, i)
                changed = True
    for i in range(min(m, n)):
        if d[i][i] < 0:
            negate_row(i)
    return IntMatrix(d), IntMatrix(u), IntMatrix(v)


def _rediagonalize(d, u, v, t):
    """Clear the 2x2 block starting at t after a column fold (helper for the
    divisibility pass)."""
    m, n = len(d), len(d[0])

    def add_row(src, dst, f):
        d[dst] = [x + f * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for row in d:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    while True:
        if all(d[i][t] == 0 for i in range(t + 1, m)) and all(
            d[t][j] == 0 for j in range(t + 1, n)
        ):
            break
        # minimal pivot into position t
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = abs(d[i][j])
                if x and (best is None or x < best):
                    best = x
                    pivot = (i, j)
        pi, pj = pivot
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        for i in range(t + 1, m):
            if d[i][t]:
                add_row(t, i, -(d[i][t] // d[t][t]))
        for j in range(t + 1, n):
            if d[t][j]:
                add_col(t, j, -(d[t][j] // d[t][t]))


def invariant_factors(a: IntMatrix):
    d, _, _ = smith_normal_form(a)
    return tuple(d.entries[i][i] for i in range(min(a.rows, a.cols)))


def integer_kernel_basis(a: IntMatrix):
    """Basis (list of length-cols integer vectors) of the right null space
    of A over Z; the basis spans a saturated sublattice."""
    d, u, v = smith_normal_form(a)
    r = sum(1 for i in range(min(a.rows, a.cols)) if d.entries[i][i] != 0)
    basis = []
    for j in range(r, a.cols):
        basis.append(tuple(v.entries[i][j] for i in range(a.cols)))
    return basis


def solve_in_lattice_basis(basis, vec):
    """Express `vec` in terms of an integral basis of a saturated sublattice.

    Returns integer coordinates, or None if vec is outside the span.
    """
    if not basis:
        return None if any(vec) else ()
    n = len(vec)
    cols = len(basis)
    aug = [[Fraction(basis[j][i]) for j in range(cols)] + [Fraction(vec[i])] for i in range(n)]
    r = 0
    pivots = []
    for c in range(cols):
        pr = next((i for i in range(r, n) if aug[i][c]), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, n):
        if aug[i][cols]:
            return None
    sol = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        sol[c] = aug[i][cols]
    if any(s.denominator != 1 for s in sol):
        return None
    return tuple(int(s) for s in sol)
