"""Binary forms over cyclotomic fields: discriminants, root permutations,
gcds, and exact root extraction for degree <= 2."""

from __future__ import annotations

from fractions import Fraction

from .cyclo import CycNum, ONE, ZERO, cyc_sqrt, lcm
from .errors import NotARoot, NotClosed, UnsupportedCase


class BinaryForm:
    """Homogeneous form sum_k c_k t1^(d-k) t2^k of allocated degree d."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree, coeffs):
        coeffs = tuple(CycNum._coerce(c) for c in coeffs)
        if len(coeffs) != degree + 1:
            raise ValueError("coefficient count must be degree + 1")
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("BinaryForm is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, BinaryForm)
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.degree, tuple(c.key() for c in self.coeffs)))

    def __repr__(self):
        terms = []
        d = self.degree
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = []
            if d - k:
                mono.append(f"t1^{d - k}" if d - k > 1 else "t1")
            if k:
                mono.append(f"t2^{k}" if k > 1 else "t2")
            body = "*".join(mono) or "1"
            terms.append(f"({c!r})*{body}")
        return " + ".join(terms) or "0"

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def evaluate(self, t1, t2) -> CycNum:
        t1 = CycNum._coerce(t1)
        t2 = CycNum._coerce(t2)
        total = ZERO
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                total = total + c * t1 ** (self.degree - k) * t2**k
        return total

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            d = self.degree + other.degree
            out = [ZERO] * (d + 1)
            for i, a in enumerate(self.coeffs):
                if a.is_zero():
                    continue
                for j, b in enumerate(other.coeffs):
                    if not b.is_zero():
                        out[i + j] = out[i + j] + a * b
            return BinaryForm(d, out)
        c = CycNum._coerce(other)
        return BinaryForm(self.degree, [c * x for x in self.coeffs])

    __rmul__ = __mul__

    def partial_t1(self) -> "BinaryForm":
        d = self.degree
        if d == 0:
            return BinaryForm(0, [ZERO])
        return BinaryForm(d - 1, [(d - k) * self.coeffs[k] for k in range(d)])

    def partial_t2(self) -> "BinaryForm":
        d = self.degree
        if d == 0:
            return BinaryForm(0, [ZERO])
        return BinaryForm(d - 1, [k * self.coeffs[k] for k in range(1, d + 1)])


def _det(rows):
    """Determinant by fraction-full Gaussian elimination over the field."""
    n = len(rows)
    rows = [list(r) for r in rows]
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


def resultant(f: BinaryForm, g: BinaryForm) -> CycNum:
    """Sylvester resultant of two binary forms at their allocated degrees."""
    m, n = f.degree, g.degree
    if m == 0 or n == 0:
        # resultant against a constant form c is c^deg(other)
        if m == 0:
            return f.coeffs[0] ** n
        return g.coeffs[0] ** m
    size = m + n
    rows = []
    for i in range(n):
        row = [ZERO] * size
        for k, c in enumerate(f.coeffs):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [ZERO] * size
        for k, c in enumerate(g.coeffs):
            row[i + k] = c
        rows.append(row)
    return _det(rows)


def bform_discriminant(f: BinaryForm) -> CycNum:
    """Zero exactly when f has a repeated projective root (or f == 0).

    Computed as the resultant of the two partial derivatives; by Euler's
    relation their common projective zeros are the repeated roots of f.
    """
    if f.degree < 1:
        raise ValueError("discriminant needs degree >= 1")
    if f.is_zero():
        return ZERO
    if f.degree == 1:
        return ONE
    return resultant(f.partial_t1(), f.partial_t2())


def proj_equal(p, q) -> bool:
    """Equality of projective points given as (u, v) pairs."""
    (a, b), (c, d) = p, q
    return (a * d - b * c).is_zero()


def bform_root_action(f: BinaryForm, roots, moebius):
    """Permutation of root indices induced by a 2x2 Moebius matrix.

    `roots` is a list of projective (u, v) pairs; `moebius` is a 2x2 matrix
    given as ((a, b), (c, d)) acting by (u, v) -> (a u + b v, c u + d v).
    Returns a 1-indexed image tuple.
    """
    roots = [(CycNum._coerce(u), CycNum._coerce(v)) for u, v in roots]
    for i, (u, v) in enumerate(roots):
        if u.is_zero() and v.is_zero():
            raise ValueError(f"root {i + 1} is (0, 0)")
        for j, other in enumerate(roots):
            if j > i and proj_equal((u, v), other):
                raise ValueError(f"roots {i + 1} and {j + 1} coincide")
        if not f.evaluate(u, v).is_zero():
            raise NotARoot(f"point {i + 1} does not annihilate the form")
    (a, b), (c, d) = [[CycNum._coerce(x) for x in row] for row in moebius]
    if (a * d - b * c).is_zero():
        raise ValueError("moebius matrix is singular")
    images = []
    for i, (u, v) in enumerate(roots):
        img = (a * u + b * v, c * u + d * v)
        j = next((k for k, r in enumerate(roots) if proj_equal(img, r)), None)
        if j is None:
            raise NotClosed(f"image of root {i + 1} is not in the root list")
        images.append(j + 1)
    if len(set(images)) != len(images):
        raise NotClosed("moebius action is not injective on the root list")
    return tuple(images)


def _dehomogenize(f: BinaryForm):
    """Return (p, inf_mult): p(x) = f(1, x) ascending in x = t2/t1, and the
    multiplicity of the root at (0:1) (= allocated degree minus t1-degree)."""
    coeffs = list(f.coeffs)
    inf = 0
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
        inf += 1
    if not coeffs:
        return [], f.degree
    return coeffs, inf


def _poly_gcd(a, b):
    """Monic gcd of univariate polynomials (ascending CycNum coefficients)."""

    def trim(p):
        p = list(p)
        while p and p[-1].is_zero():
            p.pop()
        return p

    a, b = trim(a), trim(b)
    while b:
        # remainder of a mod b
        r = list(a)
        while len(r) >= len(b) and any(not c.is_zero() for c in r):
            while r and r[-1].is_zero():
                r.pop()
            if len(r) < len(b):
                break
            f = r[-1] * b[-1].inverse()
            shift = len(r) - len(b)
            for i, c in enumerate(b):
                r[shift + i] = r[shift + i] - f * c
            r.pop()
        a, b = b, trim(r)
    if not a:
        return []
    lead_inv = a[-1].inverse()
    return [c * lead_inv for c in a]


def bform_gcd(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Monic gcd of two binary forms (as a binary form of its own degree)."""
    if f.is_zero():
        return g
    if g.is_zero():
        return f
    pf, inf_f = _dehomogenize(f)
    pg, inf_g = _dehomogenize(g)
    core = _poly_gcd(pf, pg)
    inf = min(inf_f, inf_g)
    deg = (len(core) - 1) + inf
    coeffs = list(core) + [ZERO] * inf
    return BinaryForm(deg, coeffs)


def quadratic_roots(a, b, c, field_order=None):
    """Projective roots of a u^2 + b uv + c v^2 as (u, v) pairs.

    Returns ('all', None) when the form vanishes identically, otherwise
    ('points', [(u, v), ...]) with one entry per root, repeated at a double
    root.  Raises UnsupportedCase when a root does not lie in the searched
    cyclotomic field.
    """
    a = CycNum._coerce(a)
    b = CycNum._coerce(b)
    c = CycNum._coerce(c)
    if a.is_zero() and b.is_zero() and c.is_zero():
        return ("all", None)
    if a.is_zero():
        # v * (b u + c v): root at v = 0 plus the linear root
        roots = [(ONE, ZERO)]
        if b.is_zero():
            roots.append((ONE, ZERO))
        else:
            roots.append((c, -b))
        return ("points", roots)
    disc = b * b - 4 * a * c
    if field_order is None:
        field_order = lcm(lcm(a.order, lcm(b.order, c.order)), 24)
    s = cyc_sqrt(disc, field_order)
    if s is None:
        raise UnsupportedCase(
            "quadratic root requires a square root outside "
            f"Q(zeta_{field_order})"
        )
    two_a = 2 * a
    return ("points", [(-b + s, two_a), (-b - s, two_a)])
