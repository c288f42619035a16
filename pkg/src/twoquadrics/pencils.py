"""Pencils of quadrics with finite group actions.

Degeneracy binary form, smoothness, equivariance data, induced branch
permutations, fixed points on X, invariant lines for abelian actions, and
the diagonal involution classification.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .binforms import (
    BinaryForm,
    bform_discriminant,
    bform_gcd,
    bform_root_action,
    proj_equal,
    quadratic_roots,
)
from .cyclo import CycNum, ONE, ZERO
from .errors import (
    DimensionMismatch,
    NotAbelian,
    NotASymmetry,
    NotDiagonal,
)
from .groups import MatrixGroup, projective_fixed_locus
from .matrices import (
    Mat,
    Quadric,
    Subspace,
    _rref,
    contragredient,
    eigenspaces_finite_order,
)


@dataclass(frozen=True)
class Pencil:
    g: int
    q1: Quadric
    q2: Quadric

    def __post_init__(self):
        n = 2 * self.g + 2
        if n < 4:
            raise ValueError("need g >= 1")
        if self.q1.size != n or self.q2.size != n:
            raise DimensionMismatch("Gram size must be 2g+2")

    @property
    def size(self):
        return 2 * self.g + 2

    @classmethod
    def from_diagonals(cls, g, d1, d2):
        return cls(g, Quadric.from_diagonal(d1), Quadric.from_diagonal(d2))


@dataclass(frozen=True)
class PencilSymmetry:
    """Coordinate symmetry h with h·G_i·hᵀ = Σ_j M_ij G_j.

    The matrix h transforms the forms by substituting hᵀx; points of P^n
    transform by the contragredient (hᵀ)⁻¹."""

    h: Mat
    action2x2: tuple  # ((m11, m12), (m21, m22)) of CycNum

    def moebius(self):
        """Induced map on the pencil parameter (t1, t2), as a 2x2 matrix.

        The member t1 Q1 + t2 Q2 is carried to t1' Q1 + t2' Q2 with
        t' = Mᵀ t."""
        (a, b), (c, d) = self.action2x2
        return ((a, c), (b, d))


@dataclass(frozen=True)
class BranchConfig:
    """Labeled roots of the degeneracy form; labels are 1..2g+2 by index."""

    form: BinaryForm
    roots: tuple  # of (u, v) CycNum pairs

    def __post_init__(self):
        roots = tuple(
            (CycNum._coerce(u), CycNum._coerce(v)) for u, v in self.roots
        )
        object.__setattr__(self, "roots", roots)
        if len(roots) != self.form.degree:
            raise ValueError("root count must equal the degree")
        for i, r in enumerate(roots):
            if not self.form.evaluate(*r).is_zero():
                raise ValueError(f"labeled point {i + 1} is not a root")
            for j in range(i):
                if proj_equal(r, roots[j]):
                    raise ValueError(f"roots {j + 1} and {i + 1} coincide")


@dataclass(frozen=True)
class LineOnX:
    """A projective line contained in X, as a 2-dimensional subspace."""

    plane: Subspace

    def spans(self, p, q):
        return self.plane == Subspace(self.plane.ambient_dim, [p, q])


def degeneracy_form(pencil: Pencil) -> BinaryForm:
    """det(t1 Q1 + t2 Q2) as a binary form of degree 2g+2.

    Computed by interpolation: the dehomogenized determinant det(G1 + x G2)
    is sampled at 2g+3 rational points and the coefficients recovered by
    solving the Vandermonde system exactly."""
    d = pencil.size
    samples = []
    for k in range(d + 1):
        x = CycNum.from_rational(Fraction(k))
        m = pencil.q1.gram + x * pencil.q2.gram
        samples.append((x, m.det()))
    # solve sum_j c_j x^j = det sample for each node
    rows = []
    for x, val in samples:
        rows.append([x**j for j in range(d + 1)] + [val])
    rows, pivots = _rref(rows)
    coeffs = [ZERO] * (d + 1)
    for i, p in enumerate(pivots):
        if p == d + 1:
            raise ValueError("interpolation failed")
        coeffs[p] = rows[i][d + 1]
    # coeff of x^j goes with t1^(d-j) t2^j
    return BinaryForm(d, coeffs)


def is_smooth(pencil: Pencil) -> bool:
    """Distinct-roots criterion: the degeneracy form has 2g+2 distinct
    projective roots."""
    f = degeneracy_form(pencil)
    return not f.is_zero() and not bform_discriminant(f).is_zero()


def equivariance(pencil: Pencil, h: Mat) -> PencilSymmetry:
    """Express h·G_i·hᵀ in the basis (Q1, Q2), or fail with NotASymmetry."""
    if h.rows != h.cols or h.rows != pencil.size:
        raise DimensionMismatch("symmetry size mismatch")
    g1, g2 = pencil.q1.gram, pencil.q2.gram
    rows = []
    for gi in (g1, g2):
        transformed = h * gi * h.transpose()
        coeffs = _in_span(transformed, g1, g2)
        if coeffs is None:
            raise NotASymmetry("transformed quadric leaves the pencil span")
        rows.append(coeffs)
    m = Mat([list(rows[0]), list(rows[1])])
    if m.det().is_zero():
        raise NotASymmetry("induced 2x2 action is singular")
    return PencilSymmetry(h, (tuple(rows[0]), tuple(rows[1])))


def _in_span(target: Mat, g1: Mat, g2: Mat):
    """Solve target = a·g1 + b·g2 entrywise; None when unsolvable."""
    n = g1.rows
    a = b = None
    # pick two equations that pin (a, b), then verify all entries
    sys_rows = []
    for i in range(n):
        for j in range(n):
            sys_rows.append(
                [g1.entries[i][j], g2.entries[i][j], target.entries[i][j]]
            )
    reduced, pivots = _rref([list(r) for r in sys_rows])
    if 2 in pivots:
        return None  # inconsistent
    a = ZERO
    b = ZERO
    for r, p in zip(reduced, pivots):
        if p == 0:
            a = r[2]
        elif p == 1:
            b = r[2]
    for i in range(n):
        for j in range(n):
            want = a * g1.entries[i][j] + b * g2.entries[i][j]
            if want != target.entries[i][j]:
                return None
    return (a, b)


def branch_permutation(pencil: Pencil, sym: PencilSymmetry, branch: BranchConfig):
    """Permutation of branch labels induced by the symmetry on the pencil
    parameter (1-indexed image tuple)."""
    return bform_root_action(branch.form, branch.roots, sym.moebius())


def membership(pencil: Pencil, v) -> bool:
    v = [CycNum._coerce(x) for x in v]
    if len(v) != pencil.size:
        raise DimensionMismatch("point has wrong length")
    if all(x.is_zero() for x in v):
        raise ValueError("zero vector is not a projective point")
    return pencil.q1.evaluate(v).is_zero() and pencil.q2.evaluate(v).is_zero()


def _check_symmetries(pencil: Pencil, group: MatrixGroup):
    """Each generator acts on points; its contragredient must be a pencil
    symmetry.  Returns the list of PencilSymmetry objects."""
    syms = []
    for label, a in group.generators:
        h = contragredient(a)
        try:
            syms.append((label, equivariance(pencil, h)))
        except NotASymmetry as exc:
            raise NotASymmetry(f"generator {label!r}: {exc}") from exc
    return syms


def _restricted_binary_quadric(q: Quadric, plane: Subspace) -> BinaryForm:
    """Q restricted to u·b1 + v·b2 as a binary quadratic in (u, v)."""
    b1, b2 = plane.basis
    return BinaryForm(
        2, [q.evaluate(b1), 2 * q.polar(b1, b2), q.evaluate(b2)]
    )


def _line_points(pencil: Pencil, plane: Subspace):
    """Intersection of X with a projective line.

    Returns ("points", [pts]) for finitely many intersection points or
    ("contained", None) when the line lies on X."""
    f1 = _restricted_binary_quadric(pencil.q1, plane)
    f2 = _restricted_binary_quadric(pencil.q2, plane)
    if f1.is_zero() and f2.is_zero():
        return ("contained", None)
    if f1.is_zero() or f2.is_zero():
        f = f2 if f1.is_zero() else f1
        kind, roots = quadratic_roots(*f.coeffs)
        pairs = roots
    else:
        gcd = bform_gcd(f1, f2)
        if gcd.degree == 0:
            return ("points", [])
        if gcd.degree == 1:
            # root of a*u + b*v: (u, v) = (b, -a)
            a, b = gcd.coeffs
            pairs = [(b, -a)]
        else:
            kind, pairs = quadratic_roots(*gcd.coeffs)
    b1, b2 = plane.basis
    pts = []
    for u, v in pairs:
        pt = tuple(u * x + v * y for x, y in zip(b1, b2))
        if not any(proj_point_equal(pt, q) for q in pts):
            pts.append(pt)
    return ("points", pts)


def proj_point_equal(p, q) -> bool:
    """Projective equality of two nonzero vectors of equal length."""
    n = len(p)
    i = next(k for k in range(n) if not p[k].is_zero())
    if q[i].is_zero():
        return False
    a, b = q[i], p[i]
    return all(a * p[k] == b * q[k] for k in range(n))


@dataclass(frozen=True)
class FixedOnX:
    """Fixed locus of a group action intersected with X."""

    points: tuple  # isolated fixed points on X (projective vectors)
    curves: tuple  # (subspace, restricted Gram pair) records, dim >= 1 on X
    lines_on_x: tuple  # fixed projective lines lying entirely on X


def fixed_points_on_X(pencil: Pencil, group: MatrixGroup) -> FixedOnX:
    """Intersect the projective fixed locus of a point action with X.

    Components of projective dimension 0 are tested for membership; lines
    are intersected with X exactly; higher-dimensional components are
    reported symbolically with the pair of restricted Gram matrices."""
    _check_symmetries(pencil, group)
    locus = projective_fixed_locus(group)
    points = []
    curves = []
    lines = []
    for comp in locus.components:
        if comp.dim == 1:
            v = comp.basis[0]
            if membership(pencil, v):
                points.append(v)
        elif comp.dim == 2:
            kind, pts = _line_points(pencil, comp)
            if kind == "contained":
                lines.append(LineOnX(comp))
            else:
                points.extend(
                    p for p in pts
                    if not any(proj_point_equal(p, q) for q in points)
                )
        else:
            curves.append(
                (comp, (pencil.q1.restrict(comp), pencil.q2.restrict(comp)))
            )
    return FixedOnX(tuple(points), tuple(curves), tuple(lines))


def _joint_characters(pencil: Pencil, group: MatrixGroup):
    """Simultaneous character decomposition for a commuting point action."""
    for i, (la, a) in enumerate(group.generators):
        for lb, b in group.generators[i + 1 :]:
            if a * b != b * a:
                raise NotAbelian(f"generators {la!r} and {lb!r} do not commute")
    _check_symmetries(pencil, group)
    current = [(Subspace.full(pencil.size), ())]
    for _, g in group.generators:
        eig = eigenspaces_finite_order(g)
        refined = []
        for space, char in current:
            for lam, espace in eig:
                meet = space.intersect(espace)
                if meet.dim:
                    refined.append((meet, char + (lam,)))
        current = refined
    return current


def _isotropic_directions(pencil: Pencil, plane: Subspace, extra_points=()):
    """Directions l = u b1 + v b2 in a 2-dim character space with
    Q1(l) = Q2(l) = 0 and polar conditions against each extra point.

    Returns ("all", None) when every direction works, else ("points", list
    of vectors)."""
    f1 = _restricted_binary_quadric(pencil.q1, plane)
    f2 = _restricted_binary_quadric(pencil.q2, plane)
    b1, b2 = plane.basis
    linear = []
    for p in extra_points:
        for q in (pencil.q1, pencil.q2):
            linear.append((q.polar(p, b1), q.polar(p, b2)))
    candidates = None  # None = unconstrained so far
    for a, b in linear:
        if a.is_zero() and b.is_zero():
            continue
        root = (b, -a)
        if candidates is None:
            candidates = [root]
        else:
            candidates = [r for r in candidates if proj_equal(r, root)]
    quadratics = [f for f in (f1, f2) if not f.is_zero()]
    if candidates is None:
        if not quadratics:
            return ("all", None)
        f = quadratics[0]
        if len(quadratics) == 2:
            f = bform_gcd(quadratics[0], quadratics[1])
            if f.degree == 0:
                return ("points", [])
            if f.degree == 1:
                a, b = f.coeffs
                candidates = [(b, -a)]
        if candidates is None:
            kind, candidates = quadratic_roots(*f.coeffs)
            if kind == "all":
                return ("all", None)
    surviving = []
    for u, v in candidates:
        if all(f.evaluate(u, v).is_zero() for f in quadratics):
            surviving.append((u, v))
    pts = []
    for u, v in surviving:
        pt = tuple(u * x + v * y for x, y in zip(b1, b2))
        if not any(proj_point_equal(pt, q) for q in pts):
            pts.append(pt)
    return ("points", pts)


@dataclass(frozen=True)
class LineSearchReport:
    """Result of the invariant-line enumeration.

    lines: fully enumerated invariant lines on X.
    families: non-enumerated reports, each a dict with at least a "reason";
    a smooth quartic del Pezzo character space contributes
    {"count": 16, "enumerated": False, ...}."""

    lines: tuple
    families: tuple

    @property
    def complete(self):
        return not self.families


def invariant_lines_abelian(pencil: Pencil, group: MatrixGroup) -> LineSearchReport:
    """All G-invariant projective lines on X for an abelian point action.

    Case (i): planes inside a single character space; case (ii): sums of
    eigenlines from two distinct characters.  Character spaces of dimension
    3 or more yield family reports instead of enumeration, except that a
    dimension-5 space cutting out a smooth quartic del Pezzo surface is
    reported with the classical line count 16."""
    spaces = _joint_characters(pencil, group)
    lines = []
    families = []

    def add_line(plane):
        if plane.dim != 2:
            return
        f1 = _restricted_binary_quadric(pencil.q1, plane)
        f2 = _restricted_binary_quadric(pencil.q2, plane)
        if f1.is_zero() and f2.is_zero():
            line = LineOnX(plane)
            if line not in lines:
                lines.append(line)

    # case (i): inside one character space
    for space, char in spaces:
        if space.dim < 2:
            continue
        if space.dim == 2:
            add_line(space)
        elif space.dim == pencil.size - 1:
            r1 = pencil.q1.restrict(space)
            r2 = pencil.q2.restrict(space)
            fam = {
                "character": char,
                "dimension": space.dim,
                "enumerated": False,
                "reason": "lines inside one character space of dimension "
                f"{space.dim}",
            }
            if pencil.g == 2 and space.dim == 5:
                f = _quintic_degeneracy(r1.gram, r2.gram)
                if not f.is_zero() and not bform_discriminant(f).is_zero():
                    fam["count"] = 16
                    fam["reason"] = (
                        "smooth quartic del Pezzo section: 16 lines"
                    )
            families.append(fam)
        else:
            families.append(
                {
                    "character": char,
                    "dimension": space.dim,
                    "enumerated": False,
                    "reason": "lines inside one character space of dimension "
                    f"{space.dim}",
                }
            )

    # case (ii): one eigenline from each of two characters
    for i, (s1, c1) in enumerate(spaces):
        for s2, c2 in spaces[i + 1 :]:
            # a 1-dim side whose point is off X contributes nothing,
            # whatever the other side looks like
            if any(
                s.dim == 1 and not _side_candidates(pencil, s)
                for s in (s1, s2)
            ):
                continue
            if s1.dim > 2 or s2.dim > 2:
                families.append(
                    {
                        "characters": (c1, c2),
                        "enumerated": False,
                        "reason": "parameter dimension exceeds 2",
                    }
                )
                continue
            lefts = _side_candidates(pencil, s1)
            if lefts == "all":
                families.append(
                    {
                        "characters": (c1, c2),
                        "enumerated": False,
                        "reason": "isotropic directions form a family",
                    }
                )
                continue
            for p in lefts:
                kind, rights = _isotropic_directions(
                    pencil, s2, extra_points=(p,)
                ) if s2.dim == 2 else _point_side(pencil, s2, p)
                if kind == "all":
                    families.append(
                        {
                            "characters": (c1, c2),
                            "enumerated": False,
                            "reason": "isotropic directions form a family",
                        }
                    )
                    continue
                for q in rights:
                    add_line(Subspace(pencil.size, [p, q]))
    return LineSearchReport(tuple(lines), tuple(families))


def _side_candidates(pencil: Pencil, space: Subspace):
    """Directions in a character space of dim <= 2 lying on both quadrics."""
    if space.dim == 1:
        v = space.basis[0]
        if pencil.q1.evaluate(v).is_zero() and pencil.q2.evaluate(v).is_zero():
            return [v]
        return []
    kind, pts = _isotropic_directions(pencil, space)
    if kind == "all":
        return "all"
    return pts


def _point_side(pencil: Pencil, space: Subspace, p):
    """Candidates in a 1-dim space paired against a fixed point p."""
    v = space.basis[0]
    conds = [
        pencil.q1.evaluate(v),
        pencil.q2.evaluate(v),
        pencil.q1.polar(p, v),
        pencil.q2.polar(p, v),
    ]
    if all(c.is_zero() for c in conds):
        return ("points", [v])
    return ("points", [])


def _quintic_degeneracy(g1: Mat, g2: Mat) -> BinaryForm:
    """det(t1 A + t2 B) for the restricted 5x5 Gram pair, by interpolation."""
    d = g1.rows
    rows = []
    for k in range(d + 1):
        x = CycNum.from_rational(Fraction(k))
        rows.append(
            [x**j for j in range(d + 1)] + [(g1 + x * g2).det()]
        )
    reduced, pivots = _rref(rows)
    coeffs = [ZERO] * (d + 1)
    for i, p in enumerate(pivots):
        if p == d + 1:
            raise ValueError("interpolation failed")
        coeffs[p] = reduced[i][d + 1]
    return BinaryForm(d, coeffs)


@dataclass(frozen=True)
class InvolutionClass:
    minus_count: int  # canonical k <= g+1
    determinant: int  # of the canonical representative
    plus_subspace: tuple  # coordinates (0-based) with sign +1, canonical rep
    minus_subspace: tuple
    free_on_lines: bool  # k = 2: two-torsion translation
    fixes_hyperplane_section: bool  # k = 1


def classify_diagonal_involution(signs, pencil: Pencil) -> InvolutionClass:
    """Classify a diagonal sign involution acting on a diagonal pencil.

    The sign vector is canonicalized by a global flip to minus-count
    k <= g+1; k = 2 is the freely-acting two-torsion translation class and
    k = 1 fixes a hyperplane section (a quartic del Pezzo surface for
    g = 2)."""
    n = pencil.size
    for q in (pencil.q1, pencil.q2):
        for i in range(n):
            for j in range(n):
                if i != j and not q.gram.entries[i][j].is_zero():
                    raise NotDiagonal("pencil is not diagonal")
    signs = [int(s) for s in signs]
    if len(signs) != n or any(s not in (1, -1) for s in signs):
        raise ValueError("signs must be a vector of +-1 of length 2g+2")
    k = signs.count(-1)
    if k in (0, n):
        raise ValueError("all signs equal: trivial projective action")
    if k > pencil.g + 1:
        signs = [-s for s in signs]
        k = n - k
    det = 1 if k % 2 == 0 else -1
    plus = tuple(i for i, s in enumerate(signs) if s == 1)
    minus = tuple(i for i, s in enumerate(signs) if s == -1)
    return InvolutionClass(
        minus_count=k,
        determinant=det,
        plus_subspace=plus,
        minus_subspace=minus,
        free_on_lines=(k == 2),
        fixes_hyperplane_section=(k == 1),
    )
