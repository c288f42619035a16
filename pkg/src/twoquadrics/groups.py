"""Finite matrix groups: closure, relations up to scalars, projective fixed
loci, tensor constructions, and the scalar-lift obstruction search."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .cyclo import CycNum, ONE, zeta
from .errors import (
    CapExceeded,
    ClosureMissing,
    LabelMismatch,
    NonScalarDiscrepancy,
    RelationsFailProjectively,
)
from .matrices import Mat, Subspace, contragredient, eigenspaces_finite_order, kronecker


@dataclass(frozen=True)
class Relation:
    """A word in generator labels with a prescribed target.

    word: tuple of (label, exponent) pairs.
    target: "identity", "scalar", or ("central", name) for a named central
    element of the group.
    """

    word: tuple
    target: object = "identity"


class MatrixGroup:
    """Group of invertible matrices given by labeled generators.

    Closure is computed on demand and cached; elements are stored with one
    defining word (a tuple of generator labels)."""

    def __init__(self, generators, named=None):
        gens = []
        seen = set()
        for label, m in generators:
            if label in seen:
                raise ValueError(f"duplicate generator label {label!r}")
            seen.add(label)
            if not isinstance(m, Mat):
                m = Mat(m)
            gens.append((label, m))
        if not gens:
            raise ValueError("need at least one generator")
        n = gens[0][1].rows
        for label, m in gens:
            if m.rows != m.cols or m.rows != n:
                raise ValueError("generators must be square of equal size")
            m.inverse()  # raises Singular if not invertible
        self.dimension = n
        self.generators = tuple(gens)
        self.named = dict(named or {})
        self._closure = None  # dict key -> (Mat, word)
        self._closure_cap = None

    def generator(self, label) -> Mat:
        for lab, m in self.generators:
            if lab == label:
                return m
        if label in self.named:
            return self.named[label]
        raise LabelMismatch(f"unknown generator label {label!r}")

    @property
    def labels(self):
        return tuple(lab for lab, _ in self.generators)

    def word_value(self, word) -> Mat:
        """Evaluate a word given as (label, exponent) pairs."""
        result = Mat.identity(self.dimension)
        for label, exp in word:
            result = result * (self.generator(label) ** exp)
        return result

    def has_closure(self):
        return self._closure is not None

    @property
    def elements(self):
        if self._closure is None:
            raise ClosureMissing("call closure() first")
        return [m for m, _ in self._closure.values()]

    @property
    def element_words(self):
        if self._closure is None:
            raise ClosureMissing("call closure() first")
        return list(self._closure.values())

    def order(self):
        if self._closure is None:
            raise ClosureMissing("call closure() first")
        return len(self._closure)


def closure(group: MatrixGroup, cap: int = 10000):
    """Enumerate the group by breadth-first products of generators.

    Returns the element list; each element is retained inside the group with
    a shortest defining word."""
    if group._closure is not None and group._closure_cap == cap:
        return group.elements
    ident = Mat.identity(group.dimension)
    found = {ident.key(): (ident, ())}
    frontier = [(ident, ())]
    while frontier:
        nxt = []
        for m, word in frontier:
            for label, g in group.generators:
                prod = m * g
                k = prod.key()
                if k not in found:
                    if len(found) >= cap:
                        raise CapExceeded(f"closure exceeds cap {cap}")
                    entry = (prod, word + (label,))
                    found[k] = entry
                    nxt.append(entry)
        frontier = nxt
    group._closure = found
    group._closure_cap = cap
    return group.elements


@dataclass(frozen=True)
class RelationReport:
    relation: Relation
    holds: bool
    scalar: object  # CycNum discrepancy in up_to_scalar mode, else None
    value: Mat  # word value times target inverse


def _target_matrix(group: MatrixGroup, target):
    n = group.dimension
    if target == "identity" or target == "scalar":
        return Mat.identity(n)
    if isinstance(target, tuple) and len(target) == 2 and target[0] == "central":
        name = target[1]
        if name not in group.named:
            raise LabelMismatch(f"no named central element {name!r}")
        return group.named[name]
    raise ValueError(f"bad relation target {target!r}")


def verify_relations(group: MatrixGroup, relations, mode: str = "exact"):
    """Check each relation, reporting the exact discrepancy.

    In exact mode a relation holds when word = target on the nose.  In
    up_to_scalar mode the discrepancy must be a scalar matrix (reported);
    a nonscalar discrepancy raises NonScalarDiscrepancy.
    """
    if mode not in ("exact", "up_to_scalar"):
        raise ValueError("mode must be 'exact' or 'up_to_scalar'")
    reports = []
    for rel in relations:
        value = group.word_value(rel.word)
        disc = value * _target_matrix(group, rel.target).inverse()
        c = disc.is_scalar()
        if rel.target == "scalar":
            if c is None:
                raise NonScalarDiscrepancy(
                    f"word {rel.word} is not scalar: {disc!r}"
                )
            reports.append(RelationReport(rel, True, c, disc))
            continue
        if mode == "exact":
            reports.append(RelationReport(rel, disc.is_identity(), c, disc))
        else:
            if c is None:
                raise NonScalarDiscrepancy(
                    f"discrepancy of {rel.word} is not scalar: {disc!r}"
                )
            reports.append(RelationReport(rel, c.is_one(), c, disc))
    return reports


@dataclass(frozen=True)
class FixedLocus:
    """Union of projective linear subspaces, given by maximal components."""

    components: tuple  # of Subspace
    characters: tuple  # matching tuple of eigenvalue tuples, one per generator

    def is_empty(self):
        return not self.components

    def dims(self):
        return tuple(s.dim - 1 for s in self.components)  # projective dims


def projective_fixed_locus(group: MatrixGroup, cap: int = 360) -> FixedLocus:
    """Points of P^{n-1} fixed by every generator.

    Iterates generators, refining a list of (subspace, character) pairs by
    intersecting with each eigenspace of the next generator.
    """
    current = [(Subspace.full(group.dimension), ())]
    for _, g in group.generators:
        eig = eigenspaces_finite_order(g, cap)
        refined = []
        for space, char in current:
            for lam, espace in eig:
                meet = space.intersect(espace)
                if meet.dim:
                    refined.append((meet, char + (lam,)))
        current = refined
    # drop components contained in others (distinct characters can still nest
    # when an earlier scalar ambiguity splits one space)
    maximal = []
    for i, (s, ch) in enumerate(current):
        if any(
            j != i and other.contains_subspace(s) and other.dim > s.dim
            for j, (other, _) in enumerate(current)
        ):
            continue
        if any(s == t for t, _ in maximal):
            continue
        maximal.append((s, ch))
    maximal.sort(key=lambda pair: (-pair[0].dim, pair[0].__hash__() & 0xFFFF))
    return FixedLocus(
        tuple(s for s, _ in maximal), tuple(ch for _, ch in maximal)
    )


def scalar_lift_search(group: MatrixGroup, relations, scalar_order_bound: int):
    """Search for scalar rescalings of the generators satisfying all
    relations exactly.

    Rescaling generator i by c_i multiplies the value of a relation word by
    c_i raised to the exponent sum of that generator, since scalars are
    central.  The search runs over all tuples of M-th roots of unity with
    M = scalar_order_bound and is therefore exhaustive for that scalar
    group.

    Returns {"lift": {label: scalar}} on success, otherwise
    {"obstruction": True, "tested": count, "scalar_order": M}.
    """
    reports = []
    for rel in relations:
        try:
            reports.extend(verify_relations(group, [rel], mode="up_to_scalar"))
        except NonScalarDiscrepancy as exc:
            raise RelationsFailProjectively(str(exc)) from exc
    labels = group.labels
    exponent_sums = []
    for rel in relations:
        sums = {lab: 0 for lab in labels}
        for lab, exp in rel.word:
            if lab in sums:
                sums[lab] += exp
        exponent_sums.append(tuple(sums[lab] for lab in labels))
    m = scalar_order_bound
    roots = [zeta(m, k) for k in range(m)]
    tested = 0
    for combo in product(range(m), repeat=len(labels)):
        tested += 1
        ok = True
        for rep, sums in zip(reports, exponent_sums):
            if rep.relation.target == "scalar":
                continue
            total = rep.scalar
            for ki, e in zip(combo, sums):
                if e % m:
                    total = total * roots[(ki * e) % m]
            if not total.is_one():
                ok = False
                break
        if ok:
            lift = {lab: roots[ki] for lab, ki in zip(labels, combo)}
            return {"lift": lift, "tested": tested, "scalar_order": m}
    return {"obstruction": True, "tested": tested, "scalar_order": m}


def rescaled_group(group: MatrixGroup, scalars) -> MatrixGroup:
    """The group with each generator multiplied by its scalar from a lift."""
    gens = [
        (lab, m * CycNum._coerce(scalars.get(lab, 1)))
        for lab, m in group.generators
    ]
    return MatrixGroup(gens, named=group.named)


def tensor_rep(a: MatrixGroup, b: MatrixGroup) -> MatrixGroup:
    """Generator-wise Kronecker product; generators are paired by label."""
    if set(a.labels) != set(b.labels):
        raise LabelMismatch(
            f"generator labels differ: {a.labels} vs {b.labels}"
        )
    gens = [(lab, kronecker(m, b.generator(lab))) for lab, m in a.generators]
    named = {
        name: kronecker(m, b.named[name])
        for name, m in a.named.items()
        if name in b.named
    }
    return MatrixGroup(gens, named=named)


def contragredient_group(group: MatrixGroup) -> MatrixGroup:
    gens = [(lab, contragredient(m)) for lab, m in group.generators]
    named = {name: contragredient(m) for name, m in group.named.items()}
    return MatrixGroup(gens, named=named)


def center(group: MatrixGroup):
    """Elements of the (computed) closure commuting with every generator."""
    if group._closure is None:
        raise ClosureMissing("compute closure first")
    out = []
    for m in group.elements:
        if all(m * g == g * m for _, g in group.generators):
            out.append(m)
    return out
