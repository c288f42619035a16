import random

import pytest

from twoquadrics.cyclo import ONE, ZERO, imaginary_unit, zeta
from twoquadrics.errors import NotFiniteOrder, OrderExceedsCap, Singular
from twoquadrics.matrices import (
    Mat,
    Quadric,
    Subspace,
    contragredient,
    eigenspaces_finite_order,
    kernel,
    kronecker,
    operator_order,
)

i = imaginary_unit()


def test_inverse_and_det():
    m = Mat([[ONE, i], [ZERO, zeta(8)]])
    assert (m * m.inverse()).is_identity()
    assert m.det() == zeta(8)
    with pytest.raises(Singular):
        Mat([[ONE, ONE], [ONE, ONE]]).inverse()


def test_operator_order():
    assert operator_order(Mat.diagonal([zeta(8), 1])).order == 8
    info = operator_order(Mat.diagonal([i, -i]))
    assert info.order == 4 and info.projective_order == 2
    assert info.scalar == -ONE
    with pytest.raises(OrderExceedsCap):
        operator_order(Mat([[ONE, ONE], [ZERO, ONE]]), cap=20)


def random_monomial_conjugate(rng, n=4):
    """A finite-order matrix: monomial with root-of-unity entries,
    conjugated by a random small unimodular integer matrix."""
    perm = list(range(n))
    rng.shuffle(perm)
    mono = [[ZERO] * n for _ in range(n)]
    for j in range(n):
        mono[perm[j]][j] = zeta(12, rng.randrange(12))
    mono = Mat(mono)
    u = Mat.identity(n)
    for _ in range(3):
        a, b = rng.sample(range(n), 2)
        elem = [[ONE if r == c else ZERO for c in range(n)] for r in range(n)]
        elem[a][b] = ONE * rng.choice([1, -1])
        u = u * Mat(elem)
    return u * mono * u.inverse()


def test_eigenspace_completeness_random():
    rng = random.Random(5)
    for _ in range(15):
        m = random_monomial_conjugate(rng)
        spaces = eigenspaces_finite_order(m)
        assert sum(s.dim for _, s in spaces) == 4
        for lam, s in spaces:
            for v in s.basis:
                assert m.apply(v) == tuple(lam * x for x in v)


def test_eigenspaces_rejects_nonsemisimple():
    with pytest.raises(NotFiniteOrder):
        eigenspaces_finite_order(Mat([[ONE, ONE], [ZERO, ONE]]), cap=20)


def test_kernel_and_subspace():
    m = Mat([[ONE, ONE, ZERO], [ZERO, ZERO, ONE]])
    k = kernel(m)
    assert k.dim == 1
    assert k.contains_vector([ONE, -ONE, ZERO])
    full = Subspace.full(3)
    assert full.contains_subspace(k)
    assert k.intersect(full) == k
    other = Subspace(3, [[ONE, ZERO, ZERO], [ZERO, ONE, ZERO]])
    meet = k.intersect(other)
    assert meet.dim == 1


def test_subspace_canonical_equality():
    a = Subspace(3, [[ONE, ONE, ZERO], [ZERO, ONE, ONE]])
    b = Subspace(3, [[ONE, ZERO, -ONE], [ONE, 2 * ONE, ONE]])
    assert a == b
    assert hash(a) == hash(b)


def test_quadric():
    q = Quadric.from_diagonal([1, 1, -1])
    assert q.evaluate([ONE, ZERO, ONE]).is_zero()
    assert q.polar([ONE, ZERO, ZERO], [ZERO, ONE, ZERO]).is_zero()
    plane = Subspace(3, [[ONE, ZERO, ONE], [ZERO, ONE, ZERO]])
    r = q.restrict(plane)
    assert r.gram.entries[0][0].is_zero()
    with pytest.raises(ValueError):
        Quadric(Mat([[ZERO, ONE], [ZERO, ZERO]]))


def test_contragredient_antihomomorphism():
    a = Mat([[ONE, i], [ZERO, ONE]])
    b = Mat([[zeta(8), ZERO], [ONE, ONE]])
    assert contragredient(a * b) == contragredient(a) * contragredient(b)


def test_kronecker_diagonal():
    a = Mat.diagonal([1, 2])
    b = Mat.diagonal([3, 5])
    assert kronecker(a, b) == Mat.diagonal([3, 5, 6, 10])
