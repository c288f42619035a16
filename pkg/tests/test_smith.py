import random

from twoquadrics.smith import (
    IntMatrix,
    integer_kernel_basis,
    invariant_factors,
    smith_normal_form,
    solve_in_lattice_basis,
)


def random_matrix(rng, rows, cols, lo=-9, hi=9):
    return IntMatrix(
        [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]
    )


def test_snf_reconstruction():
    rng = random.Random(7)
    for _ in range(60):
        m = rng.randint(1, 5)
        n = rng.randint(1, 5)
        a = random_matrix(rng, m, n)
        d, u, v = smith_normal_form(a)
        assert u * a * v == d
        for i in range(min(m, n)):
            assert d.entries[i][i] >= 0
            if i + 1 < min(m, n) and d.entries[i][i]:
                assert d.entries[i + 1][i + 1] % d.entries[i][i] == 0
        for r in range(d.rows):
            for c in range(d.cols):
                if r != c:
                    assert d.entries[r][c] == 0


def test_unimodularity_of_transforms():
    rng = random.Random(11)
    for _ in range(25):
        a = random_matrix(rng, 3, 3)
        _, u, v = smith_normal_form(a)
        assert all(f == 1 for f in invariant_factors(u))
        assert all(f == 1 for f in invariant_factors(v))


def test_invariant_factor_examples():
    assert invariant_factors(IntMatrix([[2, 0], [0, 3]])) == (1, 6)
    assert invariant_factors(IntMatrix([[1, 1], [1, 1]])) == (1, 0)
    assert invariant_factors(IntMatrix([[4]])) == (4,)


def test_kernel_basis():
    a = IntMatrix([[1, 2, 3], [2, 4, 6]])
    basis = integer_kernel_basis(a)
    assert len(basis) == 2
    for b in basis:
        assert all(
            sum(a.entries[i][j] * b[j] for j in range(3)) == 0 for i in range(2)
        )


def test_solve_in_lattice_basis():
    rng = random.Random(3)
    a = IntMatrix([[2, 1, 0], [0, 1, -1]])
    basis = integer_kernel_basis(a)
    for _ in range(20):
        coeffs = [rng.randint(-5, 5) for _ in basis]
        vec = tuple(
            sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(3)
        )
        sol = solve_in_lattice_basis(basis, vec)
        assert sol is not None
        rebuilt = tuple(
            sum(s * b[i] for s, b in zip(sol, basis)) for i in range(3)
        )
        assert rebuilt == vec
    assert solve_in_lattice_basis(basis, (1, 0, 0)) is None


def test_matrix_algebra():
    a = IntMatrix([[1, 2], [3, 4]])
    ident = IntMatrix.identity(2)
    assert a * ident == a
    assert (a - a).entries == ((0, 0), (0, 0))
    assert a**0 == ident
    assert a**2 == a * a
    assert a.transpose().transpose() == a
