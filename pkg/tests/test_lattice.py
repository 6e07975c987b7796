import itertools
import math
from fractions import Fraction

import numpy
import pytest


def _random_full_rank(rng, low=-5, high=5, max_rows=5):
    from toricres import lattice

    while True:
        n = rng.randint(1, max_rows)
        k = rng.randint(1, n)
        columns = [[rng.randint(low, high) for _ in range(n)] for _ in range(k)]
        matrix = lattice.as_matrix(columns)
        if lattice.maximal_minors_gcd(matrix):
            return matrix


def test_primitive_decompose():
    from toricres import lattice

    assert lattice.primitive_decompose((2, 4, 6)) == (2, (1, 2, 3))
    assert lattice.primitive_decompose((1, 1, 0)) == (1, (1, 1, 0))
    assert lattice.primitive_decompose((0, -3)) == (3, (0, -1))


def test_primitive_decompose_zero():
    from toricres import lattice
    from toricres.errors import LatticeError

    with pytest.raises(LatticeError, match="cannot take primitive of zero"):
        lattice.primitive_decompose((0, 0, 0))


def test_primitive_decompose_big_integers():
    from toricres import lattice

    big = 2**80
    d, p = lattice.primitive_decompose((3 * big, 5 * big))
    assert d == big
    assert p == (3, 5)


def test_as_matrix_columns():
    from toricres import lattice

    matrix = lattice.as_matrix([(1, 2, 0), (1, 0, 0)])
    assert matrix.shape == (3, 2)
    assert matrix[1, 0] == 2
    assert matrix[0, 1] == 1


def test_as_matrix_rejects_floats():
    from toricres import lattice
    from toricres.errors import LatticeError

    with pytest.raises(LatticeError):
        lattice.as_matrix([(1.5, 0)])


def test_smith_normal_form_identity():
    from toricres import lattice

    eye = lattice.as_matrix([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    U, D, V = lattice.smith_normal_form(eye)
    assert (D == eye).all()
    assert (U == eye).all()
    assert (V == eye).all()


def test_smith_normal_form_example():
    from toricres import lattice

    M = lattice.as_matrix([(1, 2, 0), (1, 0, 0)])
    U, D, V = lattice.smith_normal_form(M)
    assert (U.dot(M).dot(V) == D).all()
    assert [D[0, 0], D[1, 1]] == [1, 2]
    assert D[2, 0] == 0 and D[0, 1] == 0 and D[2, 1] == 0


def test_smith_normal_form_zero():
    from toricres import lattice

    M = lattice.as_matrix([(0, 0), (0, 0)])
    U, D, V = lattice.smith_normal_form(M)
    assert not D.any()
    assert abs(lattice.determinant(U)) == 1
    assert abs(lattice.determinant(V)) == 1


def test_smith_normal_form_properties(rng):
    from toricres import lattice

    for _ in range(200):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        M = lattice.as_matrix([[rng.randint(-6, 6) for _ in range(rows)] for _ in range(cols)])
        U, D, V = lattice.smith_normal_form(M)
        assert (U.dot(M).dot(V) == D).all()
        assert abs(lattice.determinant(U)) == 1
        assert abs(lattice.determinant(V)) == 1
        diagonal = [D[i, i] for i in range(min(D.shape))]
        for i, j in itertools.product(range(D.shape[0]), range(D.shape[1])):
            if i != j:
                assert D[i, j] == 0
        nonzero = [d for d in diagonal if d]
        assert all(d > 0 for d in nonzero)
        assert diagonal[: len(nonzero)] == nonzero
        for a, b in zip(nonzero, nonzero[1:]):
            assert b % a == 0


def test_smith_normal_form_deterministic():
    from toricres import lattice

    M = lattice.as_matrix([(4, 6, -2), (2, 8, 10), (0, 3, 9)])
    first = lattice.smith_normal_form(M)
    second = lattice.smith_normal_form(M)
    for a, b in zip(first, second):
        assert (a == b).all()


def test_determinant():
    from toricres import lattice

    assert lattice.determinant(lattice.as_matrix([(1, 0, 0), (1, 2, 0), (0, 0, 1)])) == 2
    assert lattice.determinant(lattice.as_matrix([(0, 1), (1, 0)])) == -1
    assert lattice.determinant(lattice.as_matrix([(1, 2), (2, 4)])) == 0
    assert lattice.determinant(lattice.as_matrix([(2, 0, 1), (1, 3, 2), (1, 1, 2)])) == 6


def test_saturation_index_examples():
    from toricres import lattice

    assert lattice.saturation_index(lattice.as_matrix([(1, 2, 0), (1, 0, 0)])) == 2
    assert lattice.saturation_index(lattice.as_matrix([(1, 0, 0), (0, 1, 0), (0, 0, 1)])) == 1
    assert lattice.saturation_index(lattice.as_matrix([(1, 0, 0), (1, 2, 0), (0, 0, 1)])) == 2


def test_saturation_index_dependent():
    from toricres import lattice
    from toricres.errors import LatticeError

    with pytest.raises(LatticeError, match="columns not independent"):
        lattice.saturation_index(lattice.as_matrix([(1, 2, 0), (2, 4, 0)]))


def test_saturation_index_square_is_determinant(rng):
    from toricres import lattice

    for _ in range(100):
        n = rng.randint(1, 4)
        M = lattice.as_matrix([[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)])
        det = lattice.determinant(M)
        if det:
            assert lattice.saturation_index(M) == abs(det)


def _parallelepiped_points(M, denominator, limit=200_000):
    """Points c of (1/denominator) Z^k in [0, 1)^k with M c integral, found by scanning the grid."""
    _, k = M.shape
    if denominator**k > limit:
        return None
    grid = numpy.indices((denominator,) * k).reshape(k, -1)
    integral = ((M.astype(numpy.int64) @ grid) % denominator == 0).all(axis=0)
    return sorted(tuple(Fraction(int(x), denominator) for x in column) for column in grid[:, integral].T)


def test_saturation_index_cross_check(rng):
    from toricres import lattice

    scanned = 0
    for _ in range(1000):
        M = _random_full_rank(rng)
        index = lattice.saturation_index(M)
        assert index == lattice.maximal_minors_gcd(M)
        assert index == math.prod(lattice.invariant_factors(M))
        # every parallelepiped point has coordinates in (1/index) Z
        points = _parallelepiped_points(M, index)
        if points is None:
            continue
        scanned += 1
        assert len(points) == index
        assert lattice.coset_representatives(M) == points
    assert scanned >= 500


def test_coset_representatives_examples():
    from toricres import lattice

    M = lattice.as_matrix([(1, 2, 0), (1, 0, 0)])
    assert lattice.coset_representatives(M) == [(0, 0), (Fraction(1, 2), Fraction(1, 2))]

    eye = lattice.as_matrix([(1, 0), (0, 1)])
    assert lattice.coset_representatives(eye) == [(0, 0)]

    assert len(lattice.coset_representatives(lattice.as_matrix([(1, 3, 0), (1, 0, 0)]))) == 3


def test_coset_representatives_are_integral(rng):
    from toricres import lattice

    for _ in range(200):
        M = _random_full_rank(rng, -3, 3, 4)
        representatives = lattice.coset_representatives(M)
        assert representatives == sorted(set(representatives))
        assert tuple(0 for _ in range(M.shape[1])) in representatives
        for c in representatives:
            assert all(0 <= x < 1 for x in c)
            assert all(x.denominator == 1 for x in lattice.combine(M, c))


def test_coset_representatives_brute_force(rng):
    """Compare with a scan of the grid (1/det) Z^k of a non-singular minor."""
    from toricres import lattice

    for _ in range(300):
        M = _random_full_rank(rng, -4, 4, 5)
        n, k = M.shape
        minors = [abs(lattice.determinant(M[list(rows), :])) for rows in itertools.combinations(range(n), k)]
        expected = _parallelepiped_points(M, min(m for m in minors if m), limit=20_000)
        if expected is not None:
            assert lattice.coset_representatives(M) == expected


def test_interior_representatives():
    from toricres import lattice

    half = Fraction(1, 2)
    assert lattice.interior_representatives(lattice.as_matrix([(1, 2, 0), (1, 0, 0)])) == [(half, half)]
    assert lattice.interior_representatives(lattice.as_matrix([(1, 0, 0), (0, 1, 0)])) == []
    assert lattice.interior_representatives(lattice.as_matrix([(1, 4, 0), (1, 0, 0)])) == [
        (Fraction(1, 4), Fraction(3, 4)),
        (half, half),
        (Fraction(3, 4), Fraction(1, 4)),
    ]


def test_interior_representatives_may_be_empty():
    from toricres import lattice

    # second column is twice a primitive vector, so the non-zero point lies on a boundary
    M = lattice.as_matrix([(1, 0, 0), (0, 2, 0)])
    assert lattice.saturation_index(M) == 2
    assert lattice.interior_representatives(M) == []
    assert lattice.coset_representatives(M) == [(0, 0), (0, Fraction(1, 2))]


def test_combine():
    from toricres import lattice

    M = lattice.as_matrix([(1, 0, 0), (1, 2, 0)])
    assert lattice.combine(M, [Fraction(1, 2), Fraction(1, 2)]) == (1, 1, 0)

    from toricres.errors import LatticeError

    with pytest.raises(LatticeError):
        lattice.combine(M, [1])


def test_integer_kernel_normal_examples():
    from toricres import lattice

    assert lattice.integer_kernel_normal(lattice.as_matrix([(1, 0, 0), (0, 1, 0)])) == (0, 0, 1)
    assert lattice.integer_kernel_normal(lattice.as_matrix([(1, 0, 0), (0, 0, 1)])) == (0, 1, 0)
    assert lattice.integer_kernel_normal(lattice.as_matrix([(1, 1, 0), (1, 1, 1)])) == (1, -1, 0)


def test_integer_kernel_normal_rank_deficient():
    from toricres import lattice
    from toricres.errors import LatticeError

    with pytest.raises(LatticeError):
        lattice.integer_kernel_normal(lattice.as_matrix([(1, 1, 0), (2, 2, 0)]))


def test_integer_kernel_normal_properties(rng):
    from toricres import lattice

    checked = 0
    while checked < 200:
        size = rng.randint(2, 5)
        columns = [[rng.randint(-5, 5) for _ in range(size)] for _ in range(size - 1)]
        M = lattice.as_matrix(columns)
        if lattice.rank(M) != size - 1:
            continue
        normal = lattice.integer_kernel_normal(M)
        assert lattice.is_primitive(normal)
        assert next(x for x in normal if x) > 0
        for column in columns:
            assert lattice.dot(normal, column) == 0
        checked += 1
