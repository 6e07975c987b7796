"""Exact integer linear algebra over Z^n.

Matrices are numpy arrays with ``dtype=object`` holding Python integers, so
entries never overflow and nothing is ever rounded. Column j of a face matrix
is the characteristic vector of the j-th facet containing the face.
"""

import itertools
import math
import operator
from fractions import Fraction
from functools import reduce

import numpy

from .errors import LatticeError

__all__ = [
    "as_matrix",
    "primitive_decompose",
    "is_primitive",
    "smith_normal_form",
    "invariant_factors",
    "rank",
    "determinant",
    "maximal_minors_gcd",
    "saturation_index",
    "coset_representatives",
    "interior_representatives",
    "combine",
    "integer_kernel_normal",
    "dot",
]


def _exact(matrix):
    array = numpy.array(matrix, dtype=object)
    if array.ndim != 2:
        raise LatticeError("expected a two-dimensional integer matrix")
    exact = numpy.empty(array.shape, dtype=object)
    for index, value in numpy.ndenumerate(array):
        try:
            exact[index] = operator.index(value)
        except TypeError:
            raise LatticeError(f"matrix entry {value!r} is not an integer") from None
    return exact


def _identity(size):
    eye = numpy.empty((size, size), dtype=object)
    for index in numpy.ndindex(size, size):
        eye[index] = 1 if index[0] == index[1] else 0
    return eye


def as_matrix(columns):
    """Return the n x k matrix whose j-th column is ``columns[j]``."""
    try:
        columns = [tuple(operator.index(x) for x in column) for column in columns]
    except TypeError:
        raise LatticeError("matrix entries must be integers") from None
    if not columns:
        raise LatticeError("matrix needs at least one column")
    length = len(columns[0])
    if length == 0 or any(len(column) != length for column in columns):
        raise LatticeError("columns must be non-empty and of equal length")
    matrix = numpy.empty((length, len(columns)), dtype=object)
    for j, column in enumerate(columns):
        for i, value in enumerate(column):
            matrix[i, j] = value
    return matrix


def primitive_decompose(vector):
    """Split ``vector`` as d * p with d the positive gcd of its entries.

    :param vector: non-zero integer vector
    :return: tuple ``(d, p)`` with ``p`` primitive

    """
    entries = tuple(operator.index(x) for x in vector)
    if not entries:
        raise LatticeError("cannot take primitive of an empty vector")
    d = reduce(math.gcd, entries, 0)
    if d == 0:
        raise LatticeError("cannot take primitive of zero")
    return d, tuple(x // d for x in entries)


def is_primitive(vector):
    return reduce(math.gcd, (operator.index(x) for x in vector), 0) == 1


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _smallest_pivot(D, t):
    rows, cols = D.shape
    best = None
    for i in range(t, rows):
        for j in range(t, cols):
            value = abs(D[i, j])
            if value and (best is None or value < best[0]):
                best = (value, i, j)
    return None if best is None else best[1:]


def smith_normal_form(matrix):
    """Smith normal form with unimodular transforms.

    Returns ``(U, D, V)`` such that ``U @ M @ V == D``, with D diagonal and
    d_1 | d_2 | ... . The pivot is always the smallest non-zero absolute
    value of the remaining block, ties broken by row then column, so equal
    inputs give equal outputs.

    :param matrix: integer matrix (rows of entries or an object array)

    """
    D = _exact(matrix)
    rows, cols = D.shape
    U = _identity(rows)
    V = _identity(cols)

    for t in range(min(rows, cols)):
        while True:
            pivot = _smallest_pivot(D, t)
            if pivot is None:
                return U, D, V
            i, j = pivot
            if i != t:
                D[[t, i], :] = D[[i, t], :]
                U[[t, i], :] = U[[i, t], :]
            if j != t:
                D[:, [t, j]] = D[:, [j, t]]
                V[:, [t, j]] = V[:, [j, t]]

            p = D[t, t]
            clear = True
            for r in range(t + 1, rows):
                q = D[r, t] // p
                if q:
                    D[r, :] = D[r, :] - q * D[t, :]
                    U[r, :] = U[r, :] - q * U[t, :]
                if D[r, t]:
                    clear = False
            for c in range(t + 1, cols):
                q = D[t, c] // p
                if q:
                    D[:, c] = D[:, c] - q * D[:, t]
                    V[:, c] = V[:, c] - q * V[:, t]
                if D[t, c]:
                    clear = False
            if not clear:
                continue

            # d_t must divide every entry of the remaining block
            offender = next((r for r in range(t + 1, rows) for c in range(t + 1, cols) if D[r, c] % p), None)
            if offender is None:
                break
            D[t, :] = D[t, :] + D[offender, :]
            U[t, :] = U[t, :] + U[offender, :]

        if D[t, t] < 0:
            D[t, :] = -D[t, :]
            U[t, :] = -U[t, :]

    return U, D, V


def invariant_factors(matrix):
    """Non-zero diagonal entries of the Smith normal form, in order."""
    _, D, _ = smith_normal_form(matrix)
    return tuple(D[i, i] for i in range(min(D.shape)) if D[i, i])


def rank(matrix):
    return len(invariant_factors(matrix))


def determinant(matrix):
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    A = [list(row) for row in _exact(matrix).tolist()]
    n = len(A)
    if any(len(row) != n for row in A):
        raise LatticeError("determinant needs a square matrix")
    if n == 0:
        return 1
    sign = 1
    previous = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if A[r][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // previous
        previous = A[k][k]
    return sign * A[n - 1][n - 1]


def maximal_minors_gcd(matrix):
    """gcd of all k x k minors of an n x k matrix (0 if rank < k)."""
    M = _exact(matrix)
    n, k = M.shape
    if k > n:
        return 0
    g = 0
    for rows in itertools.combinations(range(n), k):
        g = math.gcd(g, determinant(M[list(rows), :]))
        if g == 1:
            break
    return g


def _full_column_factors(matrix):
    M = _exact(matrix)
    U, D, V = smith_normal_form(M)
    k = M.shape[1]
    factors = [D[i, i] for i in range(min(D.shape))]
    if len(factors) < k or any(d == 0 for d in factors):
        raise LatticeError("columns not independent")
    return factors, V


def saturation_index(matrix):
    """Index of the column lattice in its saturation, |G_F|.

    Equals the product of the invariant factors and the gcd of the maximal
    minors; it is 1 exactly when the columns span a direct summand.

    """
    factors, _ = _full_column_factors(matrix)
    return reduce(operator.mul, factors, 1)


def coset_representatives(matrix):
    """Coefficient vectors c in [0,1)^k with M.c integral, one per element of G_F.

    The quotient is read off the Smith form: with U M V = D, M.c is integral
    iff y = V^-1 c has d_i * y_i integral, so c = V y for y in the box
    prod (1/d_i) Z / Z.

    """
    factors, V = _full_column_factors(matrix)
    k = len(factors)
    representatives = set()
    for steps in itertools.product(*(range(d) for d in factors)):
        y = [Fraction(s, d) for s, d in zip(steps, factors)]
        c = tuple(sum((V[i, j] * y[j] for j in range(k)), Fraction(0)) % 1 for i in range(k))
        representatives.add(c)
    return sorted(representatives)


def interior_representatives(matrix):
    """Coset representatives with every coordinate in (0,1). May be empty."""
    return [c for c in coset_representatives(matrix) if all(x > 0 for x in c)]


def combine(matrix, coefficients):
    """Exact rational combination M.c as a tuple of Fractions."""
    M = _exact(matrix)
    n, k = M.shape
    coefficients = [Fraction(c) for c in coefficients]
    if len(coefficients) != k:
        raise LatticeError(f"expected {k} coefficients, got {len(coefficients)}")
    return tuple(sum((M[i, j] * coefficients[j] for j in range(k)), Fraction(0)) for i in range(n))


def integer_kernel_normal(matrix):
    """Primitive integer vector orthogonal to every column of an (n+1)-row matrix of rank n.

    The sign is fixed so that the first non-zero entry is positive.

    """
    M = _exact(matrix)
    size = M.shape[0]
    if rank(M) != size - 1:
        raise LatticeError(f"columns must span a hyperplane of Z^{size}")
    _, _, V = smith_normal_form(M.T)
    normal = [V[i, size - 1] for i in range(size)]
    if next(x for x in normal if x) < 0:
        normal = [-x for x in normal]
    return tuple(normal)
