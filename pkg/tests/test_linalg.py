"""Exact matrices: arithmetic oracle checks, shapes, spectral machinery."""

import random

import pytest

from circhess import (
    Matrix,
    ShapeClass,
    Vector,
    commutator,
    determinant,
    eigenvalues_bruteforce,
    matrix_inverse,
    prime_field,
    primitive_idempotents,
    rationals,
    shape_classify,
    split_form_build,
)
from circhess.errors import (
    DimensionMismatchError,
    RepeatedEigenvalueError,
    SingularError,
    UnsupportedFieldError,
)


def _random_matrix(spec, n, rng):
    return Matrix.from_elements(
        spec, [[rng.randrange(spec.order) for _ in range(n)] for _ in range(n)]
    )


def _schoolbook(a, b):
    """Independent triple-loop product used as the oracle."""
    s = a.spec
    rows = []
    for i in range(a.nrows):
        row = []
        for j in range(b.ncols):
            acc = s.zero_element()
            for k in range(a.ncols):
                acc = acc + a.entry(i, k) * b.entry(k, j)
            row.append(acc)
        rows.append(row)
    return Matrix.from_elements(s, rows)


def test_matmul_matches_schoolbook_oracle():
    g5 = prime_field(5)
    rng = random.Random(11)
    for _ in range(25):
        a = _random_matrix(g5, 4, rng)
        b = _random_matrix(g5, 4, rng)
        assert a * b == _schoolbook(a, b)


def test_commutator_identity_matrix():
    g5 = prime_field(5)
    rng = random.Random(3)
    ident = Matrix.identity(g5, 4)
    for _ in range(5):
        m = _random_matrix(g5, 4, rng)
        assert commutator(ident, m).is_zero()


def test_commutator_small_example():
    q = rationals()
    d = Matrix.diagonal(q, [1, 2])
    n = Matrix.from_elements(q, [[0, 1], [0, 0]])
    assert commutator(d, n) == Matrix.from_elements(q, [[0, -1], [0, 0]])


def test_dimension_mismatch():
    g5 = prime_field(5)
    a = Matrix.identity(g5, 3)
    b = Matrix.identity(g5, 4)
    with pytest.raises(DimensionMismatchError):
        a * b
    with pytest.raises(DimensionMismatchError):
        a + b


def test_inverse_identity_and_reversal():
    g5 = prime_field(5)
    ident = Matrix.identity(g5, 4)
    z = Matrix.reversal(g5, 4)
    assert matrix_inverse(ident) == ident
    assert z * z == ident
    assert matrix_inverse(z) == z


def test_inverse_random_and_involution():
    g5 = prime_field(5)
    rng = random.Random(4)
    found = 0
    while found < 10:
        m = _random_matrix(g5, 4, rng)
        try:
            inv = matrix_inverse(m)
        except SingularError:
            continue
        found += 1
        assert m * inv == Matrix.identity(g5, 4)
        assert matrix_inverse(inv) == m


def test_singular_raises():
    g5 = prime_field(5)
    with pytest.raises(SingularError):
        matrix_inverse(Matrix.zero(g5, 3))


# --- shape predicates --------------------------------------------------------

def test_shape_examples_from_displays():
    q = rationals()
    circ = Matrix.from_elements(
        q, [[2, 1, 0, 9], [3, 5, 7, 0], [0, 1, 3, 6], [0, 0, 9, 2]]
    )
    assert shape_classify(circ) is ShapeClass.CIRCULAR_HESSENBERG
    tri = Matrix.from_elements(
        q, [[2, 1, 0, 0], [3, 5, 7, 0], [0, 1, 3, 6], [0, 0, 9, 2]]
    )
    assert shape_classify(tri) is ShapeClass.IRREDUCIBLE_TRIDIAGONAL
    assert shape_classify(Matrix.diagonal(q, [1, 2, 3, 4])) is ShapeClass.DIAGONAL
    # reducible tridiagonal: a zero on the superdiagonal
    red = Matrix.from_elements(
        q, [[2, 0, 0, 0], [3, 5, 0, 0], [0, 1, 3, 6], [0, 0, 9, 2]]
    )
    assert shape_classify(red) is ShapeClass.TRIDIAGONAL
    hess = Matrix.from_elements(
        q, [[2, 1, 4, 9], [3, 5, 7, 8], [0, 1, 3, 6], [0, 0, 9, 2]]
    )
    assert shape_classify(hess) is ShapeClass.HESSENBERG
    assert shape_classify(hess.transpose()) is ShapeClass.GENERAL


def _oracle_flags(rows):
    """Independent predicate re-implementation on 0/1 patterns."""
    n = len(rows)
    below_sub_zero = all(
        rows[i][j] == 0 for i in range(n) for j in range(n) if i - j > 1
    )
    sub_nonzero = all(rows[i + 1][i] != 0 for i in range(n - 1))
    hess = below_sub_zero and sub_nonzero
    above_super_zero_except_corner = all(
        rows[i][j] == 0
        for i in range(n)
        for j in range(n)
        if j - i > 1 and (i, j) != (0, n - 1)
    )
    circ = hess and rows[0][n - 1] != 0 and above_super_zero_except_corner
    tri = all(rows[i][j] == 0 for i in range(n) for j in range(n) if abs(i - j) > 1)
    irred = tri and sub_nonzero and all(rows[i][i + 1] != 0 for i in range(n - 1))
    diag = all(rows[i][j] == 0 for i in range(n) for j in range(n) if i != j)
    return diag, irred, tri, circ, hess


def test_shape_classify_exhaustive_gf2_4x4():
    """Every 0/1 pattern of a 4x4 matrix over GF(2): classify agrees with an
    independent predicate oracle and respects the specificity order."""
    g2 = prime_field(2)
    order = [
        ShapeClass.DIAGONAL,
        ShapeClass.IRREDUCIBLE_TRIDIAGONAL,
        ShapeClass.TRIDIAGONAL,
        ShapeClass.CIRCULAR_HESSENBERG,
        ShapeClass.HESSENBERG,
        ShapeClass.GENERAL,
    ]
    for bits in range(1 << 16):
        rows = [[(bits >> (4 * i + j)) & 1 for j in range(4)] for i in range(4)]
        got = shape_classify(Matrix.from_elements(g2, rows))
        diag, irred, tri, circ, hess = _oracle_flags(rows)
        flags = {
            ShapeClass.DIAGONAL: diag,
            ShapeClass.IRREDUCIBLE_TRIDIAGONAL: irred,
            ShapeClass.TRIDIAGONAL: tri,
            ShapeClass.CIRCULAR_HESSENBERG: circ,
            ShapeClass.HESSENBERG: hess,
            ShapeClass.GENERAL: True,
        }
        expected = next(c for c in order if flags[c])
        assert got is expected
        # monotone implications
        if circ:
            assert hess
        if irred:
            assert tri


# --- idempotents ---------------------------------------------------------------

def test_idempotents_diagonal_case():
    g5 = prime_field(5)
    m = Matrix.diagonal(g5, [1, 2, 4, 3])
    es = primitive_idempotents(m, [g5.element(x) for x in (1, 2, 4, 3)])
    for i, e in enumerate(es):
        expected = Matrix.from_elements(
            g5, [[1 if (r == c == i) else 0 for c in range(4)] for r in range(4)]
        )
        assert e == expected


def test_idempotents_split_form(w5_array):
    s = split_form_build(w5_array)
    ident = Matrix.identity(w5_array.spec, 4)
    total = s.E[0] + s.E[1] + s.E[2] + s.E[3]
    assert total == ident
    for e in s.E:
        assert e * e == e


def test_idempotents_repeated_eigenvalue():
    g5 = prime_field(5)
    m = Matrix.diagonal(g5, [1, 1, 2, 3])
    with pytest.raises(RepeatedEigenvalueError):
        primitive_idempotents(m, [g5.element(x) for x in (1, 1, 2, 3)])


# --- brute force eigenvalues -----------------------------------------------------

def test_eigenvalues_split_form(w5_array):
    s = split_form_build(w5_array)
    evs = eigenvalues_bruteforce(s.A)
    assert {e.payload for e in evs} == {1, 2, 3, 4}


def test_eigenvalues_not_split():
    g5 = prime_field(5)
    assert eigenvalues_bruteforce(Matrix.diagonal(g5, [1, 1, 2, 3])) is None


def test_eigenvalues_unsupported_field():
    q = rationals()
    with pytest.raises(UnsupportedFieldError):
        eigenvalues_bruteforce(Matrix.identity(q, 4))


def test_determinant_matches_singularity():
    g5 = prime_field(5)
    rng = random.Random(9)
    for _ in range(20):
        m = _random_matrix(g5, 3, rng)
        det = determinant(m)
        try:
            matrix_inverse(m)
            invertible = True
        except SingularError:
            invertible = False
        assert invertible == (not det.is_zero())


def test_matvec_and_vectors():
    g5 = prime_field(5)
    m = Matrix.from_elements(g5, [[1, 2], [3, 4]])
    v = Vector.from_elements(g5, [1, 1])
    assert (m * v) == Vector.from_elements(g5, [3, 2])
    assert Vector.unit(g5, 3, 1).entries()[1] == g5.one_element()
