"""Dense exact matrices and vectors over a FieldSpec.

Rows and columns are indexed 0..d.  Matrices and vectors are immutable;
all operations return fresh objects and are safe to share between threads.
Includes the shape predicates (tridiagonal / Hessenberg / circular
Hessenberg), primitive idempotents via the Lagrange product, and a
brute-force eigenvalue scan for finite fields.
"""

from __future__ import annotations

from enum import Enum

from .errors import (
    DimensionMismatchError,
    MixedFieldsError,
    NotMultiplicityFreeError,
    RepeatedEigenvalueError,
    SingularError,
    UnsupportedFieldError,
)
from .fields import FieldElement, FieldSpec

BRUTEFORCE_FIELD_CAP = 1 << 16


class Vector:
    __slots__ = ("spec", "n", "payloads")

    def __init__(self, spec: FieldSpec, payloads):
        self.spec = spec
        self.payloads = tuple(payloads)
        self.n = len(self.payloads)

    @classmethod
    def from_elements(cls, spec: FieldSpec, elems) -> "Vector":
        return cls(spec, (spec.element(e).payload for e in elems))

    @classmethod
    def unit(cls, spec: FieldSpec, n: int, k: int) -> "Vector":
        return cls(spec, (spec.one if i == k else spec.zero for i in range(n)))

    @classmethod
    def zero(cls, spec: FieldSpec, n: int) -> "Vector":
        return cls(spec, (spec.zero,) * n)

    def entry(self, i: int) -> FieldElement:
        return FieldElement(self.spec, self.payloads[i])

    def entries(self):
        return [FieldElement(self.spec, p) for p in self.payloads]

    def is_zero(self) -> bool:
        return all(self.spec.is_zero(p) for p in self.payloads)

    def _check(self, other: "Vector"):
        if self.spec != other.spec:
            raise MixedFieldsError("vectors over different fields")
        if self.n != other.n:
            raise DimensionMismatchError(f"lengths {self.n} vs {other.n}")

    def __add__(self, other: "Vector") -> "Vector":
        self._check(other)
        s = self.spec
        return Vector(s, (s.add(a, b) for a, b in zip(self.payloads, other.payloads)))

    def __sub__(self, other: "Vector") -> "Vector":
        self._check(other)
        s = self.spec
        return Vector(s, (s.sub(a, b) for a, b in zip(self.payloads, other.payloads)))

    def scale(self, c) -> "Vector":
        s = self.spec
        cp = s.element(c).payload
        return Vector(s, (s.mul(cp, p) for p in self.payloads))

    def __eq__(self, other):
        return (
            isinstance(other, Vector)
            and self.spec == other.spec
            and self.payloads == other.payloads
        )

    def __hash__(self):
        return hash((self.spec, self.payloads))

    def __repr__(self):
        return "(" + ", ".join(self.spec.render(p) for p in self.payloads) + ")"

    def to_json(self) -> list[str]:
        return [self.spec.render(p) for p in self.payloads]


class Matrix:
    __slots__ = ("spec", "nrows", "ncols", "rows")

    def __init__(self, spec: FieldSpec, rows):
        self.spec = spec
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise DimensionMismatchError("ragged rows")

    # --- constructors -----------------------------------------------------
    @classmethod
    def from_elements(cls, spec: FieldSpec, grid) -> "Matrix":
        return cls(spec, ((spec.element(e).payload for e in row) for row in grid))

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> "Matrix":
        return cls(
            spec,
            ((spec.one if i == j else spec.zero for j in range(n)) for i in range(n)),
        )

    @classmethod
    def zero(cls, spec: FieldSpec, n: int, m: int | None = None) -> "Matrix":
        m = n if m is None else m
        return cls(spec, ((spec.zero,) * m for _ in range(n)))

    @classmethod
    def diagonal(cls, spec: FieldSpec, diag) -> "Matrix":
        ps = [spec.element(e).payload for e in diag]
        n = len(ps)
        return cls(
            spec,
            ((ps[i] if i == j else spec.zero for j in range(n)) for i in range(n)),
        )

    @classmethod
    def reversal(cls, spec: FieldSpec, n: int) -> "Matrix":
        """Anti-diagonal permutation matrix (its own inverse)."""
        return cls(
            spec,
            (
                (spec.one if i + j == n - 1 else spec.zero for j in range(n))
                for i in range(n)
            ),
        )

    @classmethod
    def from_columns(cls, columns: list[Vector]) -> "Matrix":
        spec = columns[0].spec
        n = columns[0].n
        return cls(spec, ((c.payloads[i] for c in columns) for i in range(n)))

    # --- accessors ----------------------------------------------------------
    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.spec, self.rows[i][j])

    def column(self, j: int) -> Vector:
        return Vector(self.spec, (r[j] for r in self.rows))

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_zero(self) -> bool:
        s = self.spec
        return all(s.is_zero(x) for r in self.rows for x in r)

    def trace(self) -> FieldElement:
        s = self.spec
        acc = s.zero
        for i in range(self.nrows):
            acc = s.add(acc, self.rows[i][i])
        return FieldElement(s, acc)

    def transpose(self) -> "Matrix":
        return Matrix(self.spec, zip(*self.rows))

    # --- arithmetic -----------------------------------------------------------
    def _check(self, other: "Matrix", same_shape: bool):
        if self.spec != other.spec:
            raise MixedFieldsError("matrices over different fields")
        if same_shape and (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatchError(
                f"{self.nrows}x{self.ncols} vs {other.nrows}x{other.ncols}"
            )

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other, True)
        s = self.spec
        return Matrix(
            s,
            (
                (s.add(a, b) for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            ),
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other, True)
        s = self.spec
        return Matrix(
            s,
            (
                (s.sub(a, b) for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            ),
        )

    def __neg__(self) -> "Matrix":
        s = self.spec
        return Matrix(s, ((s.neg(a) for a in r) for r in self.rows))

    def __mul__(self, other):
        if isinstance(other, Matrix):
            self._check(other, False)
            if self.ncols != other.nrows:
                raise DimensionMismatchError(
                    f"{self.nrows}x{self.ncols} * {other.nrows}x{other.ncols}"
                )
            s = self.spec
            cols = list(zip(*other.rows))
            return Matrix(s, ((s.dot(r, c) for c in cols) for r in self.rows))
        if isinstance(other, Vector):
            if self.spec != other.spec:
                raise MixedFieldsError("matrix and vector over different fields")
            if self.ncols != other.n:
                raise DimensionMismatchError("matrix-vector size mismatch")
            s = self.spec
            return Vector(s, (s.dot(r, other.payloads) for r in self.rows))
        # scalar
        s = self.spec
        c = s.element(other).payload
        return Matrix(s, ((s.mul(c, a) for a in r) for r in self.rows))

    def __rmul__(self, other):
        # scalar * matrix (scalars commute with everything here)
        return self.__mul__(other)

    def scale(self, c) -> "Matrix":
        return self.__mul__(c)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.spec == other.spec
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.spec, self.rows))

    def __repr__(self):
        body = "; ".join(
            " ".join(self.spec.render(x) for x in r) for r in self.rows
        )
        return f"[{body}]"

    def pretty(self) -> str:
        cells = [[self.spec.render(x) for x in r] for r in self.rows]
        widths = [max(len(cells[i][j]) for i in range(self.nrows)) for j in range(self.ncols)]
        lines = []
        for r in cells:
            lines.append("[ " + "  ".join(c.rjust(w) for c, w in zip(r, widths)) + " ]")
        return "\n".join(lines)

    # --- JSON -----------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "field": self.spec.to_json(),
            "rows": self.nrows,
            "cols": self.ncols,
            "entries": [[self.spec.render(x) for x in r] for r in self.rows],
        }

    @classmethod
    def from_json(cls, d: dict) -> "Matrix":
        from .fields import field_from_json

        spec = field_from_json(d["field"])
        m = cls(spec, ((spec.parse(x) for x in row) for row in d["entries"]))
        if (m.nrows, m.ncols) != (d["rows"], d["cols"]):
            raise DimensionMismatchError("matrix JSON shape mismatch")
        return m


def commutator(a: Matrix, b: Matrix) -> Matrix:
    """[a, b] = ab - ba."""
    return a * b - b * a


def matrix_inverse(a: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination.

    Rational payloads stay reduced automatically, which bounds intermediate
    growth; finite-field payloads are already canonical residues.
    """
    if not a.is_square():
        raise DimensionMismatchError("inverse of a non-square matrix")
    s = a.spec
    n = a.nrows
    m = [list(r) for r in a.rows]
    inv = [
        [s.one if i == j else s.zero for j in range(n)] for i in range(n)
    ]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not s.is_zero(m[r][col]):
                piv = r
                break
        if piv is None:
            raise SingularError("matrix is singular")
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            inv[col], inv[piv] = inv[piv], inv[col]
        c = s.inv(m[col][col])
        m[col] = [s.mul(c, x) for x in m[col]]
        inv[col] = [s.mul(c, x) for x in inv[col]]
        for r in range(n):
            if r == col or s.is_zero(m[r][col]):
                continue
            f = m[r][col]
            m[r] = [s.sub(x, s.mul(f, y)) for x, y in zip(m[r], m[col])]
            inv[r] = [s.sub(x, s.mul(f, y)) for x, y in zip(inv[r], inv[col])]
    return Matrix(s, inv)


def determinant(a: Matrix) -> FieldElement:
    if not a.is_square():
        raise DimensionMismatchError("determinant of a non-square matrix")
    s = a.spec
    n = a.nrows
    m = [list(r) for r in a.rows]
    det = s.one
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not s.is_zero(m[r][col]):
                piv = r
                break
        if piv is None:
            return FieldElement(s, s.zero)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = s.neg(det)
        det = s.mul(det, m[col][col])
        c = s.inv(m[col][col])
        for r in range(col + 1, n):
            if s.is_zero(m[r][col]):
                continue
            f = s.mul(m[r][col], c)
            m[r] = [s.sub(x, s.mul(f, y)) for x, y in zip(m[r], m[col])]
    return FieldElement(s, det)


def rank(a: Matrix) -> int:
    s = a.spec
    m = [list(r) for r in a.rows]
    nr, nc = a.nrows, a.ncols
    rnk = 0
    for col in range(nc):
        piv = None
        for r in range(rnk, nr):
            if not s.is_zero(m[r][col]):
                piv = r
                break
        if piv is None:
            continue
        m[rnk], m[piv] = m[piv], m[rnk]
        c = s.inv(m[rnk][col])
        m[rnk] = [s.mul(c, x) for x in m[rnk]]
        for r in range(nr):
            if r == rnk or s.is_zero(m[r][col]):
                continue
            f = m[r][col]
            m[r] = [s.sub(x, s.mul(f, y)) for x, y in zip(m[r], m[rnk])]
        rnk += 1
        if rnk == nr:
            break
    return rnk


def nullspace_basis(a: Matrix) -> list[Vector]:
    """Basis of the right kernel, via reduced row echelon form."""
    s = a.spec
    m = [list(r) for r in a.rows]
    nr, nc = a.nrows, a.ncols
    pivots = []
    row = 0
    for col in range(nc):
        piv = None
        for r in range(row, nr):
            if not s.is_zero(m[r][col]):
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        c = s.inv(m[row][col])
        m[row] = [s.mul(c, x) for x in m[row]]
        for r in range(nr):
            if r == row or s.is_zero(m[r][col]):
                continue
            f = m[r][col]
            m[r] = [s.sub(x, s.mul(f, y)) for x, y in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
        if row == nr:
            break
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fc in free:
        v = [s.zero] * nc
        v[fc] = s.one
        for r, pc in enumerate(pivots):
            v[pc] = s.neg(m[r][fc])
        basis.append(Vector(s, v))
    return basis


# --- shape predicates -----------------------------------------------------

class ShapeClass(Enum):
    DIAGONAL = "Diagonal"
    IRREDUCIBLE_TRIDIAGONAL = "IrreducibleTridiagonal"
    TRIDIAGONAL = "Tridiagonal"
    CIRCULAR_HESSENBERG = "CircularHessenberg"
    HESSENBERG = "Hessenberg"
    GENERAL = "General"


def is_hessenberg(a: Matrix) -> bool:
    """Zero below the subdiagonal AND nonzero on the whole subdiagonal."""
    s = a.spec
    n = a.nrows
    for i in range(n):
        for j in range(n):
            if i - j > 1 and not s.is_zero(a.rows[i][j]):
                return False
    return all(not s.is_zero(a.rows[i + 1][i]) for i in range(n - 1))


def is_circular_hessenberg(a: Matrix) -> bool:
    """Hessenberg, corner (0, d) nonzero, zeros elsewhere above the
    superdiagonal."""
    if not is_hessenberg(a):
        return False
    s = a.spec
    n = a.nrows
    if s.is_zero(a.rows[0][n - 1]):
        return False
    for i in range(n):
        for j in range(n):
            if j - i > 1 and (i, j) != (0, n - 1) and not s.is_zero(a.rows[i][j]):
                return False
    return True


def is_tridiagonal(a: Matrix) -> bool:
    s = a.spec
    n = a.nrows
    return all(
        s.is_zero(a.rows[i][j])
        for i in range(n)
        for j in range(n)
        if abs(i - j) > 1
    )


def is_irreducible_tridiagonal(a: Matrix) -> bool:
    if not is_tridiagonal(a):
        return False
    s = a.spec
    n = a.nrows
    return all(
        not s.is_zero(a.rows[i + 1][i]) and not s.is_zero(a.rows[i][i + 1])
        for i in range(n - 1)
    )


def is_diagonal(a: Matrix) -> bool:
    s = a.spec
    n = a.nrows
    return all(
        s.is_zero(a.rows[i][j]) for i in range(n) for j in range(n) if i != j
    )


def shape_classify(a: Matrix) -> ShapeClass:
    """Most specific shape class; total on square matrices of size >= 2."""
    if not a.is_square() or a.nrows < 2:
        raise DimensionMismatchError("shape classification needs square size >= 2")
    if is_diagonal(a):
        return ShapeClass.DIAGONAL
    if is_irreducible_tridiagonal(a):
        return ShapeClass.IRREDUCIBLE_TRIDIAGONAL
    if is_tridiagonal(a):
        return ShapeClass.TRIDIAGONAL
    if is_circular_hessenberg(a):
        return ShapeClass.CIRCULAR_HESSENBERG
    if is_hessenberg(a):
        return ShapeClass.HESSENBERG
    return ShapeClass.GENERAL


# --- spectral machinery --------------------------------------------------------

def primitive_idempotents(a: Matrix, eigenvalues) -> list[Matrix]:
    """Spectral projectors E_i = prod_{j != i} (a - theta_j I)/(theta_i - theta_j).

    Requires a multiplicity-free split spectrum: the eigenvalues are mutually
    distinct, cover the size, and annihilate the matrix as prod (a - theta_j I).
    The identities E_i E_j = delta_ij E_i, sum E_i = I, and a E_i = theta_i E_i
    are all verified before returning.
    """
    if not a.is_square():
        raise DimensionMismatchError("idempotents of a non-square matrix")
    s = a.spec
    n = a.nrows
    evs = [s.element(e) for e in eigenvalues]
    if len(evs) != n:
        raise DimensionMismatchError(f"need {n} eigenvalues, got {len(evs)}")
    for i in range(n):
        for j in range(i + 1, n):
            if evs[i] == evs[j]:
                raise RepeatedEigenvalueError(
                    f"eigenvalue {evs[i]} repeated at positions {i}, {j}"
                )
    ident = Matrix.identity(s, n)
    factors = [a - ident.scale(e) for e in evs]
    ann = factors[0]
    for f in factors[1:]:
        ann = ann * f
    if not ann.is_zero():
        raise NotMultiplicityFreeError(
            "matrix is not annihilated by prod (a - theta_j I)"
        )
    out = []
    for i in range(n):
        prod = None
        denom = s.one_element()
        for j in range(n):
            if j == i:
                continue
            prod = factors[j] if prod is None else prod * factors[j]
            denom = denom * (evs[i] - evs[j])
        e_i = prod.scale(denom.inverse())
        out.append(e_i)
    # verify the idempotent algebra exactly
    total = out[0]
    for e in out[1:]:
        total = total + e
    if total != ident:
        raise NotMultiplicityFreeError("sum of idempotents is not the identity")
    for i in range(n):
        if a * out[i] != out[i].scale(evs[i]):
            raise NotMultiplicityFreeError("a E_i != theta_i E_i")
        for j in range(n):
            prod = out[i] * out[j]
            if i == j:
                if prod != out[i]:
                    raise NotMultiplicityFreeError("E_i^2 != E_i")
            elif not prod.is_zero():
                raise NotMultiplicityFreeError("E_i E_j != 0 for i != j")
    return out


def eigenvalues_bruteforce(
    a: Matrix, cap: int = BRUTEFORCE_FIELD_CAP
) -> list[FieldElement] | None:
    """All eigenvalues of a finite-field matrix by scanning the field.

    Returns them in field-enumeration order when the spectrum is split and
    multiplicity-free (count equals the size); returns None otherwise.
    """
    if not a.is_square():
        raise DimensionMismatchError("eigenvalues of a non-square matrix")
    s = a.spec
    if s.order is None:
        raise UnsupportedFieldError(
            "brute-force eigenvalues need a finite field; supply eigenvalues"
        )
    if s.order > cap:
        raise UnsupportedFieldError(f"field order {s.order} exceeds cap {cap}")
    n = a.nrows
    ident = Matrix.identity(s, n)
    found = []
    for lam in s.elements():
        if determinant(a - ident.scale(lam)).is_zero():
            found.append(lam)
            if len(found) > n:
                break
    return found if len(found) == n else None
