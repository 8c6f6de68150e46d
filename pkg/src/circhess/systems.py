"""Circular Hessenberg systems.

A system packages two multiplicity-free matrices A, A* with fixed orderings
of their primitive idempotents.  The axioms say each operator acts in a
circular Hessenberg fashion on the other's eigenspace ordering:

    E_i A* E_j  is  0 if 1 < i - j or 1 < j - i < d,  nonzero if
    i - j = 1 or j - i = d   (and symmetrically with E*_i A E*_j).

The complete isomorphism invariant is the parameter array
(eigenvalue sequence theta, dual eigenvalue sequence theta*, split
sequence phi); split_form_build realizes any valid array as a concrete
system on F^(d+1), and extract_parameter_array inverts it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CorruptIdempotentsError,
    DimensionMismatchError,
    MixedFieldsError,
    NotInE0StarVError,
    UnsupportedFieldError,
    UnverifiedSystemError,
    ZeroVectorError,
)
from .fields import FieldElement, FieldSpec, field_from_json
from .linalg import (
    Matrix,
    Vector,
    eigenvalues_bruteforce,
    matrix_inverse,
    primitive_idempotents,
    rank,
)


@dataclass(frozen=True)
class ParameterArray:
    """(d; theta_0..theta_d; theta*_0..theta*_d; phi_1..phi_d).

    theta and theta* are mutually distinct, every phi_i is nonzero, and
    d >= 3.  Equality of arrays is exactly isomorphism of the systems they
    generate.
    """

    spec: FieldSpec
    d: int
    theta: tuple
    theta_star: tuple
    phi: tuple

    def __post_init__(self):
        d = self.d
        if d < 3:
            raise DimensionMismatchError("diameter d must be >= 3")
        if len(self.theta) != d + 1 or len(self.theta_star) != d + 1:
            raise DimensionMismatchError("theta sequences must have length d + 1")
        if len(self.phi) != d:
            raise DimensionMismatchError("phi must have length d")
        for seq in (self.theta, self.theta_star, self.phi):
            for e in seq:
                if not isinstance(e, FieldElement) or e.spec != self.spec:
                    raise MixedFieldsError("array entries must lie in the stated field")
        for name, seq in (("theta", self.theta), ("theta_star", self.theta_star)):
            seen = set()
            for e in seq:
                if e.payload in seen:
                    raise ValueError(f"{name} values must be mutually distinct")
                seen.add(e.payload)
        if any(e.is_zero() for e in self.phi):
            raise ValueError("split sequence entries must be nonzero")

    @classmethod
    def make(cls, spec: FieldSpec, theta, theta_star, phi) -> "ParameterArray":
        th = tuple(spec.element(x) for x in theta)
        ths = tuple(spec.element(x) for x in theta_star)
        ph = tuple(spec.element(x) for x in phi)
        return cls(spec, len(th) - 1, th, ths, ph)

    def lift(self, ext) -> "ParameterArray":
        """Embed the array into a quotient extension of its field."""
        return ParameterArray(
            ext,
            self.d,
            tuple(e.lift(ext) for e in self.theta),
            tuple(e.lift(ext) for e in self.theta_star),
            tuple(e.lift(ext) for e in self.phi),
        )

    def to_json(self) -> dict:
        return {
            "field": self.spec.to_json(),
            "d": self.d,
            "theta": [str(e) for e in self.theta],
            "theta_star": [str(e) for e in self.theta_star],
            "phi": [str(e) for e in self.phi],
        }

    @classmethod
    def from_json(cls, d: dict) -> "ParameterArray":
        spec = field_from_json(d["field"])
        return cls.make(spec, d["theta"], d["theta_star"], d["phi"])


@dataclass
class SplitDecomposition:
    """Generators of the one-dimensional flag-intersection subspaces."""

    generators: list[Vector]


@dataclass
class VerificationOutcome:
    is_ch: bool
    failures: list  # of (condition, i, j) with condition in {"iv", "v"}

    def to_json(self) -> dict:
        return {
            "is_ch": self.is_ch,
            "failures": [
                {"condition": c, "i": i, "j": j} for (c, i, j) in self.failures
            ],
        }


class CHSystem:
    """A candidate circular Hessenberg system (A; E_0..E_d; A*; E*_0..E*_d).

    The `verified` flag is sticky and set only by verify_ch_axioms; every
    operation that relies on the axioms requires it.
    """

    def __init__(self, spec, d, A, A_star, E, E_star, theta, theta_star, params=None):
        self.spec = spec
        self.d = d
        self.A = A
        self.A_star = A_star
        self.E = tuple(E)
        self.E_star = tuple(E_star)
        self.theta = tuple(theta)
        self.theta_star = tuple(theta_star)
        self.params = params
        self.verified = False

    def require_verified(self, what: str):
        if not self.verified:
            raise UnverifiedSystemError(f"{what} requires a verified system")

    def to_json(self, include_matrices: bool = True) -> dict:
        out = {"parameter_array": self.params.to_json() if self.params else None,
               "verified": self.verified}
        if include_matrices:
            out["A"] = self.A.to_json()
            out["A_star"] = self.A_star.to_json()
        return out


def split_form_build(p: ParameterArray) -> CHSystem:
    """Realize a parameter array as matrices on F^(d+1).

    A is lower bidiagonal with diagonal theta_d, ..., theta_0 and ones on the
    subdiagonal; A* is upper bidiagonal with diagonal theta*_0, ..., theta*_d
    and superdiagonal phi_1, ..., phi_d.  Idempotents are computed in the
    eigenvalue orders theta_0..theta_d and theta*_0..theta*_d (note A's
    diagonal lists theta reversed; E_i still pairs with theta_i).

    The returned system is unverified; run verify_ch_axioms on it.
    """
    s = p.spec
    d = p.d
    n = d + 1
    a_rows = [[s.zero] * n for _ in range(n)]
    b_rows = [[s.zero] * n for _ in range(n)]
    for i in range(n):
        a_rows[i][i] = p.theta[d - i].payload
        b_rows[i][i] = p.theta_star[i].payload
    for i in range(d):
        a_rows[i + 1][i] = s.one
        b_rows[i][i + 1] = p.phi[i].payload
    A = Matrix(s, a_rows)
    A_star = Matrix(s, b_rows)
    E = primitive_idempotents(A, p.theta)
    E_star = primitive_idempotents(A_star, p.theta_star)
    return CHSystem(s, d, A, A_star, E, E_star, p.theta, p.theta_star, params=p)


def _check_idempotent_family(E, ident) -> bool:
    total = None
    for e in E:
        total = e if total is None else total + e
    if total != ident:
        return False
    for i, ei in enumerate(E):
        for j, ej in enumerate(E):
            prod = ei * ej
            if i == j:
                if prod != ei:
                    return False
            elif not prod.is_zero():
                return False
    return True


def verify_ch_axioms(s: CHSystem) -> VerificationOutcome:
    """Evaluate every product E_i A* E_j and E*_i A E*_j and compare the
    zero/nonzero pattern with the circular Hessenberg axioms.

    Sets the system's sticky `verified` flag when the pattern holds.
    """
    ident = Matrix.identity(s.spec, s.d + 1)
    if not _check_idempotent_family(s.E, ident) or not _check_idempotent_family(
        s.E_star, ident
    ):
        raise CorruptIdempotentsError("stored idempotents fail E_i E_j = delta_ij E_i")
    failures = []
    d = s.d
    for cond, family, middle in (("iv", s.E, s.A_star), ("v", s.E_star, s.A)):
        for i in range(d + 1):
            left = family[i] * middle
            for j in range(d + 1):
                prod = left * family[j]
                must_zero = (i - j > 1) or (1 < j - i < d)
                must_nonzero = (i - j == 1) or (j - i == d)
                if must_zero and not prod.is_zero():
                    failures.append((cond, i, j))
                elif must_nonzero and prod.is_zero():
                    failures.append((cond, i, j))
    outcome = VerificationOutcome(not failures, failures)
    if outcome.is_ch:
        s.verified = True
    return outcome


def _proportionality(w: Vector, v: Vector) -> FieldElement:
    """The scalar c with w = c * v, for nonzero v; exact check."""
    if v.is_zero():
        raise ZeroVectorError("proportionality against the zero vector")
    s = v.spec
    c = None
    for a, b in zip(w.payloads, v.payloads):
        if not s.is_zero(b):
            c = s.div(a, b)
            break
    ce = FieldElement(s, c)
    if w != v.scale(ce):
        raise ZeroVectorError("vectors are not proportional")
    return ce


def extract_parameter_array(s: CHSystem, u_star: Vector):
    """Recover the parameter array and the split decomposition from a
    verified system and a seed vector with nonzero E*_0 projection.

    The seed is normalized by projecting through E*_0; the recovered phi is
    independent of the seed choice.
    """
    s.require_verified("parameter array extraction")
    if u_star.is_zero():
        raise ZeroVectorError("seed vector is zero")
    seed = s.E_star[0] * u_star
    if seed.is_zero():
        raise NotInE0StarVError("seed has zero projection onto E*_0 V")
    d = s.d
    ident = Matrix.identity(s.spec, d + 1)
    vs = [seed]
    for i in range(1, d + 1):
        factor = s.A - ident.scale(s.theta[d - i + 1])
        vs.append(factor * vs[-1])
    if rank(Matrix.from_columns(vs)) != d + 1:
        raise ZeroVectorError("split vectors are not independent")
    phi = []
    for i in range(1, d + 1):
        w = (s.A_star - ident.scale(s.theta_star[i])) * vs[i]
        phi.append(_proportionality(w, vs[i - 1]))
    params = ParameterArray(s.spec, d, s.theta, s.theta_star, tuple(phi))
    return params, SplitDecomposition(vs)


def dual_system(s: CHSystem) -> CHSystem:
    """Swap the roles of A and A*.  The dual's parameter array is
    (theta*; theta; phi reversed)."""
    s.require_verified("dual")
    dual_params = None
    if s.params is not None:
        dual_params = ParameterArray(
            s.spec, s.d, s.params.theta_star, s.params.theta, s.params.phi[::-1]
        )
    out = CHSystem(
        s.spec, s.d, s.A_star, s.A, s.E_star, s.E, s.theta_star, s.theta,
        params=dual_params,
    )
    verify_ch_axioms(out)
    return out


def isomorphic(p1: ParameterArray, p2: ParameterArray) -> bool:
    """Systems are isomorphic iff their parameter arrays agree componentwise."""
    if p1.spec != p2.spec:
        raise MixedFieldsError("parameter arrays over different fields")
    if p1.d != p2.d:
        raise DimensionMismatchError("parameter arrays of different diameter")
    return p1.theta == p2.theta and p1.theta_star == p2.theta_star and p1.phi == p2.phi


def isomorphism_witness(s1: CHSystem, s2: CHSystem) -> Matrix | None:
    """An invertible sigma with sigma X sigma^-1 mapping s1's data to s2's,
    or None when the parameter arrays differ."""
    s1.require_verified("isomorphism witness")
    s2.require_verified("isomorphism witness")
    if s1.params is None or s2.params is None or not isomorphic(s1.params, s2.params):
        return None
    seed1 = _default_seed(s1)
    seed2 = _default_seed(s2)
    _, dec1 = extract_parameter_array(s1, seed1)
    _, dec2 = extract_parameter_array(s2, seed2)
    b1 = Matrix.from_columns(dec1.generators)
    b2 = Matrix.from_columns(dec2.generators)
    sigma = b2 * matrix_inverse(b1)
    sigma_inv = matrix_inverse(sigma)
    if sigma * s1.A * sigma_inv != s2.A or sigma * s1.A_star * sigma_inv != s2.A_star:
        return None
    for e1, e2 in zip(s1.E, s2.E):
        if sigma * e1 * sigma_inv != e2:
            return None
    for e1, e2 in zip(s1.E_star, s2.E_star):
        if sigma * e1 * sigma_inv != e2:
            return None
    return sigma


def _default_seed(s: CHSystem) -> Vector:
    """Deterministic nonzero vector in E*_0 V: the first nonzero column of
    E*_0, scaled so its first nonzero coordinate is 1."""
    e = s.E_star[0]
    for j in range(e.ncols):
        col = e.column(j)
        if not col.is_zero():
            sp = s.spec
            for p in col.payloads:
                if not sp.is_zero(p):
                    return col.scale(FieldElement(sp, sp.inv(p)))
    raise CorruptIdempotentsError("E*_0 is the zero matrix")


def cyclic_irreducibility_check(s: CHSystem, w_seed: Vector) -> bool:
    """Close span{w_seed} under A and A*; true iff the closure is everything.

    This is the computational content of the containment of these systems in
    the cyclic tridiagonal world: no proper nonzero invariant subspace.
    """
    s.require_verified("irreducibility check")
    if w_seed.is_zero():
        raise ZeroVectorError("seed vector is zero")
    sp = s.spec
    n = s.d + 1
    basis: list[list] = []  # echelonized rows
    pivots: list[int] = []

    def reduce_insert(vec) -> bool:
        v = list(vec.payloads)
        for row, piv in zip(basis, pivots):
            if not sp.is_zero(v[piv]):
                c = v[piv]
                v = [sp.sub(x, sp.mul(c, y)) for x, y in zip(v, row)]
        for k in range(n):
            if not sp.is_zero(v[k]):
                inv = sp.inv(v[k])
                basis.append([sp.mul(inv, x) for x in v])
                pivots.append(k)
                return True
        return False

    frontier = [w_seed]
    reduce_insert(w_seed)
    while frontier and len(basis) < n:
        nxt = []
        for v in frontier:
            for m in (s.A, s.A_star):
                w = m * v
                if reduce_insert(w):
                    nxt.append(w)
        frontier = nxt
    return len(basis) == n


# --- ingesting raw pairs ---------------------------------------------------

def ingest_pair(A: Matrix, A_star: Matrix) -> CHSystem | None:
    """Build a verified system from two bare matrices over a finite field.

    Eigenvalues come from the brute-force scan.  Admissible idempotent
    orderings are constrained to a cyclic class by the required nonzero
    pattern, so the search walks Hamiltonian cycles of the "maps into"
    graph and tries their rotations and reflections, for each side
    independently.  Returns None when no ordering satisfies the axioms.
    """
    if A.spec != A_star.spec:
        raise MixedFieldsError("pair over different fields")
    if A.spec.order is None:
        raise UnsupportedFieldError("ingest requires a finite field")
    n = A.nrows
    if n != A.ncols or (A_star.nrows, A_star.ncols) != (n, n) or n < 4:
        raise DimensionMismatchError("ingest needs square matrices of size >= 4")
    evs_a = eigenvalues_bruteforce(A)
    evs_b = eigenvalues_bruteforce(A_star)
    if evs_a is None or evs_b is None:
        return None
    order_a = _find_ordering(A, evs_a, A_star)
    if order_a is None:
        return None
    order_b = _find_ordering(A_star, evs_b, A)
    if order_b is None:
        return None
    theta = tuple(evs_a[i] for i in order_a)
    theta_star = tuple(evs_b[i] for i in order_b)
    E = primitive_idempotents(A, theta)
    E_star = primitive_idempotents(A_star, theta_star)
    sys = CHSystem(A.spec, n - 1, A, A_star, E, E_star, theta, theta_star)
    if not verify_ch_axioms(sys).is_ch:
        return None
    params, _ = extract_parameter_array(sys, _default_seed(sys))
    sys.params = params
    return sys


def _find_ordering(M: Matrix, evs, other: Matrix):
    """An ordering of M's idempotents making `other` act in circular
    Hessenberg fashion, or None."""
    n = len(evs)
    d = n - 1
    E = primitive_idempotents(M, evs)
    prods = [[not (E[i] * other * E[j]).is_zero() for j in range(n)] for i in range(n)]
    succ = [[i for i in range(n) if i != j and prods[i][j]] for j in range(n)]
    for cycle in _hamiltonian_cycles(succ, n):
        for ordering in _cycle_orderings(cycle):
            pos = {v: k for k, v in enumerate(ordering)}
            ok = True
            for a in range(n):
                for b in range(n):
                    i, j = pos[a], pos[b]
                    have = prods[a][b]
                    if (i - j > 1) or (1 < j - i < d):
                        ok &= not have
                    elif (i - j == 1) or (j - i == d):
                        ok &= have
                if not ok:
                    break
            if ok:
                return ordering
    return None


def _hamiltonian_cycles(succ, n):
    """Yield every directed Hamiltonian cycle (anchored at vertex 0); the
    vertex count is tiny (d + 1), so backtracking is instant."""
    path = [0]
    used = {0}

    def extend():
        if len(path) == n:
            if 0 in succ[path[-1]]:
                yield list(path)
            return
        for v in succ[path[-1]]:
            if v not in used:
                path.append(v)
                used.add(v)
                yield from extend()
                path.pop()
                used.remove(v)

    yield from extend()


def _cycle_orderings(cycle):
    n = len(cycle)
    for direction in (cycle, cycle[::-1]):
        for r in range(n):
            yield direction[r:] + direction[:r]
