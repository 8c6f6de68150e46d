"""Recurrence machinery for eigenvalue data.

A sequence is beta-recurrent when every interior window satisfies

    s_{i-2} - (beta+1) s_{i-1} + (beta+1) s_i - s_{i+1} = 0.

A system is beta-recurrent when its eigenvalue sequence, dual eigenvalue
sequence, and wrap sequence (vartheta) all are; this happens exactly when
the pair satisfies the two tridiagonal commutator relations, which
td_witness evaluates on the actual matrices.  fit_closed_form expresses a
beta-recurrent sequence in the closed form dictated by beta and the field
characteristic, moving to a quadratic extension when q + 1/q = beta has no
root in the field.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import (
    IdentityCheckError,
    NoSuchRootError,
    NotRecurrentAtBetaError,
    NotRecurrentError,
    PreconditionViolatedError,
    ReducibleModulusError,
    SingularBasisError,
    TooShortError,
)
from .fields import (
    FieldElement,
    FieldSpec,
    QuotientExtension,
    Rationals,
    _generator_order,
    quotient_extension,
)
from .linalg import Matrix, Vector, commutator, matrix_inverse
from .systems import CHSystem, ParameterArray


@dataclass(frozen=True)
class VarthetaSequence:
    """The wrap scalars vartheta_0..vartheta_{d+1}; both endpoints are 0."""

    values: tuple

    def __post_init__(self):
        if not self.values[0].is_zero() or not self.values[-1].is_zero():
            raise ValueError("vartheta endpoints must be zero")

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]


def vartheta_from_array(p: ParameterArray) -> VarthetaSequence:
    """vartheta_i = phi_i - (theta*_i - theta*_0)(theta_{d-i+1} - theta_0),
    with forced zero endpoints."""
    d = p.d
    zero = p.spec.zero_element()
    vals = [zero]
    for i in range(1, d + 1):
        vals.append(
            p.phi[i - 1]
            - (p.theta_star[i] - p.theta_star[0]) * (p.theta[d - i + 1] - p.theta[0])
        )
    vals.append(zero)
    return VarthetaSequence(tuple(vals))


def is_beta_recurrent(seq, beta) -> bool:
    """Exact window test over 2 <= i <= len - 2."""
    vals = list(seq.values) if isinstance(seq, VarthetaSequence) else list(seq)
    if len(vals) < 4:
        raise TooShortError("beta-recurrence needs at least 4 terms")
    b1 = beta + 1
    for i in range(2, len(vals) - 1):
        if not (vals[i - 2] - b1 * vals[i - 1] + b1 * vals[i] - vals[i + 1]).is_zero():
            return False
    return True


@dataclass
class RecurrenceStatus:
    recurrent: bool
    betas: list

    def to_json(self) -> dict:
        return {"recurrent": self.recurrent, "betas": [str(b) for b in self.betas]}


def recurrence_status(p: ParameterArray) -> RecurrenceStatus:
    """All beta making theta, theta*, and vartheta simultaneously recurrent.

    Any window of theta pins beta uniquely (consecutive theta differ), so
    the candidate from the first window is cross-checked against every
    window of all three sequences; the result is a singleton or empty.
    """
    th = p.theta
    beta = (th[3] - th[2] + th[1] - th[0]) / (th[2] - th[1])
    vth = vartheta_from_array(p)
    ok = (
        is_beta_recurrent(th, beta)
        and is_beta_recurrent(p.theta_star, beta)
        and is_beta_recurrent(vth, beta)
    )
    return RecurrenceStatus(ok, [beta] if ok else [])


# --- tridiagonal relations -------------------------------------------------

@dataclass
class TridiagonalWitness:
    beta: FieldElement
    gamma: FieldElement
    gamma_star: FieldElement
    rho: FieldElement
    rho_star: FieldElement

    def to_json(self) -> dict:
        return {
            "beta": str(self.beta),
            "gamma": str(self.gamma),
            "gamma_star": str(self.gamma_star),
            "rho": str(self.rho),
            "rho_star": str(self.rho_star),
            "td1_zero": True,
            "td2_zero": True,
        }


def _constant_gamma_rho(theta, beta):
    """gamma = theta_{i-1} - beta theta_i + theta_{i+1} and
    rho = theta_{i-1}^2 - beta theta_{i-1} theta_i + theta_i^2
          - gamma (theta_{i-1} + theta_i),
    each asserted constant over its admissible windows."""
    gammas = {
        (theta[i - 1] - beta * theta[i] + theta[i + 1]).payload
        for i in range(1, len(theta) - 1)
    }
    if len(gammas) != 1:
        raise NotRecurrentAtBetaError("gamma is not constant across windows")
    gamma = FieldElement(theta[0].spec, gammas.pop())
    rhos = {
        (
            theta[i - 1] * theta[i - 1]
            - beta * theta[i - 1] * theta[i]
            + theta[i] * theta[i]
            - gamma * (theta[i - 1] + theta[i])
        ).payload
        for i in range(1, len(theta))
    }
    if len(rhos) != 1:
        raise NotRecurrentAtBetaError("rho is not constant across windows")
    return gamma, FieldElement(theta[0].spec, rhos.pop())


def _td_commutator(x: Matrix, y: Matrix, beta, gamma, rho) -> Matrix:
    inner = x * x * y - (x * y * x).scale(beta) + y * x * x \
        - (x * y + y * x).scale(gamma) - y.scale(rho)
    return commutator(x, inner)


def td_witness(s: CHSystem, beta) -> TridiagonalWitness:
    """Scalars (beta, gamma, gamma*, rho, rho*) making both tridiagonal
    commutator relations vanish, verified exactly on the matrices."""
    if s.params is None:
        raise NotRecurrentAtBetaError("system carries no parameter array")
    beta = s.spec.element(beta)
    status = recurrence_status(s.params)
    if not status.recurrent or beta not in status.betas:
        raise NotRecurrentAtBetaError(f"system is not {beta}-recurrent")
    gamma, rho = _constant_gamma_rho(s.params.theta, beta)
    gamma_star, rho_star = _constant_gamma_rho(s.params.theta_star, beta)
    if not _td_commutator(s.A, s.A_star, beta, gamma, rho).is_zero():
        raise NotRecurrentAtBetaError("first tridiagonal relation is nonzero")
    if not _td_commutator(s.A_star, s.A, beta, gamma_star, rho_star).is_zero():
        raise NotRecurrentAtBetaError("second tridiagonal relation is nonzero")
    return TridiagonalWitness(beta, gamma, gamma_star, rho, rho_star)


# --- closed forms ------------------------------------------------------------

class RecurrenceCase(Enum):
    GENERIC_Q = "GenericQ"
    BETA2 = "Beta2"
    BETA_MINUS2 = "BetaMinus2"
    BETA0_CHAR2 = "Beta0Char2"


def select_case(spec: FieldSpec, beta) -> RecurrenceCase:
    if spec.characteristic == 2:
        return RecurrenceCase.BETA0_CHAR2 if beta.is_zero() else RecurrenceCase.GENERIC_Q
    if beta == 2:
        return RecurrenceCase.BETA2
    if beta == -2:
        return RecurrenceCase.BETA_MINUS2
    return RecurrenceCase.GENERIC_Q


def solve_unit_root(spec: FieldSpec, beta):
    """A root q of x^2 - beta x + 1 (so q + 1/q = beta), together with the
    field it lives in and whether that field is a fresh quadratic extension.

    Finite fields are scanned exhaustively; over the rationals the
    discriminant is tested for being a perfect square; over an extension of
    the rationals the roots are sought among powers of the generator (the
    case that arises for cyclotomic data).  When no root exists in the
    field, the quadratic extension by x^2 - beta x + 1 itself is built.
    """
    one = spec.one_element()

    def is_root(e):
        return (e * e - beta * e + one).is_zero()

    if spec.order is not None:
        for e in spec.elements():
            if is_root(e):
                return e, spec, False
    elif isinstance(spec, Rationals):
        disc = (beta * beta - 4).payload
        if disc >= 0:
            num, den = disc.numerator, disc.denominator
            rn, rd = _isqrt_exact(num), _isqrt_exact(den)
            if rn is not None and rd is not None:
                from fractions import Fraction

                root = spec.element(Fraction(rn, rd))
                q = (beta + root) / 2
                if is_root(q):
                    return q, spec, False
    elif isinstance(spec, QuotientExtension):
        g = spec.generator()
        bound = _generator_order(spec) or 4 * spec.deg + 8
        cand = spec.one_element()
        for _ in range(bound):
            for e in (cand, -cand):
                if is_root(e):
                    return e, spec, False
            cand = cand * g
    try:
        ext = quotient_extension(spec, [spec.one_element(), -beta, spec.one_element()],
                                 gen="r")
    except ReducibleModulusError as e:
        raise NoSuchRootError(
            f"cannot certify the quadratic extension for beta={beta} over {spec}"
        ) from e
    return ext.generator(), ext, True


def _isqrt_exact(n: int):
    import math

    r = math.isqrt(n)
    return r if r * r == n else None


def _binom2_mod4(i: int) -> int:
    return 0 if i % 4 in (0, 1) else 1


def _case_basis(case: RecurrenceCase, spec: FieldSpec, q):
    if case is RecurrenceCase.GENERIC_Q:
        return lambda i: (spec.one_element(), q**i, q**(-i))
    if case is RecurrenceCase.BETA2:
        return lambda i: (
            spec.one_element(),
            spec.element(i),
            spec.element(i * (i - 1) // 2),
        )
    if case is RecurrenceCase.BETA_MINUS2:
        return lambda i: (
            spec.one_element(),
            spec.element((-1) ** i),
            spec.element(i * (-1) ** i),
        )
    return lambda i: (
        spec.one_element(),
        spec.element(i),
        spec.element(_binom2_mod4(i)),
    )


@dataclass
class RecurrenceClosedForm:
    """alpha_1 f1(i) + alpha_2 f2(i) + alpha_3 f3(i) reproducing a
    beta-recurrent sequence exactly; the case fixes the basis functions."""

    case: RecurrenceCase
    alpha: tuple  # (alpha_1, alpha_2, alpha_3) in `spec`
    q: FieldElement | None
    spec: FieldSpec
    lifted: bool  # True when spec is a fresh quadratic extension

    def evaluate(self, i: int) -> FieldElement:
        f1, f2, f3 = _case_basis(self.case, self.spec, self.q)(i)
        return self.alpha[0] * f1 + self.alpha[1] * f2 + self.alpha[2] * f3


def fit_closed_form(seq, beta, q=None) -> RecurrenceClosedForm:
    """Fit the case closed form to a beta-recurrent sequence.

    The coefficients are solved from the first three terms and the fit is
    then checked against every term.  For the generic case a root q of
    x^2 - beta x + 1 is found (or supplied); if none exists in the field the
    sequence is lifted into the quadratic extension.
    """
    vals = list(seq.values) if isinstance(seq, VarthetaSequence) else list(seq)
    if len(vals) < 3:
        raise TooShortError("closed-form fit needs at least 3 terms")
    if len(vals) >= 4 and not is_beta_recurrent(vals, beta):
        raise NotRecurrentError("sequence is not beta-recurrent at this beta")
    spec = vals[0].spec
    case = select_case(spec, spec.element(beta))
    lifted = False
    if case is RecurrenceCase.GENERIC_Q:
        if q is None:
            q, fit_spec, lifted = solve_unit_root(spec, spec.element(beta))
        else:
            fit_spec = q.spec
            lifted = fit_spec != spec
            beta_f = spec.element(beta)
            if lifted:
                beta_f = beta_f.lift(fit_spec)
            if not (q * q - beta_f * q + fit_spec.one_element()).is_zero():
                raise NoSuchRootError("supplied q does not satisfy q + 1/q = beta")
        if lifted:
            vals = [v.lift(fit_spec) for v in vals]
    else:
        q = None
        fit_spec = spec
    basis = _case_basis(case, fit_spec, q)
    rows = [basis(i) for i in range(3)]
    m = Matrix.from_elements(fit_spec, rows)
    try:
        alpha_vec = matrix_inverse(m) * Vector.from_elements(
            fit_spec, [vals[0], vals[1], vals[2]]
        )
    except Exception as e:
        raise SingularBasisError(f"fit basis is singular: {e}") from e
    form = RecurrenceClosedForm(
        case, tuple(alpha_vec.entries()), q, fit_spec, lifted
    )
    for i, v in enumerate(vals):
        if form.evaluate(i) != v:
            raise SingularBasisError(
                f"closed form fails to reproduce term {i}; basis degenerate"
            )
    return form


def recurrent_quotient(seq, beta, i: int, j: int, r: int, s: int) -> FieldElement:
    """(seq_i - seq_j)/(seq_r - seq_s) for i + j = r + s, r != s, with the
    case formula re-derived independently and compared exactly."""
    vals = list(seq.values) if isinstance(seq, VarthetaSequence) else list(seq)
    n = len(vals)
    for k in (i, j, r, s):
        if not 0 <= k < n:
            raise PreconditionViolatedError(f"index {k} out of range 0..{n - 1}")
    if i + j != r + s or r == s:
        raise PreconditionViolatedError("need i + j = r + s and r != s")
    for a in range(n):
        for b in range(a + 1, n):
            if vals[a] == vals[b]:
                raise PreconditionViolatedError("sequence values must be distinct")
    if not is_beta_recurrent(vals, beta):
        raise PreconditionViolatedError("sequence is not beta-recurrent")
    spec = vals[0].spec
    lhs = (vals[i] - vals[j]) / (vals[r] - vals[s])
    case = select_case(spec, spec.element(beta))
    if case is RecurrenceCase.GENERIC_Q:
        q, fit_spec, lifted = solve_unit_root(spec, spec.element(beta))
        rhs = (q**i - q**j) / (q**r - q**s)
        cmp_lhs = lhs.lift(fit_spec) if lifted else lhs
        if rhs != cmp_lhs:
            raise IdentityCheckError("quotient identity failed in the generic case")
        return lhs
    if case is RecurrenceCase.BETA2:
        rhs = spec.element(i - j) / spec.element(r - s)
    elif case is RecurrenceCase.BETA_MINUS2:
        if (i + j) % 2 == 0:
            rhs = spec.element((-1) ** (i + r)) * spec.element(i - j) / spec.element(r - s)
        else:
            rhs = spec.element((-1) ** (i + r))
    else:  # beta = 0 in characteristic 2
        rhs = spec.zero_element() if i == j else spec.one_element()
    if rhs != lhs:
        raise IdentityCheckError("quotient identity failed")
    return lhs
