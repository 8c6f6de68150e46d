"""Recurrence windows, tridiagonal witness, closed-form fits, quotients."""

import itertools

import pytest

from circhess import (
    Matrix,
    ParameterArray,
    RecurrenceCase,
    commutator,
    fit_closed_form,
    is_beta_recurrent,
    prime_field,
    rationals,
    recurrence_status,
    recurrent_quotient,
    split_form_build,
    td_witness,
    vartheta_from_array,
    verify_ch_axioms,
)
from circhess.errors import (
    NotRecurrentAtBetaError,
    PreconditionViolatedError,
    TooShortError,
)


def test_vartheta_w5(w5_array):
    vth = vartheta_from_array(w5_array)
    assert [str(v) for v in vth.values] == ["0", "1", "3", "2", "0"]
    assert vth[0].is_zero() and vth[4].is_zero()


def test_vartheta_inverts_to_phi(w5_array):
    """phi_i = vartheta_i + (theta*_i - theta*_0)(theta_{d-i+1} - theta_0)."""
    vth = vartheta_from_array(w5_array)
    d = w5_array.d
    for i in range(1, d + 1):
        phi_i = vth[i] + (w5_array.theta_star[i] - w5_array.theta_star[0]) * (
            w5_array.theta[d - i + 1] - w5_array.theta[0]
        )
        assert phi_i == w5_array.phi[i - 1]


def test_window_examples(gf5):
    q = rationals()
    assert is_beta_recurrent([gf5.element(x) for x in (1, 2, 4, 3)], gf5.element(0))
    assert is_beta_recurrent([q.element(x) for x in (0, 1, 2, 3, 4)], q.element(2))
    assert not is_beta_recurrent([q.element(x) for x in (0, 1, 3, 4)], q.element(2))
    with pytest.raises(TooShortError):
        is_beta_recurrent([q.element(0), q.element(1), q.element(2)], q.element(2))


def test_status_w5(w5_array, gf5):
    st = recurrence_status(w5_array)
    assert st.recurrent and st.betas == [gf5.element(0)]


def test_status_non_recurrent(gf5):
    # theta* not recurrent at the beta pinned by theta
    p = ParameterArray.make(gf5, [0, 1, 2, 3], [0, 1, 2, 4], [1, 1, 1])
    st = recurrence_status(p)
    assert not st.recurrent and st.betas == []


def test_status_matches_exhaustive_beta_scan(gf5):
    """The window-solve strategy agrees with scanning every beta in the
    field, for a batch of arrays over GF(5)."""
    import random

    rng = random.Random(5)
    checked = 0
    while checked < 40:
        th = tuple(rng.sample(range(5), 4))
        ths = tuple(rng.sample(range(5), 4))
        ph = tuple(rng.choice([1, 2, 3, 4]) for _ in range(3))
        p = ParameterArray.make(gf5, th, ths, ph)
        vth = vartheta_from_array(p)
        brute = [
            b for b in gf5.elements()
            if is_beta_recurrent(p.theta, b)
            and is_beta_recurrent(p.theta_star, b)
            and is_beta_recurrent(vth, b)
        ]
        assert recurrence_status(p).betas == brute
        checked += 1


def test_td_witness_w5(w5_system, gf5):
    w = td_witness(w5_system, 0)
    zero = gf5.zero_element()
    assert (w.gamma, w.gamma_star, w.rho, w.rho_star) == (zero, zero, zero, zero)


def test_td_commutators_explicit(w5_system, gf5):
    """The two relations evaluated on the matrices, fully expanded, with
    the witness scalars; exact zero."""
    w = td_witness(w5_system, 0)
    a, b = w5_system.A, w5_system.A_star
    for x, y, gamma, rho in ((a, b, w.gamma, w.rho), (b, a, w.gamma_star, w.rho_star)):
        inner = (
            x * x * y - (x * y * x).scale(w.beta) + y * x * x
            - (x * y + y * x).scale(gamma) - y.scale(rho)
        )
        assert commutator(x, inner).is_zero()


def test_td_witness_wrong_beta(w5_system):
    with pytest.raises(NotRecurrentAtBetaError):
        td_witness(w5_system, 1)


def test_td_trivial_commuting_case(gf5):
    """Anything commuting satisfies both relations with any scalars."""
    a = Matrix.diagonal(gf5, [1, 2, 4, 3])
    ident = Matrix.identity(gf5, 4)
    inner = a * a * ident + ident * a * a
    assert commutator(a, inner).is_zero()


def test_recurrence_iff_td_witness(gf5):
    """Both directions at desk scale: recurrent status iff the witness
    construction succeeds, over a batch of verified systems."""
    import random

    rng = random.Random(12)
    seen_recurrent = 0
    seen_non = 0
    while seen_recurrent < 5 or seen_non < 5:
        th = tuple(rng.sample(range(5), 4))
        ths = tuple(rng.sample(range(5), 4))
        ph = tuple(rng.choice([1, 2, 3, 4]) for _ in range(3))
        p = ParameterArray.make(gf5, th, ths, ph)
        s = split_form_build(p)
        st = recurrence_status(p)
        if st.recurrent:
            seen_recurrent += 1
            td_witness(s, st.betas[0])  # must not raise
        else:
            seen_non += 1
            for b in gf5.elements():
                with pytest.raises(NotRecurrentAtBetaError):
                    td_witness(s, b)


# --- closed-form fits --------------------------------------------------------

def test_fit_generic_q_gf5(gf5):
    th = [gf5.element(x) for x in (1, 2, 4, 3)]
    form = fit_closed_form(th, gf5.element(0))
    assert form.case is RecurrenceCase.GENERIC_Q
    assert not form.lifted
    assert form.q in (gf5.element(2), gf5.element(3))
    assert [str(a) for a in form.alpha] == ["0", "1", "0"]  # theta_i = q^i
    for i, v in enumerate(th):
        assert form.evaluate(i) == v


def test_fit_constant_sequence(gf5):
    seq = [gf5.element(2)] * 5
    form = fit_closed_form(seq, gf5.element(2))
    assert form.alpha[1].is_zero() and form.alpha[2].is_zero()
    assert form.alpha[0] == gf5.element(2)


def test_fit_beta2_rationals():
    q = rationals()
    seq = [q.element(x) for x in (7, 9, 13, 19, 27)]  # 7 + i + i(i-1)
    form = fit_closed_form(seq, q.element(2))
    assert form.case is RecurrenceCase.BETA2
    assert [str(a) for a in form.alpha] == ["7", "2", "2"]
    for i, v in enumerate(seq):
        assert form.evaluate(i) == v


def test_fit_beta_minus2_rationals():
    q = rationals()
    seq = [q.element(x) for x in (1, -2, 3, -4, 5, -6)]
    form = fit_closed_form(seq, q.element(-2))
    assert form.case is RecurrenceCase.BETA_MINUS2
    for i, v in enumerate(seq):
        assert form.evaluate(i) == v


def test_fit_beta0_char2(gf4):
    w = gf4.generator()
    one = gf4.one_element()
    seq = [gf4.zero_element(), one, w, one + w]
    form = fit_closed_form(seq, gf4.zero_element())
    assert form.case is RecurrenceCase.BETA0_CHAR2
    for i, v in enumerate(seq):
        assert form.evaluate(i) == v


def test_fit_lifts_to_quadratic_extension():
    q = rationals()
    vals = [q.element(0), q.element(1), q.element(3)]
    for _ in range(3):
        vals.append(2 * vals[-1] - 2 * vals[-2] + vals[-3])  # beta = 1
    form = fit_closed_form(vals, q.element(1))
    assert form.lifted
    assert (form.q ** 6) == 1  # roots of x^2 - x + 1 are primitive 6th roots
    for i, v in enumerate(vals):
        assert form.evaluate(i) == v.lift(form.spec)


def test_fit_vartheta_w5(w5_array, gf5):
    """The wrap sequence of the fixture fits with a zero q^{-i} coefficient:
    vartheta_i = q^i - 1."""
    vth = vartheta_from_array(w5_array)
    form = fit_closed_form(vth, gf5.element(0), q=gf5.element(2))
    assert form.alpha[0] == gf5.element(-1)
    assert form.alpha[1] == gf5.element(1)
    assert form.alpha[2].is_zero()


def test_verified_recurrent_wrap_scalars_differ(gf5, gf9, gf4):
    """Every verified recurrent system has vartheta_1 != vartheta_d (the
    corner product is nonzero exactly then)."""
    from circhess import Family, family_generate, iter_family_instances

    for fam, spec, d in (
        (Family.F1_GENERIC_Q, gf5, 3),
        (Family.F2_BETA2, gf5, 4),
        (Family.F3_BETA_MINUS2, gf9, 5),
        (Family.F4_BETA0_CHAR2, gf4, 3),
    ):
        for fp in iter_family_instances(fam, spec, d, 3):
            p = family_generate(fp)
            s = split_form_build(p)
            assert verify_ch_axioms(s).is_ch and recurrence_status(p).recurrent
            vth = vartheta_from_array(p)
            assert vth[1] != vth[d]


def test_fit_round_trip_family_data(gf5, gf9, gf4):
    """Round-trip on eigenvalue data of actual systems in all four cases."""
    from circhess import Family, family_beta, family_generate, iter_family_instances

    cases = [
        (Family.F1_GENERIC_Q, gf5, 3),
        (Family.F2_BETA2, gf5, 4),
        (Family.F3_BETA_MINUS2, gf9, 5),
        (Family.F4_BETA0_CHAR2, gf4, 3),
    ]
    for fam, spec, d in cases:
        fp = next(iter_family_instances(fam, spec, d, 1))
        p = family_generate(fp)
        beta = family_beta(fp)
        for seq in (p.theta, p.theta_star, vartheta_from_array(p)):
            form = fit_closed_form(seq, beta)
            vals = seq.values if hasattr(seq, "values") else seq
            for i, v in enumerate(vals):
                expect = v.lift(form.spec) if form.lifted else v
                assert form.evaluate(i) == expect


# --- quotient identities ----------------------------------------------------------

def test_quotient_examples(gf5):
    th = [gf5.element(x) for x in (1, 2, 4, 3)]
    assert recurrent_quotient(th, gf5.element(0), 3, 0, 2, 1) == gf5.element(1)
    q = rationals()
    ap = [q.element(x) for x in range(5)]
    assert recurrent_quotient(ap, q.element(2), 4, 0, 3, 1) == q.element(2)
    assert recurrent_quotient(ap, q.element(2), 2, 2, 3, 1).is_zero()


def test_quotient_preconditions(gf5):
    th = [gf5.element(x) for x in (1, 2, 4, 3)]
    with pytest.raises(PreconditionViolatedError):
        recurrent_quotient(th, gf5.element(0), 3, 0, 2, 2)  # r = s
    with pytest.raises(PreconditionViolatedError):
        recurrent_quotient(th, gf5.element(0), 3, 0, 3, 1)  # sums differ
    with pytest.raises(PreconditionViolatedError):
        recurrent_quotient(th, gf5.element(1), 3, 0, 2, 1)  # wrong beta


def _exhaustive_quotient(seq, beta, n):
    for i, j, r, s in itertools.product(range(n), repeat=4):
        if i + j == r + s and r != s:
            recurrent_quotient(seq, beta, i, j, r, s)


def test_quotient_exhaustive_all_cases(gf5, gf9, gf4, gf7):
    """Two-sided agreement for every admissible index tuple, d <= 6."""
    from circhess import (
        Family, family_beta, family_generate, iter_family_instances,
    )

    cases = [
        (Family.F1_GENERIC_Q, gf5, 3),
        (Family.F2_BETA2, gf5, 4),
        (Family.F3_BETA_MINUS2, gf9, 5),
        (Family.F4_BETA0_CHAR2, gf4, 3),
        (Family.F2_BETA2, gf7, 6),
    ]
    for fam, spec, d in cases:
        fp = next(iter_family_instances(fam, spec, d, 1))
        p = family_generate(fp)
        beta = family_beta(fp)
        _exhaustive_quotient(list(p.theta), beta, d + 1)
        _exhaustive_quotient(list(p.theta_star), beta, d + 1)


def test_status_inconsistent_windows_over_rationals():
    """theta pins beta = 1 but theta* needs beta = 4: not recurrent."""
    from circhess import ParameterArray, rationals

    q = rationals()
    p = ParameterArray.make(q, [0, 1, 3, 4], [0, 1, 2, 5], [1, 1, 1])
    st = recurrence_status(p)
    assert not st.recurrent and st.betas == []
