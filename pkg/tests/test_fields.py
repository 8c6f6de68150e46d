"""Field tower: exact arithmetic, axioms, roots of unity, serialization."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circhess import (
    cyclotomic_field,
    field_from_json,
    field_from_string,
    prime_field,
    primitive_root_of_unity,
    quotient_extension,
    rationals,
)
from circhess.errors import (
    DivisionByZeroError,
    MixedFieldsError,
    NoSuchRootError,
    NotPrimeError,
    ParseError,
    ReducibleModulusError,
)
from circhess.fields import cyclotomic_polynomial, euler_phi


def all_specs():
    return [
        rationals(),
        prime_field(5),
        prime_field(7),
        field_from_string("ext:gf:2:1,1,1"),
        cyclotomic_field(4),
    ]


# --- construction -----------------------------------------------------------

def test_prime_field_construction():
    assert prime_field(5).characteristic == 5
    with pytest.raises(NotPrimeError):
        prime_field(4)
    with pytest.raises(NotPrimeError):
        prime_field(1)


def test_gf4_construction():
    gf4 = quotient_extension(prime_field(2), [1, 1, 1], gen="w")
    assert gf4.characteristic == 2
    assert gf4.order == 4
    w = gf4.generator()
    assert w * w == w + 1  # defining relation of the quadratic


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulusError):
        quotient_extension(prime_field(2), [1, 0, 1])  # (x+1)^2 over GF(2)
    with pytest.raises(ReducibleModulusError):
        quotient_extension(rationals(), [-1, 0, 1])  # x^2 - 1


def test_descriptor_idempotent():
    assert field_from_string("gf:5") == field_from_string("gf:5")
    assert field_from_string("cyclo:4") == field_from_string("cyclo:4")
    assert field_from_string("rat") == rationals()
    with pytest.raises(ParseError):
        field_from_string("gf:4")


def test_field_json_roundtrip():
    for spec in all_specs():
        assert field_from_json(spec.to_json()) == spec


# --- arithmetic -------------------------------------------------------------

def test_arith_examples():
    g5 = prime_field(5)
    assert g5.element(2) / g5.element(3) == g5.element(4)  # 3*4 = 12 = 2 (mod 5)
    q = rationals()
    assert q.element(Fraction(1, 3)) + q.element(Fraction(1, 6)) == q.element(
        Fraction(1, 2)
    )


def test_mixed_fields_hard_error():
    a = prime_field(5).element(1)
    b = prime_field(7).element(1)
    with pytest.raises(MixedFieldsError):
        a + b


def test_division_by_zero():
    g5 = prime_field(5)
    with pytest.raises(DivisionByZeroError):
        g5.element(1) / g5.element(0)
    with pytest.raises(DivisionByZeroError):
        g5.element(0) ** -1


def _axiom_check(spec, a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + spec.zero_element() == a
    assert a * spec.one_element() == a
    if not a.is_zero():
        assert a * a.inverse() == spec.one_element()


@settings(max_examples=60, deadline=None)
@given(st.integers(), st.integers(), st.integers())
def test_axioms_gf5(x, y, z):
    g5 = prime_field(5)
    _axiom_check(g5, g5.element(x), g5.element(y), g5.element(z))


@settings(max_examples=60, deadline=None)
@given(st.fractions(), st.fractions(), st.fractions())
def test_axioms_rationals(x, y, z):
    q = rationals()
    _axiom_check(q, q.element(x), q.element(y), q.element(z))


@settings(max_examples=60, deadline=None)
@given(*(st.integers(0, 3) for _ in range(6)))
def test_axioms_gf4(x0, x1, y0, y1, z0, z1):
    gf4 = field_from_string("ext:gf:2:1,1,1")
    w = gf4.generator()
    a, b, c = x0 + x1 * w, y0 + y1 * w, z0 + z1 * w
    _axiom_check(gf4, a, b, c)


@settings(max_examples=40, deadline=None)
@given(*(st.integers(-5, 5) for _ in range(6)))
def test_axioms_cyclo4(x0, x1, y0, y1, z0, z1):
    cy = cyclotomic_field(4)
    t = cy.generator()
    a, b, c = x0 + x1 * t, y0 + y1 * t, z0 + z1 * t
    _axiom_check(cy, a, b, c)


def test_gf4_exhaustive_inverses():
    gf4 = field_from_string("ext:gf:2:1,1,1")
    for e in gf4.elements():
        if not e.is_zero():
            assert e * e.inverse() == gf4.one_element()


def test_pow_negative():
    g7 = prime_field(7)
    assert g7.element(3) ** -1 == g7.element(5)  # 3*5 = 15 = 1 (mod 7)
    assert g7.element(3) ** -2 == g7.element(4)  # 5^2 = 25 = 4


# --- roots of unity -----------------------------------------------------------

def test_root_of_unity_gf5():
    q = primitive_root_of_unity(prime_field(5), 4)
    assert q == prime_field(5).element(2)  # 2, 4, 3, 1: order exactly 4


def test_root_of_unity_gf7():
    q = primitive_root_of_unity(prime_field(7), 3)
    assert q == prime_field(7).element(2)  # 2^3 = 8 = 1, 2^1 and 2^2 != 1


def test_root_of_unity_missing():
    with pytest.raises(NoSuchRootError):
        primitive_root_of_unity(prime_field(5), 3)  # 3 does not divide 4


def test_root_of_unity_extension_search():
    q = primitive_root_of_unity(prime_field(5), 3, allow_extension=True)
    assert q.spec.order == 25
    assert q**3 == 1 and q != 1 and q**2 != 1


def test_root_of_unity_order_property():
    for spec, n in ((prime_field(5), 4), (prime_field(7), 6),
                    (field_from_string("ext:gf:2:1,1,1"), 3)):
        q = primitive_root_of_unity(spec, n)
        assert (q**n) == 1
        for k in range(1, n):
            assert (q**k) != 1


def test_cyclotomic_root():
    q = primitive_root_of_unity(rationals(), 5)
    assert (q**5) == 1
    for k in range(1, 5):
        assert (q**k) != 1
    assert q.spec.deg == euler_phi(5) == 4


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == [Fraction(-1), Fraction(1)]
    assert cyclotomic_polynomial(4) == [Fraction(1), Fraction(0), Fraction(1)]
    assert cyclotomic_polynomial(6) == [Fraction(1), Fraction(-1), Fraction(1)]
    # degree always matches the totient
    for n in range(2, 16):
        assert len(cyclotomic_polynomial(n)) - 1 == euler_phi(n)


# --- rendering ----------------------------------------------------------------

def test_render_parse_roundtrip_exhaustive_finite():
    for spec in (prime_field(5), field_from_string("ext:gf:2:1,1,1")):
        for e in spec.elements():
            assert spec.element(str(e)) == e


@settings(max_examples=50, deadline=None)
@given(st.fractions())
def test_render_parse_roundtrip_rationals(x):
    q = rationals()
    e = q.element(x)
    assert q.element(str(e)) == e


@settings(max_examples=50, deadline=None)
@given(st.fractions(), st.fractions())
def test_render_parse_roundtrip_cyclo(x, y):
    cy = cyclotomic_field(4)
    e = cy.element(x) + cy.element(y) * cy.generator()
    assert cy.element(str(e)) == e


def test_render_forms():
    q = rationals()
    assert str(q.element(Fraction(-2, 6))) == "-1/3"
    assert str(q.element(7)) == "7"
    gf4 = field_from_string("ext:gf:2:1,1,1")
    assert str(gf4.generator()) == "0+1*w"


def test_tower_roundtrip():
    # quadratic extension of GF(4): render wraps base coefficients in parens
    gf4 = field_from_string("ext:gf:2:1,1,1")
    w = gf4.generator()
    # x^2 + x + w is irreducible over GF(4) (no roots among the 4 elements)
    gf16 = quotient_extension(gf4, [w, gf4.one_element(), gf4.one_element()], gen="s")
    assert gf16.order == 16
    for e in list(gf16.elements())[:8]:
        assert gf16.element(str(e)) == e


def test_root_of_unity_inside_cyclotomic_extension():
    cy8 = cyclotomic_field(8)
    q = primitive_root_of_unity(cy8, 4)
    assert (q**4) == 1
    for k in range(1, 4):
        assert (q**k) != 1
