from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hermite_lab.errors import DivisionByZero, SpecMismatch
from hermite_lab.field import GF2, GF3, GF5, QQ, FieldElement, FieldSpec, arith, from_integer, inverse, is_prime

PRIMES = [2, 3, 5, 7, 101, 32003]


def test_parse_and_format_round_trip():
    assert FieldSpec.parse("Q") == QQ
    assert FieldSpec.parse("Fp:7") == FieldSpec.prime(7)
    assert str(FieldSpec.prime(7)) == "Fp:7"
    assert str(QQ) == "Q"


@pytest.mark.parametrize("bad", ["Fp:4", "Fp:1", "Fp:x", "R", ""])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        FieldSpec.parse(bad)


def test_is_prime_matches_sieve():
    n = 500
    sieve = [True] * n
    sieve[0] = sieve[1] = False
    for i in range(2, n):
        if sieve[i]:
            for j in range(i * i, n, i):
                sieve[j] = False
    assert [is_prime(i) for i in range(n)] == sieve


def test_gf2_one_plus_one():
    assert GF2.element(1) + GF2.element(1) == GF2.element(0)


def test_gf3_inverse_of_two():
    assert GF3.element(2).inverse() == GF3.element(2)


def test_rational_division():
    assert (QQ.element(1) / QQ.element(3)).value == Fraction(1, 3)
    assert QQ.element(Fraction(6, 3)).raw == 2 and type(QQ.element(Fraction(6, 3)).raw) is int


def test_division_by_zero():
    for f in (QQ, GF2, GF5):
        with pytest.raises(DivisionByZero):
            f.element(0).inverse()
        with pytest.raises(ZeroDivisionError):
            f.element(1) / f.element(0)


def test_mixed_fields_rejected():
    with pytest.raises(SpecMismatch):
        GF2.element(1) + GF3.element(1)
    with pytest.raises(SpecMismatch):
        arith("add", QQ.element(1), GF5.element(1))


def test_fraction_reduces_into_prime_field():
    # 1/2 in GF(5) is 3
    assert GF5.element(Fraction(1, 2)).raw == 3
    assert GF5.parse_value("1/2") == 3


def test_module_level_helpers():
    assert inverse(GF5.element(2)) == GF5.element(3)
    assert from_integer(GF3, 7) == GF3.element(1)
    assert arith("mul", GF5.element(3), GF5.element(4)) == GF5.element(2)


elements_q = st.fractions(max_denominator=50).map(lambda x: QQ.element(x))


@st.composite
def prime_elements(draw, n=3):
    p = draw(st.sampled_from(PRIMES))
    f = FieldSpec.prime(p)
    return [FieldElement(f, draw(st.integers(0, p - 1))) for _ in range(n)]


@given(prime_elements())
def test_prime_field_axioms(xs):
    a, b, c = xs
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == a.spec.element(0)
    if a.raw:
        assert a * a.inverse() == a.spec.element(1)


@given(prime_elements(2))
def test_prime_field_matches_integer_oracle(xs):
    a, b = xs
    p = a.spec.modulus
    assert (a * b).raw == (a.raw * b.raw) % p
    assert (a - b).raw == (a.raw - b.raw) % p
    if b.raw:
        # oracle: Fermat inverse
        assert (a / b).raw == a.raw * pow(b.raw, p - 2, p) % p


@given(elements_q, elements_q, elements_q)
def test_rational_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b).value == a.value * b.value
    if b.raw != 0:
        assert (a / b).value == a.value / b.value


@given(st.integers(-10**9, 10**9), st.integers(-10**9, 10**9), st.sampled_from([QQ] + [FieldSpec.prime(p) for p in PRIMES]))
def test_from_integer_is_ring_homomorphism(a, b, f):
    assert from_integer(f, a * b) == from_integer(f, a) * from_integer(f, b)
    assert from_integer(f, a + b) == from_integer(f, a) + from_integer(f, b)
