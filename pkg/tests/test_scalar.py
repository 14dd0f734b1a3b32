from fractions import Fraction

import pytest
from hypothesis import given

from conftest import gaussians, nonzero_gaussians, unit_values
from twistedhv.parser import parse_scalar
from twistedhv.scalar import I, ONE, ZERO, GaussianRational, NotUnitModulus, UnitPhase, format_scalar


def test_basic_arithmetic():
    z = GaussianRational(Fraction(1, 2), 3)
    assert z * I == GaussianRational(-3, Fraction(1, 2))
    assert z.conjugate() == GaussianRational(Fraction(1, 2), -3)
    assert z.norm() == Fraction(37, 4)
    assert (z / z) == ONE
    assert I**2 == -ONE
    assert I**-1 == -I


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


@given(gaussians, gaussians, gaussians)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x


@given(gaussians, nonzero_gaussians)
def test_division_inverts_multiplication(x, y):
    assert (x / y) * y == x


@given(gaussians, gaussians)
def test_conjugation_is_a_field_automorphism(x, y):
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    assert (x * x.conjugate()).im == 0
    assert (x * x.conjugate()).re == x.norm()


@given(gaussians)
def test_format_parse_round_trip(z):
    assert parse_scalar(format_scalar(z)) == z


@pytest.mark.parametrize(
    "z, text",
    [
        (GaussianRational(Fraction(-1, 3)), "-1/3"),
        (GaussianRational(0, 1), "1i"),
        (GaussianRational(-2, 1), "-2+1i"),
        (GaussianRational(Fraction(1, 2), Fraction(-1, 3)), "1/2-1/3i"),
        (ZERO, "0"),
    ],
)
def test_canonical_literals(z, text):
    assert format_scalar(z) == text


def test_unit_phase_requires_modulus_one():
    UnitPhase(GaussianRational(Fraction(3, 5), Fraction(4, 5)))
    with pytest.raises(NotUnitModulus) as exc:
        UnitPhase(GaussianRational(1, 1))
    assert exc.value.norm == 2


@given(unit_values, unit_values)
def test_unit_phases_form_a_group(u, w):
    pu, pw = UnitPhase(u), UnitPhase(w)
    assert (pu * pw).value.norm() == 1
    assert (pu * pu.inverse()).value == ONE
    assert (pu**-3).value == (pu.conjugate() ** 3).value


def test_hash_agrees_with_equality():
    assert hash(GaussianRational(2)) == hash(GaussianRational(Fraction(4, 2), 0))
    assert GaussianRational(2) == 2
    assert len({GaussianRational(1, 1), GaussianRational(Fraction(2, 2), 1)}) == 1
