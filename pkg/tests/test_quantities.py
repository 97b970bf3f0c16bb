import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zpfdrive.quantities import (
    ACTION,
    B_FIELD_SI,
    CODATA,
    DIMENSIONLESS,
    E_FIELD_SI,
    ENERGY_DENSITY,
    FIELD_GAUSSIAN,
    HBAR_J_S,
    LENGTH,
    MASS,
    MASS_DENSITY,
    MOMENTUM,
    TIME,
    VELOCITY,
    DimensionError,
    Direction,
    Quantity,
    convert_gaussian_si,
    dim,
    dimension_check,
    unit_string,
)

dims = st.tuples(*[st.integers(-3, 3) for _ in range(4)]).map(lambda t: dim(*t))
finite_floats = st.floats(
    min_value=1e-6, max_value=1e6, allow_nan=False, allow_infinity=False
)


class TestQuantityAlgebra:
    def test_add_same_dimension(self):
        assert (Quantity(1.0, LENGTH) + Quantity(2.0, LENGTH)).value == 3.0

    def test_add_mismatched_rejected(self):
        with pytest.raises(DimensionError):
            Quantity(1.0, LENGTH) + Quantity(1.0, TIME)

    def test_mul_composes_exponents(self):
        q = Quantity(2.0, LENGTH) * Quantity(3.0, LENGTH)
        assert q.dim == dim(length=2)
        assert q.value == 6.0

    def test_div_composes_exponents(self):
        q = Quantity(6.0, LENGTH) / Quantity(3.0, TIME)
        assert q.dim == VELOCITY

    def test_pow_rational(self):
        q = Quantity(16.0, dim(length=2)) ** Fraction(1, 2)
        assert q.dim == LENGTH
        assert q.value == 4.0

    def test_float_scalar_interop(self):
        q = 2.0 * Quantity(3.0, MASS) / 6
        assert q.dim == MASS
        assert q.value == 1.0

    def test_float_conversion_guard(self):
        assert float(Quantity(2.5)) == 2.5
        with pytest.raises(DimensionError):
            float(Quantity(2.5, LENGTH))

    def test_comparison_requires_same_dimension(self):
        assert Quantity(1.0, LENGTH) < Quantity(2.0, LENGTH)
        with pytest.raises(DimensionError):
            Quantity(1.0, LENGTH) < Quantity(2.0, TIME)

    @given(a=dims, b=dims, x=finite_floats, y=finite_floats)
    def test_mismatched_dimensions_always_rejected(self, a, b, x, y):
        qa, qb = Quantity(x, a), Quantity(y, b)
        if a == b:
            assert (qa + qb).value == x + y
        else:
            with pytest.raises(DimensionError):
                qa + qb
            with pytest.raises(DimensionError):
                qa - qb

    @given(a=dims, b=dims, x=finite_floats, y=finite_floats)
    def test_mul_div_exponent_arithmetic(self, a, b, x, y):
        prod = Quantity(x, a) * Quantity(y, b)
        quot = Quantity(x, a) / Quantity(y, b)
        assert prod.dim == tuple(i + j for i, j in zip(a, b))
        assert quot.dim == tuple(i - j for i, j in zip(a, b))


class TestConstants:
    def test_codata_values(self):
        assert CODATA.hbar.value == 1.054571817e-34
        assert CODATA.c.value == 2.99792458e8
        assert CODATA.hbar.dim == ACTION
        assert CODATA.c.dim == VELOCITY

    def test_immutable(self):
        with pytest.raises(AttributeError):
            CODATA.hbar = Quantity(1.0, ACTION)


class TestConversions:
    def test_tesla_to_gauss(self):
        g = convert_gaussian_si(Quantity(1.0, B_FIELD_SI), Direction.TO_GAUSSIAN)
        assert g.value == 1.0e4
        assert g.dim == FIELD_GAUSSIAN

    def test_volt_per_meter_to_statvolt_per_cm(self):
        g = convert_gaussian_si(Quantity(1.0, E_FIELD_SI), Direction.TO_GAUSSIAN)
        assert g.value == pytest.approx(1e-4 / 2.99792458, rel=1e-15)

    def test_energy_density(self):
        g = convert_gaussian_si(Quantity(1.0, ENERGY_DENSITY), Direction.TO_GAUSSIAN)
        assert g.value == 10.0
        assert g.dim == ENERGY_DENSITY

    @given(value=finite_floats)
    def test_round_trip_b_field(self, value):
        si = Quantity(value, B_FIELD_SI)
        back = convert_gaussian_si(
            convert_gaussian_si(si, Direction.TO_GAUSSIAN),
            Direction.TO_SI,
            field_kind="magnetic",
        )
        assert back.dim == B_FIELD_SI
        assert back.value == pytest.approx(value, rel=1e-15)

    @given(value=finite_floats)
    def test_round_trip_e_field(self, value):
        si = Quantity(value, E_FIELD_SI)
        back = convert_gaussian_si(
            convert_gaussian_si(si, Direction.TO_GAUSSIAN),
            Direction.TO_SI,
            field_kind="electric",
        )
        assert back.value == pytest.approx(value, rel=1e-15)

    @given(value=finite_floats)
    def test_round_trip_energy_density(self, value):
        si = Quantity(value, ENERGY_DENSITY)
        back = convert_gaussian_si(
            convert_gaussian_si(si, Direction.TO_GAUSSIAN), Direction.TO_SI
        )
        assert back.value == pytest.approx(value, rel=1e-15)

    def test_unsupported_dimension_reports_offender(self):
        with pytest.raises(DimensionError) as err:
            convert_gaussian_si(Quantity(1.0, MOMENTUM), Direction.TO_GAUSSIAN)
        assert str(MOMENTUM) in str(err.value)

    def test_gaussian_field_to_si_needs_kind(self):
        g = Quantity(1.0, FIELD_GAUSSIAN)
        with pytest.raises(DimensionError):
            convert_gaussian_si(g, Direction.TO_SI)


class TestDimensionClosure:
    """Each implemented formula is dimensionally closed."""

    def test_rotation_delta_v_dimension(self):
        # hbar / (rho * a^4) -> velocity, by hand: J s / (kg m^-3 m^4) = m/s
        rho = Quantity(1000.0, MASS_DENSITY)
        a = Quantity(1e-9, LENGTH)
        expr = CODATA.hbar / (rho * a ** 4)
        assert dimension_check(expr) == VELOCITY
        assert VELOCITY == dim(length=1, time=-1)

    def test_vacuum_momentum_dimension(self):
        # hbar * chi / a with dimensionless chi -> momentum
        a = Quantity(1e-9, LENGTH)
        chi = Quantity(1e-3)
        expr = CODATA.hbar * chi / a
        assert dimension_check(expr) == MOMENTUM
        assert MOMENTUM == dim(length=1, mass=1, time=-1)

    def test_force_terms_match_in_gaussian_convention(self):
        # eps*E*B-rate versus chi*B^2-rate: identical dimension when the
        # fields carry the shared Gaussian field dimension
        e = Quantity(1.0, FIELD_GAUSSIAN)
        b = Quantity(1.0, FIELD_GAUSSIAN)
        t = Quantity(1.0, TIME)
        dielectric_term = b * (2.0 * e / t)
        magnetoelectric_term = Quantity(1e-3) * (b * b / t)
        assert dimension_check(dielectric_term) == dimension_check(magnetoelectric_term)

    def test_payload_scaling_dimension(self):
        dv = Quantity(1e-6, VELOCITY)
        expr = dv * Quantity(50.0, MASS) / Quantity(100.0, MASS)
        assert dimension_check(expr) == VELOCITY

    def test_b_squared_dimension(self):
        # hbar * w^4 / c^3 -> energy density, the Gaussian field-squared tag
        w = Quantity(1e18, dim(time=-1))
        expr = CODATA.hbar * w ** 4 / (2 * math.pi * CODATA.c ** 3)
        assert dimension_check(expr) == ENERGY_DENSITY

    def test_plain_floats_are_dimensionless(self):
        assert dimension_check(3.14) == DIMENSIONLESS


def test_unit_strings():
    assert unit_string(VELOCITY) == "m/s"
    assert unit_string(MOMENTUM) == "kg m/s"
    assert unit_string(dim(length=2, time=-2)) == "m^2 s^-2"
