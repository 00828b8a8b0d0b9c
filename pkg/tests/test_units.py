"""Units layer: constants against an independent reference, dimension algebra,
parsing, and conversion exactness."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from erlab.units import (
    ACTION,
    DIMENSIONLESS,
    ENERGY,
    FIELD_NOISE_DENSITY,
    LENGTH,
    MAGNETIC_FIELD,
    NUMBER_DENSITY,
    PERMEABILITY,
    TEMPERATURE,
    TIME,
    VELOCITY,
    VOLUME,
    Dimension,
    DimensionError,
    Quantity,
    constant_quantity,
    constants,
    convert,
    parse_quantity,
)

C = constants()


# ---------------------------------------------------------------------------
# constants: cross-check the frozen table against scipy's CODATA database.
# k_B and hbar are fixed by the 2019 SI redefinition (h and k_B are exact),
# so those must agree bit-for-bit; measured constants get a loose tolerance
# that covers CODATA revisions between scipy releases.
# ---------------------------------------------------------------------------

scipy_constants = pytest.importorskip("scipy.constants")


def test_defined_constants_match_reference_exactly():
    assert C.k_B == scipy_constants.k
    assert C.hbar == scipy_constants.hbar
    assert C.hbar == scipy_constants.h / (2.0 * math.pi)


@pytest.mark.parametrize(
    "ours,name",
    [
        (constants().mu_0, "vacuum mag. permeability"),
        (constants().mu_B, "Bohr magneton"),
        (constants().Phi_0, "mag. flux quantum"),
        (constants().atomic_mass, "atomic mass constant"),
    ],
)
def test_measured_constants_match_reference(ours, name):
    ref = scipy_constants.physical_constants[name][0]
    assert ours == pytest.approx(ref, rel=2e-8)


def test_flux_quantum_is_h_over_2e():
    assert C.Phi_0 == scipy_constants.h / (2.0 * scipy_constants.e)


# ---------------------------------------------------------------------------
# dimension algebra
# ---------------------------------------------------------------------------

def test_energy_resolution_has_action_dimension():
    # the quantity (field^2 * volume * time / permeability) is the package's
    # central object; it must carry units of action
    assert MAGNETIC_FIELD**2 * VOLUME * TIME / PERMEABILITY == ACTION


def test_noise_density_squared_is_field_squared_time():
    assert FIELD_NOISE_DENSITY**2 == MAGNETIC_FIELD**2 * TIME
    assert (MAGNETIC_FIELD**2 * TIME).root(2) == FIELD_NOISE_DENSITY


def test_dimension_str_forms():
    assert str(DIMENSIONLESS) == "dimensionless"
    assert str(VOLUME) == "m^3"
    assert str(MAGNETIC_FIELD) == "kg*s^-2*A^-1"
    assert str(FIELD_NOISE_DENSITY) == "kg*s^-3/2*A^-1"


_exponents = st.tuples(*(st.integers(-4, 4) for _ in range(5)))


@given(_exponents, _exponents)
def test_dimension_product_commutes(a, b):
    da, db = Dimension(tuple(map(Fraction, a))), Dimension(tuple(map(Fraction, b)))
    assert da * db == db * da
    assert (da * db) / db == da


@given(_exponents)
def test_dimension_power_roundtrip(a):
    d = Dimension(tuple(map(Fraction, a)))
    assert (d**2).root(2) == d
    assert d**2 == d * d
    assert d / d == DIMENSIONLESS


# ---------------------------------------------------------------------------
# parsing and conversion
# ---------------------------------------------------------------------------

def test_parse_density_is_exact():
    # 1e14 /cm3 -> 1e20 /m3 with no rounding (powers of ten whose product
    # is again a representable power of ten)
    assert parse_quantity("1e14/cm3", NUMBER_DENSITY).si == 1e20
    assert parse_quantity("2e13/cm3", NUMBER_DENSITY).si == 2e19


def test_parse_common_suffixes():
    assert parse_quantity("1us", TIME).si == 1e-6
    assert parse_quantity("1cm3", VOLUME).si == 1e-6
    assert parse_quantity("300pT/rtHz", FIELD_NOISE_DENSITY).si == 3e-10
    assert parse_quantity("1G", MAGNETIC_FIELD).si == 1e-4
    assert parse_quantity("400K", TEMPERATURE).si == 400.0
    assert parse_quantity("0.5e-5s", TIME).si == 0.5e-5


def test_parse_alias_spellings():
    for text in ("1e14/cm3", "1e14cm^-3", "1e14cm-3"):
        assert parse_quantity(text, NUMBER_DENSITY).si == pytest.approx(1e20)
    assert parse_quantity("10pT/sqrtHz", FIELD_NOISE_DENSITY).si == parse_quantity(
        "10pT/rtHz", FIELD_NOISE_DENSITY
    ).si


def test_no_unit_spelling_starts_with_a_digit():
    # a digit-leading spelling like "1/cm3" would make "1e141/cm3" ambiguous
    # (1e141 per m3 vs 1e14 times 1/cm3), so the registry must not have any
    from erlab.units import _ALIASES, _UNITS

    for name in list(_UNITS) + list(_ALIASES):
        assert not name[:1].isdigit(), name


def test_parse_rejects_bare_number_for_dimensioned_target():
    with pytest.raises(DimensionError, match="has no unit"):
        parse_quantity("1e14", NUMBER_DENSITY)
    with pytest.raises(DimensionError, match="has no unit"):
        parse_quantity("10", VOLUME)


def test_parse_rejects_wrong_dimension():
    with pytest.raises(DimensionError):
        parse_quantity("10cm3", TIME)
    with pytest.raises(DimensionError):
        parse_quantity("4.2K", MAGNETIC_FIELD)


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_quantity("abc")
    with pytest.raises(ValueError):
        parse_quantity("")
    with pytest.raises(DimensionError, match="unknown unit"):
        parse_quantity("3furlongs")


def test_parse_bare_number_dimensionless_ok():
    q = parse_quantity("42")
    assert q.dimension == DIMENSIONLESS
    assert float(q) == 42.0


def test_gauss_conversion_power_of_ten():
    q = Quantity.from_unit(5.0, "G")
    assert q.si == 5e-4
    assert q.to("T") == 5e-4
    assert convert(Quantity.from_si(5e-4, MAGNETIC_FIELD), "G").value == 5.0


def test_conversion_roundtrip():
    q = Quantity.from_unit(13.4, "pG/rtHz")
    back = convert(convert(q, "T/rtHz"), "pG/rtHz")
    assert back.value == pytest.approx(13.4, rel=1e-15)


def test_to_rejects_other_dimension():
    with pytest.raises(DimensionError):
        Quantity.from_unit(1.0, "cm3").to("s")


# ---------------------------------------------------------------------------
# quantity arithmetic
# ---------------------------------------------------------------------------

def test_add_mismatched_dimensions_raises():
    with pytest.raises(DimensionError, match="cannot add"):
        Quantity.from_unit(1.0, "T") + Quantity.from_unit(1.0, "s")


def test_float_of_dimensioned_quantity_raises():
    with pytest.raises(DimensionError):
        float(Quantity.from_unit(1.0, "T"))


def test_quantity_algebra_tracks_dimensions():
    dB = Quantity.from_unit(2.0, "fT")
    V = Quantity.from_unit(10.0, "cm3")
    tau = Quantity.from_si(0.24, TIME)
    mu0 = constant_quantity("mu_0")
    erl = dB * dB * V * tau / (2.0 * mu0)
    assert erl.dimension == ACTION
    hbar = constant_quantity("hbar")
    assert (erl / hbar).dimension == DIMENSIONLESS
    assert float(erl / hbar) > 0


def test_quantity_sqrt_dimension():
    q = Quantity.from_si(9e-20, MAGNETIC_FIELD**2 * TIME)
    assert q.sqrt().dimension == FIELD_NOISE_DENSITY
    assert q.sqrt().si == pytest.approx(3e-10)


def test_velocity_from_length_over_time():
    v = Quantity.from_unit(100.0, "cm") / Quantity.from_si(2.0, TIME)
    assert v.dimension == VELOCITY
    assert v.si == pytest.approx(0.5)


def test_constant_quantity_dimensions():
    assert constant_quantity("hbar").dimension == ACTION
    assert constant_quantity("k_B").dimension == ENERGY / TEMPERATURE
    assert constant_quantity("mu_0").dimension == PERMEABILITY
    with pytest.raises(KeyError):
        constant_quantity("c")


def test_length_cubing_gives_volume():
    edge = Quantity.from_unit(1.0, "mm")
    assert (edge**3).dimension == VOLUME
    assert (edge**3).si == pytest.approx(1e-9)
    assert (edge**3).to("mm3") == pytest.approx(1.0)
