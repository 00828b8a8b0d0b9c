"""SI constants and a small dimension-checked quantity layer.

All model code in this package computes with plain SI floats.  This module
owns two things:

* the frozen table of physical constants (CODATA 2018), and
* the boundary layer that turns unit-tagged inputs (``1e14/cm3``, ``10cm3``,
  ``300pT/rtHz``, ...) into SI values while checking dimensions.

Dimensions are exponent vectors over the SI base (kg, m, s, A, K) with
``fractions.Fraction`` entries so that square roots of dimensioned
quantities (e.g. field noise densities, T*sqrt(s)) stay exact.  Unit
conversion factors are exact powers of ten; the only non-metric unit,
the gauss, is an exact power of ten in tesla as well (1 G = 1e-4 T).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "DimensionError",
    "Dimension",
    "Quantity",
    "Unit",
    "PhysicalConstants",
    "constants",
    "constant_quantity",
    "parse_quantity",
    "convert",
    "DIMENSIONLESS",
    "LENGTH",
    "TIME",
    "TEMPERATURE",
    "MAGNETIC_FIELD",
    "ENERGY",
    "ACTION",
    "VOLUME",
    "AREA",
    "NUMBER_DENSITY",
    "VELOCITY",
    "MAGNETIC_MOMENT",
    "PERMEABILITY",
    "FIELD_NOISE_DENSITY",
]

_BASE_SYMBOLS = ("kg", "m", "s", "A", "K")


class DimensionError(ValueError):
    """Raised when an operation mixes incompatible dimensions."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Dimension:
    """Exponent vector over the SI base (kg, m, s, A, K)."""

    exponents: tuple[Fraction, Fraction, Fraction, Fraction, Fraction]

    @staticmethod
    def of(kg=0, m=0, s=0, A=0, K=0) -> "Dimension":
        return Dimension((_frac(kg), _frac(m), _frac(s), _frac(A), _frac(K)))

    def __mul__(self, other: "Dimension") -> "Dimension":
        return Dimension(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __truediv__(self, other: "Dimension") -> "Dimension":
        return Dimension(tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, power) -> "Dimension":
        p = _frac(power)
        return Dimension(tuple(a * p for a in self.exponents))

    def root(self, n: int) -> "Dimension":
        return self ** Fraction(1, n)

    @property
    def is_dimensionless(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def __str__(self) -> str:
        if self.is_dimensionless:
            return "dimensionless"
        parts = []
        for sym, e in zip(_BASE_SYMBOLS, self.exponents):
            if e == 0:
                continue
            parts.append(sym if e == 1 else f"{sym}^{e}")
        return "*".join(parts)


DIMENSIONLESS = Dimension.of()
LENGTH = Dimension.of(m=1)
TIME = Dimension.of(s=1)
TEMPERATURE = Dimension.of(K=1)
MAGNETIC_FIELD = Dimension.of(kg=1, s=-2, A=-1)          # tesla
ENERGY = Dimension.of(kg=1, m=2, s=-2)                   # joule
ACTION = Dimension.of(kg=1, m=2, s=-1)                   # J*s
VOLUME = Dimension.of(m=3)
AREA = Dimension.of(m=2)
NUMBER_DENSITY = Dimension.of(m=-3)
VELOCITY = Dimension.of(m=1, s=-1)
MAGNETIC_MOMENT = Dimension.of(m=2, A=1)                 # J/T
PERMEABILITY = Dimension.of(kg=1, m=1, s=-2, A=-2)       # N/A^2
MAGNETIC_FLUX = Dimension.of(kg=1, m=2, s=-2, A=-1)      # weber
FIELD_NOISE_DENSITY = MAGNETIC_FIELD * (TIME ** Fraction(1, 2))  # T/sqrt(Hz)


@dataclass(frozen=True)
class Unit:
    """A named scale for some dimension; ``scale`` converts to SI."""

    name: str
    dimension: Dimension
    scale: float


def _si_unit(dimension: Dimension) -> Unit:
    return Unit(str(dimension), dimension, 1.0)


Number = Union[int, float]


@dataclass(frozen=True)
class Quantity:
    """A float tagged with a unit; arithmetic checks dimensions.

    Arithmetic results are expressed in the canonical SI unit of their
    dimension; ``convert`` / ``to`` rescale into any registered unit of
    the same dimension.
    """

    value: float
    unit: Unit

    @property
    def dimension(self) -> Dimension:
        return self.unit.dimension

    @property
    def si(self) -> float:
        """Magnitude in SI base units."""
        return self.value * self.unit.scale

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_si(value: float, dimension: Dimension = DIMENSIONLESS) -> "Quantity":
        return Quantity(float(value), _si_unit(dimension))

    @staticmethod
    def from_unit(value: float, unit_name: str) -> "Quantity":
        return Quantity(float(value), lookup_unit(unit_name))

    # -- arithmetic --------------------------------------------------------

    def _require_same_dimension(self, other: "Quantity", op: str) -> None:
        if self.dimension != other.dimension:
            raise DimensionError(
                f"cannot {op} quantities of dimension "
                f"[{self.dimension}] and [{other.dimension}]"
            )

    def __add__(self, other: "Quantity") -> "Quantity":
        self._require_same_dimension(other, "add")
        return Quantity.from_si(self.si + other.si, self.dimension)

    def __sub__(self, other: "Quantity") -> "Quantity":
        self._require_same_dimension(other, "subtract")
        return Quantity.from_si(self.si - other.si, self.dimension)

    def __mul__(self, other: Union["Quantity", Number]) -> "Quantity":
        if isinstance(other, Quantity):
            return Quantity.from_si(self.si * other.si, self.dimension * other.dimension)
        return Quantity.from_si(self.si * other, self.dimension)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["Quantity", Number]) -> "Quantity":
        if isinstance(other, Quantity):
            return Quantity.from_si(self.si / other.si, self.dimension / other.dimension)
        return Quantity.from_si(self.si / other, self.dimension)

    def __rtruediv__(self, other: Number) -> "Quantity":
        return Quantity.from_si(other / self.si, DIMENSIONLESS / self.dimension)

    def __pow__(self, power) -> "Quantity":
        return Quantity.from_si(self.si ** float(power), self.dimension ** _frac(power))

    def sqrt(self) -> "Quantity":
        return self ** Fraction(1, 2)

    def __neg__(self) -> "Quantity":
        return Quantity.from_si(-self.si, self.dimension)

    def __float__(self) -> float:
        if not self.dimension.is_dimensionless:
            raise DimensionError(
                f"cannot interpret quantity of dimension [{self.dimension}] as a bare float"
            )
        return self.si

    # -- conversion --------------------------------------------------------

    def to(self, unit_name: str) -> float:
        """Magnitude of this quantity expressed in ``unit_name``."""
        unit = lookup_unit(unit_name)
        if unit.dimension != self.dimension:
            raise DimensionError(
                f"cannot express dimension [{self.dimension}] in unit "
                f"'{unit.name}' of dimension [{unit.dimension}]"
            )
        return self.si / unit.scale

    def __str__(self) -> str:
        return f"{self.value} {self.unit.name}"


def convert(q: Quantity, target_unit: str) -> Quantity:
    """Re-express ``q`` in ``target_unit`` (same dimension required)."""
    return Quantity(q.to(target_unit), lookup_unit(target_unit))


# ---------------------------------------------------------------------------
# unit registry
# ---------------------------------------------------------------------------

def _metric(
    base_name: str,
    dimension: Dimension,
    base_scale: float,
    prefixes: dict[str, float],
) -> dict[str, Unit]:
    units = {base_name: Unit(base_name, dimension, base_scale)}
    for prefix, factor in prefixes.items():
        name = prefix + base_name
        units[name] = Unit(name, dimension, base_scale * factor)
    return units


_PREFIXES = {"m": 1e-3, "u": 1e-6, "n": 1e-9, "p": 1e-12, "f": 1e-15}

_UNITS: dict[str, Unit] = {}
_UNITS.update(_metric("T", MAGNETIC_FIELD, 1.0, _PREFIXES))
_UNITS.update(_metric("G", MAGNETIC_FIELD, 1e-4, _PREFIXES))  # 1 G = 1e-4 T exactly
_UNITS.update(_metric("s", TIME, 1.0, _PREFIXES))
_UNITS.update(_metric("T/rtHz", FIELD_NOISE_DENSITY, 1.0, _PREFIXES))
_UNITS.update(_metric("G/rtHz", FIELD_NOISE_DENSITY, 1e-4, _PREFIXES))
_UNITS.update(
    {
        "m": Unit("m", LENGTH, 1.0),
        "cm": Unit("cm", LENGTH, 1e-2),
        "mm": Unit("mm", LENGTH, 1e-3),
        "um": Unit("um", LENGTH, 1e-6),
        "K": Unit("K", TEMPERATURE, 1.0),
        "J": Unit("J", ENERGY, 1.0),
        "m3": Unit("m3", VOLUME, 1.0),
        "cm3": Unit("cm3", VOLUME, 1e-6),
        "mm3": Unit("mm3", VOLUME, 1e-9),
        "m2": Unit("m2", AREA, 1.0),
        "cm2": Unit("cm2", AREA, 1e-4),
        "m^-3": Unit("m^-3", NUMBER_DENSITY, 1.0),
        "cm^-3": Unit("cm^-3", NUMBER_DENSITY, 1e6),
        "mm^-3": Unit("mm^-3", NUMBER_DENSITY, 1e9),
        "m/s": Unit("m/s", VELOCITY, 1.0),
        "J/T": Unit("J/T", MAGNETIC_MOMENT, 1.0),
        "": Unit("", DIMENSIONLESS, 1.0),
    }
)

# accepted spellings for the same unit (CLI convenience); spellings that
# start with a digit (like "1/cm3") are deliberately absent — after a
# number in scientific notation they are ambiguous ("1e141/cm3")
_ALIASES = {
    "/m3": "m^-3",
    "m-3": "m^-3",
    "/cm3": "cm^-3",
    "cm-3": "cm^-3",
    "/mm3": "mm^-3",
    "m^3": "m3",
    "cm^3": "cm3",
    "mm^3": "mm3",
    "m^2": "m2",
    "cm^2": "cm2",
    "T/sqrtHz": "T/rtHz",
    "pT/sqrtHz": "pT/rtHz",
    "fT/sqrtHz": "fT/rtHz",
    "G/sqrtHz": "G/rtHz",
    "pG/sqrtHz": "pG/rtHz",
}


def lookup_unit(name: str) -> Unit:
    key = name.strip()
    key = _ALIASES.get(key, key)
    try:
        return _UNITS[key]
    except KeyError:
        known = ", ".join(sorted(k for k in _UNITS if k))
        raise DimensionError(f"unknown unit '{name}' (known units: {known})") from None


_QUANTITY_RE = re.compile(
    r"^\s*(?P<num>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*(?P<unit>\S*)\s*$"
)


def parse_quantity(text: str, expect: Dimension | None = None) -> Quantity:
    """Parse ``<number><unit>`` (e.g. ``2e13/cm3``, ``0.5e-5s``, ``300pT/rtHz``).

    A bare number parses as dimensionless.  If ``expect`` is given, the
    parsed dimension must match it (so a bare number is rejected for any
    dimensioned target).
    """
    m = _QUANTITY_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse quantity from '{text}'")
    q = Quantity.from_unit(float(m.group("num")), m.group("unit"))
    if expect is not None and q.dimension != expect:
        if q.unit.name == "":
            raise DimensionError(
                f"'{text}' has no unit; expected a value of dimension [{expect}] "
                f"(e.g. unit suffixes like 'cm3', 'us', 'pT/rtHz')"
            )
        raise DimensionError(
            f"'{text}' has dimension [{q.dimension}] but a value of dimension "
            f"[{expect}] is required"
        )
    return q


# ---------------------------------------------------------------------------
# physical constants (CODATA 2018)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA 2018 values, SI.  Frozen in source so results are reproducible
    independent of any constants library shipped with the environment."""

    hbar: float = 1.0545718176461565e-34   # J*s, h/(2*pi) with h exact
    k_B: float = 1.380649e-23              # J/K, exact
    mu_0: float = 1.25663706212e-06        # N/A^2
    mu_B: float = 9.2740100783e-24         # J/T, Bohr magneton
    Phi_0: float = 2.0678338484619295e-15  # Wb, h/(2e) with h, e exact
    atomic_mass: float = 1.66053906660e-27  # kg, unified atomic mass unit


_CONSTANTS = PhysicalConstants()

_CONSTANT_DIMENSIONS = {
    "hbar": ACTION,
    "k_B": ENERGY / TEMPERATURE,
    "mu_0": PERMEABILITY,
    "mu_B": MAGNETIC_MOMENT,
    "Phi_0": MAGNETIC_FLUX,
    "atomic_mass": Dimension.of(kg=1),
}


def constants() -> PhysicalConstants:
    return _CONSTANTS


def constant_quantity(name: str) -> Quantity:
    """The named constant as a dimension-tagged :class:`Quantity`."""
    try:
        dim = _CONSTANT_DIMENSIONS[name]
    except KeyError:
        raise KeyError(f"no such constant: {name!r}") from None
    return Quantity.from_si(getattr(_CONSTANTS, name), dim)
