"""Alkali-atom catalog and hyperfine/kinetic helpers.

The catalog maps isotope names to the four numbers the vapor-floor model
needs: nuclear spin, atomic mass, an effective spin-destruction cross
section, and the reference cell temperature at which that cross section
was calibrated.  Cross sections here are *calibrated* quantities: they are
obtained by inverting the published sensitivity floor of each species at a
reference cell (see ``erlab.sensors.invert_sigma_v``), so they absorb the
unknown split between the true cross section and the thermal velocity at
the unstated calibration temperature.  They are effective parameters of
the model, not literature collision data.

Electron spin is S = 1/2 throughout (alkali ground state).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .units import constants

__all__ = [
    "slowing_factor",
    "magnetic_moment",
    "mean_relative_velocity",
    "sd_relaxation_time",
    "Species",
    "SpeciesCatalog",
    "load_catalog",
    "default_catalog",
    "SPECIES_FILE_ENV_VAR",
]

SPECIES_FILE_ENV_VAR = "ERLAB_SPECIES_FILE"

_ELECTRON_SPIN_TERM = Fraction(3, 4)  # S(S+1) for S = 1/2


def slowing_factor(nuclear_spin) -> float:
    """Hyperfine slowing-down factor q = [S(S+1) + I(I+1)] / [S(S+1)].

    ``nuclear_spin`` must be a non-negative half-integer (int, float or
    Fraction).  For I = 3/2 this gives q = 6; for I = 7/2, q = 22.
    """
    I = Fraction(nuclear_spin).limit_denominator(1_000_000)
    if Fraction(nuclear_spin) != I or (2 * I).denominator != 1:
        raise ValueError(f"nuclear spin must be a half-integer, got {nuclear_spin!r}")
    if I < 0:
        raise ValueError(f"nuclear spin must be non-negative, got {nuclear_spin!r}")
    q = (_ELECTRON_SPIN_TERM + I * (I + 1)) / _ELECTRON_SPIN_TERM
    return float(q)


def magnetic_moment(q: float) -> float:
    """Effective moment per atom, mu = mu_B / q  [J/T].

    The hyperfine coupling dilutes the electron moment by the slowing
    factor q >= 1.
    """
    if q < 1:
        raise ValueError(f"slowing factor must be >= 1, got {q}")
    return constants().mu_B / q


def mean_relative_velocity(mass_kg: float, temperature_K: float) -> float:
    """Mean relative speed of two identical atoms, sqrt(8 k_B T / (pi m/2))  [m/s].

    Kinetic theory for a thermal gas of identical collision partners: the
    reduced mass is half the atomic mass.  T = 0 is allowed and gives 0.
    """
    if mass_kg <= 0:
        raise ValueError(f"mass must be positive, got {mass_kg}")
    if temperature_K < 0:
        raise ValueError(f"temperature must be non-negative, got {temperature_K}")
    import math

    reduced_mass = mass_kg / 2.0
    return math.sqrt(8.0 * constants().k_B * temperature_K / (math.pi * reduced_mass))


def sd_relaxation_time(number_density: float, sigma_sd: float, v_bar: float) -> float:
    """Spin-destruction relaxation time tau = 1 / (n sigma_sd v_bar)  [s]."""
    if number_density <= 0:
        raise ValueError(f"number density must be positive, got {number_density}")
    if sigma_sd <= 0:
        raise ValueError(f"cross section must be positive, got {sigma_sd}")
    if v_bar <= 0:
        raise ValueError(f"relative velocity must be positive, got {v_bar}")
    return 1.0 / (number_density * sigma_sd * v_bar)


@dataclass(frozen=True)
class Species:
    """One catalog entry, SI except where the name says otherwise.

    ``sd_cross_section_m2`` may be ``None`` for a species that has not been
    calibrated yet; the vapor-floor model rejects such species until a
    cross section is fixed (see ``erlab.sensors.invert_sigma_v``).
    """

    name: str
    nuclear_spin: Fraction
    mass_kg: float
    sd_cross_section_m2: float | None
    reference_temperature_K: float

    @property
    def slowing_factor(self) -> float:
        return slowing_factor(self.nuclear_spin)

    @property
    def magnetic_moment(self) -> float:
        """Effective moment mu_B/q  [J/T]."""
        return magnetic_moment(self.slowing_factor)

    def mean_relative_velocity(self, temperature_K: float | None = None) -> float:
        """v_bar at the given cell temperature (reference temperature if omitted)."""
        T = self.reference_temperature_K if temperature_K is None else temperature_K
        return mean_relative_velocity(self.mass_kg, T)

    def sigma_v(self, temperature_K: float | None = None) -> float:
        """Rate coefficient sigma_sd * v_bar  [m^3/s] at the cell temperature."""
        if self.sd_cross_section_m2 is None:
            raise ValueError(
                f"species {self.name!r} has no spin-destruction cross section; "
                "calibrate one with invert_sigma_v first"
            )
        return self.sd_cross_section_m2 * self.mean_relative_velocity(temperature_K)


class SpeciesCatalog:
    """Immutable name -> Species mapping with bare-element aliases."""

    def __init__(self, species: list[Species]):
        self._by_name: dict[str, Species] = {}
        for sp in species:
            if sp.name in self._by_name:
                raise ValueError(f"duplicate species name {sp.name!r}")
            self._by_name[sp.name] = sp
        # '41K' is also reachable as 'K' when unambiguous
        self._aliases: dict[str, str] = {}
        stems: dict[str, list[str]] = {}
        for name in self._by_name:
            stem = name.lstrip("0123456789")
            stems.setdefault(stem, []).append(name)
        for stem, names in stems.items():
            if stem and stem not in self._by_name and len(names) == 1:
                self._aliases[stem] = names[0]

    def names(self) -> list[str]:
        return list(self._by_name)

    def __iter__(self):
        return iter(self._by_name.values())

    def __len__(self) -> int:
        return len(self._by_name)

    def get(self, name: str) -> Species:
        key = name.strip()
        key = self._aliases.get(key, key)
        try:
            return self._by_name[key]
        except KeyError:
            known = ", ".join(self.names())
            raise KeyError(f"unknown species {name!r} (catalog has: {known})") from None


def _parse_spin(text, where: str) -> Fraction:
    try:
        spin = Fraction(str(text))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"{where}: nuclear_spin {text!r} is not a fraction") from None
    if (2 * spin).denominator != 1 or spin < 0:
        raise ValueError(f"{where}: nuclear_spin {text!r} is not a non-negative half-integer")
    return spin


def _require_positive(record: dict, key: str, where: str) -> float:
    try:
        value = record[key]
    except KeyError:
        raise ValueError(f"{where}: missing field {key!r}") from None
    if not isinstance(value, (int, float)) or isinstance(value, bool) or not value > 0:
        raise ValueError(f"{where}: field {key!r} must be a positive number, got {value!r}")
    return float(value)


def load_catalog(path: str | Path) -> SpeciesCatalog:
    """Load a species catalog from a JSON file.

    Schema: ``{"species": [{"name", "nuclear_spin", "mass_amu",
    "sd_cross_section_cm2", "reference_temperature_K"}, ...]}``.
    Spins are exact fractions like ``"3/2"``; cross sections are given in
    cm^2 in the file and converted to SI on load.
    """
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("species"), list):
        raise ValueError(f"{path}: expected an object with a 'species' list")
    amu = constants().atomic_mass
    out = []
    for idx, record in enumerate(doc["species"]):
        where = f"{path}: species[{idx}]"
        if not isinstance(record, dict):
            raise ValueError(f"{where}: expected an object")
        name = record.get("name")
        if not isinstance(name, str) or not name:
            raise ValueError(f"{where}: missing or empty 'name'")
        # a null/absent cross section marks a species awaiting calibration
        if record.get("sd_cross_section_cm2") is None:
            sigma_m2 = None
        else:
            sigma_m2 = _require_positive(record, "sd_cross_section_cm2", where) * 1e-4
        out.append(
            Species(
                name=name,
                nuclear_spin=_parse_spin(record.get("nuclear_spin"), where),
                mass_kg=_require_positive(record, "mass_amu", where) * amu,
                sd_cross_section_m2=sigma_m2,
                reference_temperature_K=_require_positive(
                    record, "reference_temperature_K", where
                ),
            )
        )
    return SpeciesCatalog(out)


def default_catalog() -> SpeciesCatalog:
    """The bundled catalog, or the file named by ``ERLAB_SPECIES_FILE`` if set."""
    override = os.environ.get(SPECIES_FILE_ENV_VAR)
    if override:
        return load_catalog(override)
    return load_catalog(Path(__file__).parent / "data" / "species.json")
