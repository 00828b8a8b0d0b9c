"""Technology-specific energy-resolution predictors.

Three sensor families are modeled:

* **Alkali vapor** — the spin-destruction collision floor.  The field
  sensitivity of an N-atom cell relaxing at rate 1/tau = n sigma_sd v_bar
  is  dB = (pi / 2 ln 2) hbar sigma_sd v_bar sqrt(N) / (mu V),  and the
  corresponding energy resolution (dB)^2 V tau / (2 mu_0 hbar) collapses to
  a volume- and density-independent number,
  (pi^2 / 8 ln^2 2) hbar sigma_sd v_bar / (mu_0 mu^2).
* **SQUID** — one readout at flux noise p Phi_0 gains -p ln p nats, so the
  predicted resolution is (-p ln p) k_B T tau / hbar.
* **Diamond (NV)** — a projective readout gains ln 2 nats:
  k_B T ln 2 tau / hbar, plus a measured-value route from the white-noise
  spectral density.

The vapor model also exposes the correlation picture: the number of atoms
N_c = (hbar v_bar / mu_0 mu^2)^2 sigma_sd n^(-2/3) that a dipolar-strength
argument groups into one correlated block, the block volume V_c = N_c / n,
the collision time T_coll = n^(-1/3) / v_bar and the per-collision phase
phi = sqrt(T_coll / tau).  The bare amplification factor
kappa_bare = hbar sigma_sd v_bar / (mu_0 mu^2) satisfies
kappa_bare = sqrt(N_c) phi identically.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path

from .bounds import THEORETICAL_FLOOR_HBAR, spin_temperature
from .species import Species
from .units import constants

__all__ = [
    "VaporCell",
    "AtomicErlReport",
    "atomic_floor",
    "invert_sigma_v",
    "atomic_psd",
    "SquidSpec",
    "squid_erl",
    "DiamondSpec",
    "diamond_erl",
    "measured_erl_from_psd",
    "ComparisonRow",
    "compare_published",
    "comparison_to_csv",
    "load_published_records",
    "default_published_records",
]

_LN2 = math.log(2.0)


# ---------------------------------------------------------------------------
# atomic vapor
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VaporCell:
    """A vapor cell: species plus density [m^-3], volume [m^3], temperature [K].

    ``cell_temperature = None`` means "at the species' calibration
    temperature", which reproduces the calibrated rate coefficient exactly.
    """

    species: Species
    number_density: float
    volume: float
    cell_temperature: float | None = None

    def __post_init__(self):
        if self.number_density <= 0:
            raise ValueError(f"number density must be positive, got {self.number_density}")
        if self.volume <= 0:
            raise ValueError(f"volume must be positive, got {self.volume}")
        if self.atom_count < 1:
            raise ValueError(
                f"cell must contain at least one atom, got N = {self.atom_count}"
            )
        if self.cell_temperature is not None and self.cell_temperature <= 0:
            raise ValueError(f"cell temperature must be positive, got {self.cell_temperature}")

    @property
    def atom_count(self) -> float:
        return self.number_density * self.volume

    @property
    def temperature(self) -> float:
        if self.cell_temperature is not None:
            return self.cell_temperature
        return self.species.reference_temperature_K


@dataclass(frozen=True)
class AtomicErlReport:
    """Everything the vapor floor model derives for one cell (SI units)."""

    atom_count: float
    relaxation_time: float              # s
    delta_B_floor: float                # T
    erl_hbar: float                     # units of hbar
    kappa: float                        # with the 3 pi / (4 ln 2) prefactor
    kappa_bare: float                   # hbar sigma_sd v_bar / (mu_0 mu^2)
    spin_temperature: float             # K, evaluated at B = delta_B_floor
    correlation_atoms: float            # N_c
    correlation_volume: float           # m^3
    collision_time: float               # s
    sd_phase: float                     # phi
    delta_B_uncertainty_check: float    # T, collective-spin uncertainty route
    psd: float                          # T/sqrt(Hz)


def invert_sigma_v(delta_B: float, mu: float, volume: float, atom_count: float) -> float:
    """Rate coefficient sigma_sd * v_bar implied by a sensitivity floor  [m^3/s].

    Exact inverse of the floor formula:
    sigma_sd v_bar = dB mu V 2 ln 2 / (pi hbar sqrt(N)).  This is the
    calibration oracle that fixes the effective cross sections shipped in
    the species catalog from published sensitivity numbers.
    """
    if delta_B <= 0 or mu <= 0 or volume <= 0 or atom_count <= 0:
        raise ValueError("invert_sigma_v requires positive delta_B, mu, volume, atom_count")
    return (
        delta_B * mu * volume * 2.0 * _LN2 / (math.pi * constants().hbar * math.sqrt(atom_count))
    )


def atomic_psd(delta_B: float, tau: float) -> float:
    """White-noise spectral density dB * sqrt(tau)  [T/sqrt(Hz)].

    The floor dB is resolved over a bandwidth 1/tau, so the equivalent
    density is dB spread over sqrt(1/tau).
    """
    if tau <= 0:
        raise ValueError(f"relaxation time must be positive, got {tau}")
    if delta_B < 0:
        raise ValueError(f"field floor must be non-negative, got {delta_B}")
    return delta_B * math.sqrt(tau)


def atomic_floor(cell: VaporCell) -> AtomicErlReport:
    """Full spin-destruction-floor report for a vapor cell.

    Uses the calibrated cross section of ``cell.species``; two independent
    algebraic routes to the field floor are evaluated and cross-checked.
    """
    sp = cell.species
    if sp.sd_cross_section_m2 is None:
        raise ValueError(
            f"species {sp.name!r} has no spin-destruction cross section; "
            "calibrate one with invert_sigma_v first"
        )
    c = constants()
    n = cell.number_density
    N = cell.atom_count
    V = cell.volume
    mu = sp.magnetic_moment
    v_bar = sp.mean_relative_velocity(cell.temperature)
    sigma = sp.sd_cross_section_m2
    sigma_v = sigma * v_bar

    tau = 1.0 / (n * sigma_v)
    sqrt_N = math.sqrt(N)

    delta_B = math.pi / (2.0 * _LN2) * c.hbar * sigma_v * sqrt_N / (mu * V)
    delta_B_via_tau = math.pi * c.hbar / (2.0 * _LN2 * mu * sqrt_N * tau)
    if not math.isfinite(delta_B) or abs(delta_B - delta_B_via_tau) > 1e-9 * delta_B:
        raise RuntimeError(
            f"internal inconsistency in field-floor routes: {delta_B} vs {delta_B_via_tau}"
        )

    kappa_bare = c.hbar * sigma_v / (c.mu_0 * mu * mu)
    kappa = 3.0 * math.pi / (4.0 * _LN2) * kappa_bare
    erl_hbar = math.pi**2 / (8.0 * _LN2**2) * kappa_bare
    if erl_hbar < THEORETICAL_FLOOR_HBAR:
        raise ValueError(
            f"collision floor {erl_hbar:.3g} hbar falls below the universal pi/2 floor; "
            "inputs are outside the regime where spin-destruction noise dominates"
        )

    correlation_atoms = (c.hbar * v_bar / (c.mu_0 * mu * mu)) ** 2 * sigma * n ** (-2.0 / 3.0)
    correlation_volume = correlation_atoms / n
    collision_time = n ** (-1.0 / 3.0) / v_bar
    sd_phase = math.sqrt(collision_time / tau)

    return AtomicErlReport(
        atom_count=N,
        relaxation_time=tau,
        delta_B_floor=delta_B,
        erl_hbar=erl_hbar,
        kappa=kappa,
        kappa_bare=kappa_bare,
        spin_temperature=spin_temperature(N, delta_B, mu),
        correlation_atoms=correlation_atoms,
        correlation_volume=correlation_volume,
        collision_time=collision_time,
        sd_phase=sd_phase,
        delta_B_uncertainty_check=c.hbar / (mu * tau * sqrt_N),
        psd=atomic_psd(delta_B, tau),
    )


# ---------------------------------------------------------------------------
# SQUID
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SquidSpec:
    """SQUID readout: flux noise as a fraction p of the flux quantum in a
    1 Hz bandwidth, bath temperature [K], measurement time [s]."""

    flux_noise_fraction: float
    bath_temperature: float
    measurement_time: float
    measured_erl_hbar: float | None = None

    def __post_init__(self):
        p = self.flux_noise_fraction
        if not 0.0 < p < 1.0:
            raise ValueError(f"flux noise fraction must lie in (0, 1), got {p}")
        if self.bath_temperature <= 0:
            raise ValueError(f"bath temperature must be positive, got {self.bath_temperature}")
        if self.measurement_time <= 0:
            raise ValueError(f"measurement time must be positive, got {self.measurement_time}")


def squid_erl(spec: SquidSpec) -> float:
    """Predicted SQUID energy resolution (-p ln p) k_B T tau / hbar  [hbar].

    One flux readout at noise level p Phi_0 acquires -p ln p nats about the
    field; charging the thermodynamic cost of that information over the
    measurement time gives the bound.
    """
    p = spec.flux_noise_fraction
    info_nats = -p * math.log(p)
    c = constants()
    return info_nats * c.k_B * spec.bath_temperature * spec.measurement_time / c.hbar


# ---------------------------------------------------------------------------
# diamond
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiamondSpec:
    """NV-ensemble sensor: bath temperature [K], spin relaxation time [s],
    measured white-noise density [T/sqrt(Hz)], sensing volume [m^3]."""

    bath_temperature: float
    relaxation_time: float
    noise_density: float | None = None
    sensing_volume: float | None = None

    def __post_init__(self):
        if self.bath_temperature <= 0:
            raise ValueError(f"bath temperature must be positive, got {self.bath_temperature}")
        if self.relaxation_time <= 0:
            raise ValueError(f"relaxation time must be positive, got {self.relaxation_time}")
        if self.noise_density is not None and self.noise_density <= 0:
            raise ValueError(f"noise density must be positive, got {self.noise_density}")
        if self.sensing_volume is not None and self.sensing_volume <= 0:
            raise ValueError(f"sensing volume must be positive, got {self.sensing_volume}")


def diamond_erl(temperature_K: float, tau_s: float) -> float:
    """Optimal projective-readout resolution k_B T ln2 tau / hbar  [hbar].

    A binary spin readout extracts at most one bit (ln 2 nats) per
    relaxation time.
    """
    if temperature_K <= 0:
        raise ValueError(f"temperature must be positive, got {temperature_K}")
    if tau_s < 0:
        raise ValueError(f"relaxation time must be non-negative, got {tau_s}")
    c = constants()
    return c.k_B * temperature_K * _LN2 * tau_s / c.hbar


def measured_erl_from_psd(psd: float, volume: float) -> float:
    """Per-unit-bandwidth energy resolution psd^2 V / (2 mu_0 hbar)  [hbar].

    For a white-noise-limited sensor psd^2 = (dB)^2 tau, so the tau of the
    resolution product is already inside the square.
    """
    if psd < 0:
        raise ValueError(f"noise density must be non-negative, got {psd}")
    if volume <= 0:
        raise ValueError(f"volume must be positive, got {volume}")
    c = constants()
    return psd**2 * volume / (2.0 * c.mu_0 * c.hbar)


# ---------------------------------------------------------------------------
# published-record comparison
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComparisonRow:
    label: str
    p: float
    T_K: float
    tau_s: float
    predicted_erl_hbar: float
    measured_erl_hbar: float
    ratio: float        # measured / predicted
    flagged: bool       # ratio < 1 would undercut the thermodynamic bound


@dataclass(frozen=True)
class PublishedRecord:
    label: str
    spec: SquidSpec


def compare_published(records: list[PublishedRecord]) -> list[ComparisonRow]:
    """Predicted-vs-measured table, in input order.

    A ratio below 1 (measurement better than the thermodynamic prediction)
    is flagged as a warning, not an error.
    """
    rows = []
    for rec in records:
        if rec.spec.measured_erl_hbar is None:
            raise ValueError(f"record {rec.label!r} has no measured ERL to compare against")
        predicted = squid_erl(rec.spec)
        measured = rec.spec.measured_erl_hbar
        ratio = measured / predicted
        rows.append(
            ComparisonRow(
                label=rec.label,
                p=rec.spec.flux_noise_fraction,
                T_K=rec.spec.bath_temperature,
                tau_s=rec.spec.measurement_time,
                predicted_erl_hbar=predicted,
                measured_erl_hbar=measured,
                ratio=ratio,
                flagged=ratio < 1.0,
            )
        )
    return rows


_CSV_COLUMNS = (
    "label",
    "p",
    "T_K",
    "tau_s",
    "predicted_erl_hbar",
    "measured_erl_hbar",
    "ratio",
)


def comparison_to_csv(rows: list[ComparisonRow], digits: int | None = None) -> str:
    """Comparison table as CSV text (fixed column set, input order).

    ``digits`` rounds to that many significant figures; ``None`` keeps full
    float precision (shortest round-trip repr).
    """

    def fmt(x: float) -> str:
        return repr(x) if digits is None else f"{x:.{digits}g}"

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_CSV_COLUMNS)
    for row in rows:
        writer.writerow(
            [
                row.label,
                fmt(row.p),
                fmt(row.T_K),
                fmt(row.tau_s),
                fmt(row.predicted_erl_hbar),
                fmt(row.measured_erl_hbar),
                fmt(row.ratio),
            ]
        )
    return buf.getvalue()


def load_published_records(path: str | Path) -> list[PublishedRecord]:
    """Load comparison records from a JSON array of
    ``{"label", "p", "T_K", "tau_s", "measured_erl_hbar"}`` objects."""
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: not valid JSON: {exc}") from None
    if not isinstance(doc, list):
        raise ValueError(f"{path}: expected a JSON array of records")
    records = []
    for idx, rec in enumerate(doc):
        where = f"{path}: record {idx}"
        if not isinstance(rec, dict):
            raise ValueError(f"{where}: expected an object")
        label = rec.get("label")
        if not isinstance(label, str) or not label:
            raise ValueError(f"{where}: missing or empty 'label'")
        values = {}
        for key in ("p", "T_K", "tau_s", "measured_erl_hbar"):
            value = rec.get(key)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ValueError(f"{where}: field {key!r} must be a number, got {value!r}")
            values[key] = float(value)
        try:
            spec = SquidSpec(
                flux_noise_fraction=values["p"],
                bath_temperature=values["T_K"],
                measurement_time=values["tau_s"],
                measured_erl_hbar=values["measured_erl_hbar"],
            )
        except ValueError as exc:
            raise ValueError(f"{where}: {exc}") from None
        records.append(PublishedRecord(label=label, spec=spec))
    return records


def default_published_records() -> list[PublishedRecord]:
    """The five bundled SQUID comparison records."""
    return load_published_records(Path(__file__).parent / "data" / "squid_records.json")
