"""Command-line front end.

Commands map one-to-one onto library operations: ``atomic`` ->
``sensors.atomic_floor``, ``squid`` -> ``sensors.squid_erl``, ``diamond``
-> ``sensors.diamond_erl`` / ``measured_erl_from_psd``, ``simulate`` ->
``spinsim.simulate_transient``, ``table1``/``table2``/``compare`` ->
the bundled reproduction tables.

Every dimensioned value on the command line must carry a unit suffix
(``1e14/cm3``, ``10cm3``, ``0.5e-5s``, ``300pT/rtHz``); bare numbers are
accepted only for dimensionless parameters.  Exit codes: 0 success,
1 usage error, 2 validation error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import __version__
from .report import Report, ReportRow, render_csv, render_json, render_text
from .sensors import (
    SquidSpec,
    VaporCell,
    atomic_floor,
    compare_published,
    comparison_to_csv,
    default_published_records,
    diamond_erl,
    load_published_records,
    measured_erl_from_psd,
    squid_erl,
)
from .species import default_catalog, load_catalog
from .spinsim import SimConfig, result_to_json, simulate_transient, write_trajectory_csv
from .units import (
    FIELD_NOISE_DENSITY,
    NUMBER_DENSITY,
    TEMPERATURE,
    TIME,
    VOLUME,
    parse_quantity,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_IO = 3

# reference cell shared by the table1 reproduction: n = 1e14 cm^-3, V = 10 cm^3
_TABLE1_DENSITY = 1e20  # m^-3
_TABLE1_VOLUME = 1e-5   # m^3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); route to our taxonomy
        raise _UsageError(message)


def _common_options(default_format: str = "text") -> _Parser:
    p = _Parser(add_help=False)
    p.add_argument(
        "--format",
        choices=("text", "json", "csv"),
        default=default_format,
        help=f"output format (default: {default_format})",
    )
    p.add_argument("--output", metavar="PATH", help="write output to PATH instead of stdout")
    p.add_argument(
        "--digits",
        type=int,
        default=6,
        metavar="N",
        help="significant digits for text/csv floats (default: 6)",
    )
    return p


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="erlab",
        description="Energy-resolution limits for magnetometers and a spin-noise Monte Carlo.",
        allow_abbrev=False,
    )
    parser.add_argument("--version", action="version", version=f"erlab {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    p = sub.add_parser(
        "species-list",
        parents=[_common_options()],
        help="list the species catalog with derived quantities",
    )
    p.add_argument("--species-file", metavar="PATH", help="species catalog JSON (overrides bundled)")
    p.set_defaults(handler=_cmd_species_list)

    p = sub.add_parser(
        "atomic",
        parents=[_common_options()],
        help="vapor-cell field floor and energy resolution",
    )
    p.add_argument("--species", required=True, help="catalog species, e.g. Cs or 133Cs")
    p.add_argument("--density", required=True, help="number density, e.g. 1e14/cm3")
    p.add_argument("--volume", required=True, help="cell volume, e.g. 10cm3")
    p.add_argument("--temp", help="cell temperature, e.g. 400K (default: calibration temperature)")
    p.add_argument("--species-file", metavar="PATH", help="species catalog JSON (overrides bundled)")
    p.set_defaults(handler=_cmd_atomic)

    p = sub.add_parser(
        "squid",
        parents=[_common_options()],
        help="SQUID readout energy resolution from flux noise",
    )
    p.add_argument("--p", required=True, type=float, help="flux noise as a fraction of Phi_0 (bare number)")
    p.add_argument("--temp", required=True, help="bath temperature, e.g. 4.2K")
    p.add_argument("--tau", required=True, help="measurement time, e.g. 0.5e-5s")
    p.add_argument("--measured", type=float, help="measured energy resolution in hbar units, for comparison")
    p.set_defaults(handler=_cmd_squid)

    p = sub.add_parser(
        "diamond",
        parents=[_common_options()],
        help="diamond (NV) sensor energy resolution",
    )
    p.add_argument("--temp", required=True, help="bath temperature, e.g. 300K")
    p.add_argument("--tau", required=True, help="spin relaxation time, e.g. 1us")
    p.add_argument("--psd", help="measured noise density, e.g. 300pT/rtHz (with --volume)")
    p.add_argument("--volume", help="sensing volume, e.g. 2.79e-12m3 (with --psd)")
    p.set_defaults(handler=_cmd_diamond)

    p = sub.add_parser(
        "table1",
        parents=[_common_options()],
        help="vapor floor for the catalog species at the reference cell",
    )
    p.add_argument("--species-file", metavar="PATH", help="species catalog JSON (overrides bundled)")
    p.set_defaults(handler=_cmd_table1)

    p = sub.add_parser(
        "table2",
        parents=[_common_options()],
        help="predicted vs measured SQUID energy resolutions",
    )
    p.add_argument("--records", metavar="PATH", help="records JSON (default: bundled)")
    p.set_defaults(handler=_cmd_table2)

    p = sub.add_parser(
        "compare",
        parents=[_common_options()],
        help="compare a records file against the prediction",
    )
    p.add_argument("--records", metavar="PATH", required=True, help="records JSON")
    p.set_defaults(handler=_cmd_table2)

    p = sub.add_parser(
        "simulate",
        parents=[_common_options(default_format="json")],
        help="Monte Carlo spin-noise transient",
    )
    p.add_argument("--atoms", required=True, type=float, help="ensemble size N (bare number)")
    p.add_argument("--trajectories", required=True, type=int, help="Monte Carlo sample size")
    p.add_argument("--seed", required=True, type=int, help="64-bit RNG seed")
    p.add_argument("--tau", default="1s", help="relaxation time with unit (default: 1s)")
    p.add_argument("--steps-per-tau", type=int, default=100, help="time resolution (default: 100)")
    p.add_argument("--horizon", type=float, default=1.0, help="endpoint in units of tau (default: 1)")
    p.add_argument("--workers", type=int, default=1, help="parallel workers (output-invariant)")
    p.add_argument(
        "--dump-trajectories",
        metavar="I,J,...",
        help="comma-separated trajectory indices to dump as CSV",
    )
    p.add_argument("--dump-dir", metavar="DIR", default=".", help="directory for trajectory dumps")
    p.set_defaults(handler=_cmd_simulate)

    return parser


# ---------------------------------------------------------------------------
# handlers (each returns the fully rendered output string)
# ---------------------------------------------------------------------------

def _header(**inputs) -> dict:
    return {"tool": f"erlab {__version__}", **inputs}


def _render_report(report: Report, args) -> str:
    if args.format == "json":
        return render_json(report)
    if args.format == "csv":
        return render_csv(report, args.digits)
    return render_text(report, args.digits)


def _catalog(args):
    if getattr(args, "species_file", None):
        return load_catalog(args.species_file)
    return default_catalog()


def _cmd_species_list(args) -> str:
    rows = []
    for sp in _catalog(args):
        rows += [
            ReportRow(f"{sp.name}.nuclear_spin", str(sp.nuclear_spin), "", "measured"),
            ReportRow(f"{sp.name}.mass", sp.mass_kg / 1.66053906660e-27, "amu", "measured"),
            ReportRow(
                f"{sp.name}.sd_cross_section",
                float("nan") if sp.sd_cross_section_m2 is None else sp.sd_cross_section_m2 * 1e4,
                "cm2",
                "derived",
            ),
            ReportRow(f"{sp.name}.reference_temperature", sp.reference_temperature_K, "K", "derived"),
            ReportRow(f"{sp.name}.slowing_factor", sp.slowing_factor, "", "derived"),
            ReportRow(f"{sp.name}.magnetic_moment", sp.magnetic_moment, "J/T", "derived"),
            ReportRow(
                f"{sp.name}.mean_relative_velocity",
                sp.mean_relative_velocity(),
                "m/s",
                "derived",
            ),
        ]
    report = Report("species catalog", _header(), tuple(rows))
    return _render_report(report, args)


def _atomic_rows(prefix: str, rep) -> list[ReportRow]:
    return [
        ReportRow(f"{prefix}atom_count", rep.atom_count, "", "derived"),
        ReportRow(f"{prefix}relaxation_time", rep.relaxation_time, "s", "derived"),
        ReportRow(f"{prefix}delta_B_floor", rep.delta_B_floor, "T", "predicted"),
        ReportRow(f"{prefix}erl", rep.erl_hbar, "hbar", "predicted"),
        ReportRow(f"{prefix}kappa", rep.kappa, "", "derived"),
        ReportRow(f"{prefix}kappa_bare", rep.kappa_bare, "", "derived"),
        ReportRow(f"{prefix}spin_temperature", rep.spin_temperature, "K", "derived"),
        ReportRow(f"{prefix}correlation_atoms", rep.correlation_atoms, "", "derived"),
        ReportRow(f"{prefix}correlation_volume", rep.correlation_volume, "m3", "derived"),
        ReportRow(f"{prefix}collision_time", rep.collision_time, "s", "derived"),
        ReportRow(f"{prefix}sd_phase", rep.sd_phase, "", "derived"),
        ReportRow(f"{prefix}delta_B_uncertainty_check", rep.delta_B_uncertainty_check, "T", "derived"),
        ReportRow(f"{prefix}psd", rep.psd, "T/rtHz", "predicted"),
    ]


def _cmd_atomic(args) -> str:
    catalog = _catalog(args)
    species = catalog.get(args.species)
    density = parse_quantity(args.density, NUMBER_DENSITY).si
    volume = parse_quantity(args.volume, VOLUME).si
    temperature = parse_quantity(args.temp, TEMPERATURE).si if args.temp else None
    cell = VaporCell(species, density, volume, temperature)
    rep = atomic_floor(cell)
    report = Report(
        "vapor-cell spin-destruction floor",
        _header(
            species=species.name,
            number_density_per_m3=density,
            volume_m3=volume,
            cell_temperature_K=cell.temperature,
        ),
        tuple(_atomic_rows("", rep)),
    )
    return _render_report(report, args)


def _cmd_squid(args) -> str:
    temperature = parse_quantity(args.temp, TEMPERATURE).si
    tau = parse_quantity(args.tau, TIME).si
    spec = SquidSpec(args.p, temperature, tau, args.measured)
    predicted = squid_erl(spec)
    rows = [
        ReportRow("flux_noise_fraction", spec.flux_noise_fraction, "", "measured"),
        ReportRow("bath_temperature", temperature, "K", "measured"),
        ReportRow("measurement_time", tau, "s", "measured"),
        ReportRow("info_gained", -spec.flux_noise_fraction * math.log(spec.flux_noise_fraction), "nat", "derived"),
        ReportRow("predicted_erl", predicted, "hbar", "predicted"),
    ]
    if args.measured is not None:
        rows.append(ReportRow("measured_erl", args.measured, "hbar", "measured"))
        rows.append(ReportRow("ratio_measured_to_predicted", args.measured / predicted, "", "derived"))
    report = Report(
        "SQUID readout bound", _header(p=args.p, T_K=temperature, tau_s=tau), tuple(rows)
    )
    return _render_report(report, args)


def _cmd_diamond(args) -> str:
    temperature = parse_quantity(args.temp, TEMPERATURE).si
    tau = parse_quantity(args.tau, TIME).si
    if (args.psd is None) != (args.volume is None):
        raise ValueError("--psd and --volume must be given together for the measured route")
    optimal = diamond_erl(temperature, tau)
    rows = [
        ReportRow("bath_temperature", temperature, "K", "measured"),
        ReportRow("relaxation_time", tau, "s", "measured"),
        ReportRow("optimal_erl", optimal, "hbar", "predicted"),
    ]
    header = _header(T_K=temperature, tau_s=tau)
    if args.psd is not None:
        psd = parse_quantity(args.psd, FIELD_NOISE_DENSITY).si
        volume = parse_quantity(args.volume, VOLUME).si
        measured = measured_erl_from_psd(psd, volume)
        rows += [
            ReportRow("noise_density", psd, "T/rtHz", "measured"),
            ReportRow("sensing_volume", volume, "m3", "measured"),
            ReportRow("measured_erl", measured, "hbar", "measured"),
            ReportRow("ratio_measured_to_optimal", measured / optimal, "", "derived"),
        ]
    report = Report("diamond sensor bound", header, tuple(rows))
    return _render_report(report, args)


def _cmd_table1(args) -> str:
    catalog = _catalog(args)
    rows = []
    for sp in catalog:
        rep = atomic_floor(VaporCell(sp, _TABLE1_DENSITY, _TABLE1_VOLUME))
        rows += [
            ReportRow(f"{sp.name}.delta_B_floor", rep.delta_B_floor / 1e-17, "1e-17 T", "predicted"),
            ReportRow(f"{sp.name}.erl", rep.erl_hbar, "hbar", "predicted"),
        ]
    report = Report(
        "vapor floor at the reference cell",
        _header(number_density_per_cm3=1e14, volume_cm3=10.0),
        tuple(rows),
    )
    return _render_report(report, args)


def _cmd_table2(args) -> str:
    if getattr(args, "records", None):
        records = load_published_records(args.records)
    else:
        records = default_published_records()
    comparison = compare_published(records)
    if args.format == "csv":
        return comparison_to_csv(comparison, args.digits)
    rows = []
    for row in comparison:
        rows += [
            ReportRow(f"{row.label}.p", row.p, "", "measured"),
            ReportRow(f"{row.label}.bath_temperature", row.T_K, "K", "measured"),
            ReportRow(f"{row.label}.measurement_time", row.tau_s, "s", "measured"),
            ReportRow(f"{row.label}.predicted_erl", row.predicted_erl_hbar, "hbar", "predicted"),
            ReportRow(f"{row.label}.measured_erl", row.measured_erl_hbar, "hbar", "measured"),
            ReportRow(f"{row.label}.ratio", row.ratio, "", "derived"),
        ]
        if row.flagged:
            rows.append(
                ReportRow(f"{row.label}.warning", "measured below prediction", "", "derived")
            )
    report = Report(
        "SQUID energy resolution: prediction vs measurement",
        _header(records=len(comparison)),
        tuple(rows),
    )
    return _render_report(report, args)


def _cmd_simulate(args) -> str:
    tau = parse_quantity(args.tau, TIME).si
    atoms = int(args.atoms) if float(args.atoms).is_integer() else args.atoms
    config = SimConfig(
        atom_count=atoms,
        relaxation_time=tau,
        trajectory_count=args.trajectories,
        steps_per_tau=args.steps_per_tau,
        horizon=args.horizon,
        seed=args.seed,
    )
    indices: tuple[int, ...] = ()
    if args.dump_trajectories:
        try:
            indices = tuple(int(tok) for tok in args.dump_trajectories.split(","))
        except ValueError:
            raise ValueError(
                f"--dump-trajectories must be comma-separated integers, got {args.dump_trajectories!r}"
            ) from None
    result = simulate_transient(config, workers=args.workers, sample_indices=indices)
    for sample in result.trajectory_sample:
        write_trajectory_csv(sample, Path(args.dump_dir) / f"trajectory_{sample.index}.csv")
    if args.format == "json":
        return result_to_json(result, config)
    if args.format == "csv":
        return (
            "variance,std_error,mean\n"
            f"{result.variance_at_horizon!r},{result.standard_error!r},"
            f"{result.mean_over_trajectories!r}\n"
        )
    report = Report(
        "spin-noise transient Monte Carlo",
        _header(**config.config_echo()),
        (
            ReportRow("variance_at_horizon", result.variance_at_horizon, "", "predicted"),
            ReportRow("uncertainty", math.sqrt(result.variance_at_horizon), "", "predicted"),
            ReportRow("mean_over_trajectories", result.mean_over_trajectories, "", "derived"),
            ReportRow("standard_error_of_mean", result.standard_error, "", "derived"),
            ReportRow("variance_standard_error", result.variance_standard_error, "", "derived"),
        ),
    )
    return _render_report(report, args)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _fail(code: int, category: str, message) -> int:
    text = str(message).replace("\n", " ")
    print(f"erlab: error: {category}: {text}", file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        return _fail(EXIT_USAGE, "usage", exc)
    if getattr(args, "handler", None) is None:
        return _fail(EXIT_USAGE, "usage", "a command is required (try --help)")
    try:
        content = args.handler(args)
    except _UsageError as exc:
        return _fail(EXIT_USAGE, "usage", exc)
    except KeyError as exc:
        return _fail(EXIT_VALIDATION, "validation", exc.args[0] if exc.args else exc)
    except ValueError as exc:  # includes DimensionError
        return _fail(EXIT_VALIDATION, "validation", exc)
    except OSError as exc:
        return _fail(EXIT_IO, "io", exc)
    try:
        if args.output:
            Path(args.output).write_text(content, encoding="utf-8")
        else:
            sys.stdout.write(content)
    except OSError as exc:
        return _fail(EXIT_IO, "io", exc)
    return EXIT_OK
