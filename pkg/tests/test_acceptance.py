"""Acceptance gate: the eight published-value and consistency criteria.

Each test prints a single PASS/FAIL line (run pytest with ``-s`` to see
them) and then asserts.  Tolerances are fixed here and must not be
loosened to make a run green; reference numbers are published
two-significant-figure (or one-figure) roundings, so the tolerances
already account for that.
"""

import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from erlab.bounds import (
    erl_quantum,
    field_fluctuation_from_work,
    measurement_work_bound,
    ml_min_time,
    spin_temp_polarization,
)
from erlab.sensors import (
    VaporCell,
    atomic_floor,
    compare_published,
    default_published_records,
    diamond_erl,
    invert_sigma_v,
    measured_erl_from_psd,
)
from erlab.species import default_catalog
from erlab.spinsim import SimConfig, result_to_json, simulate_transient
from erlab.units import constants

C = constants()
LN2 = math.log(2)


def _verdict(criterion: int, ok: bool, detail: str) -> None:
    print(f"\ncriterion {criterion}: {'PASS' if ok else 'FAIL'} — {detail}", flush=True)
    assert ok, f"criterion {criterion} failed: {detail}"


# criterion 1 -----------------------------------------------------------------

def test_criterion_1_squid_table_reproduction():
    published = {
        "Schmelz2017": 2.1,
        "Wakai1988": 1.6,
        "Awschalom1988": 2.6,
        "Schmelz2016": 24.0,
        "Schmelz2011": 50.0,
    }
    start = time.perf_counter()
    rows = compare_published(default_published_records())
    elapsed = time.perf_counter() - start
    deviations = {}
    for row in rows:
        ref = published[row.label]
        deviations[row.label] = (row.predicted_erl_hbar - ref) / ref
    worst = max(abs(d) for d in deviations.values())
    ok = len(rows) == 5 and worst <= 0.10 and elapsed < 1.0
    _verdict(1, ok, f"five SQUID records within ±10% (worst {worst:+.2%}), {elapsed:.3f}s")


# criterion 2 -----------------------------------------------------------------

def test_criterion_2_diamond_sensor():
    start = time.perf_counter()
    optimal = diamond_erl(300.0, 1e-6)
    measured = measured_erl_from_psd(300e-12, 2.79e-12)
    elapsed = time.perf_counter() - start
    ok = 2.5e7 <= optimal <= 3.2e7 and 0.5e9 <= measured <= 2e9 and elapsed < 1.0
    _verdict(2, ok, f"optimal {optimal:.3g} in [2.5e7, 3.2e7]; measured {measured:.3g} in [5e8, 2e9]")


# criterion 3 -----------------------------------------------------------------

def test_criterion_3_vapor_floor_calibration_loop():
    """Calibration inverted from each row's field floor must land back on the
    published resolution column through the independent collision-rate route.

    The middle row's floor is published to one significant figure only; its
    anchored floor (from the resolution column) is used and checked to agree
    with the printed figure at that precision.
    """
    published_erl = {"41K": 4.0, "87Rb": 25.0, "133Cs": 6054.0}
    published_floor = {"41K": 2e-17, "87Rb": 1e-16, "133Cs": 1e-14}
    start = time.perf_counter()
    cat = default_catalog()
    deviations = {}
    for name, target in published_erl.items():
        sp = cat.get(name)
        rep = atomic_floor(VaporCell(sp, 1e20, 1e-5))
        # the shipped calibration is the inversion of the row's floor:
        # re-derive sigma_sd*v from the report's floor and check it matches
        sv = invert_sigma_v(rep.delta_B_floor, sp.magnetic_moment, 1e-5, rep.atom_count)
        assert sv == pytest.approx(sp.sigma_v(), rel=1e-9)
        # the floor used agrees with the printed column at its precision
        assert float(f"{rep.delta_B_floor:.0e}") == published_floor[name]
        deviations[name] = (rep.erl_hbar - target) / target
    elapsed = time.perf_counter() - start
    worst = max(abs(d) for d in deviations.values())
    ok = worst <= 0.15 and elapsed < 1.0
    _verdict(3, ok, f"resolution column within ±15% (worst {worst:+.2%}), {elapsed:.3f}s")


# criterion 4 -----------------------------------------------------------------

def test_criterion_4_small_cell_noise_density():
    start = time.perf_counter()
    rep = atomic_floor(VaporCell(default_catalog().get("133Cs"), 2e19, 1e-6))
    elapsed = time.perf_counter() - start
    psd_pG = rep.psd / 1e-16  # T/rtHz -> pG/rtHz (1 G = 1e-4 T)
    ok = 5.0 <= psd_pG <= 20.0 and elapsed < 1.0
    _verdict(4, ok, f"Cs cell noise density {psd_pG:.1f} pG/rtHz in [5, 20]")


# criterion 5 -----------------------------------------------------------------

def test_criterion_5_correlation_estimates():
    cat = default_catalog()
    k = atomic_floor(VaporCell(cat.get("41K"), 1e20, 1e-5))
    cs = atomic_floor(VaporCell(cat.get("133Cs"), 1e20, 1e-5))
    checks = {
        "K N_c": (k.correlation_atoms, 1e9),
        "K V_c": (k.correlation_volume, 0.01 * 1e-9),   # 0.01 mm^3 in m^3
        "Cs N_c": (cs.correlation_atoms, 1e13),
        "Cs V_c": (cs.correlation_volume, 0.1 * 1e-6),  # 0.1 cm^3 in m^3
    }
    factors = {label: max(v / ref, ref / v) for label, (v, ref) in checks.items()}
    worst = max(factors.values())
    ok = worst <= 3.0
    _verdict(5, ok, f"correlation sizes within a factor of 3 (worst {worst:.2f})")


# criterion 6 -----------------------------------------------------------------

def test_criterion_6_monte_carlo_grid_vs_oracle():
    start = time.perf_counter()
    trajectories = 100_000
    failures = []
    sigma_max = 0.0
    for N in (1e2, 1e4, 1e6):
        for h in (0.5, 1.0, 3.0):
            cfg = SimConfig(N, 1.0, trajectories, horizon=h, seed=20260815)
            res = simulate_transient(cfg, workers=4)
            # oracle evaluated here, independently of the library routine
            target = (h + 2.0 * math.exp(-h) - math.exp(-2.0 * h) / 2.0 - 1.5) / N
            sigma = abs(res.variance_at_horizon - target) / res.variance_standard_error
            sigma_max = max(sigma_max, sigma)
            if sigma > 3.0:
                failures.append((N, h, sigma))
            if h == 1.0:
                # published rounding: uncertainty 0.410/sqrt(N)
                u = math.sqrt(res.variance_at_horizon)
                stat = res.variance_standard_error / (2.0 * u)
                if abs(u - 0.410 / math.sqrt(N)) > 3.0 * stat + 1e-3 / math.sqrt(N):
                    failures.append((N, h, "uncertainty"))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60.0
    _verdict(
        6,
        ok,
        f"9-point grid at 1e5 trajectories within 3 sigma (max {sigma_max:.2f}), "
        f"uncertainty(h=1) = 0.410/sqrt(N); {elapsed:.1f}s",
    )


# criterion 7 -----------------------------------------------------------------

def test_criterion_7_algebraic_identities():
    rng = np.random.default_rng(20260815)
    draws = 1000
    worst = {"floor-vs-uncertainty": 0.0, "chain": 0.0, "inversion": 0.0}

    # (a) the floor formula equals (pi / 2 ln2) * hbar/(mu tau sqrt(N))
    for _ in range(draws):
        mu = C.mu_B / rng.uniform(1.0, 25.0)
        n = 10 ** rng.uniform(18.0, 22.0)
        V = 10 ** rng.uniform(-7.0, -4.0)
        sv = 10 ** rng.uniform(-21.0, -17.0)
        N, tau = n * V, 1.0 / (n * sv)
        floor = (math.pi / (2.0 * LN2)) * C.hbar * sv * math.sqrt(N) / (mu * V)
        uncertainty_route = (math.pi / (2.0 * LN2)) * C.hbar / (mu * tau * math.sqrt(N))
        worst["floor-vs-uncertainty"] = max(
            worst["floor-vs-uncertainty"], abs(floor / uncertainty_route - 1.0)
        )

    # (b) work bound -> field -> speed limit closes at pi/2
    for _ in range(draws):
        T = 10 ** rng.uniform(-2.0, 3.0)
        info = 10 ** rng.uniform(-6.0, 3.0)
        V = 10 ** rng.uniform(-12.0, 0.0)
        W = measurement_work_bound(T, info)
        erl = erl_quantum(field_fluctuation_from_work(W, V), V, ml_min_time(W))
        worst["chain"] = max(worst["chain"], abs(erl / (math.pi / 2.0) - 1.0))

    # (c) calibration inversion round trip
    for _ in range(draws):
        dB = 10 ** rng.uniform(-17.0, -13.0)
        mu = C.mu_B / rng.uniform(1.0, 25.0)
        V = 10 ** rng.uniform(-7.0, -4.0)
        N = 10 ** rng.uniform(12.0, 17.0)
        sv = invert_sigma_v(dB, mu, V, N)
        forward = (math.pi / (2.0 * LN2)) * C.hbar * sv * math.sqrt(N) / (mu * V)
        worst["inversion"] = max(worst["inversion"], abs(forward / dB - 1.0))

    # (d) small-argument polarization: |tanh(1/sqrt(N)) - 1/sqrt(N)| <= N^-1.5/3
    # for N >= 100.  Above N ~ 1e7 the inequality's slack (2 x^5/15, with
    # x = 1/sqrt(N)) falls below one rounding ulp of the argument, so a strict
    # binary64 comparison there measures rounding luck, not the Taylor bound;
    # the strict check runs where it is numerically decidable.
    tanh_ok = True
    for _ in range(draws):
        N = 10 ** rng.uniform(2.0, 6.0)
        x = 1.0 / math.sqrt(N)
        mu, B = C.mu_B / 6.0, 1e-12
        T_s = mu * B * math.sqrt(N) / (2.0 * C.k_B)
        pol = spin_temp_polarization(T_s, B, mu)
        tanh_ok = tanh_ok and abs(pol - x) <= N**-1.5 / 3.0

    worst_rel = max(worst.values())
    ok = worst_rel <= 1e-12 and tanh_ok
    _verdict(7, ok, f"three identities ≤ 1e-12 relative (worst {worst_rel:.2e}) "
                    f"and small-argument tanh bound over 1000 draws each")


# criterion 8 -----------------------------------------------------------------

def test_criterion_8_deterministic_simulation():
    cfg = SimConfig(atom_count=1e6, relaxation_time=1.0, trajectory_count=5_000, seed=99)
    runs = [
        result_to_json(simulate_transient(cfg, workers=w), cfg).encode()
        for w in (1, 1, 2, 8)
    ]
    library_ok = len(set(runs)) == 1

    args = [sys.executable, "-m", "erlab", "simulate", "--atoms", "1e6",
            "--trajectories", "5000", "--seed", "99"]
    first = subprocess.run(args, capture_output=True).stdout
    second = subprocess.run(args, capture_output=True).stdout
    threaded = subprocess.run([*args, "--workers", "8"], capture_output=True).stdout
    cli_ok = first == second == threaded and json.loads(first)["config_echo"]["seed"] == 99

    ok = library_ok and cli_ok
    _verdict(8, ok, "byte-identical JSON across repeated runs and 1/2/8 workers")
