"""End-to-end acceptance gate.

Each test prints one PASS/FAIL line (run ``pytest -s`` to see them) and then
asserts, so a red line always comes with a red test.  Tolerances are fixed
here, not imported, so loosening them requires editing this file.
"""

import math

import numpy as np
import pytest
import scipy.stats

from ionsynth import (
    CHANNELS,
    ChannelId,
    LambDickeParams,
    NoiseModel,
    Occupation,
    Pulse,
    Truncation,
    apply_pulse,
    apply_schedule,
    deevolve,
    fidelity_to_target,
    nonlinearity,
    oracle_apply,
    pulse_count_model,
    rabi,
    run_trials,
    simulate_trial,
    sweep,
    target_corr,
    target_diag,
    target_ghz,
    vacuum_state,
)
from ionsynth.cli import main as cli_main

from conftest import random_level_a, random_state

GOLDEN_COUNTS = {4: 179, 6: 482, 8: 1013, 10: 1836, 12: 3015}


def _report(num: int, ok: bool, detail: str) -> bool:
    print(f"ACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} — {detail}")
    return ok


@pytest.fixture(scope="module")
def named_results():
    t = Truncation(12)
    targets = [target_diag(t), target_corr(1.0, t), target_ghz(1.0, t)]
    return [(tg.state, deevolve(tg.state, description=tg.description)) for tg in targets]


@pytest.fixture(scope="module")
def random_results():
    out = []
    for k in range(50):
        t = Truncation(1 + k % 6)
        target = random_level_a(t, np.random.default_rng([1000, k]))
        out.append((target, deevolve(target)))
    return out


def test_acceptance_1_noiseless_preparation(named_results, random_results):
    worst = 1.0
    for state, result in list(named_results) + list(random_results):
        out = apply_schedule(vacuum_state(state.truncation), result.preparation)
        worst = min(worst, fidelity_to_target(out, state))
    ok = worst >= 1 - 1e-9
    assert _report(
        1, ok, f"preparation fidelity for 3 named + 50 random targets, min {worst:.12f}"
    )


def test_acceptance_2_deevolution_residual(named_results, random_results):
    worst = max(
        [r.final_residual for _, r in named_results]
        + [r.final_residual for _, r in random_results]
    )
    ok = worst <= 1e-9
    assert _report(2, ok, f"de-evolution vacuum residual, max {worst:.3e}")


def test_acceptance_3_oracle_equivalence():
    t = Truncation(4)
    ld = LambDickeParams()
    worst = 0.0
    for cid in ChannelId:
        rng = np.random.default_rng([3, cid])
        for _ in range(50):
            state = random_state(t, rng)
            pulse = Pulse(cid, rng.uniform(0, 4.0), rng.uniform(-math.pi, math.pi))
            fast = apply_pulse(state, pulse, ld)
            slow = oracle_apply(state, pulse, ld)
            worst = max(worst, float(np.max(np.abs(fast.amplitudes - slow.amplitudes))))
    ok = worst <= 1e-10
    assert _report(
        3, ok, f"pairwise rotation vs dense-exponential oracle, max deviation {worst:.3e}"
    )


def test_acceptance_4_rabi_limits():
    ld0 = LambDickeParams(0.0, 0.0, 0.0, 0.0)
    exact = all(
        rabi(CHANNELS[ChannelId.H1], Occupation(0, ny, nz), ld0)
        == math.sqrt((ny + 1) * nz)
        for ny in range(5)
        for nz in range(5)
    )

    def series(eps, n):
        acc = sum(
            (-1) ** k
            * eps ** (2 * k)
            * math.factorial(n)
            / (math.factorial(k + 1) * math.factorial(k) * math.factorial(n - k))
            for k in range(n + 1)
        )
        return math.exp(-0.5 * eps * eps) * acc

    worst = max(
        abs(nonlinearity(eps, n) - series(eps, n))
        for eps in np.linspace(0.0, 0.5, 21)
        for n in range(13)
    )
    ok = exact and worst <= 1e-12
    assert _report(
        4,
        ok,
        f"zero-coupling limit exact, Laguerre vs series max deviation {worst:.3e}",
    )


def test_acceptance_5_noise_replica():
    t = Truncation(10)
    nm = NoiseModel(delta=0.03, delta_theta=0.01)

    corr = target_corr(1.0, t)
    prep = deevolve(corr.state, description=corr.description).preparation
    stats = run_trials(corr.state, prep, nm, 100, seed=42)

    ghz = target_ghz(1.0, t)
    ghz_prep = deevolve(ghz.state, description=ghz.description).preparation
    ghz_stats = run_trials(ghz.state, ghz_prep, nm, 100, seed=42)

    ok = (
        0.65 <= stats.fid_mean <= 0.85
        and 0.86 <= stats.fid_post_mean <= 0.97
        and 0.72 <= stats.efficiency_mean <= 0.92
        and ghz_stats.fid_post_mean > ghz_stats.fid_mean
    )
    assert _report(
        5,
        ok,
        f"correlated-target replica fid {stats.fid_mean:.4f} "
        f"post {stats.fid_post_mean:.4f} eff {stats.efficiency_mean:.4f}; "
        f"cat-state ordering post {ghz_stats.fid_post_mean:.4f} > raw {ghz_stats.fid_mean:.4f}",
    )


def test_acceptance_6_noise_properties():
    t = Truncation(6)
    corr = target_corr(1.0, t)
    prep = deevolve(corr.state, description=corr.description).preparation

    clean = simulate_trial(corr.state, prep, NoiseModel(), np.random.default_rng(0))

    grid = [NoiseModel(0.01 * k, 0.01) for k in range(6)]
    report = sweep(corr.state, prep, grid, n=200, seed=42)
    deltas = [row.delta for row in report.rows]
    fids = [row.fid_mean for row in report.rows]
    rho = float(scipy.stats.spearmanr(deltas, fids).statistic)
    monotone_post = all(row.fid_post_mean >= row.fid_mean for row in report.rows)

    ok = clean.fidelity >= 1 - 1e-9 and rho <= -0.8 and monotone_post
    assert _report(
        6,
        ok,
        f"zero-noise fidelity {clean.fidelity:.12f}, Spearman(delta, fid) {rho:.3f}, "
        f"post >= raw on all rows: {monotone_post}",
    )


def test_acceptance_7_operation_count_scaling():
    counts = {}
    for j_max in GOLDEN_COUNTS:
        result = deevolve(vacuum_state(Truncation(j_max)))
        counts[j_max] = result.pulse_count
        assert result.pulse_count == pulse_count_model(j_max)
    r8 = counts[8] / 8**3
    r12 = counts[12] / 12**3
    variation = abs(r8 - r12) / r8
    ok = counts == GOLDEN_COUNTS and variation < 0.25
    assert _report(
        7,
        ok,
        f"counts {counts} match golden, count/J^3 varies {100 * variation:.1f}% "
        f"between J=8 and J=12",
    )


def test_acceptance_8_determinism(tmp_path):
    paths = [tmp_path / n for n in ("a.json", "b.json", "a.csv", "b.csv")]
    for schedule_path in paths[:2]:
        code = cli_main(
            ["compile", "--target", "ghz", "--jmax", "4", "--out", str(schedule_path)]
        )
        assert code == 0
    for schedule_path, csv_path in zip(paths[:2], paths[2:]):
        code = cli_main(
            [
                "sweep", "--schedule", str(schedule_path), "--target", "ghz",
                "--trials", "20", "--delta-grid", "0:0.01:4", "--out", str(csv_path),
            ]
        )
        assert code == 0
    same_json = paths[0].read_bytes() == paths[1].read_bytes()
    same_csv = paths[2].read_bytes() == paths[3].read_bytes()
    ok = same_json and same_csv
    assert _report(
        8, ok, f"byte-identical repeat runs: schedule JSON {same_json}, sweep CSV {same_csv}"
    )
