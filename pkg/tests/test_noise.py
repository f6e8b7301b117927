import numpy as np
import pytest

from ionsynth import (
    DomainError,
    NoiseModel,
    Truncation,
    deevolve,
    perturb,
    random_target,
    run_trials,
    simulate_trial,
    sweep,
    wrap_angle,
)


@pytest.fixture(scope="module")
def preparation():
    t = Truncation(3)
    target = random_target(t, np.random.default_rng(2024)).state
    return target, deevolve(target).preparation


def test_zero_noise_returns_schedule_unchanged(preparation):
    _, prep = preparation
    noisy = perturb(prep, NoiseModel(), np.random.default_rng(0))
    assert noisy == prep


def test_perturbation_bounds(preparation):
    """Every realized pulse stays inside the centered interval."""
    _, prep = preparation
    nm = NoiseModel(delta=0.04, delta_theta=0.006)
    rng = np.random.default_rng(1)
    for _ in range(20):
        noisy = perturb(prep, nm, rng)
        for p, q in zip(prep.pulses, noisy.pulses):
            assert abs(q.x - p.x) <= 0.02 + 1e-15 or (q.x == 0.0 and p.x <= 0.02)
            # stored phases live in (-pi, pi], so compare wrapped differences
            assert abs(wrap_angle(q.theta - p.theta)) <= 0.003 + 1e-15
            assert q.x >= 0.0
            assert q.channel == p.channel and q.note == p.note


def test_perturbation_is_centered(preparation):
    """The mean realized length of a long pulse tracks its ideal value."""
    _, prep = preparation
    pulse = max(prep.pulses, key=lambda p: p.x)
    slot = prep.pulses.index(pulse)
    nm = NoiseModel(delta=0.05, delta_theta=0.0)
    rng = np.random.default_rng(5)
    draws = np.array([perturb(prep, nm, rng).pulses[slot].x for _ in range(4000)])
    se = 0.05 / np.sqrt(12.0) / np.sqrt(draws.size)
    assert abs(draws.mean() - pulse.x) <= 3.0 * se


def test_negative_lengths_clamp_to_zero(preparation):
    """Zero-length slots are still driven; their noisy length is never negative
    and is positive about half the time."""
    _, prep = preparation
    slot = next(k for k, p in enumerate(prep.pulses) if p.x == 0.0)
    nm = NoiseModel(delta=0.02)
    rng = np.random.default_rng(9)
    draws = np.array([perturb(prep, nm, rng).pulses[slot].x for _ in range(400)])
    assert np.all(draws >= 0.0)
    assert 100 < np.count_nonzero(draws) < 300


def test_noiseless_trial_is_perfect(preparation):
    target, prep = preparation
    r = simulate_trial(target, prep, NoiseModel(), np.random.default_rng(0))
    assert r.fidelity >= 1 - 1e-9
    assert r.postselect_fidelity >= 1 - 1e-9
    assert r.level_a_probability >= 1 - 1e-9


def test_trial_invariants(preparation):
    """Post-selection can only help, and all three scores are probabilities."""
    target, prep = preparation
    nm = NoiseModel(delta=0.05, delta_theta=0.02)
    for k in range(25):
        r = simulate_trial(target, prep, nm, np.random.default_rng([3, k]))
        assert 0.0 <= r.fidelity <= 1.0
        assert 0.0 <= r.postselect_fidelity <= 1.0
        assert 0.0 <= r.level_a_probability <= 1.0
        assert r.postselect_fidelity >= r.fidelity - 1e-12
        # raw fidelity cannot exceed what the kept branch can supply
        assert r.fidelity <= r.postselect_fidelity * r.level_a_probability + 1e-12


def test_run_trials_reproducible(preparation):
    target, prep = preparation
    nm = NoiseModel(delta=0.03, delta_theta=0.01)
    a = run_trials(target, prep, nm, 10, seed=42)
    b = run_trials(target, prep, nm, 10, seed=42)
    assert a == b
    c = run_trials(target, prep, nm, 10, seed=43)
    assert c != a


def test_run_trials_matches_manual_stream(preparation):
    """First trial of a batch uses the documented (seed, trial) substream."""
    target, prep = preparation
    nm = NoiseModel(delta=0.03, delta_theta=0.01)
    stats = run_trials(target, prep, nm, 1, seed=7)
    manual = simulate_trial(target, prep, nm, np.random.default_rng([7, 0]))
    assert stats.fid_mean == manual.fidelity
    assert stats.fid_std == 0.0
    assert stats.efficiency_mean == manual.level_a_probability


def test_run_trials_rejects_empty_batch(preparation):
    target, prep = preparation
    with pytest.raises(DomainError):
        run_trials(target, prep, NoiseModel(), 0, seed=1)


def test_noise_model_validation():
    with pytest.raises(DomainError):
        NoiseModel(delta=-0.1)
    with pytest.raises(DomainError):
        NoiseModel(delta_theta=float("nan"))


def test_sweep_rows_use_independent_streams(preparation):
    """Two rows with identical noise settings must not share their draws."""
    target, prep = preparation
    nm = NoiseModel(delta=0.04, delta_theta=0.01)
    report = sweep(target, prep, [nm, nm], n=8, seed=42)
    first, second = report.rows
    assert first.delta == second.delta == 0.04
    assert first.fid_mean != second.fid_mean
    assert report.seed == 42
    assert report.target == prep.target


def test_sweep_degrades_with_noise(preparation):
    target, prep = preparation
    grid = [NoiseModel(0.0, 0.0), NoiseModel(0.02, 0.01), NoiseModel(0.08, 0.01)]
    report = sweep(target, prep, grid, n=30, seed=42)
    fids = [row.fid_mean for row in report.rows]
    assert fids[0] >= 1 - 1e-9
    assert fids[0] > fids[1] > fids[2]
    for row in report.rows[1:]:
        assert row.fid_post_mean >= row.fid_mean
