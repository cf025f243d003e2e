"""Microstate oracle: enumeration vs closed forms, bridge, and Monte Carlo."""

import math

import numpy as np
import pytest

from entrolab import (
    EnumerationLimitError,
    LatticeModel,
    REDUCED,
    RegionConstraint,
    enumerate_and_count,
    localization_log_probability,
    log_multiplicity,
    sample_localization_mc,
    scaled_entropy_delta,
    stirling_gap,
)


def test_enumeration_equals_closed_form_small_grid():
    for cells in range(1, 7):
        for particles in range(0, 6):
            model = LatticeModel(cells, particles)
            assert enumerate_and_count(model) == cells ** particles


def test_constrained_enumeration_equals_region_power():
    # All particles inside a block of b cells: b^N assignments.
    model = LatticeModel(6, 3)
    for start, size in ((0, 2), (1, 3), (4, 2), (0, 6)):
        count = enumerate_and_count(model, RegionConstraint(start, size))
        assert count == size ** 3


def test_constraint_must_fit_the_lattice():
    model = LatticeModel(4, 2)
    with pytest.raises(ValueError):
        enumerate_and_count(model, RegionConstraint(3, 2))


def test_enumeration_guard_trips():
    with pytest.raises(EnumerationLimitError):
        enumerate_and_count(LatticeModel(10, 8))


def test_zero_particles_has_one_state():
    model = LatticeModel(5, 0)
    assert enumerate_and_count(model) == 1
    assert log_multiplicity(model) == 0.0


def test_log_multiplicity_counting_modes():
    plain = LatticeModel(8, 4)
    corrected = LatticeModel(8, 4, counting="boltzmann_corrected")
    assert log_multiplicity(plain) == pytest.approx(4 * math.log(8), rel=1e-15)
    assert log_multiplicity(corrected) == pytest.approx(
        4 * math.log(8) - math.log(24), rel=1e-14)


def test_log_factorial_is_exact_not_an_approximation():
    # Sums of logs, not a Stirling formula: check against big-integer factorial.
    corrected = LatticeModel(3, 60, counting="boltzmann_corrected")
    expected = 60 * math.log(3) - math.log(float(math.factorial(60)))
    assert log_multiplicity(corrected) == pytest.approx(expected, rel=1e-12)


def test_localization_probability_matches_enumeration():
    # P(all in one of lambda regions) from counting, for an enumerable case.
    lamb, n = 2, 3
    total = lamb * n
    model = LatticeModel(lamb, total)
    hits = enumerate_and_count(model, RegionConstraint(0, 1))
    p_exact = hits / lamb ** total
    assert math.log(p_exact) == pytest.approx(
        localization_log_probability(lamb, n), rel=1e-14)


def test_bridge_log_probability_equals_entropy_delta_bitwise():
    # k ln p with k = 1 must equal the closed-form relocation entropy exactly.
    for lamb in range(2, 6):
        for n in range(1, 51):
            lhs = REDUCED.boltzmann_k * localization_log_probability(lamb, n)
            rhs = scaled_entropy_delta(float(n), lamb, REDUCED)
            assert lhs == rhs, (lamb, n)


def test_stirling_gap_small_and_decreasing():
    gap_100 = stirling_gap(2, 100) / (2 * 100 * math.log(2))
    assert gap_100 < 0.03
    rel = [stirling_gap(2, n) / (2 * n * math.log(2)) for n in range(2, 200)]
    assert all(b < a for a, b in zip(rel, rel[1:]))


def test_mc_estimate_within_five_sigma():
    est = sample_localization_mc(2, 4, 400_000, seed=2024)
    assert est.p_exact == pytest.approx(2.0 ** -8, rel=1e-15)
    assert abs(est.p_hat - est.p_exact) <= 5.0 * est.std_err
    assert est.hits >= 1
    assert est.samples == 400_000


def test_mc_shards_reproduce_the_full_run():
    # Same seed: one run must equal back-to-back shards, hit for hit.
    # lambda = 3, n = 1 gives p = 1/27, dense enough that any stream
    # misalignment would be visible immediately.
    lamb, n = 3, 1
    full = sample_localization_mc(lamb, n, 90_000, seed=77)
    parts = [
        sample_localization_mc(lamb, n, 30_000, seed=77, sample_offset=off)
        for off in (0, 30_000, 60_000)
    ]
    assert sum(p.hits for p in parts) == full.hits
    assert full.hits > 2000


def test_mc_shards_with_offsets_off_the_block_grid():
    # Philox advances four words at a time; odd sample offsets and odd
    # word budgets must still land on the exact stream position.
    lamb, n = 3, 1  # three words per sample
    full = sample_localization_mc(lamb, n, 10_001, seed=13)
    first = sample_localization_mc(lamb, n, 4_999, seed=13)
    second = sample_localization_mc(lamb, n, 5_002, seed=13, sample_offset=4_999)
    assert first.hits + second.hits == full.hits


def test_mc_shards_for_power_of_two_regions():
    lamb, n = 2, 1  # p = 1/4: collisions cannot hide misalignment
    full = sample_localization_mc(lamb, n, 100_000, seed=9)
    first = sample_localization_mc(lamb, n, 49_999, seed=9)
    second = sample_localization_mc(lamb, n, 50_001, seed=9, sample_offset=49_999)
    assert first.hits + second.hits == full.hits
    assert full.hits > 20_000


def test_mc_seed_changes_and_reproducibility():
    a = sample_localization_mc(2, 3, 100_000, seed=1)
    b = sample_localization_mc(2, 3, 100_000, seed=1)
    c = sample_localization_mc(2, 3, 100_000, seed=2)
    assert a.hits == b.hits and a.p_hat == b.p_hat
    assert (a.hits, a.p_hat) != (c.hits, c.p_hat)


def test_mc_estimates_track_exact_probability_across_lambdas():
    rng = np.random.default_rng(3)
    cases = [(2, 1), (2, 2), (3, 1), (4, 1), (4, 2), (5, 1)]
    for lamb, n in cases:
        samples = max(300_000, int(40.0 * lamb ** (lamb * n)))
        est = sample_localization_mc(lamb, n, samples,
                                     seed=int(rng.integers(0, 2 ** 32)))
        assert not est.low_statistics
        assert abs(est.p_hat - est.p_exact) <= 6.0 * max(est.std_err, 1e-12)


def test_mc_zero_particles_is_certain():
    est = sample_localization_mc(2, 0, 1000, seed=0)
    assert est.p_hat == 1.0
    assert est.hits == 1000


def test_mc_warns_when_hits_would_be_rare():
    with pytest.warns(UserWarning):
        sample_localization_mc(2, 30, 1000, seed=0)


def test_mc_rejects_non_integer_arguments():
    with pytest.raises((TypeError, ValueError)):
        sample_localization_mc(2, 2.5, 1000, seed=0)
    with pytest.raises(ValueError):
        sample_localization_mc(1, 2, 1000, seed=0)
