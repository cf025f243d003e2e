"""State-function checks: closed forms, identities, and unit handling."""

import math

import numpy as np
import pytest

from entrolab import (
    GasState,
    REDUCED,
    SI,
    Species,
    chemical_potential_pressure_form,
    chemical_potential_statistical,
    constants_for,
    entropy,
    internal_energy,
    pressure,
    scaled_entropy_delta,
    single_particle_partition_function,
    thermal_wavelength,
)

AR = Species("Ar", 6.6335209e-26, "argon")


def random_states(rng, count):
    for _ in range(count):
        yield GasState(
            Species("a", float(rng.uniform(0.1, 10.0))),
            float(rng.uniform(0.5, 500.0)),
            float(rng.uniform(0.01, 100.0)),
            float(rng.uniform(0.01, 50.0)),
        )


def test_entropy_closed_form_small_case():
    state = GasState(Species("a", 1.0), 2.0, 3.0, 4.0)
    lam = thermal_wavelength(state.species, 4.0, REDUCED)
    expected = 2.0 * (math.log(3.0 / (2.0 * lam ** 3)) + 2.5)
    assert entropy(state, REDUCED) == pytest.approx(expected, rel=1e-15)


def test_entropy_vanishes_with_the_gas():
    assert entropy(GasState(Species("a", 1.0), 0.0, 1.0, 1.0), REDUCED) == 0.0


def test_scaling_identity_random_states():
    rng = np.random.default_rng(1234)
    for state in random_states(rng, 300):
        s1 = entropy(state, REDUCED)
        for lamb in range(1, 7):
            scaled = GasState(state.species, lamb * state.n_particles,
                              state.volume, state.temperature)
            lhs = entropy(scaled, REDUCED)
            rhs = lamb * s1 + scaled_entropy_delta(state.n_particles, lamb, REDUCED)
            assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))


def test_scaled_entropy_delta_closed_form():
    assert scaled_entropy_delta(10.0, 2, REDUCED) == pytest.approx(
        -20.0 * math.log(2.0), rel=1e-15)
    assert scaled_entropy_delta(4.0, 3, REDUCED) == pytest.approx(
        -12.0 * math.log(3.0), rel=1e-15)
    assert scaled_entropy_delta(5.0, 1, REDUCED) == 0.0


def test_scaled_entropy_delta_rejects_bad_arguments():
    with pytest.raises(ValueError):
        scaled_entropy_delta(0.0, 2, REDUCED)
    with pytest.raises(ValueError):
        scaled_entropy_delta(1.0, 0, REDUCED)


def test_ideal_gas_law():
    rng = np.random.default_rng(7)
    for state in random_states(rng, 50):
        p = pressure(state, REDUCED)
        assert p * state.volume == pytest.approx(
            state.n_particles * state.temperature, rel=1e-14)


def test_internal_energy_equipartition():
    state = GasState(Species("a", 1.0), 6.0, 1.0, 2.0)
    assert internal_energy(state, REDUCED) == pytest.approx(18.0, rel=1e-15)


def test_wavelength_shrinks_with_temperature_and_mass():
    light_cold = thermal_wavelength(Species("a", 1.0), 1.0, REDUCED)
    light_hot = thermal_wavelength(Species("a", 1.0), 4.0, REDUCED)
    heavy_cold = thermal_wavelength(Species("b", 4.0), 1.0, REDUCED)
    assert light_hot == pytest.approx(light_cold / 2.0, rel=1e-15)
    assert heavy_cold == pytest.approx(light_cold / 2.0, rel=1e-15)


def test_partition_function_per_particle():
    state = GasState(Species("a", 2.0), 3.0, 5.0, 1.5)
    lam = thermal_wavelength(state.species, 1.5, REDUCED)
    assert single_particle_partition_function(state, REDUCED) == pytest.approx(
        5.0 / lam ** 3, rel=1e-15)


def test_chemical_potential_forms_agree():
    rng = np.random.default_rng(99)
    for state in random_states(rng, 100):
        mu_stat = chemical_potential_statistical(state, REDUCED)
        p0 = float(rng.uniform(0.1, 10.0))
        mu_pres = chemical_potential_pressure_form(state, p0, REDUCED)
        assert mu_pres == pytest.approx(mu_stat, rel=1e-12, abs=1e-12)


def test_chemical_potential_from_gibbs_energy():
    # mu = (U + PV - TS)/N must match the partition-function form.
    rng = np.random.default_rng(5)
    for state in random_states(rng, 50):
        n, t = state.n_particles, state.temperature
        gibbs = (internal_energy(state, REDUCED)
                 + pressure(state, REDUCED) * state.volume
                 - t * entropy(state, REDUCED))
        assert gibbs / n == pytest.approx(
            chemical_potential_statistical(state, REDUCED), rel=1e-10, abs=1e-10)


def test_chemical_potential_needs_particles():
    empty = GasState(Species("a", 1.0), 0.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        chemical_potential_statistical(empty, REDUCED)


def test_si_units_reproduce_argon_standard_entropy():
    # Monoatomic ideal gas at 298.15 K and 1 bar: tabulated molar entropy
    # of argon is 154.85 J/(mol K).
    avogadro = 6.02214076e23
    t, p = 298.15, 1.0e5
    n = avogadro
    v = n * SI.boltzmann_k * t / p
    s_molar = entropy(GasState(AR, n, v, t), SI)
    assert s_molar == pytest.approx(154.85, rel=2e-3)


def test_constants_for_modes():
    assert constants_for("reduced") is REDUCED
    assert constants_for("si") is SI
    assert REDUCED.boltzmann_k == 1.0 and REDUCED.planck_h == 1.0
    with pytest.raises(ValueError):
        constants_for("imperial")
