"""Process traces: ledgers, closed forms, and the generalized inequality."""

import math

import numpy as np
import pytest

from entrolab import (
    EntropyLedger,
    GasState,
    REDUCED,
    Species,
    check_generalized_second_law,
    entropy,
    expansion_trace,
    gibbs_mixing_composite,
    material_term_quadrature,
    run_isothermal_expansion,
    run_mix_distinct,
    run_partition_identical,
    run_relocate_identical,
)

LN2 = math.log(2.0)


def test_ledger_algebra():
    led = EntropyLedger.zero(REDUCED).advanced(0.5, -0.2)
    assert led.dS_thermo == 0.5
    assert led.material_term == -0.2
    assert led.dS_statistical == pytest.approx(0.3, rel=1e-15)
    assert led.info_delta_bits == pytest.approx(-0.3 / LN2, rel=1e-15)
    both = led + led.advanced(0.1, 0.0)
    assert both.dS_thermo == pytest.approx(1.1, rel=1e-15)


def test_partition_matches_closed_form_and_step_count_free():
    for steps in (2, 10, 100):
        trace = run_partition_identical(20.0, 1.0, 1.0, steps=steps)
        led = trace.final_ledger
        assert led.dS_thermo == 0.0
        assert abs(led.dS_statistical - 20.0 * LN2) <= 1e-10
        assert led.info_delta_bits == pytest.approx(-20.0, abs=1e-9)


def test_partition_rejects_odd_or_nonintegral_totals():
    for bad in (7.0, 0.0, 10.5, -4.0):
        with pytest.raises(ValueError):
            run_partition_identical(bad, 1.0, 1.0, steps=4)


def test_relocation_closed_forms():
    led2 = run_relocate_identical(2, 10.0, 1.0, 1.0, steps=50).final_ledger
    assert abs(led2.dS_statistical - (-20.0 * LN2)) <= 1e-10
    led3 = run_relocate_identical(3, 4.0, 1.0, 1.0, steps=50).final_ledger
    assert abs(led3.dS_statistical - (-12.0 * math.log(3.0))) <= 1e-10
    assert led2.info_delta_bits == pytest.approx(20.0, abs=1e-9)


def test_partition_and_relocation_are_antisymmetric():
    forward = run_partition_identical(20.0, 1.0, 1.0, steps=10).final_ledger
    backward = run_relocate_identical(2, 10.0, 1.0, 1.0, steps=10).final_ledger
    assert forward.dS_statistical == pytest.approx(-backward.dS_statistical, rel=1e-12)


def test_relocation_random_sizes_match_closed_form():
    rng = np.random.default_rng(21)
    for _ in range(40):
        lamb = int(rng.integers(2, 6))
        n_a = float(rng.uniform(0.5, 200.0))
        steps = int(rng.integers(2, 40))
        led = run_relocate_identical(lamb, n_a, 1.0, 1.0, steps=steps).final_ledger
        expected = -lamb * n_a * math.log(lamb)
        assert led.dS_statistical == pytest.approx(expected, rel=1e-12)
        assert led.dS_thermo == 0.0


def test_mix_trace_balances_and_phase_relations():
    trace = run_mix_distinct(8.0, 8.0, 1.0, 1.0, steps=25)
    led = trace.final_ledger
    assert led.dS_thermo == 0.0
    assert abs(led.dS_statistical) <= 1e-10
    for snap in trace.snapshots:
        p = snap.pressures
        assert abs(p["alpha"] + p["gamma"] - p["beta"]) <= 1e-12 * abs(p["beta"])
        mu = snap.potentials
        assert mu["alpha"]["A"] == mu["beta"]["A"]
        assert mu["gamma"]["B"] == mu["beta"]["B"]


def test_mix_supports_unequal_gases_and_separation():
    fwd = run_mix_distinct(6.0, 3.0, 2.0, 1.5, steps=8,
                           species_a=Species("A", 1.0),
                           species_b=Species("B", 2.0))
    assert abs(fwd.final_ledger.dS_statistical) <= 1e-10
    back = run_mix_distinct(6.0, 3.0, 2.0, 1.5, steps=8, direction="separate",
                            species_a=Species("A", 1.0),
                            species_b=Species("B", 2.0))
    assert abs(back.final_ledger.dS_statistical) <= 1e-10
    # separation starts fully overlapped: one shared region only
    assert {ph.label for ph in back.snapshots[0].phases} == {"beta"}


def test_mix_rejects_identical_species_ids():
    same = Species("A", 1.0)
    with pytest.raises(ValueError):
        run_mix_distinct(1.0, 1.0, 1.0, 1.0, steps=4,
                         species_a=same, species_b=same)


def test_traces_drop_vanished_regions():
    trace = run_mix_distinct(4.0, 4.0, 1.0, 1.0, steps=5)
    assert {ph.label for ph in trace.snapshots[0].phases} == {"alpha", "gamma"}
    assert {ph.label for ph in trace.snapshots[-1].phases} == {"beta"}
    for snap in trace.snapshots:
        for ph in snap.phases:
            assert ph.volume > 0


def test_snapshot_progress_is_monotone():
    trace = run_partition_identical(8.0, 1.0, 1.0, steps=13)
    progress = [s.progress for s in trace.snapshots]
    assert progress[0] == 0.0 and progress[-1] == 1.0
    assert all(b >= a for a, b in zip(progress, progress[1:]))


def test_generalized_second_law_on_all_traces():
    traces = [
        run_partition_identical(12.0, 1.0, 1.0, steps=9),
        run_relocate_identical(3, 5.0, 2.0, 0.7, steps=9),
        run_mix_distinct(5.0, 7.0, 1.0, 1.0, steps=9),
        expansion_trace(4.0, 1.0, 3.0, 1.0, steps=9),
    ]
    for trace in traces:
        verdict = check_generalized_second_law(trace)
        assert verdict.satisfied_statistical, trace.kind.name
        assert verdict.satisfied_classical, trace.kind.name


def test_ledger_matches_state_entropy_at_every_snapshot():
    # The ledger is an integral; the state entropy is a function of state.
    # They must agree along the whole path, not only at the ends.
    trace = run_relocate_identical(2, 6.0, 1.0, 1.0, steps=10)
    base = None
    for snap in trace.snapshots:
        total = sum(
            entropy(GasState(st.species, st.n_particles, st.volume, st.temperature),
                    REDUCED)
            for ph in snap.phases for st in ph.contents)
        if base is None:
            base = total
        assert snap.ledger.dS_statistical == pytest.approx(
            total - base, rel=1e-10, abs=1e-10)


def test_isothermal_expansion_ledger():
    led = run_isothermal_expansion(2.0, 1.0, 2.0, 1.0)
    assert led.dS_thermo == pytest.approx(2.0 * LN2, rel=1e-14)
    assert led.material_term == 0.0
    trace = expansion_trace(2.0, 1.0, 2.0, 1.0, steps=200)
    assert trace.final_ledger.dS_thermo == pytest.approx(led.dS_thermo, rel=1e-12)
    with pytest.raises(ValueError):
        run_isothermal_expansion(2.0, 2.0, 1.0, 1.0)


def test_quadrature_value_and_monotone_refinement():
    target = 2.0 * 10.0 * LN2
    errors = []
    for intervals in (64, 128, 256, 512, 1024, 2048, 4096):
        q = material_term_quadrature(10.0, intervals, 1.0, REDUCED)
        errors.append(abs(q - target) / target)
    assert errors[-1] <= 1e-4
    assert all(b < a for a, b in zip(errors, errors[1:]))


def test_quadrature_validates_arguments():
    with pytest.raises(ValueError):
        material_term_quadrature(10.0, 8, 1.0, REDUCED)
    with pytest.raises(ValueError):
        material_term_quadrature(-1.0, 64, 1.0, REDUCED)


def test_quadrature_scales_with_temperature_and_count():
    q = material_term_quadrature(3.0, 2048, 2.5, REDUCED)
    assert q == pytest.approx(2.0 * 3.0 * 2.5 * LN2, rel=5e-4)


def test_composite_nets_to_zero_for_identical_gases():
    for n_a in (1.0, 10.0, 100.0):
        result = gibbs_mixing_composite(n_a, 1.0, 1.0, steps=20)
        assert abs(result.total.dS_statistical) <= 1e-10
        assert result.expansion.dS_thermo == pytest.approx(
            2.0 * n_a * LN2, rel=1e-12)


def test_composite_distinguishable_mode_exhibits_the_paradox():
    result = gibbs_mixing_composite(10.0, 1.0, 1.0, steps=20, distinguishable=True)
    assert result.total.dS_statistical == pytest.approx(20.0 * LN2, rel=1e-12)
    assert result.distinguishable
