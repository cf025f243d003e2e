"""Quasi-static steppers for the mixing and partitioning thought experiments.

Geometry shared by all traces: two (or lamb) vessels of volume V each that
overlap by a variable fraction w.  The overlap region is one phase; each
vessel's exclusive remainder is another.  Pressure equilibrium across the
porous partitions fixes the particle distribution, and it turns out every
region then keeps a constant density along the whole trace:

  distinct gases   each gas fills its own vessel uniformly at N/V
  identical gas    overlap density lamb*N_A/V, exclusive density N_A/V
                   (the exclusive regions each carry 1/lamb of the core
                   pressure, and their pressures sum to the core pressure)

Constant densities mean constant chemical potentials, so the accumulated
material term is an exact telescoping sum: the final ledgers are
step-count independent rather than quadrature limits.  Intensive values per
region are evaluated once from a reference state at volume V, which keeps
them defined (as the obvious limits) even at snapshots where a region's
volume vanishes.

Heat accounting: the partitions are porous and frictionless, so q = 0 and
w = 0 are assumed for the mixing/partitioning family (an assumption of the
model, recorded as such, not derived).  The isothermal expansion exchanges
q_rev = N k T ln(V2/V1) with the bath.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gases import GasState, Phase, Species
from .ledger import (
    EntropyLedger,
    IsothermalExpansion,
    MixDistinct,
    PartitionIdentical,
    ProcessTrace,
    RelocateIdentical,
    SecondLawVerdict,
    Snapshot,
)
from .thermo import chemical_potential_statistical, entropy, pressure
from .units import REDUCED, Constants

HEAT_NOTE = "q = 0 assumed for porous frictionless partitions, not derived"


def _default_species(sid: str) -> Species:
    return Species(id=sid, mass=1.0, label=f"gas {sid}")


def _mu(species: Species, density_count: float, volume: float, temperature: float,
        c: Constants) -> float:
    """Chemical potential of a reference state with the given content."""
    ref = GasState(species, density_count, volume, temperature)
    return chemical_potential_statistical(ref, c)


def _pressure_of(species: Species, density_count: float, volume: float,
                 temperature: float, c: Constants) -> float:
    return pressure(GasState(species, density_count, volume, temperature), c)


def run_mix_distinct(
    n_a: float,
    n_b: float,
    volume: float,
    temperature: float,
    steps: int,
    direction: str = "mix",
    species_a: Species | None = None,
    species_b: Species | None = None,
    c: Constants = REDUCED,
) -> ProcessTrace:
    """Mix (or separate) two distinct gases with semipermeable partitions.

    Each vessel's moving wall passes only the other vessel's gas, so gas A
    always occupies vessel A's full volume V and likewise for B.  Both
    directions are quasi-static with q = 0 and both leave the total entropy
    unchanged; "separate" runs the pull-apart course, "mix" the reverse.
    """
    kind = MixDistinct(n_a=n_a, n_b=n_b, volume=volume, temperature=temperature)
    if steps < 2:
        raise ValueError("steps must be >= 2")
    if direction not in ("mix", "separate"):
        raise ValueError('direction must be "mix" or "separate"')
    sp_a = species_a if species_a is not None else _default_species("A")
    sp_b = species_b if species_b is not None else _default_species("B")
    if sp_a.id == sp_b.id:
        raise ValueError("distinct gases need distinct species ids")
    v, t = volume, temperature

    # Constant intensive values: each gas sits at density N/V everywhere it
    # is present.
    mu_a = _mu(sp_a, n_a, v, t, c)
    mu_b = _mu(sp_b, n_b, v, t, c)
    p_a = _pressure_of(sp_a, n_a, v, t, c)
    p_b = _pressure_of(sp_b, n_b, v, t, c)
    pressures = {"alpha": p_a, "beta": p_a + p_b, "gamma": p_b}
    potentials = {
        "alpha": {sp_a.id: mu_a},
        "beta": {sp_a.id: mu_a, sp_b.id: mu_b},
        "gamma": {sp_b.id: mu_b},
    }

    def overlap(progress: float) -> float:
        return progress if direction == "mix" else 1.0 - progress

    def phases_at(w: float) -> tuple[Phase, ...]:
        out = []
        if 1.0 - w > 0.0:
            out.append(Phase("alpha", (GasState(sp_a, n_a * (1.0 - w), v * (1.0 - w), t),)))
        if w > 0.0:
            out.append(Phase("beta", (
                GasState(sp_a, n_a * w, v * w, t),
                GasState(sp_b, n_b * w, v * w, t),
            )))
        if 1.0 - w > 0.0:
            out.append(Phase("gamma", (GasState(sp_b, n_b * (1.0 - w), v * (1.0 - w), t),)))
        return tuple(out)

    ledger = EntropyLedger.zero(c)
    snapshots = [Snapshot(0.0, phases_at(overlap(0.0)), pressures, potentials, ledger)]
    for i in range(1, steps + 1):
        progress = i / steps
        w0, w1 = overlap((i - 1) / steps), overlap(progress)
        # Transfers move each gas between its exclusive region and the
        # overlap at equal chemical potential, so the material term vanishes
        # term by term.
        amount_a = n_a * (w1 - w0)  # alpha -> beta (negative means reverse)
        amount_b = n_b * (w1 - w0)
        material_step = -(amount_a * (potentials["beta"][sp_a.id] - potentials["alpha"][sp_a.id])
                          + amount_b * (potentials["beta"][sp_b.id] - potentials["gamma"][sp_b.id])) / t
        ledger = ledger.advanced(thermo_step=0.0, material_step=material_step)
        snapshots.append(Snapshot(progress, phases_at(w1), pressures, potentials, ledger))

    return ProcessTrace(
        kind=kind,
        snapshots=tuple(snapshots),
        constants=c,
        metadata={"heat": HEAT_NOTE, "direction": direction},
    )


def _identical_gas_trace(
    lamb: int,
    n_a: float,
    volume: float,
    temperature: float,
    steps: int,
    kind: PartitionIdentical | RelocateIdentical,
    toward_merge: bool,
    species: Species | None,
    c: Constants,
) -> ProcessTrace:
    """Shared stepper for partitioning (merge reversed) and merging.

    Overlap fraction w is the core region's share of one vessel volume; the
    core holds density lamb*N_A/V and each exclusive region N_A/V.
    """
    if steps < 2:
        raise ValueError("steps must be >= 2")
    sp = species if species is not None else _default_species("A")
    v, t = volume, temperature

    if lamb == 2:
        exclusive_labels = ("alpha", "gamma")
        core_label = "beta"
    else:
        exclusive_labels = tuple(f"vessel{i + 1}" for i in range(lamb))
        core_label = "core"

    mu_x = _mu(sp, n_a, v, t, c)
    mu_core = _mu(sp, lamb * n_a, v, t, c)
    p_x = _pressure_of(sp, n_a, v, t, c)
    p_core = _pressure_of(sp, lamb * n_a, v, t, c)
    pressures = {core_label: p_core, **{lb: p_x for lb in exclusive_labels}}
    potentials = {core_label: {sp.id: mu_core}, **{lb: {sp.id: mu_x} for lb in exclusive_labels}}

    def overlap(progress: float) -> float:
        return progress if toward_merge else 1.0 - progress

    def phases_at(w: float) -> tuple[Phase, ...]:
        out = []
        if w > 0.0:
            out.append(Phase(core_label, (GasState(sp, lamb * n_a * w, v * w, t),)))
        if 1.0 - w > 0.0:
            for lb in exclusive_labels:
                out.append(Phase(lb, (GasState(sp, n_a * (1.0 - w), v * (1.0 - w), t),)))
        return tuple(out)

    ledger = EntropyLedger.zero(c)
    snapshots = [Snapshot(0.0, phases_at(overlap(0.0)), pressures, potentials, ledger)]
    for i in range(1, steps + 1):
        progress = i / steps
        w0, w1 = overlap((i - 1) / steps), overlap(progress)
        # Each exclusive region sends N_A * dw particles into the core,
        # crossing the potential gap mu_core - mu_x = k T ln(lamb).
        amount = n_a * (w1 - w0)
        material_step = -lamb * amount * (mu_core - mu_x) / t
        ledger = ledger.advanced(thermo_step=0.0, material_step=material_step)
        snapshots.append(Snapshot(progress, phases_at(w1), pressures, potentials, ledger))

    return ProcessTrace(
        kind=kind,
        snapshots=tuple(snapshots),
        constants=c,
        metadata={"heat": HEAT_NOTE},
    )


def run_partition_identical(
    n_total: float,
    volume: float,
    temperature: float,
    steps: int,
    species: Species | None = None,
    c: Constants = REDUCED,
) -> ProcessTrace:
    """Split one gas of N_total particles into two vessels of N_total/2 each.

    Adiabatic and workless; the whole entropy change +2 k (N_total/2) ln 2 is
    carried by the material term.
    """
    kind = PartitionIdentical(n_total=n_total, volume=volume, temperature=temperature)
    return _identical_gas_trace(
        lamb=2, n_a=kind.n_a, volume=volume, temperature=temperature, steps=steps,
        kind=kind, toward_merge=False, species=species, c=c,
    )


def run_relocate_identical(
    lamb: int,
    n_a: float,
    volume: float,
    temperature: float,
    steps: int,
    species: Species | None = None,
    c: Constants = REDUCED,
) -> ProcessTrace:
    """Merge lamb identical samples of N_A particles into one vessel.

    The statistical entropy falls by lamb k N_A ln(lamb) while the observer
    gains lamb N_A log2(lamb) bits about particle locations.
    """
    kind = RelocateIdentical(lamb=lamb, n_a=n_a, volume=volume, temperature=temperature)
    return _identical_gas_trace(
        lamb=lamb, n_a=n_a, volume=volume, temperature=temperature, steps=steps,
        kind=kind, toward_merge=True, species=species, c=c,
    )


def run_isothermal_expansion(
    n: float,
    v1: float,
    v2: float,
    temperature: float,
    c: Constants = REDUCED,
) -> EntropyLedger:
    """Reversible isothermal expansion ledger: dS_th = dS_st = N k ln(V2/V1)."""
    IsothermalExpansion(n=n, v1=v1, v2=v2, temperature=temperature)
    return EntropyLedger(
        dS_thermo=n * c.boltzmann_k * math.log(v2 / v1),
        material_term=0.0,
        boltzmann_k=c.boltzmann_k,
    )


def expansion_trace(
    n: float,
    v1: float,
    v2: float,
    temperature: float,
    steps: int = 100,
    species: Species | None = None,
    c: Constants = REDUCED,
) -> ProcessTrace:
    """Stepped rendering of the expansion for artifacts and verdict checks.

    The closed-form ledger from run_isothermal_expansion is authoritative;
    this trace interpolates the volume linearly and accumulates the same
    heat, step by step.
    """
    kind = IsothermalExpansion(n=n, v1=v1, v2=v2, temperature=temperature)
    if steps < 2:
        raise ValueError("steps must be >= 2")
    sp = species if species is not None else _default_species("A")
    t = temperature

    def vol(progress: float) -> float:
        return v1 + progress * (v2 - v1)

    def snap(progress: float, ledger: EntropyLedger) -> Snapshot:
        state = GasState(sp, n, vol(progress), t)
        return Snapshot(
            progress=progress,
            phases=(Phase("alpha", (state,)),),
            pressures={"alpha": pressure(state, c)},
            potentials={"alpha": {sp.id: chemical_potential_statistical(state, c)}},
            ledger=ledger,
        )

    ledger = EntropyLedger.zero(c)
    snapshots = [snap(0.0, ledger)]
    for i in range(1, steps + 1):
        q_over_t = n * c.boltzmann_k * math.log(vol(i / steps) / vol((i - 1) / steps))
        ledger = ledger.advanced(thermo_step=q_over_t, material_step=0.0)
        snapshots.append(snap(i / steps, ledger))
    return ProcessTrace(
        kind=kind,
        snapshots=tuple(snapshots),
        constants=c,
        metadata={"heat": "q_rev = N k T ln(V2/V1) drawn from the bath"},
    )


def material_term_quadrature(
    n_a: float,
    intervals: int,
    temperature: float,
    c: Constants,
) -> float:
    """Midpoint evaluation of kT * integral(ln(N_L/(2 N_A - N_L)), N_A..2 N_A).

    The integrand diverges (integrably) at the upper endpoint, so an open
    rule is required; composite midpoint never samples an endpoint.
    Converges to 2 k T N_A ln 2.
    """
    if n_a <= 0:
        raise ValueError("n_a must be positive")
    if temperature <= 0:
        raise ValueError("temperature must be positive")
    if intervals < 16:
        raise ValueError("intervals must be >= 16")
    h = n_a / intervals
    nodes = n_a + (np.arange(intervals) + 0.5) * h
    total = float(np.sum(np.log(nodes / (2.0 * n_a - nodes))))
    return c.boltzmann_k * temperature * h * total


@dataclass(frozen=True)
class CompositeResult:
    """Ledger decomposition of the expand-then-merge composite."""

    expansion: EntropyLedger
    relocation: EntropyLedger
    distinguishable: bool

    @property
    def total(self) -> EntropyLedger:
        return self.expansion + self.relocation


def gibbs_mixing_composite(
    n_a: float,
    volume: float,
    temperature: float,
    steps: int,
    distinguishable: bool = False,
    species: Species | None = None,
    c: Constants = REDUCED,
) -> CompositeResult:
    """Expand two N_A samples from V to 2V, then merge them into one vessel.

    The expansion gains 2 N_A k ln 2 thermodynamically; the merge loses the
    same amount through the material term, so the total vanishes.  With
    distinguishable=True the material term is dropped (counting that ignores
    particle identity), exhibiting the spurious +2 N_A k ln 2.
    """
    single = run_isothermal_expansion(n_a, volume, 2.0 * volume, temperature, c=c)
    both = single + single
    merge = run_relocate_identical(
        2, n_a, 2.0 * volume, temperature, steps, species=species, c=c
    ).final_ledger
    if distinguishable:
        merge = EntropyLedger(
            dS_thermo=merge.dS_thermo, material_term=0.0, boltzmann_k=merge.boltzmann_k
        )
    return CompositeResult(expansion=both, relocation=merge, distinguishable=distinguishable)


def check_generalized_second_law(
    trace: ProcessTrace,
    tolerance: float = 1e-9,
) -> SecondLawVerdict:
    """Evaluate dS_st >= dq/T + material and dS_th >= dq/T per step.

    The left side of the generalized bound is re-derived from the snapshot
    states' entropies; the right side comes from the ledger.  All steppers
    here are quasi-static, so dq_rev/T is read from the thermodynamic ledger
    column and both inequalities resolve to equalities within rounding.
    """
    if len(trace.snapshots) < 2:
        raise ValueError("trace must have at least two snapshots")
    c = trace.constants
    k = c.boltzmann_k

    def state_entropy(snap: Snapshot) -> float:
        return sum(entropy(st, c) for ph in snap.phases for st in ph.contents)

    stat_margins: list[float] = []
    class_margins: list[float] = []
    stat_bad: list[int] = []
    class_bad: list[int] = []
    for i in range(len(trace.snapshots) - 1):
        a, b = trace.snapshots[i], trace.snapshots[i + 1]
        ds_states = state_entropy(b) - state_entropy(a)
        dq_over_t = b.ledger.dS_thermo - a.ledger.dS_thermo
        d_material = b.ledger.material_term - a.ledger.material_term
        d_thermo = b.ledger.dS_thermo - a.ledger.dS_thermo
        stat = ds_states - (dq_over_t + d_material)
        cls = d_thermo - dq_over_t
        stat_margins.append(stat)
        class_margins.append(cls)
        scale = max(k, abs(dq_over_t + d_material), abs(ds_states))
        if stat < -tolerance * scale:
            stat_bad.append(i)
        if cls < -tolerance * max(k, abs(dq_over_t)):
            class_bad.append(i)

    return SecondLawVerdict(
        statistical_margins=tuple(stat_margins),
        classical_margins=tuple(class_margins),
        violations_statistical=tuple(stat_bad),
        violations_classical=tuple(class_bad),
        cumulative_statistical_margin=math.fsum(stat_margins),
        cumulative_classical_margin=math.fsum(class_margins),
        tolerance=tolerance,
    )
