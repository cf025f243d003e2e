"""Single-molecule engine: measure, expand, optionally erase.

One cycle holds a single ideal-gas molecule in volume V at bath temperature
T.  A partition is inserted, the occupied half is identified (one recorded
bit), and the molecule then pushes the partition back quasi-statically from
V/2 to V, extracting work against the bath.  The expansion is rendered as a
finite stepper that charges each step's work at the post-step pressure, so
the extracted work approaches k T ln 2 strictly from below; with erasure the
net entropy handed to the bath is then k ln 2 - W/T >= 0 exactly, never
rescued by rounding.  Skipping erasure leaves the recorded bit behind: the
memory grows by one bit per cycle instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gases import GasState, Species
from .ledger import LN2
from .thermo import entropy
from .units import REDUCED, Constants


@dataclass(frozen=True)
class SzilardCycle:
    """Books of one completed cycle."""

    work_extracted: float
    ideal_work: float
    work_series: tuple[float, ...]
    expansion_steps: int
    bits_recorded: int
    bits_erased: int
    erasure_heat: float
    bath_entropy_delta: float
    landauer_net: float
    memory_delta_bits: int
    dS_measurement: float
    dS_expansion: float
    temperature: float
    volume: float

    @property
    def cycle_closed(self) -> bool:
        """True when memory returned to its initial (empty) state."""
        return self.memory_delta_bits == 0


def szilard_cycle(
    temperature: float,
    expansion_steps: int,
    c: Constants = REDUCED,
    volume: float = 1.0,
    mass: float = 1.0,
    erase: bool = True,
    species: Species | None = None,
) -> SzilardCycle:
    """Run one measure/expand/(erase) cycle and account for it.

    The measurement localizes the molecule into half the volume: the gas
    entropy drops by k ln 2 with no heat exchanged, paid for by the recorded
    bit.  The stepped expansion recovers W < k T ln 2 of work (heat W drawn
    from the bath); erasure returns k T ln 2 of heat to the bath at the bath
    temperature.
    """
    if temperature <= 0:
        raise ValueError("temperature must be positive")
    if expansion_steps < 1:
        raise ValueError("expansion_steps must be >= 1")
    if volume <= 0:
        raise ValueError("volume must be positive")
    sp = species if species is not None else Species(id="A", mass=mass, label="molecule")
    k = c.boltzmann_k
    kt = k * temperature

    s_full = entropy(GasState(sp, 1.0, volume, temperature), c)
    s_half = entropy(GasState(sp, 1.0, volume / 2.0, temperature), c)
    ds_measurement = s_half - s_full  # -k ln 2: localization, no heat
    ds_expansion = s_full - s_half

    # Work against the partition, charged at each step's final pressure.
    volumes = np.linspace(volume / 2.0, volume, expansion_steps + 1)
    dv = np.diff(volumes)
    step_work = kt * dv / volumes[1:]
    work_series = tuple(np.cumsum(step_work).tolist())
    work = work_series[-1]

    bits_recorded = 1
    bits_erased = 1 if erase else 0
    erasure_heat = bits_erased * kt * LN2
    # The bath supplies W during expansion and absorbs the erasure heat.
    bath_entropy_delta = -work / temperature + erasure_heat / temperature
    landauer_net = bath_entropy_delta  # gas and (if erased) memory both close
    memory_delta_bits = bits_recorded - bits_erased

    return SzilardCycle(
        work_extracted=work,
        ideal_work=kt * LN2,
        work_series=work_series,
        expansion_steps=expansion_steps,
        bits_recorded=bits_recorded,
        bits_erased=bits_erased,
        erasure_heat=erasure_heat,
        bath_entropy_delta=bath_entropy_delta,
        landauer_net=landauer_net,
        memory_delta_bits=memory_delta_bits,
        dS_measurement=ds_measurement,
        dS_expansion=ds_expansion,
        temperature=temperature,
        volume=volume,
    )
