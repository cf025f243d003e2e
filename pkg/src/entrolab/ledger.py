"""Dual entropy ledger and process-trace records.

The ledger splits every entropy change into a thermodynamic part (heat over
temperature) and a material part (-(1/T) sum_j mu_j dN_j).  The statistical
entropy change is their sum and the information delta is the statistical part
expressed in bits; both are derived properties, so the defining identities
hold exactly at every snapshot rather than within a tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from .gases import Phase
from .units import Constants

LN2 = math.log(2.0)


@dataclass(frozen=True)
class EntropyLedger:
    """Cumulative entropy bookkeeping from the start of a process.

    dS_thermo accumulates dq_rev/T; material_term accumulates
    -(1/T) sum_j mu_j dN_j over all particle transfers.
    """

    dS_thermo: float
    material_term: float
    boltzmann_k: float

    def __post_init__(self) -> None:
        if self.boltzmann_k <= 0:
            raise ValueError("boltzmann_k must be positive")

    @property
    def dS_statistical(self) -> float:
        return self.dS_thermo + self.material_term

    @property
    def info_delta_bits(self) -> float:
        """Observer information change in bits: -dS_statistical/(k ln 2)."""
        return -self.dS_statistical / (self.boltzmann_k * LN2)

    def advanced(self, thermo_step: float, material_step: float) -> "EntropyLedger":
        """New ledger with one step's contributions added."""
        return EntropyLedger(
            dS_thermo=self.dS_thermo + thermo_step,
            material_term=self.material_term + material_step,
            boltzmann_k=self.boltzmann_k,
        )

    def __add__(self, other: "EntropyLedger") -> "EntropyLedger":
        if other.boltzmann_k != self.boltzmann_k:
            raise ValueError("cannot add ledgers with different unit systems")
        return EntropyLedger(
            dS_thermo=self.dS_thermo + other.dS_thermo,
            material_term=self.material_term + other.material_term,
            boltzmann_k=self.boltzmann_k,
        )

    @classmethod
    def zero(cls, c: Constants) -> "EntropyLedger":
        return cls(dS_thermo=0.0, material_term=0.0, boltzmann_k=c.boltzmann_k)


@dataclass(frozen=True)
class MixDistinct:
    """Two distinct gases sharing, or separating out of, a common volume."""

    n_a: float
    n_b: float
    volume: float
    temperature: float
    name: str = field(default="mix_distinct", init=False)

    def __post_init__(self) -> None:
        if self.n_a <= 0 or self.n_b <= 0:
            raise ValueError("particle counts must be positive")
        if self.volume <= 0 or self.temperature <= 0:
            raise ValueError("volume and temperature must be positive")


@dataclass(frozen=True)
class PartitionIdentical:
    """One gas of N_total particles split into two equal vessels."""

    n_total: float
    volume: float
    temperature: float
    name: str = field(default="partition_identical", init=False)

    def __post_init__(self) -> None:
        if self.n_total <= 0 or self.n_total != int(self.n_total) or int(self.n_total) % 2:
            raise ValueError("n_total must be a positive even integer value")
        if self.volume <= 0 or self.temperature <= 0:
            raise ValueError("volume and temperature must be positive")

    @property
    def n_a(self) -> float:
        return self.n_total / 2.0


@dataclass(frozen=True)
class RelocateIdentical:
    """lamb identical samples of N_A particles merged into one vessel."""

    lamb: int
    n_a: float
    volume: float
    temperature: float
    name: str = field(default="relocate_identical", init=False)

    def __post_init__(self) -> None:
        if not isinstance(self.lamb, int) or self.lamb < 2:
            raise ValueError("lamb must be an integer >= 2")
        if self.n_a <= 0:
            raise ValueError("n_a must be positive")
        if self.volume <= 0 or self.temperature <= 0:
            raise ValueError("volume and temperature must be positive")


@dataclass(frozen=True)
class IsothermalExpansion:
    """Reversible expansion of N particles from V1 to V2 at fixed T."""

    n: float
    v1: float
    v2: float
    temperature: float
    name: str = field(default="isothermal_expansion", init=False)

    def __post_init__(self) -> None:
        if self.n <= 0:
            raise ValueError("n must be positive")
        if self.v1 <= 0 or self.v2 <= self.v1:
            raise ValueError("volumes must satisfy V2 > V1 > 0")
        if self.temperature <= 0:
            raise ValueError("temperature must be positive")


ProcessKind = MixDistinct | PartitionIdentical | RelocateIdentical | IsothermalExpansion


@dataclass(frozen=True)
class Snapshot:
    """One equilibrium state along a quasi-static trace.

    phases lists only regions of positive volume; pressures and potentials
    cover every region label at every snapshot (a vanishing region keeps its
    limiting intensive values, which are constant along these traces).
    """

    progress: float
    phases: tuple[Phase, ...]
    pressures: Mapping[str, float]
    potentials: Mapping[str, Mapping[str, float]]
    ledger: EntropyLedger

    def __post_init__(self) -> None:
        if not 0.0 <= self.progress <= 1.0:
            raise ValueError("progress must lie in [0, 1]")


@dataclass(frozen=True)
class ProcessTrace:
    """Ordered snapshots of one process plus run metadata."""

    kind: ProcessKind
    snapshots: tuple[Snapshot, ...]
    constants: Constants
    metadata: Mapping[str, str]

    def __post_init__(self) -> None:
        if len(self.snapshots) < 2:
            raise ValueError("a trace needs at least two snapshots")
        if self.snapshots[0].progress != 0.0 or self.snapshots[-1].progress != 1.0:
            raise ValueError("trace must run from progress 0 to progress 1")
        seq = [s.progress for s in self.snapshots]
        if any(b < a for a, b in zip(seq, seq[1:])):
            raise ValueError("progress must be non-decreasing")

    @property
    def final_ledger(self) -> EntropyLedger:
        return self.snapshots[-1].ledger


@dataclass(frozen=True)
class SecondLawVerdict:
    """Per-step evaluation of the generalized and classical inequalities.

    statistical margin: dS_st_step - (dq_step/T + material_step), the
    generalized bound; classical margin: dS_th_step - dq_step/T.  The
    steppers are quasi-static, so both margins vanish (within rounding) and
    the verdict certifies equality; negative margins beyond tolerance are
    reported as violations.  The statistical step change is re-derived from
    the snapshot states' entropies, not read back from the ledger, so the
    check is not circular.
    """

    statistical_margins: tuple[float, ...]
    classical_margins: tuple[float, ...]
    violations_statistical: tuple[int, ...]
    violations_classical: tuple[int, ...]
    cumulative_statistical_margin: float
    cumulative_classical_margin: float
    tolerance: float

    @property
    def satisfied_statistical(self) -> bool:
        return not self.violations_statistical

    @property
    def satisfied_classical(self) -> bool:
        return not self.violations_classical
