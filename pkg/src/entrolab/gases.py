"""Macrostate value types: species, single-species gas states, and phases.

All types are immutable; particle counts are real-valued (the engine treats
matter transfer as a continuum, integrality is enforced only by the
microstate-counting oracle).
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Species:
    """One gas species.  Masses are in whatever unit system the run uses."""

    id: str
    mass: float
    label: str = ""

    def __post_init__(self) -> None:
        if self.mass <= 0:
            raise ValueError(f"species {self.id!r}: mass must be positive")


@dataclass(frozen=True)
class GasState:
    """Macrostate (N, V, T) of one species occupying one volume."""

    species: Species
    n_particles: float
    volume: float
    temperature: float

    def __post_init__(self) -> None:
        if self.volume <= 0:
            raise ValueError("volume must be positive")
        if self.temperature <= 0:
            raise ValueError("temperature must be positive")
        if self.n_particles < 0:
            raise ValueError("particle count must be non-negative")


@dataclass(frozen=True)
class Phase:
    """A region holding one or more gas states at a common volume and temperature."""

    label: str
    contents: tuple[GasState, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "contents", tuple(self.contents))
        if not self.contents:
            raise ValueError(f"phase {self.label!r} has no contents")
        v0 = self.contents[0].volume
        t0 = self.contents[0].temperature
        for state in self.contents[1:]:
            if state.volume != v0 or state.temperature != t0:
                raise ValueError(
                    f"phase {self.label!r}: contents must share volume and temperature"
                )

    @property
    def volume(self) -> float:
        return self.contents[0].volume

    @property
    def temperature(self) -> float:
        return self.contents[0].temperature
