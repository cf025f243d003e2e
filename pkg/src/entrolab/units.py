"""Physical constants and unit modes.

Two unit modes are supported:

* ``reduced`` -- k = h = 1 exactly.  The default everywhere; it keeps test
  tolerances dimensionless.
* ``si`` -- CODATA defined values of the Boltzmann and Planck constants.
"""

from __future__ import annotations

from dataclasses import dataclass

# Exact by definition in SI.
BOLTZMANN_SI = 1.380649e-23  # J/K
PLANCK_SI = 6.62607015e-34  # J*s


@dataclass(frozen=True)
class Constants:
    """Boltzmann and Planck constants plus the unit mode they belong to."""

    boltzmann_k: float
    planck_h: float
    unit_mode: str  # "reduced" | "si"

    def __post_init__(self) -> None:
        if self.boltzmann_k <= 0 or self.planck_h <= 0:
            raise ValueError("constants must be positive")
        if self.unit_mode not in ("reduced", "si"):
            raise ValueError(f"unknown unit mode {self.unit_mode!r}")
        if self.unit_mode == "reduced" and (self.boltzmann_k != 1.0 or self.planck_h != 1.0):
            raise ValueError("reduced mode requires k = h = 1 exactly")

    @classmethod
    def reduced(cls) -> "Constants":
        return cls(boltzmann_k=1.0, planck_h=1.0, unit_mode="reduced")

    @classmethod
    def si(cls) -> "Constants":
        return cls(boltzmann_k=BOLTZMANN_SI, planck_h=PLANCK_SI, unit_mode="si")


REDUCED = Constants.reduced()
SI = Constants.si()


def constants_for(unit_mode: str) -> Constants:
    """Look up the Constants instance for a unit-mode name."""
    if unit_mode == "reduced":
        return REDUCED
    if unit_mode == "si":
        return SI
    raise ValueError(f"unknown unit mode {unit_mode!r}")
