"""Entropy-ledger laboratory for ideal-gas thought experiments.

The package splits every process into two books: dS_th integrates dq/T and
dS_st adds the material (particle-transfer) term, so mixing, partitioning,
relocation, demons, and the Szilard engine can all be audited against the
same generalized inequality.
"""

__version__ = "0.1.0"

from .units import Constants, REDUCED, SI, constants_for
from .gases import Species, GasState, Phase
from .thermo import (
    thermal_wavelength,
    single_particle_partition_function,
    entropy,
    pressure,
    chemical_potential_statistical,
    chemical_potential_pressure_form,
    standard_chemical_potential,
    internal_energy,
    scaled_entropy_delta,
)
from .ledger import (
    EntropyLedger,
    MixDistinct,
    PartitionIdentical,
    RelocateIdentical,
    IsothermalExpansion,
    Snapshot,
    ProcessTrace,
    SecondLawVerdict,
)
from .processes import (
    run_mix_distinct,
    run_partition_identical,
    run_relocate_identical,
    run_isothermal_expansion,
    expansion_trace,
    material_term_quadrature,
    gibbs_mixing_composite,
    CompositeResult,
    check_generalized_second_law,
)
from .lattice import (
    LatticeModel,
    RegionConstraint,
    EnumerationLimitError,
    log_multiplicity,
    enumerate_and_count,
    localization_log_probability,
    sample_localization_mc,
    stirling_gap,
    McEstimate,
)
from .demon import (
    KineticGas,
    Gate,
    AlwaysOpen,
    AlwaysClosed,
    PressureDemon,
    TemperatureDemon,
    DemonLedger,
    DemonTrace,
    StallError,
    advance_to_next_event,
    run_demon,
    accounting_report,
)
from .szilard import SzilardCycle, szilard_cycle

__all__ = [
    "__version__",
    "Constants", "REDUCED", "SI", "constants_for",
    "Species", "GasState", "Phase",
    "thermal_wavelength", "single_particle_partition_function", "entropy",
    "pressure", "chemical_potential_statistical", "chemical_potential_pressure_form",
    "standard_chemical_potential", "internal_energy", "scaled_entropy_delta",
    "EntropyLedger", "MixDistinct", "PartitionIdentical", "RelocateIdentical",
    "IsothermalExpansion", "Snapshot", "ProcessTrace", "SecondLawVerdict",
    "run_mix_distinct", "run_partition_identical", "run_relocate_identical",
    "run_isothermal_expansion", "expansion_trace", "material_term_quadrature",
    "gibbs_mixing_composite", "CompositeResult", "check_generalized_second_law",
    "LatticeModel", "RegionConstraint", "EnumerationLimitError",
    "log_multiplicity", "enumerate_and_count", "localization_log_probability",
    "sample_localization_mc", "stirling_gap", "McEstimate",
    "KineticGas", "Gate", "AlwaysOpen", "AlwaysClosed", "PressureDemon",
    "TemperatureDemon", "DemonLedger", "DemonTrace", "StallError",
    "advance_to_next_event", "run_demon", "accounting_report",
    "SzilardCycle", "szilard_cycle",
]
