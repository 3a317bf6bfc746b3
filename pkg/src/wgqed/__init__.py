"""Photon-photon phase gates from emitters side-coupled to a semi-infinite waveguide."""

from .params import (
    ConditionSolution,
    MemoryParams,
    SystemParams3LS,
    SystemParams4LS,
    ValidationReport,
    reference_params_3ls,
    reference_params_4ls,
    solve_gate_conditions,
    validate_params,
)
from .amplitudes import (
    ReflectionSet,
    ShiftedFrequencies,
    reflect_3ls,
    reflect_from_ground,
    reflect_from_meta_raman,
    reflect_from_meta_resonant,
    reflection_set,
)
from .protocol import (
    MultiPhotonState,
    TruthTable,
    run_protocol,
    step1_trap,
    step2_phase,
    step3_retrieve_A,
    step4_retrieve_B,
    three_ls_photon_atom_gate,
    three_ls_photon_photon_gate,
    truth_table,
)

__version__ = "0.1.0"
from .memory import MatterQubit, retrieve, round_trip_fidelity, store
from .pulses import (
    GateMetrics,
    PulseSpec,
    QuadratureGrid,
    SweepResult,
    fidelity_3ls,
    fidelity_4ls,
    fidelity_sweep,
    leakage_sweep_4ls,
)
