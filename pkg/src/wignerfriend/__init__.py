"""Simulation and verification tools for an assisted Wigner's-friend protocol."""

from .circuits import (
    CNOT,
    H,
    X,
    Gate,
    KrausChannel,
    apply_channel,
    apply_unitary,
    ghz_state,
    make_channel,
    measure_projective,
    memory_pair,
    ud_projectors,
)
from .errors import InputError, NumericalError
from .metrics import (
    POVM,
    Witness,
    build_witnesses,
    helstrom_povm,
    is_ppt,
    negativity,
    povm_classical_distance,
    supports_disjoint,
    trace_distance,
    witness_expectation,
    witness_violation,
)
from .protocol import (
    AliceModel,
    PrivateBlocks,
    Theorem1Instance,
    alice_lab_state,
    alice_state_pair,
    circuit_lab_state,
    key_security,
    private_blocks,
    semiclassical_bound,
    theorem1_bounds,
    traced_negativity,
    ud_povm,
    wigner_state,
)
from .randomness import make_rng, random_channel, random_density, random_povm, random_theorem1_instance
from .states import (
    Bipartition,
    DensityMatrix,
    PureState,
    SubsystemLayout,
    partial_trace,
    partial_transpose,
    permute_subsystems,
    to_density,
)
from .tensor import hermitian_eigen, kron, matrix_algebra, schatten1

__version__ = "0.1.0"
