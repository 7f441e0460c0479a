"""Exact synthesis of single-qubit Clifford+T circuits over Z[1/√2, i]."""

from .ring import (
    INFINITE,
    DivisibilityError,
    RealZSqrt2,
    RingFormatError,
    RingScalar,
    ZOmega,
    gde,
    gde_base2,
    gde_real,
    norm_sq,
    sde,
)
from .unitary import (
    H,
    I2,
    KET_ZERO,
    P,
    PDAG,
    RingState,
    RingUnitary,
    StateError,
    T,
    TDAG,
    UnitarityError,
    X,
    Y,
    Z,
    complete_from_column,
)
from .synthesis import (
    CertificateError,
    Circuit,
    Gate,
    GateCounts,
    InternalInvariantError,
    LookupTable,
    OptimalityCertificate,
    TableMissError,
    build_table,
    brute_force_min_counts,
    certify_optimality,
    enumerate_sde_le3,
    get_default_table,
    normalize_ht,
    prepare_state,
    reduce_step,
    synthesize,
    synthesize_info,
)
from .verifier import verify_lemma

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
