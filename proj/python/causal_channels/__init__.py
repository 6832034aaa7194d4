"""Verification tools for bipartite joint quantum operations."""

from ._core import (
    CpMap,
    Error,
    InputError,
    Instrument,
    add,
    apply,
    check_process,
    choi,
    choi_distance,
    cli,
    complementary_map,
    compose_loop,
    decompose_process,
    kraus_from_choi,
    nine_state_instruments,
    nine_state_report,
    random_cptp,
    run_acceptance,
    scale,
    tensor,
    tp_defect,
    validate_instrument,
)

__all__ = [
    "CpMap",
    "Error",
    "InputError",
    "Instrument",
    "add",
    "apply",
    "check_process",
    "choi",
    "choi_distance",
    "cli",
    "complementary_map",
    "compose_loop",
    "decompose_process",
    "kraus_from_choi",
    "nine_state_instruments",
    "nine_state_report",
    "random_cptp",
    "run_acceptance",
    "scale",
    "tensor",
    "tp_defect",
    "validate_instrument",
]
