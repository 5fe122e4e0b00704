"""Statevector simulator and quantum linear-system solver.

The heavy lifting lives in the compiled extension; this package re-exports
its entry points.
"""

from ._core import (
    DecompositionError,
    EmissionError,
    EncodingError,
    ImpossibleOutcomeError,
    ParseError,
    choose_time_and_clock,
    classical_solve,
    cu3_params_from_unitary,
    eig_hermitian,
    emit_qasm,
    hadamard,
    iqft,
    pauli_x,
    qft,
    ry,
    sample,
    solve,
    trace_run,
    u3_matrix,
)

__all__ = [
    "DecompositionError",
    "EmissionError",
    "EncodingError",
    "ImpossibleOutcomeError",
    "ParseError",
    "choose_time_and_clock",
    "classical_solve",
    "cu3_params_from_unitary",
    "eig_hermitian",
    "emit_qasm",
    "hadamard",
    "iqft",
    "pauli_x",
    "qft",
    "ry",
    "sample",
    "solve",
    "trace_run",
    "u3_matrix",
]

__version__ = "0.1.0"
