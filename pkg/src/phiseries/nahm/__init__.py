"""Admissible states, bounds and evaluators for Phi_G(q)."""

from .bounds import StateBounds, face_square_cap, propagate_bounds
from .engine import EngineStats, compute_phi, compute_phi_tqft
from .states import (
    AdmissibleState,
    DecompositionMismatch,
    NotAdmissible,
    ParityViolation,
    eval_A,
    eval_A_decomposed,
    eval_B,
    is_admissible,
    weight,
)
