from __future__ import annotations

from .family import (
    ParityReport,
    RepClass,
    UnsupportedPattern,
    XY_PATTERN,
    brute_force_reps,
    klein_rep,
    lambda_bar,
    lambda_ppp,
    pullback,
    pullback_pattern,
    solve_t3qq,
    solve_t4qq_nonpullback,
    t3_rep,
    theorem_parity_check,
)
from .presentation import Presentation, PresentationError, Word, parse_presentation, t3qq, t4qq
from .reps import (
    ProjRep,
    W2Data,
    are_conjugate,
    chi_action,
    eval_word,
    is_projective,
    orbit_analysis,
    relator_signs,
    stabilizer_cover_check,
    w2_eval,
)

__all__ = [
    "ParityReport", "Presentation", "PresentationError", "ProjRep", "RepClass",
    "UnsupportedPattern", "W2Data", "Word", "XY_PATTERN", "are_conjugate",
    "brute_force_reps", "chi_action", "eval_word", "is_projective", "klein_rep",
    "lambda_bar", "lambda_ppp", "orbit_analysis", "parse_presentation", "pullback",
    "pullback_pattern", "relator_signs", "solve_t3qq", "solve_t4qq_nonpullback",
    "stabilizer_cover_check", "t3_rep", "t3qq", "t4qq", "theorem_parity_check", "w2_eval",
]
