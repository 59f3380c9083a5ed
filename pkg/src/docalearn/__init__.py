"""Active learning of deterministic one-counter automata."""

from .automata import (
    RESET,
    Alphabet,
    AutomatonError,
    Configuration,
    Dfa,
    Doca,
    MDoca,
    accepts,
    dfa_as_doca,
    mdoca_to_doca,
    run,
    step,
    validate,
)
from .oracle import QueryStats, Teacher, min_distinguishing_word

__all__ = [
    "RESET",
    "Alphabet",
    "AutomatonError",
    "Configuration",
    "Dfa",
    "Doca",
    "MDoca",
    "QueryStats",
    "Teacher",
    "accepts",
    "dfa_as_doca",
    "mdoca_to_doca",
    "min_distinguishing_word",
    "run",
    "step",
    "validate",
]
