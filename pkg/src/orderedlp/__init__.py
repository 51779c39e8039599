"""Preferred answer sets of ordered logic programs."""

from .core import (
    CycleDetected,
    ExtLiteral,
    HeadKind,
    Interpretation,
    Literal,
    OrderedProgram,
    Program,
    ProgramKind,
    Rule,
    StrictOrder,
    ext,
    lit,
    ordered,
    rule,
    validate_order,
)
from .prefsolve import aset, preferred_answer_sets, preferred_interpretations
from .semantics import enumerate_extended_answer_sets, is_extended_answer_set

__version__ = "0.1.0"
