"""Formal concept analysis toolkit.

Contexts, concept lattices, implication bases, attribute exploration,
line-diagram layout, plus a CLI and a small HTTP service on top.
"""

from .bitsets import bits, full_mask, is_subset, mask_of
from .context import (
    Concept,
    FormalContext,
    add_attribute,
    add_object,
    close_attributes,
    count_concepts,
    derive_extent,
    derive_intent,
    enumerate_concepts,
    next_closed_set,
    remove_attribute,
    remove_object,
    rename_attribute,
    rename_object,
    set_incidence,
)
from .cxt import from_json_table, parse_cxt, to_json_table, write_cxt
from .errors import (
    CxtParseError,
    DuplicateName,
    FcaError,
    IndexOutOfRange,
    InvalidName,
    NotACounterexample,
    NotALattice,
)
from .exploration import reject_with_counterexample
from .exploration import accept as accept_question
from .exploration import result as exploration_result
from .exploration import start as start_exploration
from .implications import (
    Implication,
    ImplicationReport,
    close_under,
    format_implication,
    format_report,
    holds,
    stem_base,
    supported_rows,
)
from .lattice import (
    ConceptLattice,
    build_lattice,
    fundamental_theorem_check,
    join,
    leq,
    meet,
    read_extent_from_diagram,
    read_intent_from_diagram,
)
from .layout import (
    DiagramScene,
    build_scene,
    render_dot,
    render_json,
    render_svg,
)

__version__ = "0.1.0"
