"""Exact free-group word arithmetic and the barbell W3 certificate machinery."""

from .words import (
    Alphabet,
    BASE,
    QUAD,
    SubscriptMap,
    Word,
    WordError,
    WordSyntaxError,
    boundary_letter,
    bounded_words,
    concat,
    concat_words,
    identity,
    invert,
    parse_word,
    rename,
    split_blocks,
    word_sort_key,
)
from .ring import (
    Functional,
    Mod2Element,
    RingElement,
    add,
    coeff,
    evaluate,
    matrix_rank_exact,
    mod2_project,
    rank,
    scale,
)
from .patterns import Pattern, PatternError, PatternFactor, eval_pattern, parse_pattern
from .barbell import (
    AdmissiblePair,
    BarbellError,
    BarbellWord,
    Disk,
    SelfCheckError,
    SpanRecord,
    SpinShapeError,
    W3Value,
    barbell_word,
    count_admissible,
    enumerate_admissible,
    hexagon,
    is_admissible,
    monomials_m,
    psi,
    span_generator_records,
    span_generators,
    spin_to_barbell,
    t_poly,
    w3_target,
)
from .solver import (
    CaseAnalysisError,
    HexagonCase,
    HexagonCaseAnalysis,
    Solution,
    SolveError,
    TableError,
    TableRow,
    compare_with_reference,
    hexagon_case_analysis,
    reference_table,
    regenerate_table,
    solve,
    table_patterns,
)
from .verify import (
    Check,
    CheckFailure,
    Report,
    verify_all,
    verify_hexagon_vanishing,
    verify_main_theorem,
    verify_psi_targets,
    verify_span_vanishing,
)

__version__ = "0.1.0"
