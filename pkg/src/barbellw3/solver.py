"""Word equations: which substitutions send a pattern to a given word.

Solving ``pattern = target`` over a free group is done structurally.
The pattern's factors are grouped into maximal runs of constant
subscript; the target splits uniquely into blocks of constant
subscript.  Some runs may multiply out to the identity and vanish, so
the solver branches over every way of collapsing runs (re-merging the
survivors, which can enable further collapses), matches surviving runs
to target blocks in order, and then solves the resulting system of
free-group equations.  Whenever an equation has exactly one unknown
occurrence the unknown is forced by one-sided division; systems that
never reach that state fall back to bounded enumeration of one
variable at a time, so the solver is exhaustive in general only up to
the fallback bounds (every shape appearing in the reference table and
the hexagon analysis is division-solvable, no fallback involved).

The module also regenerates the solution table for the 21 monomial
shapes of the four T-polynomials and carries an independently
transcribed copy of that table to compare against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .barbell import (
    HEXAGON_TERMS,
    T_FORMULAS,
    T_KINDS,
    hexagon,
    is_admissible,
    monomials_m,
)
from .patterns import Pattern, eval_pattern
from .words import (
    BASE,
    QUAD,
    Word,
    bounded_words,
    concat_words,
    identity,
    invert,
    parse_word,
    split_blocks,
    word_sort_key,
)


class SolveError(ValueError):
    """Ill-formed solver input."""


class TableError(RuntimeError):
    """The regenerated solution table violates its contract."""


class CaseAnalysisError(RuntimeError):
    """The hexagon term pairing does not hold as claimed."""


@dataclass(frozen=True)
class Solution:
    """One satisfying assignment, stored as (variable, word) pairs."""

    items: tuple[tuple[str, Word], ...]

    @classmethod
    def of(cls, assignment: Mapping[str, Word]) -> "Solution":
        return cls(tuple(sorted(assignment.items())))

    @property
    def assignment(self) -> dict[str, Word]:
        return dict(self.items)

    def sort_key(self) -> tuple:
        return tuple((var, word_sort_key(word)) for var, word in self.items)

    def __str__(self) -> str:
        return ", ".join(f"{var} = {word}" for var, word in self.items)


Run = tuple[int, tuple[tuple[str, bool], ...]]


def _pattern_runs(pattern: Pattern) -> tuple[Run, ...]:
    runs: list[Run] = []
    for factor in pattern.factors:
        entry = (factor.var, factor.inverted)
        if runs and runs[-1][0] == factor.tag:
            runs[-1] = (factor.tag, runs[-1][1] + (entry,))
        else:
            runs.append((factor.tag, (entry,)))
    return tuple(runs)


def _merge_adjacent(runs: tuple[Run, ...]) -> tuple[Run, ...]:
    merged: list[Run] = []
    for tag, factors in runs:
        if merged and merged[-1][0] == tag:
            merged[-1] = (tag, merged[-1][1] + factors)
        else:
            merged.append((tag, factors))
    return tuple(merged)


def _collapse_branches(
    runs: tuple[Run, ...],
    collapsed: tuple[tuple[tuple[str, bool], ...], ...],
    seen: set,
) -> Iterator[tuple[tuple[Run, ...], tuple]]:
    """Every way of striking out runs that multiply to the identity.

    Striking out a run can make its neighbours adjacent with equal
    subscripts, so survivors are re-merged and the merged run may be
    struck out in turn.
    """
    runs = _merge_adjacent(runs)
    key = (runs, tuple(sorted(collapsed)))
    if key in seen:
        return
    seen.add(key)
    yield runs, collapsed
    for index in range(len(runs)):
        yield from _collapse_branches(
            runs[:index] + runs[index + 1:],
            collapsed + (runs[index][1],),
            seen,
        )


def _product(
    factors: Iterable[tuple[str, bool]], known: Mapping[str, Word]
) -> Word:
    pieces = []
    for var, inverted in factors:
        value = known[var]
        pieces.append(invert(value) if inverted else value)
    return concat_words(pieces, BASE)


def _solve_system(
    equations: list[tuple[tuple[tuple[str, bool], ...], Word]],
    known: dict[str, Word],
    fallback_syllables: int,
    fallback_exponent: int,
) -> list[dict[str, Word]]:
    """All in-bounds assignments satisfying every equation.

    Division steps are exact; only systems with no equation containing a
    single unknown occurrence resort to enumerating one variable over
    the fallback bounds and recursing.
    """
    pending = list(equations)
    known = dict(known)
    while pending:
        progress = False
        remaining = []
        for factors, rhs in pending:
            unknown_positions = [
                index for index, (var, _) in enumerate(factors) if var not in known
            ]
            if not unknown_positions:
                if _product(factors, known) != rhs:
                    return []
                progress = True
                continue
            if len(unknown_positions) == 1:
                index = unknown_positions[0]
                var, inverted = factors[index]
                prefix = _product(factors[:index], known)
                suffix = _product(factors[index + 1:], known)
                value = concat_words([invert(prefix), rhs, invert(suffix)], BASE)
                if inverted:
                    value = invert(value)
                if value.is_identity:
                    return []
                known[var] = value
                progress = True
                continue
            remaining.append((factors, rhs))
        pending = remaining
        if pending and not progress:
            return _enumerate_one_variable(
                pending, known, fallback_syllables, fallback_exponent
            )
    return [known]


def _enumerate_one_variable(
    pending, known, fallback_syllables, fallback_exponent
) -> list[dict[str, Word]]:
    occurrences: dict[str, int] = {}
    for factors, _ in pending:
        for var, _ in factors:
            if var not in known:
                occurrences[var] = occurrences.get(var, 0) + 1
    # Enumerate the most-repeated unknown: what is left is then closest
    # to division-solvable.
    var = max(sorted(occurrences), key=lambda v: occurrences[v])
    results = []
    for candidate in bounded_words(fallback_syllables, fallback_exponent):
        results.extend(
            _solve_system(
                pending, {**known, var: candidate}, fallback_syllables, fallback_exponent
            )
        )
    return results


def solve(
    pattern: Pattern,
    target: Word,
    fallback_max_syllables: int = 4,
    fallback_max_exponent: int | None = None,
) -> tuple[Solution, ...]:
    """All assignments of nontrivial words satisfying pattern = target.

    Returned in a deterministic order.  Complete whenever every branch
    is division-solvable; otherwise complete up to the fallback bounds.
    """
    if target.alphabet is not QUAD:
        raise SolveError("the target must be a word over the four-letter alphabet")
    if fallback_max_exponent is None:
        fallback_max_exponent = target.max_exponent() + 1
    blocks = split_blocks(target)
    variables = pattern.variables()
    runs = _pattern_runs(pattern)
    found: set[tuple[tuple[str, Word], ...]] = set()
    for surviving, collapsed in _collapse_branches(runs, (), set()):
        if len(surviving) != len(blocks):
            continue
        if any(run[0] != block[0] for run, block in zip(surviving, blocks)):
            continue
        equations = [
            (factors, block_word)
            for (_, factors), (_, block_word) in zip(surviving, blocks)
        ]
        equations += [(factors, identity(BASE)) for factors in collapsed]
        for assignment in _solve_system(
            equations, {}, fallback_max_syllables, fallback_max_exponent
        ):
            if any(var not in assignment for var in variables):
                continue
            if any(assignment[var].is_identity for var in variables):
                continue
            if eval_pattern(pattern, assignment) == target:
                found.add(tuple(sorted((v, assignment[v]) for v in variables)))
    solutions = [Solution(items) for items in found]
    solutions.sort(key=Solution.sort_key)
    return tuple(solutions)


# ---------------------------------------------------------------------------
# The 21-row solution table.

def table_patterns() -> list[tuple[Pattern, tuple[int, ...]]]:
    """Distinct monomial shapes of the four polynomials, in order of first
    appearance, each with the kinds it appears in (recomputed from the
    formulas)."""
    ordered: list[Pattern] = []
    appears: dict[tuple, list[int]] = {}
    for i in T_KINDS:
        for _, pattern in T_FORMULAS[i]:
            key = pattern.factors
            if key not in appears:
                appears[key] = []
                ordered.append(pattern)
            if i not in appears[key]:
                appears[key].append(i)
    return [(pattern, tuple(appears[pattern.factors])) for pattern in ordered]


@dataclass(frozen=True)
class TableRow:
    """Solutions of pattern = m1(k) and pattern = m2(k) for one shape."""

    pattern: Pattern
    appears_in: tuple[int, ...]
    m1_solution: tuple[Word, Word]
    m2_solution: tuple[Word, Word]
    admissible: bool


def _unique_pair_solution(pattern: Pattern, target: Word, label: str) -> tuple[Word, Word]:
    solutions = solve(pattern, target)
    if len(solutions) != 1:
        raise TableError(
            f"pattern {pattern} = {label} has {len(solutions)} solutions, expected 1"
        )
    assignment = solutions[0].assignment
    return (assignment["a"], assignment["c"])


def regenerate_table(k: int) -> list[TableRow]:
    """Solve every table shape against both witness monomials at this k.

    Raises TableError unless every shape has exactly one solution per
    monomial and none of the solutions is an admissible pair.
    """
    m1, m2 = monomials_m(k)
    rows = []
    for pattern, appears_in in table_patterns():
        pair1 = _unique_pair_solution(pattern, m1, f"m1({k})")
        pair2 = _unique_pair_solution(pattern, m2, f"m2({k})")
        admissible = is_admissible(*pair1) or is_admissible(*pair2)
        if admissible:
            raise TableError(
                f"pattern {pattern}: a solution at k={k} is admissible, "
                "contradicting the table"
            )
        rows.append(TableRow(pattern, appears_in, pair1, pair2, admissible))
    return rows


# Independent transcription of the published solution table.  Exponents
# written "k" are instantiated by reference_table().  The appears-in
# sets follow the polynomial formulas.
REFERENCE_TABLE_ROWS: tuple[tuple[str, tuple[int, ...], tuple[str, str], tuple[str, str]], ...] = (
    ("a_1 c_3^-1 a_3", (1, 3, 4, 6), ("t^-1", "t u^k t^-1"), ("t^2 u^k t^-1", "t^2 u^k t^-2")),
    ("c_1^-1 a_1 a_3", (1, 3, 4, 6), ("t u^-k t^-2", "t u^-k t^-1"), ("t", "t^2 u^-k t^-2")),
    ("c_1^-1 a_3^-1", (1, 4, 6), ("t^2 u^k t^-1", "t"), ("t^-1", "t u^-k t^-2")),
    ("a_1^-1 c_3^-1", (1, 4, 6), ("t", "t^2 u^k t^-1"), ("t u^-k t^-2", "t^-1")),
    ("c_1 a_3^-1 c_3", (3, 6), ("t u^k t^-1", "t^-1"), ("t^2 u^k t^-2", "t^2 u^k t^-1")),
    ("a_1^-1 c_3 a_3^-1", (3, 6), ("t", "t u^-k t^-1"), ("t u^-k t^-2", "t^2 u^-k t^-2")),
    ("c_1 a_3", (3,), ("t u^-k t^-2", "t^-1"), ("t", "t^2 u^k t^-1")),
    ("a_1 c_3", (3,), ("t^-1", "t u^-k t^-2"), ("t^2 u^k t^-1", "t")),
    ("c_1 a_1^-1 a_3^-1", (3, 6), ("t^2 u^k t^-1", "t u^k t^-1"), ("t^-1", "t^2 u^k t^-2")),
    ("a_1 c_1^-1 c_3^-1", (3,), ("t u^k t^-1", "t^2 u^k t^-1"), ("t^2 u^k t^-2", "t^-1")),
    ("a_1^-1 c_3^-1 a_3^-1", (4, 6), ("t", "t u^k t^-1"), ("t u^-k t^-2", "t^2 u^k t^-2")),
    ("c_1^-1 a_3", (4,), ("t u^-k t^-2", "t"), ("t", "t u^-k t^-2")),
    ("a_1 c_3^-1", (4,), ("t^-1", "t^2 u^k t^-1"), ("t^2 u^k t^-1", "t^-1")),
    ("c_1^-1 a_1^-1 a_3^-1", (4, 6), ("t^2 u^k t^-1", "t u^-k t^-1"), ("t^-1", "t^2 u^-k t^-2")),
    ("c_1 a_3^-1", (6,), ("t^2 u^k t^-1", "t^-1"), ("t^-1", "t^2 u^k t^-1")),
    ("c_1 a_1 a_3", (6,), ("t u^-k t^-2", "t u^k t^-1"), ("t", "t^2 u^k t^-2")),
    ("c_1^-1 a_3^-1 c_3^-1", (6,), ("t u^k t^-1", "t"), ("t^2 u^k t^-2", "t u^-k t^-2")),
    ("a_1 c_3 a_3", (6,), ("t^-1", "t u^-k t^-1"), ("t^2 u^k t^-1", "t^2 u^-k t^-2")),
    ("a_1^-1 c_1^-1 c_3^-1", (6,), ("t u^-k t^-1", "t^2 u^k t^-1"), ("t^2 u^-k t^-2", "t^-1")),
    ("a_1^-1 c_3", (6,), ("t", "t u^-k t^-2"), ("t u^-k t^-2", "t")),
    ("a_1^-1 c_1 c_3", (6,), ("t u^-k t^-1", "t u^-k t^-2"), ("t^2 u^-k t^-2", "t")),
)


def _word_from_template(template: str, k: int) -> Word:
    return parse_word(template.replace("k", str(k)), BASE)


@dataclass(frozen=True)
class ReferenceRow:
    pattern_text: str
    appears_in: tuple[int, ...]
    m1_solution: tuple[Word, Word]
    m2_solution: tuple[Word, Word]


def reference_table(k: int) -> list[ReferenceRow]:
    """The transcribed table instantiated at one k, in its published order."""
    rows = []
    for pattern_text, appears_in, pair1, pair2 in REFERENCE_TABLE_ROWS:
        rows.append(
            ReferenceRow(
                pattern_text,
                appears_in,
                tuple(_word_from_template(text, k) for text in pair1),
                tuple(_word_from_template(text, k) for text in pair2),
            )
        )
    return rows


def compare_with_reference(k: int) -> list[TableRow]:
    """Regenerate the table and insist it matches the transcription row for row."""
    rows = regenerate_table(k)
    reference = {row.pattern_text: row for row in reference_table(k)}
    if len(rows) != len(reference):
        raise TableError(
            f"regenerated table has {len(rows)} shapes, transcription has {len(reference)}"
        )
    for row in rows:
        ref = reference.get(str(row.pattern))
        if ref is None:
            raise TableError(f"shape {row.pattern} is missing from the transcription")
        if row.appears_in != ref.appears_in:
            raise TableError(
                f"shape {row.pattern}: appears-in {row.appears_in} differs from "
                f"transcribed {ref.appears_in}"
            )
        if row.m1_solution != ref.m1_solution or row.m2_solution != ref.m2_solution:
            raise TableError(
                f"shape {row.pattern}: solutions at k={k} differ from the transcription"
            )
    return rows


# ---------------------------------------------------------------------------
# The hexagon cancellation mechanism, verified structurally.

@dataclass(frozen=True)
class HexagonCase:
    """Unique way one hexagon term hits one witness monomial, with its partner."""

    term_index: int
    target_name: str
    nu: Word
    mu: Word
    partner_index: int
    sign: int
    partner_sign: int


@dataclass(frozen=True)
class HexagonCaseAnalysis:
    k: int
    cases: tuple[HexagonCase, ...]


def hexagon_case_analysis(k: int) -> HexagonCaseAnalysis:
    """Check the pairing that makes psi(k) kill every hexagon.

    For each of the four hexagon terms and each witness monomial, the
    equation term = monomial has exactly one solution (nu, mu); at that
    solution exactly one other term equals the other monomial, with the
    same sign, and the remaining two terms hit neither monomial.  The
    two matched contributions therefore cancel inside psi(k).
    """
    m1, m2 = monomials_m(k)
    monomials = {"m1": m1, "m2": m2}
    cases = []
    for term_index, (sign, pattern) in enumerate(HEXAGON_TERMS, start=1):
        for target_name, monomial in monomials.items():
            solutions = solve(pattern, monomial)
            if len(solutions) != 1:
                raise CaseAnalysisError(
                    f"term {term_index} = {target_name}({k}) has "
                    f"{len(solutions)} solutions, expected exactly 1"
                )
            assignment = solutions[0].assignment
            values = {
                index: eval_pattern(term_pattern, assignment)
                for index, (_, term_pattern) in enumerate(HEXAGON_TERMS, start=1)
            }
            other_name = "m2" if target_name == "m1" else "m1"
            other = monomials[other_name]
            partners = [
                index
                for index, value in values.items()
                if index != term_index and value == other
            ]
            if len(partners) != 1:
                raise CaseAnalysisError(
                    f"term {term_index} = {target_name}({k}): expected exactly one "
                    f"partner term equal to {other_name}, found {len(partners)}"
                )
            partner_index = partners[0]
            partner_sign = HEXAGON_TERMS[partner_index - 1][0]
            if partner_sign != sign:
                raise CaseAnalysisError(
                    f"term {term_index} = {target_name}({k}): partner term "
                    f"{partner_index} carries the opposite sign"
                )
            for index, value in values.items():
                if index in (term_index, partner_index):
                    continue
                if value == m1 or value == m2:
                    raise CaseAnalysisError(
                        f"term {term_index} = {target_name}({k}): term {index} "
                        "also hits a witness monomial"
                    )
            h = hexagon(assignment["nu"], assignment["mu"])
            if h.coeff(m1) != h.coeff(m2):
                raise CaseAnalysisError(
                    f"term {term_index} = {target_name}({k}): hexagon coefficients "
                    "at the witness monomials differ"
                )
            cases.append(
                HexagonCase(
                    term_index=term_index,
                    target_name=target_name,
                    nu=assignment["nu"],
                    mu=assignment["mu"],
                    partner_index=partner_index,
                    sign=sign,
                    partner_sign=partner_sign,
                )
            )
    return HexagonCaseAnalysis(k, tuple(cases))
