"""Monomial patterns: formal products of subscripted variables.

A pattern like ``a_1 c_3^-1 a_3`` stands for the map sending two-letter
words (a, c) to the four-letter word a_1 * invert(c)_3 * a_3, where the
subscript is the letter renaming.  Patterns are what the relation
formulas are written in and what the word-equation solver consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .words import BASE, Word, concat_words, invert, rename


class PatternError(ValueError):
    """Malformed pattern text or an evaluation with missing/bad values."""


@dataclass(frozen=True)
class PatternFactor:
    """One factor: a variable name, a subscript tag, and an inversion flag."""

    var: str
    tag: int
    inverted: bool = False

    def __post_init__(self):
        if not self.var.isalpha() or not self.var.islower():
            raise PatternError(f"variable name must be lowercase letters, got {self.var!r}")
        if self.tag not in (1, 3):
            raise PatternError(f"subscript tag must be 1 or 3, got {self.tag!r}")

    def __str__(self) -> str:
        text = f"{self.var}_{self.tag}"
        return f"{text}^-1" if self.inverted else text


@dataclass(frozen=True)
class Pattern:
    """A nonempty product of factors in at most two distinct variables."""

    factors: tuple[PatternFactor, ...]

    def __post_init__(self):
        if not self.factors:
            raise PatternError("a pattern needs at least one factor")
        if len(self.variables()) > 2:
            raise PatternError("patterns use at most two distinct variables")

    def variables(self) -> tuple[str, ...]:
        seen: list[str] = []
        for factor in self.factors:
            if factor.var not in seen:
                seen.append(factor.var)
        return tuple(seen)

    def __str__(self) -> str:
        return " ".join(str(factor) for factor in self.factors)


def parse_pattern(text: str) -> Pattern:
    """Read a pattern from text like ``c_1^-1 a_1 a_3``."""
    factors = []
    for token in text.split():
        body, inverted = (token[:-3], True) if token.endswith("^-1") else (token, False)
        name, _, tag_text = body.rpartition("_")
        if not name or tag_text not in ("1", "3"):
            raise PatternError(f"cannot read pattern factor {token!r}")
        factors.append(PatternFactor(name, int(tag_text), inverted))
    return Pattern(tuple(factors))


def eval_pattern(pattern: Pattern, assignment: Mapping[str, Word]) -> Word:
    """Substitute two-letter words for the variables and reduce."""
    pieces = []
    for factor in pattern.factors:
        try:
            value = assignment[factor.var]
        except KeyError:
            raise PatternError(f"no value for variable {factor.var!r}") from None
        if value.alphabet is not BASE:
            raise PatternError(
                f"value for {factor.var!r} must be over the two-letter alphabet"
            )
        if factor.inverted:
            value = invert(value)
        pieces.append(rename(value, factor.tag))
    return concat_words(pieces)
