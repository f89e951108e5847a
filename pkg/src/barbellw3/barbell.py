"""Hexagon relations, the four T-polynomials, and the W3 target family.

The objects here live in the rational group ring of the free group on
(t_1, u_1, t_3, u_3).  A pair of two-letter words (nu, mu) determines a
hexagon relator H(nu, mu); a pair (a, c) determines four polynomial
values T_1, T_3, T_4, T_6.  The distinguished family of targets is
T-polynomials evaluated at (a, c) = (t, t u^k t^-1), one family per
disk, and the coefficient functional psi(k) separates the whole family
from the span of hexagons and admissible-pair generators.

The target family is duplicated on purpose: once through the T
formulas and once as hard-coded expansions.  ``w3_target`` insists the
two constructions agree, so corrupting either copy makes every
downstream verification fail loudly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Mapping

from .patterns import Pattern, eval_pattern, parse_pattern
from .ring import Functional, RingElement
from .words import (
    BASE,
    QUAD,
    Syllable,
    Word,
    WordError,
    _merge_runs,
    boundary_letter,
    invert,
    rename,
    word_sort_key,
)


class BarbellError(ValueError):
    """Illegal arguments to a polynomial or enumeration routine."""


class SelfCheckError(RuntimeError):
    """The two independent target constructions disagree."""


def _formula(*signed_patterns: tuple[int, str]) -> tuple[tuple[int, Pattern], ...]:
    return tuple((sign, parse_pattern(text)) for sign, text in signed_patterns)


# The four polynomial shapes, written in the variables (a, c).  The
# variable pair fed to t_poly is unbarred: each formula already spells
# out its own inversions.
T_FORMULAS: dict[int, tuple[tuple[int, Pattern], ...]] = {
    1: _formula(
        (+1, "a_1 c_3^-1 a_3"),
        (+1, "c_1^-1 a_1 a_3"),
        (-1, "c_1^-1 a_3^-1"),
        (-1, "a_1^-1 c_3^-1"),
    ),
    3: _formula(
        (-1, "c_1 a_3^-1 c_3"),
        (+1, "a_1 c_3^-1 a_3"),
        (+1, "a_1^-1 c_3 a_3^-1"),
        (-1, "c_1 a_3"),
        (-1, "a_1 c_3"),
        (+1, "c_1 a_1^-1 a_3^-1"),
        (+1, "c_1^-1 a_1 a_3"),
        (-1, "a_1 c_1^-1 c_3^-1"),
    ),
    4: _formula(
        (+1, "a_1^-1 c_3^-1 a_3^-1"),
        (+1, "a_1 c_3^-1 a_3"),
        (-1, "c_1^-1 a_3^-1"),
        (-1, "c_1^-1 a_3"),
        (+1, "a_1^-1 c_3^-1"),
        (+1, "a_1 c_3^-1"),
        (-1, "c_1^-1 a_1^-1 a_3^-1"),
        (-1, "c_1^-1 a_1 a_3"),
    ),
    6: _formula(
        (+1, "c_1^-1 a_3^-1 c_3^-1"),
        (+1, "c_1 a_3^-1 c_3"),
        (-1, "a_1 c_3 a_3"),
        (-1, "a_1 c_3^-1 a_3"),
        (+1, "a_1^-1 c_3 a_3^-1"),
        (+1, "a_1^-1 c_3^-1 a_3^-1"),
        (+1, "a_1^-1 c_3^-1"),
        (+1, "a_1^-1 c_3"),
        (-1, "c_1^-1 a_3^-1"),
        (-1, "c_1 a_3^-1"),
        (-1, "c_1^-1 a_1^-1 a_3^-1"),
        (-1, "c_1 a_1^-1 a_3^-1"),
        (+1, "c_1^-1 a_1 a_3"),
        (+1, "c_1 a_1 a_3"),
        (-1, "a_1^-1 c_1^-1 c_3^-1"),
        (-1, "a_1^-1 c_1 c_3"),
    ),
}

T_KINDS = (1, 3, 4, 6)

# The four terms of the hexagon relator H(nu, mu).
HEXAGON_TERMS: tuple[tuple[int, Pattern], ...] = _formula(
    (+1, "nu_1 mu_3"),
    (+1, "mu_1^-1 nu_3^-1"),
    (-1, "nu_1^-1 mu_3 nu_3^-1"),
    (-1, "nu_1 mu_1^-1 nu_3"),
)

_FactorKey = tuple[str, int, bool]

# Formulas flattened to piece-lookup keys for the evaluation fast path.
_FORMULA_KEYS: dict[int, tuple[tuple[int, tuple[_FactorKey, ...]], ...]] = {
    i: tuple(
        (sign, tuple((f.var, f.tag, f.inverted) for f in pattern.factors))
        for sign, pattern in formula
    )
    for i, formula in T_FORMULAS.items()
}


def _pair_pieces(a: Word, c: Word) -> dict[_FactorKey, tuple[Syllable, ...]]:
    pieces: dict[_FactorKey, tuple[Syllable, ...]] = {}
    for var, value in (("a", a), ("c", c)):
        for tag in (1, 3):
            renamed = rename(value, tag)
            pieces[(var, tag, False)] = renamed.syllables
            pieces[(var, tag, True)] = invert(renamed).syllables
    return pieces


def _t_poly_coeffs(
    i: int, pieces: Mapping[_FactorKey, tuple[Syllable, ...]]
) -> dict[tuple[Syllable, ...], int]:
    acc: dict[tuple[Syllable, ...], int] = {}
    for sign, keys in _FORMULA_KEYS[i]:
        syllables = _merge_runs(pieces[key] for key in keys)
        total = acc.get(syllables, 0) + sign
        if total:
            acc[syllables] = total
        elif syllables in acc:
            del acc[syllables]
    return acc


def _element_from_coeffs(coeffs: Mapping[tuple[Syllable, ...], int]) -> RingElement:
    return RingElement(QUAD, [(Word._raw(QUAD, s), n) for s, n in coeffs.items()])


def t_poly(i: int, a: Word, c: Word) -> RingElement:
    """Value of the kind-i polynomial on a pair of nontrivial words."""
    if i not in T_FORMULAS:
        raise BarbellError(f"polynomial kind must be one of {T_KINDS}, got {i!r}")
    for name, value in (("a", a), ("c", c)):
        if value.alphabet is not BASE:
            raise BarbellError(f"{name} must be a word over the two-letter alphabet")
        if value.is_identity:
            raise BarbellError(f"{name} must be nontrivial")
    return _element_from_coeffs(_t_poly_coeffs(i, _pair_pieces(a, c)))


def hexagon(nu: Word, mu: Word) -> RingElement:
    """The hexagon relator H(nu, mu); identity arguments are allowed."""
    for name, value in (("nu", nu), ("mu", mu)):
        if value.alphabet is not BASE:
            raise BarbellError(f"{name} must be a word over the two-letter alphabet")
    assignment = {"nu": nu, "mu": mu}
    terms = [
        (eval_pattern(pattern, assignment), sign) for sign, pattern in HEXAGON_TERMS
    ]
    return RingElement(QUAD, terms)


# ---------------------------------------------------------------------------
# The target family, built twice.

# Exponent templates: an int, or "k" / "-k" for the family parameter.
ExpansionRow = tuple[int, tuple[tuple[str, object], ...]]

T4_EXPANSION_ROWS: tuple[ExpansionRow, ...] = (
    (+1, (("t_1", -1), ("t_3", 1), ("u_3", "-k"), ("t_3", -2))),
    (+1, (("t_1", 1), ("t_3", 1), ("u_3", "-k"))),
    (-1, (("t_1", 1), ("u_1", "-k"), ("t_1", -1), ("t_3", -1))),
    (-1, (("t_1", 1), ("u_1", "-k"), ("t_1", -1), ("t_3", 1))),
    (+1, (("t_1", -1), ("t_3", 1), ("u_3", "-k"), ("t_3", -1))),
    (+1, (("t_1", 1), ("t_3", 1), ("u_3", "-k"), ("t_3", -1))),
    (-1, (("t_1", 1), ("u_1", "-k"), ("t_1", -2), ("t_3", -1))),
    (-1, (("t_1", 1), ("u_1", "-k"), ("t_3", 1))),
)

T6_EXPANSION_ROWS: tuple[ExpansionRow, ...] = (
    (+1, (("t_1", 1), ("u_1", "-k"), ("t_1", -1), ("u_3", "-k"), ("t_3", -1))),
    (+1, (("t_1", 1), ("u_1", "k"), ("t_1", -1), ("u_3", "k"), ("t_3", -1))),
    (-1, (("t_1", 1), ("t_3", 1), ("u_3", "k"))),
    (-1, (("t_1", 1), ("t_3", 1), ("u_3", "-k"))),
    (+1, (("t_1", -1), ("t_3", 1), ("u_3", "k"), ("t_3", -2))),
    (+1, (("t_1", -1), ("t_3", 1), ("u_3", "-k"), ("t_3", -2))),
    (+1, (("t_1", -1), ("t_3", 1), ("u_3", "-k"), ("t_3", -1))),
    (+1, (("t_1", -1), ("t_3", 1), ("u_3", "k"), ("t_3", -1))),
    (-1, (("t_1", 1), ("u_1", "-k"), ("t_1", -1), ("t_3", -1))),
    (-1, (("t_1", 1), ("u_1", "k"), ("t_1", -1), ("t_3", -1))),
    (-1, (("t_1", 1), ("u_1", "-k"), ("t_1", -2), ("t_3", -1))),
    (-1, (("t_1", 1), ("u_1", "k"), ("t_1", -2), ("t_3", -1))),
    (+1, (("t_1", 1), ("u_1", "-k"), ("t_3", 1))),
    (+1, (("t_1", 1), ("u_1", "k"), ("t_3", 1))),
    (-1, (("u_1", "-k"), ("t_1", -1), ("t_3", 1), ("u_3", "-k"), ("t_3", -1))),
    (-1, (("u_1", "k"), ("t_1", -1), ("t_3", 1), ("u_3", "k"), ("t_3", -1))),
)


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise BarbellError(f"the family parameter k must be a positive integer, got {k!r}")


def word_at_k(template: tuple[tuple[str, object], ...], k: int, alphabet=QUAD) -> Word:
    """Instantiate a syllable template whose exponents may be k or -k."""
    syllables = []
    for letter, exp in template:
        if exp == "k":
            exp = k
        elif exp == "-k":
            exp = -k
        syllables.append((letter, exp))
    return Word(alphabet, syllables)


def _expansion_element(rows: Iterable[ExpansionRow], k: int) -> RingElement:
    return RingElement(QUAD, [(word_at_k(template, k), sign) for sign, template in rows])


def t4_expansion(k: int) -> RingElement:
    """Hard-coded 8-term expansion of the disk-1 target."""
    _check_k(k)
    return _expansion_element(T4_EXPANSION_ROWS, k)


def t6_expansion(k: int) -> RingElement:
    """Hard-coded 16-term expansion of the kind-6 value at (t, t u^k t^-1)."""
    _check_k(k)
    return _expansion_element(T6_EXPANSION_ROWS, k)


class Disk(Enum):
    """The two disks whose W3 values the targets certify."""

    D1 = "d1"
    D2 = "d2"


@dataclass(frozen=True)
class W3Value:
    """A W3 target: the group-ring value attached to one disk and one k."""

    disk: Disk
    k: int
    value: RingElement


def target_argument_pair(k: int) -> tuple[Word, Word]:
    """The argument pair (a, c) = (t, t u^k t^-1) of the target family."""
    _check_k(k)
    return (Word(BASE, [("t", 1)]), Word(BASE, [("t", 1), ("u", k), ("t", -1)]))


def w3_target(disk: Disk, k: int) -> W3Value:
    """Build a target value twice and insist both constructions agree."""
    if not isinstance(disk, Disk):
        raise BarbellError(f"disk must be Disk.D1 or Disk.D2, got {disk!r}")
    _check_k(k)
    a, c = target_argument_pair(k)
    if disk is Disk.D1:
        value = t_poly(4, a, c)
        expansion = t4_expansion(k)
    else:
        value = t_poly(4, a, c).scale(2) + t_poly(6, a, c)
        expansion = t4_expansion(k).scale(2) + t6_expansion(k)
    if value != expansion:
        raise SelfCheckError(
            f"polynomial and hard-coded constructions of the {disk.value} target "
            f"disagree at k={k}"
        )
    return W3Value(disk=disk, k=k, value=value)


def monomials_m(k: int) -> tuple[Word, Word]:
    """The two witness monomials the functional psi(k) weighs."""
    _check_k(k)
    m1 = Word(QUAD, [("t_1", -1), ("t_3", 1), ("u_3", -k), ("t_3", -2)])
    m2 = Word(QUAD, [("t_1", 2), ("u_1", k), ("t_1", -1), ("t_3", 1)])
    return (m1, m2)


def psi(k: int) -> Functional:
    """The separating functional: coefficient at m1(k) minus coefficient at m2(k)."""
    m1, m2 = monomials_m(k)
    return Functional([(m1, 1), (m2, -1)])


# ---------------------------------------------------------------------------
# Admissible pairs and the span they generate.

@dataclass(frozen=True)
class AdmissiblePair:
    """A pair of nontrivial words whose junction switches letters."""

    a: Word
    c: Word

    def __str__(self) -> str:
        return f"({self.a}, {self.c})"


def is_admissible(a: Word, c: Word) -> bool:
    """True when a ends and c begins with powers of different letters."""
    if a.alphabet is not BASE or c.alphabet is not BASE:
        raise BarbellError("admissibility is defined for two-letter-alphabet words")
    if a.is_identity or c.is_identity:
        return False
    tail = boundary_letter(a, "tail")[0]
    head = boundary_letter(c, "head")[0]
    return tail != head


def _words_by_syllable_count(max_syllables: int, max_exponent: int) -> list[list[Word]]:
    """Nonempty reduced two-letter words grouped by syllable count, each group sorted."""
    exponents = [e for e in range(-max_exponent, max_exponent + 1) if e != 0]
    by_count: list[list[Word]] = [[] for _ in range(max_syllables + 1)]
    level: list[tuple[Syllable, ...]] = [()]
    for count in range(1, max_syllables + 1):
        next_level: list[tuple[Syllable, ...]] = []
        for prefix in level:
            last = prefix[-1][0] if prefix else None
            for letter in ("t", "u"):
                if letter == last:
                    continue
                for exp in exponents:
                    next_level.append(prefix + ((letter, exp),))
        by_count[count] = sorted(
            (Word._raw(BASE, syls) for syls in next_level), key=word_sort_key
        )
        level = next_level
    return by_count


def enumerate_admissible(
    max_syllables: int, max_exponent: int
) -> Iterator[AdmissiblePair]:
    """All admissible pairs within bounds, without repetition.

    Deterministic order: total syllable count of the pair, then the word
    order of a, then the word order of c.
    """
    if max_syllables < 1 or max_exponent < 1:
        raise BarbellError("enumeration bounds must be at least 1")
    by_count = _words_by_syllable_count(max_syllables, max_exponent)
    heads: dict[tuple[int, str], list[Word]] = {}
    for count in range(1, max_syllables + 1):
        for letter in ("t", "u"):
            heads[(count, letter)] = [
                w for w in by_count[count] if w.syllables[0][0] == letter
            ]
    other = {"t": "u", "u": "t"}
    for total in range(2, 2 * max_syllables + 1):
        a_counts = [
            sa
            for sa in range(1, max_syllables + 1)
            if 1 <= total - sa <= max_syllables
        ]
        a_candidates = sorted(
            (a for sa in a_counts for a in by_count[sa]), key=word_sort_key
        )
        for a in a_candidates:
            complement = other[a.syllables[-1][0]]
            for c in heads[(total - a.syllable_count, complement)]:
                yield AdmissiblePair(a, c)


def count_admissible(max_syllables: int, max_exponent: int) -> int:
    """Number of pairs enumerate_admissible yields, without yielding them."""
    if max_syllables < 1 or max_exponent < 1:
        raise BarbellError("enumeration bounds must be at least 1")
    by_count = _words_by_syllable_count(max_syllables, max_exponent)
    head_counts: dict[tuple[int, str], int] = {}
    for count in range(1, max_syllables + 1):
        for letter in ("t", "u"):
            head_counts[(count, letter)] = sum(
                1 for w in by_count[count] if w.syllables[0][0] == letter
            )
    other = {"t": "u", "u": "t"}
    total = 0
    for sa in range(1, max_syllables + 1):
        for a in by_count[sa]:
            complement = other[a.syllables[-1][0]]
            for sc in range(1, max_syllables + 1):
                total += head_counts[(sc, complement)]
    return total


@dataclass(frozen=True)
class SpanRecord:
    """One span generator: the polynomial kind, the pair, and the value."""

    i: int
    a: Word
    c: Word
    value: RingElement


def _check_kinds(kinds: Iterable[int]) -> tuple[int, ...]:
    kind_list = sorted(set(kinds))
    if not kind_list or any(i not in T_FORMULAS for i in kind_list):
        raise BarbellError(f"kinds must be a nonempty subset of {T_KINDS}")
    return tuple(kind_list)


def span_generator_records(
    max_syllables: int, max_exponent: int, kinds: Iterable[int] = T_KINDS
) -> Iterator[SpanRecord]:
    """Stream the span generators with their provenance, pairs outermost."""
    kind_list = _check_kinds(kinds)
    for pair in enumerate_admissible(max_syllables, max_exponent):
        pieces = _pair_pieces(pair.a, pair.c)
        for i in kind_list:
            yield SpanRecord(
                i, pair.a, pair.c, _element_from_coeffs(_t_poly_coeffs(i, pieces))
            )


def span_generators(
    max_syllables: int, max_exponent: int, kinds: Iterable[int] = T_KINDS
) -> Iterator[RingElement]:
    """Stream the span generator values within bounds."""
    for record in span_generator_records(max_syllables, max_exponent, kinds):
        yield record.value


# ---------------------------------------------------------------------------
# Barbell words and the spin generator substitution.

BARBELL_SYMBOLS = ("t", "u", "nu_B", "nu_R")


class SpinShapeError(ValueError):
    """A word that is not of the alternating t/u shape the substitution needs."""


@dataclass(frozen=True)
class BarbellWord:
    """A name for a barbell diffeomorphism: a reduced word in four symbols.

    No group structure is imposed beyond merging adjacent equal symbols;
    these are opaque labels.
    """

    factors: tuple[tuple[str, int], ...]

    def __post_init__(self):
        previous = None
        for symbol, exp in self.factors:
            if symbol not in BARBELL_SYMBOLS:
                raise WordError(f"unknown barbell symbol {symbol!r}")
            if exp == 0:
                raise WordError("zero exponent in barbell word")
            if symbol == previous:
                raise WordError("barbell word is not reduced")
            previous = symbol

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " ".join(
            symbol if exp == 1 else f"{symbol}^{exp}" for symbol, exp in self.factors
        )


def barbell_word(factors: Iterable[tuple[str, int]]) -> BarbellWord:
    """Build a barbell word, merging adjacent equal symbols."""
    return BarbellWord(_merge_runs([tuple(factors)]))


def spin_to_barbell(s: Word) -> BarbellWord:
    """Rewrite a spin generator word as its barbell word.

    The input must alternate t- and u-syllables, starting and ending
    with t.  Each u-syllable u^y becomes nu_R nu_B u^y nu_B^-1 nu_R^-1;
    t-syllables pass through.
    """
    if s.alphabet is not BASE:
        raise SpinShapeError("spin words live over the two-letter alphabet")
    syllables = s.syllables
    if not syllables or len(syllables) % 2 == 0:
        raise SpinShapeError(f"word {s} does not alternate t and u syllables ending in t")
    for position, (letter, _) in enumerate(syllables):
        expected = "t" if position % 2 == 0 else "u"
        if letter != expected:
            raise SpinShapeError(
                f"word {s} does not alternate t and u syllables ending in t"
            )
    factors: list[tuple[str, int]] = []
    for letter, exp in syllables:
        if letter == "t":
            factors.append(("t", exp))
        else:
            factors.extend(
                [("nu_R", 1), ("nu_B", 1), ("u", exp), ("nu_B", -1), ("nu_R", -1)]
            )
    return BarbellWord(tuple(factors))
