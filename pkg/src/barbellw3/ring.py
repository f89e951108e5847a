"""Exact linear algebra in the rational group ring of a free group.

Elements are finite formal sums of reduced words with Fraction
coefficients, stored sparsely as a word -> coefficient map with no zero
entries.  Everything is exact: floats are rejected outright so a
verification can never pass by rounding.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Mapping, Sequence

from .words import (
    Alphabet,
    AlphabetMismatchError,
    Word,
    parse_word,
    word_sort_key,
)


class CoefficientError(ValueError):
    """A coefficient that is not an exact rational (or not an integer where one is required)."""


def as_fraction(value) -> Fraction:
    """Coerce int, Fraction, or a rational string to Fraction; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise CoefficientError(f"cannot read rational {value!r}") from exc
    raise CoefficientError(
        f"coefficients must be exact rationals, got {type(value).__name__}"
    )


def _format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class RingElement:
    """A finite rational combination of reduced words over one alphabet."""

    __slots__ = ("alphabet", "_terms")

    def __init__(
        self,
        alphabet: Alphabet,
        terms: Mapping[Word, object] | Iterable[tuple[Word, object]] = (),
    ):
        acc: dict[Word, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for word, coeff in items:
            if not isinstance(word, Word):
                raise TypeError(f"term keys must be words, got {type(word).__name__}")
            if word.alphabet is not alphabet:
                raise AlphabetMismatchError(
                    f"term {word} is over {word.alphabet.name}, element is over {alphabet.name}"
                )
            value = acc.get(word, _ZERO) + as_fraction(coeff)
            if value:
                acc[word] = value
            elif word in acc:
                del acc[word]
        self.alphabet = alphabet
        self._terms = acc

    @classmethod
    def zero(cls, alphabet: Alphabet) -> "RingElement":
        return cls(alphabet)

    @classmethod
    def monomial(cls, word: Word, coeff=1) -> "RingElement":
        return cls(word.alphabet, [(word, coeff)])

    @classmethod
    def _from_clean_dict(cls, alphabet: Alphabet, terms: dict[Word, Fraction]) -> "RingElement":
        # Trusted constructor: no zero values, all words over the alphabet.
        elem = object.__new__(cls)
        elem.alphabet = alphabet
        elem._terms = terms
        return elem

    def coeff(self, word: Word) -> Fraction:
        return self._terms.get(word, _ZERO)

    def items(self) -> list[tuple[Word, Fraction]]:
        """Terms sorted by the deterministic word order."""
        return sorted(self._terms.items(), key=lambda item: word_sort_key(item[0]))

    def support(self) -> list[Word]:
        return sorted(self._terms, key=word_sort_key)

    @property
    def term_count(self) -> int:
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.alphabet is other.alphabet and self._terms == other._terms

    def __add__(self, other: "RingElement") -> "RingElement":
        if not isinstance(other, RingElement):
            return NotImplemented
        if self.alphabet is not other.alphabet:
            raise AlphabetMismatchError("cannot add elements over different alphabets")
        acc = dict(self._terms)
        for word, coeff in other._terms.items():
            value = acc.get(word, _ZERO) + coeff
            if value:
                acc[word] = value
            elif word in acc:
                del acc[word]
        return RingElement._from_clean_dict(self.alphabet, acc)

    def __neg__(self) -> "RingElement":
        return RingElement._from_clean_dict(
            self.alphabet, {w: -c for w, c in self._terms.items()}
        )

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def scale(self, scalar) -> "RingElement":
        q = as_fraction(scalar)
        if not q:
            return RingElement.zero(self.alphabet)
        return RingElement._from_clean_dict(
            self.alphabet, {w: q * c for w, c in self._terms.items()}
        )

    def __mul__(self, scalar) -> "RingElement":
        if isinstance(scalar, (int, Fraction)):
            return self.scale(scalar)
        return NotImplemented

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for word, coeff in self.items():
            sign = "-" if coeff < 0 else "+"
            magnitude = abs(coeff)
            body = str(word) if magnitude == 1 else f"{_format_fraction(magnitude)} * {word}"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("- " if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"RingElement({self.alphabet.name}, {self})"

    def to_json_dict(self) -> dict:
        return {
            "alphabet": self.alphabet.name,
            "terms": [
                {"word": str(word), "coeff": _format_fraction(coeff)}
                for word, coeff in self.items()
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "RingElement":
        if not isinstance(data, dict) or "alphabet" not in data or "terms" not in data:
            raise ValueError("element JSON must have 'alphabet' and 'terms' fields")
        try:
            alphabet = Alphabet[data["alphabet"]]
        except KeyError:
            raise ValueError(f"unknown alphabet {data['alphabet']!r}") from None
        terms = []
        for entry in data["terms"]:
            if not isinstance(entry, dict) or "word" not in entry or "coeff" not in entry:
                raise ValueError("each term must have 'word' and 'coeff' fields")
            terms.append((parse_word(entry["word"], alphabet), as_fraction(entry["coeff"])))
        return cls(alphabet, terms)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RingElement":
        return cls.from_json_dict(json.loads(text))


_ZERO = Fraction(0)


def add(x: RingElement, y: RingElement) -> RingElement:
    return x + y


def scale(q, x: RingElement) -> RingElement:
    return x.scale(q)


def coeff(x: RingElement, w: Word) -> Fraction:
    return x.coeff(w)


class Functional:
    """A linear functional given by finitely many word weights."""

    __slots__ = ("alphabet", "weights")

    def __init__(self, weights: Mapping[Word, object] | Iterable[tuple[Word, object]]):
        items = weights.items() if isinstance(weights, Mapping) else list(weights)
        acc: dict[Word, Fraction] = {}
        alphabet = None
        for word, value in items:
            if alphabet is None:
                alphabet = word.alphabet
            elif word.alphabet is not alphabet:
                raise AlphabetMismatchError("functional weights must share one alphabet")
            q = as_fraction(value)
            if q:
                acc[word] = q
        if alphabet is None:
            raise ValueError("a functional needs at least one weighted word")
        self.alphabet = alphabet
        self.weights = acc

    def evaluate(self, x: RingElement) -> Fraction:
        if x.alphabet is not self.alphabet:
            raise AlphabetMismatchError(
                "cannot evaluate a functional on an element over another alphabet"
            )
        get = x._terms.get
        total = _ZERO
        for word, weight in self.weights.items():
            coefficient = get(word)
            if coefficient is not None:
                total += weight * coefficient
        return total

    __call__ = evaluate


def evaluate(f: Functional, x: RingElement) -> Fraction:
    return f.evaluate(x)


class Mod2Element:
    """A mod-2 combination of nontrivial two-letter words: just its support."""

    __slots__ = ("support",)

    def __init__(self, support: Iterable[Word] = ()):
        words = frozenset(support)
        for word in words:
            if not isinstance(word, Word) or word.alphabet is not Alphabet.BASE:
                raise ValueError("mod-2 support must consist of two-letter-alphabet words")
            if word.is_identity:
                raise ValueError("the identity word is dropped mod 2, not stored")
        self.support = words

    def __add__(self, other: "Mod2Element") -> "Mod2Element":
        if not isinstance(other, Mod2Element):
            return NotImplemented
        result = Mod2Element.__new__(Mod2Element)
        result.support = self.support.symmetric_difference(other.support)
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mod2Element):
            return NotImplemented
        return self.support == other.support

    def __hash__(self) -> int:
        return hash(self.support)

    @property
    def is_zero(self) -> bool:
        return not self.support

    def __str__(self) -> str:
        if not self.support:
            return "0"
        return " + ".join(str(w) for w in sorted(self.support, key=word_sort_key))

    def __repr__(self) -> str:
        return f"Mod2Element({self})"


def mod2_project(x: RingElement) -> Mod2Element:
    """Reduce an integer element mod 2, dropping the identity word.

    The element must have integer coefficients; a fractional coefficient
    has no mod-2 reduction and raises CoefficientError.
    """
    if x.alphabet is not Alphabet.BASE:
        raise AlphabetMismatchError("mod-2 projection is defined over the two-letter alphabet")
    support = []
    for word, coefficient in x._terms.items():
        if coefficient.denominator != 1:
            raise CoefficientError(
                f"mod-2 projection needs integer coefficients, got {coefficient} on {word}"
            )
        if coefficient.numerator % 2 and not word.is_identity:
            support.append(word)
    return Mod2Element(support)


def matrix_rank_exact(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by fraction-free (Bareiss) elimination."""
    matrix: list[list[int]] = []
    for row in rows:
        fractions = [as_fraction(x) for x in row]
        scale_factor = lcm(*(f.denominator for f in fractions)) if fractions else 1
        matrix.append([int(f * scale_factor) for f in fractions])
    if not matrix or not matrix[0]:
        return 0
    n_rows = len(matrix)
    n_cols = len(matrix[0])
    if any(len(row) != n_cols for row in matrix):
        raise ValueError("ragged matrix")
    rank_so_far = 0
    previous_pivot = 1
    for col in range(n_cols):
        pivot_row = next(
            (i for i in range(rank_so_far, n_rows) if matrix[i][col]), None
        )
        if pivot_row is None:
            continue
        matrix[rank_so_far], matrix[pivot_row] = matrix[pivot_row], matrix[rank_so_far]
        pivot = matrix[rank_so_far][col]
        row_p = matrix[rank_so_far]
        for i in range(rank_so_far + 1, n_rows):
            row_i = matrix[i]
            head = row_i[col]
            for j in range(col + 1, n_cols):
                row_i[j] = (row_i[j] * pivot - head * row_p[j]) // previous_pivot
            row_i[col] = 0
        previous_pivot = pivot
        rank_so_far += 1
        if rank_so_far == n_rows:
            break
    return rank_so_far


def rank(vectors: Iterable[RingElement]) -> int:
    """Dimension of the span of finitely many elements, computed exactly."""
    elements = list(vectors)
    if not elements:
        return 0
    alphabet = elements[0].alphabet
    for element in elements:
        if element.alphabet is not alphabet:
            raise AlphabetMismatchError("rank needs elements over one alphabet")
    columns = sorted({w for e in elements for w in e._terms}, key=word_sort_key)
    if not columns:
        return 0
    column_index = {w: i for i, w in enumerate(columns)}
    rows = []
    for element in elements:
        row = [_ZERO] * len(columns)
        for word, coefficient in element._terms.items():
            row[column_index[word]] = coefficient
        rows.append(row)
    return matrix_rank_exact(rows)
