"""Reduced words in the two free groups the package works in.

Everything downstream manipulates elements of a free group on two
generators (letters ``t``, ``u``) or of a free group on four generators
(letters ``t_1``, ``u_1``, ``t_3``, ``u_3``).  A word is stored
run-length encoded as a tuple of (letter, exponent) syllables with
nonzero exponents and no two adjacent syllables sharing a letter, so
each group element has exactly one representation and equality is
syntactic.

The module also provides the text grammar used by the command line
tools: syllables like ``t^-2`` separated by single spaces, ``1`` for
the identity (``e`` accepted on input), ``^1`` omitted when printing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Literal


class WordError(ValueError):
    """Malformed word data or an illegal word operation."""


class WordSyntaxError(WordError):
    """Word text that does not match the grammar; knows where it failed."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownLetterError(WordSyntaxError):
    """A letter outside the requested alphabet."""


class ZeroExponentError(WordSyntaxError):
    """An explicit exponent of zero, which the grammar forbids."""


class MixedAlphabetError(WordError):
    """Subscripted and unsubscripted letters mixed in one word."""


class AlphabetMismatchError(WordError):
    """An operation combining words over different alphabets."""


class Alphabet(Enum):
    """The two supported letter sets; no other alphabet is constructible."""

    BASE = ("t", "u")
    QUAD = ("t_1", "u_1", "t_3", "u_3")

    @property
    def letters(self) -> tuple[str, ...]:
        return self.value

    def letter_index(self, letter: str) -> int:
        try:
            return self.value.index(letter)
        except ValueError:
            raise WordError(f"letter {letter!r} is not in alphabet {self.name}") from None


BASE = Alphabet.BASE
QUAD = Alphabet.QUAD

# Longest first so that "t_1" is never read as "t" followed by junk.
_ALL_LETTERS = ("t_1", "u_1", "t_3", "u_3", "t", "u")

_INT_RE = re.compile(r"[+-]?[0-9]+")

Syllable = tuple[str, int]


class Word:
    """A reduced word.  Immutable; safe as a dict key."""

    __slots__ = ("alphabet", "syllables", "_hash")

    def __init__(self, alphabet: Alphabet, syllables: Iterable[Syllable] = ()):
        syls = tuple((letter, int(exp)) for letter, exp in syllables)
        letters = alphabet.letters
        previous = None
        for letter, exp in syls:
            if letter not in letters:
                raise WordError(f"letter {letter!r} is not in alphabet {alphabet.name}")
            if exp == 0:
                raise WordError("zero exponent in word")
            if letter == previous:
                raise WordError("word is not reduced: adjacent syllables share a letter")
            previous = letter
        self.alphabet = alphabet
        self.syllables = syls
        self._hash = hash((alphabet, syls))

    @classmethod
    def _raw(cls, alphabet: Alphabet, syllables: tuple[Syllable, ...]) -> "Word":
        # Trusted constructor: the caller guarantees reducedness.
        w = object.__new__(cls)
        w.alphabet = alphabet
        w.syllables = syllables
        w._hash = hash((alphabet, syllables))
        return w

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    @property
    def syllable_count(self) -> int:
        return len(self.syllables)

    @property
    def length(self) -> int:
        return sum(abs(exp) for _, exp in self.syllables)

    def max_exponent(self) -> int:
        return max((abs(exp) for _, exp in self.syllables), default=0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.alphabet is other.alphabet
            and self.syllables == other.syllables
        )

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, n: int) -> "Word":
        if not isinstance(n, int):
            return NotImplemented
        if n == 0:
            return identity(self.alphabet)
        base = self if n > 0 else invert(self)
        result = base
        for _ in range(abs(n) - 1):
            result = concat(result, base)
        return result

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return " ".join(
            letter if exp == 1 else f"{letter}^{exp}" for letter, exp in self.syllables
        )

    def __repr__(self) -> str:
        return f"Word({self.alphabet.name}, {self})"

    def sort_key(self) -> tuple:
        """Total order on words of one alphabet: length, syllables, spelling."""
        index = self.alphabet.letter_index
        return (
            self.length,
            len(self.syllables),
            tuple((index(letter), exp) for letter, exp in self.syllables),
        )


_IDENTITY = {alphabet: Word._raw(alphabet, ()) for alphabet in Alphabet}


def identity(alphabet: Alphabet) -> Word:
    return _IDENTITY[alphabet]


def word_sort_key(w: Word) -> tuple:
    return w.sort_key()


def _merge_runs(parts: Iterable[tuple[Syllable, ...]]) -> tuple[Syllable, ...]:
    """Concatenate syllable runs, cancelling across the seams."""
    stack: list[Syllable] = []
    append = stack.append
    pop = stack.pop
    for part in parts:
        for syl in part:
            if stack and stack[-1][0] == syl[0]:
                exp = stack[-1][1] + syl[1]
                if exp:
                    stack[-1] = (syl[0], exp)
                else:
                    pop()
            else:
                append(syl)
    return tuple(stack)


def concat(v: Word, w: Word) -> Word:
    """Product of two words, reduced."""
    if v.alphabet is not w.alphabet:
        raise AlphabetMismatchError(
            f"cannot concatenate a {v.alphabet.name} word with a {w.alphabet.name} word"
        )
    if not v.syllables:
        return w
    if not w.syllables:
        return v
    return Word._raw(v.alphabet, _merge_runs((v.syllables, w.syllables)))


def concat_words(words: Iterable[Word], alphabet: Alphabet | None = None) -> Word:
    """Product of any number of words, reduced once at the end."""
    parts = []
    for w in words:
        if alphabet is None:
            alphabet = w.alphabet
        elif w.alphabet is not alphabet:
            raise AlphabetMismatchError("cannot concatenate words over different alphabets")
        parts.append(w.syllables)
    if alphabet is None:
        raise WordError("empty product with no alphabet given")
    return Word._raw(alphabet, _merge_runs(parts))


def invert(w: Word) -> Word:
    return Word._raw(
        w.alphabet, tuple((letter, -exp) for letter, exp in reversed(w.syllables))
    )


@dataclass(frozen=True)
class SubscriptMap:
    """The letter renaming t -> t_tag, u -> u_tag for tag 1 or 3."""

    tag: int

    def __post_init__(self):
        if self.tag not in (1, 3):
            raise WordError(f"subscript tag must be 1 or 3, got {self.tag!r}")

    def apply(self, w: Word) -> Word:
        return rename(w, self.tag)


SUB1 = SubscriptMap(1)
SUB3 = SubscriptMap(3)

_RENAME = {
    1: {"t": "t_1", "u": "u_1"},
    3: {"t": "t_3", "u": "u_3"},
}

# Inverse direction, used when splitting a four-letter word into blocks.
_PULLBACK = {"t_1": ("t", 1), "u_1": ("u", 1), "t_3": ("t", 3), "u_3": ("u", 3)}


def rename(w: Word, tag: int | SubscriptMap) -> Word:
    """Apply the injective homomorphism sending t, u to their tagged copies."""
    if isinstance(tag, SubscriptMap):
        tag = tag.tag
    if tag not in (1, 3):
        raise WordError(f"subscript tag must be 1 or 3, got {tag!r}")
    if w.alphabet is not BASE:
        raise AlphabetMismatchError("rename expects a word over the two-letter alphabet")
    table = _RENAME[tag]
    return Word._raw(QUAD, tuple((table[letter], exp) for letter, exp in w.syllables))


def boundary_letter(w: Word, side: Literal["head", "tail"]) -> tuple[str, int] | None:
    """First or last letter of a word with the sign of its exponent."""
    if side not in ("head", "tail"):
        raise WordError(f"side must be 'head' or 'tail', got {side!r}")
    if not w.syllables:
        return None
    letter, exp = w.syllables[0] if side == "head" else w.syllables[-1]
    return (letter, 1 if exp > 0 else -1)


def split_blocks(w: Word) -> list[tuple[int, Word]]:
    """Split a four-letter word into maximal runs of constant subscript.

    Each block is returned as (tag, word over the two-letter alphabet),
    for example t_1^2 u_1 t_1^-1 t_3 -> [(1, t^2 u t^-1), (3, t)].
    """
    if w.alphabet is not QUAD:
        raise AlphabetMismatchError("split_blocks expects a word over the four-letter alphabet")
    blocks: list[tuple[int, Word]] = []
    current_tag: int | None = None
    current: list[Syllable] = []
    for letter, exp in w.syllables:
        base_letter, tag = _PULLBACK[letter]
        if tag != current_tag:
            if current:
                blocks.append((current_tag, Word._raw(BASE, tuple(current))))
            current_tag = tag
            current = []
        current.append((base_letter, exp))
    if current:
        blocks.append((current_tag, Word._raw(BASE, tuple(current))))
    return blocks


def _tokenize(text: str) -> list[tuple[int, str]]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        if text[i] == " ":
            i += 1
            continue
        j = i
        while j < n and text[j] != " ":
            j += 1
        tokens.append((i, text[i:j]))
        i = j
    return tokens


def _parse_syllable(pos: int, token: str, alphabet: Alphabet | None) -> Syllable:
    letter = next((l for l in _ALL_LETTERS if token.startswith(l)), None)
    if letter is None:
        raise WordSyntaxError(f"cannot read a letter in {token!r}", pos)
    if alphabet is not None and letter not in alphabet.letters:
        raise UnknownLetterError(
            f"letter {letter!r} is not in alphabet {alphabet.name}", pos
        )
    rest = token[len(letter):]
    if not rest:
        return (letter, 1)
    if rest[0] != "^":
        raise WordSyntaxError(
            f"unexpected character {rest[0]!r} after letter {letter!r}", pos + len(letter)
        )
    exp_text = rest[1:]
    if not _INT_RE.fullmatch(exp_text):
        raise WordSyntaxError(
            f"exponent {exp_text!r} is not a signed decimal integer", pos + len(letter) + 1
        )
    exp = int(exp_text)
    if exp == 0:
        raise ZeroExponentError("exponent 0 is not allowed", pos + len(letter) + 1)
    return (letter, exp)


def parse_word(text: str, alphabet: Alphabet | None = None) -> Word:
    """Parse word text, reducing it fully.

    With ``alphabet=None`` the alphabet is inferred from the letters that
    occur; a bare identity parses over the two-letter alphabet.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise WordSyntaxError("empty word text", 0)
    if len(tokens) == 1 and tokens[0][1] in ("1", "e"):
        return identity(alphabet if alphabet is not None else BASE)
    syllables = [_parse_syllable(pos, token, alphabet) for pos, token in tokens]
    if alphabet is None:
        subscripted = {letter in _PULLBACK for letter, _ in syllables}
        if len(subscripted) > 1:
            raise MixedAlphabetError(
                "word mixes subscripted and unsubscripted letters: " + text.strip()
            )
        alphabet = QUAD if subscripted.pop() else BASE
    return Word._raw(alphabet, _merge_runs([tuple(syllables)]))


def bounded_words(
    max_syllables: int,
    max_exponent: int,
    alphabet: Alphabet = BASE,
    include_identity: bool = False,
) -> list[Word]:
    """All reduced words within the bounds, sorted by the word order.

    Bounds are on the syllable count and on each syllable's absolute
    exponent.  Over the two-letter alphabet adjacent syllables simply
    alternate letters; over the four-letter alphabet any letter change
    is allowed.
    """
    if max_syllables < 0 or max_exponent < 0:
        raise WordError("bounds must be nonnegative")
    exponents = [e for e in range(-max_exponent, max_exponent + 1) if e != 0]
    letters = alphabet.letters
    out: list[Word] = [identity(alphabet)] if include_identity else []
    level: list[tuple[Syllable, ...]] = [()]
    for _ in range(max_syllables):
        next_level: list[tuple[Syllable, ...]] = []
        for prefix in level:
            last = prefix[-1][0] if prefix else None
            for letter in letters:
                if letter == last:
                    continue
                for exp in exponents:
                    next_level.append(prefix + ((letter, exp),))
        out.extend(Word._raw(alphabet, syls) for syls in next_level)
        level = next_level
    out.sort(key=word_sort_key)
    return out
