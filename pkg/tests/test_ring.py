"""Group-ring elements: exact arithmetic, serialization, functionals, rank."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from barbellw3.ring import (
    CoefficientError,
    Functional,
    Mod2Element,
    RingElement,
    as_fraction,
    matrix_rank_exact,
    mod2_project,
    rank,
)
from barbellw3.words import (
    BASE,
    QUAD,
    AlphabetMismatchError,
    identity,
    parse_word,
)

from test_words import rand_word


def rand_element(rng, alphabet=BASE, max_terms=5):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        coeff = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        terms[rand_word(rng, alphabet)] = coeff
    return RingElement(alphabet, terms)


def test_as_fraction_accepts_exact_values():
    assert as_fraction(3) == Fraction(3)
    assert as_fraction(Fraction(2, 6)) == Fraction(1, 3)
    assert as_fraction("2/3") == Fraction(2, 3)
    with pytest.raises(CoefficientError):
        as_fraction(0.5)


def test_constructor_sums_duplicates_and_drops_zeros():
    t = parse_word("t")
    x = RingElement(BASE, [(t, 1), (t, 2)])
    assert x.coeff(t) == 3 and x.term_count == 1
    assert RingElement(BASE, [(t, 1), (t, -1)]).is_zero
    assert RingElement.zero(BASE).is_zero
    assert str(RingElement.zero(BASE)) == "0"


def test_constructor_rejects_bad_terms():
    with pytest.raises(AlphabetMismatchError):
        RingElement(BASE, {parse_word("t_1"): 1})
    with pytest.raises(CoefficientError):
        RingElement(BASE, {parse_word("t"): 0.25})


def test_module_laws_random():
    rng = random.Random(17)
    zero = RingElement.zero(BASE)
    for _ in range(200):
        x, y, z = (rand_element(rng) for _ in range(3))
        q = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        assert (x + y) + z == x + (y + z)
        assert x + y == y + x
        assert x + zero == x
        assert x - x == zero
        assert -x == zero - x
        assert (x + y).scale(q) == x.scale(q) + y.scale(q)
        assert q * x == x * q == x.scale(q)
        for word in (x + y).support():
            assert (x + y).coeff(word) == x.coeff(word) + y.coeff(word)


def test_scalar_multiplication_rejects_floats():
    x = RingElement.monomial(parse_word("t"))
    with pytest.raises(CoefficientError):
        x.scale(0.5)
    with pytest.raises(TypeError):
        x * x


def test_coeff_of_absent_word_is_zero():
    x = RingElement.monomial(parse_word("t"))
    assert x.coeff(parse_word("u")) == Fraction(0)
    assert x.coeff(identity(BASE)) == 0


def test_items_are_sorted_by_word_order():
    rng = random.Random(23)
    for _ in range(50):
        x = rand_element(rng)
        keys = [word.sort_key() for word, _ in x.items()]
        assert keys == sorted(keys)
        assert set(x.support()) == {word for word, _ in x.items()}


def test_str_format():
    t, u, tu = parse_word("t"), parse_word("u"), parse_word("t u")
    x = RingElement(BASE, {t: 1, u: Fraction(-2), tu: Fraction(1, 3), identity(BASE): -1})
    assert str(x) == "- 1 + t - 2 * u + 1/3 * t u"
    assert str(RingElement(BASE, {t: -1})) == "- t"
    assert str(RingElement(BASE, {t: 1})) == "t"


def test_json_round_trip_and_shape():
    t, tu = parse_word("t"), parse_word("t u")
    x = RingElement(BASE, {t: Fraction(-2), tu: Fraction(1, 3)})
    data = x.to_json_dict()
    assert data == {
        "alphabet": "BASE",
        "terms": [
            {"word": "t", "coeff": "-2"},
            {"word": "t u", "coeff": "1/3"},
        ],
    }
    assert RingElement.from_json_dict(data) == x
    assert RingElement.from_json(x.to_json()) == x


def test_json_round_trip_random():
    rng = random.Random(41)
    for _ in range(100):
        x = rand_element(rng, rng.choice([BASE, QUAD]))
        assert RingElement.from_json(x.to_json()) == x


def test_from_json_dict_validation():
    assert RingElement.from_json_dict(
        {"alphabet": "BASE", "terms": [{"word": "t", "coeff": "1"}, {"word": "t", "coeff": "-1"}]}
    ).is_zero
    with pytest.raises(ValueError):
        RingElement.from_json_dict({"alphabet": "NOPE", "terms": []})
    # decimal strings are exact and convert losslessly, unlike binary floats
    permissive = RingElement.from_json_dict(
        {"alphabet": "BASE", "terms": [{"word": "t", "coeff": "0.5"}]}
    )
    assert permissive.coeff(parse_word("t")) == Fraction(1, 2)
    with pytest.raises(CoefficientError):
        RingElement.from_json_dict({"alphabet": "BASE", "terms": [{"word": "t", "coeff": 0.5}]})


def test_functional_is_linear():
    rng = random.Random(57)
    t, u = parse_word("t"), parse_word("u")
    f = Functional([(t, 1), (u, -1)])
    assert f(RingElement(BASE, {t: Fraction(5), u: 2})) == 3
    for _ in range(100):
        x, y = rand_element(rng), rand_element(rng)
        q = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        assert f(x + y) == f(x) + f(y)
        assert f(x.scale(q)) == q * f(x)


def test_functional_rejects_cross_alphabet_input():
    f = Functional([(parse_word("t"), 1)])
    with pytest.raises(AlphabetMismatchError):
        f(RingElement.monomial(parse_word("t_1")))


def test_mod2_element_addition_is_symmetric_difference():
    t, u = parse_word("t"), parse_word("u")
    a = Mod2Element([t])
    b = Mod2Element([t, u])
    assert (a + b).support == frozenset({u})
    assert (a + a).support == frozenset()
    rng = random.Random(71)
    for _ in range(100):
        xs = frozenset(rand_word(rng) for _ in range(3)) - {identity(BASE)}
        ys = frozenset(rand_word(rng) for _ in range(3)) - {identity(BASE)}
        assert (Mod2Element(xs) + Mod2Element(ys)).support == xs ^ ys


def test_mod2_projection():
    t, u = parse_word("t"), parse_word("u")
    x = RingElement(BASE, {t: 3, u: 2, identity(BASE): 5})
    assert mod2_project(x).support == frozenset({t})
    with pytest.raises(CoefficientError):
        mod2_project(RingElement(BASE, {t: Fraction(1, 3)}))
    with pytest.raises(AlphabetMismatchError):
        mod2_project(RingElement.monomial(parse_word("t_1")))


def test_mod2_projection_is_additive():
    rng = random.Random(83)
    for _ in range(150):
        x = RingElement(BASE, {rand_word(rng): rng.randint(-4, 4) for _ in range(4)})
        y = RingElement(BASE, {rand_word(rng): rng.randint(-4, 4) for _ in range(4)})
        assert mod2_project(x + y) == mod2_project(x) + mod2_project(y)


def test_matrix_rank_exact_examples():
    assert matrix_rank_exact([[1, 0], [0, 1]]) == 2
    assert matrix_rank_exact([[1, 2], [2, 4]]) == 1
    assert matrix_rank_exact([]) == 0
    assert matrix_rank_exact([[0, 0, 0]]) == 0
    assert matrix_rank_exact([[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), Fraction(1, 6)]]) == 1


def test_matrix_rank_matches_sympy_random():
    rng = random.Random(101)
    for _ in range(60):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 6)
        entries = [
            [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(cols)]
            for _ in range(rows)
        ]
        expected = sympy.Matrix([[sympy.Rational(q) for q in row] for row in entries]).rank()
        assert matrix_rank_exact(entries) == expected


def test_rank_of_elements():
    t, u = parse_word("t"), parse_word("u")
    x = RingElement(BASE, {t: 1})
    y = RingElement(BASE, {u: 1})
    assert rank([x, x.scale(2), y]) == 2
    assert rank([x - x]) == 0
    assert rank([]) == 0
