import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparseauto.automata import (
    LSD,
    MSD,
    AutomatonError,
    Dfa,
    DigitWord,
    accepts,
    determinize,
    empty_dfa,
    evaluate,
    expand,
    isomorphic,
    member,
    minimize,
    normalize,
    product,
    project,
    reverse_direction,
    index_symbol,
    symbol_index,
    trim,
    universal_dfa,
    useful_states,
    words_up_to,
)
from sparseauto.decompose import SparseTerm
from sparseauto.library import from_terms, term, three_pow2_plus1

def w(rows, base=2):
    return DigitWord.from_strings(rows, base)


def positional(rows, base):
    # independent oracle: int() parses each row
    return tuple(int(r, base) if r else 0 for r in rows)


# -- evaluate / expand ------------------------------------------------------


def test_evaluate_examples():
    assert evaluate(w(("2110", "0020"), 3)) == (66, 6)
    assert evaluate(DigitWord(2, 1)) == (0,)
    assert evaluate(w("1101")) == (13,)


def test_expand_examples():
    assert expand((66, 6), 3).rows() == ("2110", "0020")
    assert len(expand((0, 0), 2)) == 0
    assert expand((5,), 2).rows() == ("101",)


def test_expand_rejects_negative():
    with pytest.raises(ValueError):
        expand((-1,), 2)


@given(
    st.integers(2, 16),
    st.lists(st.integers(0, 10**6), min_size=1, max_size=4),
)
def test_evaluate_expand_roundtrip(base, t):
    word = expand(t, base)
    assert evaluate(word) == tuple(t)
    if word.symbols:
        assert any(word.symbols[0])
    assert positional(word.rows(), base) == tuple(t)


@given(st.integers(2, 5), st.integers(1, 3), st.data())
def test_symbol_index_roundtrip(base, dim, data):
    idx = data.draw(st.integers(0, base**dim - 1))
    sym = index_symbol(idx, base, dim)
    assert len(sym) == dim
    assert symbol_index(sym, base) == idx


def test_digitword_validation():
    with pytest.raises(ValueError):
        DigitWord(2, 1, ((2,),))
    with pytest.raises(ValueError):
        DigitWord(2, 2, ((1,),))
    with pytest.raises(ValueError):
        DigitWord.from_strings(("10", "1"), 2)


# -- Dfa / membership -------------------------------------------------------


def test_dfa_validation():
    with pytest.raises(ValueError):
        Dfa(2, 1, ((0,),))  # not total
    with pytest.raises(ValueError):
        Dfa(2, 1, ((0, 3),))
    with pytest.raises(ValueError):
        Dfa(2, 1, ((0, 0),), initial=1)
    with pytest.raises(ValueError):
        Dfa(2, 1, ((0, 0),), accepting=frozenset({2}))


def test_three_pow2_plus1_accepts_words():
    a = three_pow2_plus1()
    assert accepts(a, w("111"))
    assert not accepts(a, w("11"))
    assert accepts(a, DigitWord(2, 1)) == (a.initial in a.accepting)


def test_three_pow2_plus1_member():
    a = three_pow2_plus1()
    assert member(a, (13,))
    assert not member(a, (14,))
    assert [n for n in range(200) if member(a, (n,))] == [7, 13, 25, 49, 97, 193]


def test_member_universal_and_dim_check():
    u = universal_dfa(3, 2)
    assert all(member(u, t) for t in [(0, 0), (5, 7), (100, 1)])
    with pytest.raises(AutomatonError):
        member(u, (1,))


def test_accepts_rejects_foreign_word():
    with pytest.raises(AutomatonError):
        accepts(three_pow2_plus1(), w("12", 3))


# -- trim / minimize / direction --------------------------------------------


def test_trim_three_pow2_plus1():
    a = three_pow2_plus1()
    assert useful_states(a) == frozenset({0, 1, 2, 3})
    t = trim(a)
    assert t.n_states == 5
    assert len(useful_states(t)) == 4


def test_trim_fixed_point_and_empty():
    t = trim(three_pow2_plus1())
    assert isomorphic(trim(t), t)
    e = trim(Dfa(2, 1, ((1, 1), (0, 0)), 0, frozenset()))
    assert e.n_states == 1
    assert not e.accepting


def test_minimize_examples():
    a = three_pow2_plus1()
    assert minimize(a).n_states == 5
    # two equivalent accepting sinks
    b = Dfa(2, 1, ((1, 2), (1, 1), (2, 2)), 0, frozenset({1, 2}))
    assert minimize(b).n_states == 2
    assert isomorphic(minimize(minimize(b)), minimize(b))


def test_minimize_all_accepting():
    a = Dfa(2, 1, ((1, 0), (0, 1)), 0, frozenset({0, 1}))
    assert minimize(a).n_states == 1


def test_reverse_direction_three_pow2_plus1():
    a = three_pow2_plus1()
    m = reverse_direction(a)
    assert m.direction == MSD
    assert [n for n in range(200) if member(m, (n,))] == [7, 13, 25, 49, 97, 193]
    assert member(a, (49,)) and member(m, (49,))
    assert reverse_direction(m) is m


def random_dfa(rng, base, dim, n):
    width = base**dim
    delta = tuple(tuple(rng.randrange(n) for _ in range(width)) for _ in range(n))
    acc = frozenset(q for q in range(n) if rng.random() < 0.4)
    return Dfa(base, dim, delta, 0, acc, rng.choice([MSD, LSD]))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_structural_ops_preserve_membership(seed):
    rng = random.Random(seed)
    base, dim = rng.choice([(2, 1), (3, 1), (2, 2)])
    a = random_dfa(rng, base, dim, rng.randint(1, 6))
    variants = [minimize(a), trim(a), reverse_direction(a), normalize(a)]
    for _ in range(60):
        t = tuple(rng.randint(0, 10**4) for _ in range(dim))
        expected = member(a, t)
        assert all(member(v, t) == expected for v in variants)


def test_product_and_or():
    a = reverse_direction(three_pow2_plus1())
    odd = Dfa(2, 1, ((0, 1), (0, 1)), 0, frozenset({1}))
    small = from_terms(term(2, ["1", ""], ["1"]))  # 2^m - 1 values
    both = product(a, small)
    either = product(a, small, "or")
    for n in range(300):
        assert member(both, (n,)) == (member(a, (n,)) and member(small, (n,)))
        assert member(either, (n,)) == (member(a, (n,)) or member(small, (n,)))
    assert member(product(a, odd), (7,))


def test_determinize_is_total_and_bounded():
    # NFA for words whose 3rd letter from the end is 1
    moves = [{0: {0}, 1: {0, 1}}, {0: {2}, 1: {2}}, {0: {3}, 1: {3}}, {}]
    d = determinize(2, 1, moves, {0}, {3}, MSD)
    assert all(len(row) == 2 for row in d.delta)
    m = minimize(d)
    assert m.n_states <= 2**4
    assert m.n_states == 8


def test_words_up_to_counts():
    u = universal_dfa(2)
    assert len(list(words_up_to(u, 4))) == 31
    assert list(words_up_to(empty_dfa(2), 5)) == []


# -- projection -------------------------------------------------------------


def diagonal(s_members, base=2):
    """dim-2 automaton for {(n, n)} over a finite set, via union of words."""
    terms = []
    for n in s_members:
        word = expand((n, n), base)
        terms.append(SparseTerm(base, 2, (word,)))
    return from_terms(*terms)


def test_project_diagonal():
    s = {0, 3, 5, 12, 40}
    p = project(diagonal(s), [1])
    assert {n for n in range(100) if member(p, (n,))} == s


def test_project_single_tuple():
    word = expand((66, 6), 3)
    a = from_terms(SparseTerm(3, 2, (word,)))
    p = project(a, [2])
    assert [n for n in range(101) if member(p, (n,))] == [6]
    q = project(a, [2, 1])
    assert member(q, (6, 66)) and not member(q, (66, 6))


def test_project_full_set():
    p = project(universal_dfa(2, 3), [1, 3])
    assert all(member(p, t) for t in itertools.product(range(20), repeat=2))


def test_project_bad_coords():
    with pytest.raises(AutomatonError):
        project(universal_dfa(2, 2), [3])
    with pytest.raises(AutomatonError):
        project(universal_dfa(2, 2), [])


def test_project_leading_zero_closure():
    # {(1, 8)}: expansion is (0,1)(0,0)(0,0)(1,0); first coordinate is 0001
    a = from_terms(SparseTerm(2, 2, (expand((1, 8), 2),)))
    p = project(a, [1])
    assert [n for n in range(50) if member(p, (n,))] == [1]
