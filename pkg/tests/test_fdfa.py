import itertools
import random

import pytest

from fdfalearn.automata import Dfa
from fdfalearn.corpus import random_fdfa
from fdfalearn.errors import InputError
from fdfalearn.fdfa import Fdfa, build_d1, build_d2, up_member
from fdfalearn.words import Alphabet, OmegaWord, shortest_form, smallest_period

from conftest import ends_in_a_fdfa, a_bstar_fdfa

W = OmegaWord.of
SIGMA = Alphabet("ab")


def fdfas(seed, count):
    rng = random.Random(seed)
    return [random_fdfa(rng) for _ in range(count)]


def up_member_brute(F, w):
    """Try every decomposition (w[:i], w[i:i+j·p]) within generous bounds."""
    x, y = shortest_form(w)
    p = len(smallest_period(w))
    n = F.leading.num_states
    m = max(A.num_states for A in F.progress)
    for i in range(len(x), len(x) + p * (n + 1) + 1):
        u = w.unroll(i)
        for j in range(1, 2 * n * m + 3):
            v = w.unroll(i + j * p)[i:]
            if F.accepts(u, v):
                return True
    return False


def test_ends_in_a_acceptance():
    F = ends_in_a_fdfa()
    assert F.accepts("ba", "ba")
    assert not F.accepts("bab", "ab")
    assert up_member(F, W("", "b"))


def test_a_bstar_examples():
    F = a_bstar_fdfa()
    assert up_member(F, W("", "abb"))
    # (ba)^ω = b·(ab)^ω, accepted through the decomposition (b, ab)
    assert up_member(F, W("", "ba"))
    assert not up_member(F, W("", "b"))


def test_a_bstar_matches_closed_form():
    # UP(F) = ⋃_n Σ*·(a b^n)^ω: the period has an a, and every run of b's
    # between consecutive a's has the same length
    F = a_bstar_fdfa()

    for u in SIGMA.words(3):
        for v in SIGMA.words(4, 1):
            w = OmegaWord(u, v)
            period = "".join(v)
            if "a" not in period:
                expected = False
            else:
                # gaps between consecutive a's in the periodic part
                k = period.index("a")
                rot = period[k:] + period[:k]
                gaps = [len(g) for g in rot.split("a")[1:]]
                expected = len(set(gaps)) == 1
            assert up_member(F, w) == expected, w


@pytest.mark.parametrize("F", fdfas(1, 30))
def test_d1_d2_brute_force(F):
    D1, D2 = build_d1(F), build_d2(F)
    M = F.leading
    for u in SIGMA.words(3):
        for v in SIGMA.words(3):
            loops = M.run(u + v) == M.run(u)
            acc = F.progress[M.run(u)].accepts(v)
            word = u + ("$",) + v
            assert D1.accepts(word) == (loops and acc)
            assert D2.accepts(word) == (loops and not acc)


def test_d_automata_reject_words_without_one_separator():
    F = ends_in_a_fdfa()
    for w in ["ab", "$a$b", "a$$b"]:
        assert not build_d1(F).accepts(tuple(w))
        assert not build_d2(F).accepts(tuple(w))


@pytest.mark.parametrize("F", fdfas(2, 40))
def test_up_member_matches_decomposition_enumeration(F):
    for u in SIGMA.words(2):
        for v in SIGMA.words(3, 1):
            w = OmegaWord(u, v)
            assert up_member(F, w) == up_member_brute(F, w), w


def test_up_member_letters_outside_alphabet():
    assert not up_member(ends_in_a_fdfa(), W("", "c"))


def test_fdfa_structure_checks():
    M = Dfa("ab", [{"a": 0, "b": 0}], 0)
    with pytest.raises(InputError):
        Fdfa(M, [])
    with pytest.raises(InputError):
        Fdfa(M, [Dfa("a", [{"a": 0}], 0)])
    with pytest.raises(InputError):
        Fdfa(M, [Dfa("ab", [{"a": 0, "b": 0}], 0)], kind="weird")


def test_fdfa_sizes():
    assert ends_in_a_fdfa().sizes == (1, 2)
    assert a_bstar_fdfa().sizes == (1, 3)


def test_leading_accepting_states_are_dropped():
    M = Dfa("ab", [{"a": 0, "b": 0}], 0, [0])
    F = Fdfa(M, [Dfa("ab", [{"a": 0, "b": 0}], 0, [0])])
    assert not F.leading.accepting


def test_acceptance_needs_leading_loop():
    M = Dfa("ab", [{"a": 1, "b": 0}, {"a": 1, "b": 1}], 0)
    A = Dfa("ab", [{"a": 0, "b": 0}], 0, [0])
    F = Fdfa(M, [A, A])
    assert F.accepts("", "b")
    assert not F.accepts("", "a")  # M(a) ≠ M(ε)
    assert F.accepts("a", "a")


def test_brute_force_agrees_on_ends_in_a_lassos():
    F = ends_in_a_fdfa()
    for u, v in itertools.product(["", "a", "b", "ab"], ["a", "b", "ab", "ba", "abb"]):
        w = W(u, v)
        assert up_member(F, w) == up_member_brute(F, w)
