import random

import pytest

from fdfalearn.automata import Dfa, ba_lasso_member
from fdfalearn.corpus import random_fdfa
from fdfalearn.errors import InputError, PreconditionError
from fdfalearn.fdfa import Fdfa, up_member
from fdfalearn.translate import (ApproximationKind, ba_size_accounting, build_period_product, fdfa_to_ba,
                                 fdfa_to_ba_with_epsilon)
from fdfalearn.words import Alphabet, OmegaWord

from conftest import a_bstar_fdfa, ends_in_a_fdfa

W = OmegaWord.of
SIGMA = Alphabet("ab")
LASSOS = [OmegaWord(u, v) for u in SIGMA.words(3) for v in SIGMA.words(3, 1)]


def fdfas(seed, count):
    rng = random.Random(seed)
    return [random_fdfa(rng) for _ in range(count)]


def test_over_product_of_ends_in_a():
    P = build_period_product(ends_in_a_fdfa(), 0, 1, "over")
    assert P.accepts("b")
    assert P.accepts("ba")
    assert not P.accepts("")


def test_under_product_of_ends_in_a():
    P = build_period_product(ends_in_a_fdfa(), 0, 1, "under")
    assert P.accepts("ba")
    assert not P.accepts("b")
    assert not P.accepts("bb")


def test_product_brute_force():
    for F in fdfas(3, 30):
        M = F.leading
        for u, A in enumerate(F.progress):
            for v in A.accepting:
                over = build_period_product(F, u, v, "over")
                under = build_period_product(F, u, v, "under")
                for n in range(1, 5):
                    for x in SIGMA.words(n, n):
                        loops = M.run(x, u) == u
                        to_v = A.run(x) == v
                        v_to_v = A.run(x, v) == v
                        assert over.accepts(x) == (loops and to_v)
                        assert under.accepts(x) == (loops and to_v and v_to_v)


def test_product_never_accepts_empty_word():
    for F in fdfas(4, 30):
        for u, A in enumerate(F.progress):
            for v in A.accepting:
                for kind in ("under", "over"):
                    assert not build_period_product(F, u, v, kind).accepts("")


def test_product_precondition():
    with pytest.raises(PreconditionError):
        build_period_product(ends_in_a_fdfa(), 0, 0, "over")
    with pytest.raises(InputError):
        build_period_product(ends_in_a_fdfa(), 0, 1, "sideways")


def test_ends_in_a_under_and_over():
    F = ends_in_a_fdfa()
    under = fdfa_to_ba(F, "under")
    over = fdfa_to_ba(F, ApproximationKind.OVER)
    assert not ba_lasso_member(under, W("", "b"))
    assert ba_lasso_member(under, W("", "ba"))
    assert ba_lasso_member(under, W("", "a"))
    assert ba_lasso_member(over, W("", "b"))


def test_no_accepting_progress_states_gives_empty_language():
    M = Dfa("ab", [{"a": 0, "b": 0}], 0)
    F = Fdfa(M, [Dfa("ab", [{"a": 0, "b": 0}], 0)])
    for kind in ("under", "over"):
        B = fdfa_to_ba(F, kind)
        assert not B.accepting
    assert ba_size_accounting(F, "under").raw_total == 1


def test_size_accounting_ends_in_a():
    F = ends_in_a_fdfa()
    assert ba_size_accounting(F, "over").raw_total <= 5
    assert ba_size_accounting(F, "under").raw_total <= 11


def test_size_bounds_and_epsilon_form():
    for F in fdfas(5, 30):
        n = F.leading.num_states
        for kind, power in (("over", 2), ("under", 3)):
            acc = ba_size_accounting(F, kind)
            # one extra state per pair when ε has to be unrolled out of a product
            bound = n + sum(n * F.progress[u].num_states ** power + 2 for u, _, _, _ in acc.pairs)
            assert acc.minimized_total <= acc.raw_total <= bound
            E = fdfa_to_ba_with_epsilon(F, kind)
            assert E.num_states <= acc.minimized_total
            assert fdfa_to_ba(F, kind).epsilon_free


@pytest.mark.parametrize("F", fdfas(6, 40) + [ends_in_a_fdfa(), a_bstar_fdfa()])
def test_sandwich(F):
    under = fdfa_to_ba(F, "under")
    over = fdfa_to_ba(F, "over")
    for w in LASSOS:
        lo, mid, hi = ba_lasso_member(under, w), up_member(F, w), ba_lasso_member(over, w)
        assert not lo or mid, w
        assert not mid or hi, w


def test_repeated_acceptance_implies_under_membership():
    # accepted (u, v^k) for every k up to |A|·|M|+1 puts uv^ω into the under BA
    for F in fdfas(7, 40):
        under = fdfa_to_ba(F, "under")
        M = F.leading
        for w in LASSOS:
            u, v = w.prefix, w.period
            bound = F.progress[M.run(u)].num_states * M.num_states + 1
            if all(F.accepts(u, v * k) for k in range(1, bound + 1)):
                assert ba_lasso_member(under, w), w


def test_epsilon_form_has_same_language():
    from fdfalearn.automata import epsilon_removal
    for F in fdfas(8, 20):
        for kind in ("under", "over"):
            E = fdfa_to_ba_with_epsilon(F, kind)
            B = fdfa_to_ba(F, kind)
            R = epsilon_removal(E)
            for w in LASSOS:
                assert ba_lasso_member(B, w) == ba_lasso_member(R, w)
