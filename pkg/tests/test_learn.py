import random

import pytest

from fdfalearn.automata import ba_equivalence
from fdfalearn.corpus import random_corpus
from fdfalearn.errors import InvalidCounterexample, InvariantViolation, TeacherAbort
from fdfalearn.learn import (LEARNERS, ClassificationTree, ObservationTable, TableLearner, TreeLearner,
                             leading_breakpoint, progress_breakpoint)
from fdfalearn.oracle import BaTeacher, CeForLearner, FdfaTeacher

from conftest import TARGETS, ends_in_a_fdfa, refined_leading, target

KINDS = ("periodic", "syntactic", "recurrent")


def learner(cls, name, kind="periodic", approx="under", **kw):
    return cls(FdfaTeacher(BaTeacher(target(name)), approx), kind, **kw)


def same_dfa(A, B):
    return A.delta == B.delta and A.initial == B.initial and list(A.names) == list(B.names)


def test_initial_tree_conjecture_is_trivial():
    L = learner(TreeLearner, "a^w+b^w")
    F = L.conjecture()
    assert F.sizes == (1, 1)
    assert F.leading.delta == [{"a": 0, "b": 0}]


def test_refinement_from_ends_in_a_gives_two_state_leading():
    L = learner(TreeLearner, "a^w+b^w")
    which = L.refine(CeForLearner("negative", ("a", "b"), ("b",)), ends_in_a_fdfa())
    assert which == "leading"
    assert same_dfa(L.conjecture().leading, refined_leading())
    assert L.leading.root.experiment == (("b",), ("b",))


def test_refinement_rejects_non_counterexample():
    L = learner(TreeLearner, "a^w+b^w")
    with pytest.raises(InvalidCounterexample):
        L.refine(CeForLearner("positive", ("a", "b"), ("b",)), ends_in_a_fdfa())


def test_leading_breakpoint_on_refined_leading():
    M = refined_leading()
    L = learner(TreeLearner, "a^w+b^w")
    # TE(ε, (ab, b)) is false and TE(a, (b, b)) is false, TE(ε, (b, b)) true
    j, prev, cur, exp = leading_breakpoint(ends_in_a_fdfa().leading, ("a", "b"), ("b",), L.te_leading)
    assert (j, prev, cur, exp) == (1, (), (), (("b",), ("b",)))
    with pytest.raises(InvariantViolation):
        leading_breakpoint(M, ("a",), ("b",), lambda s, e: True)


def test_progress_breakpoint_finds_first_change():
    A = ends_in_a_fdfa().progress[0]
    # run over "ba" is ε, a, a; the value flips only once the suffix is empty
    values = {(): False, ("a",): True}
    j, prev, cur, e = progress_breakpoint(A, ("b", "a"), lambda h, rest: values[h] if not rest else False)
    assert (j, prev, cur, e) == (2, ("a",), ("a",), ())


def test_tree_split_needs_separating_experiment():
    T = ClassificationTree(lambda s, e: len(s) % 2 == 0)
    with pytest.raises(InvariantViolation):
        T.split((), ("a", "a"), "x")
    T.split((), ("a",), "x")
    assert T.node_count == 3
    assert T.sift(("b",)).label == ("a",)
    T.check_invariant()


def test_syntactic_tree_grows_on_new_edge():
    T = ClassificationTree(lambda s, e: len(s) % 3)
    T.split((), ("a",), "x")
    node = T.sift(("a", "a"))
    assert node.label == ("a", "a")
    assert len(T.terminals) == 3


def test_table_closes_and_keeps_rows_distinct():
    T = ObservationTable(lambda s, e: (len(s + e) % 3 == 0), "ab", [()])
    T.close()
    assert T.is_closed()
    rows = [T.row(s) for s in T.S]
    assert len(set(rows)) == len(rows)
    A = T.build_dfa(lambda s: False)
    # one column only separates length ≡ 0 (mod 3) from the rest
    assert A.num_states == 2
    assert T.cell_count == (2 + 4) * 1
    assert not T.add_column(())


@pytest.mark.parametrize("name", sorted(TARGETS))
@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("cls", [TreeLearner, TableLearner])
def test_learns_hand_targets_under(cls, kind, name):
    L = learner(cls, name, kind, timeout=30)
    B = L.learn()
    assert ba_equivalence(B, target(name)) is None
    s = L.stats
    assert s.eq == len(s.trace) >= 1
    assert s.refinements == len(s.steps)


@pytest.mark.parametrize("name", sorted(TARGETS))
@pytest.mark.parametrize("cls", [TreeLearner, TableLearner])
def test_over_approximation_succeeds_or_aborts(cls, name):
    L = learner(cls, name, "periodic", "over", timeout=30)
    try:
        B = L.learn()
    except TeacherAbort as e:
        assert e.witness is not None
        return
    assert ba_equivalence(B, target(name)) is None


@pytest.mark.parametrize("kind", KINDS)
def test_measure_increases_and_invariants_hold(kind):
    for i, B in enumerate(random_corpus(8, 21, 3)):
        for cls in (TreeLearner, TableLearner):
            L = cls(FdfaTeacher(BaTeacher(B)), kind, ce_reuse=False, timeout=30)
            L.learn()
            s = L.stats
            for before, after in s.steps:
                assert after > before, (i, cls.name)
            assert s.eq == s.refinements + 1
            if cls is TreeLearner:
                L.check_invariants()


def test_ce_reuse_never_needs_more_queries():
    for B in random_corpus(8, 22, 3):
        eqs = []
        for reuse in (False, True):
            L = TreeLearner(FdfaTeacher(BaTeacher(B)), "periodic", ce_reuse=reuse, timeout=30)
            L.learn()
            eqs.append(L.stats.eq)
        assert eqs[1] <= eqs[0]


def test_membership_queries_are_cached():
    L = learner(TreeLearner, "a^w+b^w")
    L.learn()
    teacher = L.teacher.ba_teacher
    assert teacher.mq <= teacher.mq_raw


def test_learners_registry():
    assert set(LEARNERS) == {"tree", "table"}
    with pytest.raises(ValueError):
        learner(TreeLearner, "S^w", "weird")


def test_table_space_not_smaller_than_tree():
    rng = random.Random(5)
    for B in random_corpus(6, rng.randrange(1000), 3):
        spaces = {}
        for cls in (TreeLearner, TableLearner):
            L = cls(FdfaTeacher(BaTeacher(B)), "periodic", timeout=30)
            L.learn()
            spaces[cls.name] = (L.stats.leading_space, L.stats.progress_space)
        assert spaces["table"][0] >= spaces["tree"][0]
