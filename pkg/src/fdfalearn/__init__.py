"""Learning Büchi automata through families of DFAs."""
from .automata import (BuchiAutomaton, Dfa, Nfa, ba_complement, ba_emptiness, ba_equivalence,
                       ba_lasso_member, epsilon_removal)
from .fdfa import Fdfa, up_member
from .learn import LEARNERS, TableLearner, TreeLearner
from .oracle import BaTeacher, CeForLearner, FdfaTeacher
from .translate import ApproximationKind, fdfa_to_ba
from .words import OmegaWord, omega_equal, word

__version__ = "0.1.0"


def learn(target, learner="tree", kind="periodic", approximation="under", ce_reuse=True, timeout=None):
    """Learn a BA for the language of ``target``; returns (BA, stats)."""
    teacher = FdfaTeacher(BaTeacher(target), approximation)
    L = LEARNERS[learner](teacher, kind, ce_reuse=ce_reuse, timeout=timeout)
    B = L.learn()
    return B, L.stats
