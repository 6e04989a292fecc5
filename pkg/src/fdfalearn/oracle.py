"""Teachers: the Büchi-automaton teacher that knows the target language and
the FDFA teacher that turns its answers into counterexamples for an FDFA
learner."""
from __future__ import annotations

import time
from dataclasses import dataclass

from .automata import (
    EPSILON,
    BuchiAutomaton,
    Nfa,
    ba_equivalence,
    ba_lasso_member,
    ba_trim,
    epsilon_removal,
    nfa_shortest_accepted,
    product_intersection,
)
from .dusv import build_dusv
from .errors import InvariantViolation, TeacherAbort
from .fdfa import Fdfa, build_d1, build_d2, up_member
from .translate import ApproximationKind, build_period_product, fdfa_to_ba
from .words import SEPARATOR, OmegaWord, canonical_form

__all__ = [
    "BaTeacher", "FdfaTeacher", "CeForLearner", "EquivalenceAnswer",
    "build_dusv", "decompose_over", "analyze_witness", "mem_fdfa", "equ_fdfa",
]


class BaTeacher:
    """Answers membership and equivalence queries about a target BA.

    Membership answers are cached on the canonical form of the ω-word;
    ``mq_raw`` counts every call, ``mq`` counts distinct words.
    """

    def __init__(self, target: BuchiAutomaton):
        self.target = ba_trim(epsilon_removal(target))
        self.alphabet = self.target.alphabet
        self._cache = {}
        self.mq_raw = 0
        self.eq = 0
        self.time_eq = 0.0

    @property
    def mq(self) -> int:
        return len(self._cache)

    def member(self, w: OmegaWord) -> bool:
        self.mq_raw += 1
        key = canonical_form(w)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._cache[key] = ba_lasso_member(self.target, w)
        return hit

    def membership(self, u, v) -> bool:
        return self.member(OmegaWord(u, v))

    def equivalence(self, B: BuchiAutomaton, deadline=None) -> OmegaWord | None:
        """``deadline`` is a ``time.perf_counter()`` value after which the
        check gives up with LearningTimeout."""
        self.eq += 1
        start = time.perf_counter()
        try:
            return ba_equivalence(B, self.target, deadline=deadline)
        finally:
            self.time_eq += time.perf_counter() - start


@dataclass(frozen=True)
class CeForLearner:
    polarity: str  # "positive" or "negative"
    u: tuple
    v: tuple

    @property
    def positive(self) -> bool:
        return self.polarity == "positive"

    def __str__(self):
        return f"{self.polarity} ({OmegaWord(self.u, self.v) if self.v else self.u})"


@dataclass
class EquivalenceAnswer:
    hypothesis: BuchiAutomaton
    counterexample: CeForLearner | None = None
    case: str | None = None  # U1..U3 / O1..O3 when a counterexample is returned
    witness: OmegaWord | None = None

    @property
    def done(self) -> bool:
        return self.counterexample is None


def _prefix_at_least(alphabet, m: int) -> Nfa:
    """Words p$s with |p| ≥ m (and anything after the separator)."""
    trans = [{a: (k + 1,) for a in alphabet} for k in range(m)]
    trans.append({a: (m,) for a in alphabet} | {SEPARATOR: (m + 1,)})
    trans.append({a: (m + 1,) for a in alphabet})
    return Nfa(tuple(alphabet) + (SEPARATOR,), trans, [0], [m + 1])


def _split(word) -> tuple:
    i = word.index(SEPARATOR)
    return tuple(word[:i]), tuple(word[i + 1:])


def choose_decomposition(w: OmegaWord, D: Nfa, alphabet) -> tuple | None:
    """Shortest u'$v' in L(D_{u$v}) ∩ L(D) whose prefix is nonempty and at
    least as long as the witness prefix; ties broken by alphabet order,
    ``$`` last.

    A nonempty prefix always exists: if (ε, v') is in L(D) then so is
    (v', v'), since v' loops on the initial leading state.
    """
    dusv = build_dusv(w, alphabet)
    floor = max(1, len(w.prefix))
    both = product_intersection(product_intersection(dusv, _prefix_at_least(alphabet, floor)), D)
    found = nfa_shortest_accepted(both)
    return None if found is None else _split(found)


def _segment(P, word) -> list | None:
    """Split ``word`` into nonempty pieces each accepted by DFA P."""
    n = len(word)
    back = {0: None}
    for j in range(n):
        if j not in back:
            continue
        q = P.initial
        for i in range(j, n):
            q = P.delta[q][word[i]]
            if q in P.accepting and i + 1 not in back:
                back[i + 1] = j
    if n not in back:
        return None
    out = []
    i = n
    while i:
        j = back[i]
        out.append(tuple(word[j:i]))
        i = j
    return out[::-1]


def decompose_over(w: OmegaWord, F: Fdfa) -> tuple:
    """Find u' and v_1..v_n with u'(v_1···v_n)^ω = w and every (u', v_i)
    accepted by F, through the period products of the over-approximation."""
    M = F.leading
    sigma = F.alphabet
    dusv = build_dusv(w, sigma)
    for u in range(M.num_states):
        for p in sorted(F.progress[u].accepting):
            P = build_period_product(F, u, p, ApproximationKind.OVER)
            n = M.num_states
            trans = [{a: (M.delta[q][a],) for a in sigma} for q in range(n)]
            trans[u][SEPARATOR] = (n + P.initial,)
            for q, row in enumerate(P.delta):
                trans.append({a: (n + t,) for a, t in row.items()})
            for q in P.accepting:
                trans[n + q][EPSILON] = (n + P.initial,)
            loops = Nfa(sigma + (SEPARATOR,), trans, [M.initial], [n + q for q in P.accepting])
            found = nfa_shortest_accepted(product_intersection(dusv, loops))
            if found is None:
                continue
            u2, v2 = _split(found)
            segments = _segment(P, v2)
            if segments is None:
                raise InvariantViolation(f"cannot segment {v2} over the period product")
            return u2, segments
    raise InvariantViolation(f"{w} is not accepted by the over-approximation")


def analyze_witness(F: Fdfa, w: OmegaWord, in_target: bool, approximation, member=None):
    """Turn a BA-level witness into a counterexample for the FDFA learner.

    Returns (case, CeForLearner). ``member`` answers target membership and
    is needed only for the spurious-negative case of the over-approximation.
    """
    approximation = ApproximationKind(approximation)
    in_f = up_member(F, w)
    sigma = F.alphabet
    if approximation is ApproximationKind.UNDER:
        if not in_target:
            case, polarity, D = "U2", "negative", build_d1(F)
        else:
            case, polarity, D = ("U3" if in_f else "U1"), "positive", build_d2(F)
    else:
        if in_target:
            case, polarity, D = "O1", "positive", build_d2(F)
        elif in_f:
            case, polarity, D = "O2", "negative", build_d1(F)
        else:
            u2, segments = decompose_over(w, F)
            for seg in segments:
                if not member(OmegaWord(u2, seg)):
                    return "O3", CeForLearner("negative", u2, seg)
            raise TeacherAbort(w)
    found = choose_decomposition(w, D, sigma)
    if found is None:
        raise InvariantViolation(f"case {case}: no decomposition of {w} in the expected language")
    return case, CeForLearner(polarity, *found)


class FdfaTeacher:
    """Answers FDFA queries by forwarding to a BA teacher."""

    def __init__(self, ba_teacher: BaTeacher, approximation=ApproximationKind.UNDER):
        self.ba_teacher = ba_teacher
        self.approximation = ApproximationKind(approximation)
        self.alphabet = ba_teacher.alphabet

    def membership(self, u, v) -> bool:
        if not v:
            return False
        return self.ba_teacher.membership(u, v)

    def equivalence(self, F: Fdfa, deadline=None) -> EquivalenceAnswer:
        B = fdfa_to_ba(F, self.approximation)
        w = self.ba_teacher.equivalence(B, deadline)
        if w is None:
            return EquivalenceAnswer(B)
        m = self.ba_teacher.member(w)
        case, ce = analyze_witness(F, w, m, self.approximation, self.ba_teacher.member)
        self._check(F, ce, case)
        return EquivalenceAnswer(B, ce, case, w)

    def _check(self, F: Fdfa, ce: CeForLearner, case: str):
        M = F.leading
        if M.run(ce.u + ce.v) != M.run(ce.u):
            raise InvariantViolation(f"{case}: counterexample {ce} does not loop in the leading automaton")
        in_l = self.ba_teacher.member(OmegaWord(ce.u, ce.v))
        accepted = F.accepts(ce.u, ce.v)
        expected = (True, False) if ce.positive else (False, True)
        if (in_l, accepted) != expected:
            raise InvariantViolation(f"{case}: counterexample {ce} has the wrong polarity")


def mem_fdfa(T: FdfaTeacher, u, v) -> bool:
    return T.membership(u, v)


def equ_fdfa(T: FdfaTeacher, F: Fdfa) -> EquivalenceAnswer:
    return T.equivalence(F)
