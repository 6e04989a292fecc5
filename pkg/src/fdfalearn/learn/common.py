"""Pieces shared by the tree and table FDFA learners: experiment functions,
breakpoint analysis, accepting sets, and the learning loop."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..automata import Dfa
from ..errors import InvalidCounterexample, InvariantViolation, LearningTimeout
from ..fdfa import KINDS, Fdfa
from ..words import sub

# edge labels of syntactic progress trees
SYN_A, SYN_B, SYN_C = "A", "B", "C"


@dataclass
class LearnerStats:
    states: int = 0
    transitions: int = 0
    mq: int = 0
    mq_raw: int = 0
    eq: int = 0
    refinements: int = 0
    reused: int = 0  # refinements that reused a counterexample without a new EQ
    leading_refinements: int = 0
    progress_refinements: int = 0
    time_eq: float = 0.0
    time_total: float = 0.0
    trace: list = field(default_factory=list)  # BA size at each equivalence query
    measures: list = field(default_factory=list)  # (|M|, Σ|A^u|) per conjecture
    steps: list = field(default_factory=list)  # (measure before, measure after) per refinement
    cases: dict = field(default_factory=dict)  # counterexample case -> count
    leading_space: int = 0
    progress_space: int = 0
    fdfa_leading: int = 0
    fdfa_progress: int = 0

    def as_dict(self) -> dict:
        return dict(self.__dict__)


class LearnerBase:
    """Holds the teacher, the membership cache and the main loop.

    Subclasses implement ``conjecture()``, ``refine_leading(...)``,
    ``refine_progress(...)``, ``reset_progress()`` and ``space()``.
    """

    name = "base"

    def __init__(self, teacher, kind="periodic", ce_reuse=True, timeout=None):
        if kind not in KINDS:
            raise ValueError(f"unknown acceptance kind {kind!r}")
        self.teacher = teacher
        self.alphabet = tuple(teacher.alphabet)
        self.kind = kind
        self.ce_reuse = ce_reuse
        self.timeout = timeout
        self._mem = {}
        self.stats = LearnerStats()
        self.fdfa = None

    # -- experiment functions -------------------------------------------
    def mem(self, u, v) -> bool:
        key = (u, v)
        hit = self._mem.get(key)
        if hit is None:
            hit = self._mem[key] = self.teacher.membership(u, v)
        return hit

    def te_leading(self, s, exp) -> bool:
        x, y = exp
        return self.mem(s + x, y)

    def te_progress(self, M: Dfa, u, x, e):
        """TE(x, e) of the progress component at leading-state word u."""
        xe = x + e
        if self.kind == "periodic":
            return self.mem(u, xe)
        home = M.run(u)
        back = M.run(xe, home) == home
        if self.kind == "recurrent":
            return back and self.mem(u, xe)
        t = SYN_C if not back else (SYN_A if self.mem(u, xe) else SYN_B)
        return M.names[M.run(x, home)], t

    def is_accepting(self, M: Dfa, u, x) -> bool:
        """Accepting-set formulas; x = ε never accepts."""
        if self.kind == "periodic":
            return self.mem(u, x)
        home = M.run(u)
        return M.run(x, home) == home and self.mem(u, x)

    # -- counterexample handling ----------------------------------------
    def check_counterexample(self, F: Fdfa, ce):
        M = F.leading
        if M.run(ce.u + ce.v) != M.run(ce.u):
            raise InvalidCounterexample(f"{ce}: u·v does not return to M(u)")
        accepted = F.accepts(ce.u, ce.v)
        in_l = self.mem(ce.u, ce.v)
        if ce.positive != in_l or accepted == ce.positive:
            raise InvalidCounterexample(f"{ce} is not a counterexample for the conjecture")

    def still_counterexample(self, F: Fdfa, ce) -> bool:
        M = F.leading
        if M.run(ce.u + ce.v) != M.run(ce.u):
            return False
        return F.accepts(ce.u, ce.v) != ce.positive

    def refine(self, ce, F: Fdfa | None = None) -> str:
        """Refine the leading or one progress structure; returns which."""
        F = F or self.fdfa or self.conjecture()
        self.check_counterexample(F, ce)
        M = F.leading
        home = M.run(ce.u)
        u_tilde = M.names[home]
        if self.mem(u_tilde, ce.v) != self.mem(ce.u, ce.v):
            j, prev, cur, exp = leading_breakpoint(M, ce.u, ce.v, self.te_leading)
            self.refine_leading(cur, prev + (ce.u[j - 1],), exp)
            if self.kind != "periodic":
                self.reset_progress()
            self.stats.leading_refinements += 1
            which = "leading"
        else:
            A = F.progress[home]

            def te(x, e):
                value = self.te_progress(M, u_tilde, x, e)
                # the leading-state part of a syntactic TE changes along any
                # run, so the scan compares only the A/B/C part
                return value[1] if self.kind == "syntactic" else value

            j, prev, cur, exp = progress_breakpoint(A, ce.v, te)
            self.refine_progress(u_tilde, cur, prev + (ce.v[j - 1],), exp)
            self.stats.progress_refinements += 1
            which = "progress"
        self.fdfa = None
        self.stats.refinements += 1
        return which

    # -- main loop --------------------------------------------------------
    def _check_time(self, start):
        if self.timeout is not None and time.perf_counter() - start > self.timeout:
            self._finish(start)
            raise LearningTimeout(f"no answer within {self.timeout}s")

    def _measure(self, F: Fdfa) -> tuple:
        return F.sizes

    def learn(self):
        """Run until the teacher accepts; returns the learned BA."""
        start = time.perf_counter()
        stats = self.stats
        try:
            F = self.conjecture()
            stats.measures.append(self._measure(F))
            while True:
                self._check_time(start)
                deadline = None if self.timeout is None else start + self.timeout
                answer = self.teacher.equivalence(F, deadline)
                stats.eq += 1
                stats.trace.append(answer.hypothesis.num_states)
                if answer.done:
                    self.result = answer.hypothesis
                    return answer.hypothesis
                stats.cases[answer.case] = stats.cases.get(answer.case, 0) + 1
                ce = answer.counterexample
                first = True
                while True:
                    before = self._measure(F)
                    self.refine(ce, F)
                    if not first:
                        stats.reused += 1
                    first = False
                    F = self.conjecture()
                    after = self._measure(F)
                    stats.measures.append(after)
                    stats.steps.append((before, after))
                    if not (self.ce_reuse and self.still_counterexample(F, ce)):
                        break
                    self._check_time(start)
        finally:
            self._finish(start)

    def _finish(self, start):
        s = self.stats
        s.time_total = time.perf_counter() - start
        ba_teacher = self.teacher.ba_teacher
        s.mq = ba_teacher.mq
        s.mq_raw = ba_teacher.mq_raw
        s.time_eq = ba_teacher.time_eq
        result = getattr(self, "result", None)
        if result is not None:
            s.states = result.num_states
            s.transitions = result.num_transitions
        if self.fdfa is not None:
            s.fdfa_leading, s.fdfa_progress = self.fdfa.sizes
        s.leading_space, s.progress_space = self.space()


def leading_breakpoint(M: Dfa, u, v, te):
    """Smallest j with TE(s_{j-1}, (u[j..n], v)) ≠ TE(s_j, (u[j+1..n], v))
    along the run s_0..s_n of M over u. Returns (j, s_{j-1}, s_j, experiment)
    with states given by their words."""
    n = len(u)
    run = [M.initial]
    for a in u:
        run.append(M.delta[run[-1]][a])
    labels = [M.names[q] for q in run]
    prev = te(labels[0], (sub(u, 1, n), v))
    for j in range(1, n + 1):
        cur = te(labels[j], (sub(u, j + 1, n), v))
        if cur != prev:
            return j, labels[j - 1], labels[j], (sub(u, j + 1, n), v)
        prev = cur
    raise InvariantViolation(f"no leading breakpoint for ({u}, {v})")


def progress_breakpoint(A: Dfa, v, te):
    """Same scan over the run of a progress DFA on v with TE(h, v[j..n])."""
    n = len(v)
    run = [A.initial]
    for a in v:
        run.append(A.delta[run[-1]][a])
    labels = [A.names[q] for q in run]
    prev = te(labels[0], sub(v, 1, n))
    for j in range(1, n + 1):
        cur = te(labels[j], sub(v, j + 1, n))
        if cur != prev:
            return j, labels[j - 1], labels[j], sub(v, j + 1, n)
        prev = cur
    raise InvariantViolation(f"no progress breakpoint for {v}")
