"""Observation-table FDFA learner (baseline for the tree learner)."""
from __future__ import annotations

from ..automata import Dfa
from ..errors import InvariantViolation
from ..fdfa import Fdfa
from .common import LearnerBase


class ObservationTable:
    """Rows S with pairwise distinct entry vectors, columns E.

    Only closedness is maintained: because S never holds two equal rows,
    consistency cannot fail.
    """

    def __init__(self, te, alphabet, columns=()):
        self.te = te
        self.alphabet = tuple(alphabet)
        self.S = [()]
        self.E = []
        self._entries = {}
        for e in columns:
            self.add_column(e)

    def entry(self, s, e):
        key = (s, e)
        hit = self._entries.get(key)
        if hit is None and key not in self._entries:
            hit = self._entries[key] = self.te(s, e)
        return hit

    def row(self, s) -> tuple:
        return tuple(self.entry(s, e) for e in self.E)

    def add_column(self, e) -> bool:
        if e in self.E:
            return False
        self.E.append(e)
        return True

    def unmatched(self):
        rows = {self.row(s) for s in self.S}
        for s in self.S:
            for a in self.alphabet:
                if self.row(s + (a,)) not in rows:
                    return s + (a,)
        return None

    def close(self):
        while True:
            t = self.unmatched()
            if t is None:
                return
            self.S.append(t)

    def is_closed(self) -> bool:
        return self.unmatched() is None

    @property
    def cell_count(self) -> int:
        return (len(self.S) + len(self.S) * len(self.alphabet)) * len(self.E)

    def build_dfa(self, accepting_fn) -> Dfa:
        if not self.is_closed():
            raise InvariantViolation("conjecture requested from an unclosed table")
        index = {}
        for i, s in enumerate(self.S):
            r = self.row(s)
            if r in index:
                raise InvariantViolation("duplicate rows in S")
            index[r] = i
        delta = [{a: index[self.row(s + (a,))] for a in self.alphabet} for s in self.S]
        acc = [i for i, s in enumerate(self.S) if accepting_fn(s)]
        return Dfa(self.alphabet, delta, 0, acc, list(self.S))


class TableLearner(LearnerBase):
    name = "table"

    def __init__(self, teacher, kind="periodic", ce_reuse=True, timeout=None):
        super().__init__(teacher, kind, ce_reuse, timeout)
        # one periodic experiment per letter so the first leading
        # conjecture already separates prefixes by σ^ω
        self.leading = ObservationTable(self.te_leading, self.alphabet,
                                        [((), (a,)) for a in self.alphabet])
        self.progress = {}
        self._leading_dfa = None

    def _progress_table(self, u) -> ObservationTable:
        T = self.progress.get(u)
        if T is None:
            T = self.progress[u] = ObservationTable(
                lambda x, e, u=u: self.te_progress(self._leading_dfa, u, x, e), self.alphabet, [()])
        return T

    def conjecture(self) -> Fdfa:
        if self.fdfa is not None:
            return self.fdfa
        self.leading.close()
        M = self.leading.build_dfa(lambda s: False)
        self._leading_dfa = M
        progress = []
        for u in M.names:
            T = self._progress_table(u)
            T.close()
            progress.append(T.build_dfa(lambda x, u=u: bool(x) and self.is_accepting(M, u, x)))
        self.fdfa = Fdfa(M, progress, self.kind)
        return self.fdfa

    def refine_leading(self, old_label, new_label, experiment):
        if not self.leading.add_column(experiment):
            raise InvariantViolation(f"experiment {experiment} already a column")

    def refine_progress(self, u, old_label, new_label, experiment):
        if not self.progress[u].add_column(experiment):
            raise InvariantViolation(f"experiment {experiment} already a column")

    def reset_progress(self):
        self.progress = {}

    def space(self) -> tuple:
        return self.leading.cell_count, sum(T.cell_count for T in self.progress.values())
