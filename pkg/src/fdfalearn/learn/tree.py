"""Classification-tree FDFA learner."""
from __future__ import annotations

from ..automata import Dfa
from ..errors import InvariantViolation
from ..fdfa import Fdfa
from .common import LearnerBase


class Node:
    __slots__ = ("experiment", "children", "label", "parent", "edge")

    def __init__(self, label=None, experiment=None, parent=None, edge=None):
        self.label = label  # state word, terminals only
        self.experiment = experiment  # internal nodes only
        self.children = {}  # edge label -> Node
        self.parent = parent
        self.edge = edge

    @property
    def terminal(self) -> bool:
        return self.experiment is None


class ClassificationTree:
    """Discrimination tree; terminals carry state words, internal nodes carry
    experiments, edges carry TE values. Children are stored sparsely so
    K-ary (syntactic) trees grow new terminals on unseen edge labels."""

    def __init__(self, te, root_label=()):
        self.te = te
        self.root = Node(label=root_label)
        self.terminals = [self.root]  # creation order = state numbering
        self._sift_cache = {}

    def sift(self, x):
        """Descend with x; an unseen edge label creates a new terminal."""
        hit = self._sift_cache.get(x)
        if hit is not None:
            return hit
        node = self.root
        while not node.terminal:
            d = self.te(x, node.experiment)
            child = node.children.get(d)
            if child is None:
                child = node.children[d] = Node(label=x, parent=node, edge=d)
                self.terminals.append(child)
            node = child
        self._sift_cache[x] = node
        return node

    def find(self, label) -> Node:
        for t in self.terminals:
            if t.label == label:
                return t
        raise InvariantViolation(f"no terminal labelled {label}")

    def split(self, old_label, new_label, experiment):
        """Turn terminal ``old_label`` into an internal node with the given
        experiment and two terminal children."""
        t = self.find(old_label)
        d_old = self.te(old_label, experiment)
        d_new = self.te(new_label, experiment)
        if d_old == d_new:
            raise InvariantViolation(f"experiment {experiment} does not separate {old_label} and {new_label}")
        t.experiment = experiment
        t.label = None
        old = Node(label=old_label, parent=t, edge=d_old)
        new = Node(label=new_label, parent=t, edge=d_new)
        t.children = {d_old: old, d_new: new}
        self.terminals = [old if n is t else n for n in self.terminals] + [new]
        self._sift_cache.clear()

    @property
    def node_count(self) -> int:
        count = 0
        stack = [self.root]
        while stack:
            n = stack.pop()
            count += 1
            stack.extend(n.children.values())
        return count

    def labels(self) -> list:
        return [t.label for t in self.terminals]

    def check_invariant(self):
        """Every terminal sits below the edge its own TE value selects at
        each ancestor."""
        for t in self.terminals:
            node = t
            while node.parent is not None:
                parent = node.parent
                if self.te(t.label, parent.experiment) != node.edge:
                    raise InvariantViolation(f"terminal {t.label} misplaced under {parent.experiment}")
                node = parent
        labels = self.labels()
        if len(set(labels)) != len(labels):
            raise InvariantViolation("duplicate terminal labels")

    def build_dfa(self, alphabet, accepting_fn) -> Dfa:
        """States are terminals; δ(s, a) = sift(s·a). Runs to a fixed point
        because sifting may create terminals in K-ary trees."""
        delta = []
        i = 0
        while i < len(self.terminals):
            s = self.terminals[i].label
            row = {}
            for a in alphabet:
                row[a] = self.sift(s + (a,))
            delta.append(row)
            i += 1
        index = {id(t): k for k, t in enumerate(self.terminals)}
        labels = self.labels()
        table = [{a: index[id(n)] for a, n in row.items()} for row in delta]
        initial = index[id(self.sift(()))]
        acc = [k for k, s in enumerate(labels) if accepting_fn(s)]
        return Dfa(alphabet, table, initial, acc, labels)


class TreeLearner(LearnerBase):
    name = "tree"

    def __init__(self, teacher, kind="periodic", ce_reuse=True, timeout=None):
        super().__init__(teacher, kind, ce_reuse, timeout)
        self.leading = ClassificationTree(self.te_leading)
        self.progress = {}  # leading-state word -> ClassificationTree
        self._leading_dfa = None

    def _progress_tree(self, u) -> ClassificationTree:
        T = self.progress.get(u)
        if T is None:
            T = self.progress[u] = ClassificationTree(lambda x, e, u=u: self.te_progress(self._leading_dfa, u, x, e))
        return T

    def conjecture(self) -> Fdfa:
        if self.fdfa is not None:
            return self.fdfa
        M = self.leading.build_dfa(self.alphabet, lambda s: False)
        self._leading_dfa = M
        progress = []
        for u in M.names:
            T = self._progress_tree(u)
            progress.append(T.build_dfa(self.alphabet, lambda x, u=u: bool(x) and self.is_accepting(M, u, x)))
        self.fdfa = Fdfa(M, progress, self.kind)
        return self.fdfa

    def refine_leading(self, old_label, new_label, experiment):
        self.leading.split(old_label, new_label, experiment)

    def refine_progress(self, u, old_label, new_label, experiment):
        self.progress[u].split(old_label, new_label, experiment)

    def reset_progress(self):
        self.progress = {}

    def space(self) -> tuple:
        return self.leading.node_count, sum(T.node_count for T in self.progress.values())

    def check_invariants(self):
        self.conjecture()
        self.leading.check_invariant()
        for T in self.progress.values():
            T.check_invariant()
