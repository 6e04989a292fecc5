"""DFAs, NFAs and Büchi automata plus the algorithms the learners need.

States are dense integers ``0..n-1``. Every automaton may carry ``names``,
one display label per state (words for learner-built automata, file ids for
parsed ones). Nondeterministic automata store transitions as one dict per
state mapping a letter (or ``EPSILON``) to a tuple of successor states.
"""
from __future__ import annotations

import time
from collections import deque
from typing import Callable, Hashable, Iterable, Sequence

from .errors import ConstructionError, InputError, LearningTimeout, PreconditionError
from .words import SEPARATOR, OmegaWord, Word, canonical_form

EPSILON = None


def _check_letters(alphabet) -> tuple:
    alphabet = tuple(alphabet)
    if not alphabet:
        raise InputError("alphabet must be nonempty")
    if len(set(alphabet)) != len(alphabet):
        raise InputError(f"duplicate letters in {alphabet}")
    return alphabet


def letter_order(alphabet: Sequence[str]) -> tuple:
    """Alphabet order with ``$`` moved last, used for all tie-breaking."""
    return tuple(a for a in alphabet if a != SEPARATOR) + (
        (SEPARATOR,) if SEPARATOR in alphabet else ())


class Dfa:
    """Total deterministic automaton."""

    def __init__(self, alphabet, delta, initial=0, accepting=(), names=None):
        self.alphabet = _check_letters(alphabet)
        self.delta = [dict(row) for row in delta]
        self.initial = initial
        self.accepting = frozenset(accepting)
        n = len(self.delta)
        self.names = list(names) if names is not None else list(range(n))
        if not 0 <= initial < n:
            raise InputError(f"initial state {initial} out of range")
        if any(not 0 <= q < n for q in self.accepting):
            raise InputError("accepting state out of range")
        for q, row in enumerate(self.delta):
            for a in self.alphabet:
                t = row.get(a)
                if t is None:
                    raise InputError(f"DFA not total: no {a!r}-transition from state {self.names[q]}")
                if not 0 <= t < n:
                    raise InputError(f"transition target {t} out of range")

    @classmethod
    def from_partial(cls, alphabet, delta, initial=0, accepting=(), names=None):
        """Complete a partial transition table with a rejecting sink."""
        alphabet = _check_letters(alphabet)
        delta = [dict(row) for row in delta]
        names = list(names) if names is not None else list(range(len(delta)))
        if any(a not in row for row in delta for a in alphabet):
            sink = len(delta)
            delta.append({a: sink for a in alphabet})
            names.append("sink")
            for row in delta:
                for a in alphabet:
                    row.setdefault(a, sink)
        return cls(alphabet, delta, initial, accepting, names)

    @property
    def num_states(self) -> int:
        return len(self.delta)

    @property
    def num_transitions(self) -> int:
        return len(self.delta) * len(self.alphabet)

    def run(self, w: Iterable[str], start=None) -> int:
        q = self.initial if start is None else start
        delta = self.delta
        for a in w:
            try:
                q = delta[q][a]
            except KeyError:
                raise InputError(f"letter {a!r} not in alphabet {self.alphabet}") from None
        return q

    def accepts(self, w: Iterable[str]) -> bool:
        return self.run(w) in self.accepting

    def state_of(self, name) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(f"unknown state {name!r}") from None

    def to_nfa(self) -> "Nfa":
        return Nfa(self.alphabet, [{a: (t,) for a, t in row.items()} for row in self.delta],
                   [self.initial], self.accepting, self.names)

    def __repr__(self):
        return f"Dfa(states={self.num_states}, alphabet={self.alphabet})"


def dfa_run(A: Dfa, w: Iterable[str]) -> int:
    return A.run(w)


def reanchor(A: Dfa, s: int, v: int) -> Dfa:
    """Same transitions, initial state s, accepting set {v}."""
    n = A.num_states
    if not (0 <= s < n and 0 <= v < n):
        raise InputError(f"unknown state in reanchor({s}, {v})")
    return Dfa(A.alphabet, A.delta, s, [v], A.names)


class Nfa:
    """Nondeterministic finite automaton, ε-transitions allowed."""

    def __init__(self, alphabet, trans, initial, accepting, names=None):
        self.alphabet = _check_letters(alphabet)
        self.trans = [{a: tuple(ts) for a, ts in row.items() if ts} for row in trans]
        self.initial = frozenset(initial)
        self.accepting = frozenset(accepting)
        n = len(self.trans)
        self.names = list(names) if names is not None else list(range(n))
        allowed = set(self.alphabet) | {EPSILON}
        for row in self.trans:
            for a, ts in row.items():
                if a not in allowed:
                    raise InputError(f"letter {a!r} not in alphabet {self.alphabet}")
                if any(not 0 <= t < n for t in ts):
                    raise InputError("transition target out of range")
        if any(not 0 <= q < n for q in self.initial | self.accepting):
            raise InputError("state out of range")
        self._cache = {}

    @property
    def num_states(self) -> int:
        return len(self.trans)

    @property
    def num_transitions(self) -> int:
        return sum(len(ts) for row in self.trans for ts in row.values())

    @property
    def epsilon_free(self) -> bool:
        return all(EPSILON not in row for row in self.trans)

    def transitions(self):
        """Yield (src, letter, dst) triples; letter is EPSILON for ε."""
        for q, row in enumerate(self.trans):
            for a, ts in row.items():
                for t in ts:
                    yield q, a, t

    def successors(self, q: int, a) -> tuple:
        return self.trans[q].get(a, ())

    def initial_states(self):
        return sorted(self.initial)

    def is_accepting(self, q) -> bool:
        return q in self.accepting

    def eclose(self, states: Iterable[int]) -> frozenset:
        seen = set(states)
        stack = list(seen)
        while stack:
            q = stack.pop()
            for t in self.trans[q].get(EPSILON, ()):
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)

    def step(self, states: frozenset, a: str) -> frozenset:
        out = set()
        for q in states:
            out.update(self.trans[q].get(a, ()))
        return self.eclose(out)

    def accepts(self, w: Iterable[str]) -> bool:
        s = self.eclose(self.initial)
        for a in w:
            s = self.step(s, a)
            if not s:
                return False
        return bool(s & self.accepting)

    def __repr__(self):
        return f"{type(self).__name__}(states={self.num_states}, alphabet={self.alphabet})"


class BuchiAutomaton(Nfa):
    """Nondeterministic Büchi automaton; a run accepts iff it visits an
    accepting state infinitely often."""

    def accepts(self, w):  # finite-word acceptance makes no sense here
        raise TypeError("use ba_lasso_member for Büchi acceptance")


def _as_nfa(A) -> Nfa:
    return A.to_nfa() if isinstance(A, Dfa) else A


def _explore(alphabet, initials, succ, is_acc, cls=Nfa, keep_names=True):
    """Materialise the reachable part of an implicitly given automaton.

    ``succ(state, letter)`` returns an iterable of successor keys and is
    also called with EPSILON.
    """
    index = {}
    keys = []
    trans = []
    queue = deque()

    def intern(k):
        i = index.get(k)
        if i is None:
            i = index[k] = len(keys)
            keys.append(k)
            trans.append({})
            queue.append(k)
        return i

    init = [intern(k) for k in initials]
    letters = tuple(alphabet) + (EPSILON,)
    while queue:
        k = queue.popleft()
        i = index[k]
        row = trans[i]
        for a in letters:
            ts = []
            for t in succ(k, a):
                j = intern(t)
                if j not in ts:
                    ts.append(j)
            if ts:
                row[a] = tuple(ts)
    acc = [i for i, k in enumerate(keys) if is_acc(k)]
    return cls(alphabet, trans, init, acc, keys if keep_names else None)


def product_intersection(A, B) -> Nfa:
    """Finite-word intersection; ε moves of one side pair with the other
    side standing still."""
    A, B = _as_nfa(A), _as_nfa(B)
    if A.alphabet != B.alphabet:
        raise InputError(f"alphabet mismatch: {A.alphabet} vs {B.alphabet}")

    def succ(k, a):
        p, q = k
        if a is EPSILON:
            return [(t, q) for t in A.successors(p, EPSILON)] + \
                   [(p, t) for t in B.successors(q, EPSILON)]
        return [(s, t) for s in A.successors(p, a) for t in B.successors(q, a)]

    initials = [(p, q) for p in sorted(A.initial) for q in sorted(B.initial)]
    return _explore(A.alphabet, initials, succ,
                    lambda k: k[0] in A.accepting and k[1] in B.accepting)


def nfa_shortest_accepted(A) -> Word | None:
    """Minimum-length accepted word, ties broken by alphabet order with
    ``$`` last; None when the language is empty."""
    A = _as_nfa(A)
    start = A.eclose(A.initial)
    if start & A.accepting:
        return ()
    order = letter_order(A.alphabet)
    parent = {start: None}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for a in order:
            t = A.step(s, a)
            if not t or t in parent:
                continue
            parent[t] = (s, a)
            if t & A.accepting:
                out = []
                while parent[t] is not None:
                    t, a = parent[t]
                    out.append(a)
                return tuple(reversed(out))
            queue.append(t)
    return None


def dfa_minimize(A: Dfa) -> Dfa:
    """Moore partition refinement over the reachable part."""
    reach = [A.initial]
    seen = {A.initial}
    for q in reach:
        for a in A.alphabet:
            t = A.delta[q][a]
            if t not in seen:
                seen.add(t)
                reach.append(t)
    block = {q: int(q in A.accepting) for q in reach}
    while True:
        sigs = {}
        new = {}
        for q in reach:
            sig = (block[q],) + tuple(block[A.delta[q][a]] for a in A.alphabet)
            new[q] = sigs.setdefault(sig, len(sigs))
        if len(sigs) == len(set(block.values())):
            break
        block = new
    # renumber blocks in order of first reach so output is canonical
    order = {}
    for q in reach:
        order.setdefault(block[q], len(order))
    rep = {}
    for q in reach:
        rep.setdefault(order[block[q]], q)
    delta = [{a: order[block[A.delta[rep[i]][a]]] for a in A.alphabet} for i in range(len(order))]
    acc = [i for i in range(len(order)) if rep[i] in A.accepting]
    return Dfa(A.alphabet, delta, order[block[A.initial]], acc,
               [A.names[rep[i]] for i in range(len(order))])


def dfa_product(factors: Sequence[Dfa]) -> Dfa:
    """Reachable synchronous product; accepting iff every factor accepts."""
    alphabet = factors[0].alphabet
    if any(f.alphabet != alphabet for f in factors):
        raise InputError("alphabet mismatch in DFA product")
    start = tuple(f.initial for f in factors)
    index = {start: 0}
    keys = [start]
    delta = []
    for k in keys:
        row = {}
        for a in alphabet:
            t = tuple(f.delta[q][a] for f, q in zip(factors, k))
            if t not in index:
                index[t] = len(keys)
                keys.append(t)
            row[a] = index[t]
        delta.append(row)
    acc = [i for i, k in enumerate(keys) if all(q in f.accepting for f, q in zip(factors, k))]
    return Dfa(alphabet, delta, 0, acc, keys)


# ---------------------------------------------------------------------------
# graph helpers


def _sccs(nodes: Iterable, succ: Callable) -> list:
    """Tarjan's algorithm, iterative. Returns a list of SCCs (lists)."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    out = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if w in on_stack and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def _has_accepting_cycle(starts, succ, is_acc) -> bool:
    reach = list(dict.fromkeys(starts))
    seen = set(reach)
    for x in reach:
        for y in succ(x):
            if y not in seen:
                seen.add(y)
                reach.append(y)
    for comp in _sccs(reach, succ):
        if any(is_acc(x) for x in comp):
            if len(comp) > 1 or comp[0] in succ(comp[0]):
                return True
    return False


# ---------------------------------------------------------------------------
# Büchi automata


def _eps_free(B: Nfa) -> Nfa:
    if B.epsilon_free:
        return B
    cached = B._cache.get("eps_free")
    if cached is None:
        cached = B._cache["eps_free"] = epsilon_removal(B)
    return cached


def ba_lasso_member(B: BuchiAutomaton, w: OmegaWord) -> bool:
    """Is u v^ω accepted? Runs the product of B with the lasso automaton of
    w (whose cycle states are all accepting) and looks for an accepting
    cycle, so a product node is accepting iff its B-component is."""
    B = _eps_free(B)
    u, v = w.prefix, w.period
    current = set(B.initial)
    for a in u:
        nxt = set()
        for q in current:
            nxt.update(B.successors(q, a))
        current = nxt
        if not current:
            return False
    n = len(v)
    trans = B.trans

    def succ(node):
        q, j = node
        return [(t, (j + 1) % n) for t in trans[q].get(v[j], ())]

    return _has_accepting_cycle([(q, 0) for q in sorted(current)], succ,
                                lambda node: node[0] in B.accepting)


def ba_product(A, B) -> BuchiAutomaton:
    """Büchi intersection with the usual two-phase flag.

    Either side may be any object with ``alphabet``, ``initial_states()``,
    ``successors(q, a)`` and ``is_accepting(q)`` (lazy automata included).
    Both sides must be ε-free.
    """
    if tuple(A.alphabet) != tuple(B.alphabet):
        raise InputError("alphabet mismatch in Büchi product")

    def succ(k, a):
        if a is EPSILON:
            return ()
        p, q, phase = k
        if phase == 0 and A.is_accepting(p):
            phase = 1
        elif phase == 1 and B.is_accepting(q):
            phase = 0
        return [(s, t, phase) for s in A.successors(p, a) for t in B.successors(q, a)]

    initials = [(p, q, 0) for p in A.initial_states() for q in B.initial_states()]
    return _explore(A.alphabet, initials, succ,
                    lambda k: k[2] == 1 and B.is_accepting(k[1]), BuchiAutomaton)


def _bfs_paths(B: Nfa, sources, order) -> dict:
    """Lexicographically-least shortest word from the sources to each state."""
    paths = {}
    queue = deque()
    for s in sources:
        if s not in paths:
            paths[s] = ()
            queue.append(s)
    while queue:
        q = queue.popleft()
        for a in order:
            for t in B.trans[q].get(a, ()):
                if t not in paths:
                    paths[t] = paths[q] + (a,)
                    queue.append(t)
    return paths


def _shortest_cycle(B: Nfa, f: int, order, limit=None) -> Word | None:
    paths = {}
    queue = deque([f])
    paths[f] = ()
    while queue:
        q = queue.popleft()
        if limit is not None and len(paths[q]) >= limit:
            return None
        for a in order:
            for t in B.trans[q].get(a, ()):
                if t == f:
                    return paths[q] + (a,)
                if t not in paths:
                    paths[t] = paths[q] + (a,)
                    queue.append(t)
    return None


def ba_emptiness(B: BuchiAutomaton) -> OmegaWord | None:
    """None iff the language is empty, else an accepting lasso.

    The lasso is u·v^ω with u the shortest path to an accepting state f and
    v the shortest cycle through f, minimising |u|+|v| over f and breaking
    ties lexicographically (alphabet order).
    """
    B = _eps_free(B)
    order = letter_order(B.alphabet)
    paths = _bfs_paths(B, sorted(B.initial), order)
    reach = list(paths)

    def succ(q):
        return [t for a in order for t in B.trans[q].get(a, ())]

    live = set()
    for comp in _sccs(reach, succ):
        if len(comp) > 1 or comp[0] in succ(comp[0]):
            live.update(q for q in comp if q in B.accepting)
    if not live:
        return None
    best = None
    for f in sorted(live, key=lambda q: (len(paths[q]), paths[q])):
        u = paths[f]
        if best is not None and len(u) + 1 > len(best[0]) + len(best[1]):
            break
        limit = None if best is None else len(best[0]) + len(best[1]) - len(u)
        v = _shortest_cycle(B, f, order, limit)
        if v is None:
            continue
        cand = (u, v)
        if best is None or (len(u) + len(v), u + v) < (len(best[0]) + len(best[1]), best[0] + best[1]):
            best = cand
    return OmegaWord(*best)


def epsilon_removal(B: BuchiAutomaton) -> BuchiAutomaton:
    """Remove ε-transitions preserving the ω-language.

    New states are pairs (q, flag). A letter step from q reads ``a`` and then
    follows ε-edges to some r; the target (r, 1) records that the states
    visited after q during that step (q itself excluded) included an
    accepting one. Accepting states are the flag-1 pairs, so accepting
    visits are counted exactly once per step.
    """
    if B.epsilon_free:
        return B
    acc = B.accepting
    for f in acc:
        if f in _eps_reach(B, B.successors(f, EPSILON)):
            raise ConstructionError(f"accepting state {B.names[f]} lies on an ε-cycle")

    closure_cache = {}

    def closure(p):
        """(r, saw) pairs reachable from p by ε-paths, p counted as visited."""
        res = closure_cache.get(p)
        if res is None:
            start = (p, int(p in acc))
            seen = {start}
            stack = [start]
            while stack:
                q, saw = stack.pop()
                for t in B.successors(q, EPSILON):
                    k = (t, saw | int(t in acc))
                    if k not in seen:
                        seen.add(k)
                        stack.append(k)
            # (r, 1) subsumes (r, 0)
            res = sorted(k for k in seen if k[1] == 1 or (k[0], 1) not in seen)
            closure_cache[p] = res
        return res

    def succ(k, a):
        if a is EPSILON:
            return ()
        q = k[0]
        out = []
        for r, _ in _eps_closure_pairs(B, q):
            for p in B.successors(r, a):
                out.extend(closure(p))
        return sorted(set(out))

    initials = [(q, 0) for q in sorted(B.initial)]
    raw = _explore(B.alphabet, initials, succ, lambda k: k[1] == 1, BuchiAutomaton)
    raw.names = [B.names[q] if flag == 0 else f"{B.names[q]}'" for q, flag in raw.names]
    return ba_trim(raw)


def _eps_reach(B: Nfa, starts) -> set:
    seen = set(starts)
    stack = list(seen)
    while stack:
        q = stack.pop()
        for t in B.successors(q, EPSILON):
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return seen


def _eps_closure_pairs(B: Nfa, q):
    # states reachable from q by ε (q included); flags irrelevant before the letter
    return [(r, 0) for r in sorted(_eps_reach(B, [q]) | {q})]


def ba_trim(B: BuchiAutomaton) -> BuchiAutomaton:
    """Keep only states that are reachable and can reach an accepting cycle.

    The initial state is always kept so that the result is well formed.
    """
    B = _eps_free(B)
    n = B.num_states

    def succ(q):
        return [t for row in (B.trans[q],) for ts in row.values() for t in ts]

    reach = set(_bfs_paths(B, sorted(B.initial), B.alphabet))
    good = set()
    for comp in _sccs(sorted(reach), succ):
        if any(q in B.accepting for q in comp) and (len(comp) > 1 or comp[0] in succ(comp[0])):
            good.update(comp)
    pred = [[] for _ in range(n)]
    for q in reach:
        for t in succ(q):
            pred[t].append(q)
    stack = list(good)
    while stack:
        q = stack.pop()
        for p in pred[q]:
            if p not in good:
                good.add(p)
                stack.append(p)
    keep = sorted(good | set(B.initial))
    if len(keep) == n:
        return B
    new = {q: i for i, q in enumerate(keep)}
    trans = []
    for q in keep:
        row = {}
        for a, ts in B.trans[q].items():
            kept = tuple(new[t] for t in ts if t in good)
            if kept:
                row[a] = kept
        trans.append(row)
    return BuchiAutomaton(B.alphabet, trans, [new[q] for q in B.initial],
                          [new[q] for q in B.accepting if q in good], [B.names[q] for q in keep])


def with_alphabet(B: BuchiAutomaton, alphabet) -> BuchiAutomaton:
    """Same automaton viewed over a larger alphabet (new letters unused)."""
    alphabet = tuple(alphabet)
    if alphabet == B.alphabet:
        return B
    if not set(B.alphabet) <= set(alphabet):
        raise InputError("new alphabet must contain the old one")
    return BuchiAutomaton(alphabet, B.trans, B.initial, B.accepting, B.names)


# ---------------------------------------------------------------------------
# complementation


def _tight_rankings(states, caps, accepting, rank):
    """All level rankings over ``states`` with f(q) ≤ caps[q], even ranks on
    accepting states, and every odd rank 1..rank used (so max rank = rank)."""
    states = list(states)
    odds = list(range(1, rank + 1, 2))
    nonacc_left = [0] * (len(states) + 1)
    for i in range(len(states) - 1, -1, -1):
        nonacc_left[i] = nonacc_left[i + 1] + (states[i] not in accepting)
    out = []
    current = []

    def go(i, missing):
        if len(missing) > nonacc_left[i]:
            return
        if i == len(states):
            if not missing:
                out.append(tuple(current))
            return
        q = states[i]
        top = min(caps[q], rank)
        for r in range(top, -1, -1):
            if q in accepting and r % 2:
                continue
            current.append(r)
            go(i + 1, missing - {r} if r % 2 else missing)
            current.pop()

    go(0, frozenset(odds))
    return [tuple(zip(states, f)) for f in out]


class _LazyComplement:
    """Rank-based complement with tight level rankings, explored on demand.

    States are ('s', S) for the subset phase and ('r', S, O, f) for the
    ranking phase, with f a sorted tuple of (state, rank). The ranking phase
    keeps the maximal odd rank fixed; accepting states are ranking-phase
    states with O empty.
    """

    _SINK = ("r", frozenset(), frozenset(), ())

    def __init__(self, B: BuchiAutomaton):
        if not B.epsilon_free:
            raise PreconditionError("complementation needs an ε-free automaton")
        self.B = B
        self.alphabet = B.alphabet
        self.acc = B.accepting

    def _post(self, S, a):
        out = set()
        for q in S:
            out.update(self.B.successors(q, a))
        return frozenset(out)

    def _entries(self, S):
        if not S:
            return [self._SINK]
        nonacc = len([q for q in S if q not in self.acc])
        caps = {q: 2 * nonacc - 1 for q in S}
        out = []
        for rank in range(1, 2 * nonacc, 2):
            for f in _tight_rankings(sorted(S), caps, self.acc, rank):
                out.append(("r", S, frozenset(), f))
        return out

    def initial_states(self):
        S = frozenset(self.B.initial)
        return [("s", S)] + self._entries(S)

    def is_accepting(self, k) -> bool:
        return k[0] == "r" and not k[2]

    def successors(self, k, a):
        if a is EPSILON:
            return []
        if k[0] == "s":
            S2 = self._post(k[1], a)
            if not S2:
                return [self._SINK]
            return [("s", S2)] + self._entries(S2)
        _, S, O, f = k
        S2 = self._post(S, a)
        if not S2:
            return [self._SINK]
        if not S:
            return []
        rank = max(r for _, r in f)
        caps = {}
        for q, r in f:
            for t in self.B.successors(q, a):
                if caps.get(t, r + 1) > r:
                    caps[t] = r
        base = self._post(O, a) if O else S2
        out = []
        for g in _tight_rankings(sorted(S2), caps, self.acc, rank):
            ranks = dict(g)
            O2 = frozenset(q for q in base if ranks[q] % 2 == 0)
            out.append(("r", S2, O2, g))
        return out


def ba_complement(B: BuchiAutomaton) -> BuchiAutomaton:
    if not B.epsilon_free:
        raise PreconditionError("complementation needs an ε-free automaton")
    C = _LazyComplement(B)
    return _explore(B.alphabet, C.initial_states(), C.successors, C.is_accepting,
                    BuchiAutomaton, keep_names=False)


def _complement_of(B: BuchiAutomaton):
    """Lazily built complement, cached on the automaton."""
    c = B._cache.get("complement")
    if c is None:
        c = B._cache["complement"] = _LazyComplement(B)
    return c


def sample_lassos(alphabet, max_prefix=3, max_period=3):
    from .words import Alphabet
    sigma = Alphabet(alphabet)
    periods = list(sigma.words(max_period, 1))
    for u in sigma.words(max_prefix):
        for v in periods:
            yield OmegaWord(u, v)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _compose(P: tuple, Q: tuple) -> tuple:
    """Profile of xy from the profiles of x and y.

    A profile holds, per state p, a pair (reach, acc) of state bitmasks:
    the states reachable from p on the word, and those reachable along a
    path that visits an accepting state (endpoints included).
    """
    out = []
    for reach, acc in P:
        r = a = 0
        for t in _bits(reach):
            qr, qa = Q[t]
            r |= qr
            a |= qr if acc >> t & 1 else qa
        out.append((r, a))
    return tuple(out)


def _idempotent_power(Q: tuple) -> tuple:
    seen = set()
    P = Q
    while True:
        PP = _compose(P, P)
        if PP == P:
            return P
        if P in seen:  # cannot happen in a finite monoid, kept as a guard
            raise ConstructionError("no idempotent power found")
        seen.add(P)
        P = _compose(P, Q)


def _check_deadline(deadline):
    if deadline is not None and time.perf_counter() > deadline:
        raise LearningTimeout("deadline reached during equivalence check")


def profile_difference(B1: BuchiAutomaton, B2: BuchiAutomaton, deadline=None) -> OmegaWord | None:
    """Shortest lasso u·v^ω accepted by exactly one side, or None.

    Works on the disjoint union J of both automata. Acceptance of u·v^ω in
    either side depends only on the set of J-states reached by u and on the
    transition profile of v, so enumerating reachable subsets and reachable
    profiles (each with its shortlex-least word) decides equivalence exactly
    and yields the lasso minimizing (|u|+|v|, u, v).
    """
    alphabet = letter_order(tuple(dict.fromkeys(B1.alphabet + B2.alphabet)))
    B1 = with_alphabet(_eps_free(B1), alphabet)
    B2 = with_alphabet(_eps_free(B2), alphabet)
    n1 = B1.num_states
    side1 = (1 << n1) - 1

    def state_rows(B, off):
        rows = []
        for p in range(B.num_states):
            row = {}
            for a in alphabet:
                r = acc = 0
                for t in B.successors(p, a):
                    r |= 1 << (t + off)
                    if B.is_accepting(t):
                        acc |= 1 << (t + off)
                row[a] = (r, r if B.is_accepting(p) else acc)
            rows.append(row)
        return rows

    rows = state_rows(B1, 0) + state_rows(B2, n1)
    letters = {a: tuple(row[a] for row in rows) for a in alphabet}

    init = 0
    for q in B1.initial_states():
        init |= 1 << q
    for q in B2.initial_states():
        init |= 1 << (q + n1)
    subsets = {init: ()}
    queue = deque([init])
    while queue:
        S = queue.popleft()
        for a in alphabet:
            T = 0
            for t in _bits(S):
                T |= rows[t][a][0]
            if T not in subsets:
                subsets[T] = subsets[S] + (a,)
                queue.append(T)

    profiles = {}
    queue = deque()
    for a in alphabet:
        if letters[a] not in profiles:
            profiles[letters[a]] = (a,)
            queue.append(letters[a])
    count = 0
    while queue:
        count += 1
        if count % 256 == 0:
            _check_deadline(deadline)
        P = queue.popleft()
        for a in alphabet:
            R = _compose(P, letters[a])
            if R not in profiles:
                profiles[R] = profiles[P] + (a,)
                queue.append(R)

    # group periods by their idempotent power; acceptance only sees that
    loops = {}
    for Q, v in profiles.items():
        E = _idempotent_power(Q)
        entry = loops.get(E)
        if entry is None:
            loop = 0
            for t, (_, acc) in enumerate(E):
                if acc >> t & 1:
                    loop |= 1 << t
            entry = loops[E] = [loop, []]
        entry[1].append(v)
    rank = {a: i for i, a in enumerate(alphabet)}

    def key(u, v):
        return (len(u) + len(v), [rank[a] for a in u], [rank[a] for a in v])

    best = None
    for E, (loop, periods) in loops.items():
        _check_deadline(deadline)
        v = min(periods, key=lambda w: (len(w), [rank[a] for a in w]))
        for S, u in subsets.items():
            image = 0
            for t in _bits(S):
                image |= E[t][0]
            hit = image & loop
            if bool(hit & side1) != bool(hit >> n1):
                k = key(u, v)
                if best is None or k < best[0]:
                    best = (k, u, v)
    if best is None:
        return None
    return OmegaWord(best[1], best[2])


def _joint_setup(B1, B2):
    """Letter profiles and initial set of the disjoint union B1 ⊎ B2."""
    alphabet = letter_order(tuple(dict.fromkeys(B1.alphabet + B2.alphabet)))
    B1 = with_alphabet(_eps_free(B1), alphabet)
    B2 = with_alphabet(_eps_free(B2), alphabet)
    n1 = B1.num_states
    rows = []
    for B, off in ((B1, 0), (B2, n1)):
        for p in range(B.num_states):
            row = {}
            for a in alphabet:
                r = acc = 0
                for t in B.successors(p, a):
                    r |= 1 << (t + off)
                    if B.is_accepting(t):
                        acc |= 1 << (t + off)
                row[a] = (r, r if B.is_accepting(p) else acc)
            rows.append(row)
    letters = {a: tuple(row[a] for row in rows) for a in alphabet}
    init = 0
    for q in B1.initial_states():
        init |= 1 << q
    for q in B2.initial_states():
        init |= 1 << (q + n1)
    return alphabet, n1, rows, letters, init


def _loop_mask(E: tuple) -> int:
    loop = 0
    for t, (_, acc) in enumerate(E):
        if acc >> t & 1:
            loop |= 1 << t
    return loop


def _image(S: int, P: tuple) -> int:
    out = 0
    for t in _bits(S):
        out |= P[t][0]
    return out


def _pack(P: tuple, n1: int, width: int) -> tuple:
    """Subsumption key of a profile: (left rows complemented, right rows).
    Key h ⊆ key g in both parts means h has at least g's left paths and at
    most its right paths, i.e. h is at least as good a counterexample. The
    left part comes first because it is small and usually decides."""
    lo = hi = 0
    for i, (r, a) in enumerate(P):
        cell = r | a << width
        if i < n1:
            lo |= cell << (2 * width * i)
        else:
            hi |= cell << (2 * width * (i - n1))
    return lo ^ ((1 << (2 * width * n1)) - 1), hi


class _Antichain:
    """Undominated entries, bucketed by the small first key part so the
    large second part is compared only within compatible buckets.

    An entry is a tuple whose first field is its key (k0, k1); key h beats
    key g when h ⊆ g in both parts.
    """

    def __init__(self):
        self.buckets = {}  # k0 -> list of entries
        self.alive = set()  # ids of current entries

    def add(self, entry) -> bool:
        k0, k1 = entry[0]
        n0, n1 = ~k0, ~k1
        for o0, group in self.buckets.items():
            if o0 & n0 == 0:
                for other in group:
                    if other[0][1] & n1 == 0:
                        return False
        for o0 in list(self.buckets):
            if k0 & ~o0 == 0:
                group = self.buckets[o0]
                keep = []
                for e in group:
                    if k1 & ~e[0][1] == 0:
                        self.alive.discard(id(e))
                    else:
                        keep.append(e)
                if keep:
                    self.buckets[o0] = keep
                else:
                    del self.buckets[o0]
        self.buckets.setdefault(k0, []).append(entry)
        self.alive.add(id(entry))
        return True

    def __contains__(self, entry) -> bool:
        return id(entry) in self.alive

    def entries(self) -> list:
        return [e for group in self.buckets.values() for e in group]


def antichain_inclusion_witness(A: BuchiAutomaton, B: BuchiAutomaton, deadline=None) -> OmegaWord | None:
    """A lasso in L(A) \\ L(B), or None if L(A) ⊆ L(B).

    Same lasso test as :func:`profile_difference`, restricted to one
    direction. Composition and lasso acceptance are monotone in a profile,
    so a profile with more A-paths and fewer B-paths than another subsumes
    it; only an antichain of undominated subsets and profiles is explored.
    Periods are searched in length-lexicographic order and the first
    counterexample found is returned.
    """
    alphabet, n1, rows, letters, init = _joint_setup(A, B)
    left = (1 << n1) - 1
    width = len(rows)

    # subset keys: flipping the left bits turns dominance into inclusion
    start = ((init ^ left, 0), init, ())
    chain = _Antichain()
    chain.add(start)
    queue = deque([start])
    while queue:
        item = queue.popleft()
        if item not in chain:
            continue  # beaten after being queued
        _, S, u = item
        for a in alphabet:
            T = 0
            for t in _bits(S):
                T |= rows[t][a][0]
            new = ((T ^ left, 0), T, u + (a,))
            if chain.add(new):
                queue.append(new)
    prefixes = sorted(chain.entries(), key=lambda e: (len(e[2]), e[2]))

    def check(P, v):
        E = _idempotent_power(P)
        loop = _loop_mask(E)
        for _, S, u in prefixes:
            hit = _image(S, E) & loop
            if hit & left and not hit >> n1:
                return OmegaWord(u, v)
        return None

    loops = _Antichain()
    queue = deque()

    def offer(P, v):
        item = (_pack(P, n1, width), P, v)
        if not loops.add(item):
            return None
        queue.append(item)
        return check(P, v)

    for a in alphabet:
        found = offer(letters[a], (a,))
        if found is not None:
            return found
    count = 0
    while queue:
        count += 1
        if count % 64 == 0:
            _check_deadline(deadline)
        item = queue.popleft()
        if item not in loops:
            continue
        _, P, v = item
        for a in alphabet:
            found = offer(_compose(P, letters[a]), v + (a,))
            if found is not None:
                return found
    return None


def inclusion_witness(A: BuchiAutomaton, B: BuchiAutomaton, deadline=None, small=6) -> OmegaWord | None:
    """A lasso in L(A) \\ L(B), or None. A small B is complemented
    (rank-based, cached on B); otherwise the antichain search runs."""
    A, B = _eps_free(A), _eps_free(B)
    if ba_trim(B).num_states <= small:
        return ba_inclusion_witness(A, B)
    return antichain_inclusion_witness(A, B, deadline)


def ba_equivalence(B1: BuchiAutomaton, B2: BuchiAutomaton, prefilter=True, method="antichain",
                   deadline=None) -> OmegaWord | None:
    """None when the languages coincide, otherwise a witness accepted by
    exactly one side.

    Cheap sampled lassos are tried first. Then ``method="antichain"`` runs
    the subsumption-pruned profile search in both directions,
    ``method="profile"`` enumerates every profile (and finds a shortest
    witness), and ``method="rank"`` decides both inclusions by emptiness of
    the product with the rank-based complement.
    """
    if method not in ("antichain", "profile", "rank"):
        raise ValueError(f"unknown equivalence method {method!r}")
    alphabet = tuple(dict.fromkeys(B1.alphabet + B2.alphabet))
    B1 = with_alphabet(_eps_free(B1), alphabet)
    B2 = with_alphabet(_eps_free(B2), alphabet)
    witness = None
    if prefilter:
        for w in sample_lassos(alphabet):
            if ba_lasso_member(B1, w) != ba_lasso_member(B2, w):
                witness = w
                break
    if witness is None:
        if method == "antichain":
            witness = inclusion_witness(B1, B2, deadline)
            if witness is None:
                witness = inclusion_witness(B2, B1, deadline)
        elif method == "profile":
            witness = profile_difference(B1, B2, deadline)
        else:
            witness = ba_inclusion_witness(B1, B2)
            if witness is None:
                witness = ba_inclusion_witness(B2, B1)
    if witness is None:
        return None
    if ba_lasso_member(B1, witness) == ba_lasso_member(B2, witness):
        from .errors import InvariantViolation
        raise InvariantViolation(f"equivalence witness {witness} does not separate the automata")
    return canonical_form(witness)


def ba_inclusion_witness(A: BuchiAutomaton, B: BuchiAutomaton) -> OmegaWord | None:
    """A word in L(A) \\ L(B), or None if L(A) ⊆ L(B)."""
    A, B = _eps_free(A), _eps_free(B)
    A = ba_trim(A)
    if not A.accepting:
        return None
    return ba_emptiness(ba_product(A, _complement_of(B)))
