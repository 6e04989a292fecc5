"""FDFA to Büchi automaton: under- and over-approximations."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .automata import EPSILON, BuchiAutomaton, Dfa, dfa_minimize, dfa_product, epsilon_removal, reanchor
from .errors import InputError, PreconditionError
from .fdfa import Fdfa


class ApproximationKind(str, Enum):
    UNDER = "under"
    OVER = "over"


def _kind(kind) -> ApproximationKind:
    try:
        return ApproximationKind(kind)
    except ValueError:
        raise InputError(f"unknown approximation {kind!r}") from None


def _exclude_empty_word(A: Dfa) -> Dfa:
    """Make the initial state non-accepting by unrolling it once."""
    if A.initial not in A.accepting:
        return A
    n = A.num_states
    delta = [dict(row) for row in A.delta] + [dict(A.delta[A.initial])]
    names = list(A.names) + [("start", A.names[A.initial])]
    return Dfa(A.alphabet, delta, n, A.accepting, names)


def build_period_product(F: Fdfa, u: int, v: int, kind, minimize=True) -> Dfa:
    """The period language of pair (u, v): M^u_u × (A^u)^{s_u}_v for ``over``,
    additionally × (A^u)^v_v for ``under``; ε is never accepted."""
    kind = _kind(kind)
    A = F.progress[u]
    if v not in A.accepting:
        raise PreconditionError(f"progress state {A.names[v]} is not accepting")
    factors = [reanchor(F.leading, u, u), reanchor(A, A.initial, v)]
    if kind is ApproximationKind.UNDER:
        factors.append(reanchor(A, v, v))
    P = _exclude_empty_word(dfa_product(factors))
    if minimize:
        P = _exclude_empty_word(dfa_minimize(P))
    return P


def _coaccessible(P: Dfa) -> set:
    pred = [[] for _ in range(P.num_states)]
    for q, row in enumerate(P.delta):
        for t in row.values():
            pred[t].append(q)
    good = set(P.accepting)
    stack = list(good)
    while stack:
        q = stack.pop()
        for p in pred[q]:
            if p not in good:
                good.add(p)
                stack.append(p)
    return good


@dataclass
class SizeAccounting:
    leading: int
    pairs: list = field(default_factory=list)  # (u, v, raw product size, minimized size)

    @property
    def raw_total(self) -> int:
        return self.leading + sum(raw + 1 for _, _, raw, _ in self.pairs)

    @property
    def minimized_total(self) -> int:
        return self.leading + sum(mini + 1 for _, _, _, mini in self.pairs)


def ba_size_accounting(F: Fdfa, kind) -> SizeAccounting:
    """Pre-ε-removal state counts: n + Σ (|product| + 1), raw and minimized."""
    acc = SizeAccounting(F.leading.num_states)
    for u, A in enumerate(F.progress):
        for v in sorted(A.accepting):
            raw = build_period_product(F, u, v, kind, minimize=False).num_states
            mini = build_period_product(F, u, v, kind).num_states
            acc.pairs.append((u, v, raw, mini))
    return acc


def fdfa_to_ba_with_epsilon(F: Fdfa, kind) -> BuchiAutomaton:
    """The approximation before ε-removal: leading copy, then per pair an
    ε-edge into the period product and an ε-loop through a fresh
    accepting state."""
    kind = _kind(kind)
    M = F.leading
    sigma = F.alphabet
    trans = [{a: (M.delta[q][a],) for a in sigma} for q in range(M.num_states)]
    names = [M.names[q] for q in range(M.num_states)]
    accepting = []
    for u, A in enumerate(F.progress):
        for v in sorted(A.accepting):
            P = build_period_product(F, u, v, kind)
            live = _coaccessible(P)
            if P.initial not in live:
                continue  # empty period language
            states = sorted(live)
            local = {q: len(trans) + i for i, q in enumerate(states)}
            for q in states:
                trans.append({a: (local[t],) for a, t in P.delta[q].items() if t in live})
                names.append((M.names[u], A.names[v], P.names[q]))
            f = len(trans)
            trans.append({EPSILON: (local[P.initial],)})
            names.append((M.names[u], A.names[v], "f"))
            accepting.append(f)
            for q in P.accepting:
                trans[local[q]][EPSILON] = (f,)
            trans[u][EPSILON] = trans[u].get(EPSILON, ()) + (local[P.initial],)
    return BuchiAutomaton(sigma, trans, [M.initial], accepting, names)


def fdfa_to_ba(F: Fdfa, kind) -> BuchiAutomaton:
    """ε-free under- or over-approximation of UP(F)."""
    return epsilon_removal(fdfa_to_ba_with_epsilon(F, kind))
