"""The automaton D_{u$v} accepting every decomposition u'$v' of uv^ω."""
from __future__ import annotations

from .automata import Nfa
from .words import SEPARATOR, OmegaWord, rotate_form, shortest_form


def block_transitions(x, y, offset=0):
    """Transitions and accepting state of the chain automaton for x y* $ y+.

    Returns (number of states, [(src, letter, dst)], accepting state) with
    states numbered from ``offset``; indices follow the 1-based chain
    q_0..q_{m+2n}.
    """
    m, n = len(x), len(y)
    t = []
    for k in range(1, m + 1):
        t.append((k - 1, x[k - 1], k))
    for k in range(1, n):
        t.append((m - 1 + k, y[k - 1], m + k))
    t.append((m + n - 1, y[n - 1], m))
    t.append((m, SEPARATOR, m + n))
    for k in range(1, n + 1):
        t.append((m + n + k - 1, y[k - 1], m + n + k))
    t.append((m + 2 * n, y[0], m + n + 1))
    size = m + 2 * n + 1
    return size, [(p + offset, a, q + offset) for p, a, q in t], m + 2 * n + offset


def shortest_forms(w: OmegaWord) -> list:
    """The |smallest period| shortest forms of w, one per rotation."""
    x, y = shortest_form(w)
    forms = [(x, y)]
    for _ in range(len(y) - 1):
        x, y = rotate_form(x, y)
        forms.append((x, y))
    return forms


def build_dusv(w: OmegaWord, alphabet) -> Nfa:
    """Union of one chain block per rotation of the smallest period."""
    alphabet = tuple(alphabet) + (SEPARATOR,)
    trans = []
    initial = []
    accepting = []
    names = []
    for i, (x, y) in enumerate(shortest_forms(w)):
        offset = len(trans)
        size, edges, acc = block_transitions(x, y, offset)
        trans.extend({} for _ in range(size))
        names.extend((i, k) for k in range(size))
        for p, a, q in edges:
            trans[p][a] = trans[p].get(a, ()) + (q,)
        initial.append(offset)
        accepting.append(acc)
    return Nfa(alphabet, trans, initial, accepting, names)
