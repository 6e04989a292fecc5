"""Families of DFAs: structure, acceptance, and the D1/D2 automata."""
from __future__ import annotations

from .automata import Dfa, Nfa, dfa_product, nfa_shortest_accepted, product_intersection, reanchor
from .errors import InputError
from .words import SEPARATOR, OmegaWord

KINDS = ("periodic", "syntactic", "recurrent")


class Fdfa:
    """Leading DFA plus one progress DFA per leading state.

    ``progress[q]`` is the progress automaton of leading state ``q``.
    """

    def __init__(self, leading: Dfa, progress, kind="periodic"):
        if kind not in KINDS:
            raise InputError(f"unknown FDFA kind {kind!r}")
        progress = list(progress)
        if len(progress) != leading.num_states:
            raise InputError("need exactly one progress automaton per leading state")
        if leading.accepting:
            leading = Dfa(leading.alphabet, leading.delta, leading.initial, (), leading.names)
        for A in progress:
            if A.alphabet != leading.alphabet:
                raise InputError("progress and leading alphabets differ")
        self.leading = leading
        self.progress = progress
        self.kind = kind
        self.alphabet = leading.alphabet
        self._cache = {}

    @property
    def sizes(self):
        return self.leading.num_states, sum(A.num_states for A in self.progress)

    def accepts(self, u, v) -> bool:
        M = self.leading
        q = M.run(u)
        if M.run(v, q) != q:
            return False
        return self.progress[q].accepts(v)

    def __repr__(self):
        return f"Fdfa(kind={self.kind}, leading={self.leading.num_states}, progress={[A.num_states for A in self.progress]})"


def accepts(F: Fdfa, u, v) -> bool:
    return F.accepts(u, v)


def _build_d(F: Fdfa, complement: bool) -> Nfa:
    M = F.leading
    sigma = F.alphabet
    letters = sigma + (SEPARATOR,)
    n = M.num_states
    trans = [{a: (M.delta[q][a],) for a in sigma} for q in range(n)]
    names = [("M", M.names[q]) for q in range(n)]
    accepting = []
    for u in range(n):
        A = F.progress[u]
        if complement:
            A = Dfa(A.alphabet, A.delta, A.initial,
                    [q for q in range(A.num_states) if q not in A.accepting], A.names)
        N = dfa_product([reanchor(M, u, u), A])
        offset = len(trans)
        for k, row in enumerate(N.delta):
            trans.append({a: (t + offset,) for a, t in row.items()})
            names.append((u, N.names[k]))
        accepting.extend(q + offset for q in N.accepting)
        trans[u][SEPARATOR] = (N.initial + offset,)
    return Nfa(letters, trans, [M.initial], accepting, names)


def build_d1(F: Fdfa) -> Nfa:
    """Accepts u$v with M(uv) = M(u) and v ∈ L(A^{M(u)})."""
    d = F._cache.get("d1")
    if d is None:
        d = F._cache["d1"] = _build_d(F, False)
    return d


def build_d2(F: Fdfa) -> Nfa:
    """Accepts u$v with M(uv) = M(u) and v ∉ L(A^{M(u)})."""
    d = F._cache.get("d2")
    if d is None:
        d = F._cache["d2"] = _build_d(F, True)
    return d


def up_member(F: Fdfa, w: OmegaWord) -> bool:
    """Does some decomposition of w get accepted by F?"""
    from .dusv import build_dusv

    if not w.letters() <= set(F.alphabet):
        return False
    return nfa_shortest_accepted(product_intersection(build_dusv(w, F.alphabet), build_d1(F))) is not None
