"""Seeded random automata for benchmarks and property tests."""
from __future__ import annotations

import random

from .automata import BuchiAutomaton, Dfa
from .fdfa import Fdfa


def random_ba(rng: random.Random, states: int, alphabet=("a", "b"), density=1.3,
              accepting=1) -> BuchiAutomaton:
    """A BA whose states are all reachable from state 0.

    A random spanning tree provides reachability; further transitions are
    added until each letter has about ``density`` transitions per state.
    """
    trans = [dict() for _ in range(states)]

    def add(p, a, q):
        ts = trans[p].get(a, ())
        if q not in ts:
            trans[p][a] = ts + (q,)
            return True
        return False

    for q in range(1, states):
        add(rng.randrange(q), rng.choice(alphabet), q)
    target = round(density * states * len(alphabet))
    have = sum(len(ts) for row in trans for ts in row.values())
    attempts = 0
    while have < target and attempts < 20 * target:
        attempts += 1
        if add(rng.randrange(states), rng.choice(alphabet), rng.randrange(states)):
            have += 1
    acc = rng.sample(range(states), min(accepting, states))
    return BuchiAutomaton(tuple(alphabet), trans, [0], acc)


def random_dfa(rng: random.Random, states: int, alphabet=("a", "b"), accepting_prob=0.0) -> Dfa:
    delta = [{a: rng.randrange(states) for a in alphabet} for _ in range(states)]
    acc = [q for q in range(states) if rng.random() < accepting_prob]
    return Dfa(tuple(alphabet), delta, 0, acc)


def random_fdfa(rng: random.Random, max_leading=3, max_progress=3, alphabet=("a", "b"),
                kind="periodic") -> Fdfa:
    M = random_dfa(rng, rng.randint(1, max_leading), alphabet)
    progress = [random_dfa(rng, rng.randint(1, max_progress), alphabet, 0.5)
                for _ in range(M.num_states)]
    return Fdfa(M, progress, kind)


def random_corpus(n: int, seed: int, max_states=4, alphabet=("a", "b")) -> list:
    """n random BAs with 1..max_states states, reproducible from ``seed``."""
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        k = rng.randint(1, max_states)
        out.append(random_ba(rng, k, alphabet, density=rng.choice([1.0, 1.3, 1.6]),
                             accepting=rng.randint(1, max(1, k // 2))))
    return out
