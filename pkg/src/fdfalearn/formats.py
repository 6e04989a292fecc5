"""Text formats: RABIT-style ``.ba`` files, the FDFA section format, DOT.

``.ba`` layout::

    [init]
    a,[init]->[q1]
    b,[q1]->[q1]
    [q1]

The first line names the initial state, then come transition lines, then
one line per accepting state. The alphabet is the set of letters used,
sorted, unless an explicit alphabet is supplied.
"""
from __future__ import annotations

import re

from .automata import EPSILON, BuchiAutomaton, Dfa
from .errors import InputError, ParseError

_STATE = re.compile(r"^\[([^\]]+)\]$")
_TRANS = re.compile(r"^([^,\s]+),\[([^\]]+)\]->\[([^\]]+)\]$")


def _parse_block(lines, what):
    lines = [ln.strip() for ln in lines]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError(f"empty {what}")
    m = _STATE.match(lines[0])
    if not m:
        raise ParseError(f"{what}: first line must be the initial state '[id]', got {lines[0]!r}")
    initial = m.group(1)
    ids = [initial]
    seen = {initial}
    transitions = []
    accepting = []
    for ln in lines[1:]:
        t = _TRANS.match(ln)
        s = _STATE.match(ln)
        if t:
            if accepting:
                raise ParseError(f"{what}: transition after accepting-state lines: {ln!r}")
            a, src, dst = t.groups()
            if a == "$":
                raise ParseError(f"{what}: '$' is reserved")
            transitions.append((a, src, dst))
            for q in (src, dst):
                if q not in seen:
                    seen.add(q)
                    ids.append(q)
        elif s:
            q = s.group(1)
            if q not in seen:
                seen.add(q)
                ids.append(q)
            accepting.append(q)
        else:
            raise ParseError(f"{what}: cannot parse line {ln!r}")
    return initial, ids, transitions, accepting


def parse_ba(text: str, alphabet=None) -> BuchiAutomaton:
    initial, ids, transitions, accepting = _parse_block(text.splitlines(), "BA")
    letters = tuple(alphabet) if alphabet else tuple(sorted({a for a, _, _ in transitions}))
    if not letters:
        letters = ("a",)
    index = {q: i for i, q in enumerate(ids)}
    trans = [dict() for _ in ids]
    for a, src, dst in transitions:
        if a not in letters:
            raise ParseError(f"letter {a!r} outside alphabet {letters}")
        row = trans[index[src]]
        if index[dst] not in row.get(a, ()):
            row[a] = row.get(a, ()) + (index[dst],)
    return BuchiAutomaton(letters, trans, [index[initial]], [index[q] for q in accepting], ids)


def parse_dfa(text: str, alphabet=None, what="DFA") -> Dfa:
    initial, ids, transitions, accepting = _parse_block(text.splitlines(), what)
    letters = tuple(alphabet) if alphabet else tuple(sorted({a for a, _, _ in transitions}))
    index = {q: i for i, q in enumerate(ids)}
    delta = [dict() for _ in ids]
    for a, src, dst in transitions:
        row = delta[index[src]]
        if a in row and row[a] != index[dst]:
            raise ParseError(f"{what}: nondeterministic on {a!r} from [{src}]")
        row[a] = index[dst]
    try:
        return Dfa(letters, delta, index[initial], [index[q] for q in accepting], ids)
    except InputError as e:
        raise ParseError(f"{what}: {e}") from None


def _state_id(name) -> str:
    if isinstance(name, tuple) and all(isinstance(x, str) for x in name):
        s = "".join(name)  # a word
    elif isinstance(name, tuple):
        s = "(" + ",".join(_state_id(x) for x in name) + ")"
    else:
        s = str(name)
    s = s.replace("[", "(").replace("]", ")")
    return s if s else "e"


def _unique_ids(names):
    out = []
    used = set()
    for i, n in enumerate(names):
        s = _state_id(n)
        if s in used:
            s = f"{s}#{i}"
        used.add(s)
        out.append(s)
    return out


def print_ba(B: BuchiAutomaton) -> str:
    """Serialise an ε-free BA; several initial states are merged into a
    fresh one that copies their outgoing transitions."""
    if not B.epsilon_free:
        raise InputError("only ε-free automata can be written in .ba format")
    ids = [str(i) for i in range(B.num_states)]
    lines = []
    inits = sorted(B.initial)
    if len(inits) == 1:
        lines.append(f"[{ids[inits[0]]}]")
    else:
        init_id = "init"
        lines.append(f"[{init_id}]")
        for a in B.alphabet:
            targets = sorted({t for q in inits for t in B.successors(q, a)})
            lines.extend(f"{a},[{init_id}]->[{ids[t]}]" for t in targets)
    for q, a, t in B.transitions():
        lines.append(f"{a},[{ids[q]}]->[{ids[t]}]")
    lines.extend(f"[{ids[q]}]" for q in sorted(B.accepting))
    return "\n".join(lines) + "\n"


def print_dfa(A: Dfa, with_accepting=True) -> str:
    ids = [str(i) for i in range(A.num_states)]
    lines = [f"[{ids[A.initial]}]"]
    for q, row in enumerate(A.delta):
        for a in A.alphabet:
            lines.append(f"{a},[{ids[q]}]->[{ids[row[a]]}]")
    if with_accepting:
        lines.extend(f"[{ids[q]}]" for q in sorted(A.accepting))
    return "\n".join(lines) + "\n"


def parse_fdfa(text: str):
    from .fdfa import Fdfa, KINDS

    kind = None
    sections = []
    for raw in text.splitlines():
        ln = raw.strip()
        if not ln or ln.startswith("#"):
            continue
        if ln.startswith("kind:"):
            kind = ln.split(":", 1)[1].strip()
            if kind not in KINDS:
                raise ParseError(f"unknown FDFA kind {kind!r}")
            continue
        if ln == "[leading]" or ln.startswith("[progress "):
            sections.append((ln, []))
            continue
        if not sections:
            raise ParseError(f"line outside any section: {ln!r}")
        sections[-1][1].append(ln)
    if kind is None:
        raise ParseError("missing 'kind:' header")
    lead = [s for s in sections if s[0] == "[leading]"]
    if len(lead) != 1:
        raise ParseError("exactly one [leading] section required")
    letters = set()
    for _, lines in sections:
        for ln in lines:
            m = _TRANS.match(ln)
            if m:
                letters.add(m.group(1))
    alphabet = tuple(sorted(letters))
    leading = parse_dfa("\n".join(lead[0][1]), alphabet, "leading automaton")
    if leading.accepting:
        raise ParseError("leading automaton must have no accepting states")
    progress = {}
    for head, lines in sections:
        if head == "[leading]":
            continue
        sid = head[len("[progress "):-1].strip()
        if sid not in leading.names:
            raise ParseError(f"progress section for unknown leading state {sid!r}")
        progress[leading.names.index(sid)] = parse_dfa("\n".join(lines), alphabet, f"progress {sid}")
    missing = [leading.names[q] for q in range(leading.num_states) if q not in progress]
    if missing:
        raise ParseError(f"missing progress automata for {missing}")
    return Fdfa(leading, [progress[q] for q in range(leading.num_states)], kind)


def print_fdfa(F) -> str:
    out = [f"kind: {F.kind}", "[leading]", print_dfa(F.leading, with_accepting=False).rstrip()]
    for q, A in enumerate(F.progress):
        out.append(f"[progress {q}]")
        out.append(print_dfa(A).rstrip())
    return "\n".join(out) + "\n"


def to_dot(A, title="automaton") -> str:
    """DOT rendering of a Dfa, Nfa or BuchiAutomaton."""
    names = _unique_ids(A.names)
    lines = [f'digraph "{title}" {{', "  rankdir=LR;", '  node [shape=circle];']
    inits = [A.initial] if isinstance(A, Dfa) else sorted(A.initial)
    for q, name in enumerate(names):
        shape = "doublecircle" if q in A.accepting else "circle"
        lines.append(f'  {q} [label="{name}", shape={shape}];')
    for i, q in enumerate(inits):
        lines.append(f'  init{i} [shape=point]; init{i} -> {q};')
    edges = {}
    if isinstance(A, Dfa):
        triples = ((q, a, t) for q, row in enumerate(A.delta) for a, t in row.items())
    else:
        triples = A.transitions()
    for q, a, t in triples:
        edges.setdefault((q, t), []).append("ε" if a is EPSILON else a)
    for (q, t), labels in edges.items():
        lines.append(f'  {q} -> {t} [label="{",".join(labels)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
