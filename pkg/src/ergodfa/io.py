"""Reading and writing automata.

Two formats are supported.

Text (one automaton per file)::

    n r q0
    <n transition lines>
    <n termination bits>

For a DFA each transition line holds ``r`` space-separated successor ids.
For an NFA it holds ``r`` semicolon-separated fields, each a comma-separated
(possibly empty) list of successor ids.

JSON, the canonical interchange format::

    {"n": 2, "r": 2, "initial": 0,
     "transitions": [[1, 0], [0, 1]], "termination": [0, 1]}

where ``transitions[q][s]`` is an integer for a DFA and a list for an NFA.
"""

from __future__ import annotations

import json
from pathlib import Path

from .automata import Dfa, Nfa
from .errors import InvalidInput


def from_dict(d: dict) -> Nfa:
    """Build an automaton from its JSON form; a :class:`Dfa` when possible."""
    try:
        n, r, q0 = int(d["n"]), int(d["r"]), int(d["initial"])
        rows, phi = d["transitions"], d["termination"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed automaton record: {exc}") from None
    if len(rows) != n:
        raise InvalidInput(f"expected {n} transition rows, got {len(rows)}")
    cells = [[frozenset([c]) if isinstance(c, int) else frozenset(c) for c in row] for row in rows]
    a = Nfa(cells, phi, q0, r)
    return a.to_dfa() if a.is_deterministic() else a


def to_json(a: Nfa) -> str:
    return json.dumps(a.to_dict(), sort_keys=True)


def from_json(text: str) -> Nfa:
    return from_dict(json.loads(text))


def to_text(a: Nfa) -> str:
    lines = [f"{a.n} {a.r} {a.initial}"]
    if isinstance(a, Dfa):
        lines += [" ".join(map(str, row)) for row in a.rows]
    else:
        lines += [";".join(",".join(map(str, sorted(cell))) for cell in row)
                  for row in a.transitions]
    lines.append(" ".join(map(str, a.termination)))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Nfa:
    lines = [ln.strip() for ln in text.strip().splitlines()]
    try:
        n, r, q0 = (int(v) for v in lines[0].split())
    except (IndexError, ValueError):
        raise InvalidInput("first line must be 'n r q0'") from None
    if len(lines) != n + 2:
        raise InvalidInput(f"expected {n + 2} lines, got {len(lines)}")
    rows = []
    for ln in lines[1:n + 1]:
        if ";" in ln or r == 1 and ("," in ln or not ln):
            cells = [frozenset(int(v) for v in f.split(",") if v.strip()) for f in ln.split(";")]
        else:
            cells = [frozenset([int(v)]) for v in ln.split()]
        rows.append(cells)
    phi = [int(v) for v in lines[n + 1].split()]
    a = Nfa(rows, phi, q0, r)
    return a.to_dfa() if a.is_deterministic() else a


def load(path) -> Nfa:
    """Read an automaton, choosing the format from the extension (``.json`` or text)."""
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json" or text.lstrip().startswith("{"):
        return from_json(text)
    return from_text(text)


def save(a: Nfa, path) -> None:
    path = Path(path)
    path.write_text(to_json(a) + "\n" if path.suffix == ".json" else to_text(a))
