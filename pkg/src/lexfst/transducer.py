"""Letter transducers: compilation from dictionaries, lookup, minimization."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .expand import entry_paths
from .model import (
    MonodixDictionary,
    Restriction,
    Symbol,
    SymbolTable,
    Tag,
    check_valid,
)


class Direction(enum.Enum):
    LR = "lr"  # surface -> lexical: the analyzer
    RL = "rl"  # lexical -> surface: the generator

    def admits(self, restriction: Restriction) -> bool:
        if restriction is Restriction.BIDIRECTIONAL:
            return True
        return restriction.value.lower() == self.value


Transition = tuple[int, int, int, int]  # (source, input, output, target)


@dataclass(frozen=True)
class LetterTransducer:
    """An acyclic two-tape automaton; state 0 is initial, symbol id 0 is epsilon.

    ``transitions`` is kept sorted by ``(source, input, output, target)`` so
    that equality is structural.
    """

    symbols: SymbolTable
    n_states: int
    finals: frozenset[int]
    transitions: tuple[Transition, ...]
    direction: Direction = Direction.LR
    minimized: bool = False
    _index: tuple = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        ordered = tuple(sorted(self.transitions))
        object.__setattr__(self, "transitions", ordered)
        object.__setattr__(self, "finals", frozenset(self.finals))

    @classmethod
    def empty(cls, symbols: SymbolTable, direction: Direction, minimized=False):
        return cls(symbols, 1, frozenset(), (), direction, minimized)

    @property
    def n_transitions(self) -> int:
        return len(self.transitions)

    @property
    def characters(self) -> frozenset[str]:
        return self.symbols.characters

    def _lookup_index(self):
        if self._index is None:
            arcs: list[dict[int, list]] = [{} for _ in range(self.n_states)]
            eps: list[list] = [[] for _ in range(self.n_states)]
            for src, inp, out, tgt in self.transitions:
                if inp == 0:
                    eps[src].append((out, tgt))
                else:
                    arcs[src].setdefault(inp, []).append((out, tgt))
            final = [False] * self.n_states
            for q in self.finals:
                final[q] = True
            index = (
                [{k: tuple(v) for k, v in a.items()} for a in arcs],
                [tuple(e) for e in eps],
                final,
            )
            object.__setattr__(self, "_index", index)
        return self._index

    def encode(self, symbols: Iterable[Symbol]) -> tuple[int, ...] | None:
        """Map symbols to ids; ``None`` if any symbol is unknown."""
        ids = []
        for sym in symbols:
            ident = self.symbols.id_of(sym)
            if ident is None:
                return None
            ids.append(ident)
        return tuple(ids)

    def lookup_ids(self, ids: Sequence[int]) -> list[tuple[int, ...]]:
        """All outputs (epsilon-free id tuples) for the input ids, sorted."""
        arcs, eps, final = self._lookup_index()
        n = len(ids)
        results = set()
        stack = [(0, 0, ())]
        pop, push = stack.pop, stack.append
        while stack:
            state, pos, out = pop()
            for o, t in eps[state]:
                push((t, pos, out + (o,) if o else out))
            if pos == n:
                if final[state]:
                    results.add(out)
                continue
            for o, t in arcs[state].get(ids[pos], ()):
                push((t, pos + 1, out + (o,) if o else out))
        return sorted(results)

    def lookup(self, symbols: Iterable[Symbol]) -> list[tuple[Symbol, ...]]:
        ids = self.encode(symbols)
        if ids is None:
            return []
        table = self.symbols
        return [tuple(table[i] for i in out) for out in self.lookup_ids(ids)]


def lookup(t: LetterTransducer, symbols: Iterable[Symbol]) -> list[tuple[Symbol, ...]]:
    return t.lookup(symbols)


def build_symbol_table(d: MonodixDictionary) -> SymbolTable:
    """Epsilon, then declared tags in order, then characters by code point."""
    table = SymbolTable(Tag(name) for name in d.tag_defs)
    for ch in sorted(d.characters()):
        table.add(ch)
    return table


def _path_labels(segments, direction: Direction, table: SymbolTable) -> list[tuple[int, int]]:
    labels = []
    id_of = table.add  # idempotent for known symbols; picks up undeclared ones
    for left, right in segments:
        inp, out = (left, right) if direction is Direction.LR else (right, left)
        ni, no = len(inp), len(out)
        for k in range(max(ni, no)):
            labels.append((id_of(inp[k]) if k < ni else 0, id_of(out[k]) if k < no else 0))
    return labels


def compile_dictionary(
    d: MonodixDictionary, direction: Direction | str = Direction.LR, minimize: bool = False
) -> LetterTransducer:
    """Compile ``d`` into a letter transducer.

    Each pair side is aligned segment by segment, the shorter side padded with
    trailing epsilons, and the label paths are merged into a trie.
    """
    direction = Direction(direction)
    check_valid(d)
    table = build_symbol_table(d)
    children: list[dict[tuple[int, int], int]] = [{}]
    final = [False]
    paradigms = d.paradigm_table
    for entry in d.entries():
        for segments, restriction in entry_paths(entry, paradigms):
            if not direction.admits(restriction):
                continue
            state = 0
            for label in _path_labels(segments, direction, table):
                nxt = children[state].get(label)
                if nxt is None:
                    nxt = len(children)
                    children[state][label] = nxt
                    children.append({})
                    final.append(False)
                state = nxt
            final[state] = True
    transitions = [
        (src, inp, out, tgt)
        for src, arcs in enumerate(children)
        for (inp, out), tgt in arcs.items()
    ]
    finals = frozenset(q for q, f in enumerate(final) if f)
    t = LetterTransducer(table, len(children), finals, tuple(transitions), direction)
    return minimize_transducer(t) if minimize else t


def _determinize(finals, arcs):
    # Subset construction over (input, output) labels.
    start = frozenset([0])
    ids = {start: 0}
    queue = deque([start])
    new_arcs: list[dict] = []
    new_finals = set()
    while queue:
        subset = queue.popleft()
        q = ids[subset]
        while len(new_arcs) <= q:
            new_arcs.append({})
        if subset & finals:
            new_finals.add(q)
        merged: dict[tuple[int, int], set] = {}
        for s in subset:
            for label, targets in arcs[s].items():
                merged.setdefault(label, set()).update(targets)
        for label in sorted(merged):
            tgt = frozenset(merged[label])
            if tgt not in ids:
                ids[tgt] = len(ids)
                queue.append(tgt)
            new_arcs[q][label] = {ids[tgt]}
    while len(new_arcs) < len(ids):
        new_arcs.append({})
    return len(ids), new_finals, new_arcs


def minimize_transducer(t: LetterTransducer) -> LetterTransducer:
    """Minimal deterministic automaton over ``(input, output)`` labels.

    States are renumbered breadth-first from the initial state with arcs in
    label order, so the result is canonical and minimization is idempotent.
    """
    n = t.n_states
    arcs: list[dict[tuple[int, int], set]] = [{} for _ in range(n)]
    deterministic = True
    for src, inp, out, tgt in t.transitions:
        targets = arcs[src].setdefault((inp, out), set())
        targets.add(tgt)
        if len(targets) > 1:
            deterministic = False
    finals = set(t.finals)
    if not deterministic:
        n, finals, arcs = _determinize(finals, arcs)
    delta = [{label: next(iter(ts)) for label, ts in a.items()} for a in arcs]

    # Post-order over states reachable from 0; a grey target means a cycle.
    order: list[int] = []
    colour = [0] * n
    colour[0] = 1
    stack = [(0, iter(delta[0].values()))]
    while stack:
        q, it = stack[-1]
        for r in it:
            if colour[r] == 1:
                raise ValueError("cannot minimize a cyclic transducer")
            if colour[r] == 0:
                colour[r] = 1
                stack.append((r, iter(delta[r].values())))
                break
        else:
            colour[q] = 2
            order.append(q)
            stack.pop()

    # Bottom-up registry of right languages; -1 marks dead (non-coaccessible) states.
    cls = [-1] * n
    register: dict[tuple, int] = {}
    for q in order:
        sig = tuple(sorted((label, cls[r]) for label, r in delta[q].items() if cls[r] >= 0))
        if not sig and q not in finals:
            continue
        key = (q in finals, sig)
        cls[q] = register.setdefault(key, len(register))
    if cls[0] < 0:
        return LetterTransducer.empty(t.symbols, t.direction, minimized=True)

    class_arcs = {c: sig for (_, sig), c in register.items()}
    class_final = {c for (f, _), c in register.items() if f}
    number = {cls[0]: 0}
    queue = deque([cls[0]])
    transitions = []
    while queue:
        c = queue.popleft()
        for (inp, out), d in class_arcs[c]:
            if d not in number:
                number[d] = len(number)
                queue.append(d)
            transitions.append((number[c], inp, out, number[d]))
    new_finals = frozenset(number[c] for c in class_final if c in number)
    return LetterTransducer(t.symbols, len(number), new_finals, tuple(transitions), t.direction, True)


def is_acyclic(t: LetterTransducer) -> bool:
    succ: list[list[int]] = [[] for _ in range(t.n_states)]
    indeg = [0] * t.n_states
    for src, _, _, tgt in t.transitions:
        succ[src].append(tgt)
        indeg[tgt] += 1
    ready = [q for q in range(t.n_states) if indeg[q] == 0]
    seen = 0
    while ready:
        q = ready.pop()
        seen += 1
        for r in succ[q]:
            indeg[r] -= 1
            if indeg[r] == 0:
                ready.append(r)
    return seen == t.n_states


minimize = minimize_transducer
