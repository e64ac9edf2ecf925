"""Enumerate the (surface, lexical) pairs a dictionary denotes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .model import (
    Entry,
    IdentityText,
    MonodixDictionary,
    PairItem,
    Paradigm,
    ParadigmCycleError,
    ParadigmRef,
    Restriction,
    Symbol,
    Tag,
    UndefinedParadigmError,
    format_symbols,
)

Segment = tuple[tuple[Symbol, ...], tuple[Symbol, ...]]


@dataclass(frozen=True)
class MorphPair:
    surface: tuple[Symbol, ...]
    lexical: tuple[Symbol, ...]
    restriction: Restriction = Restriction.BIDIRECTIONAL
    lemma: str | None = None

    def format(self) -> str:
        """``surface:lexical``, prefixed ``>`` for LR-only and ``<`` for RL-only pairs."""
        marker = {Restriction.LR: ">", Restriction.RL: "<"}.get(self.restriction, "")
        return f"{marker}{format_symbols(self.surface)}:{format_symbols(self.lexical)}"

    def swapped(self) -> MorphPair:
        return MorphPair(self.lexical, self.surface, self.restriction.flipped(), self.lemma)


def _walk(
    items: Sequence,
    table: Mapping[str, Paradigm],
    restriction: Restriction,
    active: tuple[str, ...],
) -> Iterator[tuple[tuple[Segment, ...], Restriction]]:
    # Depth-first over the item sequence; paradigm references branch.
    if not items:
        yield (), restriction
        return
    head, rest = items[0], items[1:]
    if isinstance(head, ParadigmRef):
        name = head.name
        if name in active:
            raise ParadigmCycleError(active[active.index(name):])
        par = table.get(name)
        if par is None:
            raise UndefinedParadigmError(name)
        for sub in par.entries:
            r = restriction.meet(sub.restriction)
            if r is None:
                continue
            for segs, r2 in _walk(sub.items, table, r, active + (name,)):
                for tail, r3 in _walk(rest, table, r2, active):
                    yield segs + tail, r3
        return
    if isinstance(head, IdentityText):
        seg = (tuple(head.text), tuple(head.text))
    else:
        seg = (head.left, head.right)
    for tail, r in _walk(rest, table, restriction, active):
        yield (seg,) + tail, r


def entry_paths(entry: Entry, paradigms: Mapping[str, Paradigm]):
    """Yield ``(segments, restriction)`` for every path through ``entry``.

    Segments keep the item boundaries, which the compiler uses for alignment.
    """
    yield from _walk(entry.items, paradigms, entry.restriction, ())


def _join(segs: Sequence[Segment]) -> tuple[tuple[Symbol, ...], tuple[Symbol, ...]]:
    left: list[Symbol] = []
    right: list[Symbol] = []
    for l, r in segs:
        left.extend(l)
        right.extend(r)
    return tuple(left), tuple(right)


def iter_expand_entry(entry: Entry, paradigms: Mapping[str, Paradigm]) -> Iterator[MorphPair]:
    for segs, restriction in entry_paths(entry, paradigms):
        surface, lexical = _join(segs)
        yield MorphPair(surface, lexical, restriction, entry.lemma)


def expand_entry(entry: Entry, paradigms: Mapping[str, Paradigm]) -> list[MorphPair]:
    return list(iter_expand_entry(entry, paradigms))


def iter_expand(d: MonodixDictionary) -> Iterator[MorphPair]:
    """Lazily expand every section entry in document order."""
    table = d.paradigm_table
    for entry in d.entries():
        yield from iter_expand_entry(entry, table)


def expand(d: MonodixDictionary) -> list[MorphPair]:
    return list(iter_expand(d))


def first_tag(entry: Entry, paradigms: Mapping[str, Paradigm]) -> Tag | None:
    """The first tag met on the lexical side while expanding ``entry``."""
    for pair in iter_expand_entry(entry, paradigms):
        for sym in pair.lexical:
            if isinstance(sym, Tag):
                return sym
    return None
