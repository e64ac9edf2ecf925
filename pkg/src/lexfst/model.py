"""In-memory monodix dictionary: symbols, entries, paradigms and validation."""

from __future__ import annotations

import enum
import re
import unicodedata
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence, Union


class _Epsilon:
    """The empty symbol. There is exactly one instance, ``EPSILON``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "EPSILON"

    def __reduce__(self):
        return (_Epsilon, ())


EPSILON = _Epsilon()

_TAG_NAME = re.compile(r"[^<>\s]+")


@dataclass(frozen=True, order=True)
class Tag:
    """An atomic grammatical symbol such as ``n`` or ``pl``."""

    name: str

    def __str__(self):
        return f"<{self.name}>"


# A character symbol is a one-character ``str``.
Symbol = Union[str, Tag, _Epsilon]


def is_valid_tag_name(name: str) -> bool:
    return bool(_TAG_NAME.fullmatch(name))


def nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


class SymbolTable:
    """Bijection between symbols and 0-based ids; id 0 is always epsilon."""

    def __init__(self, symbols: Iterable[Symbol] = ()):
        self._symbols: list[Symbol] = [EPSILON]
        self._index: dict[Symbol, int] = {EPSILON: 0}
        for sym in symbols:
            self.add(sym)

    def add(self, sym: Symbol) -> int:
        if sym in self._index:
            return self._index[sym]
        if isinstance(sym, str):
            if len(sym) != 1:
                raise ValueError(f"character symbol must be one code point: {sym!r}")
        elif not isinstance(sym, Tag):
            raise TypeError(f"not a symbol: {sym!r}")
        self._index[sym] = len(self._symbols)
        self._symbols.append(sym)
        return self._index[sym]

    def id_of(self, sym: Symbol) -> int | None:
        return self._index.get(sym)

    def __getitem__(self, ident: int) -> Symbol:
        return self._symbols[ident]

    def __len__(self):
        return len(self._symbols)

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self._symbols)

    def __contains__(self, sym):
        return sym in self._index

    def __eq__(self, other):
        if not isinstance(other, SymbolTable):
            return NotImplemented
        return self._symbols == other._symbols

    def __hash__(self):
        return hash(tuple(self._symbols))

    def __repr__(self):
        return f"SymbolTable({self._symbols[1:]!r})"

    @property
    def characters(self) -> frozenset[str]:
        return frozenset(s for s in self._symbols if isinstance(s, str))


class Restriction(enum.Enum):
    BIDIRECTIONAL = None
    LR = "LR"
    RL = "RL"

    def flipped(self) -> Restriction:
        if self is Restriction.LR:
            return Restriction.RL
        if self is Restriction.RL:
            return Restriction.LR
        return self

    def meet(self, other: Restriction) -> Restriction | None:
        """Intersection of two restrictions; ``None`` when they exclude each other."""
        if self is Restriction.BIDIRECTIONAL:
            return other
        if other is Restriction.BIDIRECTIONAL or other is self:
            return self
        return None


@dataclass(frozen=True)
class IdentityText:
    """``<i>`` text: the same characters on both sides."""

    text: str

    @property
    def left(self) -> tuple[Symbol, ...]:
        return tuple(self.text)

    right = left


@dataclass(frozen=True)
class PairItem:
    left: tuple[Symbol, ...]
    right: tuple[Symbol, ...]

    def flipped(self) -> PairItem:
        return PairItem(self.right, self.left)


@dataclass(frozen=True)
class ParadigmRef:
    name: str


EntryItem = Union[IdentityText, PairItem, ParadigmRef]


@dataclass(frozen=True)
class Entry:
    items: tuple[EntryItem, ...]
    lemma: str | None = None
    restriction: Restriction = Restriction.BIDIRECTIONAL

    def paradigm_refs(self) -> Iterator[str]:
        for item in self.items:
            if isinstance(item, ParadigmRef):
                yield item.name


@dataclass(frozen=True)
class Paradigm:
    name: str
    entries: tuple[Entry, ...]


@dataclass(frozen=True)
class Section:
    id: str
    entries: tuple[Entry, ...]
    type: str = "standard"


@dataclass(frozen=True)
class MonodixDictionary:
    """A parsed monodix dictionary.

    ``paradigms`` keeps document order and may hold duplicate names so that
    :func:`validate` can report them; use :attr:`paradigm_table` for lookup.
    """

    alphabet: frozenset[str] = frozenset()
    tag_defs: tuple[str, ...] = ()
    paradigms: tuple[Paradigm, ...] = ()
    sections: tuple[Section, ...] = ()
    _table: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    @property
    def paradigm_table(self) -> Mapping[str, Paradigm]:
        if self._table is None:
            table: dict[str, Paradigm] = {}
            for par in self.paradigms:
                table.setdefault(par.name, par)
            object.__setattr__(self, "_table", table)
        return self._table

    def entries(self) -> Iterator[Entry]:
        for section in self.sections:
            yield from section.entries

    @property
    def n_entries(self) -> int:
        return sum(len(s.entries) for s in self.sections)

    def characters(self) -> set[str]:
        """Alphabet plus every character used in any entry or paradigm."""
        chars = set(self.alphabet)
        for entry in self._all_entries():
            for item in entry.items:
                if isinstance(item, IdentityText):
                    chars.update(item.text)
                elif isinstance(item, PairItem):
                    chars.update(s for s in item.left + item.right if isinstance(s, str))
        return chars

    def _all_entries(self) -> Iterator[Entry]:
        for par in self.paradigms:
            yield from par.entries
        yield from self.entries()


# -- validation -------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str
    location: str
    detail: object = None

    def __str__(self):
        if self.detail is None:
            return f"{self.location}: {self.kind}"
        return f"{self.location}: {self.kind}({self.detail})"


class DictionaryError(ValueError):
    pass


class UndefinedParadigmError(DictionaryError):
    def __init__(self, name):
        super().__init__(f"undefined paradigm {name!r}")
        self.name = name


class ParadigmCycleError(DictionaryError):
    def __init__(self, cycle):
        super().__init__(f"paradigm cycle {' -> '.join(cycle)}")
        self.cycle = list(cycle)


class InvalidDictionaryError(DictionaryError):
    def __init__(self, violations: Sequence[Violation]):
        super().__init__("; ".join(str(v) for v in violations))
        self.violations = list(violations)


def _entry_locations(d: MonodixDictionary) -> Iterator[tuple[str, Entry]]:
    for par in d.paradigms:
        for k, entry in enumerate(par.entries):
            yield f"pardef[{par.name}]/e[{k}]", entry
    for section in d.sections:
        for k, entry in enumerate(section.entries):
            yield f"section[{section.id}]/e[{k}]", entry


def paradigm_graph(d: MonodixDictionary) -> dict[str, list[str]]:
    graph: dict[str, list[str]] = {}
    for par in d.paradigms:
        refs = graph.setdefault(par.name, [])
        for entry in par.entries:
            for name in entry.paradigm_refs():
                if name not in refs:
                    refs.append(name)
    return graph


def find_cycles(graph: Mapping[str, Sequence[str]]) -> list[list[str]]:
    """Distinct elementary cycles met as DFS back edges, each rotated to start at its minimum."""
    white, grey, black = 0, 1, 2
    colour = dict.fromkeys(graph, white)
    cycles: list[list[str]] = []
    seen: set[tuple[str, ...]] = set()

    for root in graph:
        if colour[root] != white:
            continue
        stack = [(root, iter(graph[root]))]
        path = [root]
        colour[root] = grey
        while stack:
            node, children = stack[-1]
            for child in children:
                if child not in graph:
                    continue
                if colour[child] == grey:
                    cyc = path[path.index(child):]
                    k = cyc.index(min(cyc))
                    cyc = cyc[k:] + cyc[:k]
                    if tuple(cyc) not in seen:
                        seen.add(tuple(cyc))
                        cycles.append(cyc)
                elif colour[child] == white:
                    colour[child] = grey
                    stack.append((child, iter(graph[child])))
                    path.append(child)
                    break
            else:
                colour[node] = black
                stack.pop()
                path.pop()
    return cycles


def topological_order(d: MonodixDictionary) -> list[str]:
    """Paradigm names ordered so that every paradigm follows those it references."""
    graph = paradigm_graph(d)
    cycles = find_cycles(graph)
    if cycles:
        raise ParadigmCycleError(cycles[0])
    order: list[str] = []
    done: set[str] = set()

    def visit(name):
        # iterative would be overkill; reference depth is small in practice
        if name in done or name not in graph:
            return
        done.add(name)
        for child in graph[name]:
            visit(child)
        order.append(name)

    for name in graph:
        visit(name)
    return order


def validate(d: MonodixDictionary) -> list[Violation]:
    """Return every invariant violation in ``d``; an empty list means valid."""
    out: list[Violation] = []

    declared: set[str] = set()
    for k, name in enumerate(d.tag_defs):
        loc = f"sdefs/sdef[{k}]"
        if not is_valid_tag_name(name):
            out.append(Violation("InvalidTagName", loc, name))
        if name in declared:
            out.append(Violation("DuplicateTag", loc, name))
        declared.add(name)

    names: set[str] = set()
    for par in d.paradigms:
        loc = f"pardef[{par.name}]"
        if par.name in names:
            out.append(Violation("DuplicateParadigm", loc, par.name))
        names.add(par.name)
        if not par.entries:
            out.append(Violation("EmptyParadigm", loc, par.name))

    for loc, entry in _entry_locations(d):
        if not entry.items:
            out.append(Violation("EmptyEntry", loc))
        for item in entry.items:
            if isinstance(item, ParadigmRef):
                if item.name not in names:
                    out.append(Violation("UndefinedParadigm", loc, item.name))
            elif isinstance(item, PairItem):
                for sym in item.left + item.right:
                    if isinstance(sym, Tag) and sym.name not in declared:
                        out.append(Violation("UndefinedTag", loc, sym.name))

    for cyc in find_cycles(paradigm_graph(d)):
        out.append(Violation("ParadigmCycle", f"pardef[{cyc[0]}]", cyc))
    return out


def check_valid(d: MonodixDictionary) -> MonodixDictionary:
    violations = validate(d)
    if violations:
        raise InvalidDictionaryError(violations)
    return d


# -- flipping ---------------------------------------------------------------


def _flip_entry(entry: Entry) -> Entry:
    items = tuple(i.flipped() if isinstance(i, PairItem) else i for i in entry.items)
    return Entry(items, entry.lemma, entry.restriction.flipped())


def flip(d: MonodixDictionary) -> MonodixDictionary:
    """Exchange the sides of every pair and swap LR/RL restrictions."""
    return MonodixDictionary(
        alphabet=d.alphabet,
        tag_defs=d.tag_defs,
        paradigms=tuple(
            Paradigm(p.name, tuple(_flip_entry(e) for e in p.entries)) for p in d.paradigms
        ),
        sections=tuple(
            Section(s.id, tuple(_flip_entry(e) for e in s.entries), s.type) for s in d.sections
        ),
    )


def pair_from_text(left: str, right: str | Sequence[Symbol]) -> PairItem:
    """Convenience constructor: ``pair_from_text("যুৰি", "<n><pl>")``."""
    r = parse_symbols(right) if isinstance(right, str) else tuple(right)
    return PairItem(parse_symbols(left), r)


def parse_symbols(text: str) -> tuple[Symbol, ...]:
    """Split ``"চকু<n><pl>"`` into characters and tags (no escaping)."""
    out: list[Symbol] = []
    pos = 0
    for m in re.finditer(r"<([^<>]*)>", text):
        out.extend(nfc(text[pos:m.start()]))
        out.append(Tag(m.group(1)))
        pos = m.end()
    out.extend(nfc(text[pos:]))
    return tuple(out)


def format_symbols(symbols: Iterable[Symbol]) -> str:
    return "".join(str(s) for s in symbols if s is not EPSILON)
