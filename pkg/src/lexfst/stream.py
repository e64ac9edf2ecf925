"""Analysis and generation over text streams in the ``^surface/lexical$`` format."""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from itertools import groupby
from typing import Container, Iterable, Iterator, Union

from .model import Symbol, Tag, nfc
from .transducer import Direction, LetterTransducer

RESERVED = frozenset("^$/*#\\<>")
_ESCAPE = str.maketrans({c: "\\" + c for c in RESERVED})


def escape(text: str) -> str:
    return text.translate(_ESCAPE)


def unescape(text: str) -> str:
    return re.sub(r"\\(.)", r"\1", text, flags=re.S)


class WordAlphabet:
    """Characters that make up words: the given set plus Unicode letters and marks."""

    def __init__(self, chars: Iterable[str] = ()):
        self.chars = frozenset(chars)

    @classmethod
    def for_transducer(cls, t: LetterTransducer) -> WordAlphabet:
        return cls(c for c in t.characters if c not in RESERVED and not c.isspace())

    def __contains__(self, ch: str) -> bool:
        return ch in self.chars or unicodedata.category(ch)[0] in "LM"


@dataclass(frozen=True)
class WordToken:
    text: str


@dataclass(frozen=True)
class SeparatorRun:
    text: str


StreamToken = Union[WordToken, SeparatorRun]


@dataclass(frozen=True)
class LexicalUnit:
    surface: str
    analyses: tuple[str, ...]

    @property
    def known(self) -> bool:
        return bool(self.analyses)

    def format(self) -> str:
        surface = escape(self.surface)
        if not self.analyses:
            return f"^{surface}/*{surface}$"
        return f"^{surface}/{'/'.join(self.analyses)}$"


def tokenize(text: str, alphabet: Container[str]) -> list[StreamToken]:
    """Split text into maximal word runs and separator runs, losslessly."""
    tokens: list[StreamToken] = []
    for is_word, run in groupby(text, key=alphabet.__contains__):
        chunk = "".join(run)
        tokens.append(WordToken(chunk) if is_word else SeparatorRun(chunk))
    return tokens


def format_lexical(symbols: Iterable[Symbol]) -> str:
    """Render a lexical form for the stream: escaped characters, ``<tag>`` tags."""
    return "".join(str(s) if isinstance(s, Tag) else escape(s) for s in symbols)


def parse_lexical(text: str) -> tuple[Symbol, ...]:
    """Inverse of :func:`format_lexical`."""
    out: list[Symbol] = []
    pos, n = 0, len(text)
    while pos < n:
        ch = text[pos]
        if ch == "\\" and pos + 1 < n:
            out.append(text[pos + 1])
            pos += 2
        elif ch == "<":
            end = text.find(">", pos)
            if end < 0:
                raise ValueError(f"unterminated tag in {text!r}")
            out.append(Tag(text[pos + 1:end]))
            pos = end + 1
        else:
            out.append(ch)
            pos += 1
    return tuple(out)


class Analyzer:
    """Word-level analysis with a bounded cache of formatted results."""

    def __init__(self, transducer: LetterTransducer, cache_size: int = 4096):
        if transducer.direction is not Direction.LR:
            raise ValueError("analysis needs a left-to-right (analyzer) transducer")
        self.transducer = transducer
        self.alphabet = WordAlphabet.for_transducer(transducer)
        table = transducer.symbols
        self._ids = {sym: i for i, sym in enumerate(table) if isinstance(sym, str)}
        self._render = [
            str(s) if isinstance(s, Tag) else escape(s) if isinstance(s, str) else ""
            for s in table
        ]
        self.analyses = lru_cache(maxsize=cache_size)(self._analyses)

    def _analyses(self, word: str) -> tuple[str, ...]:
        ids = self._ids
        try:
            encoded = [ids[ch] for ch in word]
        except KeyError:
            return ()
        render = self._render
        return tuple("".join([render[i] for i in out]) for out in self.transducer.lookup_ids(encoded))

    def unit(self, word: str) -> LexicalUnit:
        return LexicalUnit(word, self.analyses(word))

    def format_word(self, word: str) -> str:
        return self.unit(word).format()

    def iter_analyze(self, chunks: Iterable[str]) -> Iterator[str]:
        """Analyze a stream chunk by chunk; words split across chunks are rejoined."""
        carry = ""
        alphabet = self.alphabet
        for chunk in chunks:
            text = nfc(carry + chunk)
            carry = ""
            tokens = tokenize(text, alphabet)
            if tokens and isinstance(tokens[-1], WordToken):
                carry = tokens.pop().text
            yield "".join(
                self.format_word(tok.text) if isinstance(tok, WordToken) else escape(tok.text)
                for tok in tokens
            )
        if carry:
            yield self.format_word(carry)

    def analyze(self, text: str) -> str:
        return "".join(self.iter_analyze([text]))


def analyze_stream(text: str, analyzer: LetterTransducer) -> str:
    return Analyzer(analyzer).analyze(text)


class MalformedUnit(ValueError):
    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_SCAN = re.compile(
    r"(?P<esc>\\.)"
    r"|\^(?P<unit>(?:\\.|[^\\$^])*)\$"
    r"|(?P<open>\^)"
    r"|(?P<close>\$)"
    r"|(?P<text>[^\\^$]+)"
    r"|(?P<tail>\\)",
    re.S,
)
_SPLIT = re.compile(r"(?<!\\)((?:\\\\)*)/")


def split_unit(body: str) -> list[str]:
    """Split a unit body on unescaped ``/``."""
    parts, start = [], 0
    for m in _SPLIT.finditer(body):
        parts.append(body[start:m.end(1)])
        start = m.end()
    parts.append(body[start:])
    return parts


def _has_tag(component: str) -> bool:
    return any(isinstance(s, Tag) for s in parse_lexical(component))


def unit_lexforms(body: str) -> list[str]:
    """The lexical forms of a unit; a leading tagless surface form is skipped."""
    parts = split_unit(body)
    if len(parts) > 1 and not _has_tag(parts[0]):
        return parts[1:]
    return parts


class Generator:
    def __init__(self, transducer: LetterTransducer):
        if transducer.direction is not Direction.RL:
            raise ValueError("generation needs a right-to-left (generator) transducer")
        self.transducer = transducer

    def generate_form(self, lexform: str) -> str | None:
        """First surface form for an escaped lexical form, or ``None``."""
        try:
            symbols = parse_lexical(nfc(lexform))
        except ValueError:
            return None
        results = self.transducer.lookup(symbols)
        if not results:
            return None
        return "".join(str(s) for s in results[0])

    def render_unit(self, body: str) -> str:
        form = unit_lexforms(body)[0]
        if form.startswith("*"):
            return "*" + unescape(form[1:])
        surface = self.generate_form(form)
        return "#" + form if surface is None else surface

    def iter_generate(self, chunks: Iterable[str]) -> Iterator[str]:
        line, col = 1, 1
        pending = ""
        chunks = iter(chunks)
        done = False
        while not done:
            try:
                pending += next(chunks)
            except StopIteration:
                done = True
            out = []
            pos = 0
            while pos < len(pending):
                m = _SCAN.match(pending, pos)
                kind = m.lastgroup
                if kind in ("open", "tail") and not done:
                    break  # may complete in the next chunk
                if kind == "open":
                    nxt = pending.find("^", pos + 1)
                    why = "nested '^' inside unit" if nxt >= 0 and "$" not in pending[pos:nxt] else "unterminated unit"
                    raise MalformedUnit(why, line, col)
                if kind == "close":
                    raise MalformedUnit("'$' without matching '^'", line, col)
                if kind == "esc":
                    out.append(m.group()[1])
                elif kind == "unit":
                    out.append(self.render_unit(m.group("unit")))
                else:
                    out.append(m.group())
                consumed = m.group()
                newlines = consumed.count("\n")
                if newlines:
                    line += newlines
                    col = len(consumed) - consumed.rfind("\n")
                else:
                    col += len(consumed)
                pos = m.end()
            pending = pending[pos:]
            if out:
                yield "".join(out)

    def generate(self, text: str) -> str:
        return "".join(self.iter_generate([text]))


def generate_stream(annotated: str, generator: LetterTransducer) -> str:
    return Generator(generator).generate(annotated)


def parse_stream(text: str) -> list[Union[str, LexicalUnit]]:
    """Read analysis output back into separators and :class:`LexicalUnit` objects."""
    out: list[Union[str, LexicalUnit]] = []
    line, col = 1, 1
    for m in _SCAN.finditer(text):
        kind = m.lastgroup
        if kind in ("open", "close"):
            raise MalformedUnit("unbalanced unit marker", line, col)
        if kind == "unit":
            parts = split_unit(m.group("unit"))
            surface = unescape(parts[0])
            analyses = tuple(parts[1:])
            if len(analyses) == 1 and analyses[0].startswith("*"):
                analyses = ()
            out.append(LexicalUnit(surface, analyses))
        else:
            piece = m.group()[1] if kind == "esc" else m.group()
            if out and isinstance(out[-1], str):
                out[-1] += piece
            else:
                out.append(piece)
        consumed = m.group()
        if "\n" in consumed:
            line += consumed.count("\n")
            col = len(consumed) - consumed.rfind("\n")
        else:
            col += len(consumed)
    return out
