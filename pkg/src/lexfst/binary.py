"""Binary on-disk format for letter transducers.

Layout, little-endian::

    "MFST" u16 version u16 flags
    u32 n_symbols, then per symbol: u8 kind (0 char, 1 tag), u32 len, UTF-8 bytes
    u32 n_states
    u32 n_finals, u32 state ids ascending
    u64 n_transitions, then (u32 source, u32 input, u32 output, u32 target) sorted

Epsilon is symbol id 0 and is not stored. Flag bit 0 marks a minimized
transducer, bit 1 a right-to-left (generator) one.
"""

from __future__ import annotations

import struct
from pathlib import Path

from .model import SymbolTable, Tag
from .transducer import Direction, LetterTransducer

MAGIC = b"MFST"
VERSION = 1
FLAG_MINIMIZED = 1
FLAG_RL = 2


class TransducerFormatError(ValueError):
    pass


class BadMagic(TransducerFormatError):
    pass


class UnsupportedVersion(TransducerFormatError):
    pass


class TruncatedFile(TransducerFormatError):
    pass


class DanglingStateId(TransducerFormatError):
    pass


class DanglingSymbolId(TransducerFormatError):
    pass


def save(t: LetterTransducer) -> bytes:
    flags = (FLAG_MINIMIZED if t.minimized else 0) | (FLAG_RL if t.direction is Direction.RL else 0)
    out = bytearray(MAGIC)
    out += struct.pack("<HH", VERSION, flags)
    symbols = list(t.symbols)[1:]
    out += struct.pack("<I", len(symbols))
    for sym in symbols:
        if isinstance(sym, Tag):
            kind, raw = 1, sym.name.encode("utf-8")
        else:
            kind, raw = 0, sym.encode("utf-8")
        out += struct.pack("<BI", kind, len(raw)) + raw
    out += struct.pack("<I", t.n_states)
    finals = sorted(t.finals)
    out += struct.pack(f"<I{len(finals)}I", len(finals), *finals)
    out += struct.pack("<Q", len(t.transitions))
    for tr in t.transitions:
        out += struct.pack("<4I", *tr)
    return bytes(out)


class _Reader:
    def __init__(self, data: bytes):
        self.data = memoryview(data)
        self.pos = 0

    def take(self, fmt: str):
        size = struct.calcsize(fmt)
        if self.pos + size > len(self.data):
            raise TruncatedFile(f"file ends at byte {len(self.data)}, needed {self.pos + size}")
        values = struct.unpack_from(fmt, self.data, self.pos)
        self.pos += size
        return values

    def raw(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise TruncatedFile(f"file ends at byte {len(self.data)}, needed {self.pos + n}")
        chunk = bytes(self.data[self.pos:self.pos + n])
        self.pos += n
        return chunk


def load(data: bytes) -> LetterTransducer:
    if len(data) < 4 or data[:4] != MAGIC:
        raise BadMagic(f"not a transducer file (magic {bytes(data[:4])!r})")
    rd = _Reader(data)
    rd.raw(4)
    version, flags = rd.take("<HH")
    if version != VERSION:
        raise UnsupportedVersion(f"version {version} (supported: {VERSION})")
    (n_symbols,) = rd.take("<I")
    table = SymbolTable()
    for _ in range(n_symbols):
        kind, length = rd.take("<BI")
        text = rd.raw(length).decode("utf-8")
        if kind == 1:
            sym = Tag(text)
        elif kind == 0:
            sym = text
        else:
            raise TransducerFormatError(f"unknown symbol kind {kind}")
        if sym in table:
            raise TransducerFormatError(f"duplicate symbol {sym!r}")
        table.add(sym)
    (n_states,) = rd.take("<I")
    (n_finals,) = rd.take("<I")
    finals = rd.take(f"<{n_finals}I")
    for q in finals:
        if q >= n_states:
            raise DanglingStateId(f"final state {q} >= state count {n_states}")
    (n_transitions,) = rd.take("<Q")
    if rd.pos + 16 * n_transitions > len(data):
        raise TruncatedFile(f"transition block needs {16 * n_transitions} bytes")
    flat = rd.take(f"<{4 * n_transitions}I")
    transitions = [tuple(flat[k:k + 4]) for k in range(0, len(flat), 4)]
    n_sym = len(table)
    for src, inp, out, tgt in transitions:
        if src >= n_states or tgt >= n_states:
            raise DanglingStateId(f"transition {src}->{tgt} outside {n_states} states")
        if inp >= n_sym or out >= n_sym:
            raise DanglingSymbolId(f"symbol id outside table of {n_sym}")
    if rd.pos != len(data):
        raise TransducerFormatError(f"{len(data) - rd.pos} trailing bytes")
    if n_states == 0:
        raise TransducerFormatError("a transducer has at least the initial state")
    direction = Direction.RL if flags & FLAG_RL else Direction.LR
    return LetterTransducer(
        table, n_states, frozenset(finals), tuple(transitions), direction, bool(flags & FLAG_MINIMIZED)
    )


def write_transducer(t: LetterTransducer, path: str | Path) -> None:
    Path(path).write_bytes(save(t))


def read_transducer(path: str | Path) -> LetterTransducer:
    return load(Path(path).read_bytes())
