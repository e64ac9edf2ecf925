"""Read and write the monodix XML dialect."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from xml.parsers import expat
from xml.sax.saxutils import escape, quoteattr

from .model import (
    Entry,
    IdentityText,
    MonodixDictionary,
    PairItem,
    Paradigm,
    ParadigmRef,
    Restriction,
    Section,
    Symbol,
    Tag,
    nfc,
)

# element -> (required attributes, optional attributes)
_ATTRS = {
    "dictionary": ((), ()),
    "alphabet": ((), ()),
    "sdefs": ((), ()),
    "sdef": (("n",), ("c",)),
    "pardefs": ((), ()),
    "pardef": (("n",), ()),
    "section": (("id",), ("type",)),
    "e": ((), ("lm", "r")),
    "i": ((), ()),
    "p": ((), ()),
    "l": ((), ()),
    "r": ((), ()),
    "s": (("n",), ()),
    "par": (("n",), ()),
    "b": ((), ()),
}

# parent -> allowed children
_CHILDREN = {
    None: {"dictionary"},
    "dictionary": {"alphabet", "sdefs", "pardefs", "section"},
    "alphabet": set(),
    "sdefs": {"sdef"},
    "sdef": set(),
    "pardefs": {"pardef"},
    "pardef": {"e"},
    "section": {"e"},
    "e": {"i", "p", "par"},
    "i": {"b"},
    "p": {"l", "r"},
    "l": {"s", "b"},
    "r": {"s", "b"},
    "s": set(),
    "par": set(),
    "b": set(),
}

_TEXT_ALLOWED = {"alphabet", "i", "l", "r"}


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


@dataclass
class _Node:
    tag: str
    attrs: dict
    line: int
    column: int
    children: list = field(default_factory=list)  # _Node or str

    def error(self, message):
        return ParseError(message, self.line, self.column)

    def elements(self):
        return [c for c in self.children if isinstance(c, _Node)]


def _build_tree(data: bytes) -> _Node:
    parser = expat.ParserCreate("UTF-8")
    parser.SetParamEntityParsing(expat.XML_PARAM_ENTITY_PARSING_NEVER)
    root = _Node("#document", {}, 1, 0)
    stack = [root]

    def where():
        return parser.CurrentLineNumber, parser.CurrentColumnNumber + 1

    def start(tag, attrs):
        line, col = where()
        parent = stack[-1]
        ptag = None if parent is root else parent.tag
        if tag not in _ATTRS:
            raise ParseError(f"unknown element <{tag}>", line, col)
        if tag not in _CHILDREN[ptag]:
            raise ParseError(f"element <{tag}> not allowed inside <{ptag}>", line, col)
        required, optional = _ATTRS[tag]
        for name in attrs:
            if name not in required and name not in optional:
                raise ParseError(f"unknown attribute {name!r} on <{tag}>", line, col)
        for name in required:
            if name not in attrs:
                raise ParseError(f"<{tag}> is missing attribute {name!r}", line, col)
        node = _Node(tag, dict(attrs), line, col)
        parent.children.append(node)
        stack.append(node)

    def end(tag):
        stack.pop()

    def text(data):
        node = stack[-1]
        if node.tag in _TEXT_ALLOWED:
            if node.children and isinstance(node.children[-1], str):
                node.children[-1] += data
            else:
                node.children.append(data)
        elif data.strip():
            line, col = where()
            raise ParseError(f"unexpected text {data.strip()!r} inside <{node.tag}>", line, col)

    def forbid_doctype(*args):
        raise ParseError("DOCTYPE declarations are not supported", *where())

    parser.StartElementHandler = start
    parser.EndElementHandler = end
    parser.CharacterDataHandler = text
    parser.StartDoctypeDeclHandler = forbid_doctype
    try:
        parser.Parse(data, True)
    except expat.ExpatError as exc:
        raise ParseError(expat.ErrorString(exc.code), exc.lineno, exc.offset + 1) from None
    if not root.children:
        raise ParseError("empty document", 1, 1)
    return root.children[0]


def _symbols(node: _Node) -> tuple[Symbol, ...]:
    out: list[Symbol] = []
    for child in node.children:
        if isinstance(child, str):
            out.extend(nfc(child))
        elif child.tag == "b":
            out.append(" ")
        else:  # s
            out.append(Tag(child.attrs["n"]))
    return tuple(out)


def _entry(node: _Node) -> Entry:
    r = node.attrs.get("r")
    try:
        restriction = Restriction(r) if r is not None else Restriction.BIDIRECTIONAL
    except ValueError:
        raise node.error(f"invalid restriction r={r!r} (expected LR or RL)") from None
    items = []
    for child in node.elements():
        if child.tag == "i":
            items.append(IdentityText("".join(_symbols(child))))
        elif child.tag == "par":
            items.append(ParadigmRef(nfc(child.attrs["n"])))
        else:
            sides = child.elements()
            if [s.tag for s in sides] != ["l", "r"]:
                raise child.error("<p> must contain exactly <l> followed by <r>")
            items.append(PairItem(_symbols(sides[0]), _symbols(sides[1])))
    lemma = node.attrs.get("lm")
    return Entry(tuple(items), nfc(lemma) if lemma is not None else None, restriction)


def parse_dix(xml: str | bytes) -> MonodixDictionary:
    """Parse dix XML into a :class:`MonodixDictionary` (no validation)."""
    if isinstance(xml, str):
        xml = xml.encode("utf-8")
    root = _build_tree(xml)
    alphabet: set[str] = set()
    seen_alphabet = False
    tag_defs: list[str] = []
    paradigms: list[Paradigm] = []
    sections: list[Section] = []
    for node in root.elements():
        if node.tag == "alphabet":
            if seen_alphabet:
                raise node.error("duplicate <alphabet>")
            seen_alphabet = True
            for chunk in node.children:
                for ch in "".join(chunk.split()):
                    alphabet.update(nfc(ch))
        elif node.tag == "sdefs":
            tag_defs.extend(s.attrs["n"] for s in node.elements())
        elif node.tag == "pardefs":
            for pd in node.elements():
                entries = tuple(_entry(e) for e in pd.elements())
                paradigms.append(Paradigm(nfc(pd.attrs["n"]), entries))
        else:
            entries = tuple(_entry(e) for e in node.elements())
            sections.append(Section(node.attrs["id"], entries, node.attrs.get("type", "standard")))
    return MonodixDictionary(frozenset(alphabet), tuple(tag_defs), tuple(paradigms), tuple(sections))


def read_dix(path: str | Path) -> MonodixDictionary:
    return parse_dix(Path(path).read_bytes())


def _side(symbols) -> str:
    parts = []
    for sym in symbols:
        if isinstance(sym, Tag):
            parts.append(f"<s n={quoteattr(sym.name)}/>")
        elif sym == " ":
            parts.append("<b/>")
        else:
            parts.append(escape(sym))
    return "".join(parts)


def _write_entry(entry: Entry) -> str:
    attrs = ""
    if entry.lemma is not None:
        attrs += f" lm={quoteattr(entry.lemma)}"
    if entry.restriction is not Restriction.BIDIRECTIONAL:
        attrs += f" r={quoteattr(entry.restriction.value)}"
    body = []
    for item in entry.items:
        if isinstance(item, IdentityText):
            body.append(f"<i>{_side(item.text)}</i>")
        elif isinstance(item, ParadigmRef):
            body.append(f"<par n={quoteattr(item.name)}/>")
        else:
            body.append(f"<p><l>{_side(item.left)}</l><r>{_side(item.right)}</r></p>")
    return f"<e{attrs}>{''.join(body)}</e>"


def write_dix(d: MonodixDictionary) -> str:
    """Serialize ``d``; ``parse_dix(write_dix(d)) == d`` for valid dictionaries."""
    out = ['<?xml version="1.0" encoding="UTF-8"?>', "<dictionary>"]
    out.append(f"  <alphabet>{escape(''.join(sorted(d.alphabet)))}</alphabet>")
    if d.tag_defs:
        out.append("  <sdefs>")
        out.extend(f"    <sdef n={quoteattr(n)}/>" for n in d.tag_defs)
        out.append("  </sdefs>")
    else:
        out.append("  <sdefs/>")
    if d.paradigms:
        out.append("  <pardefs>")
        for par in d.paradigms:
            out.append(f"    <pardef n={quoteattr(par.name)}>")
            out.extend(f"      {_write_entry(e)}" for e in par.entries)
            out.append("    </pardef>")
        out.append("  </pardefs>")
    else:
        out.append("  <pardefs/>")
    for section in d.sections:
        head = f"  <section id={quoteattr(section.id)} type={quoteattr(section.type)}"
        if section.entries:
            out.append(head + ">")
            out.extend(f"    {_write_entry(e)}" for e in section.entries)
            out.append("  </section>")
        else:
            out.append(head + "/>")
    out.append("</dictionary>")
    return "\n".join(out) + "\n"
