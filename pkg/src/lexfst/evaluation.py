"""Corpus evaluation: cleaning, gold comparison, and dictionary statistics."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Container, Iterable, Sequence

from .expand import first_tag
from .model import MonodixDictionary, nfc
from .stream import Analyzer, SeparatorRun, WordAlphabet, WordToken, tokenize
from .transducer import LetterTransducer


class EvaluationError(ValueError):
    pass


class AlignmentError(EvaluationError):
    def __init__(self, index, token=None, expected=None):
        if token is None:
            msg = f"corpus and gold differ in length at index {index}"
        else:
            msg = f"token {index}: corpus has {token!r}, gold has {expected!r}"
        super().__init__(msg)
        self.index = index


class EmptyEvaluation(EvaluationError):
    pass


@dataclass(frozen=True)
class CleaningConfig:
    stopwords: frozenset[str] = frozenset()
    strip_delimiters: bool = True
    collapse_whitespace: bool = True

    @classmethod
    def from_file(cls, path: str | Path | None, **flags) -> CleaningConfig:
        if path is None:
            return cls(**flags)
        return cls(frozenset(load_stopwords(path)), **flags)


@dataclass(frozen=True)
class GoldRecord:
    surface: str
    expected: str


@dataclass(frozen=True)
class EvalReport:
    total: int
    correct: int
    wrong: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "wrong", self.total - self.correct)

    @property
    def accuracy(self) -> Decimal:
        """Percentage correct, rounded half-up to one decimal."""
        if self.total == 0:
            raise EmptyEvaluation("accuracy is undefined for zero tokens")
        pct = Decimal(100 * self.correct) / Decimal(self.total)
        return pct.quantize(Decimal("0.1"), rounding=ROUND_HALF_UP)

    def __add__(self, other: EvalReport) -> EvalReport:
        return EvalReport(self.total + other.total, self.correct + other.correct)

    def format(self) -> str:
        return (
            f"Total words\t{self.total}\n"
            f"Correctly recognize\t{self.correct}\n"
            f"Wrongly recognize\t{self.wrong}\n"
            f"Accuracy\t{self.accuracy}%\n"
        )


def load_stopwords(path: str | Path) -> set[str]:
    text = Path(path).read_text(encoding="utf-8")
    return {nfc(line.strip()) for line in text.splitlines() if line.strip()}


def load_gold(path: str | Path) -> list[GoldRecord]:
    records = []
    with open(path, encoding="utf-8", newline="") as fh:
        for row in csv.reader(fh, delimiter="\t", quoting=csv.QUOTE_NONE):
            if not row:
                continue
            if len(row) != 2:
                raise EvaluationError(f"gold line {len(records) + 1}: expected 2 columns, got {len(row)}")
            records.append(GoldRecord(nfc(row[0]), nfc(row[1])))
    return records


def clean_corpus(
    text: str, config: CleaningConfig = CleaningConfig(), alphabet: Container[str] | None = None
) -> list[str]:
    """Tokenize and drop separators and stopwords, keeping order.

    With ``strip_delimiters=False`` punctuation runs are kept as tokens; with
    ``collapse_whitespace=False`` whitespace runs are kept verbatim.
    """
    if alphabet is None:
        alphabet = WordAlphabet()
    out = []
    for tok in tokenize(nfc(text), alphabet):
        if isinstance(tok, WordToken):
            if tok.text not in config.stopwords:
                out.append(tok.text)
            continue
        for piece in _separator_pieces(tok):
            if piece.isspace():
                if not config.collapse_whitespace:
                    out.append(piece)
            elif not config.strip_delimiters:
                out.append(piece)
    return out


def _separator_pieces(tok: SeparatorRun) -> list[str]:
    pieces: list[str] = []
    for ch in tok.text:
        if pieces and pieces[-1][-1].isspace() == ch.isspace():
            pieces[-1] += ch
        else:
            pieces.append(ch)
    return pieces


def evaluate(
    tokens: Sequence[str], gold: Sequence[GoldRecord], analyzer: LetterTransducer | Analyzer
) -> EvalReport:
    """Count tokens whose gold lexical form is among their analyses."""
    if not isinstance(analyzer, Analyzer):
        analyzer = Analyzer(analyzer)
    for k, (tok, rec) in enumerate(zip(tokens, gold)):
        if tok != rec.surface:
            raise AlignmentError(k, tok, rec.surface)
    if len(tokens) != len(gold):
        raise AlignmentError(min(len(tokens), len(gold)))
    if not tokens:
        raise EmptyEvaluation("nothing to evaluate")
    correct = sum(rec.expected in analyzer.analyses(tok) for tok, rec in zip(tokens, gold))
    return EvalReport(len(tokens), correct)


def dict_stats(d: MonodixDictionary) -> dict[str, int]:
    """Section entries per main category (first tag of the expansion).

    Keys follow the declared tag order; entries without any tag are not counted.
    """
    counts: dict[str, int] = {}
    table = d.paradigm_table
    for entry in d.entries():
        tag = first_tag(entry, table)
        if tag is not None:
            counts[tag.name] = counts.get(tag.name, 0) + 1
    order = {name: k for k, name in enumerate(d.tag_defs)}
    return dict(sorted(counts.items(), key=lambda kv: (order.get(kv[0], len(order)), kv[0])))


def format_stats(stats: dict[str, int]) -> str:
    lines = [f"{name} {count}" for name, count in stats.items()]
    lines.append(f"total {sum(stats.values())}")
    return "\n".join(lines) + "\n"


def run_evaluation(
    corpus: str,
    gold: Sequence[GoldRecord],
    analyzer: LetterTransducer,
    config: CleaningConfig = CleaningConfig(),
) -> EvalReport:
    an = Analyzer(analyzer)
    tokens = clean_corpus(corpus, config, an.alphabet)
    return evaluate(tokens, gold, an)


def merge_reports(reports: Iterable[EvalReport]) -> EvalReport:
    total = EvalReport(0, 0)
    for r in reports:
        total = total + r
    return total
