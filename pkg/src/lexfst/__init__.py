"""Paradigm-based morphological dictionaries compiled to letter transducers."""

from .binary import load, read_transducer, save, write_transducer
from .dix import ParseError, parse_dix, read_dix, write_dix
from .evaluation import CleaningConfig, EvalReport, GoldRecord, clean_corpus, dict_stats, evaluate
from .expand import MorphPair, expand, expand_entry
from .model import (
    EPSILON,
    Entry,
    IdentityText,
    MonodixDictionary,
    PairItem,
    Paradigm,
    ParadigmRef,
    Restriction,
    Section,
    SymbolTable,
    Tag,
    flip,
    validate,
)
from .stream import analyze_stream, generate_stream, tokenize
from .transducer import Direction, LetterTransducer, compile_dictionary, lookup, minimize

__version__ = "0.1.0"


def __getattr__(name):
    # sklearn is only imported when the estimator is asked for
    if name == "MorphTransducer":
        from .estimator import MorphTransducer

        return MorphTransducer
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
