"""scikit-learn style wrapper: fit on a dictionary, transform words."""

from __future__ import annotations

from pathlib import Path
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .dix import parse_dix, read_dix
from .model import MonodixDictionary, check_valid, nfc
from .stream import Analyzer, parse_lexical
from .transducer import Direction, compile_dictionary


def check_dictionary(X) -> MonodixDictionary:
    """Accept a dictionary object, a path to a .dix file, or dix XML text."""
    if isinstance(X, MonodixDictionary):
        d = X
    elif isinstance(X, Path):
        d = read_dix(X)
    elif isinstance(X, (str, bytes)):
        head = X.lstrip()[:1]
        if head in ("<", b"<"):
            d = parse_dix(X)
        else:
            d = read_dix(X)
    else:
        raise TypeError(f"expected a MonodixDictionary, path or dix text, got {type(X).__name__}")
    return check_valid(d)


def check_words(X) -> list[str]:
    if isinstance(X, (str, bytes)):
        raise TypeError("expected an iterable of strings, got a single string")
    words = list(X)
    for k, w in enumerate(words):
        if not isinstance(w, str):
            raise TypeError(f"element {k} is {type(w).__name__}, expected str")
    return [nfc(w) for w in words]


class MorphTransducer(TransformerMixin, BaseEstimator):
    """Morphological analyzer (``direction="lr"``) or generator (``"rl"``).

    Parameters
    ----------
    direction : {"lr", "rl"}, default="lr"
        ``lr`` maps surface words to lexical forms, ``rl`` the reverse.
    minimize : bool, default=True
        Minimize the compiled transducer.

    Attributes
    ----------
    transducer_ : LetterTransducer
    n_states_ : int
    """

    def __init__(self, direction="lr", minimize=True):
        self.direction = direction
        self.minimize = minimize

    def fit(self, X, y=None):
        d = check_dictionary(X)
        self.transducer_ = compile_dictionary(d, Direction(self.direction), minimize=self.minimize)
        self.n_states_ = self.transducer_.n_states
        return self

    def _results(self, word: str) -> list[str]:
        t = self.transducer_
        if t.direction is Direction.LR:
            return list(self._analyzer.analyses(word))
        try:
            symbols = parse_lexical(word)
        except ValueError:
            return []
        return ["".join(str(s) for s in out) for out in t.lookup(symbols)]

    @property
    def _analyzer(self) -> Analyzer:
        if getattr(self, "_analyzer_cache", None) is None or self._analyzer_cache.transducer is not self.transducer_:
            self._analyzer_cache = Analyzer(self.transducer_)
        return self._analyzer_cache

    def transform(self, X) -> list[list[str]]:
        """All results per input, in deterministic order."""
        check_is_fitted(self, "transducer_")
        return [self._results(w) for w in check_words(X)]

    def predict(self, X) -> list[str | None]:
        """First result per input, ``None`` where there is none."""
        return [r[0] if r else None for r in self.transform(X)]

    def score(self, X, y) -> float:
        """Fraction of inputs whose expected output is among the results."""
        results = self.transform(X)
        expected = check_words(y)
        if len(expected) != len(results):
            raise ValueError(f"X has {len(results)} items, y has {len(expected)}")
        if not results:
            raise ValueError("cannot score zero items")
        return sum(e in r for e, r in zip(expected, results)) / len(results)
