"""Synthetic dictionaries and corpora for property tests and benchmarks.

Run as ``python -m lexfst.synthetic OUTDIR`` to regenerate the shipped
evaluation corpus under ``OUTDIR``.
"""

from __future__ import annotations

import random
import sys
from pathlib import Path
from typing import Iterator

from .model import (
    Entry,
    IdentityText,
    MonodixDictionary,
    PairItem,
    Paradigm,
    ParadigmRef,
    Restriction,
    Section,
    Tag,
    nfc,
    parse_symbols,
)

RANDOM_ALPHABET = "abcdকখ"
RANDOM_TAGS = ("n", "v", "adj", "sg", "pl", "def", "acc")


def _chars(rng: random.Random, lo: int, hi: int) -> tuple[str, ...]:
    return tuple(rng.choice(RANDOM_ALPHABET) for _ in range(rng.randint(lo, hi)))


def _restriction(rng: random.Random) -> Restriction:
    roll = rng.random()
    if roll < 0.1:
        return Restriction.LR
    if roll < 0.2:
        return Restriction.RL
    return Restriction.BIDIRECTIONAL


def _pair(rng: random.Random) -> PairItem:
    left = _chars(rng, 0, 2)
    right = list(_chars(rng, 0, 2))
    right += [Tag(rng.choice(RANDOM_TAGS)) for _ in range(rng.randint(0, 2))]
    return PairItem(left, tuple(right))


def random_dictionary(
    rng: random.Random, max_roots: int = 50, max_paradigms: int = 5, max_depth: int = 3
) -> MonodixDictionary:
    """A valid random dictionary over a tiny alphabet, so forms collide often.

    Paradigm ``k`` may only reference paradigms ``< k`` whose nesting depth
    leaves room under ``max_depth``, which keeps the reference graph acyclic.
    """
    paradigms: list[Paradigm] = []
    depth: list[int] = []
    for k in range(rng.randint(0, max_paradigms)):
        entries = []
        for _ in range(rng.randint(1, 4)):
            items: list = []
            for _ in range(rng.randint(1, 2)):
                if rng.random() < 0.2:
                    items.append(IdentityText("".join(_chars(rng, 1, 2))))
                else:
                    items.append(_pair(rng))
            refs = [j for j in range(k) if depth[j] < max_depth]
            if refs and rng.random() < 0.4:
                items.append(ParadigmRef(f"P{rng.choice(refs)}"))
            entries.append(Entry(tuple(items), restriction=_restriction(rng)))
        paradigms.append(Paradigm(f"P{k}", tuple(entries)))
        sub = [depth[int(r.name[1:])] for e in entries for r in e.items if isinstance(r, ParadigmRef)]
        depth.append(1 + max(sub, default=0))

    roots = []
    for _ in range(rng.randint(1, max_roots)):
        root = "".join(_chars(rng, 1, 4))
        items: list = [IdentityText(root)]
        if paradigms and rng.random() < 0.8:
            items.append(ParadigmRef(rng.choice(paradigms).name))
        else:
            items.append(_pair(rng))
        roots.append(Entry(tuple(items), lemma=root, restriction=_restriction(rng)))
    return MonodixDictionary(
        alphabet=frozenset(RANDOM_ALPHABET),
        tag_defs=RANDOM_TAGS,
        paradigms=tuple(paradigms),
        sections=(Section("main", tuple(roots)),),
    )


# -- dictionary-scale synthetic lexicon --------------------------------------

CONSONANTS = "কখগঘচছজঝটঠডঢতথদধনপফবভমযৰলৱশষসহ"
VOWEL_SIGNS = ("", "", "া", "ি", "ী", "ু", "ূ", "ে", "ো")
LEXICON_COUNTS = {"n": 22368, "prn": 121, "v": 1844, "adv": 232}
LEXICON_TAGS = ("n", "prn", "v", "adv", "sg", "pl", "gen", "def", "pres", "past")

_SUFFIXES = {
    "n": [("", "<n><sg>"), ("বোৰ", "<n><pl>"), ("ৰ", "<n><sg><gen>"), ("জন", "<n><sg><def>")],
    "prn": [("", "<prn>"), ("ৰ", "<prn><gen>")],
    "v": [("ে", "<v><pres>"), ("িলে", "<v><past>")],
}


def _roots(rng: random.Random, n: int) -> Iterator[str]:
    seen: set[str] = set()
    while len(seen) < n:
        root = nfc("".join(rng.choice(CONSONANTS) + rng.choice(VOWEL_SIGNS) for _ in range(rng.randint(2, 4))))
        if root not in seen:
            seen.add(root)
            yield root


def large_lexicon(counts: dict[str, int] = LEXICON_COUNTS, seed: int = 0) -> MonodixDictionary:
    """Distinct random roots per category; nouns, pronouns and verbs inflect via paradigms."""
    rng = random.Random(seed)
    paradigms = tuple(
        Paradigm(
            f"{cat}_par",
            tuple(Entry((PairItem(tuple(nfc(s)), parse_symbols(t)),)) for s, t in sufs),
        )
        for cat, sufs in _SUFFIXES.items()
    )
    roots = _roots(rng, sum(counts.values()))
    entries = []
    for cat, count in counts.items():
        for _ in range(count):
            root = next(roots)
            if cat in _SUFFIXES:
                items = (IdentityText(root), ParadigmRef(f"{cat}_par"))
            else:
                items = (PairItem(tuple(root), tuple(root) + (Tag(cat),)),)
            entries.append(Entry(items, lemma=root))
    alphabet = frozenset(CONSONANTS + "".join(VOWEL_SIGNS))
    return MonodixDictionary(alphabet, LEXICON_TAGS, paradigms, (Section("main", tuple(entries)),))


def surface_forms(d: MonodixDictionary) -> list[str]:
    from .expand import iter_expand

    return sorted({"".join(p.surface) for p in iter_expand(d) if p.restriction is not Restriction.RL})


def token_stream(forms: list[str], n_tokens: int, seed: int = 0, unknown_rate: float = 0.1) -> Iterator[str]:
    """Lines of text drawing words uniformly from ``forms`` with some unknown words mixed in."""
    rng = random.Random(seed)
    line: list[str] = []
    for k in range(n_tokens):
        if rng.random() < unknown_rate:
            word = "".join(rng.choice(CONSONANTS) for _ in range(rng.randint(2, 5))) + "ো"
        else:
            word = rng.choice(forms)
        line.append(word)
        if len(line) >= 12 or k == n_tokens - 1:
            yield " ".join(line) + rng.choice(["।", ",", "?", ""]) + "\n"
            line = []


# -- evaluation corpus --------------------------------------------------------

EVAL_STOPWORDS = ("মোৰ", "বৰ", "আৰু", "কি", "নাই")
# (surface, gold) pairs the mini dictionary gets right
_KNOWN = [
    ("চকু", "চকু<n><sg>"),
    ("চকুযুৰি", "চকু<n><pl>"),
    ("মানুহ", "মানুহ<n><sg>"),
    ("মানুহবোৰ", "মানুহ<n><pl>"),
    ("জন", "জন<n><sg>"),
    ("জন", "জন<np>"),
    ("জনবোৰ", "জন<n><pl>"),
]
# in-dictionary surfaces whose gold category the dictionary lacks
_MISCATEGORIZED = [("জন", "জন<prn>"), ("মানুহ", "মানুহ<adj>")]
# out-of-dictionary words
_UNKNOWN = [
    ("ভাল", "ভাল<adj>"),
    ("দাম", "দাম<n><sg>"),
    ("খবৰ", "খবৰ<n><sg>"),
    ("বস্তুবোৰৰ", "বস্তু<n><pl><gen>"),
    ("আহিলেনে", "আহ<v><past><q>"),
    ("মালা", "মালা<np>"),
    ("অনল", "অনল<n><sg>"),
    ("তোমালোকৰ", "তোমালোক<prn><gen>"),
    ("মানুহে", "মানুহ<n><sg><erg>"),
    ("মানুহক", "মানুহ<n><sg><acc>"),
    ("ভালকৈ", "ভালকৈ<adv>"),
    ("তোমালৈ", "তুমি<prn><dat>"),
]


def eval_fixture(
    n_correct: int = 815, n_wrong: int = 305, n_stopwords: int = 80, n_miscategorized: int = 25, seed: int = 2014
) -> tuple[str, list[tuple[str, str]], tuple[str, ...]]:
    """Corpus text, aligned gold pairs and stopword list for the mini dictionary."""
    rng = random.Random(seed)
    content = [rng.choice(_KNOWN) for _ in range(n_correct)]
    content += [rng.choice(_MISCATEGORIZED) for _ in range(n_miscategorized)]
    content += [rng.choice(_UNKNOWN) for _ in range(n_wrong - n_miscategorized)]
    rng.shuffle(content)
    # Stopwords go in at random positions; they are dropped by cleaning.
    raw: list[tuple[str, str] | str] = list(content)
    for _ in range(n_stopwords):
        raw.insert(rng.randint(0, len(raw)), rng.choice(EVAL_STOPWORDS))
    lines, line = [], []
    for k, tok in enumerate(raw):
        line.append(tok if isinstance(tok, str) else tok[0])
        if len(line) >= rng.randint(6, 12) or k == len(raw) - 1:
            lines.append(" ".join(line) + rng.choice(["।", "?", ",", "!"]))
            line = []
    return "\n".join(lines) + "\n", content, EVAL_STOPWORDS


def write_eval_fixture(outdir: str | Path) -> None:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    corpus, gold, stopwords = eval_fixture()
    (out / "corpus.txt").write_text(corpus, encoding="utf-8")
    (out / "gold.tsv").write_text("".join(f"{s}\t{e}\n" for s, e in gold), encoding="utf-8")
    (out / "stopwords.txt").write_text("".join(w + "\n" for w in stopwords), encoding="utf-8")


if __name__ == "__main__":
    write_eval_fixture(sys.argv[1] if len(sys.argv) > 1 else "fixtures/eval")
