import random

import pytest
from hypothesis import given, settings

from lexfst.model import (
    Entry,
    IdentityText,
    InvalidDictionaryError,
    MonodixDictionary,
    Paradigm,
    ParadigmRef,
    Section,
    SymbolTable,
    Tag,
    flip,
    pair_from_text,
    parse_symbols,
)
from lexfst.expand import expand
from lexfst.transducer import (
    Direction,
    LetterTransducer,
    compile_dictionary,
    is_acyclic,
    lookup,
    minimize,
)

from conftest import random_dictionaries
from oracle import agrees, relation


def _strings(results):
    return ["".join(str(s) for s in r) for r in results]


def test_analyzer_plural(analyzer):
    assert _strings(lookup(analyzer, "চকুযুৰি")) == ["চকু<n><pl>"]


def test_generator_plural(generator):
    assert _strings(lookup(generator, parse_symbols("চকু<n><pl>"))) == ["চকুযুৰি"]


def test_zero_suffix_singular(analyzer):
    assert _strings(lookup(analyzer, "মানুহ")) == ["মানুহ<n><sg>"]


def test_homograph_gets_both_analyses(mini, analyzer):
    want = sorted(
        "".join(str(s) for s in p.lexical) for p in expand(mini) if "".join(p.surface) == "জন"
    )
    assert want == ["জন<n><sg>", "জন<np>"]
    assert _strings(lookup(analyzer, "জন")) == want


def test_unknown_word(analyzer):
    assert lookup(analyzer, "qqq") == []
    assert lookup(analyzer, "চক") == []


def test_rl_equals_flipped_lr(mini):
    rl = compile_dictionary(mini, Direction.RL)
    flr = compile_dictionary(flip(mini), Direction.LR)
    assert rl.transitions == flr.transitions
    assert rl.finals == flr.finals


def test_invalid_dictionary_rejected():
    d = MonodixDictionary(sections=(Section("m", (Entry((ParadigmRef("x"),)),)),))
    with pytest.raises(InvalidDictionaryError):
        compile_dictionary(d)


def test_empty_dictionary_gives_empty_transducer():
    t = compile_dictionary(MonodixDictionary())
    assert (t.n_states, t.finals, t.transitions) == (1, frozenset(), ())
    assert lookup(t, "a") == []
    m = minimize(t)
    assert (m.n_states, m.finals, m.transitions) == (1, frozenset(), ())


def test_epsilon_alignment_is_per_segment(mini):
    t = compile_dictionary(mini, Direction.LR)
    table = t.symbols
    labels = {(table[i], table[o]) for _, i, o, _ in t.transitions}
    # zero suffix: epsilon input with tag output; root letters map to themselves
    assert (table[0], Tag("n")) in labels
    assert ("চ", "চ") in labels
    assert not any(isinstance(i, Tag) for i, _ in labels)


def test_symbol_table_order(mini):
    t = compile_dictionary(mini)
    syms = list(t.symbols)
    assert syms[1:9] == [Tag(n) for n in mini.tag_defs]
    chars = syms[9:]
    assert chars == sorted(chars)


def test_minimize_merges_shared_suffixes(mini):
    trie = compile_dictionary(mini, Direction.LR)
    small = minimize(trie)
    assert small.n_states < trie.n_states
    assert small.minimized and not trie.minimized
    for p in expand(mini):
        assert lookup(small, p.surface) == lookup(trie, p.surface)


def test_minimize_single_path_unchanged():
    d = MonodixDictionary(sections=(Section("m", (Entry((pair_from_text("abc", "abc"),)),)),))
    t = compile_dictionary(d)
    assert t.n_states == 4
    assert minimize(t).n_states == 4


def test_minimize_idempotent_on_fixture(analyzer):
    assert minimize(analyzer) == analyzer


def test_minimize_handles_label_nondeterminism():
    table = SymbolTable(["a", "b"])
    # two arcs with the same label out of state 0
    t = LetterTransducer(table, 4, frozenset({2, 3}), ((0, 1, 1, 1), (0, 1, 1, 2), (1, 2, 2, 3)))
    m = minimize(t)
    probes = [(), ("a",), ("a", "b"), ("b",)]
    assert [lookup(m, p) for p in probes] == [lookup(t, p) for p in probes]
    assert m.n_states == 3


def test_minimize_rejects_cycles():
    table = SymbolTable(["a"])
    t = LetterTransducer(table, 2, frozenset({1}), ((0, 1, 1, 1), (1, 1, 1, 0)))
    assert not is_acyclic(t)
    with pytest.raises(ValueError):
        minimize(t)


def test_minimize_trims_dead_states():
    table = SymbolTable(["a", "b"])
    t = LetterTransducer(table, 3, frozenset({1}), ((0, 1, 1, 1), (0, 2, 2, 2)))
    m = minimize(t)
    assert m.n_states == 2
    assert lookup(m, "b") == []


@settings(max_examples=40, deadline=None)
@given(random_dictionaries)
def test_oracle_equivalence(d):
    for direction in Direction:
        t = compile_dictionary(d, direction)
        assert is_acyclic(t)
        assert agrees(t, d, direction, n_random=200) is None
        m = minimize(t)
        assert agrees(m, d, direction, n_random=200) is None
        assert m.n_states <= t.n_states
        assert minimize(m) == m


@settings(max_examples=40, deadline=None)
@given(random_dictionaries)
def test_duality(d):
    an = compile_dictionary(d, Direction.LR, minimize=True)
    gen = compile_dictionary(d, Direction.RL, minimize=True)
    for p in expand(d):
        if p.restriction.value is None:
            assert p.lexical in lookup(an, p.surface)
            assert p.surface in lookup(gen, p.lexical)


@settings(max_examples=40, deadline=None)
@given(random_dictionaries)
def test_rl_behaves_like_flipped_lr(d):
    rl = compile_dictionary(d, Direction.RL)
    flr = compile_dictionary(flip(d), Direction.LR)
    rel = relation(d, Direction.RL)
    for probe in list(rel) + [tuple("ab"), (Tag("n"),)]:
        assert lookup(rl, probe) == lookup(flr, probe)


def test_lookup_results_sorted_by_symbol_ids():
    par = Paradigm("P", (Entry((pair_from_text("", "<b>"),)), Entry((pair_from_text("", "<a>"),))))
    d = MonodixDictionary(tag_defs=("a", "b"), paradigms=(par,),
                          sections=(Section("m", (Entry((IdentityText("x"), ParadigmRef("P"))),)),))
    t = compile_dictionary(d)
    assert _strings(lookup(t, "x")) == ["x<a>", "x<b>"]
