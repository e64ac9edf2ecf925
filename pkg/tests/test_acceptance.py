"""Exit criteria, one test per criterion; each records a PASS/FAIL line."""

import random
import struct
import time
import tracemalloc

import pytest

from lexfst.binary import BadMagic, DanglingStateId, TruncatedFile, UnsupportedVersion, load, save
from lexfst.dix import parse_dix, read_dix, write_dix
from lexfst.evaluation import CleaningConfig, dict_stats, format_stats, load_gold, run_evaluation
from lexfst.expand import expand
from lexfst.model import ParadigmRef
from lexfst.stream import Analyzer, analyze_stream, generate_stream
from lexfst.synthetic import random_dictionary, surface_forms, large_lexicon, token_stream
from lexfst.transducer import Direction, compile_dictionary, lookup, minimize

from conftest import ACCEPTANCE_LINES, FIXTURES, MINI_DIX
from oracle import agrees, perturbations, relation

N_DICTS = 200
N_RANDOM = 1000


def record(number, name, ok, detail=""):
    line = f"[AC{number}] {'PASS' if ok else 'FAIL'} {name}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def _depth(d):
    table = d.paradigm_table

    def depth(name):
        refs = [r.name for e in table[name].entries for r in e.items if isinstance(r, ParadigmRef)]
        return 1 + max((depth(r) for r in refs), default=0)

    return max((depth(p.name) for p in d.paradigms), default=0)


@pytest.fixture(scope="module")
def dictionaries():
    ds = [random_dictionary(random.Random(seed)) for seed in range(N_DICTS)]
    for d in ds:
        assert d.n_entries <= 50 and len(d.paradigms) <= 5 and _depth(d) <= 3
    return ds


@pytest.fixture(scope="module")
def compiled(dictionaries):
    return [
        {direction: compile_dictionary(d, direction) for direction in Direction}
        for d in dictionaries
    ]


def test_ac1_example_io():
    start = time.perf_counter()
    d = read_dix(MINI_DIX)
    analysed = analyze_stream("চকুযুৰি", compile_dictionary(d, Direction.LR, minimize=True))
    generated = generate_stream("^চকু<n><pl>$", compile_dictionary(d, Direction.RL, minimize=True))
    elapsed = time.perf_counter() - start
    ok = analysed == "^চকুযুৰি/চকু<n><pl>$" and generated == "চকুযুৰি" and elapsed < 1.0
    record(1, "example I/O reproduction", ok, f"{analysed} | {generated} | {elapsed:.3f}s")


def test_ac2_oracle_equivalence(dictionaries, compiled):
    start = time.perf_counter()
    failures = []
    for seed, (d, ts) in enumerate(zip(dictionaries, compiled)):
        for direction, t in ts.items():
            bad = agrees(t, d, direction, n_random=N_RANDOM, seed=seed)
            if bad is not None:
                failures.append((seed, direction, bad))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60
    record(2, "oracle equivalence", ok, f"{N_DICTS} dictionaries x 2 directions, {len(failures)} disagreements, {elapsed:.1f}s")


def test_ac3_round_trip_duality(dictionaries, compiled):
    checked = failed = 0
    for d, ts in zip(dictionaries, compiled):
        an, gen = ts[Direction.LR], ts[Direction.RL]
        for p in expand(d):
            if p.restriction.value is not None:
                continue
            checked += 1
            if p.lexical not in lookup(an, p.surface) or p.surface not in lookup(gen, p.lexical):
                failed += 1
    record(3, "round-trip duality", failed == 0 and checked > 0, f"{checked} bidirectional pairs, {failed} failures")


def test_ac4_minimization(dictionaries, compiled):
    problems = 0
    for seed, (d, ts) in enumerate(zip(dictionaries, compiled)):
        for direction, t in ts.items():
            m = minimize(t)
            probes = list(relation(d, direction))
            probes += perturbations(random.Random(seed), probes, 200, direction)
            same = all(lookup(m, p) == lookup(t, p) for p in probes)
            if not (same and m.n_states <= t.n_states and minimize(m) == m):
                problems += 1
    record(4, "minimization", problems == 0, f"{2 * N_DICTS} transducers, {problems} problems")


def test_ac5_evaluation_protocol():
    eval_dir = FIXTURES / "eval"
    analyzer = compile_dictionary(read_dix(MINI_DIX), Direction.LR, minimize=True)
    report = run_evaluation(
        (eval_dir / "corpus.txt").read_text(encoding="utf-8"),
        load_gold(eval_dir / "gold.tsv"),
        analyzer,
        CleaningConfig.from_file(eval_dir / "stopwords.txt"),
    )
    print(report.format())
    ok = (report.total, report.correct, report.wrong) == (1120, 815, 305) and f"{report.accuracy}%" == "72.8%"
    record(5, "evaluation protocol (synthetic corpus)", ok,
           f"{report.total}/{report.correct}/{report.wrong}, {report.accuracy}%")


@pytest.fixture(scope="module")
def lexicon():
    return large_lexicon()


def test_ac6_dictionary_statistics(lexicon):
    stats = dict_stats(parse_dix(write_dix(lexicon)))
    want = {"n": 22368, "prn": 121, "v": 1844, "adv": 232}
    ok = stats == want and sum(stats.values()) == 24565
    record(6, "dictionary statistics", ok, format_stats(stats).strip().replace("\n", ", "))


def _peak_bytes(analyzer_t, forms, n_tokens):
    an = Analyzer(analyzer_t)
    tracemalloc.start()
    total = 0
    for chunk in an.iter_analyze(token_stream(forms, n_tokens, seed=7)):
        total += len(chunk)
    _, peak = tracemalloc.get_traced_memory()
    tracemalloc.stop()
    return peak


def test_ac7_throughput_and_constant_memory(lexicon):
    t = compile_dictionary(lexicon, Direction.LR, minimize=True)
    forms = surface_forms(lexicon)
    stream = list(token_stream(forms, 100_000, seed=3))
    an = Analyzer(t)
    start = time.perf_counter()
    for _ in an.iter_analyze(stream):
        pass
    wps = 100_000 / (time.perf_counter() - start)

    peak_short = _peak_bytes(t, forms, 100_000)
    peak_long = _peak_bytes(t, forms, 1_000_000)
    flat = peak_long <= 1.5 * peak_short + 256 * 1024
    record(7, "throughput and constant memory", wps >= 10_000 and flat,
           f"{t.n_states} states, {wps:,.0f} words/s, peak {peak_short:,} B at 100k vs {peak_long:,} B at 1M tokens")


def _corruptions(t):
    data = save(t)
    bad_magic = b"XXXX" + data[4:]
    bad_version = data[:4] + struct.pack("<H", 99) + data[6:]
    truncated = data[:-5]
    dangling = bytearray(data)
    struct.pack_into("<I", dangling, len(data) - 4, t.n_states + 10)
    return [(BadMagic, bad_magic), (UnsupportedVersion, bad_version),
            (TruncatedFile, truncated), (DanglingStateId, bytes(dangling))]


def test_ac8_format_round_trips(dictionaries, compiled, lexicon):
    fixtures = [read_dix(MINI_DIX), lexicon] + dictionaries
    dix_ok = all(parse_dix(write_dix(d)) == d for d in fixtures)
    transducers = [t for ts in compiled for t in ts.values()]
    transducers += [minimize(t) for t in transducers]
    bin_ok = all(load(save(t)) == t for t in transducers)
    rejected = 0
    cases = 0
    for t in transducers:
        if not t.transitions:
            continue
        for error, blob in _corruptions(t):
            cases += 1
            try:
                load(blob)
            except error:
                rejected += 1
            except Exception:
                pass
    ok = dix_ok and bin_ok and rejected == cases
    record(8, "format round trips", ok,
           f"{len(fixtures)} dictionaries, {len(transducers)} transducers, {rejected}/{cases} corruptions rejected")
