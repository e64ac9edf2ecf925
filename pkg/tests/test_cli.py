import subprocess
import sys

import pytest

from lexfst.cli import main
from lexfst.dix import write_dix
from lexfst.synthetic import large_lexicon

from conftest import FIXTURES, MINI_DIX

EVAL_DIR = FIXTURES / "eval"


def run(*args, stdin=""):
    proc = subprocess.run(
        [sys.executable, "-m", "lexfst", *map(str, args)],
        input=stdin.encode("utf-8"),
        capture_output=True,
    )
    return proc.returncode, proc.stdout.decode("utf-8"), proc.stderr.decode("utf-8")


@pytest.fixture(scope="module")
def bins(tmp_path_factory):
    d = tmp_path_factory.mktemp("bins")
    a, g = d / "analyser.bin", d / "generator.bin"
    assert run("comp", "lr", MINI_DIX, a)[0] == 0
    assert run("comp", "rl", MINI_DIX, g)[0] == 0
    return a, g


def test_comp_summary(tmp_path):
    code, out, _ = run("comp", "lr", MINI_DIX, tmp_path / "a.bin")
    assert code == 0
    assert out == "main@4 states:18 transitions:23\n"
    assert (tmp_path / "a.bin").read_bytes()[:4] == b"MFST"


def test_comp_without_minimization(tmp_path):
    code, out, _ = run("comp", "lr", MINI_DIX, tmp_path / "a.bin", "--no-minimize")
    assert code == 0
    assert out.startswith("main@4 states:28 ")


def test_comp_bad_direction():
    assert main(["comp", "xx", "a", "b"]) == 64


def test_unknown_flag_and_missing_command():
    assert main(["stats", "--bogus", str(MINI_DIX)]) == 64
    assert main([]) == 64


def test_comp_parse_error(tmp_path):
    bad = tmp_path / "bad.dix"
    bad.write_text("<dictionary><zzz/></dictionary>", encoding="utf-8")
    code, _, err = run("comp", "lr", bad, tmp_path / "x.bin")
    assert code == 1
    assert "line 1" in err and "zzz" in err


def test_comp_validation_error(tmp_path):
    bad = tmp_path / "bad.dix"
    bad.write_text("<dictionary><section id='m' type='standard'><e><par n='nope'/></e></section></dictionary>")
    assert run("comp", "lr", bad, tmp_path / "x.bin")[0] == 1


def test_comp_io_error(tmp_path):
    assert run("comp", "lr", tmp_path / "missing.dix", tmp_path / "x.bin")[0] == 2


def test_proc_analysis(bins):
    code, out, _ = run("proc", bins[0], stdin="চকুযুৰি\n")
    assert (code, out) == (0, "^চকুযুৰি/চকু<n><pl>$\n")


def test_proc_generation(bins):
    code, out, _ = run("proc", "-g", bins[1], stdin="^চকু<n><pl>$\n")
    assert (code, out) == (0, "চকুযুৰি\n")


def test_proc_empty_stdin(bins):
    assert run("proc", bins[0]) == (0, "", "")


def test_proc_malformed_unit(bins):
    code, _, err = run("proc", "-g", bins[1], stdin="^চকু<n>\n")
    assert code == 1
    assert "line 1, column 1" in err


def test_proc_load_failure(tmp_path):
    junk = tmp_path / "junk.bin"
    junk.write_bytes(b"not a transducer")
    assert run("proc", junk)[0] == 1


def test_proc_pipe_round_trip(bins):
    text = "চকু মানুহবোৰ, জন।\nচকুযুৰি জনবোৰ মানুহ\n"
    _, analysed, _ = run("proc", bins[0], stdin=text)
    code, regenerated, _ = run("proc", "-g", bins[1], stdin=analysed)
    assert code == 0
    assert regenerated == text


def test_proc_files(bins, tmp_path):
    src, dst = tmp_path / "in.txt", tmp_path / "out.txt"
    src.write_text("জন", encoding="utf-8")
    assert run("proc", bins[0], src, dst)[0] == 0
    assert dst.read_text(encoding="utf-8") == "^জন/জন<n><sg>/জন<np>$"


def test_expand_lines():
    code, out, _ = run("expand", MINI_DIX)
    assert code == 0
    assert out.splitlines() == [
        "চকু:চকু<n><sg>", "চকুযুৰি:চকু<n><pl>", "মানুহ:মানুহ<n><sg>", "মানুহবোৰ:মানুহ<n><pl>",
        "জন:জন<n><sg>", "জনবোৰ:জন<n><pl>", "জন:জন<np>",
    ]


def test_stats():
    assert run("stats", MINI_DIX) == (0, "n 3\nnp 1\ntotal 4\n", "")


def test_eval_fixture_counts(bins):
    code, out, _ = run(
        "eval", "--corpus", EVAL_DIR / "corpus.txt", "--gold", EVAL_DIR / "gold.tsv",
        "--fst", bins[0], "--stopwords", EVAL_DIR / "stopwords.txt",
    )
    assert code == 0
    assert out == "Total words\t1120\nCorrectly recognize\t815\nWrongly recognize\t305\nAccuracy\t72.8%\n"


def test_eval_misaligned(bins):
    # without stopword removal the corpus has 1200 tokens against 1120 gold rows
    code, _, err = run("eval", "--corpus", EVAL_DIR / "corpus.txt", "--gold", EVAL_DIR / "gold.tsv", "--fst", bins[0])
    assert code == 1
    assert "token" in err


def test_deterministic_output(bins):
    text = "জন চকু qqq\n" * 5
    assert run("proc", bins[0], stdin=text) == run("proc", bins[0], stdin=text)


def test_stats_large_lexicon(tmp_path):
    path = tmp_path / "t1.dix"
    path.write_text(write_dix(large_lexicon()), encoding="utf-8")
    code, out, _ = run("stats", path)
    assert code == 0
    assert out == "n 22368\nprn 121\nv 1844\nadv 232\ntotal 24565\n"
