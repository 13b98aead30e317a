# -*- coding: utf-8 -*-
import csv
import io

import pytest
from rich.console import Console

from bench.corpus import CorpusLibrary
from bench.harness import COLUMNS, OVERALL, BenchRow, bench_program, overall_row, render_table, run_bench, write_csv
from conftest import CORPUS_DIR, STRATEGIES


def test_corpus_is_complete(corpus):
    assert corpus.names() == ["evenodd", "fib", "nrev", "qp", "rectoy", "zebra"]
    for entry in corpus:
        assert entry.supports("types-v1") and entry.supports("ground-v1")
        assert entry.entries("types-v1")
        assert len(entry.policy("types-v1")) >= 1


def test_missing_corpus_dir(tmp_path):
    with pytest.raises(FileNotFoundError):
        CorpusLibrary(tmp_path / "nowhere")


def test_empty_corpus(tmp_path):
    library = CorpusLibrary(tmp_path)
    assert len(library) == 0
    assert run_bench(library, STRATEGIES, "types-v1") == []


@pytest.fixture(scope="module")
def rows():
    return run_bench(CorpusLibrary(CORPUS_DIR), STRATEGIES, "types-v1", timing=False)


def test_every_row_succeeds(rows):
    assert len(rows) == 6 * len(STRATEGIES)
    for row in rows:
        assert row.ok, f"{row.program} [{row.strategy}]: {row.error}"
        assert row.trusted
        assert row.rcert_entries <= row.fcert_entries
        assert row.checker_r_arcs <= row.certifier_arcs
        assert row.certify_time is None


def test_some_recursive_program_shrinks(rows):
    assert any(r.rcert_entries < r.fcert_entries for r in rows if r.program in ("rectoy", "fib", "nrev", "evenodd"))


def test_rows_are_deterministic(rows, corpus):
    again = run_bench(corpus, STRATEGIES, "types-v1", jobs=2, timing=False)
    assert again == rows


def test_overall_row_weights_by_checker_arcs():
    first = BenchRow("a", "s", "types-v1", fr_bytes=2.0, rs=1.0, checker_r_arcs=1)
    second = BenchRow("b", "s", "types-v1", fr_bytes=4.0, rs=3.0, checker_r_arcs=3)
    broken = BenchRow("c", "s", "types-v1", error="boom")
    summary = overall_row([first, second, broken], timing=False)
    assert summary.program == OVERALL
    assert summary.fr_bytes == 3.5
    assert summary.rs == 2.5
    assert overall_row([broken], timing=False) is None


def test_failure_becomes_row(corpus):
    row = bench_program(corpus.get("qp"), "textual-fifo", "types-v1", timing=False)
    assert row.ok
    entry = corpus.get("qp")
    broken = type(entry)(entry.name, entry.path.with_name("absent.pl"), domains=entry.domains)
    row = bench_program(broken, "textual-fifo", "types-v1", timing=False)
    assert not row.ok
    assert row.error.startswith("FileNotFoundError")


def test_render_table_without_timing(rows):
    console = Console(file=io.StringIO(), width=240, color_system=None, emoji=False)
    render_table(rows, timing=False, console=console)
    text = console.file.getvalue()
    assert "checker_r_arcs" in text
    assert "certify_time" not in text
    assert OVERALL in text


def test_long_error_keeps_headers(rows):
    broken = BenchRow("broken", "textual-fifo", "types-v1", error="RecomputationRequired: " + "x" * 200)
    console = Console(file=io.StringIO(), width=260, color_system=None, emoji=False)
    render_table(rows + [broken], timing=False, console=console)
    text = console.file.getvalue()
    for column in COLUMNS:
        if not column.endswith("_time"):
            assert column in text


def test_csv(rows, tmp_path):
    path = tmp_path / "bench.csv"
    write_csv(path, rows, timing=False)
    with open(path, newline="", encoding="utf-8") as f:
        table = list(csv.reader(f))
    assert table[0] == COLUMNS
    assert len(table) == len(rows) + 2
    assert table[-1][0] == OVERALL
