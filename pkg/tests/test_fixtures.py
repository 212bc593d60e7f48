"""Corpus integrity and golden-file reproduction."""
from __future__ import annotations

import json

from xformlens import (
    FIXTURE_NAMES,
    analyze,
    corpus_dir,
    ignored_table,
    referenced_table,
    render,
    report_to_json,
)

from helpers import (
    RULE_COPY_ALWAYS,
    RULE_COPY_GUARDED,
    RULE_COPY_LAZY,
    RULE_MUTATION_GUARDED,
)


def test_fixture_names_are_stable():
    assert FIXTURE_NAMES == (
        "classInstantiation",
        "enumRemoval",
        "forallRemoval",
        "recordRemoval",
        "uselessIfRemoval",
    )


def test_corpus_dir_contains_all_sources():
    base = corpus_dir()
    assert (base / "pivot.cmm").is_file()
    for name in FIXTURE_NAMES:
        assert (base / f"{name}.tfm").is_file()


def test_corpus_loads_in_declared_order(corpus):
    mm, transformations = corpus
    assert mm.name == "CPPivot"
    assert tuple(t.name for t in transformations) == FIXTURE_NAMES
    assert all(t.source_metamodel == "CPPivot" for t in transformations)
    assert all(t.target_metamodel == "CPPivot" for t in transformations)


def test_corpus_has_no_unknown_concept_findings(reports):
    for report in reports.values():
        assert not [d for d in report.diagnostics if d.kind == "unknown_concept"]


def test_reference_snippets_ship_inside_the_corpus():
    base = corpus_dir()
    ci = (base / "classInstantiation.tfm").read_text(encoding="utf-8")
    er = (base / "enumRemoval.tfm").read_text(encoding="utf-8")
    fr = (base / "forallRemoval.tfm").read_text(encoding="utf-8")
    assert RULE_COPY_ALWAYS in ci
    assert RULE_COPY_GUARDED in fr
    assert RULE_COPY_LAZY in fr
    assert RULE_MUTATION_GUARDED in er


def test_ignored_table_golden_bytes(reports):
    expected = (corpus_dir() / "table2.md").read_text(encoding="utf-8")
    assert render(ignored_table(list(reports.values())), "markdown") == expected


def test_referenced_table_golden_bytes(reports):
    expected = (corpus_dir() / "table3.md").read_text(encoding="utf-8")
    assert render(referenced_table(list(reports.values())), "markdown") == expected


def test_report_golden_bytes(reports):
    for name, report in reports.items():
        path = corpus_dir() / "reports" / f"{name}.json"
        expected = path.read_text(encoding="utf-8")
        assert json.dumps(report_to_json(report), indent=2) + "\n" == expected


def test_fixture_paths_feed_diagnostics(corpus):
    mm, transformations = corpus
    report = analyze(transformations[3], mm, mm)
    assert report.transformation == "recordRemoval"
    assert all(d.file is None for d in report.diagnostics)
    assert transformations[3].source_path.endswith("recordRemoval.tfm")
