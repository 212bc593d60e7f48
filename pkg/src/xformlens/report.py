"""Rendering pipeline: analysis reports -> generic tables -> text surfaces.

Every displayed result goes through the Table model first, so Markdown,
HTML, LaTeX, and JSON stay consistent with each other. Concept lists are
always ordered by metamodel declaration order.
"""
from __future__ import annotations

import html
import json
from collections.abc import Sequence
from dataclasses import dataclass

from .analyzer import MODE_ORDER, AnalysisReport, Lint, Mode

FORMATS = ("markdown", "html", "latex", "json")

# Copy/mutation labels list the rarest mode first, as in "lazily, cond."
_MODE_DISPLAY_ORDER = (Mode.LAZILY, Mode.CONDITIONALLY, Mode.ALWAYS)


@dataclass(frozen=True)
class Table:
    title: str
    header: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...] = ()

    def __post_init__(self) -> None:
        for row in self.rows:
            if len(row) != len(self.header):
                raise ValueError(
                    f"row arity {len(row)} does not match header arity "
                    f"{len(self.header)}"
                )


@dataclass(frozen=True)
class ProfileGroup:
    copy_modes: frozenset[Mode]
    mutation_modes: frozenset[Mode]
    concepts: tuple[str, ...]
    rendered_label: str


def mode_set_label(modes: frozenset[Mode]) -> str:
    if not modes:
        return "never"
    return ", ".join(m.label for m in _MODE_DISPLAY_ORDER if m in modes)


def _pair_key(
    copy_modes: frozenset[Mode], mutation_modes: frozenset[Mode]
) -> tuple[int, str, str]:
    return (len(copy_modes), mode_set_label(copy_modes), mode_set_label(mutation_modes))


def _pair_label(copy_modes: frozenset[Mode], mutation_modes: frozenset[Mode]) -> str:
    return f"Copy: {mode_set_label(copy_modes)} / Mutation: {mode_set_label(mutation_modes)}"


def profile_groups(report: AnalysisReport) -> tuple[ProfileGroup, ...]:
    """Group the refined domain by (copy_modes, mutation_modes).

    Concepts outside the refined domain are already reported in the
    ignored table and get no group here.
    """
    buckets: dict[tuple[frozenset[Mode], frozenset[Mode]], list[str]] = {}
    for c in report.source_concepts:
        if c not in report.refined_domain:
            continue
        p = report.profiles[c]
        buckets.setdefault((p.copy_modes, p.mutation_modes), []).append(c)
    groups = [
        ProfileGroup(cm, mm, tuple(cs), _pair_label(cm, mm))
        for (cm, mm), cs in buckets.items()
    ]
    groups.sort(key=lambda g: _pair_key(g.copy_modes, g.mutation_modes))
    return tuple(groups)


def ignored_table(reports: Sequence[AnalysisReport]) -> Table:
    rows = []
    for r in reports:
        rows.append(
            (
                r.transformation,
                ", ".join(c for c in r.source_concepts if c in r.ignored_in),
                ", ".join(c for c in r.target_concepts if c in r.ignored_out),
            )
        )
    return Table(
        "Ignored metaelements",
        ("Transformation", "Ignored in metaelements", "Ignored out metaelements"),
        tuple(rows),
    )


def referenced_table(reports: Sequence[AnalysisReport]) -> Table:
    """One column per distinct profile pair, one row per transformation.

    In each row the unique largest group collapses to "ALL OTHER"; on a
    size tie every group is listed explicitly. Pairs absent from a row
    render as "NONE".
    """
    per_report = [profile_groups(r) for r in reports]
    pairs = sorted(
        {(g.copy_modes, g.mutation_modes) for groups in per_report for g in groups},
        key=lambda pair: _pair_key(*pair),
    )
    header = ("Transformation",) + tuple(_pair_label(*pair) for pair in pairs)

    rows = []
    for r, groups in zip(reports, per_report):
        by_pair = {(g.copy_modes, g.mutation_modes): g for g in groups}
        collapsed = None
        if groups:
            largest = max(len(g.concepts) for g in groups)
            top = [g for g in groups if len(g.concepts) == largest]
            if len(top) == 1:
                collapsed = (top[0].copy_modes, top[0].mutation_modes)
        cells = []
        for pair in pairs:
            group = by_pair.get(pair)
            if group is None:
                cells.append("NONE")
            elif pair == collapsed:
                cells.append("ALL OTHER")
            else:
                cells.append(", ".join(group.concepts))
        rows.append((r.transformation,) + tuple(cells))
    return Table("Referenced metaelements", header, tuple(rows))


def report_table(report: AnalysisReport) -> Table:
    """Per-transformation summary table, diagnostics included."""
    rows = [
        ("source metamodel", report.source_mm),
        ("target metamodel", report.target_mm),
        ("ignored in", ", ".join(c for c in report.source_concepts if c in report.ignored_in)),
        ("ignored out", ", ".join(c for c in report.target_concepts if c in report.ignored_out)),
        ("refined domain", ", ".join(c for c in report.source_concepts if c in report.refined_domain)),
        ("refined codomain", ", ".join(c for c in report.target_concepts if c in report.refined_codomain)),
        ("fixed point candidate", "yes" if report.fixed_point_candidate else "no"),
    ]
    for d in report.diagnostics:
        rows.append(("diagnostic", _lint_text(d)))
    return Table(f"report: {report.transformation}", ("field", "value"), tuple(rows))


def _lint_text(d: Lint) -> str:
    if d.file is not None and d.line is not None:
        return f"{d.file}:{d.line}:{d.column}: {d.kind}: {d.message}"
    return f"{d.kind}: {d.message}"


def render(table: Table, fmt: str) -> str:
    if fmt == "markdown":
        return _render_markdown(table)
    if fmt == "html":
        return _render_html(table)
    if fmt == "latex":
        return _render_latex(table)
    if fmt == "json":
        return _render_json(table)
    raise ValueError(f"unknown format '{fmt}' (expected one of {', '.join(FORMATS)})")


def _render_markdown(table: Table) -> str:
    def row(cells: tuple[str, ...]) -> str:
        return "| " + " | ".join(c.replace("|", "\\|") for c in cells) + " |"

    lines = [f"### {table.title}", ""]
    lines.append(row(table.header))
    lines.append("| " + " | ".join("---" for _ in table.header) + " |")
    lines.extend(row(r) for r in table.rows)
    return "\n".join(lines) + "\n"


def _render_html(table: Table) -> str:
    def row(cells: tuple[str, ...], tag: str) -> str:
        return "<tr>" + "".join(f"<{tag}>{html.escape(c)}</{tag}>" for c in cells) + "</tr>"

    lines = [
        f"<h3>{html.escape(table.title)}</h3>",
        "<table>",
        "<thead>",
        row(table.header, "th"),
        "</thead>",
        "<tbody>",
    ]
    lines.extend(row(r, "td") for r in table.rows)
    lines.extend(["</tbody>", "</table>"])
    return "\n".join(lines) + "\n"


_LATEX_ESCAPES = {
    "\\": r"\textbackslash{}",
    "&": r"\&",
    "%": r"\%",
    "$": r"\$",
    "#": r"\#",
    "_": r"\_",
    "{": r"\{",
    "}": r"\}",
    "~": r"\textasciitilde{}",
    "^": r"\textasciicircum{}",
}


def _latex_escape(s: str) -> str:
    return "".join(_LATEX_ESCAPES.get(ch, ch) for ch in s)


def _render_latex(table: Table) -> str:
    def row(cells: tuple[str, ...]) -> str:
        return "&".join(_latex_escape(c) for c in cells) + "\\\\"

    spec = "|" + "c|" * len(table.header)
    lines = [
        f"% {_latex_escape(table.title)}",
        f"\\begin{{tabular}}{{{spec}}}",
        "\\hline",
        row(table.header),
        "\\hline",
    ]
    for r in table.rows:
        lines.append(row(r))
        lines.append("\\hline")
    lines.append("\\end{tabular}")
    return "\n".join(lines) + "\n"


def _render_json(table: Table) -> str:
    payload = {
        "title": table.title,
        "header": list(table.header),
        "rows": [list(r) for r in table.rows],
    }
    return json.dumps(payload, indent=2) + "\n"


def table_from_json(text: str) -> Table:
    """Inverse of render(..., "json"); raises ValueError on bad input."""
    data = json.loads(text)
    if not isinstance(data, dict):
        raise ValueError("table JSON must be an object")
    for key in ("title", "header", "rows"):
        if key not in data:
            raise ValueError(f"table JSON lacks key '{key}'")
    title, header, rows = data["title"], data["header"], data["rows"]
    if not isinstance(title, str):
        raise ValueError("table title must be a string")
    if not isinstance(header, list) or not all(isinstance(h, str) for h in header):
        raise ValueError("table header must be a list of strings")
    if not isinstance(rows, list) or not all(
        isinstance(r, list) and all(isinstance(c, str) for c in r) for r in rows
    ):
        raise ValueError("table rows must be lists of strings")
    return Table(title, tuple(header), tuple(tuple(r) for r in rows))


def report_to_json(report: AnalysisReport) -> dict:
    """Serialize a report to the documented JSON shape (plain dict)."""

    def modes(values: frozenset[Mode]) -> list[str]:
        return [m.value for m in MODE_ORDER if m in values]

    src = report.source_concepts
    tgt = report.target_concepts
    diagnostics = []
    for d in report.diagnostics:
        entry: dict = {"kind": d.kind, "subject": d.subject, "message": d.message}
        if d.file is not None:
            entry["file"] = d.file
        if d.line is not None:
            entry["line"] = d.line
        if d.column is not None:
            entry["column"] = d.column
        diagnostics.append(entry)
    return {
        "transformation": report.transformation,
        "source_mm": report.source_mm,
        "target_mm": report.target_mm,
        "ignored_in": [c for c in src if c in report.ignored_in],
        "ignored_out": [c for c in tgt if c in report.ignored_out],
        "refined_domain": [c for c in src if c in report.refined_domain],
        "refined_codomain": [c for c in tgt if c in report.refined_codomain],
        "fixed_point_candidate": report.fixed_point_candidate,
        "profiles": [
            {
                "concept": c,
                "copy_modes": modes(p.copy_modes),
                "mutation_modes": modes(p.mutation_modes),
                "produced_as": [n for n in tgt if n in p.produced_as],
            }
            for c, p in report.profiles.items()
        ],
        "diagnostics": diagnostics,
    }
