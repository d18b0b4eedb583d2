"""Side-by-side comparison tables rendered as Markdown or CSV.

Renderers only copy the pre-rounded display fields out of each report;
they never round anything themselves, so identical tables always render
to identical bytes.
"""

from __future__ import annotations

import csv
import io
from collections.abc import Sequence
from dataclasses import dataclass

from .metrics import AuthorProfile, IndexReport, full_report

COLUMNS = ("name", "n_papers", "total_citations", "citations_per_paper", "h", "hm")

_MD_LABELS = {
    "name": "Name",
    "n_papers": "N_p",
    "total_citations": "N_c_tot",
    "citations_per_paper": "N_c",
    "h": "h",
    "hm": "HM",
}


@dataclass(frozen=True)
class TableRow:
    """One author's report plus the name it is listed under."""

    name: str
    report: IndexReport


@dataclass(frozen=True)
class ComparisonTable:
    columns: tuple[str, ...]
    rows: tuple[TableRow, ...]


def _sort_value(row: TableRow, column: str):
    if column == "name":
        return row.name
    if column == "n_papers":
        return row.report.n_papers
    if column == "total_citations":
        return row.report.total_citations
    if column == "citations_per_paper":
        return row.report.citations_per_paper
    return row.report.hm_exact


def compare(
    profiles: Sequence[AuthorProfile],
    columns: Sequence[str] = COLUMNS,
    sort: str | None = None,
    descending: bool = False,
) -> ComparisonTable:
    """Build a table with one row per profile, in input or sorted order.

    Sorting is stable (ties keep input order) and uses the exact values,
    not the display-rounded ones. When sorting on h, rows without an h
    always come after every row that has one.
    """
    cols = tuple(columns)
    if not cols:
        raise ValueError("at least one column is required")
    unknown = [c for c in cols if c not in COLUMNS]
    if unknown:
        raise ValueError(f"unknown columns: {', '.join(unknown)}")
    if len(set(cols)) != len(cols):
        raise ValueError("duplicate columns")
    if sort is not None and sort not in cols:
        raise ValueError(f"sort key {sort!r} is not among the selected columns")

    rows = [TableRow(p.name, full_report(p)) for p in profiles]
    if sort == "h":
        with_h = [r for r in rows if r.report.h is not None]
        without_h = [r for r in rows if r.report.h is None]
        with_h.sort(key=lambda r: r.report.h, reverse=descending)
        rows = with_h + without_h
    elif sort is not None:
        rows.sort(key=lambda r: _sort_value(r, sort), reverse=descending)
    return ComparisonTable(columns=cols, rows=tuple(rows))


def _cell(row: TableRow, column: str, missing_h: str) -> str:
    report = row.report
    if column == "name":
        return row.name
    if column == "n_papers":
        return str(report.n_papers)
    if column == "total_citations":
        return str(report.total_citations)
    if column == "citations_per_paper":
        return str(report.citations_per_paper_display)
    if column == "h":
        return str(report.h) if report.h is not None else missing_h
    return str(report.hm_display)


def render_markdown(table: ComparisonTable) -> str:
    """Pipe-delimited Markdown: header, alignment row, one row per report."""

    def md_escape(cell: str) -> str:
        return cell.replace("|", "\\|")

    header = "| " + " | ".join(_MD_LABELS[c] for c in table.columns) + " |"
    align = "| " + " | ".join(
        "---" if c == "name" else "---:" for c in table.columns
    ) + " |"
    lines = [header, align]
    for row in table.rows:
        cells = (md_escape(_cell(row, c, missing_h="-")) for c in table.columns)
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def render_csv(table: ComparisonTable) -> str:
    """CSV with lower_snake_case headers, LF endings, empty field for no h."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_cell(row, c, missing_h="") for c in table.columns])
    return out.getvalue()
