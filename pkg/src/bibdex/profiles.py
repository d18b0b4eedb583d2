"""Citation data ingestion, bundled cohorts, and the file-backed profile store.

Two input formats are understood:

* citation CSV: header line exactly ``paper_id,citations``, then one
  ``<id>,<count>`` row per paper. No quoting, LF line endings.
* profile JSON: ``{"name": ..., "snapshot_date"?: "YYYY-MM-DD",
  "papers": [{"id", "citations"}, ...]}`` or the same with an
  ``"aggregate": {"n_papers", "total_citations", "reported_h"?}`` object
  instead of ``"papers"``. Exactly one of the two variants must appear.

Parsers never crash on arbitrary byte input: anything malformed raises a
ProfileError subclass. The store keeps one JSON file per profile under a
root directory and writes atomically (temp file, then rename), so
concurrent readers never see a torn file and the last writer wins.
"""

from __future__ import annotations

import json
import os
import re
import tempfile
from datetime import date
from enum import Enum
from pathlib import Path

from .metrics import (
    MAX_FIELD_VALUE,
    AggregateData,
    AuthorProfile,
    CitationVector,
    FullData,
)

CSV_HEADER = "paper_id,citations"

_PROFILE_KEYS = {"name", "snapshot_date", "papers", "aggregate"}
_PAPER_KEYS = {"id", "citations"}
_AGGREGATE_KEYS = {"n_papers", "total_citations", "reported_h"}
_DATE_RE = re.compile(r"\d{4}-\d{2}-\d{2}\Z")
_STORE_NAME_RE = re.compile(r"[A-Za-z0-9_-]+\Z")


class ProfileError(Exception):
    """Base for every ingestion and store failure."""


class CsvError(ProfileError):
    """Citation CSV rejected; ``line`` is the 1-based offending line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class CsvFormatError(CsvError):
    """Bad header or malformed row structure."""


class CsvValueError(CsvError):
    """Citation count is not a non-negative decimal integer."""


class DuplicatePaperIdError(CsvError):
    """The same paper_id appears twice."""


class ProfileSchemaError(ProfileError):
    """Profile JSON does not have the required shape."""


class ProfileValueError(ProfileError):
    """Profile JSON has the right shape but an out-of-range or bad value."""


class UnknownCohortError(ProfileError):
    """Requested cohort id is not bundled."""


class ProfileNotFoundError(ProfileError):
    """No stored profile under that name."""


class StoreError(ProfileError):
    """Filesystem failure while reading or writing the store."""


class Cohort(Enum):
    """Bundled demo cohorts."""

    RESEARCHERS = "researchers"
    CTR = "ctr"


# Five synthetic careers with equal total citations: (n_papers, per-paper count).
# Stored as uniform vectors so h is computed rather than asserted.
_RESEARCHERS = ((1, 10000), (10, 1000), (100, 100), (1000, 10), (10000, 1))

# Scopus aggregates for four turbulence researchers, observed 2020-09-30:
# (name, n_papers, total_citations, reported h). The h values come from
# Scopus and cannot be recomputed from the totals.
_CTR = (
    ("Germano", 37, 6235, 9),
    ("Piomelli", 150, 11467, 39),
    ("Moin", 288, 38042, 86),
    ("Cabot", 39, 9128, 21),
)
_CTR_SNAPSHOT = date(2020, 9, 30)


def _decode(text: str | bytes, error: type[ProfileError]) -> str:
    if isinstance(text, bytes):
        try:
            return text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise error(f"input is not valid UTF-8: {exc}") from exc
    return text


def parse_citation_csv(text: str | bytes) -> CitationVector:
    """Parse a citation CSV into a vector, one count per data row."""
    decoded = _decode(text, CsvFormatError)
    lines = decoded.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != CSV_HEADER:
        got = lines[0] if lines else ""
        hint = " (CRLF line endings are not supported)" if got.endswith("\r") else ""
        raise CsvFormatError(
            f"expected header {CSV_HEADER!r}, got {got!r}{hint}", line=1
        )
    counts: list[int] = []
    seen: set[str] = set()
    for lineno, row in enumerate(lines[1:], start=2):
        if row.endswith("\r"):
            raise CsvFormatError("CRLF line endings are not supported", line=lineno)
        parts = row.split(",")
        if len(parts) != 2:
            raise CsvFormatError(
                f"expected '<paper_id>,<citations>', got {row!r}", line=lineno
            )
        paper_id, raw_count = parts
        if not paper_id:
            raise CsvFormatError("empty paper_id", line=lineno)
        if paper_id in seen:
            raise DuplicatePaperIdError(
                f"duplicate paper_id {paper_id!r}", line=lineno
            )
        seen.add(paper_id)
        if not (raw_count.isascii() and raw_count.isdigit()):
            raise CsvValueError(
                f"citations must be a non-negative decimal integer, "
                f"got {raw_count!r}",
                line=lineno,
            )
        count = int(raw_count)
        if count > MAX_FIELD_VALUE:
            raise CsvValueError(
                f"citations must be <= {MAX_FIELD_VALUE}, got {count}", line=lineno
            )
        counts.append(count)
    return CitationVector(tuple(counts))


def _require_int(value: object, label: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ProfileValueError(f"{label} must be an integer, got {value!r}")
    if value < 0:
        raise ProfileValueError(f"{label} must be >= 0, got {value}")
    if value > MAX_FIELD_VALUE:
        raise ProfileValueError(f"{label} must be <= {MAX_FIELD_VALUE}, got {value}")
    return value


def _parse_snapshot_date(raw: object) -> date:
    if not isinstance(raw, str) or not _DATE_RE.match(raw):
        raise ProfileValueError(
            f"snapshot_date must be a 'YYYY-MM-DD' string, got {raw!r}"
        )
    try:
        return date.fromisoformat(raw)
    except ValueError as exc:
        raise ProfileValueError(f"malformed snapshot_date {raw!r}: {exc}") from exc


def _parse_papers(raw: object) -> FullData:
    if not isinstance(raw, list):
        raise ProfileSchemaError("'papers' must be an array")
    counts: list[int] = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict):
            raise ProfileSchemaError(f"papers[{i}] must be an object")
        if set(entry) != _PAPER_KEYS:
            raise ProfileSchemaError(
                f"papers[{i}] must have exactly the keys 'id' and 'citations'"
            )
        if not isinstance(entry["id"], str):
            raise ProfileValueError(f"papers[{i}].id must be a string")
        counts.append(_require_int(entry["citations"], f"papers[{i}].citations"))
    return FullData(CitationVector(tuple(counts)))


def _parse_aggregate(raw: object) -> AggregateData:
    if not isinstance(raw, dict):
        raise ProfileSchemaError("'aggregate' must be an object")
    unknown = set(raw) - _AGGREGATE_KEYS
    if unknown:
        raise ProfileSchemaError(
            f"unknown aggregate keys: {', '.join(sorted(unknown))}"
        )
    missing = {"n_papers", "total_citations"} - set(raw)
    if missing:
        raise ProfileSchemaError(
            f"aggregate requires keys: {', '.join(sorted(missing))}"
        )
    reported_h = None
    if "reported_h" in raw:
        reported_h = _require_int(raw["reported_h"], "aggregate.reported_h")
    return AggregateData(
        n_papers=_require_int(raw["n_papers"], "aggregate.n_papers"),
        total_citations=_require_int(
            raw["total_citations"], "aggregate.total_citations"
        ),
        reported_h=reported_h,
    )


def parse_profile_json(text: str | bytes) -> AuthorProfile:
    """Parse a profile JSON document into an AuthorProfile."""
    decoded = _decode(text, ProfileSchemaError)
    try:
        obj = json.loads(decoded)
    except json.JSONDecodeError as exc:
        raise ProfileSchemaError(f"not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ProfileSchemaError("profile must be a JSON object")
    unknown = set(obj) - _PROFILE_KEYS
    if unknown:
        raise ProfileSchemaError(f"unknown keys: {', '.join(sorted(unknown))}")
    name = obj.get("name")
    if not isinstance(name, str) or not name:
        raise ProfileSchemaError("'name' is required and must be a non-empty string")
    snapshot = None
    if "snapshot_date" in obj:
        snapshot = _parse_snapshot_date(obj["snapshot_date"])
    has_papers = "papers" in obj
    has_aggregate = "aggregate" in obj
    if has_papers == has_aggregate:
        raise ProfileSchemaError(
            "exactly one of 'papers' or 'aggregate' must be present"
        )
    data = _parse_papers(obj["papers"]) if has_papers else _parse_aggregate(
        obj["aggregate"]
    )
    return AuthorProfile(name=name, data=data, snapshot_date=snapshot)


def serialize_profile(profile: AuthorProfile) -> str:
    """Inverse of parse_profile_json. Paper ids are synthesized as p1..pN."""
    if not profile.name:
        raise ProfileValueError("cannot serialize a profile with an empty name")
    obj: dict[str, object] = {"name": profile.name}
    if profile.snapshot_date is not None:
        obj["snapshot_date"] = profile.snapshot_date.isoformat()
    if isinstance(profile.data, FullData):
        obj["papers"] = [
            {"id": f"p{i}", "citations": c}
            for i, c in enumerate(profile.data.vector, start=1)
        ]
    else:
        aggregate: dict[str, int] = {
            "n_papers": profile.data.n_papers,
            "total_citations": profile.data.total_citations,
        }
        if profile.data.reported_h is not None:
            aggregate["reported_h"] = profile.data.reported_h
        obj["aggregate"] = aggregate
    return json.dumps(obj, indent=2) + "\n"


def load_builtin_cohort(cohort: Cohort | str) -> list[AuthorProfile]:
    """Return the profiles of a bundled cohort, in their table order."""
    if isinstance(cohort, str):
        try:
            cohort = Cohort(cohort)
        except ValueError:
            valid = ", ".join(c.value for c in Cohort)
            raise UnknownCohortError(
                f"unknown cohort {cohort!r}; valid cohorts: {valid}"
            ) from None
    if cohort is Cohort.RESEARCHERS:
        return [
            AuthorProfile(
                name=f"Researcher {i}",
                data=FullData(CitationVector((per_paper,) * n_papers)),
            )
            for i, (n_papers, per_paper) in enumerate(_RESEARCHERS, start=1)
        ]
    return [
        AuthorProfile(
            name=name,
            data=AggregateData(n_papers, total, reported_h=h),
            snapshot_date=_CTR_SNAPSHOT,
        )
        for name, n_papers, total, h in _CTR
    ]


class ProfileStore:
    """One JSON file per profile at ``<root>/<name>.json``.

    Names are restricted to ``[A-Za-z0-9_-]+`` so they map safely onto
    file names. Writes go through a temp file plus atomic rename.
    """

    def __init__(self, root: str | Path):
        self.root = Path(root)

    def path_for(self, name: str) -> Path:
        if not _STORE_NAME_RE.match(name):
            raise ProfileValueError(
                f"store names must match [A-Za-z0-9_-]+, got {name!r}"
            )
        return self.root / f"{name}.json"

    def save(self, profile: AuthorProfile) -> Path:
        """Write the profile atomically; an existing one is replaced."""
        path = self.path_for(profile.name)
        text = serialize_profile(profile)
        try:
            self.root.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(
                dir=self.root, prefix=f".{profile.name}.", suffix=".tmp"
            )
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as handle:
                    handle.write(text)
                os.replace(tmp, path)
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise
        except OSError as exc:
            raise StoreError(f"cannot write {path}: {exc}") from exc
        return path

    def load(self, name: str) -> AuthorProfile:
        """Read a stored profile back."""
        path = self.path_for(name)
        try:
            raw = path.read_bytes()
        except FileNotFoundError:
            raise ProfileNotFoundError(
                f"no stored profile named {name!r} in {self.root}"
            ) from None
        except OSError as exc:
            raise StoreError(f"cannot read {path}: {exc}") from exc
        try:
            return parse_profile_json(raw)
        except ProfileError as exc:
            raise ProfileSchemaError(f"corrupt profile file {path}: {exc}") from exc

    def names(self) -> list[str]:
        """Names of every stored profile, sorted."""
        if not self.root.is_dir():
            return []
        return sorted(
            p.stem for p in self.root.glob("*.json") if _STORE_NAME_RE.match(p.stem)
        )
