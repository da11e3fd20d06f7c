"""Type-usage data model, corpus container with bucket index, and file I/O.

A type-usage is one variable's view of an API: the variable's declared type,
the signature of the enclosing method (its "context"), and the set of methods
invoked on it. A corpus is an immutable collection of type-usages indexed by
(type, context) bucket so that similarity queries touch only one bucket.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable


class CorpusFormatError(ValueError):
    """Raised when a corpus file cannot be parsed."""


@dataclass(frozen=True)
class TypeUsage:
    """One variable's (type, context, call-set) triple.

    ``calls`` may be empty (a variable that is only passed around).
    Constructor invocations appear as the literal name ``<init>`` with no
    special treatment. ``origin`` is a free-form locator (e.g. "File.java:42")
    carried through to reports.
    """

    id: str
    type_name: str
    context: str
    calls: frozenset[str]
    origin: str | None = None


class Corpus:
    """Immutable, ordered collection of type-usages with bucket indexes.

    ``bucket_index`` maps (type_name, context) to the ids sharing that pair;
    ``type_index`` maps type_name alone to ids (used when the context-equality
    condition is switched off). Input order is preserved everywhere and serves
    as the final tie-breaker for deterministic output.
    """

    def __init__(self, usages: Iterable[TypeUsage]):
        self.usages: list[TypeUsage] = list(usages)
        self.by_id: dict[str, TypeUsage] = {}
        self.bucket_index: dict[tuple[str, str], list[str]] = {}
        self.type_index: dict[str, list[str]] = {}
        for u in self.usages:
            if not u.type_name or not u.context:
                raise ValueError(
                    f"usage {u.id!r}: type_name and context must be non-empty"
                )
            if u.id in self.by_id:
                raise ValueError(f"duplicate usage id {u.id!r}")
            self.by_id[u.id] = u
            self.bucket_index.setdefault((u.type_name, u.context), []).append(u.id)
            self.type_index.setdefault(u.type_name, []).append(u.id)

    def __len__(self) -> int:
        return len(self.usages)

    def __iter__(self):
        return iter(self.usages)

    def get(self, usage_id: str) -> TypeUsage:
        try:
            return self.by_id[usage_id]
        except KeyError:
            raise KeyError(f"unknown usage id {usage_id!r}") from None

    def bucket(self, type_name: str, context: str) -> list[str]:
        """Ids of all usages with exactly this (type, context) pair."""
        return self.bucket_index.get((type_name, context), [])

    def n_types(self) -> int:
        return len(self.type_index)

    def n_contexts(self) -> int:
        return len({u.context for u in self.usages})


def _parse_calls(field: str) -> frozenset[str]:
    return frozenset(c.strip() for c in field.split(",") if c.strip())


def parse_corpus(text: str) -> Corpus:
    """Parse the tab-separated corpus line format.

    One record per line: ``id <TAB> type <TAB> context <TAB> calls [<TAB> origin]``.
    Lines starting with ``#`` and blank lines are skipped. An empty id field is
    auto-assigned ``u<ordinal>`` in line order. Duplicate call names collapse
    (calls form a set).
    """
    usages: list[TypeUsage] = []
    id_lines: dict[str, int] = {}
    ordinal = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) not in (4, 5):
            raise CorpusFormatError(
                f"line {lineno}: expected 4 or 5 tab-separated fields, got {len(fields)}"
            )
        ordinal += 1
        uid = fields[0].strip() or f"u{ordinal}"
        type_name = fields[1].strip()
        context = fields[2].strip()
        if not type_name or not context:
            raise CorpusFormatError(f"line {lineno}: empty type or context field")
        if uid in id_lines:
            raise CorpusFormatError(
                f"line {lineno}: duplicate id {uid!r} (first seen on line {id_lines[uid]})"
            )
        id_lines[uid] = lineno
        origin = fields[4].strip() if len(fields) == 5 and fields[4].strip() else None
        usages.append(TypeUsage(uid, type_name, context, _parse_calls(fields[3]), origin))
    return Corpus(usages)


def parse_corpus_jsonl(text: str) -> Corpus:
    """Parse the JSON-lines mirror (keys: id, type, context, calls, origin)."""
    usages: list[TypeUsage] = []
    id_lines: dict[str, int] = {}
    ordinal = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        try:
            rec = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise CorpusFormatError(f"line {lineno}: invalid JSON: {exc}") from None
        if not isinstance(rec, dict):
            raise CorpusFormatError(f"line {lineno}: expected a JSON object")
        ordinal += 1
        uid = str(rec.get("id") or f"u{ordinal}")
        type_name = str(rec.get("type", "")).strip()
        context = str(rec.get("context", "")).strip()
        if not type_name or not context:
            raise CorpusFormatError(f"line {lineno}: empty type or context field")
        if uid in id_lines:
            raise CorpusFormatError(
                f"line {lineno}: duplicate id {uid!r} (first seen on line {id_lines[uid]})"
            )
        id_lines[uid] = lineno
        calls = rec.get("calls", [])
        if not isinstance(calls, list):
            raise CorpusFormatError(f"line {lineno}: 'calls' must be a list")
        origin = rec.get("origin")
        usages.append(
            TypeUsage(uid, type_name, context,
                      frozenset(str(c) for c in calls),
                      str(origin) if origin else None)
        )
    return Corpus(usages)


def write_corpus(corpus: Corpus) -> str:
    """Serialize to the canonical line format, calls sorted lexicographically.

    Round trip preserves everything except call ordering within a record.
    """
    lines = []
    for u in corpus:
        fields = [u.id, u.type_name, u.context, ",".join(sorted(u.calls))]
        if u.origin:
            fields.append(u.origin)
        lines.append("\t".join(fields))
    return "".join(line + "\n" for line in lines)


def load_corpus(path: str) -> Corpus:
    """Read a corpus file, dispatching on extension (.jsonl vs tab format)."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if str(path).endswith(".jsonl"):
        return parse_corpus_jsonl(text)
    return parse_corpus(text)
