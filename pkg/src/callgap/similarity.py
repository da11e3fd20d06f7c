"""Exact- and almost-similarity relations over type-usages.

Two usages are exactly-similar when they share type, context, and call-set;
y is almost-similar to x when y shares type and context, its call-set strictly
contains x's, and it has between 1 and k extra calls (k=1 by default). Both
relations can be relaxed to drop the context-equality condition (type equality
always remains); that mode matches over the per-type index instead of the
(type, context) bucket.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Corpus, TypeUsage


@dataclass(frozen=True)
class SimilarityParams:
    """k = max number of extra calls admitted into almost-similarity (>= 1);
    use_context = require context equality (turning it off is the ablation)."""

    k: int = 1
    use_context: bool = True

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")


@dataclass(frozen=True)
class Query:
    """An external probe: a (type, context, call-set) to match against the
    corpus. ``exclude_id`` omits one corpus usage during matching, which gives
    leave-one-out semantics for degraded queries."""

    type_name: str
    context: str
    calls: frozenset[str]
    exclude_id: str | None = None


@dataclass(frozen=True)
class SimilarityResult:
    """e_count includes the subject itself, so it is always >= 1."""

    e_count: int
    a_ids: tuple[str, ...]


def _candidate_ids(q: Query, corpus: Corpus, p: SimilarityParams) -> list[str]:
    if p.use_context:
        return corpus.bucket(q.type_name, q.context)
    return corpus.type_index.get(q.type_name, [])


def exactly_similar(q: Query, corpus: Corpus, p: SimilarityParams) -> int:
    """|E(q)|: matching corpus usages with an identical call-set, plus one
    for the subject itself."""
    count = 1
    for uid in _candidate_ids(q, corpus, p):
        if uid == q.exclude_id:
            continue
        if corpus.by_id[uid].calls == q.calls:
            count += 1
    return count


def almost_similar(q: Query, corpus: Corpus, p: SimilarityParams) -> list[str]:
    """Ids of A(q): matching usages whose call-set strictly contains q's with
    1..k extra calls, in corpus order."""
    lo = len(q.calls) + 1
    hi = len(q.calls) + p.k
    out = []
    for uid in _candidate_ids(q, corpus, p):
        if uid == q.exclude_id:
            continue
        m = corpus.by_id[uid].calls
        if lo <= len(m) <= hi and q.calls <= m:
            out.append(uid)
    return out


def is_redundant(usage_id: str, corpus: Corpus) -> bool:
    """True iff at least one other usage shares this usage's (type, context)."""
    u = corpus.get(usage_id)
    return len(corpus.bucket(u.type_name, u.context)) >= 2


def query_for(u: TypeUsage) -> Query:
    """Leave-self-out query for an in-corpus usage."""
    return Query(u.type_name, u.context, u.calls, exclude_id=u.id)


def similarity_of(usage_id: str, corpus: Corpus, p: SimilarityParams) -> SimilarityResult:
    """E/A of an in-corpus usage; the subject contributes exactly once to
    e_count (via the explicit +1, never via the index)."""
    q = query_for(corpus.get(usage_id))
    return SimilarityResult(exactly_similar(q, corpus, p), tuple(almost_similar(q, corpus, p)))
