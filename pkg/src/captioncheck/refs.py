"""Data-description extraction and time/description pairing.

A data description is a caption word naming chart behavior (a rise, fall,
local max or local min).  Descriptions pair with temporal mentions by
clause-aware token distance; a start-only and an end-only mention attached
to the same description merge into one range.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date

from .lexicon import Lexicon, SimilarityProvider
from .text import Token
from .timeexpr import TimeReference

DEFAULT_SIM_THRESHOLD = 0.7

# Tokens that separate clauses for the distance penalty.
_CLAUSE_MARKS = {",", ";"}
_CONJUNCTIONS = {"and", "but", "or", "nor", "so", "yet"}
_CLAUSE_PENALTY = 3


@dataclass(frozen=True)
class DataDescription:
    """A lexicon-matched keyword: its span, kind and match similarity."""

    span: tuple[int, int]
    kind: str
    matched_keyword: str
    similarity: float
    token_index: int

    def __post_init__(self):
        if not 0.0 <= self.similarity <= 1.0:
            raise ValueError("similarity must lie in [0, 1]")


def extract_data_descriptions(tokens: list[Token], lexicon: Lexicon,
                              sim: SimilarityProvider,
                              threshold: float = DEFAULT_SIM_THRESHOLD) -> list[DataDescription]:
    """Lexicon matches for one sentence's tokens.

    A token qualifies when its lemma equals an entry lemma (similarity 1.0)
    or the provider scores it at or above the threshold against some entry.
    Ties prefer the higher similarity, then earlier lexicon entries.
    """
    out = []
    for idx, tok in enumerate(tokens):
        if not tok.is_word:
            continue
        best = None  # (similarity, entry_order, entry)
        for order, entry in enumerate(lexicon):
            if tok.lemma == entry.lemma:
                score = 1.0
            else:
                score = sim.similarity(tok.lemma, entry.lemma)
                if score < threshold:
                    continue
            if best is None or (score, -order) > (best[0], -best[1]):
                best = (score, order, entry)
        if best is not None:
            score, _, entry = best
            out.append(DataDescription(span=tok.byte_span, kind=entry.kind,
                                       matched_keyword=entry.lemma,
                                       similarity=score, token_index=idx))
    return out


@dataclass(frozen=True)
class ReferencePair:
    """A description joined with one or two time references.

    Two references appear only when complementary start and end mentions
    merged into a single range.  combined_start/combined_end are the outer
    bounds of whatever the pair pins down; open sides stay None.
    """

    description: DataDescription
    times: tuple[TimeReference, ...]
    sentence_index: int = 0

    def __post_init__(self):
        if not 1 <= len(self.times) <= 2:
            raise ValueError("a pair holds one or two time references")

    @property
    def start_window(self) -> tuple[date, date] | None:
        """Unit window bounding the range start, if any mention pins it."""
        for ref in self.times:
            if ref.boundary_role in ("point", "start"):
                return (ref.unit_start, ref.unit_end)
        return None

    @property
    def end_window(self) -> tuple[date, date] | None:
        """Unit window bounding the range end, if any mention pins it."""
        for ref in self.times:
            if ref.boundary_role in ("point", "end"):
                return (ref.unit_start, ref.unit_end)
        return None

    @property
    def combined_start(self) -> date | None:
        w = self.start_window
        return w[0] if w else None

    @property
    def combined_end(self) -> date | None:
        w = self.end_window
        return w[1] if w else None

    @property
    def spans(self) -> tuple[tuple[int, int], ...]:
        """Description span plus time spans, in byte order."""
        all_spans = [self.description.span] + [t.span for t in self.times]
        return tuple(sorted(all_spans))


def _distance(tokens: list[Token], a: tuple[int, int], b: tuple[int, int]) -> int:
    """Clause-aware token distance between two token ranges.

    Token count strictly between the ranges, plus a penalty per clause
    boundary (comma, semicolon, coordinating conjunction) crossed.
    """
    if a[0] > b[0]:
        a, b = b, a
    between = tokens[a[1] + 1 : b[0]]
    dist = len(between)
    for tok in between:
        if tok.text in _CLAUSE_MARKS or tok.text.lower() in _CONJUNCTIONS:
            dist += _CLAUSE_PENALTY
    return dist


def pair_refs(tokens: list[Token], time_refs: list[TimeReference],
              descriptions: list[DataDescription],
              sentence_index: int = 0) -> list[ReferencePair]:
    """Attach each time reference to its nearest description, then merge.

    Assignments are made greedily in order of increasing clause-aware
    distance, so a description's closest unassigned mention wins first.
    Equidistant candidates prefer the description that precedes the
    mention in the text.  Descriptions overlapping a time reference (a
    season "fall", say) are dropped up front; unmatched descriptions and
    mentions are discarded.
    """
    def _overlaps(desc):
        return any(t.span[0] < desc.span[1] and desc.span[0] < t.span[1]
                   for t in time_refs)

    descs = [d for d in descriptions if not _overlaps(d)]
    if not descs or not time_refs:
        return []

    candidates = []
    for ti, tref in enumerate(time_refs):
        for di, desc in enumerate(descs):
            dist = _distance(tokens, tref.token_range,
                             (desc.token_index, desc.token_index))
            precedes = 0 if desc.token_index < tref.token_range[0] else 1
            candidates.append((dist, ti, precedes, di))
    candidates.sort()

    assigned: dict[int, int] = {}  # time index -> description index
    for dist, ti, _, di in candidates:
        if ti not in assigned:
            assigned[ti] = di

    pairs = []
    for di, desc in enumerate(descs):
        attached = [time_refs[ti] for ti in sorted(assigned) if assigned[ti] == di]
        if not attached:
            continue
        starts = [r for r in attached if r.boundary_role == "start"]
        ends = [r for r in attached if r.boundary_role == "end"]
        points = [r for r in attached if r.boundary_role == "point"]
        merged = list(zip(starts, ends))
        for s, e in merged:
            pairs.append(ReferencePair(description=desc, times=(s, e),
                                       sentence_index=sentence_index))
        leftover = starts[len(merged):] + ends[len(merged):] + points
        for ref in leftover:
            pairs.append(ReferencePair(description=desc, times=(ref,),
                                       sentence_index=sentence_index))
    pairs.sort(key=lambda p: (p.description.span, p.times[0].span))
    return pairs
