"""Grounding caption references in the data and diagnosing inconsistencies.

Each reference pair is grounded to concrete series points (extreme values
inside its time windows), checked for factual direction errors, and matched
against the chart's most prominent features.  References that ground but
match no top feature become emphasis-mismatch diagnostics; references whose
claimed direction contradicts the data become factual-error diagnostics.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import date

from .chart import ChartSpec, TimeSeries, clip, detect_granularity, normalize
from .lexicon import Lexicon, LexiconSimilarity, SimilarityProvider
from .prominence import ChartFeature, enumerate_features, point_persistence
from .refs import (DEFAULT_SIM_THRESHOLD, ReferencePair,
                   extract_data_descriptions, pair_refs)
from .text import analyze
from .timeexpr import extract_time_refs

MATCH_IOU_NUM = 19   # trend match threshold 19/20 = 0.95, kept as integers
MATCH_IOU_DEN = 20


@dataclass(frozen=True)
class PointTarget:
    index: int


@dataclass(frozen=True)
class TrendTarget:
    start: int
    end: int

    def __post_init__(self):
        if self.start >= self.end:
            raise ValueError("a trend target needs start < end")


@dataclass(frozen=True)
class GroundedReference:
    """A reference pair resolved to chart points (or found unresolvable)."""

    pair: ReferencePair
    target: PointTarget | TrendTarget | None
    factual_error: bool = False
    note: str | None = None

    @property
    def kind(self) -> str:
        return self.pair.description.kind


def _window_indices(series: TimeSeries, lo: date | None, hi: date | None) -> list[int]:
    out = []
    for i, (t, _) in enumerate(series.points):
        if (lo is None or t >= lo) and (hi is None or t <= hi):
            out.append(i)
    return out


def _argmax(series: TimeSeries, indices: list[int]) -> int:
    best = indices[0]
    for i in indices[1:]:
        if series.points[i][1] > series.points[best][1]:
            best = i  # strict: ties keep the earliest point
    return best


def _argmin(series: TimeSeries, indices: list[int]) -> int:
    best = indices[0]
    for i in indices[1:]:
        if series.points[i][1] < series.points[best][1]:
            best = i
    return best


_OUT_OF_CHART = "the mentioned time lies outside the charted range"


def resolve_point(series: TimeSeries, kind: str,
                  window: tuple[date | None, date | None]) -> PointTarget | None:
    """Extreme point inside a window: argmax for localMax, argmin for localMin."""
    indices = _window_indices(series, window[0], window[1])
    if not indices:
        return None
    pick = _argmax(series, indices) if kind == "localMax" else _argmin(series, indices)
    return PointTarget(index=pick)


def resolve_trend(series: TimeSeries, kind: str,
                  start_window: tuple[date, date] | None,
                  end_window: tuple[date, date] | None) -> TrendTarget | str:
    """Trend endpoints from per-bound candidate windows.

    A known bound's candidates are the points inside its unit window; an
    unknown start takes every point before the end window and an unknown
    end every point after the start window.  A rise runs argmin to argmax,
    a fall argmax to argmin; ties pick the earliest point.  Returns an
    explanatory string when no valid trend exists.
    """
    if start_window is None and end_window is None:
        return "the reference pins down no time bound"
    if start_window is not None:
        start_cands = _window_indices(series, start_window[0], start_window[1])
    else:
        start_cands = [i for i in range(len(series))
                       if series.points[i][0] < end_window[0]]
    if end_window is not None:
        end_cands = _window_indices(series, end_window[0], end_window[1])
    else:
        end_cands = [i for i in range(len(series))
                     if series.points[i][0] > start_window[1]]
    if not start_cands or not end_cands:
        return _OUT_OF_CHART

    pick_start = _argmin if kind == "rise" else _argmax
    pick_end = _argmax if kind == "rise" else _argmin
    s = pick_start(series, start_cands)
    e = pick_end(series, end_cands)
    if s < e:
        return TrendTarget(start=s, end=e)
    # Overlapping windows can invert the picks; constrain one side and retry.
    later_ends = [i for i in end_cands if i > s]
    if later_ends:
        return TrendTarget(start=s, end=pick_end(series, later_ends))
    earlier_starts = [i for i in start_cands if i < e]
    if earlier_starts:
        return TrendTarget(start=pick_start(series, earlier_starts), end=e)
    return "the mentioned window is too narrow to hold the described trend"


def ground(pair: ReferencePair, series: TimeSeries) -> GroundedReference:
    """Resolve one reference pair against the clipped series."""
    kind = pair.description.kind
    if kind in ("localMax", "localMin"):
        target = resolve_point(series, kind, (pair.combined_start, pair.combined_end))
        if target is None:
            return GroundedReference(pair=pair, target=None, note=_OUT_OF_CHART)
        return GroundedReference(pair=pair, target=target)
    result = resolve_trend(series, kind, pair.start_window, pair.end_window)
    if isinstance(result, str):
        return GroundedReference(pair=pair, target=None, note=result)
    return GroundedReference(pair=pair, target=result)


def check_factual(ref: GroundedReference, series: TimeSeries) -> bool:
    """True when a trend reference contradicts the data direction.

    Only strict contradictions count: a rise whose end value is below its
    start, or a fall whose end is above its start.  Point references are
    never factual errors.
    """
    if not isinstance(ref.target, TrendTarget):
        return False
    y_start = series.points[ref.target.start][1]
    y_end = series.points[ref.target.end][1]
    if ref.kind == "rise":
        return y_end < y_start
    if ref.kind == "fall":
        return y_end > y_start
    return False


def _trend_iou_matches(feature: ChartFeature, target: TrendTarget) -> bool:
    a0, a1 = feature.start, feature.end
    b0, b1 = target.start, target.end
    inter = max(0, min(a1, b1) - max(a0, b0) + 1)
    union = (a1 - a0 + 1) + (b1 - b0 + 1) - inter
    return MATCH_IOU_DEN * inter >= MATCH_IOU_NUM * union


def match_features(refs: list[GroundedReference],
                   features: list[ChartFeature]) -> list[ChartFeature | None]:
    """Highest-ranked feature each grounded reference lines up with.

    Points must hit the identical vertex; trends must cover at least 95%
    of the union of covered points.  Factual-error and unresolved
    references never match.
    """
    out: list[ChartFeature | None] = []
    for ref in refs:
        match = None
        if ref.target is not None and not ref.factual_error:
            for feat in features:  # features arrive in rank order
                if isinstance(ref.target, PointTarget):
                    if feat.kind == "point" and feat.index == ref.target.index:
                        match = feat
                        break
                else:
                    if feat.kind == "trend" and _trend_iou_matches(feat, ref.target):
                        match = feat
                        break
        out.append(match)
    return out


@dataclass(frozen=True)
class Diagnostic:
    """One caption problem: kind, the byte spans involved, and a message."""

    kind: str                            # "factual" | "mismatch"
    spans: tuple[tuple[int, int], ...]
    message: str

    @property
    def hull(self) -> tuple[int, int]:
        """Single byte range covering every span of the diagnostic."""
        return (min(s[0] for s in self.spans), max(s[1] for s in self.spans))


@dataclass(frozen=True)
class CheckResult:
    """Everything a caption check produces, JSON-serializable and stable."""

    features: tuple[ChartFeature, ...]
    matched: tuple[bool, ...]                      # parallel to features
    references: tuple[GroundedReference, ...]      # resolved references only
    palettes: tuple[int, ...]                      # parallel to references
    diagnostics: tuple[Diagnostic, ...]
    all_references: tuple[GroundedReference, ...]  # includes unresolved ones
    sentence_spans: tuple[tuple[int, int], ...]

    def to_json_dict(self) -> dict:
        feats = []
        for feat, hit in zip(self.features, self.matched):
            d = feat.to_json_dict()
            d["matched"] = hit
            feats.append(d)
        refs = []
        for ref, palette in zip(self.references, self.palettes):
            if isinstance(ref.target, PointTarget):
                target = {"kind": "point", "index": ref.target.index}
            else:
                target = {"kind": "trend", "start": ref.target.start,
                          "end": ref.target.end}
            refs.append({
                "span": list(ref.pair.description.span),
                "timeSpans": [list(t.span) for t in ref.pair.times],
                "target": target,
                "factualError": ref.factual_error,
                "palette": palette,
            })
        return {
            "features": feats,
            "references": refs,
            "diagnostics": [{"kind": d.kind, "spans": [list(s) for s in d.spans],
                             "message": d.message} for d in self.diagnostics],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(", ", ": "))


def _describe_window(pair: ReferencePair) -> str:
    lo, hi = pair.combined_start, pair.combined_end
    if lo and hi:
        return f"{lo.isoformat()} to {hi.isoformat()}"
    if lo:
        return f"from {lo.isoformat()}"
    if hi:
        return f"until {hi.isoformat()}"
    return "an unspecified time"


def check(series: TimeSeries, spec: ChartSpec, caption: str,
          lexicon: Lexicon | None = None, sim: SimilarityProvider | None = None,
          sim_threshold: float = DEFAULT_SIM_THRESHOLD) -> CheckResult:
    """Full caption-against-chart consistency check.

    Clips and normalizes the series, ranks its prominent features, parses
    the caption into grounded references, and emits factual-error and
    emphasis-mismatch diagnostics.  Deterministic: identical inputs yield
    an identical result, including its JSON form.
    """
    lexicon = lexicon or Lexicon.default()
    sim = sim or LexiconSimilarity(lexicon)

    visible = clip(series, spec)
    polyline = normalize(visible, spec)
    profile = point_persistence(polyline)
    features = enumerate_features(profile)
    granularity = detect_granularity(visible)

    sentences = analyze(caption)
    grounded: list[GroundedReference] = []
    for sent in sentences:
        tokens = list(sent.tokens)
        time_refs = extract_time_refs(tokens, granularity, spec.x_range)
        descriptions = extract_data_descriptions(tokens, lexicon, sim, sim_threshold)
        for pair in pair_refs(tokens, time_refs, descriptions, sent.index):
            ref = ground(pair, visible)
            if ref.target is not None and check_factual(ref, visible):
                ref = GroundedReference(pair=ref.pair, target=ref.target,
                                        factual_error=True)
            grounded.append(ref)

    resolved = [r for r in grounded if r.target is not None]
    matches = match_features(resolved, features)

    matched_flags = [False] * len(features)
    diagnostics: list[Diagnostic] = []
    for ref, match in zip(resolved, matches):
        if ref.factual_error:
            word = ref.pair.description.matched_keyword
            claim = "rise" if ref.kind == "rise" else "fall"
            diagnostics.append(Diagnostic(
                kind="factual", spans=ref.pair.spans,
                message=f"'{word}' describes a {claim}, but the data moves the "
                        f"other way over {_describe_window(ref.pair)}"))
        elif match is None:
            diagnostics.append(Diagnostic(
                kind="mismatch", spans=ref.pair.spans,
                message="the referenced segment does not line up with any of "
                        "the chart's most prominent features"))
        else:
            matched_flags[match.rank - 1] = True
    for ref in grounded:
        if ref.target is None:
            diagnostics.append(Diagnostic(kind="mismatch", spans=ref.pair.spans,
                                          message=ref.note or _OUT_OF_CHART))

    diagnostics.sort(key=lambda d: d.hull)
    palettes = tuple(i % 4 for i in range(len(resolved)))
    return CheckResult(features=tuple(features), matched=tuple(matched_flags),
                       references=tuple(resolved), palettes=palettes,
                       diagnostics=tuple(diagnostics),
                       all_references=tuple(grounded),
                       sentence_spans=tuple(s.byte_span for s in sentences))
