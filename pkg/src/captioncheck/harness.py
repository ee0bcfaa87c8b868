"""Labeled-corpus evaluation harness.

A corpus bundle is a directory per item holding series.csv, spec.json,
caption.txt and gold.json.  Gold labels name, for every sentence, the
references a careful reader would extract; predictions are compared by
(kind, grounded target) so a reference that reads correctly but lands on
the wrong part of the chart still counts as an intention mismatch.
"""

from __future__ import annotations

import calendar
import json
import re
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

from .chart import CaptionCheckError, ChartSpec, TimeSeries, clip
from .lexicon import KINDS, Lexicon, SimilarityProvider
from .matching import PointTarget, TrendTarget, check, resolve_point, resolve_trend
from .refs import DEFAULT_SIM_THRESHOLD
from .timeexpr import month_window, quarter_window, season_window, year_window


class CorpusFormatError(CaptionCheckError):
    """A corpus bundle is missing files or carries malformed labels."""


_PARTIAL_FORMS = re.compile(
    r"^(?P<year>\d{4})"
    r"(?:-(?P<month>\d{2})(?:-(?P<day>\d{2}))?"
    r"|-[Qq](?P<quarter>[1-4])"
    r"|-(?P<season>spring|summer|fall|autumn|winter)"
    r"|(?P<decade>s))?$",
    re.IGNORECASE,
)


def parse_partial_date_window(text: str) -> tuple[date, date]:
    """Calendar window named by a partial ISO-ish instant.

    "1950" spans the year, "1997-11" the month, "2020-03-05" a single day,
    "2012-Q3" a quarter, "2018-fall" a season and "1990s" a decade.
    """
    m = _PARTIAL_FORMS.match(text.strip())
    if not m:
        raise CorpusFormatError(f"bad gold instant {text!r}")
    year = int(m.group("year"))
    if m.group("decade"):
        if year % 10 != 0:
            raise CorpusFormatError(f"decade {text!r} must end in 0")
        return date(year, 1, 1), date(year + 9, 12, 31)
    if m.group("quarter"):
        return quarter_window(year, int(m.group("quarter")))
    if m.group("season"):
        return season_window(year, m.group("season").lower())
    if m.group("month"):
        month = int(m.group("month"))
        try:
            if m.group("day"):
                d = date(year, month, int(m.group("day")))
                return d, d
            return month_window(year, month)
        except ValueError:
            raise CorpusFormatError(f"bad gold instant {text!r}") from None
    return year_window(year)


def _parse_window(value) -> tuple[date, date]:
    if isinstance(value, str):
        return parse_partial_date_window(value)
    if isinstance(value, dict) and "start" in value and "end" in value:
        try:
            return (date.fromisoformat(value["start"]),
                    date.fromisoformat(value["end"]))
        except (TypeError, ValueError):
            raise CorpusFormatError(f"bad gold window {value!r}") from None
    raise CorpusFormatError(f"bad gold window {value!r}")


@dataclass(frozen=True)
class GoldReference:
    """One expected reference: kind plus the unit windows its text names."""

    kind: str
    start_window: tuple[date, date] | None = None
    end_window: tuple[date, date] | None = None
    out_of_chart: bool = False

    def expected_target(self, series: TimeSeries) -> PointTarget | TrendTarget | None:
        """Ground the gold windows with the same rules the pipeline uses."""
        if self.out_of_chart:
            return None
        if self.kind in ("localMax", "localMin"):
            lo = self.start_window[0] if self.start_window else None
            hi = self.end_window[1] if self.end_window else None
            return resolve_point(series, self.kind, (lo, hi))
        result = resolve_trend(series, self.kind, self.start_window, self.end_window)
        return result if isinstance(result, (PointTarget, TrendTarget)) else None


def _parse_gold_reference(raw: dict) -> GoldReference:
    kind = raw.get("kind")
    if kind not in KINDS:
        raise CorpusFormatError(f"bad gold kind {kind!r}")
    start = end = None
    if "point" in raw:
        start = end = _parse_window(raw["point"])
    if "start" in raw:
        start = _parse_window(raw["start"])
    if "end" in raw:
        end = _parse_window(raw["end"])
    out = bool(raw.get("outOfChart", False))
    if start is None and end is None and not out:
        raise CorpusFormatError("gold reference names no time window")
    return GoldReference(kind=kind, start_window=start, end_window=end,
                         out_of_chart=out)


@dataclass
class SentenceScore:
    correct: bool
    false_negative: bool = False
    false_positive: bool = False
    intention_mismatch: bool = False


@dataclass
class ErrorTally:
    """Per-category sentence counts; multi-error sentences count once per category."""

    sentences: int = 0
    correct: int = 0
    false_negatives: int = 0
    false_positives: int = 0
    intention_mismatches: int = 0

    def add(self, score: SentenceScore) -> None:
        self.sentences += 1
        if score.correct:
            self.correct += 1
        if score.false_negative:
            self.false_negatives += 1
        if score.false_positive:
            self.false_positives += 1
        if score.intention_mismatch:
            self.intention_mismatches += 1

    @property
    def accuracy(self) -> float:
        return self.correct / self.sentences if self.sentences else 0.0

    def to_json_dict(self) -> dict:
        return {
            "sentences": self.sentences,
            "correct": self.correct,
            "falseNegatives": self.false_negatives,
            "falsePositives": self.false_positives,
            "intentionMismatches": self.intention_mismatches,
            "accuracy": self.accuracy,
        }


def score_sentence(predictions: list[tuple[str, object]],
                   golds: list[tuple[str, object]]) -> SentenceScore:
    """Compare predicted (kind, target) pairs with gold for one sentence.

    Exact kind+target agreements pair off first; a leftover prediction
    sharing a kind with a leftover gold is an intention mismatch (right
    words, wrong part of the chart); remaining golds are false negatives
    and remaining predictions false positives.
    """
    preds = list(predictions)
    remaining_golds = []
    for gold in golds:
        if gold in preds:
            preds.remove(gold)
        else:
            remaining_golds.append(gold)
    mismatch = False
    for gold in list(remaining_golds):
        partner = next((p for p in preds if p[0] == gold[0]), None)
        if partner is not None:
            preds.remove(partner)
            remaining_golds.remove(gold)
            mismatch = True
    fn = bool(remaining_golds)
    fp = bool(preds)
    return SentenceScore(correct=not (fn or fp or mismatch),
                         false_negative=fn, false_positive=fp,
                         intention_mismatch=mismatch)


@dataclass
class BundleResult:
    name: str
    tally: ErrorTally


def _load_text(path: Path) -> str:
    if not path.is_file():
        raise CorpusFormatError(f"missing {path.name} in {path.parent.name}")
    return path.read_text(encoding="utf-8")


def evaluate_item(item_dir: Path, lexicon: Lexicon | None = None,
                  sim: SimilarityProvider | None = None,
                  sim_threshold: float = DEFAULT_SIM_THRESHOLD) -> BundleResult:
    """Score one corpus item directory."""
    series = TimeSeries.from_csv(_load_text(item_dir / "series.csv"))
    spec = ChartSpec.from_json(_load_text(item_dir / "spec.json"))
    caption = _load_text(item_dir / "caption.txt")
    try:
        gold_doc = json.loads(_load_text(item_dir / "gold.json"))
    except json.JSONDecodeError as exc:
        raise CorpusFormatError(f"bad gold.json in {item_dir.name}: {exc}") from None

    result = check(series, spec, caption, lexicon=lexicon, sim=sim,
                   sim_threshold=sim_threshold)
    n_sentences = len(result.sentence_spans)
    visible = clip(series, spec)

    golds_by_sentence: dict[int, list[tuple[str, object]]] = {}
    for entry in gold_doc.get("sentences", []):
        idx = entry.get("index")
        if not isinstance(idx, int) or not 0 <= idx < n_sentences:
            raise CorpusFormatError(
                f"gold sentence index {idx!r} out of range in {item_dir.name}")
        labeled = [_parse_gold_reference(r) for r in entry.get("references", [])]
        golds_by_sentence[idx] = [(g.kind, g.expected_target(visible)) for g in labeled]

    preds_by_sentence: dict[int, list[tuple[str, object]]] = {}
    for ref in result.all_references:
        preds_by_sentence.setdefault(ref.pair.sentence_index, []).append(
            (ref.kind, ref.target))

    tally = ErrorTally()
    for idx in range(n_sentences):
        tally.add(score_sentence(preds_by_sentence.get(idx, []),
                                 golds_by_sentence.get(idx, [])))
    return BundleResult(name=item_dir.name, tally=tally)


def evaluate_corpus(corpus_dir: str | Path, lexicon: Lexicon | None = None,
                    sim: SimilarityProvider | None = None,
                    sim_threshold: float = DEFAULT_SIM_THRESHOLD,
                    ) -> tuple[ErrorTally, list[BundleResult]]:
    """Score every item directory under a corpus root."""
    root = Path(corpus_dir)
    if not root.is_dir():
        raise CorpusFormatError(f"{corpus_dir} is not a directory")
    items = sorted(p for p in root.iterdir() if p.is_dir())
    if not items:
        raise CorpusFormatError(f"no corpus items under {corpus_dir}")
    total = ErrorTally()
    results = []
    for item in items:
        res = evaluate_item(item, lexicon=lexicon, sim=sim, sim_threshold=sim_threshold)
        results.append(res)
        total.sentences += res.tally.sentences
        total.correct += res.tally.correct
        total.false_negatives += res.tally.false_negatives
        total.false_positives += res.tally.false_positives
        total.intention_mismatches += res.tally.intention_mismatches
    return total, results
