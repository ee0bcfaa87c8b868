"""Command line interface.

Three subcommands:

* ``features`` prints the prominent features of a series as JSON.
* ``lint`` checks a caption against a series and prints one line per
  diagnostic, in the style of a compiler.
* ``eval`` scores the checker against a labeled corpus.
"""

from __future__ import annotations

import datetime
import json
import pathlib
import sys

import click

from .chart import ChartSpec, SeriesFormatError, TimeSeries, clip, normalize
from .harness import CorpusFormatError, evaluate_corpus
from .lexicon import Lexicon, LexiconSimilarity, SimilarityProvider, WordVectorSimilarity
from .matching import DEFAULT_SIM_THRESHOLD, check
from .prominence import enumerate_features, features_to_json, point_persistence


def _load_series(path: str) -> TimeSeries:
    p = pathlib.Path(path)
    text = p.read_text(encoding="utf-8")
    if p.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        return TimeSeries.from_json(json.loads(text))
    return TimeSeries.from_csv(text)


def _spec_from_options(
    series: TimeSeries,
    width: float | None,
    height: float | None,
    xmin: str | None,
    xmax: str | None,
    ymin: float | None,
    ymax: float | None,
) -> ChartSpec:
    base = ChartSpec.default_for(series)
    x_range = base.x_range
    y_range = base.y_range
    if xmin is not None or xmax is not None:
        lo = datetime.date.fromisoformat(xmin) if xmin else x_range[0]
        hi = datetime.date.fromisoformat(xmax) if xmax else x_range[1]
        x_range = (lo, hi)
    if ymin is not None or ymax is not None:
        y_range = (ymin if ymin is not None else y_range[0],
                   ymax if ymax is not None else y_range[1])
    return ChartSpec(
        plot_width=width if width is not None else base.plot_width,
        plot_height=height if height is not None else base.plot_height,
        x_range=x_range,
        y_range=y_range,
    )


def _similarity(lexicon: Lexicon, vectors: str | None) -> SimilarityProvider:
    if vectors:
        return WordVectorSimilarity.load(vectors)
    return LexiconSimilarity(lexicon)


_SPEC_OPTIONS = [
    click.option("--width", type=float, default=None, help="Plot width in pixels."),
    click.option("--height", type=float, default=None, help="Plot height in pixels."),
    click.option("--xmin", default=None, help="Visible range start (YYYY-MM-DD)."),
    click.option("--xmax", default=None, help="Visible range end (YYYY-MM-DD)."),
    click.option("--ymin", type=float, default=None, help="Visible value range minimum."),
    click.option("--ymax", type=float, default=None, help="Visible value range maximum."),
]


def _with_spec_options(fn):
    for opt in reversed(_SPEC_OPTIONS):
        fn = opt(fn)
    return fn


@click.group()
@click.version_option(package_name="captioncheck")
def main() -> None:
    """Check captions of time-series line charts against the data."""


@main.command("features")
@click.argument("data", type=click.Path(exists=False))
@_with_spec_options
@click.option("--top", type=int, default=5, show_default=True,
              help="Maximum number of features to report.")
def features_cmd(data, width, height, xmin, xmax, ymin, ymax, top) -> None:
    """Print the most prominent features of DATA as JSON."""
    try:
        series = _load_series(data)
        spec = _spec_from_options(series, width, height, xmin, xmax, ymin, ymax)
        polyline = normalize(clip(series, spec), spec)
        profile = point_persistence(polyline)
        feats = enumerate_features(profile, top=top)
    except (OSError, ValueError, SeriesFormatError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    click.echo(features_to_json(feats))


@main.command("lint")
@click.argument("data", type=click.Path(exists=False))
@click.argument("caption", type=click.Path(exists=False))
@_with_spec_options
@click.option("--lexicon", "lexicon_path", default=None,
              help="Path to an alternative description lexicon (TSV).")
@click.option("--vectors", default=None,
              help="Path to a word-vector file for soft keyword matching.")
@click.option("--sim-threshold", type=float, default=DEFAULT_SIM_THRESHOLD,
              show_default=True, help="Similarity threshold for soft matches.")
@click.option("--strict", is_flag=True,
              help="Exit non-zero on any diagnostic, not just factual errors.")
@click.option("--json", "as_json", is_flag=True, help="Print the full check result as JSON.")
def lint_cmd(data, caption, width, height, xmin, xmax, ymin, ymax,
             lexicon_path, vectors, sim_threshold, strict, as_json) -> None:
    """Check CAPTION against DATA and report inconsistencies."""
    try:
        series = _load_series(data)
        spec = _spec_from_options(series, width, height, xmin, xmax, ymin, ymax)
        caption_text = pathlib.Path(caption).read_text(encoding="utf-8")
        lexicon = Lexicon.load(lexicon_path) if lexicon_path else Lexicon.default()
        sim = _similarity(lexicon, vectors)
        result = check(series, spec, caption_text,
                       lexicon=lexicon, sim=sim, sim_threshold=sim_threshold)
    except (OSError, ValueError, SeriesFormatError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    if as_json:
        click.echo(result.to_json())
    else:
        for diag in result.diagnostics:
            lo, hi = diag.hull
            click.echo(f"{diag.kind}:{lo}-{hi}: {diag.message}")
    has_factual = any(d.kind == "factual" for d in result.diagnostics)
    if has_factual or (strict and result.diagnostics):
        sys.exit(1)


@main.command("eval")
@click.argument("corpus", type=click.Path(exists=False))
@click.option("--lexicon", "lexicon_path", default=None,
              help="Path to an alternative description lexicon (TSV).")
@click.option("--vectors", default=None,
              help="Path to a word-vector file for soft keyword matching.")
@click.option("--sim-threshold", type=float, default=DEFAULT_SIM_THRESHOLD,
              show_default=True, help="Similarity threshold for soft matches.")
@click.option("--json", "as_json", is_flag=True, help="Print the tally as JSON.")
def eval_cmd(corpus, lexicon_path, vectors, sim_threshold, as_json) -> None:
    """Score the checker against a labeled CORPUS directory."""
    try:
        lexicon = Lexicon.load(lexicon_path) if lexicon_path else Lexicon.default()
        sim = _similarity(lexicon, vectors)
        tally, items = evaluate_corpus(corpus, lexicon=lexicon, sim=sim,
                                       sim_threshold=sim_threshold)
    except (OSError, ValueError, SeriesFormatError, CorpusFormatError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    if as_json:
        payload = tally.to_json_dict()
        payload["items"] = [
            {"name": item.name, **item.tally.to_json_dict()} for item in items
        ]
        click.echo(json.dumps(payload, indent=2))
        return
    click.echo(f"{'item':<24} {'sent':>5} {'ok':>4} {'FN':>4} {'FP':>4} {'IM':>4}")
    for item in items:
        t = item.tally
        click.echo(f"{item.name:<24} {t.sentences:>5} {t.correct:>4} "
                   f"{t.false_negatives:>4} {t.false_positives:>4} "
                   f"{t.intention_mismatches:>4}")
    click.echo(f"{'total':<24} {tally.sentences:>5} {tally.correct:>4} "
               f"{tally.false_negatives:>4} {tally.false_positives:>4} "
               f"{tally.intention_mismatches:>4}")
    click.echo(f"accuracy: {tally.accuracy:.1%}")


if __name__ == "__main__":
    main()
