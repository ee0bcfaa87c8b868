"""Chart data model: time series, plot geometry, clipping and granularity.

All dates are calendar dates at day resolution; the time axis is treated
as linear in days since epoch.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from datetime import date
from enum import Enum
from statistics import median
from typing import Iterable


class CaptionCheckError(Exception):
    """Base class for errors raised by this package."""


class EmptyChartError(CaptionCheckError):
    """Raised when clipping leaves fewer than two visible points."""


class SeriesFormatError(CaptionCheckError):
    """Malformed series input.  Carries a 1-based row and column when known."""

    def __init__(self, message: str, row: int | None = None, column: int | None = None):
        self.row = row
        self.column = column
        if row is not None:
            where = f"row {row}" + (f", column {column}" if column is not None else "")
            message = f"{message} ({where})"
        super().__init__(message)


def _parse_iso_date(text: str) -> date:
    return date.fromisoformat(text.strip())


@dataclass(frozen=True)
class TimeSeries:
    """A univariate series of (date, value) points, strictly increasing in time."""

    points: tuple[tuple[date, float], ...]
    name: str | None = None

    def __post_init__(self):
        pts = tuple((t, float(y)) for t, y in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise ValueError("a series needs at least two points")
        prev = None
        for t, y in pts:
            if not isinstance(t, date):
                raise TypeError(f"expected a date, got {type(t).__name__}")
            if not math.isfinite(y):
                raise ValueError(f"non-finite value at {t.isoformat()}")
            if prev is not None and t <= prev:
                raise ValueError(f"timestamps must be strictly increasing at {t.isoformat()}")
            prev = t

    def __len__(self) -> int:
        return len(self.points)

    @property
    def dates(self) -> tuple[date, ...]:
        return tuple(t for t, _ in self.points)

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(y for _, y in self.points)

    @classmethod
    def from_csv(cls, text: str, name: str | None = None) -> "TimeSeries":
        """Parse a two-column CSV (ISO date, decimal value), optional header row."""
        rows = list(csv.reader(io.StringIO(text)))
        rows = [r for r in rows if any(cell.strip() for cell in r)]
        if not rows:
            raise SeriesFormatError("empty CSV input")
        start = 0
        try:
            _parse_iso_date(rows[0][0])
        except (ValueError, IndexError):
            start = 1  # header row
        points = []
        for i, row in enumerate(rows[start:], start=start + 1):
            if len(row) < 2:
                raise SeriesFormatError("expected two columns", row=i)
            try:
                t = _parse_iso_date(row[0])
            except ValueError:
                raise SeriesFormatError(f"bad date {row[0]!r}", row=i, column=1) from None
            try:
                y = float(row[1])
            except ValueError:
                raise SeriesFormatError(f"bad value {row[1]!r}", row=i, column=2) from None
            points.append((t, y))
        return cls._build(points, name, source="CSV")

    @classmethod
    def from_json(cls, data: str | dict) -> "TimeSeries":
        """Parse ``{"points": [{"t": iso-date, "y": number}, ...], "name": ...}``."""
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise SeriesFormatError(f"bad JSON: {exc}") from None
        if not isinstance(data, dict) or not isinstance(data.get("points"), list):
            raise SeriesFormatError('series JSON needs a "points" array')
        points = []
        for i, item in enumerate(data["points"], start=1):
            if not isinstance(item, dict) or "t" not in item or "y" not in item:
                raise SeriesFormatError('each point needs "t" and "y"', row=i)
            try:
                t = _parse_iso_date(str(item["t"]))
            except ValueError:
                raise SeriesFormatError(f"bad date {item['t']!r}", row=i) from None
            try:
                y = float(item["y"])
            except (TypeError, ValueError):
                raise SeriesFormatError(f"bad value {item['y']!r}", row=i) from None
            points.append((t, y))
        return cls._build(points, data.get("name"), source="JSON")

    @classmethod
    def _build(cls, points, name, source):
        try:
            return cls(points=tuple(points), name=name)
        except (TypeError, ValueError) as exc:
            raise SeriesFormatError(f"invalid {source} series: {exc}") from None

    def to_json_dict(self) -> dict:
        out = {"points": [{"t": t.isoformat(), "y": y} for t, y in self.points]}
        if self.name:
            out["name"] = self.name
        return out


@dataclass(frozen=True)
class ChartSpec:
    """Plot geometry: pixel dimensions plus visible x (time) and y (value) ranges."""

    plot_width: float
    plot_height: float
    x_range: tuple[date, date]
    y_range: tuple[float, float]

    def __post_init__(self):
        if not (self.plot_width > 0 and self.plot_height > 0):
            raise ValueError("plot dimensions must be positive")
        if self.x_range[0] >= self.x_range[1]:
            raise ValueError("xRange start must precede its end")
        if not (self.y_range[0] < self.y_range[1]):
            raise ValueError("yRange must be a non-empty interval")
        for bound in self.y_range:
            if not math.isfinite(bound):
                raise ValueError("yRange bounds must be finite")

    @property
    def diagonal(self) -> float:
        return math.sqrt(self.plot_width ** 2 + self.plot_height ** 2)

    @classmethod
    def default_for(cls, series: TimeSeries,
                    plot_width: float = 640.0, plot_height: float = 480.0) -> "ChartSpec":
        """Spec covering the full data extent at the default 640x480 plot size."""
        lo, hi = min(series.values), max(series.values)
        if lo == hi:
            lo, hi = lo - 0.5, hi + 0.5  # keep the y interval non-empty for flat data
        return cls(plot_width=plot_width, plot_height=plot_height,
                   x_range=(series.dates[0], series.dates[-1]), y_range=(lo, hi))

    @classmethod
    def from_json(cls, data: str | dict) -> "ChartSpec":
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise SeriesFormatError(f"bad spec JSON: {exc}") from None
        try:
            x0, x1 = data["xRange"]
            y0, y1 = data["yRange"]
            return cls(plot_width=float(data["plotWidth"]),
                       plot_height=float(data["plotHeight"]),
                       x_range=(_parse_iso_date(str(x0)), _parse_iso_date(str(x1))),
                       y_range=(float(y0), float(y1)))
        except (KeyError, TypeError, ValueError) as exc:
            raise SeriesFormatError(f"invalid chart spec: {exc}") from None

    def to_json_dict(self) -> dict:
        return {
            "plotWidth": self.plot_width,
            "plotHeight": self.plot_height,
            "xRange": [self.x_range[0].isoformat(), self.x_range[1].isoformat()],
            "yRange": [self.y_range[0], self.y_range[1]],
        }


class Granularity(Enum):
    DAY = "day"
    WEEK = "week"
    MONTH = "month"
    YEAR = "year"

    @property
    def nominal_days(self) -> float:
        return {"day": 1.0, "week": 7.0, "month": 28.0, "year": 365.0}[self.value]


@dataclass(frozen=True)
class NormalizedPolyline:
    """Series mapped into plot coordinates scaled so the chart diagonal is 1."""

    vertices: tuple[tuple[float, float], ...]
    source_index: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.source_index):
            raise ValueError("vertices and source_index must align")
        if len(self.vertices) < 2:
            raise ValueError("a polyline needs at least two vertices")
        prev = None
        for x, _ in self.vertices:
            if prev is not None and x <= prev:
                raise ValueError("x coordinates must be strictly increasing")
            prev = x

    def __len__(self) -> int:
        return len(self.vertices)


def clip(series: TimeSeries, spec: ChartSpec) -> TimeSeries:
    """Keep points whose time lies inside the spec's xRange (inclusive).

    Values outside yRange are intentionally retained: only the time window
    crops the data.  Raises EmptyChartError when fewer than two points remain.
    """
    lo, hi = spec.x_range
    kept = [(t, y) for t, y in series.points if lo <= t <= hi]
    if len(kept) < 2:
        raise EmptyChartError("fewer than two points fall inside the visible time range")
    return TimeSeries(points=tuple(kept), name=series.name)


def detect_granularity(series: TimeSeries) -> Granularity:
    """Coarsest calendar unit whose nominal spacing fits the median gap.

    A unit qualifies when the median inter-point gap is at least 90% of its
    nominal length in days (day=1, week=7, month=28, year=365).
    """
    dates = series.dates
    gaps = [(b.toordinal() - a.toordinal()) for a, b in zip(dates, dates[1:])]
    med = median(gaps)
    for unit in (Granularity.YEAR, Granularity.MONTH, Granularity.WEEK):
        if med >= 0.9 * unit.nominal_days:
            return unit
    return Granularity.DAY


def normalize(series: TimeSeries, spec: ChartSpec) -> NormalizedPolyline:
    """Map a (clipped) series into diagonal-normalized plot coordinates.

    x(t) = (t - tMin)/(tMax - tMin) * W/D and y(v) = (v - yMin)/(yMax - yMin) * H/D
    with D the plot diagonal, so any two in-range vertices are at most 1 apart.
    """
    t0, t1 = spec.x_range
    y0, y1 = spec.y_range
    d = spec.diagonal
    t0o, t1o = t0.toordinal(), t1.toordinal()
    xspan = t1o - t0o
    yspan = y1 - y0
    verts = []
    for t, v in series.points:
        x = (t.toordinal() - t0o) / xspan * spec.plot_width / d
        y = (v - y0) / yspan * spec.plot_height / d
        verts.append((x, y))
    return NormalizedPolyline(vertices=tuple(verts),
                              source_index=tuple(range(len(verts))))
