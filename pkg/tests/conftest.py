import datetime

from captioncheck import ChartSpec, NormalizedPolyline, TimeSeries


def daily_series(values, start=datetime.date(2000, 1, 1), name=None):
    """Series with one point per day starting at `start`."""
    pts = tuple((start + datetime.timedelta(days=i), float(v))
                for i, v in enumerate(values))
    return TimeSeries(points=pts, name=name)


def yearly_series(values, start_year=2000, name=None):
    pts = tuple((datetime.date(start_year + i, 1, 1), float(v))
                for i, v in enumerate(values))
    return TimeSeries(points=pts, name=name)


def poly(*verts):
    """NormalizedPolyline straight from (x, y) pairs, for geometry tests."""
    return NormalizedPolyline(
        vertices=tuple((float(x), float(y)) for x, y in verts),
        source_index=tuple(range(len(verts))),
    )


def square_spec(series, side=100.0):
    """Spec with equal width and height over the full data extent."""
    return ChartSpec.default_for(series, plot_width=side, plot_height=side)
