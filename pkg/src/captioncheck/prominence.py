"""Prominent-feature detection via epsilon-persistence over RDP simplification.

A polyline is simplified with Ramer-Douglas-Peucker at every epsilon on a
fixed grid (0.00 to 0.25 in steps of 0.01, in diagonal-normalized units).
A vertex's persistence is the greatest grid epsilon at which it survives;
a trend's persistence follows from the persistences of its endpoints and
interior.  The top five candidates by persistence become chart features.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Literal, Optional

from .chart import NormalizedPolyline, TimeSeries

# The sweep grid: 26 levels, 0.00 through the 0.25 cap.  Values are built as
# k/100 so identical floats appear everywhere a level is referenced.
GRID_STEP = 0.01
EPSILON_GRID: tuple[float, ...] = tuple(k / 100.0 for k in range(26))
PERSISTENCE_CAP = EPSILON_GRID[-1]


def _farthest(verts, i: int, j: int) -> tuple[int, float]:
    """Interior vertex of (i, j) farthest from the infinite line through i and j.

    Distance ties break toward the smallest index.
    """
    x1, y1 = verts[i]
    x2, y2 = verts[j]
    dx, dy = x2 - x1, y2 - y1
    seg = math.hypot(dx, dy)
    best_k, best_d = -1, -1.0
    for k in range(i + 1, j):
        px, py = verts[k]
        if seg == 0.0:
            d = math.hypot(px - x1, py - y1)
        else:
            d = abs(dx * (py - y1) - dy * (px - x1)) / seg
        if d > best_d:
            best_k, best_d = k, d
    return best_k, best_d


def rdp_retained(polyline: NormalizedPolyline, epsilon: float) -> frozenset[int]:
    """Vertex indices kept by RDP at tolerance epsilon.

    Endpoints are always kept; an interior split happens only when the
    farthest deviation strictly exceeds epsilon.
    """
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    verts = polyline.vertices
    n = len(verts)
    keep = {0, n - 1}
    stack = [(0, n - 1)]
    while stack:
        i, j = stack.pop()
        if j - i < 2:
            continue
        k, d = _farthest(verts, i, j)
        if d > epsilon:
            keep.add(k)
            stack.append((i, k))
            stack.append((k, j))
    return frozenset(keep)


@dataclass
class SplitNode:
    """One RDP split: range (start, end) divided at its farthest vertex."""

    start: int
    end: int
    farthest: int
    distance: float
    left: Optional["SplitNode"] = None
    right: Optional["SplitNode"] = None


def build_split_tree(polyline: NormalizedPolyline) -> SplitNode | None:
    """Epsilon-independent tree of RDP splits over the whole polyline.

    Built iteratively so vertex count never hits the recursion limit.
    Zero-distance ranges are not expanded: every vertex under them is
    collinear with the range chord and can never be retained.
    """
    verts = polyline.vertices
    n = len(verts)
    if n < 3:
        return None
    k, d = _farthest(verts, 0, n - 1)
    root = SplitNode(0, n - 1, k, d)
    stack = [root]
    while stack:
        node = stack.pop()
        if node.distance <= 0.0:
            continue
        i, j, k = node.start, node.end, node.farthest
        if k - i >= 2:
            fk, fd = _farthest(verts, i, k)
            node.left = SplitNode(i, k, fk, fd)
            stack.append(node.left)
        if j - k >= 2:
            fk, fd = _farthest(verts, k, j)
            node.right = SplitNode(k, j, fk, fd)
            stack.append(node.right)
    return root


@dataclass(frozen=True)
class PersistenceProfile:
    """Per-vertex persistence data for one polyline.

    cutoffs[i] is the raw retention threshold: vertex i survives RDP at
    epsilon iff cutoffs[i] > epsilon (endpoints get +inf).  per_point[i]
    is that threshold snapped down to the grid and capped.
    """

    polyline: NormalizedPolyline
    per_point: tuple[float, ...]
    cutoffs: tuple[float, ...]
    tree: SplitNode | None

    def __len__(self) -> int:
        return len(self.per_point)


def _snap_down(threshold: float) -> float:
    """Greatest grid value strictly below the retention threshold (else 0)."""
    for k in range(len(EPSILON_GRID) - 1, -1, -1):
        if EPSILON_GRID[k] < threshold:
            return EPSILON_GRID[k]
    return 0.0


def point_persistence(polyline: NormalizedPolyline) -> PersistenceProfile:
    """Per-vertex epsilon-persistence computed from the split tree.

    A vertex survives at epsilon iff every split distance on its ancestor
    chain (its own node included) exceeds epsilon, so its retention
    threshold is the minimum distance along that chain.
    """
    n = len(polyline)
    cutoffs = [0.0] * n
    cutoffs[0] = cutoffs[n - 1] = math.inf
    tree = build_split_tree(polyline)
    if tree is not None:
        stack = [(tree, math.inf)]
        while stack:
            node, chain_min = stack.pop()
            m = min(chain_min, node.distance)
            cutoffs[node.farthest] = m
            if node.left is not None:
                stack.append((node.left, m))
            if node.right is not None:
                stack.append((node.right, m))
    per_point = tuple(PERSISTENCE_CAP if math.isinf(c) else _snap_down(c)
                      for c in cutoffs)
    return PersistenceProfile(polyline=polyline, per_point=per_point,
                              cutoffs=tuple(cutoffs), tree=tree)


def trend_persistence(profile: PersistenceProfile, i: int, j: int) -> float:
    """Persistence of the trend from vertex i to vertex j (i < j).

    min(persistence of endpoints) minus the greatest interior persistence,
    plus one grid step, clamped to [0, cap].  Computed in integer hundredths
    so results land exactly on the grid.
    """
    n = len(profile)
    if not (0 <= i < j < n):
        raise ValueError(f"invalid trend range ({i}, {j}) for {n} vertices")
    pp = profile.per_point
    lo = min(round(pp[i] * 100), round(pp[j] * 100))
    interior = max((round(pp[k] * 100) for k in range(i + 1, j)), default=0)
    value = lo - interior + 1
    value = max(0, min(len(EPSILON_GRID) - 1, value))
    return EPSILON_GRID[value]


FeatureKind = Literal["point", "trend"]


@dataclass(frozen=True)
class ChartFeature:
    """A ranked prominent feature: a single vertex or a trend between two."""

    kind: FeatureKind
    rank: int
    persistence: float
    index: int | None = None          # point only
    start: int | None = None          # trend only
    end: int | None = None            # trend only
    direction: str | None = None      # trend only: "rise" | "fall"
    extreme_kind: str | None = None   # point only: "localMax" | "localMin" | "endpoint"

    def covered(self) -> range:
        """Vertex indices the feature spans (inclusive)."""
        if self.kind == "point":
            return range(self.index, self.index + 1)
        return range(self.start, self.end + 1)

    def to_json_dict(self) -> dict:
        out = {"kind": self.kind, "rank": self.rank, "persistence": self.persistence}
        if self.kind == "point":
            out["index"] = self.index
            out["extremeKind"] = self.extreme_kind
        else:
            out["start"] = self.start
            out["end"] = self.end
            out["direction"] = self.direction
        return out


def _classify_point(verts, k: int) -> str:
    """Extreme kind of vertex k relative to its neighbors.

    Strictly above both -> localMax, strictly below both -> localMin.  A
    monotone kink is classified by which side of its neighbor chord it
    bulges toward.  Boundary vertices are simply endpoints.
    """
    if k == 0 or k == len(verts) - 1:
        return "endpoint"
    (xp, yp), (x, y), (xn, yn) = verts[k - 1], verts[k], verts[k + 1]
    if y > yp and y > yn:
        return "localMax"
    if y < yp and y < yn:
        return "localMin"
    chord_y = yp + (yn - yp) * (x - xp) / (xn - xp)
    return "localMax" if y >= chord_y else "localMin"


def enumerate_features(profile: PersistenceProfile, top: int = 5) -> list[ChartFeature]:
    """Rank the most prominent points and trends, keeping the top five.

    Candidate points are interior vertices with positive persistence;
    boundary vertices persist trivially and are not features on their own.
    Candidate trends are vertex pairs that appear as consecutive retained
    vertices at some sweep level.  Ties order points before trends, then
    by smaller start index.
    """
    verts = profile.polyline.vertices
    n = len(verts)
    cutoffs = profile.cutoffs
    pp = profile.per_point

    candidates: list[tuple[int, int, int, int, ChartFeature]] = []
    for k in range(1, n - 1):
        if pp[k] > 0.0:
            feat = ChartFeature(kind="point", rank=0, persistence=pp[k],
                                index=k, extreme_kind=_classify_point(verts, k))
            candidates.append((-round(pp[k] * 100), 0, k, k, feat))

    pairs: set[tuple[int, int]] = set()
    for eps in EPSILON_GRID:
        retained = [v for v in range(n) if cutoffs[v] > eps or v == 0 or v == n - 1]
        pairs.update(zip(retained, retained[1:]))
    for i, j in pairs:
        p = trend_persistence(profile, i, j)
        direction = "rise" if verts[j][1] >= verts[i][1] else "fall"
        feat = ChartFeature(kind="trend", rank=0, persistence=p,
                            start=i, end=j, direction=direction)
        candidates.append((-round(p * 100), 1, i, j, feat))

    candidates.sort(key=lambda c: c[:4])
    ranked = []
    for rank, (_, _, _, _, feat) in enumerate(candidates[:top], start=1):
        ranked.append(ChartFeature(kind=feat.kind, rank=rank, persistence=feat.persistence,
                                   index=feat.index, start=feat.start, end=feat.end,
                                   direction=feat.direction, extreme_kind=feat.extreme_kind))
    return ranked


def features_to_json(features: list[ChartFeature]) -> str:
    """Stable JSON document for a ranked feature list."""
    return json.dumps({"features": [f.to_json_dict() for f in features]},
                      separators=(", ", ": "))


def baseline_saliency(series: TimeSeries) -> list[float]:
    """Value-plus-slope saliency used as an evaluation baseline.

    score = 0.5*|y_norm| + 0.5*|dy_norm| with min-max normalized values and
    central-difference derivatives (one-sided at the ends).  Degenerate
    ranges normalize to zero.
    """
    ts = [t.toordinal() for t in series.dates]
    ys = list(series.values)
    n = len(ys)
    deriv = []
    for k in range(n):
        if k == 0:
            deriv.append((ys[1] - ys[0]) / (ts[1] - ts[0]))
        elif k == n - 1:
            deriv.append((ys[-1] - ys[-2]) / (ts[-1] - ts[-2]))
        else:
            deriv.append((ys[k + 1] - ys[k - 1]) / (ts[k + 1] - ts[k - 1]))

    def _minmax(vals):
        lo, hi = min(vals), max(vals)
        if hi == lo:
            return [0.0] * len(vals)
        return [(v - lo) / (hi - lo) for v in vals]

    ynorm = _minmax(ys)
    dnorm = _minmax(deriv)
    return [0.5 * abs(a) + 0.5 * abs(b) for a, b in zip(ynorm, dnorm)]
