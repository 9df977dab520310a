#!/usr/bin/env python

"""
Geometric kernel for routes and templates: points, polylines, bounding
boxes, point-to-segment distances, arc-length resampling and exact
quarter-turn transforms. All coordinates are yards.
"""

import heapq
from collections import namedtuple
import numpy as np
from .utils import GeometryError


Point = namedtuple("Point", ["x", "y"])
Segment = namedtuple("Segment", ["a", "b"])


class BoundingBox(namedtuple("BoundingBox", ["min_x", "min_y", "max_x", "max_y"])):
    """
    Axis-aligned extents (min_x, min_y, max_x, max_y) of a point set.
    """
    __slots__ = ()

    @property
    def width(self):
        return self.max_x - self.min_x

    @property
    def height(self):
        return self.max_y - self.min_y

    @property
    def aspect(self):
        "height / width, or None when the box has zero width."
        if self.width == 0:
            return None
        return self.height / self.width

    def contains(self, other, tol=0.0):
        "True if box 'other' lies inside this box (closed, with tolerance)."
        return (
            other.min_x >= self.min_x - tol and
            other.min_y >= self.min_y - tol and
            other.max_x <= self.max_x + tol and
            other.max_y <= self.max_y + tol
        )



class Polyline(object):
    """
    An immutable ordered sequence of 2-D points stored as an (n, 2) float
    array.

    Parameters:
    -----------
    points: (list, tuple, ndarray, or Polyline)
        Sequence of (x, y) pairs.

    check: bool
        Require at least two finite points (default). Templates are built
        with check=False so that their validation can report problems as
        data instead of raising here.

    strict: bool
        Refuse consecutive duplicate points. By default they are allowed
        and the polyline is flagged .degenerate.
    """
    def __init__(self, points, check=True, strict=False):

        if isinstance(points, Polyline):
            arr = points._points
        else:
            arr = np.array(points, dtype=float)
            if arr.size == 0:
                arr = arr.reshape(0, 2)

        if arr.ndim != 2 or arr.shape[1] != 2:
            raise GeometryError(
                "polyline points must have shape (n, 2), got {}"
                .format(arr.shape))

        if check:
            if arr.shape[0] < 2:
                raise GeometryError("polyline needs at least 2 points")
            if not np.all(np.isfinite(arr)):
                raise GeometryError("polyline has non-finite coordinates")

        arr.flags.writeable = False
        self._points = arr

        # zero-length segments are allowed but flagged
        steps = np.diff(arr, axis=0)
        self.degenerate = bool(np.any(np.all(steps == 0, axis=1)))
        if strict and self.degenerate:
            raise GeometryError("polyline has consecutive duplicate points")


    @property
    def points(self):
        "Read-only (n, 2) array of coordinates."
        return self._points

    @property
    def x(self):
        return self._points[:, 0]

    @property
    def y(self):
        return self._points[:, 1]

    @property
    def arc_length(self):
        steps = np.diff(self._points, axis=0)
        return float(np.hypot(steps[:, 0], steps[:, 1]).sum())

    def segments(self):
        "Returns the list of consecutive Segments."
        return [
            Segment(Point(*self._points[i]), Point(*self._points[i + 1]))
            for i in range(len(self) - 1)
        ]

    def tolist(self):
        return self._points.tolist()

    def __len__(self):
        return self._points.shape[0]

    def __iter__(self):
        for row in self._points:
            yield Point(float(row[0]), float(row[1]))

    def __getitem__(self, idx):
        row = self._points[idx]
        return Point(float(row[0]), float(row[1]))

    def __eq__(self, other):
        if not isinstance(other, Polyline):
            return NotImplemented
        return np.array_equal(self._points, other._points)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def __repr__(self):
        return "Polyline(n={}, {})".format(len(self), self.tolist())



def as_array(p):
    "Return the (n, 2) float array behind a Polyline or a sequence of points."
    if isinstance(p, Polyline):
        return p.points
    arr = np.asarray(p, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise GeometryError("expected (n, 2) coordinates, got {}".format(arr.shape))
    return arr



#######################################################
# Boxes and rigid transforms
#######################################################
def bounding_box(p):
    """
    Smallest axis-aligned rectangle containing every point of p.
    """
    arr = as_array(p)
    mins = arr.min(axis=0)
    maxs = arr.max(axis=0)
    return BoundingBox(
        float(mins[0]), float(mins[1]), float(maxs[0]), float(maxs[1]))


def translate(p, dx, dy):
    return Polyline(as_array(p) + np.array([dx, dy], dtype=float))


def translate_to_origin(p):
    """
    Shift p so the left and bottom sides of its bounding box sit on the
    axes (min x = min y = 0). Shape is unchanged.
    """
    box = bounding_box(p)
    if box.min_x == 0 and box.min_y == 0:
        return p if isinstance(p, Polyline) else Polyline(p)
    return translate(p, -box.min_x, -box.min_y)


def scale_uniform(p, factor):
    """
    Multiply every coordinate by factor (> 0), keeping the aspect ratio.
    """
    factor = float(factor)
    if not np.isfinite(factor) or factor <= 0:
        raise GeometryError(
            "scale factor must be a positive number, got {}".format(factor))
    if factor == 1:
        return p if isinstance(p, Polyline) else Polyline(p)
    return Polyline(as_array(p) * factor)


def mirror_x(p):
    "Negate the x coordinate of every point."
    arr = as_array(p).copy()
    arr[:, 0] = -arr[:, 0]
    return Polyline(arr)


def rotate_array(arr, quarter_turns):
    """
    Rotate coordinates counter-clockwise by a multiple of 90 degrees using
    coordinate swaps only, so results are exact.
    """
    arr = np.asarray(arr, dtype=float)
    turns = int(quarter_turns) % 4
    x = arr[..., 0]
    y = arr[..., 1]
    if turns == 0:
        return arr.copy()
    if turns == 1:
        return np.stack([-y, x], axis=-1)
    if turns == 2:
        return np.stack([-x, -y], axis=-1)
    return np.stack([y, -x], axis=-1)


def rotate(p, quarter_turns):
    "Rotate p counter-clockwise about the origin by quarter_turns * 90 deg."
    return Polyline(rotate_array(as_array(p), quarter_turns))



#######################################################
# Distances
#######################################################
def segment_distances(points, starts, ends):
    """
    Euclidean distances between points and closed segments by exact
    projection.

    Parameters:
    -----------
    points: ndarray (..., 2)
    starts, ends: ndarray (m, 2)
        Segment endpoints. A segment with start == end is a point.

    Returns:
    --------
    ndarray (..., m)
    """
    points = np.asarray(points, dtype=float)[..., None, :]
    starts = np.asarray(starts, dtype=float)
    ends = np.asarray(ends, dtype=float)

    delta = ends - starts
    length2 = delta[:, 0] ** 2 + delta[:, 1] ** 2
    rel = points - starts
    dots = rel[..., 0] * delta[:, 0] + rel[..., 1] * delta[:, 1]

    # projection parameter clipped onto the segment; 0 for point segments
    with np.errstate(divide="ignore", invalid="ignore"):
        proj = dots / length2
    proj = np.where(length2 > 0, np.clip(proj, 0.0, 1.0), 0.0)

    nearx = starts[:, 0] + proj * delta[:, 0]
    neary = starts[:, 1] + proj * delta[:, 1]
    return np.hypot(points[..., 0] - nearx, points[..., 1] - neary)


def point_segment_distance(pt, s):
    """
    Distance from pt to the closest point of the closed segment s.
    """
    starts = np.array([s[0]], dtype=float)
    ends = np.array([s[1]], dtype=float)
    return float(segment_distances(np.asarray(pt, dtype=float), starts, ends)[0])


def polyline_segments(p):
    """
    Returns (starts, ends) arrays of the non-zero-length segments of p. If
    every segment has zero length the single point is returned as one
    point segment.
    """
    arr = as_array(p)
    starts = arr[:-1]
    ends = arr[1:]
    keep = np.any(starts != ends, axis=1)
    if not np.any(keep):
        return arr[:1], arr[:1]
    return starts[keep], ends[keep]


def min_distances(points, p):
    """
    Distance from each of many points (..., 2) to polyline p.
    """
    starts, ends = polyline_segments(p)
    return segment_distances(points, starts, ends).min(axis=-1)


def min_distance_to_polyline(pt, p):
    """
    Minimum distance from a point to any segment of polyline p, skipping
    zero-length segments.
    """
    return float(min_distances(np.asarray(pt, dtype=float), p))



#######################################################
# Resampling
#######################################################
def resample_to_count(p, n):
    """
    Add points to p until it holds exactly n points. Original vertices are
    kept in place; new points are inserted on existing segments so the
    arc-length gaps between consecutive points are as equal as possible.
    The bounding box is unchanged.

    Parameters:
    -----------
    p: Polyline
    n: int
        Target number of points, at least len(p).
    """
    arr = as_array(p)
    npoints = arr.shape[0]
    n = int(n)
    if n < npoints:
        raise GeometryError(
            "cannot resample {} points down to {}".format(npoints, n))
    if n == npoints:
        return p if isinstance(p, Polyline) else Polyline(arr)

    steps = np.diff(arr, axis=0)
    lengths = np.hypot(steps[:, 0], steps[:, 1])

    # give each new point to the segment with the longest current gap;
    # ties go to the earlier segment.
    counts = np.zeros(npoints - 1, dtype=int)
    heap = [(-lengths[i], i) for i in range(npoints - 1)]
    heapq.heapify(heap)
    for _ in range(n - npoints):
        _, idx = heapq.heappop(heap)
        counts[idx] += 1
        heapq.heappush(heap, (-lengths[idx] / (counts[idx] + 1), idx))

    out = [arr[:1]]
    for idx in range(npoints - 1):
        start = arr[idx]
        end = arr[idx + 1]
        if counts[idx]:
            frac = np.arange(1, counts[idx] + 1) / (counts[idx] + 1.)
            added = (1 - frac)[:, None] * start + frac[:, None] * end
            added = np.clip(added, np.minimum(start, end), np.maximum(start, end))
            out.append(added)
        out.append(arr[idx + 1:idx + 2])
    return Polyline(np.vstack(out))
