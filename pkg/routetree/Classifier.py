#!/usr/bin/env python

"""
Template matching classifier. Each template is translated onto the game
route's bounding box, scaled down by the larger of its width and height
ratios (keeping its aspect ratio, so it always fits inside the game box),
shifted in half-yard steps along the axis with slack, and scored with

    D_route = D_game + gamma * D_scaled

where D_game sums the distances from game points to the template polyline
and D_scaled sums the distances from the template's points (augmented to
the game route's point count) to the game polyline. The label with the
smallest D_route over all templates and shifts wins. Receivers that never
move more than the blocking threshold are labeled blocking/bubble.
"""

import logging
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
import numpy as np

from .Geometry import (
    Polyline, as_array, bounding_box, translate_to_origin, scale_uniform,
    resample_to_count, min_distances, segment_distances, polyline_segments,
)
from .Routes import movement_extent
from .utils import (
    RouteTreeError, ConfigError, ContractError, DegenerateRouteError,
    TemplateError, BLOCKING,
)

logger = logging.getLogger(__name__)


DEFAULT_GAMMA = 0.5
DEFAULT_STEP_YARDS = 0.5
DEFAULT_BLOCKING_THRESHOLD = 4.0

# rounding slack when comparing grid offsets with w (yards)
GRID_TOL = 1e-9



class Gamma(object):
    """
    Weight on D_scaled, in (0, 1].
    """
    def __init__(self, value=DEFAULT_GAMMA):
        value = float(value)
        if not (0 < value <= 1):
            raise ConfigError("gamma must be in (0, 1], got {}".format(value))
        self.value = value

    @classmethod
    def coerce(cls, value):
        return value if isinstance(value, Gamma) else cls(value)

    def __float__(self):
        return self.value

    def __eq__(self, other):
        if not isinstance(other, Gamma):
            return NotImplemented
        return self.value == other.value

    __hash__ = None

    def __repr__(self):
        return "Gamma({})".format(self.value)



class ScaledTemplate(object):
    """
    A template moved onto a game route's origin-aligned bounding box.

    Attributes:
    -----------
    points: Polyline
        Origin-aligned template scaled by scale_factor.
    bound_axis: str
        'horizontal' if the width ratio was used (right sides flush),
        'vertical' if the height ratio was used (tops flush).
    """
    def __init__(self, name, points, scale_factor, bound_axis):
        self.name = name
        self.points = points
        self.scale_factor = scale_factor
        self.bound_axis = bound_axis

    def __repr__(self):
        return "ScaledTemplate({}, factor={:.6g}, bound={})".format(
            self.name, self.scale_factor, self.bound_axis)



class ShiftGrid(object):
    """
    Offsets at which a scaled template is evaluated along one axis.
    """
    def __init__(self, axis, offsets, w):
        self.axis = axis
        self.offsets = tuple(offsets)
        self.w = w

    @property
    def shifts(self):
        "(n, 2) array of (dx, dy) per offset."
        shifts = np.zeros((len(self.offsets), 2))
        shifts[:, 0 if self.axis == "x" else 1] = self.offsets
        return shifts

    def __len__(self):
        return len(self.offsets)

    def __repr__(self):
        return "ShiftGrid(axis={}, w={:.6g}, n={})".format(
            self.axis, self.w, len(self))



class MatchResult(object):
    """
    Classification outcome for one route.

    label is a template name, 'blocking/bubble', or None when the route
    failed (see .error). per_template maps each template name to its best
    D_route over all shifts.
    """
    def __init__(
        self,
        game_id,
        play_id,
        player_id,
        label,
        best_distance=None,
        best_template=None,
        best_shift=None,
        per_template=None,
        d_game=None,
        d_scaled=None,
        scale_factor=None,
        error=None,
        ):
        self.game_id = str(game_id)
        self.play_id = str(play_id)
        self.player_id = str(player_id)
        self.label = label
        self.best_distance = best_distance
        self.best_template = best_template
        self.best_shift = best_shift
        self.per_template = (per_template if per_template else OrderedDict())
        self.d_game = d_game
        self.d_scaled = d_scaled
        self.scale_factor = scale_factor
        self.error = error

    @property
    def key(self):
        return (self.game_id, self.play_id, self.player_id)

    def to_dict(self):
        return OrderedDict([
            ("game_id", self.game_id),
            ("play_id", self.play_id),
            ("player_id", self.player_id),
            ("label", self.label),
            ("best_distance", self.best_distance),
            ("best_template", self.best_template),
            ("best_shift", (list(self.best_shift) if self.best_shift else None)),
            ("d_game", self.d_game),
            ("d_scaled", self.d_scaled),
            ("scale_factor", self.scale_factor),
            ("per_template", OrderedDict(self.per_template)),
            ("error", self.error),
        ])

    @classmethod
    def from_dict(cls, data):
        shift = data.get("best_shift")
        return cls(
            data["game_id"],
            data["play_id"],
            data["player_id"],
            data.get("label"),
            best_distance=data.get("best_distance"),
            best_template=data.get("best_template"),
            best_shift=(tuple(shift) if shift else None),
            per_template=OrderedDict(data.get("per_template") or {}),
            d_game=data.get("d_game"),
            d_scaled=data.get("d_scaled"),
            scale_factor=data.get("scale_factor"),
            error=data.get("error"),
        )

    def __eq__(self, other):
        if not isinstance(other, MatchResult):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    __hash__ = None

    def __repr__(self):
        return "MatchResult({}, {}, {})".format(
            ":".join(self.key), self.label, self.best_distance)



def _points(obj):
    "Coordinates of a route, template, polyline or array."
    for attr in ("waypoints", "points"):
        if hasattr(obj, attr):
            obj = getattr(obj, attr)
            break
    return as_array(obj)


def axis_ratio(template_extent, game_extent):
    """
    Template-to-game extent ratio along one axis. A zero game extent gives
    +inf (the template cannot bind there), a zero template extent gives 0,
    and both zero gives 1.
    """
    if game_extent > 0:
        return template_extent / game_extent
    if template_extent > 0:
        return np.inf
    return 1.0



def scale_template(template, game):
    """
    Align a template's bounding box with the game route's at the origin and
    scale it by 1 / max(r_h, r_v) so it fits inside the game box with its
    aspect ratio unchanged.

    Parameters:
    -----------
    template: Template (or anything with .waypoints / .points)
    game: CanonicalRoute (or anything with .points)

    Returns:
    --------
    ScaledTemplate
    """
    name = getattr(template, "name", None)
    tpoints = translate_to_origin(Polyline(_points(template)))
    gbox = bounding_box(translate_to_origin(Polyline(_points(game))))
    tbox = bounding_box(tpoints)

    if gbox.max_x == 0 and gbox.max_y == 0:
        raise DegenerateRouteError(
            "game route has zero extent on both axes")
    if tbox.max_x == 0 and tbox.max_y == 0:
        raise TemplateError("template '{}' has zero extent".format(name))

    r_h = axis_ratio(tbox.max_x, gbox.max_x)
    r_v = axis_ratio(tbox.max_y, gbox.max_y)

    # an infinite ratio never binds; ties go to the horizontal axis
    finite = [i for i in ((r_h, "horizontal"), (r_v, "vertical")) if np.isfinite(i[0])]
    ratio, bound = max(finite, key=lambda i: i[0])

    if ratio > 0:
        factor = 1. / ratio
    else:
        # a straight template across a straight game route: match long sides
        factor = max(gbox.max_x, gbox.max_y) / max(tbox.max_x, tbox.max_y)

    return ScaledTemplate(name, scale_uniform(tpoints, factor), factor, bound)



def shift_grid(scaled, game, step=DEFAULT_STEP_YARDS, include_exact_endpoint=False):
    """
    Offsets for sliding a scaled template inside the game box. Tops flush
    (vertical bound) slides along x; right sides flush (horizontal bound)
    slides along y. Offsets run 0, step, ... up to w rounded down to a
    multiple of step, plus w itself if include_exact_endpoint.
    """
    gbox = bounding_box(translate_to_origin(Polyline(_points(game))))
    sbox = bounding_box(scaled.points)
    if scaled.bound_axis == "horizontal":
        axis = "y"
        w = abs(gbox.max_y - sbox.max_y)
    else:
        axis = "x"
        w = abs(gbox.max_x - sbox.max_x)

    # a template already past the game box (orthogonal straight lines)
    # stays where it is
    overflow = (
        sbox.max_x > gbox.max_x + GRID_TOL or sbox.max_y > gbox.max_y + GRID_TOL)
    if w <= GRID_TOL or overflow:
        return ShiftGrid(axis, [0.0], 0.0)

    nsteps = int(np.floor(w / step + GRID_TOL))
    offsets = [i * step for i in range(nsteps + 1)]
    if include_exact_endpoint and (w - offsets[-1]) > GRID_TOL:
        offsets.append(w)
    return ShiftGrid(axis, offsets, w)



def route_distance(game, scaled_shifted, gamma=DEFAULT_GAMMA):
    """
    Bidirectional distance between a game route and a placed template.

    Parameters:
    -----------
    game: CanonicalRoute, Polyline or (T, 2) array
    scaled_shifted: Polyline or array with at least T points
    gamma: float or Gamma

    Returns:
    --------
    (d_route, d_game, d_scaled)
    """
    gamma = Gamma.coerce(gamma)
    gpoints = _points(game)
    spoints = _points(scaled_shifted)
    if len(spoints) < len(gpoints):
        raise ContractError(
            "placed template has {} points but the game route has {}"
            .format(len(spoints), len(gpoints)))
    d_game = float(min_distances(gpoints, spoints).sum())
    d_scaled = float(min_distances(spoints, gpoints).sum())
    return d_game + gamma.value * d_scaled, d_game, d_scaled



def grid_distances(gpoints, spoints, grid, outline=None):
    """
    D_game and D_scaled at every offset of a grid at once.

    outline, when given, traces the same polyline as spoints with fewer
    vertices (the template before augmentation) and is used for D_game.

    Returns:
    --------
    (d_game, d_scaled): ndarrays with one value per offset
    """
    shifts = grid.shifts[:, None, :]
    sstarts, sends = polyline_segments(spoints if outline is None else outline)
    gstarts, gends = polyline_segments(gpoints)

    # a game point against a shifted template equals the game point moved
    # back by the shift against the template in place
    d_game = segment_distances(gpoints[None] - shifts, sstarts, sends)
    d_scaled = segment_distances(spoints[None] + shifts, gstarts, gends)
    return d_game.min(axis=-1).sum(axis=-1), d_scaled.min(axis=-1).sum(axis=-1)



def classify_route(
    game,
    tset,
    gamma=DEFAULT_GAMMA,
    blocking_threshold=DEFAULT_BLOCKING_THRESHOLD,
    step=DEFAULT_STEP_YARDS,
    include_exact_endpoint=False,
    ):
    """
    Label one canonical route with the closest template.

    Parameters:
    -----------
    game: CanonicalRoute
    tset: TemplateSet
    gamma: float or Gamma
        Weight on D_scaled in (0, 1].
    blocking_threshold: float
        Routes whose points all stay within this many yards of the first
        point are labeled blocking/bubble without matching.
    step: float
        Grid step in yards.
    include_exact_endpoint: bool
        Also evaluate the offset w itself.

    Returns:
    --------
    MatchResult. Equal distances resolve to the alphabetically first
    label, and to the smallest offset within a template.
    """
    gamma = Gamma.coerce(gamma)
    if not len(tset):
        raise ContractError("template set is empty")

    ident = (game.game_id, game.play_id, game.player_id)
    if movement_extent(game) <= blocking_threshold:
        return MatchResult(*ident, label=BLOCKING)

    gpoints = translate_to_origin(game.points).points
    npoints = len(gpoints)

    per_template = OrderedDict()
    best = None
    for template in tset:
        scaled = scale_template(template, game)
        grid = shift_grid(scaled, game, step, include_exact_endpoint)

        # templates are augmented once; shifting keeps the spacing
        placed = scaled.points
        if len(placed) < npoints:
            placed = resample_to_count(placed, npoints)

        d_game, d_scaled = grid_distances(
            gpoints, placed.points, grid, outline=scaled.points.points)
        d_route = d_game + gamma.value * d_scaled
        idx = int(np.argmin(d_route))
        per_template[template.name] = float(d_route[idx])

        candidate = (
            float(d_route[idx]),
            template.name,
            (grid.axis, float(grid.offsets[idx])),
            float(d_game[idx]),
            float(d_scaled[idx]),
            scaled.scale_factor,
        )
        if best is None or candidate[:2] < best[:2]:
            best = candidate

    return MatchResult(
        *ident,
        label=best[1],
        best_distance=best[0],
        best_template=best[1],
        best_shift=best[2],
        per_template=per_template,
        d_game=best[3],
        d_scaled=best[4],
        scale_factor=best[5],
    )



def classify_batch(
    routes,
    tset,
    gamma=DEFAULT_GAMMA,
    blocking_threshold=DEFAULT_BLOCKING_THRESHOLD,
    step=DEFAULT_STEP_YARDS,
    include_exact_endpoint=False,
    workers=1,
    ):
    """
    classify_route over many routes, in input order. A route that fails
    gets a MatchResult with label None and the error message instead of
    stopping the batch. workers > 1 spreads routes over a thread pool; the
    output does not depend on it.
    """
    gamma = Gamma.coerce(gamma)
    if not len(tset):
        raise ContractError("template set is empty")

    def _classify(route):
        try:
            return classify_route(
                route, tset, gamma, blocking_threshold, step, include_exact_endpoint)
        except RouteTreeError as err:
            logger.warning("route %s failed: %s", ":".join(route.key), err)
            return MatchResult(
                route.game_id, route.play_id, route.player_id, None, error=str(err))

    routes = list(routes)
    if workers and workers > 1 and len(routes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_classify, routes))
    return [_classify(i) for i in routes]



def pair_distance(route_a, route_b, gamma=1.0):
    """
    Bidirectional distance between two routes in place (no scaling or
    shift search). The shorter route is augmented to the longer one's
    point count first.
    """
    apoints = Polyline(_points(route_a))
    bpoints = Polyline(_points(route_b))
    if len(apoints) < len(bpoints):
        apoints = resample_to_count(apoints, len(bpoints))
    elif len(bpoints) < len(apoints):
        bpoints = resample_to_count(bpoints, len(apoints))
    return route_distance(apoints, bpoints, gamma)[0]



def route_medoid(routes):
    """
    Index of the route with the smallest summed pair_distance (gamma = 1)
    to the rest of its group; ties go to the earlier route.
    """
    routes = list(routes)
    if not routes:
        raise RouteTreeError("cannot take the medoid of an empty group")
    totals = np.zeros(len(routes))
    for i in range(len(routes)):
        for j in range(i + 1, len(routes)):
            dist = pair_distance(routes[i], routes[j])
            totals[i] += dist
            totals[j] += dist
    return int(np.argmin(totals))
