#!/usr/bin/env python

"""
Route extraction and normalization. Tracking frames are grouped by play,
clipped from the snap to the pass outcome (or the cutoff time, whichever
comes first) for every eligible receiver, and then rotated and mirrored
into the canonical frame where every route is run from the left of the
ball attacking +y with the field center at +x.
"""

import json
import logging
from collections import OrderedDict
import numpy as np
import pandas as pd

from .Geometry import Point, Polyline, as_array, rotate_array
from .TrackingParser import BALL, FRAME_MS
from .utils import RouteTreeError, get_text_from_source, route_key

logger = logging.getLogger(__name__)


SNAP_EVENT = "ball_snap"

OUTCOME_EVENTS = (
    "pass_outcome_caught",
    "pass_outcome_incomplete",
    "pass_outcome_interception",
    "pass_outcome_touchdown",
)

OFFENSE_POSITIONS = ("QB", "RB", "FB", "HB", "WR", "TE", "C", "G", "T", "OG", "OT", "OL")

# counter-clockwise quarter turns taking the attacking direction to +y
QUARTER_TURNS = {"right": 1, "up": 0, "left": 3, "down": 2}

DEFAULT_CUTOFF_S = 5.0

# timestamp slack when matching frames to event times (ms)
TIME_TOL = 1e-6



class RawRoute(object):
    """
    One receiver's clipped trajectory in field coordinates.
    """
    def __init__(
        self,
        game_id,
        play_id,
        player_id,
        position_code,
        points,
        snap_point,
        ball_snap_point,
        cutoff_time_s,
        play_direction=None,
        ):
        self.game_id = str(game_id)
        self.play_id = str(play_id)
        self.player_id = str(player_id)
        self.position_code = position_code
        self.points = Polyline(points)
        self.snap_point = Point(*map(float, snap_point))
        self.ball_snap_point = Point(*map(float, ball_snap_point))
        self.cutoff_time_s = float(cutoff_time_s)
        self.play_direction = play_direction

    @property
    def key(self):
        return route_key(self.game_id, self.play_id, self.player_id)

    def __repr__(self):
        return "RawRoute({}, n={})".format(":".join(self.key), len(self.points))



class CanonicalRoute(object):
    """
    A receiver route in the canonical frame (yards).

    Parameters:
    -----------
    points: Polyline or sequence of (x, y)
        Relative to the receiver's snap position at (0, 0).
    cutoff_s: float
        Seconds of route kept after the snap.
    ball_point: Point or None
        The ball's snap position relative to the receiver, when known.
    """
    def __init__(
        self,
        game_id,
        play_id,
        player_id,
        position,
        points,
        cutoff_s=None,
        ball_point=None,
        ):
        self.game_id = str(game_id)
        self.play_id = str(play_id)
        self.player_id = str(player_id)
        self.position = position
        self.points = Polyline(points)
        self.cutoff_s = (None if cutoff_s is None else float(cutoff_s))
        self.ball_point = (None if ball_point is None else Point(*ball_point))

    @property
    def T(self):
        "Number of points."
        return len(self.points)

    @property
    def key(self):
        return route_key(self.game_id, self.play_id, self.player_id)

    def with_points(self, points, cutoff_s=None):
        "A copy holding new points."
        return CanonicalRoute(
            self.game_id, self.play_id, self.player_id, self.position,
            points,
            cutoff_s=(self.cutoff_s if cutoff_s is None else cutoff_s),
            ball_point=self.ball_point,
        )

    def as_raw(self):
        """
        Returns this route as a RawRoute attacking 'up', so it can be sent
        back through canonicalize.
        """
        ball = self.ball_point if self.ball_point is not None else Point(1.0, 0.0)
        first = self.points[0]
        return RawRoute(
            self.game_id, self.play_id, self.player_id, self.position,
            self.points,
            snap_point=first,
            ball_snap_point=(first.x + ball.x, first.y + ball.y),
            cutoff_time_s=(self.cutoff_s if self.cutoff_s is not None else 0.0),
            play_direction="up",
        )

    def to_dict(self):
        return OrderedDict([
            ("game_id", self.game_id),
            ("play_id", self.play_id),
            ("player_id", self.player_id),
            ("position", self.position),
            ("points", self.points.tolist()),
            ("cutoff_s", self.cutoff_s),
        ])

    @classmethod
    def from_dict(cls, data):
        return cls(
            data["game_id"],
            data["play_id"],
            data["player_id"],
            data.get("position"),
            data["points"],
            cutoff_s=data.get("cutoff_s"),
        )

    def __eq__(self, other):
        if not isinstance(other, CanonicalRoute):
            return NotImplemented
        return (
            self.key == other.key and
            self.position == other.position and
            self.points == other.points and
            self.cutoff_s == other.cutoff_s
        )

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None

    def __repr__(self):
        return "CanonicalRoute({}, T={})".format(":".join(self.key), self.T)



class Eligibility(object):
    """
    Position filter for route runners. Wide receivers and tight ends are
    always eligible; running backs only when split out, i.e. lined up at
    least rb_split_yards laterally from the ball at the snap.
    """
    def __init__(self, positions=("WR", "TE", "RB"), rb_split_yards=8.0):
        self.positions = tuple(positions)
        self.rb_split_yards = float(rb_split_yards)

    def __call__(self, position, snap_point, ball_point):
        if position not in self.positions:
            return False
        if position == "RB":
            # field y is the lateral axis
            return abs(snap_point[1] - ball_point[1]) >= self.rb_split_yards
        return True



class RouteExtractor(object):
    """
    Cuts tracking frames into RawRoutes, one per eligible player per play.

    Parameters:
    -----------
    frames: iterable of TrackingFrame
    eligibility: Eligibility or callable(position, snap_point, ball_point)
    cutoff_s: float
        Routes end at min(pass outcome, snap + cutoff_s).
    include_snap_frame: bool
        Keep the snap frame itself (a 5 s route then has 51 points).

    Attributes:
    -----------
    routes: list of RawRoute
    skipped: list of (game_id, play_id, player_id or None, reason)
    outcome_times: list of (game_id, play_id, seconds)
        Time from the snap to the first pass outcome, for plays that have one.
    """
    def __init__(
        self,
        frames,
        eligibility=None,
        cutoff_s=DEFAULT_CUTOFF_S,
        include_snap_frame=True,
        ):
        self.frames = frames
        self.eligibility = (eligibility if eligibility else Eligibility())
        self.cutoff_s = float(cutoff_s)
        self.include_snap_frame = include_snap_frame
        self.routes = []
        self.skipped = []
        self.outcome_times = []
        self._run()


    @property
    def max_points(self):
        npoints = int(np.floor(self.cutoff_s * 1000. / FRAME_MS + 1e-9))
        return npoints + (1 if self.include_snap_frame else 0)


    def _run(self):
        plays = OrderedDict()
        for frame in self.frames:
            plays.setdefault((frame.game_id, frame.play_id), []).append(frame)
        for (game_id, play_id), frames in plays.items():
            self.extract_play(game_id, play_id, frames)
        if self.skipped:
            logger.warning("skipped %d plays or players", len(self.skipped))
        logger.info("extracted %d routes from %d plays", len(self.routes), len(plays))


    def skip(self, game_id, play_id, player_id, reason):
        self.skipped.append((game_id, play_id, player_id, reason))


    def extract_play(self, game_id, play_id, frames):
        snaps = [i.timestamp_ms for i in frames if i.event == SNAP_EVENT]
        if not snaps:
            self.skip(game_id, play_id, None, "no ball_snap event")
            return
        snap_ms = min(snaps)

        # the first outcome event after the snap ends the route
        outcomes = [
            i.timestamp_ms for i in frames
            if i.event in OUTCOME_EVENTS and i.timestamp_ms >= snap_ms
        ]
        end_ms = snap_ms + self.cutoff_s * 1000.
        if outcomes:
            self.outcome_times.append(
                (game_id, play_id, (min(outcomes) - snap_ms) / 1000.))
            end_ms = min(end_ms, min(outcomes))

        # per-player trajectories in time order
        players = OrderedDict()
        for frame in frames:
            players.setdefault(frame.player_id, []).append(frame)
        for pid in players:
            players[pid].sort(key=lambda i: i.timestamp_ms)

        snap_positions = {}
        for pid, pframes in players.items():
            at_snap = [i for i in pframes if abs(i.timestamp_ms - snap_ms) <= TIME_TOL]
            if at_snap:
                snap_positions[pid] = at_snap[0]

        if BALL not in snap_positions:
            self.skip(game_id, play_id, None, "no ball position at the snap")
            return
        ball = snap_positions[BALL]
        ball_point = (ball.x, ball.y)

        direction = self.get_play_direction(frames, snap_positions, ball_point)
        if direction is None:
            self.skip(game_id, play_id, None, "cannot determine play direction")
            return

        for pid, pframes in players.items():
            if pid == BALL:
                continue
            position = pframes[0].position_code
            if pid not in snap_positions:
                if position in getattr(self.eligibility, "positions", (position,)):
                    self.skip(game_id, play_id, pid, "no frame at the snap")
                continue

            snap = snap_positions[pid]
            snap_point = (snap.x, snap.y)
            if not self.eligibility(position, snap_point, ball_point):
                continue

            kept = [
                i for i in pframes
                if snap_ms - TIME_TOL <= i.timestamp_ms <= end_ms + TIME_TOL
            ]
            if not self.include_snap_frame:
                kept = [i for i in kept if i.timestamp_ms > snap_ms + TIME_TOL]
            kept = kept[:self.max_points]
            if len(kept) < 2:
                self.skip(game_id, play_id, pid, "fewer than 2 frames after the snap")
                continue

            self.routes.append(RawRoute(
                game_id,
                play_id,
                pid,
                position,
                [(i.x, i.y) for i in kept],
                snap_point=snap_point,
                ball_snap_point=ball_point,
                cutoff_time_s=(end_ms - snap_ms) / 1000.,
                play_direction=direction,
            ))


    def get_play_direction(self, frames, snap_positions, ball_point):
        """
        Use the tracking data's direction flag when present; otherwise the
        offense lines up behind the ball, so compare its mean longitudinal
        position at the snap with the ball's.
        """
        flags = [i.play_direction for i in frames if i.play_direction]
        if flags:
            flag = flags[0].lower()
            return flag if flag in QUARTER_TURNS else None

        offense = [
            i.x for (pid, i) in snap_positions.items()
            if pid != BALL and i.position_code in OFFENSE_POSITIONS
        ]
        if not offense:
            return None
        mean_x = float(np.mean(offense))
        if mean_x == ball_point[0]:
            return None
        return "right" if mean_x < ball_point[0] else "left"



def extract_routes(frames, eligibility=None, cutoff_s=DEFAULT_CUTOFF_S, include_snap_frame=True):
    """
    Returns the list of RawRoutes for the eligible players in frames. Use
    RouteExtractor directly to also get the skip report.
    """
    return RouteExtractor(
        frames,
        eligibility=eligibility,
        cutoff_s=cutoff_s,
        include_snap_frame=include_snap_frame,
    ).routes



def canonicalize(route, play_direction=None):
    """
    Move a RawRoute into the canonical frame: the receiver's snap
    position goes to (0, 0), an exact quarter turn points the attacking
    direction to +y, and routes run from the right of the ball are
    mirrored so every route is run from the left with the field center at
    +x. A receiver exactly in line with the ball is not mirrored.

    Parameters:
    -----------
    route: RawRoute
    play_direction: str or None
        'right', 'left', 'up' or 'down'; defaults to route.play_direction.
    """
    direction = (play_direction or route.play_direction or "").lower()
    if direction not in QUARTER_TURNS:
        raise RouteTreeError(
            "unknown play direction {!r} for route {}".format(
                direction, ":".join(route.key)))
    turns = QUARTER_TURNS[direction]

    arr = as_array(route.points)
    points = rotate_array(arr - np.array(route.snap_point), turns)
    ball = rotate_array(
        np.array(route.ball_snap_point) - np.array(route.snap_point), turns)

    # ball to the receiver's left means the receiver is right of the ball
    if ball[0] < 0:
        points[:, 0] = -points[:, 0]
        ball[0] = -ball[0]

    return CanonicalRoute(
        route.game_id,
        route.play_id,
        route.player_id,
        route.position_code,
        points,
        cutoff_s=route.cutoff_time_s,
        ball_point=(float(ball[0]), float(ball[1])),
    )



def movement_extent(route):
    """
    Largest distance of any route point from the route's first point.
    """
    arr = as_array(route.points if hasattr(route, "points") else route)
    delta = arr - arr[0]
    return float(np.hypot(delta[:, 0], delta[:, 1]).max())



def truncate_route(route, cutoff_s, frame_ms=FRAME_MS):
    """
    Clip a canonical route sampled every frame_ms to its first cutoff_s
    seconds (keeping the first point). Routes shorter than the cutoff are
    returned unchanged.
    """
    keep = int(np.floor(cutoff_s * 1000. / frame_ms + 1e-9)) + 1
    if keep >= route.T:
        return route
    keep = max(keep, 2)
    cut = cutoff_s if route.cutoff_s is None else min(route.cutoff_s, cutoff_s)
    return route.with_points(route.points.points[:keep], cutoff_s=cut)



def cutoff_ecdf(times):
    """
    Empirical CDF of snap-to-outcome times as a DataFrame with columns
    seconds and ecdf, sorted by time.
    """
    seconds = np.sort(np.asarray([float(i) for i in times]))
    return pd.DataFrame({
        "seconds": seconds,
        "ecdf": np.arange(1, len(seconds) + 1) / float(max(len(seconds), 1)),
    })



#######################################################
# JSON-lines storage
#######################################################
def write_routes(routes, handle=None):
    """
    One JSON route per line. Returns the text, and writes it to the path
    'handle' when given.
    """
    text = "".join(json.dumps(i.to_dict()) + "\n" for i in routes)
    if handle:
        with open(handle, 'w') as out:
            out.write(text)
    return text


def read_routes(source):
    "Load CanonicalRoutes from JSON-lines text, a path, or a URL."
    routes = []
    text = get_text_from_source(source)
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            routes.append(CanonicalRoute.from_dict(json.loads(line)))
        except (ValueError, KeyError, TypeError) as err:
            raise RouteTreeError(
                "bad route record on line {}: {}".format(lineno, err))
    return routes
