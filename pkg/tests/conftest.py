#!/usr/bin/env python

"""
Shared test helpers: a dense-sampling distance oracle and builders for
small synthetic tracking plays.
"""

import numpy as np
import pytest

from routetree.Routes import CanonicalRoute


HEADER = [
    "gameId", "playId", "nflId", "frame.id", "x", "y",
    "event", "position", "playDirection", "team",
]


def dense_segment_distance(pt, a, b, spacing=1e-3):
    "Distance from pt to segment ab by sampling points spacing apart."
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    length = float(np.hypot(*(b - a)))
    nsamples = max(2, int(np.ceil(length / spacing)) + 1)
    frac = np.linspace(0, 1, nsamples)[:, None]
    samples = a + frac * (b - a)
    delta = samples - np.asarray(pt, dtype=float)
    return float(np.hypot(delta[:, 0], delta[:, 1]).min())


def dense_polyline_distance(pt, points, spacing=1e-3):
    points = np.asarray(points, dtype=float)
    return min(
        dense_segment_distance(pt, points[i], points[i + 1], spacing)
        for i in range(len(points) - 1)
    )


def densify(points, spacing):
    points = np.asarray(points, dtype=float)
    chunks = []
    for a, b in zip(points[:-1], points[1:]):
        nsamples = max(2, int(np.ceil(np.hypot(*(b - a)) / spacing)) + 1)
        chunks.append(a + np.linspace(0, 1, nsamples)[:, None] * (b - a))
    return np.vstack(chunks)


def dense_sum(points, samples):
    delta = np.asarray(points, dtype=float)[:, None, :] - samples[None, :, :]
    return float(np.hypot(delta[..., 0], delta[..., 1]).min(axis=1).sum())


def dense_route_distance(game, placed, gamma, spacing=1e-2):
    "Oracle D_route, D_game, D_scaled between two point arrays."
    d_game = dense_sum(game, densify(placed, spacing))
    d_scaled = dense_sum(placed, densify(game, spacing))
    return d_game + gamma * d_scaled, d_game, d_scaled


def make_route(points, game_id="g", play_id="p", player_id="r", position="WR"):
    return CanonicalRoute(game_id, play_id, player_id, position, points)


def play_rows(
    game_id=1,
    play_id=1,
    direction="right",
    nframes=80,
    snap_frame=11,
    outcome_frame=None,
    ball=(60.0, 26.65),
    players=(),
    ):
    """
    CSV rows for one play. players holds (nflId, position, start, step)
    tuples; each player stands at start until the snap and then moves by
    step (dx, dy) per frame. snap_frame=None leaves out the snap event
    and nobody moves.
    """
    rows = []
    for frame in range(1, nframes + 1):
        event = ""
        if frame == snap_frame:
            event = "ball_snap"
        elif frame == outcome_frame:
            event = "pass_outcome_caught"
        moved = (max(0, frame - snap_frame) if snap_frame else 0)
        rows.append([
            game_id, play_id, "", frame, ball[0], ball[1],
            event, "", direction or "", "ball",
        ])
        for nfl_id, position, start, step in players:
            rows.append([
                game_id, play_id, nfl_id, frame,
                round(start[0] + moved * step[0], 6),
                round(start[1] + moved * step[1], 6),
                event, position, direction or "", "home",
            ])
    return rows


def tracking_csv(rows, header=HEADER):
    lines = [",".join(header)]
    lines.extend(",".join(str(i) for i in row) for row in rows)
    return "\n".join(lines) + "\n"


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20190402))
