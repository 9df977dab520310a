#!/usr/bin/env python

"""
A delimited-text parser for player tracking data. The default column
mapping matches the 2017 Big Data Bowl tracking files; any other layout
is handled by passing a schema that maps logical fields to column names.
Rows whose coordinates or time cannot be read as numbers are skipped and
reported with their file row numbers.
"""

import io
import logging
from collections import namedtuple
import numpy as np
import pandas as pd

from .utils import TrackingError, get_text_from_source

logger = logging.getLogger(__name__)


# marker used as player_id for the ball's rows
BALL = "ball"

DEFAULT_SCHEMA = {
    "game_id": "gameId",
    "play_id": "playId",
    "player_id": "nflId",
    "x": "x",
    "y": "y",
    "time": "frame.id",
    "event": "event",
    "position": "position",
    "play_direction": "playDirection",
    "team": "team",
    # how to read the time column: frame (100 ms frames from 1), ms, s,
    # or datetime (made relative to each play's first frame)
    "time_unit": "frame",
    "delimiter": ",",
    # players table join (nflId -> PositionAbbr)
    "players_id": "nflId",
    "players_position": "PositionAbbr",
}

REQUIRED_FIELDS = ("game_id", "play_id", "player_id", "x", "y", "time")
OPTIONAL_FIELDS = ("event", "position", "play_direction", "team")
TIME_UNITS = ("frame", "ms", "s", "datetime")
FRAME_MS = 100.0


TrackingFrame = namedtuple("TrackingFrame", [
    "game_id",
    "play_id",
    "player_id",
    "position_code",
    "x",
    "y",
    "timestamp_ms",
    "event",
    "play_direction",
])



class TrackingParser(object):
    """
    Reads tracking rows into TrackingFrames.

    Parameters:
    -----------
    source: (str, bytes, file, or URL)
        Delimited text with a header row.
    schema: dict or None
        Overrides for DEFAULT_SCHEMA (logical field -> column name).
    positions: dict or None
        player_id -> position code, used when the tracking table has no
        position column (see load_positions).

    Attributes:
    -----------
    rejected: list of (row_number, column, value)
        Rows skipped because a numeric field did not parse. Row numbers
        count the header as row 1.
    """
    def __init__(self, source, schema=None, positions=None):
        self.source = source
        self.schema = dict(DEFAULT_SCHEMA)
        self.schema.update(schema or {})
        self.positions = {str(i): str(j) for (i, j) in (positions or {}).items()}
        self.table = None
        self.frames = None
        self.rejected = []
        self._run()


    def _run(self):
        self.check_schema()
        self.get_table_from_source()
        self.check_columns()
        self.parse_columns()


    def check_schema(self):
        if self.schema["time_unit"] not in TIME_UNITS:
            raise TrackingError(
                "time_unit must be one of {}, got {!r}".format(
                    TIME_UNITS, self.schema["time_unit"]))


    def get_table_from_source(self):
        text = get_text_from_source(self.source)
        if not text.strip():
            raise TrackingError("tracking input is empty")
        try:
            self.table = pd.read_csv(
                io.StringIO(text),
                sep=self.schema["delimiter"],
                dtype=str,
                keep_default_na=False,
            )
        except pd.errors.EmptyDataError:
            raise TrackingError("tracking input is empty")
        if not len(self.table):
            raise TrackingError("tracking input has a header but no rows")


    def check_columns(self):
        missing = [
            "{} (column '{}')".format(i, self.schema[i])
            for i in REQUIRED_FIELDS
            if self.schema[i] not in self.table.columns
        ]
        if missing:
            raise TrackingError(
                "tracking input is missing required columns: {}"
                .format(", ".join(missing)))


    def _column(self, field, default=""):
        name = self.schema.get(field)
        if name and name in self.table.columns:
            return self.table[name].str.strip()
        return pd.Series(default, index=self.table.index, dtype=object)


    def _reject(self, mask, field):
        colname = self.schema[field]
        for idx in self.table.index[mask]:
            self.rejected.append(
                (int(idx) + 2, colname, self.table.at[idx, colname]))


    def parse_columns(self):
        table = self.table
        xs = pd.to_numeric(self._column("x"), errors="coerce")
        ys = pd.to_numeric(self._column("y"), errors="coerce")
        times = self.parse_times()

        # report each bad row once, naming the first field that failed
        bad = pd.Series(False, index=table.index)
        for field, values in (("x", xs), ("y", ys), ("time", times)):
            failed = ~np.isfinite(values.astype(float)) & ~bad
            self._reject(failed, field)
            bad |= failed
        if self.rejected:
            logger.warning(
                "skipped %d tracking rows with unreadable numbers (first at row %d)",
                len(self.rejected), self.rejected[0][0])

        # ball rows have no player id, or the ball team marker
        players = self._column("player_id")
        teams = self._column("team")
        is_ball = (players == "") | (players.str.upper() == "NA") | (teams == BALL)
        players = players.where(~is_ball, BALL)

        positions = self._column("position")
        if self.positions:
            joined = players.map(self.positions).fillna("")
            positions = positions.where(positions != "", joined)
        positions = positions.where(~is_ball, "")

        events = self._column("event")
        directions = self._column("play_direction")

        self.frames = pd.DataFrame({
            "game_id": self._column("game_id"),
            "play_id": self._column("play_id"),
            "player_id": players,
            "position_code": positions,
            "x": xs,
            "y": ys,
            "timestamp_ms": times,
            "event": events,
            "play_direction": directions,
        })[~bad]


    def parse_times(self):
        raw = self._column("time")
        unit = self.schema["time_unit"]
        if unit == "datetime":
            stamps = pd.to_datetime(raw, errors="coerce")
            keys = [self._column("game_id"), self._column("play_id")]
            start = stamps.groupby(keys).transform("min")
            return (stamps - start).dt.total_seconds() * 1000.0
        values = pd.to_numeric(raw, errors="coerce")
        if unit == "frame":
            return (values - 1) * FRAME_MS
        if unit == "s":
            return values * 1000.0
        return values


    def iter_frames(self):
        "Yields TrackingFrames in file order."
        for row in self.frames.itertuples(index=False):
            yield TrackingFrame(
                str(row.game_id),
                str(row.play_id),
                str(row.player_id),
                str(row.position_code),
                float(row.x),
                float(row.y),
                float(row.timestamp_ms),
                _text_or_none(row.event),
                _text_or_none(row.play_direction),
            )

    def __iter__(self):
        return self.iter_frames()

    def __len__(self):
        return len(self.frames)

    @property
    def nrejected(self):
        return len(self.rejected)



def parse_tracking(source, schema=None, positions=None):
    """
    Parse delimited tracking data. Returns an iterable TrackingParser whose
    .rejected attribute lists skipped rows. Missing required columns and
    empty input raise TrackingError.
    """
    return TrackingParser(source, schema=schema, positions=positions)



def load_positions(source, schema=None):
    """
    Read a players table into a player_id -> position code dict.
    """
    cols = dict(DEFAULT_SCHEMA)
    cols.update(schema or {})
    text = get_text_from_source(source)
    if not text.strip():
        raise TrackingError("players table is empty")
    table = pd.read_csv(
        io.StringIO(text), sep=cols["delimiter"], dtype=str, keep_default_na=False)
    for field in ("players_id", "players_position"):
        if cols[field] not in table.columns:
            raise TrackingError(
                "players table is missing column '{}'".format(cols[field]))
    return dict(zip(
        table[cols["players_id"]].str.strip(),
        table[cols["players_position"]].str.strip(),
    ))



def _text_or_none(value):
    if isinstance(value, str) and value:
        return value
    return None
