#!/usr/bin/env python

"""
Run configuration for the command line. Defaults are defined here and
overlaid first by a JSON config file and then by command line flags.
"""

import copy
import json
import logging

from .TrackingParser import DEFAULT_SCHEMA
from .utils import ConfigError, TABLE_LABELS, get_text_from_source

logger = logging.getLogger(__name__)


# cutoffs compared in the evaluation harness (seconds)
STANDARD_CUTOFFS = (3.0, 4.0, 5.0)

DEFAULT_CLASSIFY_CONFIG = {
    "gamma": 0.5,
    "step_yards": 0.5,
    "cutoff_seconds": 5.0,
    "blocking_threshold_yards": 4.0,
    "include_exact_endpoint": False,
    "include_snap_frame": True,
    "rb_split_yards": 8.0,
    "positions": ["WR", "TE", "RB"],
    "workers": 1,
    "seed": 12345,
    "accuracy_floor": None,
    "templates": None,
}

DEFAULT_SYNTH_CONFIG = {
    "labels": list(TABLE_LABELS),
    "n_per_spec": 25,
    "target_scale": 15.0,
    "scale_range": None,
    "noise_sigma": 0.0,
    "jitter_break": 0.0,
    "point_count": 50,
}



class RunConfig(object):
    """
    Attribute-access settings for one command line run.

    Parameters:
    -----------
    overrides: dict or None
        Top level keys of DEFAULT_CLASSIFY_CONFIG plus the 'schema' and
        'synth' sub-dictionaries.
    """
    def __init__(self, overrides=None):
        self.__dict__ = copy.deepcopy(DEFAULT_CLASSIFY_CONFIG)
        self._schema = dict(DEFAULT_SCHEMA)
        self._synth = copy.deepcopy(DEFAULT_SYNTH_CONFIG)
        if overrides:
            self.update(overrides)


    def update(self, sdict):
        """
        Overlay another dict of settings. Unknown keys raise ConfigError;
        None values in flags mean 'not given' and are ignored by the CLI
        before reaching here.
        """
        if isinstance(sdict, RunConfig):
            sdict = sdict.to_dict()
        for key, val in sdict.items():
            if key in ("schema", "synth"):
                sub = self.__dict__["_" + key]
                unknown = set(val) - set(sub)
                if unknown:
                    raise ConfigError("unknown {} keys: {}".format(
                        key, ", ".join(sorted(unknown))))
                sub.update(val)
            elif key in DEFAULT_CLASSIFY_CONFIG:
                self.__dict__[key] = val
            else:
                raise ConfigError("unknown config key '{}'".format(key))


    @classmethod
    def from_file(cls, source):
        "Load a JSON config file on top of the defaults."
        try:
            data = json.loads(get_text_from_source(source))
        except ValueError as err:
            raise ConfigError("config is not valid JSON: {}".format(err))
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        return cls(data)


    @property
    def schema(self):
        return self._schema

    @property
    def synth(self):
        return self._synth


    def validate(self):
        """
        Check values and types. A cutoff outside the standard 3/4/5 s
        set is allowed with a warning.
        """
        try:
            gamma = float(self.gamma)
            step = float(self.step_yards)
            cutoff = float(self.cutoff_seconds)
            threshold = float(self.blocking_threshold_yards)
            split = float(self.rb_split_yards)
            workers = int(self.workers)
            int(self.seed)
        except (TypeError, ValueError) as err:
            raise ConfigError("bad config value: {}".format(err))

        if not 0 < gamma <= 1:
            raise ConfigError("gamma must be in (0, 1], got {}".format(gamma))
        if step <= 0:
            raise ConfigError("step_yards must be > 0")
        if cutoff <= 0:
            raise ConfigError("cutoff_seconds must be > 0")
        if cutoff not in STANDARD_CUTOFFS:
            logger.warning(
                "cutoff_seconds %s is not one of the standard cutoffs %s",
                cutoff, STANDARD_CUTOFFS)
        if threshold < 0:
            raise ConfigError("blocking_threshold_yards must be >= 0")
        if split < 0:
            raise ConfigError("rb_split_yards must be >= 0")
        if workers < 1:
            raise ConfigError("workers must be at least 1")
        if not isinstance(self.positions, (list, tuple)) or not self.positions:
            raise ConfigError("positions must be a non-empty list")
        if self.accuracy_floor is not None and not 0 <= float(self.accuracy_floor) <= 1:
            raise ConfigError("accuracy_floor must be in [0, 1]")
        if self.schema["time_unit"] not in ("frame", "ms", "s", "datetime"):
            raise ConfigError("unknown schema time_unit '{}'".format(self.schema["time_unit"]))
        if int(self.synth["n_per_spec"]) < 1:
            raise ConfigError("synth n_per_spec must be at least 1")
        return self


    def to_dict(self):
        "returns self as a dictionary with _underscore subdicts corrected."
        return {
            (key[1:] if key[0] == "_" else key): copy.deepcopy(val)
            for (key, val) in self.__dict__.items()
        }


    def __repr__(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)
