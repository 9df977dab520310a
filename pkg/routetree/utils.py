#!/usr/bin/env python

"""
Shared exceptions, label constants, logging setup and input loading.
"""

import os
import logging
import requests


#######################################################
# Exception Classes
#######################################################
class RouteTreeError(Exception):
    def __init__(self, *args, **kwargs):
        Exception.__init__(self, *args, **kwargs)


class GeometryError(RouteTreeError):
    "An invalid polyline or transform argument"
    pass


class TemplateError(RouteTreeError):
    "A template or template set broke one of its rules"
    pass


class TemplateParseError(TemplateError):
    "A template document could not be read"
    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        context = []
        if line is not None:
            context.append("line {}".format(line))
        if field is not None:
            context.append("field '{}'".format(field))
        if context:
            message = "{} ({})".format(message, ", ".join(context))
        TemplateError.__init__(self, message)


class TrackingError(RouteTreeError):
    "Fatal problem with tracking data or its column mapping"
    pass


class DegenerateRouteError(RouteTreeError):
    "A game route with zero extent on both axes"
    pass


class ContractError(RouteTreeError):
    "A caller broke an operation's precondition"
    pass


class EvaluationError(RouteTreeError):
    pass


class SynthError(RouteTreeError):
    pass


class ConfigError(RouteTreeError):
    pass


#######################################################
# Labels
#######################################################
ROUTE_LABELS = (
    "comeback",
    "corner",
    "curl",
    "dig",
    "flat",
    "out",
    "post",
    "slant",
    "sluggo",
    "streak",
    "wheel",
)

# the route column of the published evaluation table
TABLE_LABELS = (
    "corner",
    "dig",
    "flat",
    "out",
    "post",
    "slant",
    "sluggo",
    "streak",
    "wheel",
)

BLOCKING = "blocking/bubble"

CANONICAL_FRAME = "left-of-ball, upfield=+y, field-center=+x"



#######################################################
# Logging
#######################################################
LOGFORMAT = "%(asctime)s %(levelname)-8s %(message)s"


def set_loglevel(level="INFO"):
    """
    Attach a single stream handler to the package logger. Library modules
    only create loggers; the command line (or a user) calls this once.
    """
    logger = logging.getLogger("routetree")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOGFORMAT))
    logger.addHandler(handler)
    logger.setLevel(level)
    return logger



#######################################################
# Input loading
#######################################################
def get_text_from_source(source):
    """
    Load text from a URL, a file path, a file object, bytes, or a string
    holding the data itself.
    """
    # file-like objects
    if hasattr(source, "read"):
        data = source.read()
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        return data

    if isinstance(source, bytes):
        return source.decode("utf-8")

    if isinstance(source, os.PathLike):
        source = os.fspath(source)

    if isinstance(source, str):
        stripped = source.strip()

        # is a URL
        if stripped.startswith(("http://", "https://")):
            response = requests.get(stripped)
            response.raise_for_status()
            return response.text

        # is a file (data strings hold newlines, paths do not)
        if "\n" not in stripped and os.path.exists(stripped):
            with open(stripped, 'r') as indata:
                return indata.read()

        # is the data itself
        return source

    raise RouteTreeError(
        "cannot load data from object of type {}".format(type(source)))


def route_key(game_id, play_id, player_id):
    "Join key for routes, predictions and reference labels."
    return (str(game_id), str(play_id), str(player_id))
