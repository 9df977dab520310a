#!/usr/bin/env python

"""
Template file parser. Takes a JSON template document as a string, bytes,
file object, file path or URL and returns a validated TemplateSet.

Document layout:
    {"format_version": 1,
     "frame": "left-of-ball, upfield=+y, field-center=+x",
     "templates": [{"name": "dig", "waypoints": [[0, 0], [0, 60], ...]}, ...]}
"""

import json
import numbers
from .Templates import Template, TemplateSet
from .utils import TemplateParseError, get_text_from_source

FORMAT_VERSION = 1


class TemplateParser(object):
    """
    Reads a template document and builds a TemplateSet.

    Parameters:
    -----------
    source: (str, bytes, file, or URL)
        The document or a pointer to it.
    check: bool
        Raise TemplateError if the parsed set breaks any template rule.
    """
    def __init__(self, source, check=True):
        self.source = source
        self.check = check
        self.data = None
        self.doc = None
        self.tset = None
        self._run()


    def _run(self):
        self.get_data_from_source()
        self.parse_json()
        self.check_header()
        self.get_templates()
        if self.check:
            self.tset.check()


    def get_data_from_source(self):
        self.data = get_text_from_source(self.source)
        if not self.data.strip():
            raise TemplateParseError("empty template document", line=1)


    def parse_json(self):
        try:
            self.doc = json.loads(self.data)
        except ValueError as err:
            raise TemplateParseError(
                "malformed JSON: {}".format(getattr(err, "msg", err)),
                line=getattr(err, "lineno", None),
            )
        if not isinstance(self.doc, dict):
            raise TemplateParseError("top level must be an object", line=1)


    def check_header(self):
        version = self.doc.get("format_version")
        if version != FORMAT_VERSION:
            raise TemplateParseError(
                "unsupported format_version {!r}".format(version),
                field="format_version")
        if not isinstance(self.doc.get("frame"), str):
            raise TemplateParseError("frame must be a string", field="frame")
        if not isinstance(self.doc.get("templates"), list):
            raise TemplateParseError(
                "templates must be a list", field="templates")


    def get_templates(self):
        templates = []
        for tidx, entry in enumerate(self.doc["templates"]):
            field = "templates[{}]".format(tidx)
            if not isinstance(entry, dict):
                raise TemplateParseError("template must be an object", field=field)

            name = entry.get("name")
            if not isinstance(name, str):
                raise TemplateParseError(
                    "name must be a string", field=field + ".name")

            waypoints = entry.get("waypoints")
            if not isinstance(waypoints, list):
                raise TemplateParseError(
                    "waypoints must be a list", field=field + ".waypoints")

            for widx, pair in enumerate(waypoints):
                if not (
                    isinstance(pair, list) and len(pair) == 2 and
                    all(_is_number(i) for i in pair)
                ):
                    raise TemplateParseError(
                        "waypoint must be an [x, y] pair of numbers",
                        field="{}.waypoints[{}]".format(field, widx),
                    )

            points = [[float(i) for i in pair] for pair in waypoints]
            templates.append(Template(name, points if points else []))

        self.tset = TemplateSet(templates, frame=self.doc["frame"])



def _is_number(value):
    return isinstance(value, numbers.Real) and not isinstance(value, bool)



def load_templates(source, check=True):
    """
    Parse a template document into a TemplateSet. Malformed documents raise
    TemplateParseError with line or field context; rule violations raise
    TemplateError naming the template and rule.
    """
    return TemplateParser(source, check=check).tset
