#!/usr/bin/env python

"""
Write a TemplateSet to a JSON template document.
"""

import json
from .TemplateParser import FORMAT_VERSION

# coordinates are written with repr precision so documents round-trip
FF = repr


class TemplateWriter(object):
    """
    Write a TemplateSet to a JSON string, one template per line.

    Parameters
    ----------
    tset: TemplateSet
    coord_formatter: (callable or None)
        Converts each coordinate to text. Default writes the shortest
        string that reads back to the same float.
    """
    def __init__(self, tset, coord_formatter=None):
        self.tset = tset
        self.coord_formatter = (coord_formatter if coord_formatter else FF)
        self.lines = []


    def write_document(self):
        self.lines = [
            "{",
            '  "format_version": {},'.format(FORMAT_VERSION),
            '  "frame": {},'.format(json.dumps(self.tset.frame)),
            '  "templates": [',
        ]
        entries = [self.format_template(i) for i in self.tset]
        for idx, entry in enumerate(entries):
            sep = "," if idx < len(entries) - 1 else ""
            self.lines.append("    " + entry + sep)
        self.lines.append("  ]")
        self.lines.append("}")
        return "\n".join(self.lines) + "\n"


    def format_template(self, template):
        pairs = ", ".join(
            "[{}, {}]".format(
                self.format_coord(pair[0]), self.format_coord(pair[1]))
            for pair in template.waypoints.points
        )
        return '{{"name": {}, "waypoints": [{}]}}'.format(
            json.dumps(template.name), pairs)


    def format_coord(self, value):
        value = float(value)
        if value != value:
            return "NaN"
        if value in (float("inf"), float("-inf")):
            return "Infinity" if value > 0 else "-Infinity"
        return self.coord_formatter(value)



def save_templates(tset, handle=None):
    """
    Serialize a TemplateSet. Returns the document as UTF-8 bytes, or
    writes it to the file path 'handle' when given.
    """
    document = TemplateWriter(tset).write_document()
    if handle:
        with open(handle, 'w') as out:
            out.write(document)
    return document.encode("utf-8")
