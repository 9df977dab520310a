#!/usr/bin/env python

"""
Route tree templates: the named, deliberately oversized waypoint polylines
that game routes are matched against, and the rules a template set must
follow.

The builtin coordinates are drawn by eye from the basic receiver route
tree. Every template starts at the receiver's alignment (0, 0) in the
canonical frame (receiver left of the ball, upfield = +y, field center =
+x), so routes breaking toward the middle (slant, dig, post, curl) move to
+x and routes breaking toward the sideline (flat, out, comeback, corner,
wheel) move to -x. Each nonzero extent is at least 60 yards so that a
template always scales down onto a game route.
"""

from collections import namedtuple
import numpy as np

from .Geometry import Polyline, bounding_box
from .utils import TemplateError, ROUTE_LABELS, CANONICAL_FRAME


# smallest allowed nonzero template width or height (yards)
MIN_TEMPLATE_EXTENT = 40.0

BUILTIN_WAYPOINTS = {
    "flat": [(0, 0), (-300, 60)],
    "slant": [(0, 0), (0, 18), (60, 78)],
    "out": [(0, 0), (0, 60), (-60, 60)],
    "dig": [(0, 0), (0, 60), (60, 60)],
    "curl": [(0, 0), (0, 360), (60, 300)],
    "comeback": [(0, 0), (0, 280), (-60, 220)],
    "corner": [(0, 0), (0, 100), (-60, 160)],
    "post": [(0, 0), (0, 100), (60, 160)],
    "streak": [(0, 0), (0, 100)],
    "sluggo": [(0, 0), (0, 24), (60, 84), (60, 324)],
    "wheel": [(0, 0), (-45, 15), (-60, 37.5), (-60, 187.5)],
}


Violation = namedtuple("Violation", ["template", "rule", "value"])



class Template(object):
    """
    A named waypoint polyline from the route tree.

    Parameters:
    -----------
    name: str
        One of the route labels (flat, slant, out, dig, curl, comeback,
        corner, post, streak, sluggo, wheel).
    waypoints: (list, ndarray, or Polyline)
        Ordered (x, y) yards starting at (0, 0).
    """
    def __init__(self, name, waypoints):
        self.name = str(name)
        self.waypoints = Polyline(waypoints, check=False)

    @property
    def bbox(self):
        return bounding_box(self.waypoints)

    def to_dict(self):
        return {"name": self.name, "waypoints": self.waypoints.tolist()}

    def __eq__(self, other):
        if not isinstance(other, Template):
            return NotImplemented
        return (self.name == other.name) and (self.waypoints == other.waypoints)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None

    def __repr__(self):
        return "Template({}, {})".format(self.name, self.waypoints.tolist())



class TemplateSet(object):
    """
    An immutable collection of templates sharing the canonical frame.
    """
    def __init__(self, templates, frame=CANONICAL_FRAME):
        self.templates = tuple(templates)
        self.frame = frame

    @property
    def names(self):
        return [i.name for i in self.templates]

    def get(self, name):
        "Returns the template with this name or raises TemplateError."
        for template in self.templates:
            if template.name == name:
                return template
        raise TemplateError("no template named '{}'".format(name))

    def subset(self, names):
        "Returns a new TemplateSet holding only the named templates."
        return TemplateSet([self.get(i) for i in names], frame=self.frame)

    def validate(self):
        return validate(self)

    def check(self):
        """
        Raise a TemplateError naming the first broken rule, if any.
        """
        violations = validate(self)
        if violations:
            first = violations[0]
            raise TemplateError(
                "template '{}' breaks rule '{}' (value: {}){}".format(
                    first.template, first.rule, first.value,
                    "" if len(violations) == 1 else
                    " and {} more violations".format(len(violations) - 1),
                ))
        return self

    def __len__(self):
        return len(self.templates)

    def __iter__(self):
        return iter(self.templates)

    def __contains__(self, name):
        return name in self.names

    def __eq__(self, other):
        if not isinstance(other, TemplateSet):
            return NotImplemented
        return (self.frame == other.frame) and (self.templates == other.templates)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None

    def __repr__(self):
        return "TemplateSet({})".format(", ".join(self.names))



def builtin_route_tree():
    """
    Returns the 11-template basic receiver route tree.
    """
    return TemplateSet([
        Template(name, BUILTIN_WAYPOINTS[name]) for name in ROUTE_LABELS
    ])



def validate(tset):
    """
    Check a TemplateSet against the template rules.

    Returns:
    --------
    list of Violation(template, rule, value); empty when every rule holds.
    Set-level rules use template=None.
    """
    violations = []

    if not len(tset):
        violations.append(Violation(None, "non-empty", 0))

    if tset.frame != CANONICAL_FRAME:
        violations.append(Violation(None, "frame", tset.frame))

    seen = set()
    for template in tset:
        if template.name in seen:
            violations.append(Violation(template.name, "unique-name", template.name))
        seen.add(template.name)

        if template.name not in ROUTE_LABELS:
            violations.append(Violation(template.name, "label", template.name))

        points = template.waypoints.points
        if len(points) < 2:
            violations.append(Violation(template.name, "min-points", len(points)))
            continue

        if not np.all(np.isfinite(points)):
            bad = [i.tolist() for i in points if not np.all(np.isfinite(i))]
            violations.append(Violation(template.name, "finite", bad))
            continue

        if not (points[0, 0] == 0 and points[0, 1] == 0):
            violations.append(
                Violation(template.name, "origin", points[0].tolist()))

        # each extent is either zero or oversized
        box = template.bbox
        extents = (box.width, box.height)
        if any(0 < i < MIN_TEMPLATE_EXTENT for i in extents):
            violations.append(Violation(template.name, "oversize", extents))

    return violations
