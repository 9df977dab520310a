#!/usr/bin/env python

"""
Toyplot drawings of routes: a game route with a placed template and both
bounding boxes, a group of routes with its medoid highlighted, and a
shaded confusion grid. render_svg turns any canvas into SVG bytes.
"""

import xml.etree.ElementTree as xml
import numpy as np
import toyplot
import toyplot.color
import toyplot.locator
import toyplot.svg

from .CanvasSetup import CanvasSetup
from .Classifier import scale_template, route_medoid
from .Geometry import Polyline, as_array, bounding_box, translate, translate_to_origin
from .RouteStyle import RouteStyle, COLORS1, COLORS2, MEDOID_COLOR
from .utils import RouteTreeError


def render_svg(canvas):
    "Serialize a toyplot canvas to UTF-8 SVG bytes."
    root = toyplot.svg.render(canvas)
    return xml.tostring(root, encoding="utf-8")



def _style(style, default):
    if isinstance(style, RouteStyle):
        return style
    newstyle = RouteStyle(default)
    if style:
        newstyle.update(style)
    return newstyle



def _draw_box(axes, box, color, style):
    return axes.rectangle(
        box.min_x, box.max_x, box.min_y, box.max_y,
        color=color,
        style=dict(style, stroke=color),
    )



def draw_route(route, placed=None, style=None, axes=None):
    """
    Draw a game route moved to the origin of its bounding box and,
    optionally, a placed template polyline in the same frame.

    Parameters:
    -----------
    route: CanonicalRoute
    placed: Polyline or None
        A scaled (and shifted) template, already origin-aligned.
    style: dict or RouteStyle
    axes: toyplot Cartesian or None

    Returns:
    --------
    (canvas, axes, marks): canvas is None for external axes. marks maps
    'route', 'template', 'route_box' and 'template_box' to toyplot marks.
    """
    style = _style(style, "route")
    game = translate_to_origin(route.points)
    gbox = bounding_box(game)
    setup = CanvasSetup(style, axes=axes, extents=gbox)

    marks = {}
    if placed is not None:
        placed = Polyline(placed)
        if style.show_boxes:
            marks["template_box"] = _draw_box(
                setup.axes, bounding_box(placed), COLORS2[1], style.box_style)
        marks["template"] = setup.axes.plot(
            placed.x, placed.y, style=dict(style.template_line_style))

    if style.show_boxes:
        marks["route_box"] = _draw_box(
            setup.axes, gbox, COLORS1[2], style.box_style)
    marks["route"] = setup.axes.plot(
        game.x, game.y, style=dict(style.route_line_style))
    return setup.canvas, setup.axes, marks



def placed_template(route, template, result=None):
    """
    A template scaled onto a route. The result's best shift is applied
    only when it was found for this template.
    """
    placed = scale_template(template, route).points
    if result is None or not result.best_shift:
        return placed
    if result.best_template != template.name:
        return placed
    axis, offset = result.best_shift
    return translate(
        placed, offset if axis == "x" else 0., offset if axis == "y" else 0.)



def draw_match(route, template, result=None, style=None, axes=None):
    """
    Draw a route with a template scaled onto it, at the result's best
    shift when the result belongs to this template.
    """
    placed = placed_template(route, template, result)
    return draw_route(route, placed, style=style, axes=axes)



def draw_group(routes, label=None, style=None, axes=None):
    """
    Overlay a group of canonical routes and highlight the medoid route.

    Returns:
    --------
    (canvas, axes, medoid_index)
    """
    routes = list(routes)
    if not routes:
        raise RouteTreeError("cannot draw an empty route group")
    style = _style(style, "group")
    if label and not style.label:
        style.label = "{} (n={})".format(label, len(routes))

    medoid = route_medoid(routes)
    allpoints = np.vstack([as_array(i.points) for i in routes])
    setup = CanvasSetup(style, axes=axes, extents=bounding_box(allpoints))

    for idx, route in enumerate(routes):
        if idx == medoid:
            continue
        setup.axes.plot(
            route.points.x, route.points.y, style=dict(style.group_line_style))
    best = routes[medoid].points
    setup.axes.plot(
        best.x, best.y, color=MEDOID_COLOR, style=dict(style.route_line_style))
    return setup.canvas, setup.axes, medoid



def draw_confusion(report, style=None):
    """
    Shaded grid of a report's row-normalized confusion matrix, reference
    labels down the rows and predicted labels across the columns.

    Returns:
    --------
    (canvas, axes)
    """
    style = _style(style, "confusion")
    labels = report.labels
    nlabels = len(labels)
    values = np.array(report.confusion, dtype=float).reshape(nlabels, nlabels)

    canvas = toyplot.Canvas(width=style.width, height=style.height)
    axes = canvas.cartesian(
        padding=style.padding,
        label=style.label,
        xlabel="predicted",
        ylabel="reference",
    )
    cmap = toyplot.color.brewer.map("Blues", domain_min=0, domain_max=1)

    # row 0 at the top
    for row in range(nlabels):
        for col in range(nlabels):
            value = values[row, col]
            top = nlabels - row
            axes.rectangle(
                col, col + 1, top - 1, top,
                color=cmap.css(value),
                style={"stroke": "white", "stroke-width": 1},
            )
            if value:
                axes.text(
                    col + 0.5, top - 0.5, "{:.2f}".format(value),
                    style=dict(
                        style.cell_label_style,
                        fill=("white" if value > 0.6 else "#262626")),
                )

    centers = np.arange(nlabels) + 0.5
    axes.x.ticks.locator = toyplot.locator.Explicit(locations=centers, labels=labels)
    axes.y.ticks.locator = toyplot.locator.Explicit(
        locations=centers[::-1], labels=labels)
    axes.x.ticks.labels.angle = 45
    axes.x.ticks.show = True
    axes.y.ticks.show = True
    return canvas, axes
