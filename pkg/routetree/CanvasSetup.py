#!/usr/bin/env python

"""
Canvas and Cartesian axes for route drawings.
"""

import toyplot


class CanvasSetup:
    """
    Returns Canvas and Cartesian axes objects sized for a route drawing.
    Route axes keep yards equal on x and y so shapes are not distorted.
    """
    def __init__(self, style, axes=None, extents=None, equal_aspect=True):
        self.style = style
        self.axes = axes
        self.extents = extents
        self.equal_aspect = equal_aspect
        self.canvas = None
        self.external_axis = False

        self.get_dims_from_extents()
        self.get_canvas_and_axes()
        self.add_axes_style()


    def get_dims_from_extents(self):
        """
        Default canvas size follows the drawing's width/height ratio
        when the style does not fix it.
        """
        if self.style.width and self.style.height:
            return
        ratio = 1.0
        if self.extents is not None and self.extents.width > 0:
            ratio = min(3.0, max(0.33, self.extents.height / self.extents.width))
        if not self.style.height:
            self.style.height = int(max(250, min(600, 300 * ratio)))
        if not self.style.width:
            self.style.width = int(max(250, min(600, self.style.height / ratio)))


    def get_canvas_and_axes(self):
        if self.axes is not None:
            self.external_axis = True
            return
        self.canvas = toyplot.Canvas(
            height=self.style.height,
            width=self.style.width,
        )
        self.axes = self.canvas.cartesian(
            padding=self.style.padding,
            aspect=("fit-range" if self.equal_aspect else None),
            label=self.style.label,
        )


    def add_axes_style(self):
        if self.external_axis:
            return
        self.axes.show = bool(self.style.show_axes)
        if self.style.show_axes:
            self.axes.x.label.text = "x (yards)"
            self.axes.y.label.text = "y (yards)"
