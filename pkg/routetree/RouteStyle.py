#!/usr/bin/env python

"""
Route style class objects for storing route drawing styles.
Also style dictionaries for the prebuilt drawings are defined here.
"""

import json
import toyplot


# GLOBALS
COLORS1 = [toyplot.color.to_css(i) for i in toyplot.color.brewer.palette("Set2")]
COLORS2 = [toyplot.color.to_css(i) for i in toyplot.color.brewer.palette("Dark2")]
MEDOID_COLOR = "magenta"


DEFAULT_ROUTE_STYLE = {
    'height': None,
    'width': None,
    'padding': 20,
    'show_axes': True,
    'show_boxes': True,
    'label': None,
}

DEFAULT_ROUTE_LINE_STYLE = {
    "stroke": "#262626",
    "stroke-width": 2.5,
    "stroke-linecap": "round",
    "stroke-opacity": 1,
}

DEFAULT_TEMPLATE_LINE_STYLE = {
    "stroke": COLORS2[1],
    "stroke-width": 2,
    "stroke-linecap": "round",
    "stroke-dasharray": "4, 3",
}

DEFAULT_BOX_STYLE = {
    "fill-opacity": 0.08,
    "stroke-width": 1,
    "stroke-opacity": 0.8,
}

DEFAULT_GROUP_LINE_STYLE = {
    "stroke": "#8c8c8c",
    "stroke-width": 1.5,
    "stroke-opacity": 0.5,
}

DEFAULT_CELL_LABEL_STYLE = {
    "fill": "#262626",
    "font-size": "10px",
}


STYLES = {
    'route': {
        'width': 300,
        'height': 400,
    },

    'group': {
        'width': 300,
        'height': 400,
        'show_boxes': False,
        '_route_line_style': {
            "stroke": MEDOID_COLOR,
            "stroke-width": 3,
        },
    },

    'confusion': {
        'width': 500,
        'height': 500,
        'padding': 40,
        'show_axes': False,
        'show_boxes': False,
    },
}



class RouteStyle(dict):
    "RouteStyle Class for storing route plotting options"
    def __init__(self, route_style='route'):
        self.__dict__ = DEFAULT_ROUTE_STYLE.copy()

        self._route_line_style = Style(DEFAULT_ROUTE_LINE_STYLE.copy())
        self._template_line_style = Style(DEFAULT_TEMPLATE_LINE_STYLE.copy())
        self._box_style = Style(DEFAULT_BOX_STYLE.copy())
        self._group_line_style = Style(DEFAULT_GROUP_LINE_STYLE.copy())
        self._cell_label_style = Style(DEFAULT_CELL_LABEL_STYLE.copy())

        if route_style:
            self.update(STYLES[route_style])


    def update(self, sdict):
        """
        Update this style dict with the values of another. Keys starting
        with an underscore update the matching sub-style.
        """
        if isinstance(sdict, RouteStyle):
            sdict = sdict.__dict__

        for skey in sdict:
            if skey[0] == "_":
                for key, val in sdict[skey].items():
                    self.__dict__[skey][key] = val
            elif skey in self.__dict__:
                self.__dict__[skey] = sdict[skey]
            else:
                raise TypeError("unknown route style option '{}'".format(skey))


    def copy(self):
        newstyle = RouteStyle(None)
        newstyle.update(self)
        return newstyle


    def to_dict(self):
        "returns self as a dictionary with _underscore subdicts corrected."
        return {
            (key[1:] if key[0] == "_" else key): val
            for (key, val) in self.__dict__.items()
        }


    @property
    def route_line_style(self):
        return self._route_line_style

    @property
    def template_line_style(self):
        return self._template_line_style

    @property
    def box_style(self):
        return self._box_style

    @property
    def group_line_style(self):
        return self._group_line_style

    @property
    def cell_label_style(self):
        return self._cell_label_style


    def __repr__(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)



class Style(dict):
    "dictionary with object getattr/setattr for convenience"

    def __getattr__(self, name):
        if name in self:
            return self[name]
        raise AttributeError("No such attribute: " + name)

    def __setattr__(self, name, value):
        self[name] = value
