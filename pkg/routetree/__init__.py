#!/usr/bin/env python

__version__ = "0.1.0"

from .Templates import builtin_route_tree
from .TemplateParser import load_templates
from .TemplateWriter import save_templates
from .TrackingParser import parse_tracking
from .Routes import extract_routes, canonicalize, read_routes, write_routes
from .Classifier import classify_route, classify_batch
from .Evaluate import score, confusion, render_report
from .Randomroute import SynthSpec, generate, generate_corpus
from .RouteDrawing import draw_route, draw_match, draw_group, draw_confusion, render_svg

# route drawing colors
from .RouteStyle import COLORS1 as colors
from .RouteStyle import COLORS2 as darkcolors
