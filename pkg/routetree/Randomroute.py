#!/usr/bin/env python

"""
Synthetic labeled routes made by perturbing route tree templates. Each
route is a template scaled to a target size with its break depths
jittered, resampled to a fixed point count and blurred with Gaussian
noise. Random draws use numpy's PCG64 generator so a seed gives the same
corpus on every platform.
"""

import json
import logging
from collections import OrderedDict
import numpy as np

from .Geometry import Polyline, bounding_box, resample_to_count
from .Routes import CanonicalRoute, write_routes
from .Evaluate import write_labels
from .Templates import builtin_route_tree
from .utils import SynthError, get_text_from_source

logger = logging.getLogger(__name__)


SYNTH_GAME_ID = "synth"
SYNTH_POSITION = "WR"

# seconds between synthetic frames
FRAME_S = 0.1



class SynthSpec(object):
    """
    Recipe for one family of synthetic routes.

    Parameters:
    -----------
    template: str
        Name of the source template.
    target_scale: float
        Long side of the route's bounding box in yards (> 0).
    noise_sigma: float
        Std of the isotropic Gaussian noise added to each point (>= 0).
    point_count: int
        Number of route points (>= 2).
    jitter_break: float
        Each interior waypoint moves along its incoming segment by a
        uniform fraction in [-jitter_break, jitter_break), 0 <= j < 0.5.
    seed: int
    scale_range: (float, float) or None
        If given, target_scale is drawn uniformly from this range instead.
    """
    def __init__(
        self,
        template,
        target_scale=15.0,
        noise_sigma=0.0,
        point_count=50,
        jitter_break=0.0,
        seed=0,
        scale_range=None,
        ):
        self.template = template
        self.target_scale = float(target_scale)
        self.noise_sigma = float(noise_sigma)
        self.point_count = int(point_count)
        self.jitter_break = float(jitter_break)
        self.seed = int(seed)
        self.scale_range = (
            None if scale_range is None else tuple(float(i) for i in scale_range))
        self.validate()


    def validate(self):
        if not self.target_scale > 0:
            raise SynthError("target_scale must be > 0")
        if not self.noise_sigma >= 0:
            raise SynthError("noise_sigma must be >= 0")
        if self.point_count < 2:
            raise SynthError("point_count must be at least 2")
        if not 0 <= self.jitter_break < 0.5:
            raise SynthError("jitter_break must be in [0, 0.5)")
        if self.scale_range is not None:
            if len(self.scale_range) != 2 or not 0 < self.scale_range[0] <= self.scale_range[1]:
                raise SynthError("scale_range must be (low, high) with 0 < low <= high")


    def with_seed(self, seed):
        spec = self.to_dict()
        spec["seed"] = seed
        return SynthSpec(**spec)


    def to_dict(self):
        return OrderedDict([
            ("template", self.template),
            ("target_scale", self.target_scale),
            ("noise_sigma", self.noise_sigma),
            ("point_count", self.point_count),
            ("jitter_break", self.jitter_break),
            ("seed", self.seed),
            ("scale_range", (list(self.scale_range) if self.scale_range else None)),
        ])


    @classmethod
    def from_dict(cls, data):
        try:
            return cls(**data)
        except TypeError as err:
            raise SynthError("bad synth spec {}: {}".format(data, err))


    def __repr__(self):
        return "SynthSpec({}, scale={}, sigma={}, seed={})".format(
            self.template, self.target_scale, self.noise_sigma, self.seed)



def jitter_breaks(waypoints, jitter, rng):
    """
    Move each interior waypoint (and every waypoint after it) along its
    incoming segment by a uniform fraction in [-jitter, jitter).
    """
    arr = np.array(waypoints, dtype=float)
    for idx in range(1, len(arr) - 1):
        frac = rng.uniform(-jitter, jitter)
        arr[idx:] += frac * (arr[idx] - arr[idx - 1])
    return arr



def generate(spec, templates=None, game_id=SYNTH_GAME_ID, play_id=None, player_id=None):
    """
    Build one synthetic route.

    Parameters:
    -----------
    spec: SynthSpec
    templates: TemplateSet or None
        Source of the template; defaults to the builtin route tree.
    game_id, play_id, player_id:
        Route identity. play_id defaults to the seed and player_id to the
        template name.

    Returns:
    --------
    (CanonicalRoute, label)
    """
    tset = (templates if templates is not None else builtin_route_tree())
    if spec.template not in tset.names:
        raise SynthError("unknown template '{}'".format(spec.template))
    waypoints = tset.get(spec.template).waypoints.points
    if spec.point_count < len(waypoints):
        raise SynthError(
            "point_count {} is below the {} waypoints of '{}'".format(
                spec.point_count, len(waypoints), spec.template))

    rng = np.random.Generator(np.random.PCG64(spec.seed))
    target = spec.target_scale
    if spec.scale_range is not None:
        target = float(rng.uniform(*spec.scale_range))

    arr = np.array(waypoints, dtype=float)
    if spec.jitter_break and len(arr) > 2:
        arr = jitter_breaks(arr, spec.jitter_break, rng)

    box = bounding_box(arr)
    arr = (arr - arr[0]) * (target / max(box.width, box.height))
    points = resample_to_count(Polyline(arr), spec.point_count).points.copy()

    if spec.noise_sigma:
        points += rng.normal(0.0, spec.noise_sigma, size=points.shape)
        points -= points[0]

    route = CanonicalRoute(
        game_id,
        (str(spec.seed) if play_id is None else play_id),
        (spec.template if player_id is None else player_id),
        SYNTH_POSITION,
        points,
        cutoff_s=(spec.point_count - 1) * FRAME_S,
    )
    return route, spec.template



def generate_corpus(specs, n_per_spec, templates=None):
    """
    n_per_spec routes per spec; item i of a spec uses seed spec.seed + i.
    Every spec is checked before generating; all problems are reported in
    one SynthError.

    Returns:
    --------
    list of (CanonicalRoute, label)
    """
    tset = (templates if templates is not None else builtin_route_tree())
    specs = list(specs)
    n_per_spec = int(n_per_spec)
    if n_per_spec < 1:
        raise SynthError("n_per_spec must be at least 1")

    problems = [
        "spec {}: unknown template '{}'".format(idx, spec.template)
        for idx, spec in enumerate(specs)
        if spec.template not in tset.names
    ]
    if problems:
        raise SynthError("; ".join(problems))

    corpus = []
    for sidx, spec in enumerate(specs):
        for idx in range(n_per_spec):
            corpus.append(generate(
                spec.with_seed(spec.seed + idx),
                templates=tset,
                play_id=str(sidx),
                player_id=str(idx),
            ))
    logger.info("generated %d synthetic routes from %d specs", len(corpus), len(specs))
    return corpus



def load_specs(source):
    """
    Read synth specs from JSON: a list of spec objects, or an object with
    a 'specs' list and optional 'n_per_spec'. Returns (specs, n_per_spec).
    """
    text = get_text_from_source(source)
    try:
        data = json.loads(text)
    except ValueError as err:
        raise SynthError("malformed synth spec file: {}".format(err))
    n_per_spec = None
    if isinstance(data, dict):
        n_per_spec = data.get("n_per_spec")
        data = data.get("specs")
    if not isinstance(data, list) or not data:
        raise SynthError("synth spec file holds no specs")
    return [SynthSpec.from_dict(i) for i in data], n_per_spec



def write_corpus(corpus, routes_path=None, labels_path=None):
    """
    Write a corpus as route JSON lines and reference-label JSON lines.
    Returns both texts.
    """
    routes_text = write_routes([i[0] for i in corpus], routes_path)
    labels_text = write_labels([(i[0].key, i[1]) for i in corpus], labels_path)
    return routes_text, labels_text
