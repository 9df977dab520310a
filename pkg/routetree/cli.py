#!/usr/bin/env python

"""
Command line interface.

    routetree ingest tracking.csv -o routes.jsonl
    routetree classify routes.jsonl -o results.jsonl
    routetree evaluate results.jsonl --labels labels.jsonl
    routetree plot routes.jsonl -o plots/ --results results.jsonl
    routetree synth -o routes.jsonl --labels-out labels.jsonl
    routetree templates export -o tree.json

Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.
"""

import os
import sys
import json
import time
import logging
import argparse
from collections import OrderedDict

from . import __version__
from .Classifier import classify_batch, MatchResult
from .Evaluate import (
    join_labels, score, render_report, read_labels, position_table, REPORT_FORMATS,
)
from .Randomroute import SynthSpec, generate_corpus, load_specs, write_corpus
from .RouteDrawing import draw_route, draw_match, draw_group, render_svg
from .Routes import (
    Eligibility, RouteExtractor, canonicalize, truncate_route, cutoff_ecdf,
    read_routes, write_routes,
)
from .RunConfig import RunConfig
from .TemplateParser import load_templates
from .TemplateWriter import save_templates
from .Templates import builtin_route_tree, validate
from .TrackingParser import parse_tracking, load_positions
from .utils import (
    RouteTreeError, ConfigError, TrackingError, TemplateError, set_loglevel,
)

logger = logging.getLogger(__name__)


USAGE_ERRORS = (ConfigError, TrackingError, TemplateError)



#######################################################
# helpers
#######################################################
def require_file(path):
    "Local paths must exist; URLs are passed through."
    if path.startswith(("http://", "https://")):
        return path
    if not os.path.isfile(path):
        raise ConfigError("no such file: {}".format(path))
    return path


def write_output(data, path):
    "Write text or bytes to path, or to stdout when path is None or '-'."
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    if path in (None, "-"):
        sys.stdout.write(data)
    else:
        with open(path, 'w') as out:
            out.write(data)


def get_templates(config):
    if config.templates in (None, "builtin"):
        return builtin_route_tree()
    return load_templates(require_file(config.templates))


def read_results(source):
    results = []
    with open(require_file(source), 'r') as indata:
        for lineno, line in enumerate(indata, 1):
            if line.strip():
                try:
                    results.append(MatchResult.from_dict(json.loads(line)))
                except (ValueError, KeyError) as err:
                    raise RouteTreeError(
                        "bad result record on line {}: {}".format(lineno, err))
    return results


def parse_key(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError("route ids look like GAME:PLAY:PLAYER, got '{}'".format(text))
    return tuple(parts)



#######################################################
# subcommands
#######################################################
def cmd_ingest(config, args):
    """
    Tracking data -> canonical route JSON lines, with a skip report.
    """
    schema = dict(config.schema)
    if args.schema:
        with open(require_file(args.schema), 'r') as indata:
            try:
                schema.update(json.load(indata))
            except ValueError as err:
                raise ConfigError("schema is not valid JSON: {}".format(err))

    positions = None
    if args.players:
        positions = load_positions(require_file(args.players), schema)

    parser = parse_tracking(require_file(args.tracking), schema=schema, positions=positions)
    extractor = RouteExtractor(
        parser,
        eligibility=Eligibility(config.positions, config.rb_split_yards),
        cutoff_s=config.cutoff_seconds,
        include_snap_frame=config.include_snap_frame,
    )
    routes = [canonicalize(i) for i in extractor.routes]
    write_routes(routes, args.output)

    if args.skips:
        with open(args.skips, 'w') as out:
            for game, play, player, reason in extractor.skipped:
                out.write(json.dumps(OrderedDict([
                    ("game_id", game), ("play_id", play),
                    ("player_id", player), ("reason", reason),
                ])) + "\n")

    if args.emit_cutoff_ecdf:
        cutoff_ecdf([i[2] for i in extractor.outcome_times]).to_csv(
            args.emit_cutoff_ecdf, index=False)

    skipped_plays = len([i for i in extractor.skipped if i[2] is None])
    logger.info(
        "routes extracted: %d; plays skipped: %d; players skipped: %d; rows rejected: %d",
        len(routes), skipped_plays, len(extractor.skipped) - skipped_plays,
        parser.nrejected)
    return 0



def cmd_classify(config, args):
    """
    Canonical routes -> MatchResult JSON lines.
    """
    routes = read_routes(require_file(args.routes))
    if args.truncate:
        routes = [truncate_route(i, config.cutoff_seconds) for i in routes]
    tset = get_templates(config)

    start = time.perf_counter()
    results = classify_batch(
        routes,
        tset,
        gamma=config.gamma,
        blocking_threshold=config.blocking_threshold_yards,
        step=config.step_yards,
        include_exact_endpoint=config.include_exact_endpoint,
        workers=config.workers,
    )
    elapsed = time.perf_counter() - start

    write_output("".join(json.dumps(i.to_dict()) + "\n" for i in results), args.output)
    failed = sum(1 for i in results if i.label is None)
    logger.info(
        "classified %d routes in %.2f s (%.1f routes/s); %d failed",
        len(results), elapsed, len(results) / max(elapsed, 1e-9), failed)
    return 1 if failed else 0



def cmd_evaluate(config, args):
    """
    MatchResults + reference labels -> report. Returns 1 when accuracy is
    below the configured floor.
    """
    results = read_results(args.results)
    references = read_labels(require_file(args.labels))
    pairs, unmatched = join_labels(results, references)
    for key, reason in unmatched:
        logger.warning("unpaired %s: %s", ":".join(key), reason)

    report = score(pairs)
    write_output(render_report(report, args.format), args.output)

    if args.routes:
        table = position_table(read_routes(require_file(args.routes)), results)
        sys.stderr.write(table.to_string() + "\n")

    floor = config.accuracy_floor
    if floor is not None and report.accuracy < float(floor):
        logger.error("accuracy %.4f is below the floor %.4f", report.accuracy, float(floor))
        return 1
    return 0



def cmd_plot(config, args):
    """
    Route or route-group SVGs.
    """
    routes = read_routes(require_file(args.routes))
    tset = get_templates(config)
    results = {}
    if args.results:
        results = {i.key: i for i in read_results(args.results)}

    if args.group:
        group = [i for i in routes if i.key in results and results[i.key].label == args.group]
        canvas = draw_group(group, label=args.group)[0]
        write_output(render_svg(canvas), args.output)
        return 0

    byid = OrderedDict((i.key, i) for i in routes)
    if args.route:
        key = parse_key(args.route)
        if key not in byid:
            raise RouteTreeError("unknown route id {}".format(args.route))
        keys = [key]
    else:
        keys = list(byid)

    if len(keys) > 1 and args.output in (None, "-"):
        raise ConfigError("plotting several routes needs an output directory")
    if len(keys) > 1:
        os.makedirs(args.output, exist_ok=True)

    for key in keys:
        route = byid[key]
        result = results.get(key)
        name = args.template or (result.best_template if result else None)
        if name:
            canvas = draw_match(route, tset.get(name), result)[0]
        else:
            canvas = draw_route(route)[0]
        path = args.output
        if len(keys) > 1:
            path = os.path.join(args.output, "{}.svg".format("_".join(key)))
        write_output(render_svg(canvas), path)
    return 0



def cmd_synth(config, args):
    """
    Synthetic corpus -> route JSON lines + reference labels.
    """
    synth = config.synth
    n_per_spec = synth["n_per_spec"]
    if args.spec:
        specs, n_file = load_specs(require_file(args.spec))
        n_per_spec = n_file or n_per_spec
    else:
        specs = [
            SynthSpec(
                label,
                target_scale=synth["target_scale"],
                noise_sigma=synth["noise_sigma"],
                point_count=synth["point_count"],
                jitter_break=synth["jitter_break"],
                scale_range=synth["scale_range"],
                seed=int(config.seed) + idx * int(n_per_spec),
            )
            for idx, label in enumerate(synth["labels"])
        ]
    corpus = generate_corpus(specs, n_per_spec, templates=get_templates(config))
    write_corpus(corpus, args.output, args.labels_out)
    logger.info("wrote %d routes", len(corpus))
    return 0



def cmd_templates(config, args):
    """
    Validate a template file (or the builtin set) or export the builtin set.
    """
    if args.action == "export":
        write_output(save_templates(builtin_route_tree()), args.output)
        return 0

    if args.path:
        tset = load_templates(require_file(args.path), check=False)
    else:
        tset = builtin_route_tree()
    violations = validate(tset)
    for violation in violations:
        sys.stdout.write("{}: {} ({})\n".format(*violation))
    if violations:
        return 2
    logger.info("%d templates are valid", len(tset))
    return 0



#######################################################
# argument parsing
#######################################################
def build_parser():
    parser = argparse.ArgumentParser(
        prog="routetree",
        description="Template matching classifier for receiver routes.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--seed", type=int, help="random seed")
    parser.add_argument("--quiet", action="store_true", help="only log warnings")
    subs = parser.add_subparsers(dest="command")
    subs.required = True

    # ingest
    sub = subs.add_parser("ingest", help="extract canonical routes from tracking data")
    sub.add_argument("tracking", help="tracking CSV (path or URL)")
    sub.add_argument("-o", "--output", required=True, help="route JSON-lines output")
    sub.add_argument("--players", help="players table joined for positions")
    sub.add_argument("--schema", help="JSON column mapping")
    sub.add_argument("--cutoff", type=float, dest="cutoff_seconds")
    sub.add_argument("--rb-split", type=float, dest="rb_split_yards")
    sub.add_argument("--positions", type=lambda s: s.split(","))
    sub.add_argument(
        "--no-snap-frame", action="store_false", dest="include_snap_frame", default=None)
    sub.add_argument("--skips", help="write skipped plays/players as JSON lines")
    sub.add_argument("--emit-cutoff-ecdf", help="CSV of snap-to-outcome times")
    sub.set_defaults(func=cmd_ingest)

    # classify
    sub = subs.add_parser("classify", help="label canonical routes")
    sub.add_argument("routes", help="route JSON lines")
    sub.add_argument("-o", "--output", default="-", help="results JSON lines")
    sub.add_argument("--templates", help="template file (default: builtin)")
    sub.add_argument("--gamma", type=float)
    sub.add_argument("--step", type=float, dest="step_yards")
    sub.add_argument("--blocking-threshold", type=float, dest="blocking_threshold_yards")
    sub.add_argument(
        "--include-exact-endpoint", action="store_true", default=None)
    sub.add_argument("--workers", type=int)
    sub.add_argument("--cutoff", type=float, dest="cutoff_seconds")
    sub.add_argument(
        "--truncate", action="store_true",
        help="clip routes to --cutoff seconds before classifying")
    sub.set_defaults(func=cmd_classify)

    # evaluate
    sub = subs.add_parser("evaluate", help="score results against reference labels")
    sub.add_argument("results", help="results JSON lines")
    sub.add_argument("--labels", required=True, help="reference label JSON lines")
    sub.add_argument("--format", choices=REPORT_FORMATS, default="text")
    sub.add_argument("-o", "--output", default="-")
    sub.add_argument("--accuracy-floor", type=float, dest="accuracy_floor")
    sub.add_argument("--routes", help="routes file for a position by label table")
    sub.set_defaults(func=cmd_evaluate)

    # plot
    sub = subs.add_parser("plot", help="draw routes as SVG")
    sub.add_argument("routes", help="route JSON lines")
    sub.add_argument("-o", "--output", default="-", help="SVG file, or directory")
    sub.add_argument("--route", help="GAME:PLAY:PLAYER")
    sub.add_argument("--results", help="results JSON lines")
    sub.add_argument("--template", help="template to overlay")
    sub.add_argument("--templates", help="template file (default: builtin)")
    sub.add_argument("--group", help="overlay every route with this label")
    sub.set_defaults(func=cmd_plot)

    # synth
    sub = subs.add_parser("synth", help="generate a labeled synthetic corpus")
    sub.add_argument("-o", "--output", required=True, help="route JSON lines")
    sub.add_argument("--labels-out", required=True, help="reference label JSON lines")
    sub.add_argument("--spec", help="JSON synth spec file")
    sub.add_argument("--templates", help="template file (default: builtin)")
    sub.add_argument("--n-per-spec", type=int)
    sub.add_argument("--noise", type=float, dest="noise_sigma")
    sub.add_argument("--jitter", type=float, dest="jitter_break")
    sub.add_argument("--scale", type=float, dest="target_scale")
    sub.add_argument("--points", type=int, dest="point_count")
    sub.set_defaults(func=cmd_synth)

    # templates
    sub = subs.add_parser("templates", help="validate or export templates")
    sub.add_argument("action", choices=("validate", "export"))
    sub.add_argument("path", nargs="?", help="template file to validate")
    sub.add_argument("-o", "--output", default="-")
    sub.set_defaults(func=cmd_templates)
    return parser



CLASSIFY_FLAGS = (
    "gamma", "step_yards", "cutoff_seconds", "blocking_threshold_yards",
    "include_exact_endpoint", "include_snap_frame", "rb_split_yards",
    "positions", "workers", "accuracy_floor", "templates",
)
SYNTH_FLAGS = ("n_per_spec", "noise_sigma", "jitter_break", "target_scale", "point_count")


def get_config(args):
    "Defaults, then the config file, then flags that were given."
    config = RunConfig.from_file(require_file(args.config)) if args.config else RunConfig()
    flags = {
        key: getattr(args, key) for key in CLASSIFY_FLAGS
        if getattr(args, key, None) is not None
    }
    if args.seed is not None:
        flags["seed"] = args.seed
    synth = {
        key: getattr(args, key) for key in SYNTH_FLAGS
        if getattr(args, key, None) is not None
    }
    if synth:
        flags["synth"] = synth
    config.update(flags)
    return config.validate()



def main(argv=None):
    args = build_parser().parse_args(argv)
    set_loglevel("WARNING" if args.quiet else "INFO")
    try:
        config = get_config(args)
        return args.func(config, args)
    except USAGE_ERRORS as err:
        logger.error("%s", err)
        return 2
    except (RouteTreeError, OSError) as err:
        logger.error("%s", err)
        return 1



if __name__ == "__main__":
    sys.exit(main())
