import argparse
import sys
from typing import Optional

from loguru import logger

from src.algebra.fields import FieldTag
from src.analyzers.scanner import run_scan
from src.analyzers.structure_analyzer import classify_complex
from src.certification.certify import certify_char2, certify_graph_cycle, certify_orientable
from src.certification.experiments import search_orientable_converse
from src.constants import (
    DEFAULT_CONFIG_FILE, DEFAULT_FIELD, EXIT_INPUT_ERROR, EXIT_NEGATIVE, EXIT_OK, STATUS_ERROR,
)
from src.core.complex import SimplicialComplex
from src.corpus.registry import corpus_entry, corpus_list
from src.cycles.orientation import orientability
from src.cycles.structures import as_cycle, check_d_dimensional_cycle, face_minimal_decomposition
from src.errors import CycleMateError, DimensionRange, InvalidField, UnknownEntry
from src.formats.complex_files import emit, load_complex
from src.homology.engine import betti_report
from src.homology.oracle import brute_force_homology_oracle
from src.reporting.html_generator import HTMLGenerator
from src.reporting.schemas import render_json
from src.settings import AppConfig, load_config, settings


def _out(document) -> None:
    sys.stdout.write(render_json(document))


def _skeleton(complex_: SimplicialComplex, d: Optional[int]) -> SimplicialComplex:
    """The pure complex generated by the d-faces, or the complex itself when d is None."""
    if d is None or d == complex_.dim and complex_.is_pure():
        return complex_
    faces = complex_.faces(d)
    if not faces:
        raise DimensionRange(f"'{complex_.name}' has no {d}-faces")
    return complex_.subcomplex(faces, name=f"{complex_.name}[{d}]")


# ── Subcommands ──────────────────────────────────────────────────────────────

def cmd_homology(args, config: AppConfig) -> int:
    complex_ = load_complex(args.file)
    report = betti_report(complex_, FieldTag.parse(args.field)).to_dict()
    if args.dim is not None:
        if args.dim < 0:
            raise DimensionRange(f"Homology dimension must be >= 0, got {args.dim}")
        report["betti"] = {str(args.dim): report["betti"].get(str(args.dim), 0)}
    _out(report)
    return EXIT_OK


def cmd_cycles(args, config: AppConfig) -> int:
    complex_ = _skeleton(load_complex(args.file), args.dim)
    check = check_d_dimensional_cycle(complex_)
    _out(check.to_dict())
    return EXIT_OK if check.is_cycle else EXIT_NEGATIVE


def cmd_decompose(args, config: AppConfig) -> int:
    cycle = as_cycle(_skeleton(load_complex(args.file), args.dim))
    _out(face_minimal_decomposition(cycle, config.limits.kernel_enumeration_max_dim).to_dict())
    return EXIT_OK


def cmd_classify(args, config: AppConfig) -> int:
    limits = config.limits
    _out(classify_complex(load_complex(args.file), limits.kernel_enumeration_max_dim,
                          limits.orientation_node_budget))
    return EXIT_OK


def cmd_orient(args, config: AppConfig) -> int:
    cycle = as_cycle(_skeleton(load_complex(args.file), args.dim))
    assignment = orientability(cycle, config.limits.orientation_node_budget)
    if assignment is None:
        _out({"name": cycle.name, "orientable": False, "orientation": "non-orientable"})
        return EXIT_NEGATIVE
    _out({"name": cycle.name, "orientable": True, "orientation": assignment.label_map()})
    return EXIT_OK


def cmd_certify(args, config: AppConfig) -> int:
    complex_ = load_complex(args.file)
    field = FieldTag.parse(args.field)
    d = args.dim if args.dim is not None else complex_.dim
    kind = args.kind
    if kind == "auto":
        kind = "char2" if field.characteristic == 2 else "orientable"
    limits = config.limits
    if kind == "char2":
        if field.characteristic != 2:
            raise InvalidField(f"Char2 certificates need a characteristic-2 field, got {field}")
        cert = certify_char2(complex_, d)
    elif kind == "graph":
        cert = certify_graph_cycle(complex_, field)
    else:
        cert = certify_orientable(complex_, d, field, limits.kernel_enumeration_max_dim,
                                  limits.orientation_node_budget)
    if cert is None:
        _out({"name": complex_.name, "field": field.label, "dim": d, "kind": kind, "certificate": "none"})
        return EXIT_NEGATIVE
    _out({"name": complex_.name, "certificate": cert.to_dict()})
    return EXIT_OK


def cmd_corpus(args, config: AppConfig) -> int:
    if args.action == "list":
        _out([entry.to_dict() for entry in corpus_list()])
        return EXIT_OK
    if not args.name:
        raise UnknownEntry("corpus emit needs an entry name")
    sys.stdout.write(emit(corpus_entry(args.name).build(), args.format))
    return EXIT_OK


def cmd_oracle(args, config: AppConfig) -> int:
    complex_ = load_complex(args.file)
    limit = args.max_faces or config.limits.oracle_max_faces
    result = brute_force_homology_oracle(complex_, args.dim, limit)
    _out({"name": complex_.name, **result.to_dict()})
    return EXIT_OK


def cmd_scan(args, config: AppConfig) -> int:
    inputs = args.inputs or config.inputs
    if not inputs:
        logger.warning("No inputs found in config.")
        return EXIT_OK
    results = run_scan(config, inputs, args.jobs)
    output_dir = args.output_dir or config.reports.output_dir
    report_path = HTMLGenerator(output_dir=output_dir).generate(results)
    logger.success(f"Report generated at {report_path}")
    _out(results)
    return EXIT_NEGATIVE if any(r.get("status") == STATUS_ERROR for r in results) else EXIT_OK


def cmd_experiment(args, config: AppConfig) -> int:
    report = search_orientable_converse(
        trials=args.trials, n_vertices=args.vertices, d=args.dim, density=args.density,
        seed=args.seed, field=FieldTag.parse(args.field),
        kernel_limit=config.limits.kernel_enumeration_max_dim,
        node_budget=config.limits.orientation_node_budget,
    )
    _out(report.to_dict())
    return EXIT_OK


# ── Parser ───────────────────────────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclemate", description="CycleMate CLI")
    parser.add_argument("--config", default=None, help=f"Path to config file (default {DEFAULT_CONFIG_FILE})")
    parser.add_argument("--log-level", default=None, help="stderr log level (default WARNING)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", help="Reduced Betti numbers")
    p.add_argument("file")
    p.add_argument("--field", default=DEFAULT_FIELD)
    p.add_argument("--dim", type=int)
    p.set_defaults(handler=cmd_homology)

    for name, handler, help_text in (
        ("cycles", cmd_cycles, "d-dimensional cycle verdict with ridge diagnostics"),
        ("decompose", cmd_decompose, "Face-minimal decomposition of a cycle"),
        ("orient", cmd_orient, "Orientation of a cycle"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file")
        p.add_argument("--dim", type=int)
        p.set_defaults(handler=handler)

    p = sub.add_parser("classify", help="Structural verdicts")
    p.add_argument("file")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("certify", help="Cycle certificate for nonzero homology")
    p.add_argument("file")
    p.add_argument("--field", default=DEFAULT_FIELD)
    p.add_argument("--dim", type=int)
    p.add_argument("--kind", choices=["auto", "char2", "orientable", "graph"], default="auto")
    p.set_defaults(handler=cmd_certify)

    p = sub.add_parser("corpus", help="List or emit corpus complexes")
    p.add_argument("action", choices=["list", "emit"])
    p.add_argument("name", nargs="?")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(handler=cmd_corpus)

    p = sub.add_parser("oracle", help="Brute-force GF(2) cycle and boundary counts")
    p.add_argument("file")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--max-faces", type=int)
    p.set_defaults(handler=cmd_oracle)

    p = sub.add_parser("scan", help="Run every analyzer over a batch of complexes")
    p.add_argument("inputs", nargs="*")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output-dir")
    p.set_defaults(handler=cmd_scan)

    p = sub.add_parser("experiment", help="Randomized experiments")
    p.add_argument("name", choices=["converse"])
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--vertices", type=int, default=6)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", default="q")
    p.set_defaults(handler=cmd_experiment)
    return parser


def _configure_logging(level: Optional[str]) -> None:
    logger.remove()
    logger.add(sys.stderr, level=(level or settings.LOG_LEVEL).upper())


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT_ERROR
    _configure_logging(args.log_level)

    config_path = args.config
    try:
        config = load_config(config_path)
        return args.handler(args, config)
    except CycleMateError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
