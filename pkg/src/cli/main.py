"""Command-line entry point: schottky, annulus, dessin and verify subcommands.

Exit codes: 0 when every check passes, 1 when a mathematical check fails
(the report is still written), 2 for malformed input or usage errors.
"""
import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel

from ..adapters.codec import encode_circle, encode_complex, encode_point
from ..adapters.factory import AdapterFactory
from ..adapters.schottky_config import pairings_payload
from ..annulus.lemmas import lemma4_ratio
from ..annulus.modulus import (
    ORIENTATION_NOTE,
    SEPARATION_THRESHOLD,
    grotzsch_check,
    is_closed_form,
    modulus,
    modulus_by_normalization,
    modulus_circle_ring,
)
from ..annulus.numeric import modulus_numeric
from ..annulus.sampling import sample_boundaries
from ..annulus.separating import find_separating_circle, separating_clearance
from ..belyi.dessin import build_dessin, check_dessin, dessin_to_json
from ..belyi.export import dessin_svg
from ..belyi.loops import find_disjoint_loops
from ..belyi.permutations import cycle_type, genus, validate_triple
from ..belyi.refine import refine
from ..errors import GridResolutionError
from ..geometry.moebius import mob_classify, mob_fixed_points
from ..models.annulus import AnnulusTask, CircleRing
from ..models.belyi import MonodromyTriple
from ..models.reports import CheckResult, RunConfig, VerificationReport
from ..models.schottky import SchottkyConfiguration
from ..schottky.construction import is_conjugation_symmetric, quotient_cell_counts, verify_classical
from ..schottky.export import schottky_svg
from ..schottky.words import enumerate_words, limit_points, word_label
from ..validation.checkers import validate_loop_set
from ..validation.suites import SUITES, run_suite

logger = logging.getLogger(__name__)

ENV_PREFIX = "SCHOTTKY_"
EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
NUMERIC_AGREEMENT = 0.01

# flag dest -> RunConfig field
CONFIG_FLAGS = {
    "tolerance": "tolerance",
    "grid_h": "grid_h",
    "boundary_samples": "boundary_samples",
    "max_word_len": "max_word_len",
    "word_cap": "word_cap",
    "refine_max": "refine_max",
    "max_loop_length": "max_loop_length",
    "seed": "seed",
    "out": "out_dir",
    "svg": "svg",
}


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=float, help="geometric tolerance (default 1e-9)")
    common.add_argument("--grid-h", type=float, help="finite-difference grid step (default 0.02)")
    common.add_argument("--boundary-samples", type=int, help="points per boundary component (default 512)")
    common.add_argument("--max-word-len", type=int, help="longest reduced word (default 4)")
    common.add_argument("--word-cap", type=int, help="refuse to enumerate more words (default 1000000)")
    common.add_argument("--refine-max", type=int, help="refinements allowed in the loop search (default 3)")
    common.add_argument("--max-loop-length", type=int, help="longest candidate loop in darts (default 18)")
    common.add_argument("--seed", type=int, help="random seed for the property suites (default 42)")
    common.add_argument("--out", help="output directory (default out)")
    common.add_argument("--svg", action="store_const", const=True, help="also write an SVG figure")
    common.add_argument("--log-level", help="logging level (default WARNING)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="schottky", description="Schottky uniformization toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    schottky = sub.add_parser("schottky", parents=[common], help="verify a circle-pairing configuration")
    schottky.add_argument("config", help="Schottky configuration JSON")

    annulus = sub.add_parser("annulus", parents=[common], help="moduli and separating circles of an annulus")
    annulus.add_argument("descriptor", help="annulus descriptor JSON")

    dessin = sub.add_parser("dessin", parents=[common], help="dessin of a monodromy triple")
    dessin.add_argument("monodromy", help="monodromy triple JSON")
    dessin.add_argument("--refine", type=int, default=0, help="refine the triple this many times")
    dessin.add_argument("--find-loops", action="store_true", help="search for g disjoint covering loops")

    verify = sub.add_parser("verify", parents=[common], help="run the property suites")
    verify.add_argument("--suite", choices=SUITES + ("all",), default="all")
    return parser


def config_from_args(args: argparse.Namespace, environ=None) -> RunConfig:
    """Flags win over SCHOTTKY_* environment values, which win over model defaults."""
    environ = os.environ if environ is None else environ
    values: Dict[str, Any] = {}
    for dest, field in CONFIG_FLAGS.items():
        flag_value = getattr(args, dest, None)
        env_value = environ.get(ENV_PREFIX + dest.upper())
        if flag_value is not None:
            values[field] = flag_value
        elif env_value is not None:
            values[field] = env_value
    return RunConfig(**values)


def configure_logging(args: argparse.Namespace, environ=None):
    environ = os.environ if environ is None else environ
    level = args.log_level or environ.get(ENV_PREFIX + "LOG_LEVEL", "WARNING")
    numeric = logging.getLevelName(level.upper())
    if not isinstance(numeric, int):
        raise ValueError(f"unknown log level '{level}'")
    logging.basicConfig(level=numeric, format="%(levelname)s %(name)s: %(message)s")


def load_input(path: str, expected_format: str) -> BaseModel:
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    adapter = AdapterFactory().get_adapter(data)
    if adapter.format_id != expected_format:
        raise ValueError(f"{path} is a {adapter.format_id} file, expected {expected_format}")
    return adapter.parse(data)


def write_json(path: Path, data: Dict[str, Any]):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def write_text(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def print_checks(checks: List[CheckResult]):
    for check in checks:
        print(f"{'✓' if check.passed else '✗'} {check.name}")
        for detail in check.details:
            print(f"    - {detail}")


def _generators(cfg: SchottkyConfiguration, tol: float) -> List[Dict[str, Any]]:
    rows = []
    for j, pairing in enumerate(cfg.pairings):
        first, second, multiplier = mob_fixed_points(pairing.map, tol)
        rows.append({
            "label": chr(ord("a") + j),
            "class": mob_classify(pairing.map, tol).value,
            "fixed_points": [encode_point(first), None if second is None else encode_point(second)],
            "multiplier": encode_complex(multiplier),
        })
    return rows


def cmd_schottky(args: argparse.Namespace, config: RunConfig) -> int:
    cfg: SchottkyConfiguration = load_input(args.config, "schottky_config")
    report = verify_classical(cfg, config.tolerance)
    print(f"Verifying genus-{cfg.g} configuration...")
    print_checks(report.checks)

    data: Dict[str, Any] = {
        "command": "schottky",
        "genus": cfg.g,
        "verification": report.model_dump(mode="json"),
        "pairings": pairings_payload(cfg),
        "generators": _generators(cfg, config.tolerance),
        "conjugation_symmetric": is_conjugation_symmetric(cfg, config.tolerance),
    }
    vertices, edges, faces = quotient_cell_counts(cfg, config.tolerance)
    data["quotient"] = {
        "vertices": vertices,
        "edges": edges,
        "faces": faces,
        "euler": vertices - edges + faces,
    }

    sample = None
    if report.passed:
        words = enumerate_words(cfg, config.max_word_len, config.word_cap)
        sample = limit_points(cfg, config.max_word_len, config.tolerance, config.word_cap)
        data["words"] = {"max_len": config.max_word_len, "count": len(words)}
        data["limit_sample"] = [
            {"word": word_label(entry.word), "point": encode_complex(entry.point), "radius": entry.radius}
            for entry in sample.entries
        ]
        print(f"  {len(words)} reduced words, {len(sample)} limit points")
    else:
        data["words"] = None
        data["limit_sample"] = None

    write_json(config.out_dir / "schottky_report.json", data)
    if config.svg:
        write_text(config.out_dir / "schottky.svg", schottky_svg(cfg, sample))
    return EXIT_OK if report.passed else EXIT_FAILED


def _numeric_agreement(task: AnnulusTask, exact: float, config: RunConfig) -> CheckResult:
    try:
        numeric = modulus_numeric(sample_boundaries(task.annulus, config.boundary_samples), config.grid_h)
    except GridResolutionError as e:
        return CheckResult(name="numeric_agrees_with_closed_form", passed=False, details=[str(e)])
    error = abs(numeric - exact) / exact
    return CheckResult(
        name="numeric_agrees_with_closed_form",
        passed=error < NUMERIC_AGREEMENT,
        measured={"numeric": numeric, "relative_error": error},
        tolerance=NUMERIC_AGREEMENT,
    )


def _separating_circle(task: AnnulusTask, mod: float, config: RunConfig) -> CheckResult:
    circle = find_separating_circle(task.annulus, config.boundary_samples, config.tolerance)
    required = mod > SEPARATION_THRESHOLD
    if circle is None:
        return CheckResult(
            name="separating_circle",
            passed=not required,
            measured={"found": False, "modulus_above_threshold": required},
            details=["no separating circle found"],
        )
    clearance = separating_clearance(circle, sample_boundaries(task.annulus, config.boundary_samples))
    return CheckResult(
        name="separating_circle",
        passed=clearance > config.tolerance,
        measured={"found": True, "modulus_above_threshold": required,
                  "circle": encode_circle(circle), "clearance": clearance},
        tolerance=config.tolerance,
    )


def cmd_annulus(args: argparse.Namespace, config: RunConfig) -> int:
    task: AnnulusTask = load_input(args.descriptor, "annulus_descriptor")
    annulus = task.annulus
    mod = modulus(annulus, config.grid_h, config.boundary_samples)
    method = "closed_form" if is_closed_form(annulus) else "numeric"
    print(f"{annulus.kind} annulus: modulus {mod:.9g} ({method})")

    checks = []
    if is_closed_form(annulus):
        checks.append(_numeric_agreement(task, mod, config))
    if isinstance(annulus, CircleRing):
        alternative = modulus_by_normalization(annulus)
        checks.append(CheckResult(
            name="normalization_agrees",
            passed=abs(alternative - mod) <= config.tolerance * max(1.0, mod),
            measured={"normalized": alternative},
            tolerance=config.tolerance,
        ))
    checks.append(_separating_circle(task, mod, config))

    data: Dict[str, Any] = {"command": "annulus", "kind": annulus.kind, "modulus": mod, "method": method}
    if task.sub_ring is not None:
        holds = grotzsch_check(annulus, task.sub_ring, grid_h=config.grid_h, samples=config.boundary_samples)
        checks.append(CheckResult(
            name="grotzsch",
            passed=holds,
            measured={"sub_ring_modulus": modulus_circle_ring(task.sub_ring), "modulus": mod},
        ))
    if task.rational_map is not None:
        measurement = lemma4_ratio(task.rational_map, annulus, task.target,
                                   config.boundary_samples, config.grid_h)
        data["modulus_ratio"] = measurement.model_dump(mode="json")
        checks.append(CheckResult(
            name="modulus_ratio_positive",
            passed=measurement.ratio > 0,
            measured={"ratio": measurement.ratio, "degree": measurement.degree},
        ))

    report = VerificationReport.from_checks("annulus", checks)
    data["verification"] = report.model_dump(mode="json")
    data["orientation_note"] = ORIENTATION_NOTE
    print_checks(report.checks)
    write_json(config.out_dir / "annulus_report.json", data)
    return EXIT_OK if report.passed else EXIT_FAILED


def _stage(t: MonodromyTriple, level: int) -> Dict[str, Any]:
    dessin = build_dessin(t)
    return {
        "refinements": level,
        "degree": t.degree,
        "genus": genus(t),
        "cycle_types": [list(cycle_type(p)) for p in t.permutations],
        "counts": {"V": dessin.num_vertices, "E": dessin.num_edges, "F": dessin.num_faces,
                   "euler": dessin.euler_characteristic},
        "problems": check_dessin(dessin),
    }


def cmd_dessin(args: argparse.Namespace, config: RunConfig) -> int:
    if args.refine < 0:
        raise ValueError(f"--refine must be nonnegative, got {args.refine}")
    t: MonodromyTriple = load_input(args.monodromy, "monodromy")
    ok, errors = validate_triple(t)
    data: Dict[str, Any] = {"command": "dessin", "valid": ok, "diagnostics": errors}
    if not ok:
        print("❌ INVALID MONODROMY TRIPLE")
        for err in errors:
            print(f"  - {err}")
        write_json(config.out_dir / "dessin_report.json", data)
        return EXIT_FAILED

    if args.find_loops and genus(t) < 2:
        raise ValueError(f"rank below 2: got genus {genus(t)}, loop search needs g >= 2")
    stages = [_stage(t, 0)]
    triple = t
    for level in range(1, args.refine + 1):
        triple = refine(triple)
        stages.append(_stage(triple, level))
    data["stages"] = stages

    checks = [
        CheckResult(
            name="genus_preserved",
            passed=all(s["genus"] == stages[0]["genus"] for s in stages),
            measured={"genera": [s["genus"] for s in stages]},
        ),
        CheckResult(
            name="triangulation",
            passed=all(not s["problems"] for s in stages),
            details=[f"stage {s['refinements']}: {p}" for s in stages for p in s["problems"]],
        ),
    ]
    print(f"degree {triple.degree}, genus {stages[0]['genus']}, {len(stages)} stage(s)")

    dessin = build_dessin(triple)
    loops = None
    if args.find_loops:
        result = find_disjoint_loops(dessin, stages[0]["genus"], config.refine_max, config.max_loop_length)
        loop_data = result.model_dump(mode="json")
        if result.exhausted:
            checks.append(CheckResult(
                name="disjoint_loops",
                passed=False,
                measured={"refinements_used": result.refinements_used},
                details=[f"loop search exhausted after {result.refinements_used} refinements"],
            ))
        else:
            dessin = build_dessin(result.triple)
            loops = result.loop_set.cycles
            valid, loop_errors = validate_loop_set(dessin, result.loop_set)
            checks.append(CheckResult(
                name="disjoint_loops",
                passed=valid,
                measured={"refinements_used": result.refinements_used, "loops": len(loops)},
                details=loop_errors,
            ))
        write_json(config.out_dir / "loops.json", loop_data)

    report = VerificationReport.from_checks("dessin", checks)
    data["verification"] = report.model_dump(mode="json")
    data["dessin"] = dessin_to_json(dessin, loops)
    print_checks(report.checks)
    write_json(config.out_dir / "dessin_report.json", data)
    if config.svg:
        write_text(config.out_dir / "dessin.svg", dessin_svg(dessin, loops))
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_verify(args: argparse.Namespace, config: RunConfig) -> int:
    report = run_suite(args.suite, config)
    print(f"Suite {args.suite} (seed {config.seed}):")
    print_checks(report.checks)
    write_json(config.out_dir / "verify_report.json", report.model_dump(mode="json"))
    return EXIT_OK if report.passed else EXIT_FAILED


COMMANDS = {
    "schottky": cmd_schottky,
    "annulus": cmd_annulus,
    "dessin": cmd_dessin,
    "verify": cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    try:
        configure_logging(args)
        config = config_from_args(args)
    except ValueError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        return COMMANDS[args.command](args, config)
    except (ValueError, OSError) as e:
        # json.JSONDecodeError and pydantic.ValidationError are ValueErrors
        logger.debug("input error", exc_info=True)
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE
