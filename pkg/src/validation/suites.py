"""Property suites behind ``verify``.

Each suite draws its random inputs from ``numpy.random.default_rng(seed)``
and returns a ``VerificationReport``; a fixed seed gives an identical report.
"""
import logging
import math
from typing import Callable, Dict, List

import numpy as np

from ..annulus.lemmas import lemma4_ratio
from ..annulus.modulus import (
    cover_modulus_relation,
    grotzsch_check,
    modulus_circle_ring,
    modulus_round,
    random_moebius_keeping_ring,
    ring_from_circles,
    ring_image,
)
from ..annulus.numeric import modulus_numeric
from ..annulus.sampling import sample_boundaries
from ..annulus.separating import find_separating_circle, separating_clearance
from ..belyi.dessin import build_dessin, check_dessin
from ..belyi.loops import find_disjoint_loops
from ..belyi.permutations import (
    compose,
    cycle_type,
    genus,
    genus_two_triple,
    inverse,
    is_transitive,
    trivial_triple,
)
from ..belyi.refine import refine
from ..belyi.rmap import BRANCH_VALUES, r_constellation, r_critical_values, r_deck_deviation
from ..geometry.circles import (
    circle_apply,
    circle_distance,
    circle_from_center_radius,
    circle_sample_points,
    inversive_distance,
)
from ..geometry.moebius import (
    OMEGA3,
    mob_apply,
    mob_classify,
    mob_compose,
    mob_conjugate,
    mob_identity,
    mob_inverse,
)
from ..models.annulus import CircleRing, LaurentMap, Mapped, RationalMap, Round
from ..models.belyi import MonodromyTriple
from ..models.reports import CheckResult, RunConfig, VerificationReport
from ..models.schottky import ReducedWord
from ..models.sphere import MoebiusMap
from ..schottky.construction import (
    is_conjugation_symmetric,
    is_loxodromic_config,
    koebe_symmetric_config,
    quotient_cell_counts,
    real_axis_config,
    verify_classical,
)
from ..schottky.words import enumerate_words, image_disk
from ..utils.numeric_utils import chordal_distance, is_infinity
from .checkers import validate_loop_set

logger = logging.getLogger(__name__)

RANDOM_MAPS = 100
CIRCLE_TRIALS = 20
POINTS_PER_CIRCLE = 20
COVER_CASES = 100
GROTZSCH_CLOSED_CASES = 500
GROTZSCH_NUMERIC_CASES = 50
SEPARATION_CASES = 200
ORACLE_CASES = 20
DECK_POINTS = 1000
CORPUS_SIZE = 10
CORPUS_MAX_DEGREE = 8
CORPUS_MAX_GENUS = 3
NESTING_WORD_LEN = 4
LOOP_REFINE_BUDGET = 2

SUITES = ("moebius", "schottky", "lemmas", "belyi")


def random_map(rng: np.random.Generator) -> MoebiusMap:
    while True:
        a, b, c, d = rng.normal(size=4) + 1j * rng.normal(size=4)
        if abs(a * d - b * c) >= 0.1:
            return MoebiusMap(a=a, b=b, c=c, d=d)


def _random_circle(rng: np.random.Generator):
    center = complex(*rng.normal(scale=2.0, size=2))
    return circle_from_center_radius(center, float(rng.uniform(0.5, 2.0)))


def _check_determinants(rng, config: RunConfig) -> CheckResult:
    worst = max(abs(random_map(rng).determinant - 1) for _ in range(RANDOM_MAPS))
    return CheckResult(
        name="moebius.determinant_normalized",
        passed=worst < config.algebraic_tolerance,
        measured={"max_error": float(worst), "maps": RANDOM_MAPS},
        tolerance=config.algebraic_tolerance,
    )


def _check_group_laws(rng, config: RunConfig) -> CheckResult:
    identity = mob_identity()
    failures = 0
    for _ in range(RANDOM_MAPS):
        m = random_map(rng)
        if not mob_compose(m, mob_inverse(m)).is_equivalent(identity, config.algebraic_tolerance):
            failures += 1
    a = MoebiusMap(a=OMEGA3, b=0, c=0, d=1)
    b = MoebiusMap(a=0, b=1, c=1, d=0)
    details = []
    if failures:
        details.append(f"{failures} maps fail compose(m, inverse(m)) = identity")
    if not mob_compose(a, a, a).is_equivalent(identity, config.algebraic_tolerance):
        details.append("A∘A∘A is not the identity for A(z) = ωz")
    if not mob_compose(b, b).is_equivalent(identity, config.algebraic_tolerance):
        details.append("B∘B is not the identity for B(z) = 1/z")
    return CheckResult(
        name="moebius.group_laws",
        passed=not details,
        measured={"maps": RANDOM_MAPS, "failures": failures},
        tolerance=config.algebraic_tolerance,
        details=details,
    )


def _check_circle_action(rng, config: RunConfig) -> CheckResult:
    worst = 0.0
    for _ in range(CIRCLE_TRIALS):
        m = random_map(rng)
        c = _random_circle(rng)
        # keep the pole away from the circle so image points stay bounded
        while m.c != 0 and abs(abs(-m.d / m.c - c.center) - c.radius) < 0.1:
            c = _random_circle(rng)
        image = circle_apply(m, c)
        for z in circle_sample_points(c, POINTS_PER_CIRCLE):
            w = mob_apply(m, z)
            worst = max(worst, circle_distance(image, w) / max(1.0, abs(w)))
    return CheckResult(
        name="moebius.circle_point_action",
        passed=worst < config.tolerance,
        measured={"max_relative_distance": worst, "circles": CIRCLE_TRIALS},
        tolerance=config.tolerance,
    )


def _check_inversive_invariance(rng, config: RunConfig) -> CheckResult:
    worst = 0.0
    for _ in range(RANDOM_MAPS):
        c1, c2 = _random_circle(rng), _random_circle(rng)
        m = random_map(rng)
        before = inversive_distance(c1, c2)
        after = inversive_distance(circle_apply(m, c1), circle_apply(m, c2))
        worst = max(worst, abs(before - after) / max(1.0, before))
    return CheckResult(
        name="moebius.inversive_distance_invariant",
        passed=worst < config.tolerance,
        measured={"max_relative_change": worst, "pairs": RANDOM_MAPS},
        tolerance=config.tolerance,
    )


def _check_classification(rng, config: RunConfig) -> CheckResult:
    maps = [
        MoebiusMap(a=OMEGA3, b=0, c=0, d=1),
        MoebiusMap(a=4, b=0, c=0, d=1),
        MoebiusMap(a=1, b=1, c=0, d=1),
    ]
    maps.extend(random_map(rng) for _ in range(CIRCLE_TRIALS))
    details = []
    for idx, m in enumerate(maps):
        g = random_map(rng)
        before = mob_classify(m, config.tolerance)
        after = mob_classify(mob_conjugate(g, m), config.tolerance)
        if before != after:
            details.append(f"map {idx}: {before.value} becomes {after.value} under conjugation")
    return CheckResult(
        name="moebius.classification_conjugation_invariant",
        passed=not details,
        measured={"maps": len(maps)},
        tolerance=config.tolerance,
        details=details,
    )


def moebius_checks(rng: np.random.Generator, config: RunConfig) -> List[CheckResult]:
    return [
        _check_determinants(rng, config),
        _check_group_laws(rng, config),
        _check_circle_action(rng, config),
        _check_inversive_invariance(rng, config),
        _check_classification(rng, config),
    ]


def _disk_strictly_inside(inner, outer, tol: float) -> bool:
    return abs(inner.center - outer.center) + inner.radius < outer.radius - tol


def _check_nesting(cfg, config: RunConfig) -> CheckResult:
    words = enumerate_words(cfg, NESTING_WORD_LEN, config.word_cap)
    details = []
    checked = 0
    for word, _ in words:
        if len(word) < 2:
            continue
        parent = ReducedWord(letters=word.letters[:-1])
        checked += 1
        if not _disk_strictly_inside(image_disk(cfg, word), image_disk(cfg, parent), config.tolerance):
            details.append(f"disk of {word.letters} is not strictly inside its parent")
    return CheckResult(
        name="schottky.prefix_disks_nested",
        passed=not details,
        measured={"words_checked": checked, "max_len": NESTING_WORD_LEN},
        tolerance=config.tolerance,
        details=details[:10],
    )


def _check_distinct_words(cfg, config: RunConfig) -> CheckResult:
    words = enumerate_words(cfg, NESTING_WORD_LEN, config.word_cap)
    coefficients = np.array([[m.a, m.b, m.c, m.d] for _, m in words])
    same = np.max(np.abs(coefficients[:, None, :] - coefficients[None, :, :]), axis=2)
    flipped = np.max(np.abs(coefficients[:, None, :] + coefficients[None, :, :]), axis=2)
    gaps = np.minimum(same, flipped)
    np.fill_diagonal(gaps, np.inf)
    closest = float(gaps.min())
    return CheckResult(
        name="schottky.words_distinct",
        passed=closest > config.tolerance,
        measured={"words": len(words), "min_coefficient_gap": closest},
        tolerance=config.tolerance,
    )


def schottky_checks(rng: np.random.Generator, config: RunConfig) -> List[CheckResult]:
    cfg = real_axis_config()
    koebe = koebe_symmetric_config(2, (-6.0, -2.0, 2.0, 6.0), (1.0, 1.0, 1.0, 1.0))
    checks = []

    report = verify_classical(cfg, config.tolerance)
    checks.append(CheckResult(
        name="schottky.real_axis_passes",
        passed=report.passed,
        measured={"failed": report.failed_checks()},
    ))

    overlap = verify_classical(real_axis_config(radius=2.5), config.tolerance)
    failed = overlap.failed_checks()
    only_disjointness = set(failed) <= {"disjoint_circles", "images_avoid_fundamental_domain"}
    checks.append(CheckResult(
        name="schottky.overlap_fails_disjointness_only",
        passed="disjoint_circles" in failed and only_disjointness,
        measured={"failed": failed},
    ))

    quotient = {}
    for label, candidate in (("real_axis", cfg), ("overlap", real_axis_config(radius=2.5))):
        v, e, f = quotient_cell_counts(candidate, config.tolerance)
        quotient[label] = v - e + f
    checks.append(CheckResult(
        name="schottky.quotient_euler_characteristic",
        passed=quotient["real_axis"] == 2 - 2 * cfg.g and quotient["overlap"] != 2 - 2 * cfg.g,
        measured=quotient,
    ))

    checks.append(_check_nesting(cfg, config))
    checks.append(_check_distinct_words(cfg, config))

    details = []
    for label, candidate in (("real_axis", cfg), ("koebe", koebe)):
        if not is_loxodromic_config(candidate, config.tolerance):
            details.append(f"{label}: a pairing map is not loxodromic")
    checks.append(CheckResult(name="schottky.generators_loxodromic", passed=not details, details=details))

    symmetric = is_conjugation_symmetric(koebe, config.tolerance)
    koebe_report = verify_classical(koebe, config.tolerance)
    checks.append(CheckResult(
        name="schottky.koebe_symmetric",
        passed=symmetric and koebe_report.passed,
        measured={"symmetric": symmetric, "classical": koebe_report.passed},
    ))
    return checks


def _concentric_ring(inner_radius: float, outer_radius: float) -> CircleRing:
    return ring_from_circles(
        circle_from_center_radius(0, inner_radius), circle_from_center_radius(0, outer_radius)
    )


def _check_round_modulus(config: RunConfig) -> CheckResult:
    error = abs(modulus_round(math.exp(math.pi)) - 1.0)
    return CheckResult(
        name="lemmas.round_modulus_normalized",
        passed=error < config.algebraic_tolerance,
        measured={"error": error},
        tolerance=config.algebraic_tolerance,
    )


def _check_cover_relation(rng, config: RunConfig) -> CheckResult:
    worst = 0.0
    note = ""
    reversed_holds = 0
    for _ in range(COVER_CASES):
        rho = 10.0 - 9.0 * float(rng.random())
        d = int(rng.integers(1, 7))
        relation = cover_modulus_relation(rho, d)
        worst = max(worst, relation.relation_error)
        reversed_holds += int(relation.reversed_orientation_holds and d > 1)
        note = relation.note
    return CheckResult(
        name="lemmas.cover_multiplies_modulus",
        passed=worst < config.algebraic_tolerance,
        measured={"max_error": worst, "cases": COVER_CASES,
                  "reversed_orientation_holds_for_d_above_1": reversed_holds},
        tolerance=config.algebraic_tolerance,
        details=[note],
    )


def _check_ring_invariance(rng, config: RunConfig) -> CheckResult:
    worst = 0.0
    for _ in range(RANDOM_MAPS):
        r = float(rng.uniform(1.1, 10.0))
        ring = _concentric_ring(1 / r ** 2, 1.0)
        consistency = abs(modulus_circle_ring(ring) - modulus_round(r))
        image = ring_image(random_moebius_keeping_ring(ring, rng, margin=2.0), ring)
        change = abs(modulus_circle_ring(image) - modulus_circle_ring(ring))
        worst = max(worst, consistency, change)
    return CheckResult(
        name="lemmas.ring_modulus_moebius_invariant",
        passed=worst < config.tolerance,
        measured={"max_error": worst, "rings": RANDOM_MAPS},
        tolerance=config.tolerance,
    )


def _check_grotzsch_closed(rng, config: RunConfig) -> CheckResult:
    violations = 0
    for _ in range(GROTZSCH_CLOSED_CASES):
        hole = math.exp(-float(rng.uniform(0.3, 3.0)))
        lo, hi = np.sort(rng.uniform(0.05, 0.9, size=2))
        hi = max(hi, lo + 0.05)
        log_hole = math.log(hole)
        outer = _concentric_ring(hole, 1.0)
        inner = _concentric_ring(math.exp((1 - lo) * log_hole), math.exp((1 - hi) * log_hole))
        m = random_moebius_keeping_ring(outer, rng, margin=2.0)
        if not grotzsch_check(ring_image(m, outer), ring_image(m, inner),
                              samples=config.boundary_samples):
            violations += 1
    return CheckResult(
        name="lemmas.grotzsch_closed_form",
        passed=violations == 0,
        measured={"cases": GROTZSCH_CLOSED_CASES, "violations": violations},
        tolerance=config.tolerance,
    )


def _check_grotzsch_numeric(rng, config: RunConfig) -> CheckResult:
    violations = 0
    for _ in range(GROTZSCH_NUMERIC_CASES):
        r = float(rng.uniform(1.5, 2.5))
        c = 0.1 * float(rng.random()) * complex(np.exp(2j * np.pi * rng.random()))
        outer = Mapped(base=Round(r=r), f=LaurentMap.joukowski(c))
        size = abs(c)
        inner = _concentric_ring(1.05 * (1 / r + size * r), 0.95 * (r - size / r))
        if not grotzsch_check(outer, inner, grid_h=config.grid_h, samples=config.boundary_samples):
            violations += 1
    return CheckResult(
        name="lemmas.grotzsch_numeric",
        passed=violations == 0,
        measured={"cases": GROTZSCH_NUMERIC_CASES, "violations": violations},
        tolerance=0.01,
    )


def _check_separating_circles(rng, config: RunConfig) -> CheckResult:
    misses = 0
    worst = math.inf
    for _ in range(SEPARATION_CASES):
        target = float(rng.uniform(0.55, 1.2))
        concentric = _concentric_ring(math.exp(-2 * math.pi * target), 1.0)
        ring = ring_image(random_moebius_keeping_ring(concentric, rng, margin=3.0), concentric)
        circle = find_separating_circle(ring, config.boundary_samples, config.tolerance)
        if circle is None:
            misses += 1
            continue
        clearance = separating_clearance(circle, sample_boundaries(ring, config.boundary_samples))
        worst = min(worst, clearance)
        if clearance <= config.tolerance:
            misses += 1
    return CheckResult(
        name="lemmas.separating_circle_found",
        passed=misses == 0,
        measured={"cases": SEPARATION_CASES, "misses": misses, "min_clearance": worst},
        tolerance=config.tolerance,
    )


def _oracle_cases(rng) -> List:
    cases = [Round(r=float(rng.uniform(1.5, 5.0))) for _ in range(ORACLE_CASES // 2)]
    for _ in range(ORACLE_CASES - len(cases)):
        offset = 0.3 * float(rng.random()) * complex(np.exp(2j * np.pi * rng.random()))
        radius = float(rng.uniform(0.15, 0.4))
        cases.append(ring_from_circles(circle_from_center_radius(offset, radius),
                                       circle_from_center_radius(0, 1.0)))
    return cases


def _relative_error(annulus, grid_h: float, samples: int) -> float:
    exact = modulus_round(annulus.r) if isinstance(annulus, Round) else modulus_circle_ring(annulus)
    numeric = modulus_numeric(sample_boundaries(annulus, samples), grid_h)
    return abs(numeric - exact) / exact


def _check_numeric_oracle(rng, config: RunConfig) -> CheckResult:
    errors = [_relative_error(a, config.grid_h, config.boundary_samples) for a in _oracle_cases(rng)]
    eccentric = [
        ring_from_circles(circle_from_center_radius(0.3, 0.2), circle_from_center_radius(0, 1.0)),
        ring_from_circles(circle_from_center_radius(-0.25j, 0.3), circle_from_center_radius(0, 1.0)),
        ring_from_circles(circle_from_center_radius(0.2 + 0.2j, 0.25), circle_from_center_radius(0, 1.0)),
    ]
    coarse = sum(_relative_error(a, 8 * config.grid_h, config.boundary_samples) for a in eccentric)
    fine = sum(_relative_error(a, 4 * config.grid_h, config.boundary_samples) for a in eccentric)
    details = []
    if max(errors) >= 0.01:
        details.append(f"largest relative error {max(errors):.3e} at grid step {config.grid_h}")
    if not fine < coarse:
        details.append("error does not decrease when the grid step is halved")
    return CheckResult(
        name="lemmas.numeric_modulus_oracle",
        passed=not details,
        measured={"cases": len(errors), "max_relative_error": max(errors),
                  "coarse_error": coarse, "halved_error": fine},
        tolerance=0.01,
        details=details,
    )


def _check_holomorphic_ratio(config: RunConfig) -> CheckResult:
    details = []
    measured = {}
    for d in (1, 2, 3):
        result = lemma4_ratio(RationalMap.power(d), Round(r=1.5), Round(r=1.5 ** d),
                              config.boundary_samples, config.grid_h)
        measured[f"power_{d}"] = result.ratio
        if result.degree != d or abs(result.ratio * d - 1) > config.tolerance:
            details.append(f"z^{d}: ratio {result.ratio:.12g}, degree {result.degree}")
    f = LaurentMap.joukowski(0.1)
    result = lemma4_ratio(RationalMap.from_laurent(f), Round(r=2.0), Mapped(base=Round(r=2.0), f=f),
                          config.boundary_samples, config.grid_h)
    measured["joukowski"] = result.ratio
    if result.degree != 1 or abs(result.ratio - 1) > 0.01:
        details.append(f"joukowski: ratio {result.ratio:.6g}, degree {result.degree}")
    return CheckResult(
        name="lemmas.holomorphic_modulus_ratio",
        passed=not details,
        measured=measured,
        tolerance=config.tolerance,
        details=details,
    )


def lemma_checks(rng: np.random.Generator, config: RunConfig) -> List[CheckResult]:
    return [
        _check_round_modulus(config),
        _check_cover_relation(rng, config),
        _check_ring_invariance(rng, config),
        _check_grotzsch_closed(rng, config),
        _check_grotzsch_numeric(rng, config),
        _check_separating_circles(rng, config),
        _check_numeric_oracle(rng, config),
        _check_holomorphic_ratio(config),
    ]


def triple_corpus(rng: np.random.Generator, count: int = CORPUS_SIZE,
                  max_degree: int = CORPUS_MAX_DEGREE) -> List[MonodromyTriple]:
    """Valid triples of small degree: the trivial one, three 5-cycles, then random ones."""
    corpus = [trivial_triple(), genus_two_triple()]
    degree = 2
    while len(corpus) < count:
        s1 = tuple(int(i) for i in rng.permutation(degree))
        sw = tuple(int(i) for i in rng.permutation(degree))
        sw2 = inverse(compose(s1, sw))
        if is_transitive(degree, (s1, sw, sw2)):
            t = MonodromyTriple(degree=degree, s1=s1, sw=sw, sw2=sw2)
            if genus(t) <= CORPUS_MAX_GENUS:
                corpus.append(t)
        degree = 2 + (degree - 1) % (max_degree - 1)
    return corpus


def _check_deck_symmetry(rng, config: RunConfig) -> CheckResult:
    rotation, inversion = r_deck_deviation(DECK_POINTS, rng)
    return CheckResult(
        name="belyi.r_deck_invariance",
        passed=max(rotation, inversion) < config.tolerance,
        measured={"rotation": rotation, "inversion": inversion, "points": DECK_POINTS},
        tolerance=config.tolerance,
    )


def _check_critical_values(config: RunConfig) -> CheckResult:
    values = r_critical_values()
    worst = max(min(chordal_distance(v, b) for b in BRANCH_VALUES) for v in values)
    return CheckResult(
        name="belyi.r_critical_values",
        passed=worst < config.tolerance and not any(is_infinity(v) for v in values),
        measured={"critical_points": len(values), "max_distance": worst},
        tolerance=config.tolerance,
    )


def _check_r_constellation() -> CheckResult:
    triple = r_constellation().triple
    types = sorted(cycle_type(p) for p in triple.permutations)
    expected = sorted([(2, 2, 2), (2, 2, 2), (3, 3)])
    g = genus(triple)
    return CheckResult(
        name="belyi.r_constellation",
        passed=triple.degree == 6 and types == expected and g == 0,
        measured={"degree": triple.degree, "cycle_types": [list(t) for t in types], "genus": g},
    )


def _check_refinement(corpus: List[MonodromyTriple]) -> List[CheckResult]:
    refine_details, dessin_details = [], []
    for idx, t in enumerate(corpus):
        g = genus(t)
        stage = t
        for level in range(3):
            if level:
                previous = stage
                stage = refine(stage)
                if stage.degree != 6 * previous.degree:
                    refine_details.append(f"triple {idx} stage {level}: degree {stage.degree}")
                if genus(stage) != g:
                    refine_details.append(f"triple {idx} stage {level}: genus {genus(stage)} != {g}")
            for problem in check_dessin(build_dessin(stage)):
                dessin_details.append(f"triple {idx} stage {level}: {problem}")
    return [
        CheckResult(name="belyi.refinement_preserves_genus", passed=not refine_details,
                    measured={"triples": len(corpus), "stages": 2}, details=refine_details),
        CheckResult(name="belyi.dessin_triangulates", passed=not dessin_details,
                    measured={"triples": len(corpus)}, details=dessin_details),
    ]


def _check_loop_search(config: RunConfig) -> CheckResult:
    t = genus_two_triple()
    result = find_disjoint_loops(build_dessin(t), genus(t), LOOP_REFINE_BUDGET, config.max_loop_length)
    measured = {"refinements_used": result.refinements_used, "degree": result.triple.degree}
    if result.exhausted or result.loop_set is None:
        return CheckResult(name="belyi.disjoint_loops_found", passed=False, measured=measured,
                           details=["loop search exhausted its refine budget"])
    ok, errors = validate_loop_set(build_dessin(result.triple), result.loop_set)
    measured["loop_lengths"] = [len(c) for c in result.loop_set.cycles]
    return CheckResult(name="belyi.disjoint_loops_found", passed=ok, measured=measured, details=errors)


def belyi_checks(rng: np.random.Generator, config: RunConfig) -> List[CheckResult]:
    checks = [_check_deck_symmetry(rng, config), _check_critical_values(config), _check_r_constellation()]
    checks.extend(_check_refinement(triple_corpus(rng)))
    checks.append(_check_loop_search(config))
    return checks


SUITE_CHECKS: Dict[str, Callable[[np.random.Generator, RunConfig], List[CheckResult]]] = {
    "moebius": moebius_checks,
    "schottky": schottky_checks,
    "lemmas": lemma_checks,
    "belyi": belyi_checks,
}


def run_suite(name: str, config: RunConfig) -> VerificationReport:
    """Run one suite, or every suite in order for ``all``; each suite gets its own seeded generator."""
    if name == "all":
        names = list(SUITES)
    elif name in SUITE_CHECKS:
        names = [name]
    else:
        raise ValueError(f"unknown suite '{name}', expected one of {', '.join(SUITES + ('all',))}")
    checks: List[CheckResult] = []
    for suite in names:
        logger.info("running %s suite with seed %d", suite, config.seed)
        checks.extend(SUITE_CHECKS[suite](np.random.default_rng(config.seed), config))
    return VerificationReport.from_checks(name, checks)
