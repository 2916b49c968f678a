#!/usr/bin/env python3
"""
Independent re-verification of a loop search result.

Checks, on the dessin rebuilt from the monodromy file:
1. Every loop is a covering of S¹ with the reported degree
2. Loops are pairwise vertex-disjoint
3. Loops are homologically independent (tree-cotree rank and
   intersection-pairing rank)
"""

import json
import sys
from src.adapters.monodromy import MonodromyAdapter
from src.belyi.dessin import build_dessin
from src.belyi.permutations import genus
from src.belyi.refine import refine_times
from src.models.belyi import LoopSearchResult
from src.validation.checkers import validate_loop_set


def validate_from_files(monodromy_file: str, loops_file: str) -> bool:
    """Validate a loops.json file against the triple it was searched on."""

    with open(monodromy_file) as f:
        triple = MonodromyAdapter().parse(json.load(f))

    with open(loops_file) as f:
        result = LoopSearchResult(**json.load(f))

    if result.exhausted or result.loop_set is None:
        print("❌ VALIDATION FAILED")
        print(f"  Loop search exhausted after {result.refinements_used} refinements")
        return False

    # Loops live on the refined triple; rebuild it instead of trusting the file
    refined = refine_times(triple, result.refinements_used)
    if refined != result.triple:
        print("❌ VALIDATION FAILED")
        print(f"  Triple in {loops_file} is not the {result.refinements_used}-fold refinement")
        return False

    dessin = build_dessin(refined)
    g = genus(refined)
    print(f"Validating {len(result.loop_set.cycles)} loops on a degree-{refined.degree} dessin of genus {g}...")
    print()

    if len(result.loop_set.cycles) != g:
        print("❌ VALIDATION FAILED")
        print(f"  Expected {g} loops, found {len(result.loop_set.cycles)}")
        return False

    is_valid, errors = validate_loop_set(dessin, result.loop_set)

    if not is_valid:
        print("❌ VALIDATION FAILED")
        print("\nLoop violations:")
        for err in errors:
            print(f"  - {err}")
        return False

    print("✓ Every loop covers S¹")
    print("✓ Loops are vertex-disjoint")
    print("✓ Homology classes are independent")

    print()
    print("✅ ALL VALIDATION CHECKS PASSED")
    print()
    print("Loops:")
    for idx, (cycle, degree) in enumerate(zip(result.loop_set.cycles, result.loop_set.degrees)):
        print(f"  {idx}: {len(cycle)} darts, covering degree {degree}")

    return True


if __name__ == "__main__":
    if len(sys.argv) != 3:
        print("Usage: python validate_loops.py <monodromy.json> <loops.json>")
        sys.exit(1)

    success = validate_from_files(sys.argv[1], sys.argv[2])
    sys.exit(0 if success else 1)
