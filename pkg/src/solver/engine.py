import logging
from typing import List, Optional, Sequence

from ortools.sat.python import cp_model

from ..belyi.homology import gf2_rank
from ..models.belyi import LoopCandidate

logger = logging.getLogger(__name__)

MAX_CUT_ROUNDS = 50


class LoopSelectionSolver:
    """Pick g vertex-disjoint candidate loops with independent homology classes.

    Independence is enforced directly for pairs (distinct nonzero classes)
    and through cuts added by the caller for larger dependent subsets.
    """

    def __init__(self, candidates: Sequence[LoopCandidate], genus: int, time_limit_seconds: float = 60.0):
        self.candidates = list(candidates)
        self.genus = genus
        self.time_limit_seconds = time_limit_seconds
        self.model = cp_model.CpModel()
        self.chosen: List[cp_model.IntVar] = []

    def build_model(self):
        """Construct the CP-SAT model."""
        for idx, candidate in enumerate(self.candidates):
            self.chosen.append(self.model.NewBoolVar(f"loop_{idx}"))

        self._add_cardinality()
        self._add_vertex_disjointness()
        self._add_class_constraints()
        self._set_objective()

    def _add_cardinality(self):
        self.model.Add(sum(self.chosen) == self.genus)

    def _add_vertex_disjointness(self):
        """At most one chosen loop through each vertex."""
        by_vertex = {}
        for idx, candidate in enumerate(self.candidates):
            for v in candidate.vertices:
                by_vertex.setdefault(v, []).append(self.chosen[idx])
        for v in sorted(by_vertex):
            if len(by_vertex[v]) > 1:
                self.model.AddAtMostOne(by_vertex[v])

    def _add_class_constraints(self):
        by_class = {}
        for idx, candidate in enumerate(self.candidates):
            by_class.setdefault(candidate.homology_class, []).append(self.chosen[idx])
        for homology_class in sorted(by_class):
            if homology_class == 0:
                for var in by_class[homology_class]:
                    self.model.Add(var == 0)
            elif len(by_class[homology_class]) > 1:
                self.model.AddAtMostOne(by_class[homology_class])

    def _set_objective(self):
        """Shortest total length, ties broken by candidate order."""
        weight = len(self.candidates) + 1
        self.model.Minimize(sum(
            (candidate.length * weight + idx) * self.chosen[idx]
            for idx, candidate in enumerate(self.candidates)
        ))

    def add_dependency_cut(self, indices: Sequence[int]):
        """Forbid choosing all of ``indices`` together."""
        self.model.Add(sum(self.chosen[i] for i in indices) <= len(indices) - 1)

    def solve(self) -> Optional[List[int]]:
        solver = cp_model.CpSolver()
        solver.parameters.max_time_in_seconds = self.time_limit_seconds
        solver.parameters.num_search_workers = 1
        solver.parameters.random_seed = 0
        solver.parameters.log_search_progress = False

        status = solver.Solve(self.model)

        if status == cp_model.OPTIMAL or status == cp_model.FEASIBLE:
            return self._extract_solution(solver)
        return self._handle_infeasibility(status)

    def _extract_solution(self, solver: cp_model.CpSolver) -> List[int]:
        return [idx for idx, var in enumerate(self.chosen) if solver.Value(var)]

    def _handle_infeasibility(self, status) -> None:
        if status == cp_model.INFEASIBLE:
            reasons = [f"no {self.genus} disjoint independent loops among {len(self.candidates)} candidates"]
        elif status == cp_model.MODEL_INVALID:
            reasons = ["invalid loop selection model"]
        else:
            reasons = [f"solver stopped with status {status}"]
        for reason in reasons:
            logger.info(reason)
        return None


def minimal_dependent_subset(classes: Sequence[int]) -> Optional[List[int]]:
    """Positions of a minimal linearly dependent subset, or None if independent."""
    if gf2_rank(classes) == len(classes):
        return None
    subset = list(range(len(classes)))
    for position in list(subset):
        trial = [i for i in subset if i != position]
        if gf2_rank(classes[i] for i in trial) < len(trial):
            subset = trial
    return subset


def solve_loop_selection(candidates: Sequence[LoopCandidate], genus: int) -> Optional[List[int]]:
    """Main entry point: indices of the selected candidates, or None."""
    if genus == 0:
        return []
    solver = LoopSelectionSolver(candidates, genus)
    solver.build_model()
    for _ in range(MAX_CUT_ROUNDS):
        selection = solver.solve()
        if selection is None:
            return None
        dependent = minimal_dependent_subset([candidates[i].homology_class for i in selection])
        if dependent is None:
            return selection
        solver.add_dependency_cut([selection[i] for i in dependent])
    logger.info("loop selection gave up after %d dependency cuts", MAX_CUT_ROUNDS)
    return None
