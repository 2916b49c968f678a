import numpy as np
import pytest

from src.belyi.dessin import build_dessin, check_dessin, dessin_to_json, end_dart, start_dart
from src.belyi.export import dessin_svg
from src.belyi.homology import (
    check_closed_walk,
    dual_pairing_rank,
    gf2_rank,
    homology_basis,
    homology_basis_pairing,
    homology_rank,
    tree_cotree,
)
from src.belyi.permutations import (
    compose,
    cycle_type,
    cycles,
    genus,
    genus_two_triple,
    identity,
    inverse,
    is_transitive,
    trivial_triple,
    validate_triple,
)
from src.belyi.refine import refine, refine_times
from src.belyi.rmap import (
    BRANCH_VALUES,
    OMEGA,
    fiber_over_zero,
    r_constellation,
    r_critical_values,
    r_deck_deviation,
    r_evaluate,
    r_values,
)
from src.errors import InvalidCycleError, InvalidTripleError
from src.models.belyi import MonodromyTriple
from src.utils.numeric_utils import INFINITY, chordal_distance


def test_permutation_algebra():
    """Composition applies the first permutation first."""
    p = (1, 2, 0)
    assert compose(p, p) == (2, 0, 1)
    assert inverse(p) == (2, 0, 1)
    assert compose(p, inverse(p)) == identity(3)
    assert compose((1, 0, 2), (0, 2, 1)) == (2, 0, 1)
    assert cycles((1, 0, 2)) == [(0, 1), (2,)]
    assert cycle_type((1, 0, 2)) == (2, 1)


def test_transitivity():
    """Identities on two sheets leave the sheets apart."""
    assert is_transitive(3, [(1, 2, 0)])
    assert not is_transitive(2, [(0, 1), (0, 1)])


def test_triple_must_hold_permutations():
    """Image arrays must be bijections of 0..d-1."""
    with pytest.raises(ValueError, match="not a permutation"):
        MonodromyTriple(degree=2, s1=(0, 0), sw=(0, 1), sw2=(0, 1))
    with pytest.raises(ValueError, match="degree must be positive"):
        MonodromyTriple(degree=0, s1=(), sw=(), sw2=())


def test_triple_diagnostics():
    """Product and transitivity failures are reported, not raised."""
    ok, errors = validate_triple(MonodromyTriple(degree=2, s1=(0, 1), sw=(0, 1), sw2=(0, 1)))
    assert not ok
    assert errors == ["generated group is not transitive"]

    ok, errors = validate_triple(MonodromyTriple(degree=2, s1=(1, 0), sw=(0, 1), sw2=(0, 1)))
    assert not ok
    assert errors == ["product s1·sw·sw2 is not the identity"]


def test_genus_by_riemann_hurwitz():
    """The trivial triple is a sphere; three 5-cycles give genus 2."""
    assert genus(trivial_triple()) == 0
    assert genus(genus_two_triple()) == 2
    with pytest.raises(InvalidTripleError):
        genus(MonodromyTriple(degree=2, s1=(0, 1), sw=(0, 1), sw2=(0, 1)))


def test_r_values_at_special_points():
    """R(∞) = R(0) = 1 and R(1) = ω."""
    assert r_evaluate(INFINITY) == pytest.approx(1.0)
    assert r_evaluate(0) == pytest.approx(1.0)
    assert r_evaluate(1) == pytest.approx(OMEGA)


def test_r_deck_symmetry():
    """R(ωz) = R(z) = R(1/z)."""
    rotation, inversion = r_deck_deviation(200, np.random.default_rng(1))
    assert rotation < 1e-9
    assert inversion < 1e-9


def test_r_critical_values_are_branch_values():
    """Every critical value of R is one of 1, ω, ω²."""
    values = r_critical_values()
    assert values
    for w in values:
        assert min(chordal_distance(w, b) for b in BRANCH_VALUES) < 1e-6
    for b in BRANCH_VALUES:
        assert min(chordal_distance(w, b) for w in values) < 1e-6


def test_fiber_over_zero():
    """Six distinct zeros of R, three inside the unit disk."""
    fiber = fiber_over_zero()
    assert len(fiber) == 6
    assert np.all(np.abs(r_values(fiber)) < 1e-9)
    assert np.sum(np.abs(fiber) < 1) == 3


def test_r_constellation():
    """R's monodromy is a valid genus-0 triple of degree 6."""
    constellation = r_constellation()
    assert constellation.degree == 6
    ok, errors = validate_triple(constellation.triple)
    assert ok, errors
    assert genus(constellation.triple) == 0
    types = sorted(cycle_type(p) for p in constellation.triple.permutations)
    assert types == [(2, 2, 2), (2, 2, 2), (3, 3)]


def test_refining_the_trivial_triple_gives_r():
    """R∘id has R's own monodromy."""
    assert refine(trivial_triple()) == r_constellation().triple


def test_refinement_preserves_genus():
    """Refining multiplies the degree by 6 and keeps the surface."""
    for t in (trivial_triple(), genus_two_triple()):
        refined = refine(t)
        assert refined.degree == 6 * t.degree
        assert validate_triple(refined)[0]
        assert genus(refined) == genus(t)
    assert refine_times(trivial_triple(), 2).degree == 36


def test_refine_rejects_invalid_triples():
    """Intransitive input cannot be refined."""
    with pytest.raises(InvalidTripleError, match="not transitive"):
        refine(MonodromyTriple(degree=2, s1=(0, 1), sw=(0, 1), sw2=(0, 1)))
    with pytest.raises(ValueError, match="nonnegative"):
        refine_times(trivial_triple(), -1)


def test_trivial_dessin():
    """Degree 1: a triangle with an inner and an outer face."""
    dessin = build_dessin(trivial_triple())
    assert (dessin.num_vertices, dessin.num_edges, dessin.num_faces) == (3, 3, 2)
    assert dessin.faces() == [(0, 2, 4), (1, 5, 3)]
    assert check_dessin(dessin) == []
    assert dessin.vertex_colors == (0, 1, 2)


def test_dart_numbering():
    """Start dart 2(3i + a), end dart one more."""
    assert start_dart(2, 1) == 14
    assert end_dart(2, 1) == 15


def test_genus_two_dessin():
    """Three 5-cycles give V = 3, E = 15, F = 10."""
    dessin = build_dessin(genus_two_triple())
    assert (dessin.num_vertices, dessin.num_edges, dessin.num_faces) == (3, 15, 10)
    assert dessin.euler_characteristic == -2
    assert check_dessin(dessin) == []


def test_refined_dessins_triangulate():
    """Refined dessins keep the Euler identity and edge colors."""
    dessin = build_dessin(refine(genus_two_triple()))
    assert dessin.num_edges == 3 * 30
    assert dessin.num_faces == 2 * 30
    assert check_dessin(dessin) == []


def test_dessin_rejects_invalid_triple():
    """Only valid triples have dessins."""
    with pytest.raises(InvalidTripleError):
        build_dessin(MonodromyTriple(degree=2, s1=(1, 0), sw=(0, 1), sw2=(0, 1)))


def test_dessin_json_export():
    """Counts and optional loops in the adjacency export."""
    dessin = build_dessin(trivial_triple())
    data = dessin_to_json(dessin)
    assert data["counts"] == {"V": 3, "E": 3, "F": 2, "euler": 2}
    assert data["genus"] == 0
    assert [e["arc"] for e in data["edges"]] == ["1→ω", "ω→ω²", "ω²→1"]
    assert "loops" not in data
    assert dessin_to_json(dessin, [(0, 2, 4)])["loops"] == [[0, 2, 4]]


def test_dessin_svg():
    """One marker per vertex, one chord per edge."""
    dessin = build_dessin(genus_two_triple())
    svg = dessin_svg(dessin)
    assert svg.count("<circle") == dessin.num_vertices
    assert svg.count("<line") == dessin.num_edges
    assert svg == dessin_svg(dessin)


def test_gf2_rank():
    """Rank over GF(2) of bitset vectors."""
    assert gf2_rank([1, 2, 3]) == 2
    assert gf2_rank([1, 2, 4]) == 3
    assert gf2_rank([0, 0]) == 0


def test_homology_of_genus_two_dessin():
    """2g = 4 independent classes, dual to the cotree cycles."""
    dessin = build_dessin(genus_two_triple())
    assert tree_cotree(dessin).rank == 4
    basis = homology_basis(dessin)
    assert len(basis) == 4
    assert homology_rank(dessin, basis) == 4
    assert dual_pairing_rank(dessin, basis) == 4
    assert homology_basis_pairing(dessin) == [[int(i == j) for j in range(4)] for i in range(4)]


def test_sphere_has_trivial_homology():
    """Every cycle on the trivial dessin is null-homologous."""
    dessin = build_dessin(trivial_triple())
    assert tree_cotree(dessin).rank == 0
    assert homology_rank(dessin, [(0, 2, 4)]) == 0


def test_closed_walk_check():
    """Disconnected or out-of-range darts are not a closed walk."""
    dessin = build_dessin(trivial_triple())
    check_closed_walk(dessin, (0, 2, 4))
    with pytest.raises(InvalidCycleError, match="not consecutive"):
        check_closed_walk(dessin, (0, 4))
    with pytest.raises(InvalidCycleError, match="out of range"):
        check_closed_walk(dessin, (99,))
    with pytest.raises(InvalidCycleError, match="empty"):
        check_closed_walk(dessin, ())


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
