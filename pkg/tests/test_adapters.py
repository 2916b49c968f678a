import pytest
import json
from pathlib import Path
from src.adapters.annulus_descriptor import AnnulusDescriptorAdapter
from src.adapters.codec import decode_circle, decode_complex, decode_point, encode_circle, encode_point
from src.adapters.factory import AdapterFactory
from src.adapters.monodromy import MonodromyAdapter
from src.adapters.schottky_config import SchottkyConfigAdapter, pairings_payload
from src.models.annulus import CircleRing, Mapped, Round
from src.schottky.construction import verify_classical
from src.utils.numeric_utils import INFINITY

SAMPLES = Path(__file__).parent.parent / "samples"


def _load(name):
    with open(SAMPLES / name) as f:
        return json.load(f)


def test_schottky_config_adapter():
    """Test that the sample configuration parses into a verifiable genus-2 group."""
    cfg = SchottkyConfigAdapter().parse(_load("schottky_genus2.json"))

    assert cfg.g == 2
    assert abs(cfg.pairings[0].c.center - (-6)) < 1e-12
    assert abs(cfg.pairings[1].c_prime.radius - 1) < 1e-12
    assert verify_classical(cfg).passed


def test_schottky_config_overlap_still_parses():
    """Test that overlapping circles reach verification instead of failing to parse."""
    cfg = SchottkyConfigAdapter().parse(_load("schottky_overlap.json"))

    assert not verify_classical(cfg).passed


def test_schottky_config_explicit_map():
    """Test that an explicit map payload is used as given."""
    cfg = SchottkyConfigAdapter().parse(_load("schottky_genus2.json"))
    payload = {"pairings": pairings_payload(cfg)}

    reparsed = SchottkyConfigAdapter().parse(payload)

    for original, copy in zip(cfg.pairings, reparsed.pairings):
        assert copy.map.is_equivalent(original.map, tol=1e-9)


def test_schottky_config_errors():
    """Test that malformed configurations are rejected with a reason."""
    adapter = SchottkyConfigAdapter()
    data = _load("schottky_genus2.json")

    with pytest.raises(ValueError, match="does not match"):
        adapter.parse({**data, "genus": 3})
    with pytest.raises(ValueError, match="list of pairings"):
        adapter.parse({"pairings": "none"})

    line = {"line": {"p": 0, "q": [1, 0], "s": 0}}
    bad = {"pairings": [{"c": line, "c_prime": {"center": [3, 0], "radius": 1}}] * 2}
    with pytest.raises(ValueError, match="bounded"):
        adapter.parse(bad)


def test_annulus_descriptor_kinds():
    """Test that each annulus kind parses into its model."""
    adapter = AnnulusDescriptorAdapter()

    task = adapter.parse(_load("annulus_round.json"))
    assert isinstance(task.annulus, Round)
    assert task.sub_ring is None

    task = adapter.parse(_load("annulus_ring.json"))
    assert isinstance(task.annulus, CircleRing)
    assert isinstance(task.sub_ring, CircleRing)

    task = adapter.parse(_load("annulus_joukowski_thin.json"))
    assert isinstance(task.annulus, Mapped)
    assert task.annulus.f.coefficients[-1] == pytest.approx(1.4688)

    task = adapter.parse(_load("annulus_power_map.json"))
    assert task.rational_map.degree == 2
    assert isinstance(task.target, Round)


def test_annulus_descriptor_errors():
    """Test that ambiguous or malformed descriptors are rejected."""
    adapter = AnnulusDescriptorAdapter()

    with pytest.raises(ValueError, match="exactly one"):
        adapter.parse({"round": {"r": 2}, "ring": {}})
    with pytest.raises(ValueError, match="r must be a number"):
        adapter.parse({"round": {"r": "two"}})
    with pytest.raises(ValueError, match="integer"):
        adapter.parse({"mapped": {"r": 2, "laurent": {"x": [1, 0]}}})
    with pytest.raises(ValueError, match="numerator and target"):
        adapter.parse({"round": {"r": 2}, "map": {"numerator": [0, 1]}})


def test_monodromy_adapter():
    """Test that monodromy files become triples."""
    triple = MonodromyAdapter().parse(_load("monodromy_genus2.json"))

    assert triple.degree == 5
    assert triple.s1 == (1, 2, 3, 4, 0)

    with pytest.raises(ValueError, match="missing 'sw2'"):
        MonodromyAdapter().parse({"degree": 1, "s1": [0], "sw": [0]})
    with pytest.raises(ValueError, match="integer images"):
        MonodromyAdapter().parse({"degree": 1, "s1": [True], "sw": [0], "sw2": [0]})


def test_factory_auto_detection():
    """Test that the factory detects each format by fingerprint."""
    factory = AdapterFactory()

    assert factory.get_adapter(_load("schottky_genus2.json")).format_id == "schottky_config"
    assert factory.get_adapter(_load("annulus_ring.json")).format_id == "annulus_descriptor"
    assert factory.get_adapter(_load("monodromy_trivial.json")).format_id == "monodromy"


def test_explicit_format():
    """Test that the explicit format field wins over fingerprinting."""
    factory = AdapterFactory()

    data = {"format": "monodromy", "pairings": []}
    assert factory.get_adapter(data).format_id == "monodromy"

    with pytest.raises(ValueError, match="Unknown format"):
        factory.get_adapter({"format": "nope"})
    with pytest.raises(ValueError, match="Unable to detect"):
        factory.get_adapter({"something": 1})
    with pytest.raises(ValueError, match="JSON object"):
        factory.get_adapter([1, 2])


def test_register_adapter():
    """Test that a registered adapter is reachable through the explicit format field."""
    class TrivialTripleAdapter(MonodromyAdapter):
        @property
        def format_id(self) -> str:
            return "trivial"

    factory = AdapterFactory()
    factory.register_adapter(TrivialTripleAdapter())

    adapter = factory.get_adapter({"format": "trivial"})
    assert adapter.format_id == "trivial"
    assert adapter.parse(_load("monodromy_trivial.json")).degree == 1


def test_codec():
    """Test the shared complex, point and circle encodings."""
    assert decode_complex([1, 2]) == 1 + 2j
    assert decode_complex(3) == 3
    assert decode_point("inf") is INFINITY
    assert encode_point(INFINITY) == "inf"

    with pytest.raises(ValueError):
        decode_complex(True)
    with pytest.raises(ValueError):
        decode_complex([1, 2, 3])

    circle = decode_circle({"center": [1, -1], "radius": 2})
    assert encode_circle(circle)["radius"] == pytest.approx(2)
    assert decode_circle({"line": {"p": 0, "q": [0, 1], "s": 0}}).is_line

    with pytest.raises(ValueError, match="center and radius"):
        decode_circle({"center": [0, 0]})


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
