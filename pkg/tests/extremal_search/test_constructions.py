"""
Unit tests for the named constructions.
"""

from src.extremal_search.constructions import known_constructions


def test_known_constructions_verified():
    """Test every construction avoids squares."""
    entries = {c.name: c for c in known_constructions()}
    assert set(entries) == {"mod3_singleton", "sumset_mod32", "mod8_pair"}
    assert all(c.verified for c in entries.values())


def test_mod32_sumset_density():
    """Test the mod-32 set has 11 elements and is used on both sides."""
    mod32 = next(c for c in known_constructions() if c.name == "sumset_mod32")
    assert len(mod32.A) == 11
    assert mod32.A == mod32.B
    assert mod32.to_dict()["density"] == 11 / 32


def test_mod8_pair_elements():
    """Test the mod-8 pair."""
    pair = next(c for c in known_constructions() if c.name == "mod8_pair")
    assert pair.A.elements() == [0, 1, 5]
    assert pair.B.elements() == [2, 5, 6]
