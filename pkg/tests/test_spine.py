import copy

import pytest

from anosurf.errors import SpineCaseError, UnsupportedComplexError
from anosurf.spine import (
    SpineCase,
    Spine,
    adjacent_short_pairs,
    boundary_double_cover,
    canonical_complexes,
    case_of,
    load_spine,
    load_track_bundle,
)
from anosurf.traintrack import dead_branches
from conftest import load_data_json

EXPECTED_CASES = {
    "Q1": SpineCase.CD_ZERO, "Q2": SpineCase.CD_ZERO, "Q3": SpineCase.CD_ZERO,
    "Q4": SpineCase.CD_ZERO, "Q5": SpineCase.CD_ZERO,
    "Q6": SpineCase.AC_ZERO, "Q7": SpineCase.AC_ZERO,
    "Q8": SpineCase.C_ZERO, "Q9": SpineCase.C_ZERO,
    "Q10": SpineCase.C_ZERO, "Q11": SpineCase.C_ZERO,
}

# balanced, uses every edge, and puts three shorts around P1 corners
ALL_POSITIVE_COMPLEX = {"s1": 1, "s3": 1, "s5": 1, "t4": 1, "mc2": 1, "md3": 1}


class TestStructure:
    def test_loads_and_validates(self, spine):
        assert len(spine.connectors) == 30
        assert len(spine.symmetries) == 8
        assert any(s.name == "identity" for s in spine.symmetries)

    def test_symmetry_group_edge_action(self, spine):
        actions = {tuple(sorted(s.edge_map.items())) for s in spine.symmetries}
        # the edge action is a cyclic group of order four
        assert len(actions) == 4
        identity = tuple(sorted({"a": "a", "b": "b", "c": "c", "d": "d"}.items()))
        four_cycle = tuple(sorted({"a": "c", "c": "b", "b": "d", "d": "a"}.items()))
        assert identity in actions and four_cycle in actions

    def test_broken_edge_assignment_rejected(self, spine):
        doc = load_data_json("spine.json")
        bad = copy.deepcopy(doc)
        first = bad["hexagons"]["X"]["sides"][0]
        bad["hexagons"]["X"]["edges"][first] = "c"
        with pytest.raises(ValueError):
            Spine(bad)

    def test_broken_symmetry_rejected(self):
        doc = copy.deepcopy(load_data_json("spine.json"))
        sym = next(s for s in doc["symmetries"] if s["name"] != "identity")
        sym["vertex_map"] = {"P1": "P1", "P2": "P1"}
        with pytest.raises(ValueError):
            Spine(doc)

    def test_connector_kind_must_match_gap(self):
        doc = copy.deepcopy(load_data_json("spine.json"))
        row = next(c for c in doc["connectors"] if c["kind"] == "short")
        row["kind"] = "long"
        with pytest.raises(ValueError):
            Spine(doc)


class TestComplexes:
    def test_canonical_families_validate(self, spine):
        complexes = canonical_complexes()
        assert set(complexes) == set(EXPECTED_CASES)
        for family, q in complexes.items():
            spine.validate_complex(q)

    def test_unknown_connector(self, spine):
        with pytest.raises(ValueError):
            spine.validate_complex({"nope": 1})

    def test_bad_multiplicity(self, spine):
        with pytest.raises(ValueError):
            spine.validate_complex({"s1": 0})
        with pytest.raises(ValueError):
            spine.validate_complex({})

    def test_unbalanced_rejected(self, spine):
        # one short alone loads two sides of two edges and nothing else
        with pytest.raises(ValueError):
            spine.validate_complex({"s1": 1})

    def test_edge_weights(self, spine):
        q = canonical_complexes()["Q6"]
        assert spine.edge_weights(q) == {"a": 0, "b": 2, "c": 0, "d": 2}
        total = sum(q.values())
        weights = spine.edge_weights(q)
        assert 2 * total == 3 * sum(weights.values())


class TestCaseSplit:
    def test_canonical_cases(self, spine):
        for family, q in canonical_complexes().items():
            assert case_of(spine, q) == EXPECTED_CASES[family], family

    def test_all_positive(self, spine):
        assert case_of(spine, ALL_POSITIVE_COMPLEX) == SpineCase.ALL_POSITIVE

    def test_symmetry_images_share_the_case(self, spine):
        """Mapping a complex through any spine symmetry lands on another
        valid complex in the same case; this drives zero patterns through
        every position the group can reach."""
        by_sides = {}
        for conn in spine.connectors.values():
            by_sides[frozenset(conn.sides(spine))] = conn.id
        seen_weight_zero_sets = set()
        for family, q in canonical_complexes().items():
            base_case = case_of(spine, q)
            for sym in spine.symmetries:
                image = {}
                for cid, mult in q.items():
                    s1, s2 = spine.connectors[cid].sides(spine)
                    target = frozenset((sym.side_map[s1], sym.side_map[s2]))
                    image[by_sides[target]] = mult
                spine.validate_complex(image)
                assert case_of(spine, image) == base_case, (family, sym.name)
                w = spine.edge_weights(image)
                seen_weight_zero_sets.add(
                    frozenset(e for e, v in w.items() if v == 0))
        # the orbit really visits ac-type patterns in other positions
        assert frozenset({"b", "c"}) in seen_weight_zero_sets
        assert frozenset({"b", "d"}) in seen_weight_zero_sets

    def test_case_split_total_on_combinations(self, spine):
        """Sums of canonical complexes stay balanced; none of them may
        fall through the case split."""
        complexes = list(canonical_complexes().values())
        combos = [
            {**complexes[0]},
            {"s1": 3, "s4": 3, "ly3": 3},
        ]
        q6 = canonical_complexes()["Q6"]
        flipped = {}
        sym = next(s for s in spine.symmetries if s.name == "keep_r3_r3")
        by_sides = {frozenset(c.sides(spine)): c.id
                    for c in spine.connectors.values()}
        for cid, mult in q6.items():
            s1, s2 = spine.connectors[cid].sides(spine)
            flipped[by_sides[frozenset((sym.side_map[s1], sym.side_map[s2]))]] = mult
        merged = dict(q6)
        for cid, mult in flipped.items():
            merged[cid] = merged.get(cid, 0) + mult
        combos.append(merged)   # weights (2,2,2,2): every edge positive
        for q in combos:
            assert case_of(spine, q) in set(SpineCase)

    def test_case_error_is_defensive(self):
        err = SpineCaseError({"a": 1, "b": 0, "c": 0, "d": 0}, ("b", "c", "d"))
        assert err.zero_edges == ("b", "c", "d")


class TestShortAdjacency:
    def test_canonical_families_have_none(self, spine):
        for family, q in canonical_complexes().items():
            assert adjacent_short_pairs(spine, q) == [], family

    def test_detects_adjacent_pairs(self, spine):
        pairs = adjacent_short_pairs(spine, ALL_POSITIVE_COMPLEX)
        assert pairs == [("s1", "s3"), ("s1", "s5")]

    def test_shorts_pair_across_hexagons(self, spine):
        # t3 cuts a corner of the other hexagon at the same vertex, so it
        # meets every short sitting around that vertex
        q = {"s1": 1, "s3": 1, "s5": 1, "t3": 1, "md3": 1, "ma3": 1}
        pairs = adjacent_short_pairs(spine, q)
        assert ("s1", "t3") in pairs and ("s5", "t3") in pairs
        assert len(pairs) == 5

    def test_parallel_copies_do_not_pair(self, spine):
        q2 = canonical_complexes()["Q2"]
        assert q2["s1"] == 2
        assert adjacent_short_pairs(spine, q2) == []


class TestDoubleCovers:
    def test_every_family_resolves(self, spine):
        for family, q in canonical_complexes().items():
            cover = boundary_double_cover(spine, q)
            assert cover.family == family
            assert len(cover.track.branches) == 2 * sum(q.values())

    def test_projection_partitions_branches(self, spine):
        for family, q in canonical_complexes().items():
            bundle = load_track_bundle(family)
            used = [b for rec in bundle.projection for b in rec["arcs"]]
            assert sorted(used) == sorted(bundle.track.branches)
            copies = {}
            for rec in bundle.projection:
                copies[rec["connector"]] = max(
                    copies.get(rec["connector"], 0), rec["copy"])
            assert copies == dict(q)

    def test_noncompact_annotation_is_exact(self):
        for family in canonical_complexes():
            bundle = load_track_bundle(family)
            assert set(bundle.noncompact) == dead_branches(bundle.track, 5), family

    def test_unknown_complex_rejected(self, spine):
        with pytest.raises(UnsupportedComplexError):
            boundary_double_cover(spine, ALL_POSITIVE_COMPLEX)

    def test_load_spine_is_cached(self):
        assert load_spine() is load_spine()
