import dataclasses
import hashlib
import json
import shutil

import pytest

from anosurf.catalog import (
    Catalog,
    candidates_for,
    check_catalog,
    complement_components,
    load_catalog,
    slope_law_check,
)
from anosurf.errors import CatalogIntegrityError, CatalogKeyError
from anosurf.slopes import Slope, parse_slope
from conftest import DATA_DIR

ALL_IDS = {
    "B1", "B2", "B3", "B4", "B5",
    "B6", "B6_I_g", "B6_I_h", "B6_II_gh",
    "B7", "B7_I_f", "B7_I_g", "B7_I_h",
    "B7_II_fg", "B7_II_gh", "B7_star",
    "B7_ss_fg_f", "B7_ss_fg_g", "B7_ss_fg_h",
    "B7_ss_gh_f", "B7_ss_gh_g", "B7_ss_gh_h",
    "B8", "B8_II_fg", "B8_II_fh", "B8_III",
    "B9", "B9_II_hi", "B9_M",
    "B10", "B11",
    "R7", "R7_I_f", "R7_I_g", "R7_I_h",
    "R7_II_fg", "R7_II_gh", "R7_II_hf",
}
FAMILY_COUNTS = {"Q1": 1, "Q2": 1, "Q3": 1, "Q4": 1, "Q5": 1,
                 "Q6": 4, "Q7": 20, "Q8": 4, "Q9": 3, "Q10": 1, "Q11": 1}


def _sha(path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _restamp_manifest(root) -> None:
    manifest_path = root / "catalog" / "manifest.json"
    manifest = json.loads(manifest_path.read_text())
    for rel in manifest["files"]:
        manifest["files"][rel] = _sha(root / rel)
    manifest_path.write_text(json.dumps(manifest))


@pytest.fixture
def data_copy(tmp_path):
    root = tmp_path / "data"
    shutil.copytree(DATA_DIR, root)
    return root


class TestLoading:
    def test_counts(self, catalog):
        assert len(catalog) == 38
        assert set(catalog.entries) == ALL_IDS
        assert catalog.family_counts() == FAMILY_COUNTS

    def test_get_and_iteration(self, catalog):
        assert catalog.get("B6").family == "Q6"
        assert sum(1 for _ in catalog) == 38
        with pytest.raises(CatalogKeyError):
            catalog.get("B99")

    def test_by_family(self, catalog):
        q9 = catalog.by_family("Q9")
        assert sorted(e.id for e in q9) == ["B9", "B9_II_hi", "B9_M"]
        with pytest.raises(CatalogKeyError):
            catalog.by_family("Q99")

    def test_override_directory(self, data_copy):
        assert len(load_catalog(path=str(data_copy))) == 38

    def test_corrupted_file_detected(self, data_copy):
        entry_path = data_copy / "catalog" / "entries" / "B1.json"
        doc = json.loads(entry_path.read_text())
        doc["summary"] = "tampered"
        entry_path.write_text(json.dumps(doc))
        with pytest.raises(CatalogIntegrityError):
            load_catalog(path=str(data_copy))
        # without verification the tampered copy still parses
        cat = load_catalog(path=str(data_copy), verify=False)
        assert len(cat) == 38

    def test_wrong_entry_count_detected(self, data_copy):
        manifest_path = data_copy / "catalog" / "manifest.json"
        manifest = json.loads(manifest_path.read_text())
        manifest["entry_count"] = 40
        manifest_path.write_text(json.dumps(manifest))
        with pytest.raises(CatalogIntegrityError):
            load_catalog(path=str(data_copy))

    def test_duplicate_entry_detected(self, data_copy):
        entries_dir = data_copy / "catalog" / "entries"
        # two files now carry the same entry id
        (entries_dir / "B2.json").write_text(
            (entries_dir / "B1.json").read_text())
        _restamp_manifest(data_copy)
        with pytest.raises(CatalogIntegrityError):
            load_catalog(path=str(data_copy))

    def test_unknown_family_detected(self, data_copy):
        entry_path = data_copy / "catalog" / "entries" / "B1.json"
        doc = json.loads(entry_path.read_text())
        doc["family"] = "Q99"
        entry_path.write_text(json.dumps(doc))
        _restamp_manifest(data_copy)
        with pytest.raises(CatalogIntegrityError):
            load_catalog(path=str(data_copy))


class TestCandidates:
    def test_generic_noninteger_slope(self, catalog):
        cands = candidates_for(catalog, parse_slope("7/2"))
        assert len(cands) == 33
        ids = {e.id for e in cands}
        # B5 needs two crossings with slope 4, but 7/2 gives only one
        assert "B5" not in ids and "B10" not in ids and "B11" not in ids
        assert "B4" in ids

    def test_slope_zero(self, catalog):
        cands = candidates_for(catalog, Slope(0, 1))
        assert len(cands) == 11
        ids = {e.id for e in cands}
        assert {"B1", "B5", "B10", "B11"} <= ids
        assert "B3" not in ids and "B4" not in ids

    def test_small_noninteger_slope(self, catalog):
        assert len(candidates_for(catalog, parse_slope("1/2"))) == 35


class TestComplements:
    def test_annulus_pieces_pick_up_the_filling_power(self, catalog):
        b6 = catalog.get("B6")
        comps = complement_components(b6, parse_slope("7/2"))
        assert [c.core_power for c in comps] == [2]
        comps = complement_components(b6, parse_slope("5/3"))
        assert [c.core_power for c in comps] == [3]

    def test_non_annulus_entries_do_not(self, catalog):
        b5 = catalog.get("B5")
        comps = complement_components(b5, parse_slope("1/2"))
        assert [c.core_power for c in comps] == [None]
        assert comps[0].exceptional is True

    def test_requires_admissible_slope(self, catalog):
        with pytest.raises(ValueError):
            complement_components(catalog.get("B1"), Slope(1, 1))

    def test_split_entries_have_two_annuli(self, catalog):
        entry = catalog.get("B7_II_fg")
        assert entry.exclusion_class == "SplitTypeII"
        comps = complement_components(entry, parse_slope("1/2"))
        assert len(comps) == 1
        assert comps[0].vertical_annuli == 2
        assert comps[0].annulus_wrap == (2, 2)


class TestLawCheck:
    def test_known_family(self, catalog):
        report = slope_law_check(catalog, "Q3", bound=6)
        assert report.ok
        assert report.realized == {Slope(4, 1)}

    def test_unknown_family(self, catalog):
        with pytest.raises(CatalogKeyError):
            slope_law_check(catalog, "Q99")


class TestHealthCheck:
    def test_shipped_catalog_is_healthy(self, catalog):
        report = check_catalog(catalog)
        assert report.problems == []
        assert report.entry_count == 38
        assert report.stated_total == 39
        assert len(report.warnings) == 1
        assert "39" in report.warnings[0]
        assert "known, documented" in report.warnings[0]

    def test_orientable_flag_must_match_graph(self, catalog):
        bad = dataclasses.replace(catalog.get("B6"), orientable=False)
        entries = dict(catalog.entries)
        entries["B6"] = bad
        report = check_catalog(Catalog(entries=entries, manifest=catalog.manifest))
        assert any("B6" in p and "orientable" in p for p in report.problems)
        assert not report.ok

    def test_uncertified_flag_is_a_problem(self, catalog):
        bad = dataclasses.replace(catalog.get("B6"), orientation_graph=None)
        entries = dict(catalog.entries)
        entries["B6"] = bad
        report = check_catalog(Catalog(entries=entries, manifest=catalog.manifest))
        assert any("B6" in p and "sector graph" in p for p in report.problems)

    def test_family_count_drift_is_a_problem(self, catalog):
        entries = dict(catalog.entries)
        del entries["B7_star"]
        report = check_catalog(Catalog(entries=entries, manifest=catalog.manifest))
        assert any("family counts" in p for p in report.problems)

    def test_sink_disk_is_a_problem(self, catalog):
        entry = catalog.get("B1")
        sectors = tuple(entry.disk_sectors) + (
            {"id": "Dsink", "boundary": [{"curve": "c", "direction": "in"}]},)
        bad = dataclasses.replace(entry, disk_sectors=sectors)
        entries = dict(catalog.entries)
        entries["B1"] = bad
        report = check_catalog(Catalog(entries=entries, manifest=catalog.manifest))
        assert any("Dsink" in p for p in report.problems)
