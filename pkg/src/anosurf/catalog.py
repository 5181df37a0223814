"""The branched surface catalog.

Entries live in packaged JSON, guarded by a manifest of SHA-256
checksums. Loading verifies the checksums, so a corrupted data file is
caught before any classification runs. A directory named by the
ANOSURF_CATALOG environment variable (or passed explicitly) shadows
packaged files one by one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from . import _resources
from .branched_surface import (
    ComplementComponent,
    detect_sink_disks,
    euler_characteristic,
    is_transversely_orientable,
)
from .errors import CatalogIntegrityError, CatalogKeyError
from .slopes import AdmissibleSet, Slope, eval_admissible
from .spine import load_track_bundle
from .traintrack import LawReport, check_law

FAMILIES = ("Q1", "Q2", "Q3", "Q4", "Q5", "Q6", "Q7", "Q8", "Q9", "Q10", "Q11")

EXCLUSION_CLASSES = (
    "DiskLeaf",       # some leaf is a disk or the surface is too small
    "TypeI",          # vacant annulus next to the filled torus
    "BasicTypeII",    # annulus sector with both boundaries on the filling torus
    "SplitTypeII",    # same, after splitting the sector in two
    "R7Cusps",        # solid torus complement with three vertical cusps
)


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    family: str
    summary: str
    admissible: AdmissibleSet
    exclusion_class: str
    orientable: Optional[bool] = None
    orientation_graph: Optional[dict] = None
    disk_sectors: Tuple[dict, ...] = ()
    complement: Tuple[dict, ...] = ()
    euler: Optional[dict] = None
    sector_pairs: Tuple[Tuple[str, str], ...] = ()
    vacant_annulus: Optional[str] = None
    split_curves: Tuple[str, ...] = ()
    notes: Dict[str, str] = field(default_factory=dict)

    @staticmethod
    def from_json(doc: dict) -> "CatalogEntry":
        return CatalogEntry(
            id=doc["id"],
            family=doc["family"],
            summary=doc["summary"],
            admissible=AdmissibleSet.from_json(doc["admissible"]),
            exclusion_class=doc["exclusion_class"],
            orientable=doc.get("orientable"),
            orientation_graph=doc.get("orientation_graph"),
            disk_sectors=tuple(doc.get("disk_sectors", ())),
            complement=tuple(doc.get("complement", ())),
            euler=doc.get("euler"),
            sector_pairs=tuple(
                (a, b) for a, b in doc.get("sector_pairs", ())),
            vacant_annulus=doc.get("vacant_annulus"),
            split_curves=tuple(doc.get("split_curves", ())),
            notes=dict(doc.get("notes", {})),
        )


@dataclass
class Catalog:
    entries: Dict[str, CatalogEntry]
    manifest: dict

    def get(self, entry_id: str) -> CatalogEntry:
        try:
            return self.entries[entry_id]
        except KeyError:
            raise CatalogKeyError(entry_id) from None

    def __iter__(self):
        return iter(self.entries.values())

    def __len__(self) -> int:
        return len(self.entries)

    def by_family(self, family: str) -> List[CatalogEntry]:
        if family not in FAMILIES:
            raise CatalogKeyError(family)
        return [e for e in self.entries.values() if e.family == family]

    def family_counts(self) -> Dict[str, int]:
        counts = {f: 0 for f in FAMILIES}
        for entry in self.entries.values():
            counts[entry.family] += 1
        return counts


def load_catalog(path: Optional[str] = None, verify: bool = True) -> Catalog:
    """Load and checksum the packaged catalog.

    `path` overrides the ANOSURF_CATALOG environment variable; either
    names a directory whose files shadow the packaged data file by
    file. The manifest (wherever it resolves from) names one file per
    entry and must match every data file it lists.
    """
    manifest = _resources.load_json("catalog/manifest.json", override=path)
    if verify:
        for relpath, want in sorted(manifest.get("files", {}).items()):
            have = _resources.sha256_of(relpath, override=path)
            if have != want:
                raise CatalogIntegrityError(
                    relpath, f"checksum {have[:12]}... does not match the manifest")
    entry_files = manifest.get("entry_files", [])
    if not entry_files:
        raise CatalogIntegrityError("catalog/manifest.json",
                                    "manifest names no entry files")
    entries: Dict[str, CatalogEntry] = {}
    for relpath in entry_files:
        entry = CatalogEntry.from_json(_resources.load_json(relpath, override=path))
        if entry.id in entries:
            raise CatalogIntegrityError(relpath,
                                        f"duplicate entry id {entry.id!r}")
        if entry.family not in FAMILIES:
            raise CatalogIntegrityError(relpath,
                                        f"entry {entry.id} has unknown family {entry.family!r}")
        if entry.exclusion_class not in EXCLUSION_CLASSES:
            raise CatalogIntegrityError(
                relpath,
                f"entry {entry.id} has unknown exclusion class {entry.exclusion_class!r}")
        entries[entry.id] = entry
    catalog = Catalog(entries=entries, manifest=manifest)
    if verify and len(entries) != manifest.get("entry_count"):
        raise CatalogIntegrityError(
            "catalog/manifest.json",
            f"{len(entries)} entries but the manifest promises {manifest.get('entry_count')}")
    return catalog


def candidates_for(catalog: Catalog, slope: Slope) -> List[CatalogEntry]:
    """Entries whose admissible slope set contains the given slope."""
    return [e for e in catalog if eval_admissible(e.admissible, slope)]


def complement_components(entry: CatalogEntry, slope: Slope) -> List[ComplementComponent]:
    """Instantiate the complement records of an entry at a slope.

    Records are static except that annulus sector pieces pick up the
    core power of the filling (its denominator). The slope must be
    admissible for the entry.
    """
    if not eval_admissible(entry.admissible, slope):
        raise ValueError(f"slope {slope} is not admissible for {entry.id}")
    fill = slope.p if not slope.is_infinity else None
    out = []
    for doc in entry.complement:
        power = fill if entry.exclusion_class == "BasicTypeII" else None
        out.append(ComplementComponent.from_json(doc, core_power=power))
    return out


def slope_law_check(catalog: Catalog, family: str, bound: int = 6) -> LawReport:
    """Check the boundary slope law of a family's double cover track."""
    if family not in FAMILIES:
        raise CatalogKeyError(family)
    bundle = load_track_bundle(family)
    return check_law(bundle.track, bundle.law, bundle.designated,
                     bound=bound, family=family)


@dataclass
class CatalogReport:
    entry_count: int
    family_counts: Dict[str, int]
    stated_total: Optional[int]
    warnings: List[str]
    problems: List[str]

    @property
    def ok(self) -> bool:
        return not self.problems


def check_catalog(catalog: Catalog) -> CatalogReport:
    """Structural health check of every entry.

    Verifies sink disk emptiness, nonempty admissible sets, orientation
    certificates, Euler characteristic records, and the per family
    counts against the manifest. A mismatch between the shipped entry
    count and the total stated by the underlying tabulation is reported
    as a warning, not a failure; the discrepancy is known and
    documented.
    """
    warnings: List[str] = []
    problems: List[str] = []

    counts = catalog.family_counts()
    manifest_counts = catalog.manifest.get("families", {})
    if manifest_counts and manifest_counts != counts:
        problems.append(
            f"family counts {counts} disagree with the manifest {manifest_counts}")

    stated = catalog.manifest.get("stated_total_in_source")
    if stated is not None and stated != len(catalog):
        warnings.append(
            f"catalog ships {len(catalog)} entries while the underlying tabulation "
            f"states {stated}; this off-by-one is a known, documented discrepancy "
            f"between the two lists")

    for entry in catalog:
        # no entry may contain a sink disk
        try:
            sinks = detect_sink_disks(entry.disk_sectors)
        except ValueError as exc:
            problems.append(f"{entry.id}: bad disk sector data ({exc})")
            continue
        if sinks:
            problems.append(f"{entry.id}: sink disks {sinks}")

        # the admissible set must not be vacuous
        if entry.admissible.kind == "Only" and entry.admissible.slope is None:
            problems.append(f"{entry.id}: admissible set names no slope")
        if entry.admissible.kind in ("IntersectionWithAtLeast",
                                     "IntersectionWithMoreThan"):
            if entry.admissible.slope is None or entry.admissible.count is None:
                problems.append(f"{entry.id}: intersection condition incomplete")

        # orientability flags must be certified
        if entry.orientable is not None:
            if entry.orientation_graph is None:
                problems.append(f"{entry.id}: orientable flag without a sector graph")
            else:
                res = is_transversely_orientable(entry.orientation_graph)
                if res.orientable != entry.orientable:
                    problems.append(
                        f"{entry.id}: sector graph says orientable={res.orientable}, "
                        f"entry says {entry.orientable}")

        # stored CW structures must be consistent and agree
        if entry.euler is not None:
            try:
                chi_b = euler_characteristic(entry.euler["surface_cw"])
                chi_w = euler_characteristic(entry.euler["complement_cw"])
            except (KeyError, ValueError) as exc:
                problems.append(f"{entry.id}: bad CW data ({exc})")
            else:
                if chi_b != chi_w:
                    problems.append(
                        f"{entry.id}: surface Euler characteristic {chi_b} "
                        f"differs from complement {chi_w}")

        if entry.exclusion_class == "TypeI" and not entry.vacant_annulus:
            problems.append(f"{entry.id}: type I entry without a vacant annulus")
        if entry.exclusion_class == "SplitTypeII" and len(entry.split_curves) != 2:
            problems.append(f"{entry.id}: split entry must name two split curves")

    return CatalogReport(
        entry_count=len(catalog),
        family_counts=counts,
        stated_total=stated,
        warnings=warnings,
        problems=problems,
    )
