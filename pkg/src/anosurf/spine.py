"""The standard two-hexagon spine and its weighted curve systems.

The spine sigma has two hexagonal faces, four edges a, b, c, d and two
vertices. Each edge appears three times among the twelve hexagon sides.
An essential curve system in good position meets sigma in arcs that
join two sides of one hexagon: a short connector cuts one corner, a
medium connector skips one side, a long connector joins opposite sides.
A Q-complex assigns a nonnegative multiplicity to each connector so
that all three sides of each edge receive the same number of endpoints;
that common number is the edge weight w_e.

The case split on zero patterns of (w_a, w_b, w_c, w_d) is taken up to
the spine's symmetries, which ship as explicit side permutations and
are validated against the incidence data.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Tuple

from . import _resources
from .errors import SpineCaseError, UnsupportedComplexError
from .traintrack import SlopeLaw, TrainTrack

EDGES = ("a", "b", "c", "d")


class SpineCase(Enum):
    CD_ZERO = "CD_ZERO"
    AC_ZERO = "AC_ZERO"
    C_ZERO = "C_ZERO"
    ALL_POSITIVE = "ALL_POSITIVE"


@dataclass(frozen=True)
class Connector:
    id: str
    hexagon: str            # "X" or "Y"
    positions: Tuple[int, int]
    kind: str               # "short" | "medium" | "long"

    def sides(self, spine: "Spine") -> Tuple[str, str]:
        word = spine.hexagons[self.hexagon]
        return (word[self.positions[0]], word[self.positions[1]])


@dataclass(frozen=True)
class Symmetry:
    """An automorphism of the spine, stored as a side permutation with
    its induced edge permutation and vertex map."""

    name: str
    side_map: Mapping[str, str]
    edge_map: Mapping[str, str]
    vertex_map: Mapping[str, str]


class Spine:
    def __init__(self, doc: dict):
        self.hexagons: Dict[str, List[str]] = {
            h: list(doc["hexagons"][h]["sides"]) for h in ("X", "Y")}
        self.edge_of: Dict[str, str] = {}
        for h in ("X", "Y"):
            for side, edge in doc["hexagons"][h]["edges"].items():
                self.edge_of[side] = edge
        self.corner_vertices: Dict[str, List[str]] = {
            h: list(doc["corner_vertices"][h]) for h in ("X", "Y")}
        self.connectors: Dict[str, Connector] = {}
        for c in doc["connectors"]:
            conn = Connector(id=c["id"], hexagon=c["hexagon"],
                             positions=(c["positions"][0], c["positions"][1]),
                             kind=c["kind"])
            self.connectors[conn.id] = conn
        self.symmetries: List[Symmetry] = [
            Symmetry(name=s["name"], side_map=dict(s["side_map"]),
                     edge_map=dict(s["edge_map"]), vertex_map=dict(s["vertex_map"]))
            for s in doc["symmetries"]]
        self._validate()

    # -- structure ---------------------------------------------------------

    def _validate(self) -> None:
        sides = [s for h in ("X", "Y") for s in self.hexagons[h]]
        if len(set(sides)) != 12:
            raise ValueError("spine data must name twelve distinct sides")
        for edge in EDGES:
            hits = [s for s in sides if self.edge_of[s] == edge]
            if len(hits) != 3:
                raise ValueError(f"edge {edge} must appear on exactly three sides")
        for h in ("X", "Y"):
            if len(self.corner_vertices[h]) != 6:
                raise ValueError("each hexagon has six corners")
        kinds = {1: "short", 2: "medium", 3: "long"}
        for conn in self.connectors.values():
            i, j = conn.positions
            gap = min((i - j) % 6, (j - i) % 6)
            if kinds[gap] != conn.kind:
                raise ValueError(f"connector {conn.id} kind disagrees with its positions")
            s1, s2 = conn.sides(self)
            if s1 == s2:
                raise ValueError(f"connector {conn.id} has two ends in one side")
        for sym in self.symmetries:
            self._validate_symmetry(sym)

    def _validate_symmetry(self, sym: Symmetry) -> None:
        sides = set(self.edge_of)
        if set(sym.side_map) != sides or set(sym.side_map.values()) != sides:
            raise ValueError(f"symmetry {sym.name}: side map is not a permutation")
        if set(sym.vertex_map) != {"P1", "P2"}:
            raise ValueError(f"symmetry {sym.name}: vertex map must cover both vertices")
        for side, image in sym.side_map.items():
            if sym.edge_map[self.edge_of[side]] != self.edge_of[image]:
                raise ValueError(
                    f"symmetry {sym.name}: edge map disagrees at side {side}")
        # cyclic adjacency of sides must be preserved, along with the
        # vertex colors of the corners between them
        position: Dict[str, Tuple[str, int]] = {}
        for h in ("X", "Y"):
            for i, side in enumerate(self.hexagons[h]):
                position[side] = (h, i)
        for h in ("X", "Y"):
            word = self.hexagons[h]
            for i in range(6):
                s_here, s_next = word[i], word[(i + 1) % 6]
                h1, i1 = position[sym.side_map[s_here]]
                h2, i2 = position[sym.side_map[s_next]]
                if h1 != h2:
                    raise ValueError(
                        f"symmetry {sym.name}: hexagon torn between {s_here} and {s_next}")
                forward = (i2 - i1) % 6 == 1
                backward = (i1 - i2) % 6 == 1
                if not (forward or backward):
                    raise ValueError(
                        f"symmetry {sym.name}: adjacency broken at {s_here}|{s_next}")
                corner_here = self.corner_vertices[h][i]
                corner_image = self.corner_vertices[h1][i1 if forward else i2]
                if sym.vertex_map[corner_here] != corner_image:
                    raise ValueError(
                        f"symmetry {sym.name}: vertex map broken at corner {h}{i}")

    # -- complexes ---------------------------------------------------------

    def validate_complex(self, q: Mapping[str, int]) -> None:
        if not q:
            raise ValueError("a Q-complex must contain at least one connector")
        for cid, mult in q.items():
            if cid not in self.connectors:
                raise ValueError(f"unknown connector {cid!r}")
            if not isinstance(mult, int) or mult < 1:
                raise ValueError(f"connector {cid!r} needs a positive integer multiplicity")
        counts = self.side_end_counts(q)
        for edge in EDGES:
            hits = {counts[s] for s in counts if self.edge_of[s] == edge}
            if len(hits) != 1:
                raise ValueError(
                    f"sides of edge {edge} receive unequal endpoint counts: {sorted(hits)}")

    def side_end_counts(self, q: Mapping[str, int]) -> Dict[str, int]:
        counts = {s: 0 for s in self.edge_of}
        for cid, mult in q.items():
            s1, s2 = self.connectors[cid].sides(self)
            counts[s1] += mult
            counts[s2] += mult
        return counts

    def edge_weights(self, q: Mapping[str, int]) -> Dict[str, int]:
        self.validate_complex(q)
        counts = self.side_end_counts(q)
        weights = {}
        for edge in EDGES:
            weights[edge] = next(counts[s] for s in counts if self.edge_of[s] == edge)
        return weights


def case_of(spine: Spine, q: Mapping[str, int]) -> SpineCase:
    """Zero-pattern case of a Q-complex, up to spine symmetries.

    Cases are tried in the order CD, AC, C, all-positive, each against
    every symmetry image of the weight vector. Patterns that no image
    matches raise SpineCaseError.
    """
    w = spine.edge_weights(q)
    images = []
    for sym in spine.symmetries:
        images.append({e: w[sym.edge_map[e]] for e in EDGES})
    if any(v["c"] == 0 and v["d"] == 0 for v in images):
        return SpineCase.CD_ZERO
    if any(v["a"] == 0 and v["c"] == 0 for v in images):
        return SpineCase.AC_ZERO
    if any(v["c"] == 0 for v in images):
        return SpineCase.C_ZERO
    if all(w[e] > 0 for e in EDGES):
        return SpineCase.ALL_POSITIVE
    raise SpineCaseError(w, tuple(e for e in EDGES if w[e] == 0))


def _short_germ(spine: Spine, conn: Connector) -> Tuple[str, frozenset]:
    i, j = conn.positions
    corner = i if (j - i) % 6 == 1 else j
    vertex = spine.corner_vertices[conn.hexagon][corner]
    word = spine.hexagons[conn.hexagon]
    edges = frozenset((spine.edge_of[word[corner]],
                       spine.edge_of[word[(corner + 1) % 6]]))
    return vertex, edges


def adjacent_short_pairs(spine: Spine, q: Mapping[str, int]) -> List[Tuple[str, str]]:
    """Pairs of distinct short connectors in q that sit about the same
    vertex and meet along an edge there. Parallel copies of one short
    occupy one corner and never pair with themselves."""
    spine.validate_complex(q)
    shorts = [spine.connectors[cid] for cid in sorted(q)
              if spine.connectors[cid].kind == "short"]
    pairs = []
    for idx, c1 in enumerate(shorts):
        v1, g1 = _short_germ(spine, c1)
        for c2 in shorts[idx + 1:]:
            v2, g2 = _short_germ(spine, c2)
            if v1 == v2 and g1 & g2:
                pairs.append((c1.id, c2.id))
    return pairs


# ---------------------------------------------------------------------------
# Canonical complexes and their boundary tracks.


@dataclass(frozen=True)
class DoubleCover:
    family: str
    track: TrainTrack
    projection: Tuple[dict, ...]   # one record per connector copy


@dataclass(frozen=True)
class TrackBundle:
    """A family's boundary track with its slope law and annotations."""

    family: str
    track: TrainTrack
    law: SlopeLaw
    designated: Mapping[str, Tuple[str, ...]]
    noncompact: Tuple[str, ...]    # branches dead in every solution
    projection: Tuple[dict, ...]


@lru_cache(maxsize=None)
def load_spine() -> Spine:
    return Spine(_resources.load_json("spine.json"))


@lru_cache(maxsize=None)
def canonical_complexes() -> Dict[str, Dict[str, int]]:
    doc = _resources.load_json("qcomplexes.json")
    return {family: dict(body["connectors"]) for family, body in doc.items()}


@lru_cache(maxsize=None)
def load_track_bundle(family: str) -> TrackBundle:
    doc = _resources.load_json(f"tracks/{family}.json")
    return TrackBundle(
        family=doc["id"],
        track=TrainTrack.from_json(doc["track"], track_id=doc["id"]),
        law=SlopeLaw.from_json(doc["law"]),
        designated={k: tuple(v) for k, v in doc.get("designated", {}).items()},
        noncompact=tuple(doc.get("noncompact", ())),
        projection=tuple(doc.get("projection", ())),
    )


def boundary_double_cover(spine: Spine, q: Mapping[str, int]) -> DoubleCover:
    """The boundary train track of the orientation double cover of the
    ambient surface along q, for the eleven cataloged complexes.

    Each connector lifts to two arcs; the projection table records the
    pair for every connector copy. Complexes outside the cataloged
    eleven have no shipped layout and are rejected.
    """
    spine.validate_complex(q)
    plain = {k: int(v) for k, v in q.items()}
    for family, canonical in canonical_complexes().items():
        if plain == canonical:
            bundle = load_track_bundle(family)
            return DoubleCover(family=family, track=bundle.track,
                               projection=bundle.projection)
    raise UnsupportedComplexError(
        "no shipped double-cover layout matches this complex; "
        "only the eleven cataloged families are supported")
