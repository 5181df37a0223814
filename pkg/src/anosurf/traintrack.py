"""Measured train tracks on the boundary torus.

A track is a finite set of branches joined at switches. Every switch has
a one-fold side and a two-fold side; a nonnegative integer weight vector
is a solution when, at each switch, the weight entering the one-fold
side equals the total weight entering the two-fold side. Each branch
carries a homology class on the torus, written (p, q) for p times the
longitude plus q times the meridian, and a solution realizes the class
given by the weighted sum of its branches. The boundary slope of a
nonzero realized class (p, q) is q/p, with q/0 read as the meridian.

Branches may close up without meeting any switch (loop branches); their
weight is unconstrained. Weight enumeration is exact and bounded: all
solutions with every weight at most the bound, in lexicographic order
of the weight tuple over branch ids sorted alphabetically.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import MonogonError, SlopeLawError, SwitchSystemError
from .slopes import Slope, parse_slope

End = Tuple[str, str]  # (branch id, "head" | "tail")

_END_NAMES = ("head", "tail")


@dataclass(frozen=True)
class Branch:
    id: str
    klass: Tuple[int, int] = (0, 0)
    loop: bool = False

    def to_json(self) -> dict:
        return {"id": self.id, "class": list(self.klass), "loop": self.loop}

    @staticmethod
    def from_json(doc: dict) -> "Branch":
        klass = tuple(doc.get("class", (0, 0)))
        return Branch(id=doc["id"], klass=(int(klass[0]), int(klass[1])),
                      loop=bool(doc.get("loop", False)))


@dataclass(frozen=True)
class Switch:
    """one_fold holds exactly one end; two_fold holds one or two.

    A two_fold side with a single end is a degenerate joint equating two
    branch weights. It shows up where two lifted arcs meet over a plain
    crossing point rather than over a genuine branching.
    """

    id: str
    one_fold: Tuple[End, ...]
    two_fold: Tuple[End, ...]

    def ends(self) -> Tuple[End, ...]:
        return self.one_fold + self.two_fold

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "one_fold": [{"branch": b, "end": e} for b, e in self.one_fold],
            "two_fold": [{"branch": b, "end": e} for b, e in self.two_fold],
        }

    @staticmethod
    def from_json(doc: dict) -> "Switch":
        def side(key):
            return tuple((ref["branch"], ref["end"]) for ref in doc[key])
        return Switch(id=doc["id"], one_fold=side("one_fold"), two_fold=side("two_fold"))


class TrainTrack:
    def __init__(self, branches: Sequence[Branch], switches: Sequence[Switch],
                 track_id: str = "track"):
        self.track_id = track_id
        self.branches: Dict[str, Branch] = {}
        for b in branches:
            if b.id in self.branches:
                raise SwitchSystemError(track_id, f"duplicate branch id {b.id!r}")
            self.branches[b.id] = b
        self.switches: Dict[str, Switch] = {}
        for s in switches:
            if s.id in self.switches:
                raise SwitchSystemError(track_id, f"duplicate switch id {s.id!r}")
            self.switches[s.id] = s
        self.validate()

    # -- structure ---------------------------------------------------------

    def validate(self) -> None:
        seen: Dict[End, str] = {}
        for s in self.switches.values():
            if len(s.one_fold) != 1:
                raise SwitchSystemError(self.track_id,
                                        f"switch {s.id!r} needs exactly one end on its one-fold side")
            if len(s.two_fold) not in (1, 2):
                raise SwitchSystemError(self.track_id,
                                        f"switch {s.id!r} needs one or two ends on its two-fold side")
            for side in (s.one_fold, s.two_fold):
                by_branch: Dict[str, int] = {}
                for branch_id, end_name in side:
                    if end_name not in _END_NAMES:
                        raise SwitchSystemError(self.track_id,
                                                f"switch {s.id!r} names bad end {end_name!r}")
                    if branch_id not in self.branches:
                        raise SwitchSystemError(self.track_id,
                                                f"switch {s.id!r} references unknown branch {branch_id!r}")
                    if self.branches[branch_id].loop:
                        raise SwitchSystemError(self.track_id,
                                                f"loop branch {branch_id!r} cannot meet switch {s.id!r}")
                    by_branch[branch_id] = by_branch.get(branch_id, 0) + 1
                for branch_id, count in by_branch.items():
                    if count > 1:
                        # both ends on one side of one switch bounds a monogon
                        raise MonogonError(self.track_id, branch_id)
            for end in s.ends():
                if end in seen:
                    raise SwitchSystemError(
                        self.track_id,
                        f"end {end!r} attached to both {seen[end]!r} and {s.id!r}")
                seen[end] = s.id
        for b in self.branches.values():
            if b.loop:
                continue
            for end_name in _END_NAMES:
                if (b.id, end_name) not in seen:
                    raise SwitchSystemError(self.track_id,
                                            f"branch {b.id!r} has a free {end_name}")

    def branch_order(self) -> List[str]:
        return sorted(self.branches)

    def switch_system(self) -> List[Dict[str, int]]:
        """One row per switch: branch id -> coefficient, one-fold counted
        positive. Coefficients land in {-1, 0, 1}; a branch whose two ends
        straddle the same switch cancels to 0."""
        rows = []
        for sid in sorted(self.switches):
            s = self.switches[sid]
            row: Dict[str, int] = {}
            for branch_id, _ in s.one_fold:
                row[branch_id] = row.get(branch_id, 0) + 1
            for branch_id, _ in s.two_fold:
                row[branch_id] = row.get(branch_id, 0) - 1
            rows.append({k: v for k, v in row.items() if v != 0})
        return rows

    def components(self) -> List[List[str]]:
        parent = {bid: bid for bid in self.branches}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        for s in self.switches.values():
            ends = s.ends()
            for (b1, _), (b2, _) in zip(ends, ends[1:]):
                union(b1, b2)
        groups: Dict[str, List[str]] = {}
        for bid in self.branches:
            groups.setdefault(find(bid), []).append(bid)
        comps = [sorted(g) for g in groups.values()]
        comps.sort(key=lambda g: g[0])
        return comps

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "branches": [self.branches[b].to_json() for b in sorted(self.branches)],
            "switches": [self.switches[s].to_json() for s in sorted(self.switches)],
        }

    @staticmethod
    def from_json(doc: dict, track_id: str = "track") -> "TrainTrack":
        return TrainTrack(
            [Branch.from_json(b) for b in doc["branches"]],
            [Switch.from_json(s) for s in doc["switches"]],
            track_id=track_id,
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# Solution enumeration.


def _component_solutions(track: TrainTrack, comp: List[str], bound: int) -> List[Tuple[int, ...]]:
    """All weight tuples (aligned with comp, which is sorted) satisfying
    every switch supported on comp, each weight <= bound. Backtracking
    with unit propagation: when one branch is the last unknown of some
    switch its value is forced."""
    comp_set = set(comp)
    index = {bid: i for i, bid in enumerate(comp)}
    rows = []
    for row in track.switch_system():
        if any(b in comp_set for b in row):
            rows.append([(index[b], c) for b, c in row.items()])

    n = len(comp)
    weights: List[Optional[int]] = [None] * n
    out: List[Tuple[int, ...]] = []

    def propagate(trail: List[int]) -> bool:
        changed = True
        while changed:
            changed = False
            for row in rows:
                total = 0
                missing = None
                missing_coeff = 0
                for i, c in row:
                    w = weights[i]
                    if w is None:
                        if missing is not None:
                            missing = -1  # more than one unknown
                            break
                        missing = i
                        missing_coeff = c
                    else:
                        total += c * w
                if missing == -1:
                    continue
                if missing is None:
                    if total != 0:
                        return False
                    continue
                if total % missing_coeff != 0:
                    return False
                value = -total // missing_coeff
                if value < 0 or value > bound:
                    return False
                weights[missing] = value
                trail.append(missing)
                changed = True
        return True

    def rec(pos: int):
        while pos < n and weights[pos] is not None:
            pos += 1
        if pos == n:
            out.append(tuple(weights))  # fully determined
            return
        for value in range(bound + 1):
            weights[pos] = value
            trail = [pos]
            if propagate(trail):
                rec(pos + 1)
            for i in trail:
                weights[i] = None

    trail0: List[int] = []
    if propagate(trail0):
        rec(0)
    for i in trail0:
        weights[i] = None
    out.sort()
    return out


def enumerate_solutions(track: TrainTrack, bound: int) -> List[Dict[str, int]]:
    """Every solution with all weights <= bound, zero vector included,
    in lexicographic order over alphabetically sorted branch ids."""
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    comps = track.components()
    per_comp = [_component_solutions(track, comp, bound) for comp in comps]
    order = track.branch_order()
    solutions = []
    for combo in itertools.product(*per_comp):
        w: Dict[str, int] = {}
        for comp, tup in zip(comps, combo):
            for bid, value in zip(comp, tup):
                w[bid] = value
        solutions.append(w)
    solutions.sort(key=lambda w: tuple(w[b] for b in order))
    return solutions


def _class_of(track: TrainTrack, weights: Dict[str, int]) -> Tuple[int, int]:
    p = sum(track.branches[b].klass[0] * w for b, w in weights.items())
    q = sum(track.branches[b].klass[1] * w for b, w in weights.items())
    return (p, q)


@dataclass
class CarriedClasses:
    """Nonzero realized classes with one witness each, plus one witness
    of a nonzero solution whose class vanishes, when such exist."""

    classes: Dict[Tuple[int, int], Dict[str, int]] = field(default_factory=dict)
    null_witness: Optional[Dict[str, int]] = None

    def slopes(self) -> Set[Slope]:
        return {Slope.of(q, p) for (p, q) in self.classes}


def carried_classes(track: TrainTrack, bound: int) -> CarriedClasses:
    """Component-wise enumeration combined over the class lattice.

    The witness for a class is deterministic: components are taken in
    order of their smallest branch id, each contributing its
    lexicographically first weight tuple for its share of the class.
    """
    comps = track.components()
    # per component: one lex-first tuple per class, plus (since the zero
    # tuple shadows it) the lex-first nonzero tuple of vanishing class
    per_comp: List[List[Tuple[Tuple[int, int], Tuple[int, ...]]]] = []
    for comp in comps:
        picked: Dict[Tuple[int, int], Tuple[int, ...]] = {}
        nz_null: Optional[Tuple[int, ...]] = None
        for tup in _component_solutions(track, comp, bound):
            cls = (sum(track.branches[b].klass[0] * w for b, w in zip(comp, tup)),
                   sum(track.branches[b].klass[1] * w for b, w in zip(comp, tup)))
            if cls not in picked:  # tuples arrive lex sorted
                picked[cls] = tup
            if cls == (0, 0) and any(tup) and nz_null is None:
                nz_null = tup
        entries = list(picked.items())
        if nz_null is not None:
            entries.append(((0, 0), nz_null))
        per_comp.append(entries)

    # fold; key carries whether the combo is nonzero so that null
    # solutions are not hidden behind the all-zero vector
    Key = Tuple[Tuple[int, int], bool]
    best: Dict[Key, Tuple[Tuple[int, ...], ...]] = {((0, 0), False): ()}
    for entries in per_comp:
        nxt: Dict[Key, Tuple[Tuple[int, ...], ...]] = {}
        for (cls0, nz0), tups in best.items():
            for cls1, tup in entries:
                key = ((cls0[0] + cls1[0], cls0[1] + cls1[1]), nz0 or any(tup))
                cand = tups + (tup,)
                if key not in nxt or cand < nxt[key]:
                    nxt[key] = cand
        best = nxt

    def as_weights(tups: Tuple[Tuple[int, ...], ...]) -> Dict[str, int]:
        weights: Dict[str, int] = {}
        for comp, tup in zip(comps, tups):
            for bid, value in zip(comp, tup):
                weights[bid] = value
        return weights

    report = CarriedClasses()
    for (cls, nz), tups in sorted(best.items(), key=lambda kv: kv[1]):
        if cls == (0, 0):
            if nz and report.null_witness is None:
                report.null_witness = as_weights(tups)
            continue
        if cls not in report.classes:
            report.classes[cls] = as_weights(tups)
    return report


def carries_slope(track: TrainTrack, slope, bound: int) -> Optional[Dict[str, int]]:
    """A witness solution realizing the slope at this bound, or None."""
    target = parse_slope(slope)
    report = carried_classes(track, bound)
    best = None
    for (p, q), witness in report.classes.items():
        if Slope.of(q, p) == target:
            key = tuple(witness[b] for b in track.branch_order())
            if best is None or key < best[0]:
                best = (key, witness)
    return None if best is None else best[1]


def dead_branches(track: TrainTrack, bound: int) -> Set[str]:
    """Branches carrying zero weight in every solution at this bound."""
    alive: Set[str] = set()
    for comp in track.components():
        for tup in _component_solutions(track, comp, bound):
            for bid, w in zip(comp, tup):
                if w:
                    alive.add(bid)
    return set(track.branches) - alive


# ---------------------------------------------------------------------------
# Slope laws.

LAW_KINDS = (
    "ONLY_ZERO",
    "ONLY_FOUR",
    "ONLY_INFINITY",
    "ANY_SLOPE",
    "FORMULA_MU_NU_OMEGA",
    "FORMULA_THREE_PLUS",
    "FORMULA_B9",
)


@dataclass(frozen=True)
class SlopeLaw:
    kind: str
    surjective_height: Optional[int] = None

    def __post_init__(self):
        if self.kind not in LAW_KINDS:
            raise ValueError(f"unknown slope law {self.kind!r}")

    def to_json(self) -> dict:
        doc = {"kind": self.kind}
        if self.surjective_height is not None:
            doc["surjective_height"] = self.surjective_height
        return doc

    @staticmethod
    def from_json(doc: dict) -> "SlopeLaw":
        return SlopeLaw(kind=doc["kind"], surjective_height=doc.get("surjective_height"))


@dataclass
class LawReport:
    family: str
    law: SlopeLaw
    bound: int
    realized: Set[Slope]
    violations: List[str]

    @property
    def ok(self) -> bool:
        return not self.violations

    def raise_if_violated(self) -> None:
        if self.violations:
            raise SlopeLawError(self.family, "; ".join(self.violations))


def _role_sum(weights: Dict[str, int], branches: Iterable[str]) -> int:
    return sum(weights.get(b, 0) for b in branches)


def _slopes_up_to_height(h: int) -> Set[Slope]:
    out = {Slope(1, 0)}
    for p in range(1, h + 1):
        for q in range(-h, h + 1):
            if Slope.of(q, p).height <= h:
                out.add(Slope.of(q, p))
    return out


def check_law(track: TrainTrack, law: SlopeLaw, designated: Dict[str, List[str]],
              bound: int, family: str = "?") -> LawReport:
    """Verify the family's slope law against bounded enumeration.

    Constant laws assert the realized slope set exactly. Formula laws
    assert an identity between each witness's class and the weight sums
    over the designated roles, plus the law's range condition.
    """
    for role, ids in designated.items():
        for b in ids:
            if b not in track.branches:
                raise SwitchSystemError(track.track_id,
                                        f"designated role {role!r} names unknown branch {b!r}")
    report = carried_classes(track, bound)
    realized = report.slopes()
    violations: List[str] = []

    def expect_exactly(expected: Set[Slope]):
        if realized != expected:
            violations.append(
                f"realized {sorted(str(s) for s in realized)} != expected "
                f"{sorted(str(s) for s in expected)}")

    if law.kind == "ONLY_ZERO":
        expect_exactly({Slope(0, 1)})
    elif law.kind == "ONLY_FOUR":
        expect_exactly({Slope(4, 1)})
    elif law.kind == "ONLY_INFINITY":
        expect_exactly({Slope(1, 0)})
    elif law.kind == "ANY_SLOPE":
        h = law.surjective_height or 1
        missing = _slopes_up_to_height(h) - realized
        if missing:
            violations.append(f"missing slopes of height <= {h}: "
                              f"{sorted(str(s) for s in missing)}")
    elif law.kind == "FORMULA_MU_NU_OMEGA":
        for (p, q), w in report.classes.items():
            omega = _role_sum(w, designated.get("omega", ()))
            mu = _role_sum(w, designated.get("mu", ()))
            nu = _role_sum(w, designated.get("nu", ()))
            if (p, q) != (omega, mu - nu):
                violations.append(
                    f"class ({p},{q}) disagrees with (omega, mu-nu)=({omega},{mu - nu})")
        h = law.surjective_height or 1
        missing = _slopes_up_to_height(h) - realized
        if missing:
            violations.append(f"missing slopes of height <= {h}: "
                              f"{sorted(str(s) for s in missing)}")
    elif law.kind == "FORMULA_THREE_PLUS":
        four = Slope(4, 1)
        for (p, q), w in report.classes.items():
            omega = _role_sum(w, designated.get("omega", ()))
            mu = _role_sum(w, designated.get("mu", ()))
            nu = _role_sum(w, designated.get("nu", ()))
            if p != omega or q != 3 * omega + mu + nu:
                violations.append(
                    f"class ({p},{q}) disagrees with (omega, 3*omega+mu+nu)"
                    f"=({omega},{3 * omega + mu + nu})")
            if mu < 1:
                violations.append(f"class ({p},{q}) realized with mu = 0")
            s = Slope.of(q, p)
            if s.is_infinity or not (s > Slope(3, 1)):
                violations.append(f"realized slope {s} not greater than 3")
        _ = four
    elif law.kind == "FORMULA_B9":
        saw_positive_g = False
        for (p, q), w in report.classes.items():
            g = _role_sum(w, designated.get("g", ()))
            h_ = _role_sum(w, designated.get("h", ()))
            e = _role_sum(w, designated.get("e", ()))
            f = _role_sum(w, designated.get("f", ()))
            i = _role_sum(w, designated.get("i", ()))
            if p != g or q != g + h_ - e - f - i:
                violations.append(
                    f"class ({p},{q}) disagrees with (g, g+h-e-f-i)"
                    f"=({g},{g + h_ - e - f - i})")
            if g > 0:
                saw_positive_g = True
        if not saw_positive_g and bound >= 1:
            violations.append("no witness with positive g")
    return LawReport(family=family, law=law, bound=bound,
                     realized=realized, violations=violations)
