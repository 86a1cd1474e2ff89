"""How hexagon copies meet planes, plane spreads, doilies and quadrics of W(5,2)."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from . import incidence
from .hexagon import HexagonCopy, enumerate_classical_hexagons
from .pauli import parse_observable, sympl, to_text
from .polar import (
    Doily,
    GeometryError,
    IsotropicPlane,
    Quadric,
    Triple,
    grid_of_lines,
    space,
)

N = 3


class TaxonomyError(GeometryError):
    """An intersection pattern fell outside the expected classification."""


def line_of(text: str) -> Triple:
    """'IXX-IYY-IZZ' -> sorted code triple."""
    return tuple(sorted(parse_observable(t).code for t in text.split("-")))


def line_text(t: Triple) -> str:
    return "-".join(to_text(p, N) for p in t)


# Lines through two points of the labelled reference copy; they single it out
# among the 120 classical copies.
REFERENCE_LINES = (
    "IIY-XZI-XZY", "XZY-YXI-ZYY", "XZY-YXY-ZYI",
    "IXZ-YII-YXZ", "IZX-YII-YZX", "IYY-YII-YYY",
)


@lru_cache(maxsize=None)
def labelled_classical_hexagon() -> HexagonCopy:
    """The classical copy carrying the standard observable labelling."""
    need = {line_of(s) for s in REFERENCE_LINES}
    hits = [h for h in enumerate_classical_hexagons() if need <= set(h.triples)]
    if len(hits) != 1:
        raise GeometryError(f"{len(hits)} classical copies match the reference labelling")
    return hits[0]


# -- planes -----------------------------------------------------------------------

@dataclass(frozen=True)
class PlaneClass:
    plane_id: int
    plane: IsotropicPlane
    kind: str  # "perp" | "heawood"
    nucleus: int | None = None
    partner: int | None = None


def _plane_lines_in(h: HexagonCopy, plane: IsotropicPlane) -> list[Triple]:
    hs = set(h.triples)
    return [t for t in plane.lines() if t in hs]


def _bridging(h: HexagonCopy, p1: IsotropicPlane, p2: IsotropicPlane) -> list[Triple]:
    s1, s2 = set(p1.points), set(p2.points)
    return [t for t in h.triples
            if len(s1.intersection(t)) == 1 and len(s2.intersection(t)) == 1]


def classify_planes(h: HexagonCopy) -> list[PlaneClass]:
    """Perp-planes (3 hexagon lines through a nucleus) and paired Heawood planes."""
    if h.kind != "classical":
        raise GeometryError("plane classification is defined for classical copies")
    planes = space(N).planes
    kinds: dict[int, tuple[str, int | None]] = {}
    for i, pl in enumerate(planes):
        inside = _plane_lines_in(h, pl)
        if len(inside) == 3:
            (nuc,) = set(inside[0]) & set(inside[1]) & set(inside[2])
            if {q for t in h.lines_through(nuc) for q in t} != set(pl.points):
                raise GeometryError(f"plane {i} holds 3 lines but is not a perp-set")
            kinds[i] = ("perp", nuc)
        elif not inside:
            kinds[i] = ("heawood", None)
        else:
            raise GeometryError(f"plane {i} holds {len(inside)} hexagon lines")
    heawood = [i for i, (k, _) in kinds.items() if k == "heawood"]
    partner: dict[int, int] = {}
    for i, j in combinations(heawood, 2):
        if len(_bridging(h, planes[i], planes[j])) == 21:
            if i in partner or j in partner:
                raise GeometryError("Heawood partnering is not a matching")
            partner[i], partner[j] = j, i
    if len(partner) != len(heawood):
        raise GeometryError("classification incomplete: unpaired Heawood planes")
    return [
        PlaneClass(i, planes[i], k, nuc, partner.get(i))
        for i, (k, nuc) in sorted(kinds.items())
    ]


def is_heawood_graph(h: HexagonCopy, p1: IsotropicPlane, p2: IsotropicPlane) -> bool:
    """The bridging lines, read as edges between the two planes, form a (3,6)-cage."""
    edges = [tuple(sorted(set(t) & (set(p1.points) | set(p2.points))))
             for t in _bridging(h, p1, p2)]
    if len(edges) != 21 or any(len(e) != 2 for e in edges):
        return False
    deg = incidence.point_degrees(edges)
    # girth of the subdivided graph is twice the girth of the graph
    return (len(deg) == 14 and set(deg.values()) == {3}
            and incidence.incidence_girth(edges) == 12)


# -- spreads ----------------------------------------------------------------------

@dataclass(frozen=True)
class PlaneSpread:
    planes: tuple[int, ...]
    kind: int  # 1, 2 or 0 when neither pattern holds
    perp: tuple[int, ...]
    heawood: tuple[int, ...]


@lru_cache(maxsize=None)
def all_plane_spreads() -> tuple[tuple[int, ...], ...]:
    """Every set of 9 pairwise disjoint planes (exact covers of the 63 points)."""
    planes = space(N).planes
    masks = [pl.mask for pl in planes]
    by_point: dict[int, list[int]] = {p: [] for p in range(1, 64)}
    for i, pl in enumerate(planes):
        for p in pl.points:
            by_point[p].append(i)
    full = sum(1 << p for p in range(1, 64))
    out: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def rec(covered: int):
        if covered == full:
            out.append(tuple(sorted(chosen)))
            return
        free = full & ~covered
        p = (free & -free).bit_length() - 1
        for i in by_point[p]:
            if not masks[i] & covered:
                chosen.append(i)
                rec(covered | masks[i])
                chosen.pop()

    rec(0)
    return tuple(sorted(out))


def classify_spread(spread, classes: list[PlaneClass]) -> PlaneSpread:
    perp = tuple(i for i in spread if classes[i].kind == "perp")
    hw = tuple(i for i in spread if classes[i].kind == "heawood")
    partners_inside = sum(classes[i].partner in hw for i in hw) // 2
    if len(perp) == 7 and partners_inside == 1:
        kind = 1
    elif len(perp) == 3 and partners_inside == 0:
        kind = 2
    else:
        kind = 0
    return PlaneSpread(tuple(spread), kind, perp, hw)


def enumerate_plane_spreads(h: HexagonCopy) -> list[PlaneSpread]:
    classes = classify_planes(h)
    return [classify_spread(s, classes) for s in all_plane_spreads()]


def spreads_through(plane_ids) -> list[tuple[int, ...]]:
    s = set(plane_ids)
    return [sp for sp in all_plane_spreads() if s <= set(sp)]


def plane_id_of(points) -> int:
    key = tuple(sorted(points))
    for i, pl in enumerate(space(N).planes):
        if pl.points == key:
            return i
    raise GeometryError("not a plane of W(5,2)")


def random_disjoint_planes(k: int, rng: random.Random) -> tuple[int, ...]:
    planes = space(N).planes
    while True:
        pick: list[int] = []
        used = 0
        order = list(range(len(planes)))
        rng.shuffle(order)
        for i in order:
            if not planes[i].mask & used:
                pick.append(i)
                used |= planes[i].mask
                if len(pick) == k:
                    return tuple(sorted(pick))


# -- doilies ---------------------------------------------------------------------

@dataclass(frozen=True)
class DoilyHexPattern:
    shared: tuple[Triple, ...]
    # "P6" | "P3-grid" | "P3-quadrangle" | "P2-concurrent"; skew copies may also
    # give "none" and, against quadratic doilies, "other"
    pattern: str


def _disjoint(lines) -> bool:
    return all(not incidence.meets(a, b) for a, b in combinations(lines, 2))


def _in_one_grid(d: Doily, lines) -> bool:
    want = set(lines)
    return any(want <= {ln.points for ln in g.lines} for g in d.grids)


def classify_doily_hexagon(d: Doily, h: HexagonCopy) -> DoilyHexPattern:
    shared = tuple(sorted(d.triples & set(h.triples)))
    k = len(shared)
    pattern = None
    if k == 3 and _disjoint(shared) and _in_one_grid(d, shared):
        pattern = "P3-grid"
    elif h.kind == "classical":
        pass
    elif k == 0:
        pattern = "none"
    elif k == 2 and incidence.meets(*shared):
        pattern = "P2-concurrent"
    elif k == 3:
        meet = [sum(incidence.meets(a, b) for b in shared if b != a) for a in shared]
        if sorted(meet) == [1, 1, 2]:
            pattern = "P3-quadrangle"
    elif k == 6:
        for t in shared:
            rest = [u for u in shared if u != t]
            covered = {p for u in rest for p in u}
            if (_disjoint(rest) and len(covered) == 15
                    and sum(incidence.meets(t, u) for u in rest) == 3):
                pattern = "P6"
                break
    if pattern is None and d.kind == "quadratic" and h.kind == "skew":
        # the four-pattern taxonomy is a statement about linear doilies only
        pattern = "other"
    if pattern is None:
        raise TaxonomyError(
            f"{h.kind} hexagon shares an unclassified set of {k} lines with a doily: "
            + ", ".join(line_text(t) for t in shared)
        )
    return DoilyHexPattern(shared, pattern)


def grids_avoiding(d: Doily, shared) -> int:
    """Number of the doily's grids containing none of the ``shared`` lines."""
    s = {tuple(sorted(t)) for t in shared}
    return sum(not s & {ln.points for ln in g.lines} for g in d.grids)


def doily_partition_of_hexagon(h: HexagonCopy, doilies) -> list[int]:
    """Indices of 21 doilies whose shared line triples partition h's 63 lines."""
    hl = set(h.triples)
    line_idx = {t: i for i, t in enumerate(h.triples)}
    cands: dict[int, int] = {}
    for i, d in enumerate(doilies):
        sh = d.triples & hl
        if len(sh) == 3 and _disjoint(sh):
            m = sum(1 << line_idx[t] for t in sh)
            cands.setdefault(m, i)
    by_line: dict[int, list[int]] = {j: [] for j in range(63)}
    for m in cands:
        for j in range(63):
            if m >> j & 1:
                by_line[j].append(m)
    full = (1 << 63) - 1
    chosen: list[int] = []

    def rec(covered: int) -> bool:
        if covered == full:
            return True
        free = full & ~covered
        best = None
        for j in range(63):
            if free >> j & 1:
                opts = [m for m in by_line[j] if not m & covered]
                if best is None or len(opts) < len(best):
                    best = opts
                if not opts:
                    return False
        for m in best:
            chosen.append(m)
            if rec(covered | m):
                return True
            chosen.pop()
        return False

    if not rec(0):
        raise GeometryError("no doily partition of the hexagon's lines")
    return [cands[m] for m in chosen]


# -- quadrics --------------------------------------------------------------------

@dataclass(frozen=True)
class QuadricPattern:
    shared: tuple[Triple, ...]
    pattern: str  # "9-spread" | "21-heawood"


def _no_common_transversal(h: HexagonCopy, lines) -> bool:
    for t in h.triples:
        if t in lines:
            continue
        if sum(incidence.meets(t, u) for u in lines) > 1:
            return False
    return True


def classify_hexagon_quadric(h: HexagonCopy, q: Quadric) -> QuadricPattern:
    if h.kind != "classical":
        raise GeometryError("quadric pattern is defined for classical copies")
    qlines = {ln.points for ln in q.lines}
    shared = tuple(sorted(qlines & set(h.triples)))
    covered = {p for t in shared for p in t}
    if q.kind == "elliptic":
        if (len(shared) == 9 and _disjoint(shared) and covered == set(q.points)
                and _no_common_transversal(h, shared)):
            return QuadricPattern(shared, "9-spread")
    else:
        deg = incidence.point_degrees(shared)
        nodes = {p for p, k in deg.items() if k == 3}
        edges = [tuple(sorted(set(t) & nodes)) for t in shared]
        if (len(shared) == 21 and covered == set(q.points) and len(nodes) == 14
                and all(len(e) == 2 for e in edges)
                and incidence.incidence_girth(edges) == 12):
            return QuadricPattern(shared, "21-heawood")
    raise TaxonomyError(f"{q.kind} quadric of index {q.index} shares {len(shared)} lines")


# -- tracing out a qubit ------------------------------------------------------------

def _drop_qubit(code: int, qubit: int) -> int:
    a, b = code >> N, code & 7
    keep = [q for q in range(1, N + 1) if q != qubit]
    ra = rb = 0
    for q in keep:
        ra = ra << 1 | (a >> (N - q) & 1)
        rb = rb << 1 | (b >> (N - q) & 1)
    return ra << 2 | rb


@dataclass(frozen=True)
class TraceOut:
    qubit: int
    surviving: tuple[tuple[Triple, tuple[int, int, int]], ...]
    uncovered: frozenset[int]
    extra_lines: tuple[Triple, ...]
    completing_line: Triple | None

    @property
    def local_points(self) -> frozenset[int]:
        """Points acting as identity on both kept qubits."""
        return frozenset(p for p in range(1, 64) if _drop_qubit(p, self.qubit) == 0)


def trace_out(h: HexagonCopy, qubit: int) -> TraceOut:
    """Reduce every hexagon line to the two qubits other than ``qubit``."""
    if not 1 <= qubit <= N:
        raise ValueError("qubit must be 1, 2 or 3")
    surv = []
    for t in h.triples:
        r = tuple(_drop_qubit(p, qubit) for p in t)
        if 0 in r or len(set(r)) != 3:
            continue
        if any(sympl(x, y, 2) for x, y in combinations(r, 2)):
            continue
        surv.append((t, r))
    covered = {p for t, _ in surv for p in t}
    uncovered = frozenset(range(1, 64)) - covered
    local = {p for p in range(1, 64) if _drop_qubit(p, qubit) == 0}
    extra = set(uncovered) - local
    extra_lines: tuple[Triple, ...] = ()
    completing = None
    if len(extra) == 6:
        lines = [t for t in h.triples if set(t) <= extra]
        if len(lines) == 2 and _disjoint(lines):
            extra_lines = tuple(sorted(lines))
            reg = grid_of_lines(*extra_lines)
            if reg is not None:
                (completing,) = [t for t in reg if t not in extra_lines]
    return TraceOut(qubit, tuple(surv), uncovered, extra_lines, completing)
