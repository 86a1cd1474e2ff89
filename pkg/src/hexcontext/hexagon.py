"""Split Cayley hexagons of order two inside W(5,2): both embeddings.

The classical copy comes from the parabolic quadric
``Q(x) = x1 x4 + x2 x5 + x3 x6 + x7^2`` of PG(6,2) and the Grassmann
conditions on its lines; projecting away ``x7`` (the nucleus direction) lands
in PG(5,2), where the polar form of ``Q`` pairs coordinates (1,4), (2,5), (3,6).
That is exactly the observable pairing ``(a_1, a_2, a_3, b_1, b_2, b_3)``, so
the projected point ``(x1..x6)`` is read directly as ``a = x1x2x3``,
``b = x4x5x6``.  The skew copy applies Coolsaet's coordinate map before the
projection.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, product

from . import incidence
from .polar import (
    GeometryError,
    LineContext,
    LineSet,
    Triple,
    canonical_lineset,
    space,
    symplectic_orbit,
)
from .pauli import sympl

N = 3


@dataclass(frozen=True)
class HexagonCopy:
    lines: tuple[LineContext, ...]
    kind: str  # "classical" | "skew"
    planar_points: frozenset[int]
    axis: LineContext | None = None

    @classmethod
    def from_lines(cls, lines) -> HexagonCopy:
        triples = canonical_lineset(
            ln.points if isinstance(ln, LineContext) else ln for ln in lines
        )
        if not is_generalized_hexagon(triples):
            raise GeometryError("line-set is not a generalized hexagon of order 2")
        kind, planar, axis = classify_embedding(triples)
        sp = space(N)
        return cls(
            tuple(sp.lines[sp.index[t]] for t in triples),
            kind,
            planar,
            None if axis is None else sp.lines[sp.index[axis]],
        )

    @cached_property
    def triples(self) -> LineSet:
        return tuple(ln.points for ln in self.lines)

    @cached_property
    def mask(self) -> int:
        return space(N).line_mask(self.triples)

    def lines_through(self, p: int) -> list[Triple]:
        return [t for t in self.triples if p in t]


@dataclass(frozen=True)
class Layering:
    axis: Triple
    yellow: tuple[Triple, ...]
    gray: tuple[Triple, ...]
    red: tuple[Triple, ...]
    blue: tuple[Triple, ...]

    def all_lines(self) -> LineSet:
        return canonical_lineset((self.axis,) + self.yellow + self.gray + self.red + self.blue)


# -- construction -------------------------------------------------------------

def _quadric_value(x) -> int:
    return (x[0] * x[3] + x[1] * x[4] + x[2] * x[5] + x[6]) % 2


def _grassmann(x, y, i: int, j: int) -> int:
    return (x[i - 1] * y[j - 1] + x[j - 1] * y[i - 1]) % 2


_GRASSMANN_PAIRS = ((6, 2, 1, 7), (1, 3, 7, 2), (2, 4, 3, 7), (3, 5, 7, 4), (4, 6, 5, 7), (5, 1, 7, 6))


def _hexagon_line(x, y) -> bool:
    if any(_grassmann(x, y, a, b) != _grassmann(x, y, c, d) for a, b, c, d in _GRASSMANN_PAIRS):
        return False
    return (_grassmann(x, y, 1, 4) + _grassmann(x, y, 2, 5) + _grassmann(x, y, 3, 6)) % 2 == 0


def _add(x, y):
    return tuple((u + v) % 2 for u, v in zip(x, y))


def _polar7(x, y) -> int:
    return (x[0] * y[3] + x[3] * y[0] + x[1] * y[4] + x[4] * y[1] + x[2] * y[5] + x[5] * y[2]) % 2


@lru_cache(maxsize=None)
def parabolic_model() -> tuple[tuple, tuple[frozenset, ...]]:
    """Points of the parabolic quadric in PG(6,2) and its 63 hexagon lines."""
    pts = tuple(x for x in product((0, 1), repeat=7) if any(x) and _quadric_value(x) == 0)
    onq = set(pts)
    lines = set()
    for x, y in combinations(pts, 2):
        z = _add(x, y)
        if z in onq and not _polar7(x, y) and _hexagon_line(x, y):
            lines.add(frozenset((x, y, z)))
    if len(pts) != 63 or len(lines) != 63:
        raise GeometryError(f"parabolic model gave {len(pts)} points, {len(lines)} lines")
    return pts, tuple(sorted(lines, key=sorted))


def project(x) -> int:
    """Drop x7 and read (x1..x6) as (a1 a2 a3 | b1 b2 b3)."""
    a = x[0] << 2 | x[1] << 1 | x[2]
    b = x[3] << 2 | x[4] << 1 | x[5]
    return a << N | b


def lift(code: int) -> tuple:
    """Inverse of :func:`project` on the quadric (x7 = x1x4 + x2x5 + x3x6)."""
    a, b = code >> N, code & 7
    x = [a >> 2 & 1, a >> 1 & 1, a & 1, b >> 2 & 1, b >> 1 & 1, b & 1]
    x.append((x[0] * x[3] + x[1] * x[4] + x[2] * x[5]) % 2)
    return tuple(x)


def coolsaet_map(x) -> tuple:
    x1, x2, x3, x4, x5, x6, x7 = x
    f4 = (x3 * x5 + x7 * x4) % 2
    f5 = (x4 * x6 + x7 * x5) % 2
    return ((x1 + x6 + f5) % 2, (x2 + x3 + f4) % 2, x3, x4, x5, x6, x7)


def build_classical_hexagon() -> HexagonCopy:
    _, lines = parabolic_model()
    h = HexagonCopy.from_lines(tuple(project(x) for x in ln) for ln in lines)
    if h.kind != "classical":
        raise GeometryError("parabolic model did not embed classically")
    return h


def build_skew_hexagon() -> HexagonCopy:
    _, lines = parabolic_model()
    images = [tuple(coolsaet_map(x) for x in ln) for ln in lines]
    if any(_quadric_value(x) for ln in images for x in ln):
        raise GeometryError("skew map left the quadric")
    h = HexagonCopy.from_lines(tuple(project(x) for x in ln) for ln in images)
    if h.kind != "skew":
        raise GeometryError("skew map produced a classical copy")
    return h


# -- classification -------------------------------------------------------------

def is_generalized_hexagon(lines) -> bool:
    """63 points, 63 lines, 3 per 3, incidence girth >= 12."""
    triples = [tuple(ln.points) if isinstance(ln, LineContext) else tuple(ln) for ln in lines]
    if not incidence.is_regular(triples, 63, 63, 3, 3):
        return False
    return _no_short_cycles(triples)


def _no_short_cycles(triples) -> bool:
    # Equivalent to girth >= 12 for a 3-regular 63_3 structure: from every
    # point the first two collinearity layers are trees (sizes 6 and 24) and no
    # line has two nearest points at distance <= 2 (that would close a 6-,
    # 8- or 10-cycle).
    masks = [(1 << a) | (1 << b) | (1 << c) for a, b, c in triples]
    nb = [0] * 64
    for m, t in zip(masks, triples):
        for p in t:
            nb[p] |= m
    for p in range(1, 64):
        me = 1 << p
        l1 = nb[p] & ~me
        if l1.bit_count() != 6:
            return False
        l2 = 0
        rest = l1
        while rest:
            q = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            l2 |= nb[q]
        l2 &= ~(l1 | me)
        if l2.bit_count() != 24:
            return False
        for m in masks:
            if m & me:
                continue
            c1 = (m & l1).bit_count()
            if c1 > 1 or (c1 == 0 and (m & l2).bit_count() > 1):
                return False
    return True


def _commuting_set(points) -> bool:
    pts = list(points)
    return all(not sympl(u, v, N) for u, v in combinations(pts, 2))


def coplanar_pairs(triples, p: int) -> int:
    """Number of pairs of lines through p spanning an isotropic plane."""
    thru = [t for t in triples if p in t]
    return sum(_commuting_set(set(a) | set(b)) for a, b in combinations(thru, 2))


def planar_points(triples) -> frozenset[int]:
    thru = incidence.lines_through(triples)
    out = set()
    for p, idx in thru.items():
        if _commuting_set({q for i in idx for q in triples[i]}):
            out.add(p)
    return frozenset(out)


def classify_embedding(lines):
    """Return (kind, planar points, axis or None) for a hexagon line-set in W(5,2)."""
    triples = canonical_lineset(
        ln.points if isinstance(ln, LineContext) else ln for ln in lines
    )
    planar = planar_points(triples)
    if len(planar) == 63:
        return "classical", planar, None
    if len(planar) != 15:
        raise GeometryError(f"{len(planar)} planar points: not a W(5,2) hexagon embedding")
    full = [t for t in triples if set(t) <= planar]
    axes = [
        t for t in full
        if all(sum(p in u for u in full) == 3 for p in t)
    ]
    if len(full) != 7 or len(axes) != 1:
        raise GeometryError("planar points do not form the axis configuration")
    return "skew", planar, axes[0]


# -- layering and the skew <-> classical transformation ------------------------------

def _layers(triples, axis: Triple):
    rest = [t for t in triples if t != axis]
    yellow = [t for t in rest if set(t) & set(axis)]
    ypts = {p for t in yellow for p in t}
    gray = [t for t in rest if t not in yellow and set(t) & ypts]
    far = [t for t in rest if t not in yellow and t not in gray]
    return yellow, gray, far


def _components(triples) -> list[list[Triple]]:
    todo = set(triples)
    comps = []
    while todo:
        seed = todo.pop()
        comp, stack = [seed], [seed]
        while stack:
            cur = stack.pop()
            for t in [u for u in todo if set(u) & set(cur)]:
                todo.discard(t)
                comp.append(t)
                stack.append(t)
        comps.append(sorted(comp))
    return comps


def layer_decompose(h: HexagonCopy, axis: Triple | None = None) -> Layering:
    """Axis, 6 yellow, 24 gray and two 16-line classes (red holds the smallest line)."""
    if axis is None:
        if h.axis is None:
            raise GeometryError("layering needs an axis (skew copy or explicit line)")
        axis = h.axis.points
    axis = tuple(sorted(axis))
    yellow, gray, far = _layers(h.triples, axis)
    comps = sorted(_components(far))
    if (len(yellow), len(gray)) != (6, 24) or sorted(map(len, comps)) != [16, 16]:
        raise GeometryError(
            f"layer sizes {len(yellow)}, {len(gray)}, {sorted(map(len, comps))}"
        )
    red, blue = comps
    return Layering(axis, tuple(yellow), tuple(gray), tuple(red), tuple(blue))


def _distances_ok(adj_lines, pts_on, new: Triple, limit: int = 10) -> bool:
    """True if every two points of ``new`` are at incidence distance >= limit."""
    for src in new:
        dist = {src: 0}
        frontier = [src]
        d = 0
        while frontier and d + 2 < limit:
            d += 2
            nxt = []
            for p in frontier:
                for t in adj_lines.get(p, ()):
                    for q in t:
                        if q not in dist:
                            dist[q] = d
                            nxt.append(q)
            frontier = nxt
        if any(q in dist for q in new if q != src):
            return False
    return True


def _rebuild(h: HexagonCopy, axis: Triple, target: str) -> list[LineSet]:
    """All hexagons of the target kind keeping h's axis, yellow and far lines.

    The removed 24 gray lines are re-chosen among W(5,2) lines that carry one
    yellow (non-axis) point and two far points, as an exact cover with girth
    pruning.  For a classical target every far point must be planar, which
    pins its new line to the plane of its two kept lines.
    """
    lay = layer_decompose(h, axis)
    keep = (lay.axis,) + lay.yellow + lay.red + lay.blue
    old_gray = set(lay.gray)
    ypts = {p for t in lay.yellow for p in t} - set(lay.axis)
    far_pts = {p for t in lay.red + lay.blue for p in t}
    sp = space(N)
    kept_thru = incidence.lines_through(keep)
    cands: dict[int, list[Triple]] = {}
    for d in sorted(far_pts):
        mine = [keep[i] for i in kept_thru[d]]
        opts = []
        for li in sp.through[d]:
            t = sp.lines[li].points
            if t in old_gray or t in mine:
                continue
            if sum(p in ypts for p in t) != 1 or sum(p in far_pts for p in t) != 2:
                continue
            in_plane = _commuting_set(set(t) | set(mine[0]) | set(mine[1]))
            if (target == "classical") != in_plane:
                continue
            opts.append(t)
        cands[d] = opts

    solutions: list[LineSet] = []
    chosen: list[Triple] = []
    adj: dict[int, list[Triple]] = {p: [keep[i] for i in ix] for p, ix in kept_thru.items()}
    ycount = {y: 0 for y in ypts}
    covered: set[int] = set()

    def rec():
        todo = [d for d in cands if d not in covered]
        if not todo:
            lines = canonical_lineset(keep + tuple(chosen))
            if is_generalized_hexagon(lines) and classify_embedding(lines)[0] == target:
                solutions.append(lines)
            return
        d = min(todo, key=lambda x: len(cands[x]))
        for t in cands[d]:
            (y,) = [p for p in t if p in ypts]
            if ycount[y] >= 2 or any(p in covered for p in t if p in far_pts):
                continue
            if not _distances_ok(adj, None, t):
                continue
            chosen.append(t)
            ycount[y] += 1
            for p in t:
                adj.setdefault(p, []).append(t)
                if p in far_pts:
                    covered.add(p)
            rec()
            chosen.pop()
            ycount[y] -= 1
            for p in t:
                adj[p].pop()
                covered.discard(p)

    rec()
    return solutions


def skew_to_classical(h: HexagonCopy) -> HexagonCopy:
    if h.kind != "skew":
        raise GeometryError("skew_to_classical needs a skew copy")
    sols = _rebuild(h, h.axis.points, "classical")
    if len(sols) != 1:
        raise GeometryError(f"expected a unique classical sibling, found {len(sols)}")
    out = HexagonCopy.from_lines(sols[0])
    if len(set(out.triples) & set(h.triples)) != 39:
        raise GeometryError("classical sibling does not share 39 lines")
    return out


def classical_to_skew(h: HexagonCopy, ref) -> HexagonCopy:
    if h.kind != "classical":
        raise GeometryError("classical_to_skew needs a classical copy")
    ref = tuple(sorted(ref.points if isinstance(ref, LineContext) else ref))
    if ref not in h.triples:
        raise GeometryError("reference line is not a line of the hexagon")
    sols = _rebuild(h, ref, "skew")
    sols = [s for s in sols if classify_embedding(s)[2] == ref]
    if len(sols) != 1:
        raise GeometryError(f"expected a unique skew sibling, found {len(sols)}")
    return HexagonCopy.from_lines(sols[0])


# -- enumeration ----------------------------------------------------------------

@lru_cache(maxsize=None)
def _classical_orbit():
    seed = build_classical_hexagon()
    return symplectic_orbit(seed.triples, max_size=200, with_words=True)


def enumerate_classical_hexagons() -> list[HexagonCopy]:
    """All classical copies in W(5,2), canonical copy first."""
    order, _ = _classical_orbit()
    if len(order) != 120:
        raise GeometryError(f"classical orbit has {len(order)} copies, expected 120")
    return [HexagonCopy.from_lines(t) for t in order]


@lru_cache(maxsize=None)
def enumerate_skew_hexagons() -> list[HexagonCopy]:
    """The 120 x 63 skew copies, ordered by (classical copy, reference line)."""
    out = [
        classical_to_skew(h, ref)
        for h in enumerate_classical_hexagons()
        for ref in h.triples
    ]
    if len({s.triples for s in out}) != len(out):
        raise GeometryError("classical_to_skew is not injective")
    return out
