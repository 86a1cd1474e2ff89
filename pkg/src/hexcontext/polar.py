"""The symplectic polar space W(2n-1, 2) and its distinguished subgeometries.

Points are identified by their packed observable codes (see :mod:`pauli`), so
"point ID" and "code" are the same integer throughout.  Lines are sorted code
triples; a line-set is canonicalised as a sorted tuple of such triples.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations

from . import incidence
from .pauli import (
    MAX_QUBITS,
    Observable,
    PauliError,
    context_phase,
    sympl,
    to_text,
    y_count,
)

Triple = tuple[int, int, int]
LineSet = tuple[Triple, ...]

MAX_LINE_QUBITS = 4


class GeometryError(RuntimeError):
    """A constructed object failed one of its defining invariants."""


class OrbitOverflow(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class LineContext:
    points: Triple
    sign: int = field(compare=False)
    n: int = field(default=3, compare=False)

    @classmethod
    def of(cls, pts, n: int = 3) -> LineContext:
        t = tuple(sorted(pts))
        if len(t) != 3 or t[0] ^ t[1] != t[2] or sympl(t[0], t[1], n):
            raise GeometryError(f"{[to_text(p, n) for p in t]} is not an isotropic line")
        return cls(t, line_sign(t, n), n)

    @property
    def observables(self) -> tuple[Observable, ...]:
        return tuple(Observable.from_code(p, self.n) for p in self.points)

    @property
    def negative(self) -> bool:
        return self.sign < 0

    @property
    def mask(self) -> int:
        return sum(1 << p for p in self.points)

    def text(self, sep: str = "-") -> str:
        return sep.join(to_text(p, self.n) for p in self.points)

    def __str__(self) -> str:
        return self.text()


@dataclass(frozen=True)
class IsotropicPlane:
    points: tuple[int, ...]
    n: int = 3

    def __post_init__(self):
        if len(self.points) != 7:
            raise GeometryError("a plane has 7 points")

    @property
    def mask(self) -> int:
        return sum(1 << p for p in self.points)

    def lines(self) -> list[Triple]:
        return [t for t in combinations(self.points, 3) if t[0] ^ t[1] == t[2]]

    def __str__(self) -> str:
        return "{" + ", ".join(to_text(p, self.n) for p in self.points) + "}"


@dataclass(frozen=True)
class Quadric:
    kind: str  # "hyperbolic" | "elliptic"
    index: Observable
    points: frozenset[int]
    lines: tuple[LineContext, ...]


@dataclass(frozen=True)
class Grid:
    lines: tuple[LineContext, ...]
    reguli: tuple[tuple[Triple, ...], tuple[Triple, ...]]

    @property
    def points(self) -> frozenset[int]:
        return frozenset(p for ln in self.lines for p in ln.points)

    @property
    def negative_count(self) -> int:
        return sum(ln.negative for ln in self.lines)


@dataclass(frozen=True)
class Doily:
    kind: str  # "linear" | "quadratic"
    points: tuple[int, ...]
    lines: tuple[LineContext, ...]
    provenance: tuple[int, ...]
    n: int = 3

    def __post_init__(self):
        check_doily(self.lines)

    @cached_property
    def triples(self) -> frozenset[Triple]:
        return frozenset(ln.points for ln in self.lines)

    @cached_property
    def grids(self) -> list[Grid]:
        return grids_of_doily(self)


@lru_cache(maxsize=None)
def line_sign(points: Triple, n: int) -> int:
    k = context_phase(points, n)
    if k & 1:
        raise GeometryError("line with imaginary product")
    return 1 if k == 0 else -1


def canonical_lineset(lines) -> LineSet:
    return tuple(sorted(tuple(sorted(t)) for t in lines))


# -- points and lines ---------------------------------------------------------

def _check_n(n: int, hi: int) -> None:
    if not 1 <= n <= hi:
        raise PauliError(f"qubit count {n} outside 1..{hi}")


def point_codes(n: int) -> range:
    _check_n(n, MAX_QUBITS)
    return range(1, 4**n)


def enumerate_points(n: int) -> list[Observable]:
    """All 4^n - 1 non-identity observables in canonical order."""
    return [Observable.from_code(c, n) for c in point_codes(n)]


class Space:
    """Catalog of W(2n-1, 2): points, lines (with signs), and for n=3 planes."""

    def __init__(self, n: int):
        if not 2 <= n <= MAX_LINE_QUBITS:
            raise PauliError(f"line enumeration supports 2 <= n <= {MAX_LINE_QUBITS}")
        self.n = n
        self.points = list(point_codes(n))
        triples = []
        for u in self.points:
            for v in range(u + 1, 4**n):
                w = u ^ v
                if w > v and not sympl(u, v, n):
                    triples.append((u, v, w))
        self.lines: list[LineContext] = [
            LineContext(t, line_sign(t, n), n) for t in triples
        ]
        self.index: dict[Triple, int] = {t: i for i, t in enumerate(triples)}
        self.through: dict[int, list[int]] = incidence.lines_through(triples)

    @property
    def triples(self) -> list[Triple]:
        return [ln.points for ln in self.lines]

    def lines_in(self, pointset) -> list[LineContext]:
        """All lines of the space with every point in ``pointset``."""
        s = set(pointset)
        out = set()
        for p in s:
            for li in self.through[p]:
                if all(q in s for q in self.lines[li].points):
                    out.add(li)
        return [self.lines[i] for i in sorted(out)]

    def line_mask(self, triples) -> int:
        """Bitmask over line indices."""
        m = 0
        for t in triples:
            m |= 1 << self.index[tuple(sorted(t))]
        return m

    def perp(self, codes) -> list[int]:
        codes = list(codes)
        return [p for p in self.points if all(not sympl(p, c, self.n) for c in codes)]

    @cached_property
    def planes(self) -> list[IsotropicPlane]:
        if self.n != 3:
            raise PauliError("plane catalog is only built for n = 3")
        seen = set()
        for u, v, w in self.triples:
            for p in self.points:
                if p not in (u, v, w) and not (
                    sympl(p, u, 3) or sympl(p, v, 3)
                ):
                    seen.add(tuple(sorted((u, v, w, p, p ^ u, p ^ v, p ^ w))))
        return [IsotropicPlane(t) for t in sorted(seen)]


@lru_cache(maxsize=None)
def space(n: int = 3) -> Space:
    return Space(n)


def enumerate_lines(n: int) -> list[LineContext]:
    return list(space(n).lines)


def enumerate_planes() -> list[IsotropicPlane]:
    return list(space(3).planes)


# -- quadrics ------------------------------------------------------------------

def quadric_points(index: int, n: int) -> frozenset[int]:
    """Symmetric points commuting with the index plus skew points anticommuting."""
    return frozenset(
        p for p in point_codes(n) if (y_count(p, n) + sympl(p, index, n)) % 2 == 0
    )


def quadric_from_index(index: Observable) -> Quadric:
    """The quadric with the given index observable.

    The identity is accepted: it indexes the hyperbolic quadric made of all
    symmetric observables.
    """
    n = index.n
    pts = quadric_points(index.code, n)
    kind = "hyperbolic" if y_count(index.code, n) % 2 == 0 else "elliptic"
    q = Quadric(kind, index, pts, tuple(space(n).lines_in(pts)))
    expect_p, expect_l = quadric_counts(kind, n)
    if len(q.points) != expect_p or len(q.lines) != expect_l:
        raise GeometryError(f"{kind} quadric of index {index} has wrong size")
    return q


def quadric_counts(kind: str, n: int) -> tuple[int, int]:
    """Point and line counts of Q+(2n-1,2) / Q-(2n-1,2)."""
    if kind == "hyperbolic":
        pts = (2 ** (n - 1) + 1) * (2**n - 1)
        lns = (2**n - 1) * (2 ** (n - 2) + 1) * (2 ** (2 * (n - 1)) - 1) / 3
    else:
        pts = (2 ** (n - 1) - 1) * (2**n + 1)
        lns = (2**n + 1) * (2 ** (n - 2) - 1) * (2 ** (2 * (n - 1)) - 1) / 3
    return pts, int(lns)


@lru_cache(maxsize=None)
def enumerate_quadrics(n: int = 3) -> tuple[list[Quadric], list[Quadric]]:
    """(hyperbolic, elliptic) quadrics, one per index observable (identity included)."""
    hyp, ell = [], []
    for code in range(4**n):
        q = quadric_from_index(Observable.from_code(code, n))
        (hyp if q.kind == "hyperbolic" else ell).append(q)
    return hyp, ell


# -- doilies and grids --------------------------------------------------------

def check_doily(lines) -> None:
    triples = [ln.points if isinstance(ln, LineContext) else ln for ln in lines]
    if not incidence.is_regular(triples, 15, 15, 3, 3):
        raise GeometryError("not a 15_3 configuration")
    if incidence.incidence_girth(triples) != 8:
        raise GeometryError("doily incidence graph must have girth 8")


def two_qubit_doily() -> Doily:
    """W(3,2) itself."""
    sp = space(2)
    return Doily("linear", tuple(sp.points), tuple(sp.lines), (), n=2)


@lru_cache(maxsize=None)
def enumerate_linear_doilies() -> list[Doily]:
    """Doilies cut out by the perp of a non-isotropic line {u, v, u+v} (n=3)."""
    sp = space(3)
    out = []
    for u in sp.points:
        for v in range(u + 1, 64):
            w = u ^ v
            if w > v and sympl(u, v, 3):
                pts = tuple(sp.perp((u, v)))
                out.append(Doily("linear", pts, tuple(sp.lines_in(pts)), (u, v, w)))
    return out


@lru_cache(maxsize=None)
def enumerate_quadratic_doilies() -> list[Doily]:
    """Intersections of each hyperbolic with each elliptic quadric (n=3)."""
    hyp, ell = enumerate_quadrics(3)
    sp = space(3)
    out = []
    for h in hyp:
        for e in ell:
            pts = tuple(sorted(h.points & e.points))
            out.append(
                Doily("quadratic", pts, tuple(sp.lines_in(pts)), (h.index.code, e.index.code))
            )
    return out


def doily_on_qubits(kept: tuple[int, ...], n: int = 3) -> Doily:
    """Linear doily of observables acting as identity outside ``kept`` (1-based)."""
    free = [q for q in range(1, n + 1) if q not in kept]
    mask = 0
    for q in free:
        bit = 1 << (n - q)
        mask |= bit << n | bit
    pts = tuple(p for p in point_codes(n) if not p & mask)
    sp = space(n)
    return Doily("linear", pts, tuple(sp.lines_in(pts)), ())


def grids_of_doily(d: Doily) -> list[Grid]:
    """The ten 3x3 grids of a doily."""
    lines = list(d.lines)
    by_pts = {ln.points: ln for ln in lines}
    seen = {}
    for l1, l2 in combinations(lines, 2):
        if incidence.meets(l1.points, l2.points):
            continue
        trans = [t for t in lines if incidence.meets(t.points, l1.points)
                 and incidence.meets(t.points, l2.points)]
        reg = [r for r in lines if all(incidence.meets(r.points, t.points) for t in trans)]
        if len(trans) != 3 or len(reg) != 3:
            raise GeometryError("doily lines do not close into a grid")
        r1 = tuple(sorted(x.points for x in reg))
        r2 = tuple(sorted(x.points for x in trans))
        key = frozenset(r1 + r2)
        if key not in seen:
            seen[key] = Grid(tuple(by_pts[t] for t in sorted(key)), tuple(sorted((r1, r2))))
    grids = [seen[k] for k in sorted(seen, key=sorted)]
    if len(grids) != 10:
        raise GeometryError(f"doily has {len(grids)} grids, expected 10")
    return grids


def grid_of_lines(l1: Triple, l2: Triple, n: int = 3) -> tuple[Triple, ...] | None:
    """Regulus completing two disjoint lines inside W, or None if they span no grid."""
    sp = space(n)
    s1, s2 = set(l1), set(l2)
    if s1 & s2:
        return None
    trans = []
    for p in l1:
        for li in sp.through[p]:
            t = sp.lines[li].points
            if set(t) & s2:
                trans.append(t)
    if len(trans) != 3:
        return None
    reg = set()
    for t0 in trans:
        for p in t0:
            for li in sp.through[p]:
                t = sp.lines[li].points
                if all(set(t) & set(tt) for tt in trans):
                    reg.add(t)
    return tuple(sorted(reg)) if len(reg) == 3 else None


# -- symplectic group action --------------------------------------------------

def transvection(x: int, v: int, n: int) -> int:
    return x ^ v if sympl(x, v, n) else x


@lru_cache(maxsize=None)
def transvection_tables(n: int) -> tuple[tuple[int, ...], ...]:
    """tables[v][x] = t_v(x) for every nonzero v."""
    size = 4**n
    return tuple(
        tuple(transvection(x, v, n) for x in range(size)) for v in range(size)
    )


def apply_map(table, lines) -> LineSet:
    return canonical_lineset(tuple(table[p] for p in t) for t in lines)


def symplectic_orbit(seed, max_size: int = 10**6, n: int = 3, with_words: bool = False):
    """Orbit of a line-set under the group generated by all transvections.

    Returns the canonical line-sets in BFS order; with ``with_words`` also a
    dict mapping each line-set to the transvection vectors taking the seed to it.
    """
    tables = transvection_tables(n)
    start = canonical_lineset(l.points if isinstance(l, LineContext) else l for l in seed)
    order = [start]
    words = {start: ()}
    q = deque([start])
    while q:
        cur = q.popleft()
        for v in range(1, 4**n):
            img = apply_map(tables[v], cur)
            if img not in words:
                words[img] = words[cur] + (v,)
                order.append(img)
                if len(order) > max_size:
                    raise OrbitOverflow(f"orbit exceeds {max_size}")
                q.append(img)
    return (order, words) if with_words else order


def apply_word(word, codes, n: int = 3) -> list[int]:
    tables = transvection_tables(n)
    out = list(codes)
    for v in word:
        out = [tables[v][c] for c in out]
    return out


def sp_order(n: int) -> int:
    """|Sp(2n, 2)|."""
    order = 2 ** (n * n)
    for i in range(1, n + 1):
        order *= 4**i - 1
    return order
