"""Degree of contextuality of observable configurations.

A configuration has an l x p incidence matrix A over GF(2) (contexts x
observables) and a valuation vector E (1 marks a negative context).  An
assignment s in GF(2)^p (bit 1 = value -1) violates exactly the contexts in
the support of A s + E, so the degree is the distance from E to the column
space Im(A): the minimum weight of the coset E + Im(A).
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import asdict, dataclass, field
from functools import cached_property

import numpy as np

from . import gf2
from .pauli import Observable, PauliError, context_sign, parse_observable
from .polar import LineContext, space


class DegreeError(RuntimeError):
    pass


@dataclass(frozen=True)
class Configuration:
    name: str
    points: tuple[int, ...]
    contexts: tuple[tuple[int, ...], ...]
    signs: tuple[int, ...]
    n: int = 3

    @property
    def p(self) -> int:
        return len(self.points)

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.contexts)

    @cached_property
    def point_index(self) -> dict[int, int]:
        return {q: j for j, q in enumerate(self.points)}

    @cached_property
    def rows(self) -> list[int]:
        """Context i as a bitmask over point indices."""
        idx = self.point_index
        return [sum(1 << idx[q] for q in ctx) for ctx in self.contexts]

    @cached_property
    def cols(self) -> list[int]:
        """Point j as a bitmask over context indices (column j of A)."""
        out = [0] * self.p
        for i, r in enumerate(self.rows):
            while r:
                j = (r & -r).bit_length() - 1
                out[j] |= 1 << i
                r &= r - 1
        return out

    @cached_property
    def e_mask(self) -> int:
        return sum(1 << i for i, s in enumerate(self.signs) if s < 0)

    @property
    def A(self) -> np.ndarray:
        a = np.zeros((self.l, self.p), dtype=np.uint8)
        for i, ctx in enumerate(self.contexts):
            for q in ctx:
                a[i, self.point_index[q]] = 1
        return a

    @property
    def E(self) -> np.ndarray:
        return np.array([1 if s < 0 else 0 for s in self.signs], dtype=np.uint8)

    @cached_property
    def column_basis(self) -> tuple[int, list[int]]:
        """(rank, indices of points whose columns form a basis of Im(A))."""
        r, chosen, _ = gf2.rank_basis(self.cols)
        return r, chosen

    @cached_property
    def triples_index(self) -> dict[tuple[int, ...], int]:
        return {ctx: i for i, ctx in enumerate(self.contexts)}

    def context_ids(self, contexts) -> frozenset[int]:
        ids = self.triples_index
        return frozenset(ids[tuple(sorted(c.points if isinstance(c, LineContext) else c))]
                         for c in contexts)

    def sub(self, context_ids, name: str = "") -> Configuration:
        ids = sorted(context_ids)
        ctxs = [self.contexts[i] for i in ids]
        pts = tuple(sorted({q for c in ctxs for q in c}))
        return Configuration(name or f"{self.name}/sub", pts, tuple(ctxs),
                             tuple(self.signs[i] for i in ids), self.n)

    def text(self, i: int) -> str:
        return "-".join(str(Observable.from_code(q, self.n)) for q in self.contexts[i])


def build_configuration(contexts, name: str = "config", n: int | None = None) -> Configuration:
    """Configuration from LineContexts or sequences of observables/codes/texts."""
    norm = []
    for ctx in contexts:
        if isinstance(ctx, LineContext):
            n = n or ctx.n
            norm.append((ctx.points, ctx.sign))
            continue
        obs = [parse_observable(o) if isinstance(o, str) else o for o in ctx]
        if not obs:
            raise DegreeError("empty context")
        if all(isinstance(o, Observable) for o in obs):
            n = n or obs[0].n
        else:
            if n is None:
                raise DegreeError("qubit count needed for integer-coded contexts")
            obs = [o if isinstance(o, Observable) else Observable.from_code(o, n) for o in obs]
        if len({o.code for o in obs}) != len(obs) or any(o.is_identity for o in obs):
            raise DegreeError("malformed context")
        try:
            sign = context_sign(obs)
        except PauliError as exc:
            raise DegreeError(f"malformed context: {exc}") from exc
        norm.append((tuple(sorted(o.code for o in obs)), sign))
    if n is None:
        raise DegreeError("empty configuration")
    points = tuple(sorted({q for pts, _ in norm for q in pts}))
    return Configuration(
        name, points, tuple(pts for pts, _ in norm), tuple(s for _, s in norm), n
    )


def configuration_from_triples(triples, name: str, n: int = 3) -> Configuration:
    """Fast path for W(2n-1,2) lines given as code triples."""
    sp = space(n)
    lines = [sp.lines[sp.index[tuple(sorted(t))]] for t in triples]
    return build_configuration(lines, name=name, n=n)


@dataclass
class DegreeCertificate:
    config_id: str
    p: int
    l: int  # noqa: E741
    assignment: int
    violated: tuple[int, ...]
    upper: int
    lower: int
    lower_method: str
    method: str
    seed: int | None = None
    budget: int | None = None
    matched_hexagon_id: int | None = None
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.upper != len(self.violated):
            raise DegreeError("upper bound must equal the violated-set size")
        if self.lower > self.upper:
            raise DegreeError(f"lower bound {self.lower} exceeds upper {self.upper}")

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def degree(self) -> int:
        if not self.exact:
            raise DegreeError(f"degree only bracketed: [{self.lower}, {self.upper}]")
        return self.upper

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("assignment")
        d["assignment_hex"] = format(self.assignment, "x")
        d["violated_line_ids"] = list(d.pop("violated"))
        d["exact"] = self.exact
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


# -- basic operations -----------------------------------------------------------------

def gf2_rank(A) -> tuple[int, list[int]]:
    """Rank over GF(2) of a 0/1 matrix and the indices of a column basis."""
    a = np.asarray(A, dtype=np.uint8) & 1
    if a.size == 0:
        return 0, []
    cols = [int(sum(int(v) << i for i, v in enumerate(a[:, j]))) for j in range(a.shape[1])]
    r, chosen, _ = gf2.rank_basis(cols)
    return r, chosen


def violation_mask(c: Configuration, s: int) -> int:
    m = 0
    for i, r in enumerate(c.rows):
        if ((r & s).bit_count() & 1) != (c.e_mask >> i & 1):
            m |= 1 << i
    return m


def violated_lines(c: Configuration, s: int) -> tuple[int, ...]:
    m = violation_mask(c, s)
    return tuple(i for i in range(c.l) if m >> i & 1)


def solve_achievability(c: Configuration, V) -> int | None:
    """An assignment whose violated contexts are exactly V, or None."""
    V = set(V)
    rhs = [(c.e_mask >> i & 1) ^ (i in V) for i in range(c.l)]
    return gf2.solve(c.rows, rhs, c.p)


def _assignment_from_gray(c: Configuration, gray: int) -> int:
    _, basis_pts = c.column_basis
    s, j = 0, 0
    while gray:
        if gray & 1:
            s |= 1 << basis_pts[j]
        gray >>= 1
        j += 1
    return s


def _certificate(c, s, lower, lower_method, method, **kw) -> DegreeCertificate:
    v = violated_lines(c, s)
    return DegreeCertificate(c.name, c.p, c.l, s, v, len(v), lower, lower_method, method, **kw)


# -- exact enumeration ------------------------------------------------------------------

def degree_exact(c: Configuration, rank_limit: int = 30,
                 workers: int | None = None) -> DegreeCertificate:
    """Exhaustive Gray-code walk over Im(A); exact for rank <= rank_limit.

    Ties go to the first optimum in Gray order, whatever ``workers`` is.
    """
    r, basis_pts = c.column_basis
    if r > rank_limit:
        raise DegreeError(
            f"rank {r} exceeds the enumeration limit {rank_limit}; use certify_degree"
        )
    basis = [c.cols[j] for j in basis_pts]
    w, g = gf2.coset_min_gray(basis, c.e_mask, c.l, workers or os.cpu_count() or 1)
    s = _assignment_from_gray(c, g)
    cert = _certificate(c, s, w, "enumeration", "gray-code")
    if cert.upper != w:
        raise DegreeError("gray walk and recomputed violation count disagree")
    return cert


def optimal_violated_sets(c: Configuration, rank_limit: int = 30, cap: int = 1 << 16):
    """Every minimum-size violated set (distinct elements of E + Im(A)).

    Returns (degree, total count, list of violated sets as index tuples).
    """
    cert = degree_exact(c, rank_limit)
    _, basis_pts = c.column_basis
    basis = [c.cols[j] for j in basis_pts]
    total, grays = gf2.coset_words_of_weight(basis, c.e_mask, c.l, cert.upper, cap)
    sets = []
    for g in grays:
        m = c.e_mask ^ gf2.combine(basis, g)
        sets.append(tuple(i for i in range(c.l) if m >> i & 1))
    return cert.upper, total, sets


# -- local search upper bound -------------------------------------------------------------

def degree_upper_search(c: Configuration, seed: int = 0, budget: int = 200,
                        max_steps: int = 10_000) -> DegreeCertificate:
    """Steepest-descent single-flip search from ``budget`` random restarts.

    Restart 0 starts from the all-(+1) assignment, so budget 0 returns wt(E).
    Sideways moves are allowed (bounded by ``max_steps``) and never revisit
    the previous assignment, which lets the walk cross plateaus.
    """
    a = c.A.astype(np.int64)
    e = c.E.astype(np.int64)
    colsum = a.sum(axis=0)
    rng = np.random.default_rng(seed)
    best_s = np.zeros(c.p, dtype=np.int64)
    best_w = int(e.sum())
    for restart in range(budget):
        s = rng.integers(0, 2, c.p) if restart else np.zeros(c.p, dtype=np.int64)
        v = (a @ s + e) % 2
        w = int(v.sum())
        last = -1
        for _ in range(max_steps):
            delta = colsum - 2 * (a.T @ v)
            if last >= 0:
                delta[last] = c.l + 1
            j = int(np.argmin(delta))
            if delta[j] > 0:
                break
            if delta[j] == 0:
                ties = np.flatnonzero(delta == 0)
                j = int(rng.choice(ties))
            s[j] ^= 1
            v = (v + a[:, j]) % 2
            w += int(delta[j])
            last = j
            if w < best_w:
                best_w, best_s = w, s.copy()
        if w < best_w:
            best_w, best_s = w, s.copy()
    s_int = sum(1 << j for j in range(c.p) if best_s[j])
    return _certificate(c, s_int, 0, "trivial", "local-search", seed=seed, budget=budget)


# -- lower bounds -------------------------------------------------------------------------

@dataclass(frozen=True)
class CoverSpec:
    """Subconfigurations (context-index sets of the parent) with certified degrees."""

    subconfigurations: tuple[frozenset[int], ...]
    degrees: tuple[int, ...]
    label: str = "cover"

    @property
    def multiplicity(self) -> int:
        counts = self.counts()
        vals = set(counts.values())
        if len(vals) != 1:
            raise DegreeError(f"non-uniform cover multiplicities {sorted(vals)}")
        return vals.pop()

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for sub in self.subconfigurations:
            for i in sub:
                out[i] = out.get(i, 0) + 1
        return out


def tiling_lower_bound(c: Configuration, cover: CoverSpec) -> int:
    """ceil(sum of sub-degrees / uniform multiplicity)."""
    counts = cover.counts()
    missing = set(range(c.l)) - set(counts)
    if missing:
        raise DegreeError(f"{len(missing)} contexts not covered")
    mu = cover.multiplicity
    return math.ceil(sum(cover.degrees) / mu)


def cover_from(c: Configuration, pieces, label: str, rank_limit: int = 30) -> CoverSpec:
    """CoverSpec whose sub-degrees are each certified by exact enumeration.

    ``pieces`` are iterables of contexts (LineContexts or code tuples).
    """
    subs, degs = [], []
    cache: dict[tuple, int] = {}
    for piece in pieces:
        ids = c.context_ids(piece)
        sub = c.sub(ids)
        key = (sub.rows and tuple(sub.rows), sub.e_mask)
        if key not in cache:
            cache[key] = degree_exact(sub, rank_limit).degree
        subs.append(ids)
        degs.append(cache[key])
    return CoverSpec(tuple(subs), tuple(degs), label)


def infoset_lower_bound(c: Configuration, maxw: int):
    """Information-set bound; returns (bound, best weight seen, sets used)."""
    _, basis_pts = c.column_basis
    basis = [c.cols[j] for j in basis_pts]
    bound, best, word, m, _ = gf2.infoset_coset_bound(basis, c.e_mask, c.l, maxw)
    return bound, best, word, m


def _infoset_weight(c: Configuration, target: int, work_limit: int) -> int | None:
    r, basis_pts = c.column_basis
    basis = [c.cols[j] for j in basis_pts]
    m = len(gf2.disjoint_information_sets(basis + [c.e_mask], c.l))
    if m == 0:
        return None
    w = max(0, math.ceil(target / m) - 1)
    while w > 0 and m * sum(math.comb(r + 1, i) for i in range(1, w + 1)) > work_limit:
        w -= 1
    return w


# -- orchestration ------------------------------------------------------------------------

def certify_degree(c: Configuration, predicted=(), covers=(), seed: int = 0,
                   budget: int = 200, rank_limit: int = 30,
                   infoset_work: int = 50_000_000) -> DegreeCertificate:
    """Best available upper and lower bounds, exact where they meet."""
    r, _ = c.column_basis
    if r <= rank_limit:
        return degree_exact(c, rank_limit)

    notes = []
    best_s, best_how = None, ""
    for V in predicted:
        s = solve_achievability(c, V)
        if s is not None and (best_s is None or len(V) < len(violated_lines(c, best_s))):
            best_s, best_how = s, "achievability"
    search = degree_upper_search(c, seed=seed, budget=budget)
    if best_s is None or search.upper < len(violated_lines(c, best_s)):
        best_s, best_how = search.assignment, "local-search"
    upper = len(violated_lines(c, best_s))
    notes.append(f"local search (seed {seed}, budget {budget}) reached {search.upper}")

    lower, how = 0, "trivial"
    if solve_achievability(c, ()) is None:
        lower = 1
    for cover in covers:
        b = tiling_lower_bound(c, cover)
        notes.append(f"tiling {cover.label}: {sum(cover.degrees)}/{cover.multiplicity} -> {b}")
        if b > lower:
            lower, how = b, f"tiling({cover.label})"
    if lower < upper:
        w = _infoset_weight(c, upper, infoset_work)
        if w:
            b, seen, word, m = infoset_lower_bound(c, w)
            notes.append(f"information sets: {m} disjoint, weight <= {w} -> {b}")
            if seen < upper and word is not None:
                # the enumeration itself found a better coset word
                s = solve_achievability(c, [i for i in range(c.l) if word >> i & 1])
                best_s, best_how, upper = s, "information-set", seen
            if b > lower:
                lower, how = b, f"information-set(m={m},w={w})"
    return _certificate(c, best_s, min(lower, upper), how, best_how,
                        seed=seed, budget=budget, notes=notes)


# -- hexagon matching -------------------------------------------------------------------

def match_classical_hexagon(c: Configuration, violated, hexagons) -> int | None:
    """Index of a hexagon whose shared lines with c are exactly ``violated``."""
    sp = space(3)
    cmask = sp.line_mask(c.contexts)
    vmask = sp.line_mask(c.contexts[i] for i in violated)
    for k, h in enumerate(hexagons):
        if h.mask & cmask == vmask:
            return k
    return None
