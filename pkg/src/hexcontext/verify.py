"""Claim suites checked end to end by ``hexcontext verify``."""

from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import asdict, dataclass
from typing import Callable

from . import atlas, hexagon
from .contextuality import (
    build_configuration,
    certify_degree,
    degree_exact,
    match_classical_hexagon,
    optimal_violated_sets,
)
from .polar import (
    enumerate_linear_doilies,
    enumerate_quadratic_doilies,
    enumerate_quadrics,
    space,
)
from .targets import resolve_target


@dataclass
class Claim:
    suite: str
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def to_dict(self) -> dict:
        # timings stay out of report files so reruns are byte-identical
        d = asdict(self)
        d.pop("seconds")
        return d


class _Collector:
    def __init__(self, suite: str):
        self.suite = suite
        self.claims: list[Claim] = []
        self._t = time.perf_counter()

    def check(self, name: str, passed: bool, detail: str = "") -> None:
        now = time.perf_counter()
        self.claims.append(Claim(self.suite, name, bool(passed), detail, round(now - self._t, 3)))
        self._t = now


def suite_catalog(seed: int = 0) -> list[Claim]:
    c = _Collector("catalog")
    s2, s3 = space(2), space(3)
    c.check("W(3,2) has 15 points and 15 lines", (len(s2.points), len(s2.lines)) == (15, 15))
    neg = sum(ln.negative for ln in s3.lines)
    c.check("W(5,2) has 63 points, 315 lines, 90 negative",
            (len(s3.points), len(s3.lines), neg) == (63, 315, 90), f"{neg} negative")
    c.check("W(5,2) has 135 planes", len(s3.planes) == 135)
    hyp, ell = enumerate_quadrics(3)
    c.check("36 hyperbolic quadrics with 35 points / 105 lines",
            len(hyp) == 36 and all((len(q.points), len(q.lines)) == (35, 105) for q in hyp))
    c.check("28 elliptic quadrics with 27 points / 45 lines",
            len(ell) == 28 and all((len(q.points), len(q.lines)) == (27, 45) for q in ell))
    lin, quad = enumerate_linear_doilies(), enumerate_quadratic_doilies()
    for name, ds, mult in (("linear", lin, 16), ("quadratic", quad, 48)):
        per_line = Counter(t for d in ds for t in d.triples)
        c.check(f"{len(ds)} {name} doilies, each line in {mult}",
                len(per_line) == 315 and set(per_line.values()) == {mult},
                f"memberships {sorted(set(per_line.values()))}")
    return c.claims


def suite_hexagon_counts(seed: int = 0) -> list[Claim]:
    c = _Collector("hexagon-counts")
    cls = hexagon.enumerate_classical_hexagons()
    c.check("120 classical copies", len(cls) == 120)
    c.check("classical copies have 63 planar points",
            all(len(h.planar_points) == 63 for h in cls))
    skews = hexagon.enumerate_skew_hexagons()
    c.check("7560 distinct skew copies", len({s.triples for s in skews}) == 7560)
    c.check("skew copies have 15 planar points and an axis",
            all(len(s.planar_points) == 15 and s.axis is not None for s in skews))
    rng = random.Random(seed)
    ok = True
    for k in rng.sample(range(7560), 12):
        s = skews[k]
        lay = hexagon.layer_decompose(s)
        sizes = (len(lay.yellow), len(lay.gray), len(lay.red), len(lay.blue))
        back = hexagon.skew_to_classical(s)
        again = hexagon.classical_to_skew(back, s.axis)
        ok &= (sizes == (6, 24, 16, 16) and back.triples == cls[k // 63].triples
               and again.triples == s.triples
               and len(set(back.triples) & set(s.triples)) == 39)
    c.check("layering (6,24,16,16), 39 shared lines, round trip (12 sampled)", ok)
    return c.claims


def suite_planes(seed: int = 0) -> list[Claim]:
    c = _Collector("planes")
    h = atlas.labelled_classical_hexagon()
    classes = atlas.classify_planes(h)
    kinds = Counter(p.kind for p in classes)
    c.check("63 perp-planes and 72 Heawood planes", kinds == {"perp": 63, "heawood": 72})
    pairs = {frozenset((p.plane_id, p.partner)) for p in classes if p.kind == "heawood"}
    c.check("36 Heawood pairs", len(pairs) == 36)
    planes = space(3).planes
    c.check("each pair spans a Heawood graph",
            all(atlas.is_heawood_graph(h, planes[a], planes[b]) for a, b in map(tuple, pairs)))
    return c.claims


def suite_spreads(seed: int = 0) -> list[Claim]:
    c = _Collector("spreads")
    h = atlas.labelled_classical_hexagon()
    spreads = atlas.enumerate_plane_spreads(h)
    kinds = Counter(s.kind for s in spreads)
    c.check("288 spreads of kind 1 and 672 of kind 2",
            kinds[1] == 288 and kinds[2] == 672 and kinds[0] == 0, str(dict(kinds)))
    rng = random.Random(seed)
    ok = all(len(atlas.spreads_through(atlas.random_disjoint_planes(3, rng))) == 2
             for _ in range(20))
    c.check("three disjoint planes lie in exactly two spreads (20 sampled)", ok)
    return c.claims


def suite_doily_patterns(seed: int = 0) -> list[Claim]:
    c = _Collector("doily-patterns")
    lin, quad = enumerate_linear_doilies(), enumerate_quadratic_doilies()
    h = atlas.labelled_classical_hexagon()
    pats = Counter(atlas.classify_doily_hexagon(d, h).pattern for d in lin + quad)
    c.check("classical copy meets all 1344 doilies in a grid triple", pats == {"P3-grid": 1344})
    sk = hexagon.classical_to_skew(h, atlas.line_of("YYZ-IXY-YZX"))
    seen = Counter()
    avoid: dict[str, set[int]] = {}
    for d in lin:
        r = atlas.classify_doily_hexagon(d, sk)
        seen[r.pattern] += 1
        avoid.setdefault(r.pattern, set()).add(atlas.grids_avoiding(d, r.shared))
    c.check("skew copy meets linear doilies in exactly the four patterns",
            set(seen) == {"P6", "P3-grid", "P3-quadrangle", "P2-concurrent"}, str(dict(seen)))
    c.check("grid avoidance: 4 for P2-concurrent, 2 for P3-quadrangle",
            avoid["P2-concurrent"] == {4} and avoid["P3-quadrangle"] == {2},
            str({k: sorted(v) for k, v in avoid.items()}))
    return c.claims


def suite_quadric_patterns(seed: int = 0) -> list[Claim]:
    c = _Collector("quadric-patterns")
    hyp, ell = enumerate_quadrics(3)
    ok = True
    for h in hexagon.enumerate_classical_hexagons():
        for q in hyp + ell:
            p = atlas.classify_hexagon_quadric(h, q).pattern
            ok &= p == ("9-spread" if q.kind == "elliptic" else "21-heawood")
    c.check("every classical copy: 9-spread on elliptic, Heawood 21 on hyperbolic", ok)
    return c.claims


def suite_violated_is_hexagon(seed: int = 0) -> list[Claim]:
    c = _Collector("violated-is-hexagon")
    cls = hexagon.enumerate_classical_hexagons()
    hyp, ell = enumerate_quadrics(3)
    for label, obj in (("linear doily", enumerate_linear_doilies()[0]),
                       ("quadratic doily", enumerate_quadratic_doilies()[0]),
                       ("elliptic quadric", ell[0]), ("hyperbolic quadric", hyp[0])):
        conf = build_configuration(obj.lines, label)
        d, total, sets = optimal_violated_sets(conf)
        hits = sum(match_classical_hexagon(conf, v, cls) is not None for v in sets)
        c.check(f"{label}: all {total} optima are hexagon intersections",
                hits == len(sets) == total, f"degree {d}, {hits}/{total}")
    t = resolve_target("w52")
    cert = certify_degree(t.config, t.predicted, t.covers(), seed=seed)
    k = match_classical_hexagon(t.config, cert.violated, cls)
    c.check("W(5,2): certified 63 and the violated set is a classical copy",
            cert.exact and cert.upper == 63 and k is not None, f"copy {k}")
    return c.claims


def suite_trace_out(seed: int = 0) -> list[Claim]:
    c = _Collector("trace-out")
    ok = True
    for h in hexagon.enumerate_classical_hexagons()[:10]:
        for q in (1, 2, 3):
            tr = atlas.trace_out(h, q)
            ok &= tr.uncovered == tr.local_points and len(tr.uncovered) == 3
    c.check("classical copies leave exactly the 3 local points uncovered (10 copies)", ok)
    h = hexagon.enumerate_classical_hexagons()[0]
    found = None
    for r in h.triples:
        sk = hexagon.classical_to_skew(h, r)
        for q in (1, 2, 3):
            tr = atlas.trace_out(sk, q)
            if tr.extra_lines and tr.completing_line == sk.axis.points:
                found = (r, q)
                break
        if found:
            break
    c.check("some skew copy shows 6 extra points on two lines completed by the axis",
            found is not None,
            "" if found is None else f"reference {atlas.line_text(found[0])}, traced qubit {found[1]}")
    return c.claims


def suite_complement(seed: int = 0) -> list[Claim]:
    c = _Collector("complement")
    t = resolve_target("hexcomp:0")
    conf = t.config
    deg = Counter(len(v) for v in _point_lines(conf).values())
    c.check("complement is a (63_12, 252_3) configuration",
            conf.p == 63 and conf.l == 252 and deg == {12: 63})
    cert = certify_degree(conf, t.predicted, seed=seed)
    c.check("complement degree 24 (upper by achievability, lower certified)",
            cert.upper == 24 and cert.exact, f"[{cert.lower}, {cert.upper}] {cert.lower_method}")
    return c.claims


def _point_lines(conf):
    out: dict[int, list[int]] = {}
    for i, ctx in enumerate(conf.contexts):
        for q in ctx:
            out.setdefault(q, []).append(i)
    return out


def suite_small_degrees(seed: int = 0) -> list[Claim]:
    c = _Collector("small-degrees")
    for name, want in (("grid", 1), ("doily", 3), ("pentagram", 1),
                       ("elliptic:YYY", 9), ("hyperbolic:III", 21)):
        got = degree_exact(resolve_target(name).config).upper
        c.check(f"degree of {name} is {want}", got == want, str(got))
    return c.claims


SUITES: dict[str, Callable[[int], list[Claim]]] = {
    "catalog": suite_catalog,
    "small-degrees": suite_small_degrees,
    "hexagon-counts": suite_hexagon_counts,
    "planes": suite_planes,
    "spreads": suite_spreads,
    "doily-patterns": suite_doily_patterns,
    "quadric-patterns": suite_quadric_patterns,
    "violated-is-hexagon": suite_violated_is_hexagon,
    "trace-out": suite_trace_out,
    "complement": suite_complement,
}


def run_suite(name: str, seed: int = 0) -> list[Claim]:
    if name == "all":
        return [cl for fn in SUITES.values() for cl in fn(seed)]
    return SUITES[name](seed)

