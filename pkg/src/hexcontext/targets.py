"""Named configurations and how to certify them.

Names: ``grid``, ``grid3`` (three negative contexts), ``doily``, ``pentagram``,
``w52``, ``elliptic:<index>``, ``hyperbolic:<index>``, ``linear-doily:<k>``,
``quadratic-doily:<k>``, ``hexcomp:<skew-id>``; anything else is read as a
lines file (one context per line, observables separated by spaces or '-').
Skew ids follow :func:`hexagon.enumerate_skew_hexagons`: id = 63 * c + r for
classical copy c and reference line r.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .contextuality import (
    Configuration,
    CoverSpec,
    DegreeError,
    build_configuration,
    cover_from,
)
from .hexagon import HexagonCopy, classical_to_skew, enumerate_classical_hexagons, skew_to_classical
from .pauli import PauliError, parse_observable
from .polar import (
    enumerate_linear_doilies,
    enumerate_quadratic_doilies,
    enumerate_quadrics,
    space,
    two_qubit_doily,
)

GRID = (("IZ", "ZI", "ZZ"), ("XI", "IX", "XX"), ("XZ", "ZX", "YY"),
        ("IZ", "XI", "XZ"), ("ZI", "IX", "ZX"), ("ZZ", "XX", "YY"))
GRID3 = (("XX", "ZZ", "YY"), ("ZX", "XY", "YZ"), ("XZ", "YX", "ZY"),
         ("XX", "ZY", "YZ"), ("ZX", "XZ", "YY"), ("XY", "YX", "ZZ"))
PENTAGRAM = (("XXX", "YYX", "YXY", "XYY"), ("XXX", "XII", "IXI", "IIX"),
             ("YYX", "YII", "IYI", "IIX"), ("YXY", "YII", "IXI", "IIY"),
             ("XYY", "XII", "IYI", "IIY"))
N_SKEW = 120 * 63


class TargetError(LookupError):
    pass


@dataclass
class Target:
    config: Configuration
    predicted: list = field(default_factory=list)
    covers: Callable[[], list[CoverSpec]] | None = None
    match_hexagons: bool = False
    hexagon: HexagonCopy | None = None


def skew_copy(skew_id: int) -> HexagonCopy:
    if not 0 <= skew_id < N_SKEW:
        raise TargetError(f"skew id {skew_id} outside 0..{N_SKEW - 1}")
    h = enumerate_classical_hexagons()[skew_id // 63]
    return classical_to_skew(h, h.triples[skew_id % 63])


def hexagon_complement(skew: HexagonCopy, name: str) -> Configuration:
    inside = set(skew.triples)
    return build_configuration([ln for ln in space(3).lines if ln.points not in inside], name)


def _w52_covers(c: Configuration) -> list[CoverSpec]:
    return [
        cover_from(c, [d.lines for d in enumerate_quadratic_doilies()], "quadratic-doilies"),
        cover_from(c, [d.lines for d in enumerate_linear_doilies()], "linear-doilies"),
    ]


def _quadric(kind: str, index: str):
    try:
        idx = parse_observable(index)
    except PauliError as exc:
        raise TargetError(str(exc)) from exc
    hyp, ell = enumerate_quadrics(3)
    for q in hyp if kind == "hyperbolic" else ell:
        if q.index.code == idx.code and q.index.n == idx.n:
            return q
    raise TargetError(f"{index} does not index a {kind} quadric")


def _index(arg: str, size: int, what: str) -> int:
    try:
        k = int(arg)
    except ValueError as exc:
        raise TargetError(f"{what} id must be an integer") from exc
    if not 0 <= k < size:
        raise TargetError(f"{what} id {k} outside 0..{size - 1}")
    return k


def read_lines_file(path: Path) -> list[list[str]]:
    out = []
    for raw in path.read_text().splitlines():
        raw = raw.split("#", 1)[0].strip()
        if raw:
            out.append(raw.replace("-", " ").split())
    return out


def resolve_target(name: str) -> Target:
    kind, _, arg = name.partition(":")
    if name == "grid":
        return Target(build_configuration(GRID, "grid"))
    if name == "grid3":
        return Target(build_configuration(GRID3, "grid3"))
    if name == "doily":
        return Target(build_configuration(two_qubit_doily().lines, "doily"))
    if name == "pentagram":
        return Target(build_configuration(PENTAGRAM, "pentagram"))
    if name == "w52":
        c = build_configuration(space(3).lines, "w52")
        h = enumerate_classical_hexagons()[0]
        return Target(c, [c.context_ids(h.lines)], lambda: _w52_covers(c), True)
    if kind in ("elliptic", "hyperbolic") and arg:
        q = _quadric(kind, arg)
        return Target(build_configuration(q.lines, name), match_hexagons=True)
    if kind == "linear-doily" and arg:
        d = enumerate_linear_doilies()[_index(arg, 336, kind)]
        return Target(build_configuration(d.lines, name), match_hexagons=True)
    if kind == "quadratic-doily" and arg:
        d = enumerate_quadratic_doilies()[_index(arg, 1008, kind)]
        return Target(build_configuration(d.lines, name), match_hexagons=True)
    if kind == "hexcomp" and arg:
        sk = skew_copy(_index(arg, N_SKEW, "skew"))
        c = hexagon_complement(sk, name)
        sibling = skew_to_classical(sk)
        gray = [ln for ln in sibling.lines if ln.points not in set(sk.triples)]
        return Target(c, [c.context_ids(gray)], match_hexagons=True, hexagon=sk)
    path = Path(name)
    if path.is_file():
        try:
            return Target(build_configuration(read_lines_file(path), path.stem))
        except (PauliError, DegreeError) as exc:
            raise TargetError(f"{path}: {exc}") from exc
    raise TargetError(f"unknown target {name!r}")
