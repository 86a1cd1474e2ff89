"""Small helpers for point-line incidence structures given as point triples."""

from __future__ import annotations

from collections import defaultdict, deque


def point_degrees(lines) -> dict[int, int]:
    deg: dict[int, int] = defaultdict(int)
    for line in lines:
        for p in line:
            deg[p] += 1
    return dict(deg)


def lines_through(lines) -> dict[int, list[int]]:
    """Map point -> indices of the lines containing it."""
    out: dict[int, list[int]] = defaultdict(list)
    for i, line in enumerate(lines):
        for p in line:
            out[p].append(i)
    return dict(out)


def incidence_girth(lines) -> int:
    """Girth of the bipartite point-line incidence graph (0 if acyclic).

    Runs a BFS from every line vertex; cheap for the <= 315-line inputs used
    here.
    """
    lines = [tuple(x) for x in lines]
    # vertices: ("L", i) and ("P", p); encode as ints: lines >= 0, points < 0
    adj: dict[int, list[int]] = defaultdict(list)
    for i, line in enumerate(lines):
        for p in line:
            adj[i].append(-p - 1)
            adj[-p - 1].append(i)
    best = 0
    for start in range(len(lines)):
        dist = {start: 0}
        parent = {start: None}
        q = deque([start])
        while q:
            x = q.popleft()
            if best and 2 * dist[x] + 1 >= best:
                break
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    q.append(y)
                elif parent[x] != y:
                    cyc = dist[x] + dist[y] + 1
                    if not best or cyc < best:
                        best = cyc
    return best


def is_regular(lines, n_points: int, n_lines: int, per_line: int, per_point: int) -> bool:
    lines = list(lines)
    if len(lines) != n_lines or len(set(map(frozenset, lines))) != n_lines:
        return False
    if any(len(set(line)) != per_line for line in lines):
        return False
    deg = point_degrees(lines)
    return len(deg) == n_points and all(d == per_point for d in deg.values())


def meets(l1, l2) -> bool:
    return not set(l1).isdisjoint(l2)


def collinearity_distance(lines, src, dst) -> int:
    """Distance between two points in the incidence graph (points at even distance)."""
    thru = lines_through(lines)
    dist = {src: 0}
    q = deque([src])
    while q:
        p = q.popleft()
        if p == dst:
            return dist[p]
        for li in thru[p]:
            for r in lines[li]:
                if r not in dist:
                    dist[r] = dist[p] + 2
                    q.append(r)
    return -1
