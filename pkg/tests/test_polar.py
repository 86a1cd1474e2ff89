from collections import Counter
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hexcontext import incidence
from hexcontext.pauli import Observable, PauliError, parse_observable, sympl, y_count
from hexcontext.polar import (
    GeometryError,
    LineContext,
    OrbitOverflow,
    apply_word,
    enumerate_linear_doilies,
    enumerate_planes,
    enumerate_points,
    enumerate_quadratic_doilies,
    enumerate_quadrics,
    grid_of_lines,
    quadric_counts,
    quadric_from_index,
    space,
    sp_order,
    symplectic_orbit,
    transvection,
    transvection_tables,
    two_qubit_doily,
)

from oracles import dense_context_sign

P = parse_observable
codes3 = st.integers(1, 63)


class TestPoints:
    @pytest.mark.parametrize("n,count", [(1, 3), (2, 15), (3, 63), (4, 255)])
    def test_counts(self, n, count):
        pts = enumerate_points(n)
        assert len(pts) == count == len({p.code for p in pts})

    def test_point_id_is_code(self):
        assert enumerate_points(3)[0].code == 1
        assert enumerate_points(3)[-1] == Observable.from_code(63, 3)

    def test_out_of_range(self):
        with pytest.raises(PauliError):
            enumerate_points(0)
        with pytest.raises(PauliError):
            space(5)


class TestLines:
    def test_w32(self):
        sp = space(2)
        assert (len(sp.points), len(sp.lines)) == (15, 15)
        assert sum(ln.negative for ln in sp.lines) == 3

    def test_w52(self):
        sp = space(3)
        assert len(sp.lines) == 315
        assert sum(ln.negative for ln in sp.lines) == 90
        assert set(map(len, sp.through.values())) == {15}

    def test_w72_counts(self):
        # (4^4 - 1)(4^3 - 1) / 3 lines in rank 4
        assert len(space(4).lines) == 255 * 63 // 3

    def test_signs_match_dense_products(self):
        for ln in space(2).lines + space(3).lines[:60]:
            assert ln.sign == dense_context_sign([str(o) for o in ln.observables])

    def test_example_line(self):
        ln = LineContext.of([P("XYZ").code, P("ZIX").code, P("YYY").code])
        assert ln.points == tuple(sorted(P(x).code for x in ("XYZ", "ZIX", "YYY")))

    def test_rejects_non_isotropic(self):
        with pytest.raises(GeometryError):
            LineContext.of([P("XII").code, P("ZII").code, P("YII").code])

    @given(codes3, codes3)
    def test_lines_are_closed_and_isotropic(self, u, v):
        if u == v or sympl(u, v, 3):
            return
        t = tuple(sorted((u, v, u ^ v)))
        assert t in space(3).index


class TestPlanes:
    def test_count_and_closure(self):
        planes = enumerate_planes()
        assert len(planes) == 135
        for pl in planes:
            assert all(not sympl(a, b, 3) for a, b in combinations(pl.points, 2))
            assert all(a ^ b in pl.points for a, b in combinations(pl.points, 2))
            assert len(pl.lines()) == 7

    def test_each_point_in_15_planes(self):
        c = Counter(p for pl in enumerate_planes() for p in pl.points)
        assert set(c.values()) == {15}


class TestQuadrics:
    def test_counts(self):
        hyp, ell = enumerate_quadrics(3)
        assert len(hyp) == 36 and len(ell) == 28
        assert all((len(q.points), len(q.lines)) == (35, 105) for q in hyp)
        assert all((len(q.points), len(q.lines)) == (27, 45) for q in ell)

    def test_count_formulas(self):
        assert quadric_counts("hyperbolic", 2) == (9, 6)
        assert quadric_counts("elliptic", 2) == (5, 0)
        assert quadric_counts("hyperbolic", 3) == (35, 105)
        assert quadric_counts("elliptic", 3) == (27, 45)

    def test_identity_index_is_symmetric_quadric(self):
        q = quadric_from_index(P("III"))
        assert q.kind == "hyperbolic"
        assert q.points == {p for p in range(1, 64) if y_count(p, 3) % 2 == 0}

    def test_yyy_is_elliptic(self):
        q = quadric_from_index(P("YYY"))
        assert q.kind == "elliptic"
        assert P("YYY").code not in q.points

    def test_index_rule(self):
        # symmetric points commuting with the index, skew points anticommuting
        for idx in ("XZI", "YII", "YYY"):
            o = P(idx)
            q = quadric_from_index(o)
            for p in range(1, 64):
                sym = y_count(p, 3) % 2 == 0
                assert (p in q.points) == (sym != bool(sympl(p, o.code, 3)))

    def test_two_qubit(self):
        hyp, ell = enumerate_quadrics(2)
        assert len(hyp) == 10 and len(ell) == 6


class TestDoilies:
    def test_two_qubit_doily_is_w32(self):
        d = two_qubit_doily()
        assert incidence.incidence_girth([ln.points for ln in d.lines]) == 8
        assert len(d.grids) == 10

    def test_linear(self):
        ds = enumerate_linear_doilies()
        assert len(ds) == 336
        assert set(Counter(t for d in ds for t in d.triples).values()) == {16}

    def test_quadratic(self):
        ds = enumerate_quadratic_doilies()
        assert len(ds) == 1008
        assert set(Counter(t for d in ds for t in d.triples).values()) == {48}

    def test_catalogs_disjoint(self):
        lin = {d.triples for d in enumerate_linear_doilies()}
        quad = {d.triples for d in enumerate_quadratic_doilies()}
        assert len(lin) == 336 and len(quad) == 1008 and not lin & quad

    def test_grids_have_odd_negative_count(self):
        for d in enumerate_linear_doilies()[:20]:
            assert all(g.negative_count % 2 == 1 for g in d.grids)

    def test_grid_of_lines(self):
        r = grid_of_lines((1, 2, 3), (4, 8, 12), 2)
        assert r is not None and len(r) == 3
        assert grid_of_lines((1, 2, 3), (1, 4, 5), 2) is None


class TestGroupAction:
    @given(codes3, codes3, codes3, codes3)
    def test_transvections_preserve_form(self, v, x, y, _):
        assert sympl(transvection(x, v, 3), transvection(y, v, 3), 3) == sympl(x, y, 3)

    @given(codes3, codes3)
    def test_transvection_is_involution(self, v, x):
        assert transvection(transvection(x, v, 3), v, 3) == x

    def test_line_orbit_is_everything(self):
        assert len(symplectic_orbit([space(3).lines[0]])) == 315

    def test_orbit_words_reproduce_images(self):
        seed = [space(3).lines[5].points]
        order, words = symplectic_orbit(seed, with_words=True)
        for img in order[::37]:
            assert tuple(sorted(apply_word(words[img], seed[0]))) == img[0]

    def test_overflow(self):
        with pytest.raises(OrbitOverflow):
            symplectic_orbit([space(3).lines[0]], max_size=10)

    def test_group_orders(self):
        assert sp_order(2) == 720 and sp_order(3) == 1451520

    def test_tables_permute_points(self):
        tabs = transvection_tables(2)
        assert all(sorted(t[1:]) == list(range(1, 16)) for t in tabs[1:])


def standard_form(x: list[int], elliptic: bool) -> int:
    """x1x2 + x3x4 + x5x6, with x5^2 + x6^2 added for the elliptic form."""
    q = x[0] & x[1] ^ x[2] & x[3] ^ x[4] & x[5]
    return q ^ (x[4] ^ x[5] if elliptic else 0)


def symplectic_basis(form):
    """Hyperbolic pairs (e, f) with sigma(e, f) = 1, taking e and f singular while possible."""
    pairs, rest = [], list(range(1, 64))
    while rest:
        e = next((v for v in rest if not form(v)), rest[0])
        f = next(v for v in rest if sympl(e, v, 3))
        if not form(e) and form(f):
            f ^= e
        pairs.append((e, f))
        rest = [v for v in rest if not sympl(v, e, 3) and not sympl(v, f, 3)]
    return pairs


class TestStandardForms:
    @pytest.mark.parametrize("kind", ["hyperbolic", "elliptic"])
    def test_every_quadric_is_a_standard_form_after_a_basis_change(self, kind):
        hyp, ell = enumerate_quadrics(3)
        for q in hyp if kind == "hyperbolic" else ell:
            def form(v):
                return int(v != 0 and v not in q.points)

            pairs = symplectic_basis(form)
            assert len(pairs) == 3
            for x in range(64):
                bits = [x >> (5 - i) & 1 for i in range(6)]
                v = 0
                for (e, f), xe, xf in zip(pairs, bits[::2], bits[1::2]):
                    v ^= (e if xe else 0) ^ (f if xf else 0)
                assert form(v) == standard_form(bits, kind == "elliptic")
