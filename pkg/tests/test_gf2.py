from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hexcontext import gf2

from oracles import gf2_rank_dense


def span_min(basis, target):
    best = None
    for bits in product((0, 1), repeat=len(basis)):
        v = target
        for b, g in zip(bits, basis):
            if b:
                v ^= g
        w = v.bit_count()
        best = w if best is None else min(best, w)
    return best


vectors = st.lists(st.integers(0, (1 << 70) - 1), min_size=0, max_size=12)


@given(st.integers(0, (1 << 200) - 1))
def test_words_roundtrip(v):
    assert gf2.from_words(gf2.to_words(v, gf2.nwords_for(200))) == v


@given(vectors)
def test_rank_matches_dense_elimination(vs):
    r, chosen, ech = gf2.rank_basis(vs)
    assert r == gf2_rank_dense(vs, 70) == len(ech)
    assert gf2.rank_basis([vs[i] for i in chosen])[0] == r


@given(st.lists(st.integers(0, 255), min_size=1, max_size=10), st.integers(0, 255))
def test_solve(rows, x_true):
    rhs = [(r & x_true).bit_count() & 1 for r in rows]
    x = gf2.solve(rows, rhs, 8)
    assert x is not None
    assert [(r & x).bit_count() & 1 for r in rows] == rhs


def test_solve_inconsistent():
    assert gf2.solve([0b11, 0b11], [0, 1], 2) is None
    assert gf2.solve([0], [1], 2) is None


@settings(max_examples=40)
@given(st.lists(st.integers(1, (1 << 90) - 1), min_size=1, max_size=9),
       st.integers(0, (1 << 90) - 1))
def test_gray_walk_matches_enumeration(basis, target):
    w, g = gf2.coset_min_gray(basis, target, 90)
    assert w == span_min(basis, target)
    assert (target ^ gf2.combine(basis, g)).bit_count() == w


def test_workers_do_not_change_result():
    import random
    rng = random.Random(3)
    basis = [rng.getrandbits(100) for _ in range(16)]
    target = rng.getrandbits(100)
    one = gf2.coset_min_gray(basis, target, 100, workers=1)
    for k in (2, 3, 8):
        assert gf2.coset_min_gray(basis, target, 100, workers=k) == one


@settings(max_examples=30)
@given(st.lists(st.integers(1, (1 << 40) - 1), min_size=1, max_size=8),
       st.integers(0, (1 << 40) - 1))
def test_collect_counts_optima(basis, target):
    w, _ = gf2.coset_min_gray(basis, target, 40)
    n, grays = gf2.coset_words_of_weight(basis, target, 40, w)
    words = {target ^ gf2.combine(basis, g) for g in grays}
    assert n == len(grays) >= 1
    assert all(x.bit_count() == w for x in words)


@settings(max_examples=40)
@given(st.lists(st.integers(1, (1 << 48) - 1), min_size=1, max_size=7),
       st.integers(0, (1 << 48) - 1), st.integers(1, 3))
def test_infoset_bound_is_sound(basis, target, maxw):
    _, _, ech = gf2.rank_basis(basis)
    true = span_min(ech, target)
    bound, best, word, m, _ = gf2.infoset_coset_bound(ech, target, 48, maxw)
    assert bound <= true <= best
    if word is not None:
        assert word.bit_count() == best


@given(st.lists(st.integers(1, (1 << 30) - 1), min_size=1, max_size=5))
def test_information_sets_are_disjoint_and_full_rank(gens):
    _, _, ech = gf2.rank_basis(gens)
    sets = gf2.disjoint_information_sets(ech, 30)
    seen = set()
    for s in sets:
        assert len(s) == len(ech) and not seen & set(s)
        seen |= set(s)
        assert gf2.systematic_rows(ech, [0] * len(ech), s) is not None


def test_systematic_rows_singular():
    assert gf2.systematic_rows([0b01, 0b11], [0, 0], [1, 1]) is None


@pytest.mark.parametrize("gray,want", [(0, 0), (0b1, 5), (0b11, 5 ^ 6), (0b101, 5 ^ 9)])
def test_combine(gray, want):
    assert gf2.combine([5, 6, 9], gray) == want
