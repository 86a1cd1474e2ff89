"""Independent reference implementations used only by the test suite."""

from functools import reduce
from itertools import product

import numpy as np

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def dense(text):
    return reduce(np.kron, (PAULI[c] for c in text))


def all_labels(n):
    return ["".join(t) for t in product("IXYZ", repeat=n)]


def dense_commutes(u, v):
    mu, mv = dense(u), dense(v)
    return np.allclose(mu @ mv, mv @ mu)


def dense_product(u, v):
    """Return (label, scalar) with dense(u) @ dense(v) == scalar * dense(label)."""
    m = dense(u) @ dense(v)
    for lab in all_labels(len(u)):
        d = dense(lab)
        s = np.trace(d.conj().T @ m) / d.shape[0]
        if abs(s) > 1e-9:
            assert np.allclose(m, s * d)
            return lab, complex(np.round(s.real) + 1j * np.round(s.imag))
    raise AssertionError("not a Pauli product")


def dense_context_sign(labels):
    m = reduce(np.matmul, (dense(x) for x in labels))
    eye = np.eye(m.shape[0])
    if np.allclose(m, eye):
        return 1
    if np.allclose(m, -eye):
        return -1
    raise AssertionError("not +-identity")


def gf2_rank_dense(rows, ncols):
    """Plain Gaussian elimination on a 0/1 numpy matrix."""
    m = np.array(
        [[(r >> j) & 1 for j in range(ncols)] for r in rows], dtype=np.uint8
    )
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, m.shape[0]) if m[i, col]), None)
        if piv is None:
            continue
        m[[rank, piv]] = m[[piv, rank]]
        for i in range(m.shape[0]):
            if i != rank and m[i, col]:
                m[i] ^= m[rank]
        rank += 1
    return rank


def brute_force_degree(line_point_masks, signs_negative, points):
    """min over all 2^p +-1 assignments of the number of violated contexts."""
    p = len(points)
    idx = {q: j for j, q in enumerate(points)}
    rows = [sum(1 << idx[q] for q in pts) for pts in line_point_masks]
    best = None
    for s in range(1 << p):
        v = sum(((r & s).bit_count() & 1) != e for r, e in zip(rows, signs_negative))
        if best is None or v < best:
            best = v
    return best
