"""Cabello-type inequality tooling: delegation circuits, simulation, scoring.

Each operator of a context is measured through its own delegation qubit:
basis-change gates map every non-identity tensor factor to Z, CNOTs copy the
parity onto the delegation qubit, and the inverse gates restore the data
register.  The product of the delegation outcomes is the context value.

Register layout: data qubit k (1-based, leftmost tensor factor first) is
``q[k-1]``; delegation qubit j (1-based) is ``q[n_data + j - 1]`` and is
measured into ``c[j-1]``.  Outcome bitstrings follow the usual convention
that ``c[0]`` (delegation qubit 1) is the rightmost, least significant bit.
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import dataclass, field

import numpy as np

from .contextuality import Configuration
from .pauli import Observable, PauliError, context_sign, parse_observable

MAX_SIM_QUBITS = 12
QASM_HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'


class CabelloError(ValueError):
    pass


@dataclass(frozen=True)
class Gate:
    name: str  # "h" | "s" | "sdg" | "cx" | "measure"
    qubits: tuple[int, ...]
    clbit: int | None = None


@dataclass(frozen=True)
class Circuit:
    n_data: int
    n_delegation: int
    gates: tuple[Gate, ...] = ()

    @property
    def n_qubits(self) -> int:
        return self.n_data + self.n_delegation


# -- construction ------------------------------------------------------------------

_BASIS = {"X": ("h",), "Y": ("sdg", "h"), "Z": (), "I": ()}
_UNDO = {"X": ("h",), "Y": ("h", "s"), "Z": (), "I": ()}


def _as_observables(context) -> list[Observable]:
    return [parse_observable(o) if isinstance(o, str) else o for o in context]


def operator_block(op: Observable, delegation: int) -> list[Gate]:
    """Gates measuring one operator onto qubit ``delegation`` (no measurement)."""
    text = str(op)
    gates = [Gate(g, (k,)) for k, ch in enumerate(text) for g in _BASIS[ch]]
    gates += [Gate("cx", (k, delegation)) for k, ch in enumerate(text) if ch != "I"]
    gates += [Gate(g, (k,)) for k, ch in enumerate(text) for g in _UNDO[ch]]
    return gates


def build_context_circuit(context) -> Circuit:
    ops = _as_observables(context)
    try:
        context_sign(ops)
    except PauliError as exc:
        raise CabelloError(f"invalid context: {exc}") from exc
    n = ops[0].n
    gates: list[Gate] = []
    for j, op in enumerate(ops):
        gates += operator_block(op, n + j)
    gates += [Gate("measure", (n + j,), j) for j in range(len(ops))]
    return Circuit(n, len(ops), tuple(gates))


# -- OpenQASM ----------------------------------------------------------------------

def emit_qasm(circ: Circuit) -> str:
    lines = [QASM_HEADER.rstrip("\n"), f"qreg q[{circ.n_qubits}];"]
    if circ.n_delegation:
        lines.append(f"creg c[{circ.n_delegation}];")
    for g in circ.gates:
        if g.name == "measure":
            lines.append(f"measure q[{g.qubits[0]}] -> c[{g.clbit}];")
        else:
            lines.append(f"{g.name} " + ",".join(f"q[{q}]" for q in g.qubits) + ";")
    return "\n".join(lines) + "\n"


_STMT = re.compile(r"^(h|s|sdg|cx)\s+(q\[\d+\](?:\s*,\s*q\[\d+\])?)$")
_MEAS = re.compile(r"^measure\s+q\[(\d+)\]\s*->\s*c\[(\d+)\]$")
_REG = re.compile(r"^(qreg|creg)\s+(\w+)\[(\d+)\]$")


def parse_qasm(text: str) -> Circuit:
    """Parse the OpenQASM 2.0 subset written by :func:`emit_qasm`."""
    stmts = [s.strip() for s in re.sub(r"//[^\n]*", "", text).split(";") if s.strip()]
    if not stmts or stmts[0] != "OPENQASM 2.0":
        raise CabelloError("missing OPENQASM 2.0 header")
    nq = nc = None
    gates = []
    for s in stmts[1:]:
        if s.startswith("include"):
            continue
        if m := _REG.match(s):
            if m.group(1) == "qreg":
                nq = int(m.group(3))
            else:
                nc = int(m.group(3))
        elif m := _MEAS.match(s):
            gates.append(Gate("measure", (int(m.group(1)),), int(m.group(2))))
        elif m := _STMT.match(s):
            qs = tuple(int(x) for x in re.findall(r"\[(\d+)\]", m.group(2)))
            gates.append(Gate(m.group(1), qs))
        else:
            raise CabelloError(f"unsupported statement: {s!r}")
    if nq is None:
        raise CabelloError("no quantum register")
    nc = nc or 0
    if any(q >= nq for g in gates for q in g.qubits):
        raise CabelloError("qubit index out of range")
    return Circuit(nq - nc, nc, tuple(gates))


# -- statevector simulation -------------------------------------------------------------

_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_S = np.diag([1, 1j])
_SINGLE = {"h": _H, "s": _S, "sdg": _S.conj()}


def _apply_1q(psi: np.ndarray, u: np.ndarray, q: int) -> np.ndarray:
    psi = np.tensordot(u, psi, axes=([1], [q]))
    return np.moveaxis(psi, 0, q)


def _apply_cx(psi: np.ndarray, c: int, t: int) -> np.ndarray:
    psi = psi.copy()
    idx = [slice(None)] * psi.ndim
    idx[c] = 1
    sub = psi[tuple(idx)]
    axis = t - 1 if t > c else t
    psi[tuple(idx)] = np.flip(sub, axis=axis)
    return psi


def initial_state(spec, n_data: int) -> np.ndarray:
    """Data-register amplitudes from a basis label like '010' or a vector."""
    if isinstance(spec, str):
        if len(spec) != n_data or set(spec) - {"0", "1"}:
            raise CabelloError(f"basis state label {spec!r} does not fit {n_data} qubits")
        v = np.zeros(2**n_data, dtype=complex)
        v[int(spec, 2)] = 1
        return v
    v = np.asarray(spec, dtype=complex).ravel()
    if v.shape != (2**n_data,):
        raise CabelloError("state vector has the wrong dimension")
    if abs(np.vdot(v, v).real - 1) > 1e-9:
        raise CabelloError("state vector is not normalized")
    return v


def run_statevector(circ: Circuit, data_state=None) -> np.ndarray:
    """Final state (axes = qubits, qubit 0 first), ignoring measurements."""
    if circ.n_qubits > MAX_SIM_QUBITS:
        raise CabelloError(f"{circ.n_qubits} qubits exceed the simulator budget {MAX_SIM_QUBITS}")
    if data_state is None:
        data_state = "0" * circ.n_data
    anc = np.zeros(2**circ.n_delegation, dtype=complex)
    anc[0] = 1
    psi = np.kron(initial_state(data_state, circ.n_data), anc)
    psi = psi.reshape((2,) * circ.n_qubits)
    for g in circ.gates:
        if g.name == "measure":
            continue
        if g.name == "cx":
            psi = _apply_cx(psi, *g.qubits)
        else:
            psi = _apply_1q(psi, _SINGLE[g.name], g.qubits[0])
    return psi


def outcome_distribution(circ: Circuit, data_state=None) -> dict[str, float]:
    """Exact probabilities of classical bitstrings (c[0] rightmost)."""
    psi = run_statevector(circ, data_state)
    probs = np.abs(psi) ** 2
    meas = sorted((g.clbit, g.qubits[0]) for g in circ.gates if g.name == "measure")
    keep = [q for _, q in meas]
    drop = tuple(q for q in range(circ.n_qubits) if q not in keep)
    marg = probs.sum(axis=drop) if drop else probs
    # marg axes follow ascending qubit order; map to clbit order
    order = sorted(keep)
    out: dict[str, float] = {}
    for idx in np.ndindex(marg.shape):
        p = float(marg[idx])
        if p < 1e-15:
            continue
        bits = {q: b for q, b in zip(order, idx)}
        key = "".join(str(bits[q]) for _, q in reversed(meas))
        out[key] = out.get(key, 0.0) + p
    return out


def parity_expectation(dist: dict[str, float]) -> float:
    return float(sum(p * (-1) ** key.count("1") for key, p in dist.items()))


def simulate_context(context, data_state=None) -> float:
    """Exact expectation of the product of delegation outcomes."""
    return parity_expectation(outcome_distribution(build_context_circuit(context), data_state))


def sample_counts(dist: dict[str, float], shots: int, rng: np.random.Generator) -> dict[str, int]:
    keys = sorted(dist)
    p = np.array([dist[k] for k in keys])
    draws = rng.multinomial(shots, p / p.sum())
    return {k: int(n) for k, n in zip(keys, draws) if n}


# -- reports ---------------------------------------------------------------------

@dataclass
class CabelloReport:
    config_id: str
    expectations: list[float]
    signs: list[int]
    N: int
    d: int | None
    mode: str
    shots: list[int] | None = None
    seed: int | None = None
    chi: float = field(init=False)

    def __post_init__(self):
        self.chi = float(sum(s * e for s, e in zip(self.signs, self.expectations)))

    @property
    def chi_integer(self) -> int | None:
        """chi as an integer when it is one up to float round-off."""
        r = round(self.chi)
        return int(r) if abs(self.chi - r) < 1e-9 else None

    @property
    def hv_bound(self) -> int | None:
        return None if self.d is None else self.N - 2 * self.d

    @property
    def violates_hv(self) -> bool | None:
        return None if self.d is None else self.chi > self.hv_bound

    def to_dict(self) -> dict:
        return {
            "config_id": self.config_id, "mode": self.mode, "seed": self.seed,
            "N": self.N, "d": self.d, "hv_bound": self.hv_bound,
            "chi": self.chi, "chi_integer": self.chi_integer, "violates_hv": self.violates_hv,
            "contexts": [
                {"line_id": i, "sign": s, "expectation": e,
                 "shots": None if self.shots is None else self.shots[i]}
                for i, (s, e) in enumerate(zip(self.signs, self.expectations))
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["line_id", "sign", "expectation", "shots"])
        for row in self.to_dict()["contexts"]:
            w.writerow([row["line_id"], row["sign"], repr(row["expectation"]), row["shots"]])
        return buf.getvalue()


def chi_bounds(c: Configuration, d: int) -> tuple[int, int]:
    """(quantum bound N, noncontextual bound N - 2d)."""
    if d < 0:
        raise CabelloError("degree must be non-negative")
    return c.l, c.l - 2 * d


def context_observables(c: Configuration, i: int) -> list[Observable]:
    return [Observable.from_code(q, c.n) for q in c.contexts[i]]


def estimate_chi(c: Configuration, d: int | None = None, shots: int | None = None,
                 seed: int = 0, data_state=None) -> CabelloReport:
    """Exact (shots=None) or sampled chi over every context of c."""
    if shots is None:
        exps = [simulate_context(context_observables(c, i), data_state) for i in range(c.l)]
        return CabelloReport(c.name, exps, list(c.signs), c.l, d, "exact")
    rng = np.random.default_rng(seed)
    counts = {}
    for i in range(c.l):
        dist = outcome_distribution(build_context_circuit(context_observables(c, i)), data_state)
        counts[i] = sample_counts(dist, shots, rng)
    rep = score_counts(c, counts, d)
    rep.mode, rep.seed = "shots", seed
    return rep


def _parse_histograms(c: Configuration, counts) -> dict[int, dict[str, int]]:
    if isinstance(counts, dict):
        items = {int(k): v for k, v in counts.items()}
    else:
        items = {}
        for rec in counts:
            items[int(rec["line_id"])] = rec["counts"]
            total = sum(rec["counts"].values())
            if "shots" in rec and rec["shots"] != total:
                raise CabelloError(f"context {rec['line_id']}: shots {rec['shots']} != {total}")
    missing = [i for i in range(c.l) if i not in items]
    if missing:
        raise CabelloError(f"missing counts for contexts {missing[:10]}")
    for i, hist in items.items():
        width = len(c.contexts[i]) if 0 <= i < c.l else -1
        if width < 0:
            raise CabelloError(f"unknown context id {i}")
        for key, n in hist.items():
            if len(key) != width or set(key) - {"0", "1"} or int(n) < 0:
                raise CabelloError(f"context {i}: malformed histogram entry {key!r}: {n!r}")
        if not sum(hist.values()):
            raise CabelloError(f"context {i}: empty histogram")
    return items


def score_counts(c: Configuration, counts, d: int | None = None) -> CabelloReport:
    """Empirical chi from per-context outcome histograms.

    ``counts`` is either {line_id: {bitstring: count}} or a list of records
    {"line_id", "shots", "counts"} as read from JSON.
    """
    hists = _parse_histograms(c, counts)
    exps, shots = [], []
    for i in range(c.l):
        h = hists[i]
        n = sum(h.values())
        exps.append(sum(k * (-1) ** key.count("1") for key, k in h.items()) / n)
        shots.append(n)
    return CabelloReport(c.name, exps, list(c.signs), c.l, d, "counts", shots)


def counts_records(counts: dict[int, dict[str, int]]) -> list[dict]:
    return [{"line_id": i, "shots": sum(h.values()), "counts": dict(sorted(h.items()))}
            for i, h in sorted(counts.items())]
