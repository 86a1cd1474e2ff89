"""Command-line front end.

Subcommands::

    hexcontext space --n 3
    hexcontext degree TARGET [--seed S] [--budget B] [--rank-limit R] [--all-optima]
    hexcontext verify SUITE|all
    hexcontext cabello emit TARGET
    hexcontext cabello simulate TARGET [--shots K] [--state 000] [--d D] [--write-counts]
    hexcontext cabello score TARGET COUNTS [--d D]

Every run writes its files under ``--out`` (default: $HEXCONTEXT_OUT, else
./hexcontext-out) together with ``manifest_<command>_<subject>.json`` listing
a sha256 digest of each file it wrote.

Exit codes:
    0  success (degree: certificate exact; verify: every claim passed)
    1  degree not exact, or some verify claim failed
    2  command-line usage error
    3  unknown target
    4  unreadable or malformed input file
    5  degree computation refused (rank above --rank-limit)
    6  Cabello bounds need a degree that could not be certified (pass --d)
    7  counts missing for some context
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .cabello import (
    CabelloError,
    build_context_circuit,
    chi_bounds,
    context_observables,
    counts_records,
    emit_qasm,
    estimate_chi,
    outcome_distribution,
    sample_counts,
    score_counts,
)
from .contextuality import (
    DegreeError,
    certify_degree,
    match_classical_hexagon,
    optimal_violated_sets,
)
from .hexagon import enumerate_classical_hexagons
from .pauli import PauliError, to_text, y_count
from .polar import space
from .targets import TargetError, resolve_target
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_TARGET = 3
EXIT_INPUT = 4
EXIT_RANK = 5
EXIT_NO_DEGREE = 6
EXIT_NO_COUNTS = 7

OUT_ENV = "HEXCONTEXT_OUT"
DEFAULT_SEED = 0
DEFAULT_BUDGET = 200


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


@dataclass
class RunManifest:
    command: str
    parameters: dict
    seed: int | None
    version: str = __version__
    wall_time_s: float = 0.0
    outputs: dict[str, str] = field(default_factory=dict)

    def record(self, out_dir: Path, rel: str, data: str) -> Path:
        path = out_dir / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(data)
        self.outputs[rel] = hashlib.sha256(data.encode()).hexdigest()
        return path

    def write(self, out_dir: Path, tag: str) -> Path:
        path = out_dir / f"manifest_{tag}.json"
        path.write_text(json.dumps(asdict(self), indent=2, sort_keys=True))
        return path


def _safe(name: str) -> str:
    return "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in Path(name).name)


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _target(name: str):
    try:
        return resolve_target(name)
    except TargetError as exc:
        code = EXIT_INPUT if Path(name).is_file() else EXIT_TARGET
        raise CliError(code, str(exc)) from exc
    except OSError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from exc


# -- space --------------------------------------------------------------------------

def cmd_space(args, man: RunManifest, out: Path) -> int:
    n = args.n
    if not 2 <= n <= 4:
        raise CliError(EXIT_USAGE, "--n must be 2, 3 or 4")
    sp = space(n)
    rows = [["id", "observable", "symmetric"]]
    rows += [[p, to_text(p, n), int(y_count(p, n) % 2 == 0)] for p in sp.points]
    man.record(out, f"w{n}_points.csv", _csv(rows))
    rows = [["line_id", "p1", "p2", "p3", "sign"]]
    rows += [[i, *(to_text(p, n) for p in ln.points), ln.sign] for i, ln in enumerate(sp.lines)]
    man.record(out, f"w{n}_lines.csv", _csv(rows))
    summary = {"n": n, "points": len(sp.points), "lines": len(sp.lines),
               "negative_lines": sum(ln.negative for ln in sp.lines)}
    if n == 3:
        rows = [["plane_id", *(f"p{k}" for k in range(1, 8))]]
        rows += [[i, *(to_text(p, n) for p in pl.points)] for i, pl in enumerate(sp.planes)]
        man.record(out, "w3_planes.csv", _csv(rows))
        summary["planes"] = len(sp.planes)
    text = (json.dumps(summary, indent=2, sort_keys=True) if args.format == "json"
            else _csv([list(summary), list(summary.values())]))
    man.record(out, f"w{n}_summary.{args.format}", text)
    print(json.dumps(summary, sort_keys=True))
    return EXIT_OK


# -- degree ---------------------------------------------------------------------------

def cmd_degree(args, man: RunManifest, out: Path) -> int:
    t = _target(args.target)
    c = t.config
    cert = certify_degree(
        c, t.predicted, t.covers() if t.covers else (), seed=args.seed,
        budget=args.budget, rank_limit=args.rank_limit or 30,
    )
    if t.match_hexagons:
        cert.matched_hexagon_id = match_classical_hexagon(
            c, cert.violated, enumerate_classical_hexagons())
    payload = cert.to_dict()
    if args.all_optima:
        try:
            d, total, sets = optimal_violated_sets(c, args.rank_limit or 30)
        except DegreeError as exc:
            raise CliError(EXIT_RANK, str(exc)) from exc
        payload["optima_count"] = total
        payload["optima"] = [list(v) for v in sets]
    stem = f"degree_{_safe(c.name)}"
    if args.format == "json":
        man.record(out, f"{stem}.json", json.dumps(payload, indent=2, sort_keys=True))
    else:
        keys = ["config_id", "p", "l", "upper", "lower", "exact", "lower_method", "method",
                "seed", "assignment_hex", "matched_hexagon_id"]
        man.record(out, f"{stem}.csv", _csv([keys, [payload[k] for k in keys]]))
    print(json.dumps({k: payload[k] for k in ("config_id", "upper", "lower", "exact",
                                               "lower_method", "matched_hexagon_id")}))
    return EXIT_OK if cert.exact else EXIT_FAILED


# -- verify ---------------------------------------------------------------------------

def cmd_verify(args, man: RunManifest, out: Path) -> int:
    claims = run_suite(args.suite, seed=args.seed)
    for cl in claims:
        extra = f" ({cl.detail})" if cl.detail else ""
        print(f"{'PASS' if cl.passed else 'FAIL'} [{cl.suite}] {cl.name}{extra}")
    stem = f"verify_{_safe(args.suite)}"
    if args.format == "json":
        body = {"suite": args.suite, "passed": all(cl.passed for cl in claims),
                "claims": [cl.to_dict() for cl in claims]}
        man.record(out, f"{stem}.json", json.dumps(body, indent=2, sort_keys=True))
    else:
        rows = [["suite", "claim", "passed", "detail"]]
        rows += [[cl.suite, cl.name, int(cl.passed), cl.detail] for cl in claims]
        man.record(out, f"{stem}.csv", _csv(rows))
    return EXIT_OK if all(cl.passed for cl in claims) else EXIT_FAILED


# -- cabello ----------------------------------------------------------------------------

def _degree_for_bounds(t, args) -> int:
    if args.d is not None:
        return args.d
    cert = certify_degree(t.config, t.predicted, t.covers() if t.covers else (),
                          seed=args.seed, budget=args.budget,
                          rank_limit=args.rank_limit or 30)
    if not cert.exact:
        raise CliError(EXIT_NO_DEGREE,
                       f"degree only bracketed in [{cert.lower}, {cert.upper}]; pass --d")
    return cert.upper


def _write_report(rep, args, man: RunManifest, out: Path, stem: str) -> None:
    if args.format == "json":
        man.record(out, f"{stem}.json", rep.to_json())
    else:
        man.record(out, f"{stem}.csv", rep.to_csv())
    print(json.dumps({"config_id": rep.config_id, "mode": rep.mode, "chi": rep.chi,
                      "chi_integer": rep.chi_integer, "N": rep.N, "hv_bound": rep.hv_bound,
                      "violates_hv": rep.violates_hv}))


def _read_counts(path: Path) -> list[dict]:
    try:
        if path.is_dir():
            recs = []
            for f in sorted(path.glob("*.json")):
                data = json.loads(f.read_text())
                recs.extend(data if isinstance(data, list) else [data])
            return recs
        data = json.loads(path.read_text())
        return data if isinstance(data, list) else [data]
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(EXIT_INPUT, f"cannot read counts from {path}: {exc}") from exc


def cmd_cabello(args, man: RunManifest, out: Path) -> int:
    t = _target(args.target)
    c = t.config
    name = _safe(c.name)
    if args.action == "emit":
        for i in range(c.l):
            circ = build_context_circuit(context_observables(c, i))
            man.record(out, f"qasm/{name}_{i}.qasm", emit_qasm(circ))
        print(f"wrote {c.l} circuits to {out / 'qasm'}")
        return EXIT_OK
    d = _degree_for_bounds(t, args)
    N, hv = chi_bounds(c, d)
    try:
        if args.action == "simulate":
            state = args.state or None
            if args.shots:
                rep = estimate_chi(c, d, shots=args.shots, seed=args.seed, data_state=state)
            else:
                rep = estimate_chi(c, d, data_state=state)
            if args.write_counts:
                rng = np.random.default_rng(args.seed)
                counts = {
                    i: sample_counts(outcome_distribution(
                        build_context_circuit(context_observables(c, i)), state),
                        args.shots or 8192, rng)
                    for i in range(c.l)
                }
                man.record(out, f"counts_{name}.json",
                           json.dumps(counts_records(counts), indent=2, sort_keys=True))
            _write_report(rep, args, man, out, f"cabello_{name}_{rep.mode}")
        else:
            recs = _read_counts(Path(args.counts))
            try:
                rep = score_counts(c, recs, d)
            except CabelloError as exc:
                code = EXIT_NO_COUNTS if "missing counts" in str(exc) else EXIT_INPUT
                raise CliError(code, str(exc)) from exc
            _write_report(rep, args, man, out, f"cabello_{name}_score")
    except CabelloError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from exc
    print(f"bounds: quantum {N}, noncontextual {hv}")
    return EXIT_OK


# -- entry point --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, default=None,
                        help=f"output directory (default ${OUT_ENV} or ./hexcontext-out)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="local-search restarts")
    common.add_argument("--rank-limit", type=int, default=None,
                        help="largest rank enumerated exhaustively (default 30)")

    p = argparse.ArgumentParser(prog="hexcontext", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("space", parents=[common], help="catalog W(2n-1,2)")
    s.add_argument("--n", type=int, default=3)

    s = sub.add_parser("degree", parents=[common], help="certify a degree of contextuality")
    s.add_argument("target")
    s.add_argument("--all-optima", action="store_true",
                   help="also list every minimum violated set (exhaustive rank only)")

    s = sub.add_parser("verify", parents=[common], help="run a claim suite")
    s.add_argument("suite", choices=sorted(SUITES) + ["all"])

    s = sub.add_parser("cabello", parents=[common], help="Cabello inequality circuits")
    s.add_argument("action", choices=("emit", "simulate", "score"))
    s.add_argument("target")
    s.add_argument("counts", nargs="?", help="counts JSON file or directory (score)")
    s.add_argument("--d", type=int, default=None, help="degree used for the bound N - 2d")
    s.add_argument("--shots", type=int, default=None, help="sample this many shots per context")
    s.add_argument("--exact", action="store_true", help="exact expectations (the default)")
    s.add_argument("--state", default=None, help="data-register basis state, e.g. 010")
    s.add_argument("--write-counts", action="store_true",
                   help="also write sampled counts in the ingestion format")
    return p


COMMANDS = {"space": cmd_space, "degree": cmd_degree, "verify": cmd_verify, "cabello": cmd_cabello}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "cabello" and args.action == "score" and not args.counts:
        print("error: cabello score needs a COUNTS path", file=sys.stderr)
        return EXIT_NO_COUNTS
    out = args.out or Path(os.environ.get(OUT_ENV, "hexcontext-out"))
    out.mkdir(parents=True, exist_ok=True)
    params = {k: (str(v) if isinstance(v, Path) else v) for k, v in vars(args).items()
              if k not in ("out",)}
    man = RunManifest(args.command, params, args.seed)
    t0 = time.perf_counter()
    try:
        code = COMMANDS[args.command](args, man, out)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = exc.code
    except (PauliError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_INPUT
    man.wall_time_s = round(time.perf_counter() - t0, 3)
    man.parameters["exit_code"] = code
    subject = getattr(args, "target", None) or getattr(args, "suite", None) or f"n{args.n}"
    tag = "_".join(filter(None, [args.command, getattr(args, "action", None), _safe(subject)]))
    man.write(out, tag)
    return code


if __name__ == "__main__":
    sys.exit(main())
