import csv
import json

import pytest

from hexcontext import cli
from hexcontext.cabello import parse_qasm
from hexcontext.contextuality import DegreeCertificate, violated_lines


def run(tmp_path, *argv):
    return cli.main([*argv, "--out", str(tmp_path)])


def bracketed(c, *args, **kwargs):
    """Stand-in certifier that only manages a bracket."""
    v = violated_lines(c, 0)
    return DegreeCertificate(c.name, c.p, c.l, 0, v, len(v), 1, "trivial", "stub")


def manifest(tmp_path, tag):
    return json.loads((tmp_path / f"manifest_{tag}.json").read_text())


class TestSpace:
    def test_n3(self, tmp_path, capsys):
        assert run(tmp_path, "space", "--n", "3") == 0
        summary = json.loads((tmp_path / "w3_summary.json").read_text())
        assert summary == {"n": 3, "points": 63, "lines": 315, "negative_lines": 90, "planes": 135}
        with open(tmp_path / "w3_lines.csv") as f:
            rows = list(csv.DictReader(f))
        assert len(rows) == 315 and sum(r["sign"] == "-1" for r in rows) == 90

    def test_n2_csv(self, tmp_path):
        assert run(tmp_path, "space", "--n", "2", "--format", "csv") == 0
        rows = (tmp_path / "w2_summary.csv").read_text().splitlines()
        assert dict(zip(rows[0].split(","), rows[1].split(","))) == {
            "n": "2", "points": "15", "lines": "15", "negative_lines": "3"}

    def test_out_of_range(self, tmp_path):
        assert run(tmp_path, "space", "--n", "5") == cli.EXIT_USAGE

    def test_manifest_digests(self, tmp_path):
        run(tmp_path, "space", "--n", "2")
        m = manifest(tmp_path, "space_n2")
        assert set(m["outputs"]) == {"w2_points.csv", "w2_lines.csv", "w2_summary.json"}
        assert m["parameters"]["exit_code"] == 0 and m["seed"] == 0


class TestDegree:
    @pytest.mark.parametrize("target,degree", [("doily", 3), ("grid", 1), ("pentagram", 1)])
    def test_small(self, tmp_path, target, degree):
        assert run(tmp_path, "degree", target) == 0
        cert = json.loads((tmp_path / f"degree_{target}.json").read_text())
        assert cert["exact"] and cert["upper"] == cert["lower"] == degree

    def test_all_optima(self, tmp_path):
        assert run(tmp_path, "degree", "linear-doily:4", "--all-optima") == 0
        cert = json.loads((tmp_path / "degree_linear-doily_4.json").read_text())
        assert cert["optima_count"] == 20 and cert["matched_hexagon_id"] is not None

    def test_w52(self, tmp_path):
        assert run(tmp_path, "degree", "w52") == 0
        cert = json.loads((tmp_path / "degree_w52.json").read_text())
        assert (cert["upper"], cert["lower"], cert["exact"]) == (63, 63, True)
        assert cert["matched_hexagon_id"] is not None

    def test_lines_file(self, tmp_path):
        f = tmp_path / "mine.txt"
        f.write_text("# a grid\nIZ ZI ZZ\nXI IX XX\nXZ ZX YY\nIZ-XI-XZ\nZI IX ZX\nZZ XX YY\n")
        assert run(tmp_path, "degree", str(f), "--format", "csv") == 0
        rows = list(csv.DictReader(open(tmp_path / "degree_mine.csv")))
        assert rows[0]["upper"] == "1"

    def test_unknown_target(self, tmp_path):
        assert run(tmp_path, "degree", "no-such-thing") == cli.EXIT_TARGET
        assert run(tmp_path, "degree", "hexcomp:99999") == cli.EXIT_TARGET

    def test_bad_file(self, tmp_path):
        f = tmp_path / "bad.txt"
        f.write_text("XI ZI YI\n")
        assert run(tmp_path, "degree", str(f)) == cli.EXIT_INPUT

    def test_rank_refused(self, tmp_path):
        assert run(tmp_path, "degree", "elliptic:YYY", "--all-optima",
                   "--rank-limit", "10") == cli.EXIT_RANK

    def test_information_sets_certify_without_enumeration(self, tmp_path):
        assert run(tmp_path, "degree", "hyperbolic:III", "--rank-limit", "10",
                   "--budget", "0") == 0
        cert = json.loads((tmp_path / "degree_hyperbolic_III.json").read_text())
        assert cert["upper"] == cert["lower"] == 21
        assert cert["lower_method"].startswith("information-set")

    def test_not_exact(self, tmp_path, monkeypatch):
        monkeypatch.setattr(cli, "certify_degree", bracketed)
        assert run(tmp_path, "degree", "doily") == cli.EXIT_FAILED
        cert = json.loads((tmp_path / "degree_doily.json").read_text())
        assert not cert["exact"]

    def test_reproducible(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        cli.main(["degree", "hexcomp:5", "--seed", "3", "--budget", "10", "--out", str(a)])
        cli.main(["degree", "hexcomp:5", "--seed", "3", "--budget", "10", "--out", str(b)])
        ma, mb = manifest(a, "degree_hexcomp_5"), manifest(b, "degree_hexcomp_5")
        assert ma["outputs"] == mb["outputs"]


class TestVerify:
    def test_suite(self, tmp_path, capsys):
        assert run(tmp_path, "verify", "planes") == 0
        out = capsys.readouterr().out
        assert out.count("PASS") == 3 and "FAIL" not in out
        body = json.loads((tmp_path / "verify_planes.json").read_text())
        assert body["passed"] and len(body["claims"]) == 3

    def test_unknown_suite(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            run(tmp_path, "verify", "nope")
        assert exc.value.code == cli.EXIT_USAGE


class TestCabello:
    def test_emit(self, tmp_path):
        assert run(tmp_path, "cabello", "emit", "doily") == 0
        files = sorted((tmp_path / "qasm").glob("doily_*.qasm"))
        assert len(files) == 15
        assert parse_qasm(files[0].read_text()).n_delegation == 3

    def test_simulate_exact(self, tmp_path, capsys):
        assert run(tmp_path, "cabello", "simulate", "elliptic:YYY", "--exact") == 0
        rep = json.loads((tmp_path / "cabello_elliptic_YYY_exact.json").read_text())
        assert (rep["chi_integer"], rep["N"], rep["hv_bound"]) == (45, 45, 27)
        assert "bounds: quantum 45, noncontextual 27" in capsys.readouterr().out

    def test_write_counts_then_score(self, tmp_path):
        assert run(tmp_path, "cabello", "simulate", "grid", "--shots", "64",
                   "--write-counts") == 0
        counts = tmp_path / "counts_grid.json"
        assert run(tmp_path, "cabello", "score", "grid", str(counts)) == 0
        rep = json.loads((tmp_path / "cabello_grid_score.json").read_text())
        assert rep["chi"] == 6 and rep["hv_bound"] == 4

    def test_score_directory(self, tmp_path):
        run(tmp_path, "cabello", "simulate", "grid", "--shots", "8", "--write-counts")
        d = tmp_path / "split"
        d.mkdir()
        recs = json.loads((tmp_path / "counts_grid.json").read_text())
        for r in recs:
            (d / f"{r['line_id']}.json").write_text(json.dumps(r))
        assert run(tmp_path, "cabello", "score", "grid", str(d)) == 0

    def test_missing_counts(self, tmp_path):
        assert run(tmp_path, "cabello", "score", "grid") == cli.EXIT_NO_COUNTS
        run(tmp_path, "cabello", "simulate", "grid", "--shots", "8", "--write-counts")
        recs = json.loads((tmp_path / "counts_grid.json").read_text())
        f = tmp_path / "partial.json"
        f.write_text(json.dumps(recs[:-1]))
        assert run(tmp_path, "cabello", "score", "grid", str(f)) == cli.EXIT_NO_COUNTS

    def test_unreadable_counts(self, tmp_path):
        f = tmp_path / "junk.json"
        f.write_text("{not json")
        assert run(tmp_path, "cabello", "score", "grid", str(f)) == cli.EXIT_INPUT

    def test_no_degree(self, tmp_path, monkeypatch):
        monkeypatch.setattr(cli, "certify_degree", bracketed)
        assert run(tmp_path, "cabello", "simulate", "doily") == cli.EXIT_NO_DEGREE
        assert run(tmp_path, "cabello", "simulate", "doily", "--d", "3") == 0

    def test_supplied_degree(self, tmp_path):
        assert run(tmp_path, "cabello", "simulate", "doily", "--d", "3",
                   "--format", "csv") == 0
        assert (tmp_path / "cabello_doily_exact.csv").read_text().startswith("line_id,")

    def test_bad_state(self, tmp_path):
        assert run(tmp_path, "cabello", "simulate", "doily", "--state", "0101") == cli.EXIT_INPUT

    def test_env_default_out(self, tmp_path, monkeypatch):
        monkeypatch.setenv(cli.OUT_ENV, str(tmp_path / "env"))
        assert cli.main(["space", "--n", "2"]) == 0
        assert (tmp_path / "env" / "w2_summary.json").exists()


def test_exit_codes_are_distinct():
    codes = [cli.EXIT_OK, cli.EXIT_FAILED, cli.EXIT_USAGE, cli.EXIT_TARGET, cli.EXIT_INPUT,
             cli.EXIT_RANK, cli.EXIT_NO_DEGREE, cli.EXIT_NO_COUNTS]
    assert len(set(codes)) == len(codes)
