import importlib.util
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def load(name):
    spec = importlib.util.spec_from_file_location(name, SCRIPTS / f"{name}.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def test_degree_table(tmp_path):
    mod = load("degree_table")
    rows = mod.run(mod.DegreeRun(targets=("grid", "doily"), out=str(tmp_path / "d.csv")))
    assert [(r["target"], r["upper"]) for r in rows] == [("grid", 1), ("doily", 3)]
    assert (tmp_path / "d.csv").read_text().startswith("target,p,l,")


def test_cabello_table():
    mod = load("cabello_table")
    (row,) = mod.table(mod.CabelloRun(targets=("elliptic:YYY",)))
    assert row[:4] == ("elliptic:YYY", 9, 45, 27) and abs(row[4] - 45) < 1e-9


def test_atlas_report():
    mod = load("atlas_report")
    rep = mod.census(mod.AtlasRun(copies=1))
    assert rep["classical"][0]["doilies"] == {"P3-grid": 1344}
    assert set(rep["skew_vs_linear"]) == {"P6", "P3-grid", "P3-quadrangle", "P2-concurrent"}
