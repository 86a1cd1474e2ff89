"""Pattern census of hexagon copies against doilies, quadrics and planes, as JSON.

    python3 scripts/atlas_report.py [--copies 5] [--out atlas.json]
"""

import argparse
import json
import sys
from collections import Counter
from dataclasses import asdict, dataclass

from hexcontext import atlas, hexagon
from hexcontext.polar import enumerate_linear_doilies, enumerate_quadratic_doilies, enumerate_quadrics


@dataclass
class AtlasRun:
    copies: int = 5  # classical copies to examine; each brings its 63 skew siblings
    out: str | None = None


def census(cfg: AtlasRun) -> dict:
    lin, quad = enumerate_linear_doilies(), enumerate_quadratic_doilies()
    hyp, ell = enumerate_quadrics(3)
    classical = hexagon.enumerate_classical_hexagons()[:cfg.copies]
    report = {"config": asdict(cfg), "classical": [], "skew_vs_linear": Counter(),
              "skew_vs_quadratic": Counter()}
    for h in classical:
        classes = atlas.classify_planes(h)
        report["classical"].append({
            "planes": dict(Counter(p.kind for p in classes)),
            "spreads": dict(Counter(s.kind for s in atlas.enumerate_plane_spreads(h))),
            "doilies": dict(Counter(atlas.classify_doily_hexagon(d, h).pattern
                                    for d in lin + quad)),
            "quadrics": dict(Counter(atlas.classify_hexagon_quadric(h, q).pattern
                                     for q in hyp + ell)),
        })
        for ref in h.triples:
            sk = hexagon.classical_to_skew(h, ref)
            report["skew_vs_linear"].update(atlas.classify_doily_hexagon(d, sk).pattern
                                            for d in lin)
            report["skew_vs_quadratic"].update(atlas.classify_doily_hexagon(d, sk).pattern
                                               for d in quad)
    report["skew_vs_linear"] = dict(report["skew_vs_linear"])
    report["skew_vs_quadratic"] = dict(report["skew_vs_quadratic"])
    return report


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--copies", type=int, default=5)
    ap.add_argument("--out")
    a = ap.parse_args(argv)
    text = json.dumps(census(AtlasRun(a.copies, a.out)), indent=2)
    if a.out:
        with open(a.out, "w") as f:
            f.write(text + "\n")
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
