#!/usr/bin/env python3
"""End-to-end checks of the tlbs command line. Usage: cli_test.py <tlbs binary>"""

import csv
import json
import os
import subprocess
import sys
import tempfile
import xml.etree.ElementTree as ET

TLBS = sys.argv[1]
failures = 0


def run(*args):
    return subprocess.run([TLBS, *map(str, args)], capture_output=True, text=True)


def check(name, cond, extra=""):
    global failures
    print(("ok   " if cond else "FAIL ") + name + (f"  ({extra})" if extra and not cond else ""))
    if not cond:
        failures += 1


with tempfile.TemporaryDirectory() as tmp:
    p = lambda name: os.path.join(tmp, name)

    r = run("gen", "--kind", "random1", "--seed", 4, "--out", p("a.json"))
    run("gen", "--kind", "random1", "--seed", 4, "--out", p("b.json"))
    check("gen exits 0", r.returncode == 0, r.stderr)
    check("gen is byte-identical for a fixed seed",
          open(p("a.json"), "rb").read() == open(p("b.json"), "rb").read())
    scen = json.load(open(p("a.json")))
    check("random1 has 10 distinct ROIs", len({tuple(c) for c in scen["rois"]}) == 10)

    run("gen", "--kind", "semi2", "--seed", 2, "--out", p("semi2.json"))
    semi = json.load(open(p("semi2.json")))
    rows = semi["grid"]["rows"]
    north = sum(1 for r_, _ in semi["rois"] if r_ < rows // 2)
    check("semi2 puts 5 ROIs in each half", north == 5 and len(semi["rois"]) == 10)

    r = run("solve", "--scenario", p("semi2.json"), "--out", p("sol.json"), "--iters", 300,
            "--svg", p("sol.svg"), "--svg-hull")
    check("solve exits 0", r.returncode == 0, r.stderr)
    check("solve prints its metrics", r.stdout.startswith("max_len_m="), r.stdout)
    r = run("validate", "--scenario", p("semi2.json"), "--solution", p("sol.json"),
            "--out", p("report.json"))
    check("solver output validates", r.returncode == 0, r.stdout)
    check("report is written", json.load(open(p("report.json")))["passed"] is True)

    svg = ET.parse(p("sol.svg")).getroot()
    ns = "{http://www.w3.org/2000/svg}"
    lines = [e for e in svg.iter(ns + "polyline") if e.get("class") == "uav"]
    check("svg parses with one polyline per UAV", len(lines) == 2)

    # Drop the station used by a landing and expect a C7 report.
    run("gen", "--kind", "random1", "--seed", 1, "--out", p("r1.json"))
    run("solve", "--scenario", p("r1.json"), "--out", p("r1sol.json"), "--iters", 200)
    sol = json.load(open(p("r1sol.json")))
    if sol["stations"]:
        sol["stations"] = sol["stations"][1:]
        sol["nc"] = len(sol["stations"])
        json.dump(sol, open(p("broken.json"), "w"))
        r = run("validate", "--scenario", p("r1.json"), "--solution", p("broken.json"))
        report = json.loads(r.stdout)
        ids = {v["constraint"] for v in report["violations"]}
        check("broken solution fails with C7", r.returncode != 0 and "C7" in ids, r.stdout)
    else:
        check("seed 1 needs a station", False)

    r = run("oracle", "--scenario", p("a.json"), "--out", p("oracle.json"))
    check("oracle exits 0", r.returncode == 0, r.stderr)
    orc = json.load(open(p("oracle.json")))
    check("oracle document has one path", len(orc["paths"]) == 1)

    run("gen", "--kind", "semi4", "--seed", 3, "--out", p("semi4.json"))
    r = run("oracle", "--scenario", p("semi4.json"), "--out", p("o4.json"), "--max-rois", 5)
    check("oracle refusal exits 3", r.returncode == 3, r.stderr)

    r = run("gen", "--kind", "semi3", "--out", p("x.json"))
    check("bad kind is a usage error", r.returncode == 2)
    r = run("solve", "--scenario", p("a.json"))
    check("missing required option is a usage error", r.returncode == 2)
    r = run("--help")
    check("--help exits 0", r.returncode == 0 and "solve" in r.stdout)
    r = run("solve", "--scenario", p("nope.json"), "--out", p("o.json"))
    check("missing input file exits 1", r.returncode == 1)
    json.dump({"alpah": 2}, open(p("badparams.json"), "w"))
    r = run("solve", "--scenario", p("a.json"), "--params", p("badparams.json"), "--out", p("o.json"))
    check("unknown parameter key exits 1", r.returncode == 1 and "alpah" in r.stderr)

    r = run("bench", "--mode", "gap", "--kind", "random1", "--seeds", 20, "--iters", 30,
            "--out-csv", p("gap.csv"), "--out-stats", p("gap.json"))
    check("bench gap exits 0", r.returncode == 0, r.stderr)
    rows_ = list(csv.DictReader(open(p("gap.csv"))))
    check("bench writes 20 rows", len(rows_) == 20)
    check("bench rows cover seeds 1..20", [int(x["seed"]) for x in rows_] == list(range(1, 21)))
    stats = json.load(open(p("gap.json")))
    check("bench stats cover 20 seeds", stats["seeds"] == 20)

    r = run("bench", "--mode", "sweep", "--kind", "semi2", "--checkpoints", 1, 10, 100,
            "--out-csv", p("sweep.csv"), "--no-tuning")
    sweep = list(csv.DictReader(open(p("sweep.csv"))))
    check("sweep has one row per checkpoint", r.returncode == 0 and len(sweep) == 3, r.stderr)
    r = run("bench", "--mode", "timing", "--kind", "semi2", "--timing-iters", 30, "--no-tuning",
            "--out-csv", p("timing.csv"))
    timing = list(csv.DictReader(open(p("timing.csv"))))
    check("timing has 30 samples per side", r.returncode == 0 and len(timing) == 60, r.stderr)

print(f"{failures} failures")
sys.exit(1 if failures else 0)
