"""End-to-end checks of the deform-kernel command line tool and the shipped schema."""

import glob
import json
import os
import subprocess
import sys
import tempfile

import jsonschema

BINARY, ROOT = sys.argv[1], sys.argv[2]
failures = []


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


def run(args, env):
    return subprocess.run([BINARY] + args, capture_output=True, text=True, env=env)


with tempfile.TemporaryDirectory() as tmp:
    env = dict(os.environ, XDG_CACHE_HOME=os.path.join(tmp, "cache"))
    schema = json.load(open(os.path.join(ROOT, "schemas", "scenario.schema.json")))
    validator = jsonschema.Draft202012Validator(schema)
    corpus = sorted(glob.glob(os.path.join(ROOT, "scenarios", "*.json")))
    check(len(corpus) >= 10, "corpus has at least ten scenarios")

    reports = {}
    for path in corpus:
        name = os.path.basename(path)
        check(not list(validator.iter_errors(json.load(open(path)))), name + " matches the JSON schema")
        first = run(["run", path, "--no-cache"], env)
        second = run(["run", path, "--no-cache"], env)
        check(first.returncode == 0, name + " runs")
        check(first.stdout == second.stdout, name + " report is byte-identical across runs")
        cold = run(["run", path], env)
        warm = run(["run", path], env)
        check(cold.stdout == first.stdout and warm.stdout == first.stdout, name + " cached report is identical")
        check("from cache" in warm.stderr, name + " second run is served from the cache")
        reports[name] = json.loads(first.stdout)
        out = os.path.join(tmp, name)
        with open(out, "w") as f:
            f.write(first.stdout)
        check(run(["verify", out], env).returncode == 0, name + " report verifies")

    cache_files = os.listdir(os.path.join(tmp, "cache", "deform-kernel"))
    check(len(cache_files) == len(corpus) and all(f.endswith(".json") for f in cache_files),
          "cache holds one entry per scenario and no temporary files")

    check(reports["quartic_triple.json"]["results"]["ti"]["triple"][2] == 1, "quartic T1 = 1")
    check(reports["conic_triple.json"]["results"]["ti"]["triple"][1:4] == [1, 0, 0], "conic (T0,T1,T2) = (1,0,0)")
    check(reports["nondgl_a1.json"]["results"]["feasibility"]["verdict"] == "infeasible", "Theta -> N is infeasible")
    check(reports["principal_parts_a1.json"]["results"]["feasibility"]["verdict"] == "feasible", "P -> L is feasible")
    check(reports["sl2_axioms.json"]["results"]["axioms"]["pass"], "sl2 axioms pass")

    rep = reports["quartic_triple.json"]
    rep["certificates"]["sequences"][0]["ranks"][4] += 1
    edited = os.path.join(tmp, "edited.json")
    json.dump(rep, open(edited, "w"))
    res = run(["verify", edited], env)
    check(res.returncode == 4 and "segment" in res.stderr, "edited rank is rejected naming the segment")

    rep = json.loads(open(os.path.join(tmp, "quartic_triple.json")).read())
    rep["report_hash"] = "0" * 64
    json.dump(rep, open(edited, "w"))
    res = run(["verify", edited], env)
    check(res.returncode == 4 and "report hash mismatch" in res.stderr, "hash tampering is detected")

    invalid = {
        "unknown field": {"kind": "p1_triple", "d": 2, "colour": "red"},
        "float rational": {"kind": "cocone", "complex": {"dims": [1]}, "section": [0.5]},
        "unknown kind": {"kind": "torus"},
        "misplaced task": {"kind": "p1_triple", "d": 2, "tasks": ["feasibility"]},
    }
    for what, doc in invalid.items():
        path = os.path.join(tmp, "invalid.json")
        json.dump(doc, open(path, "w"))
        res = run(["run", path, "--no-cache"], env)
        check(res.returncode == 2 and "schema error" in res.stderr, what + " exits with 2")
        check(bool(list(validator.iter_errors(doc))), what + " is rejected by the JSON schema")

    res = run(["run", os.path.join(ROOT, "scenarios", "cusp_a2.json"), "--window", "30", "--no-cache"], env)
    check(res.returncode == 3 and "suggested window" in res.stderr, "stabilization failure exits with 3")

    outdir = os.path.join(tmp, "out")
    res = run(["run", os.path.join(ROOT, "scenarios", "sl2_axioms.json"), "--out", outdir, "--format", "table"], env)
    check(res.returncode == 0 and os.path.exists(os.path.join(outdir, "sl2_axioms.report.txt")), "--out writes the table")

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
