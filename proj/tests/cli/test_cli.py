#!/usr/bin/env python3
"""CLI contract checks: exit codes, CSV output, and JSON reports against the schema."""

import csv
import io
import json
import subprocess
import sys

import jsonschema

GPSEQ = sys.argv[1]
SCHEMA = json.load(open(sys.argv[2]))
validator = jsonschema.Draft202012Validator(SCHEMA)
failures = []


def run(*args, env=None):
    return subprocess.run([GPSEQ, *args], capture_output=True, text=True, env=env)


def check(name, cond, detail=""):
    print(("ok   " if cond else "FAIL ") + name + (f": {detail}" if detail and not cond else ""))
    if not cond:
        failures.append(name)


def report(name, *args, rc=0):
    p = run(*args, "--format", "json")
    check(name + " exit", p.returncode == rc, f"rc={p.returncode} stderr={p.stderr.strip()}")
    try:
        doc = json.loads(p.stdout)
    except json.JSONDecodeError as e:
        check(name + " json", False, str(e))
        return None
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
    check(name + " schema", not errors, "; ".join(e.message for e in errors[:3]))
    return doc


# eval, csv by default
p = run("eval", "--expr", "floor(sqrt(2)*n)", "--n", "1..5")
check("eval exit", p.returncode == 0, p.stderr)
rows = list(csv.DictReader(io.StringIO(p.stdout)))
check("eval values", [r["value"] for r in rows] == ["1", "2", "4", "5", "7"], p.stdout)
check("eval n column", [r["n"] for r in rows] == ["1", "2", "3", "4", "5"], p.stdout)

doc = report("eval json", "eval", "--expr", "frac(n/3) + n", "--n", "0..6")
if doc:
    check("eval exact", [v["exact"] for v in doc["result"]["values"]][:4] == ["0", "4/3", "8/3", "3"],
          json.dumps(doc["result"]["values"][:4]))

# parse failures and other validation errors
p = run("eval", "--expr", "floor(n", "--n", "1..3")
check("syntax error exit 2", p.returncode == 2, f"rc={p.returncode}")
check("syntax error offset", "offset 7" in p.stderr, p.stderr)
p = run("eval", "--expr", "sqrt(4)*n", "--n", "1..3")
check("unsupported constant exit 2", p.returncode == 2, f"rc={p.returncode}")
p = run("eval", "--n", "1..3")
check("missing option exit 2", p.returncode == 2, f"rc={p.returncode}")
p = run("frobnicate")
check("unknown subcommand exit 2", p.returncode == 2, f"rc={p.returncode}")

doc = report("expand", "expand", "--expr", "3*frac(n/2) - 1/2")
if doc:
    check("expand degree", doc["result"]["degree"] >= 0)

doc = report("family", "family", "--family", "sturmian", "--alpha", "(sqrt(5)-1)/2", "--n", "1..20")
if doc:
    check("sturmian binary", all(v["exact"] in ("0", "1") for v in doc["result"]["values"]))

doc = report("classify chi4 n^2", "classify", "--family", "chi-power", "--q", "4", "--char", "1", "--a", "2",
             "--N", "10000")
if doc:
    r = doc["result"]
    check("classify variant", r["variant"] == "Polynomial", r["variant"])
    check("classify Q", r.get("Q") == 4, str(r.get("Q")))
    check("classify a", r.get("a") == 2, str(r.get("a")))
    check("classify table", r.get("chi") == ["0", "1", "0", "-1"], str(r.get("chi")))
    check("classify config echo", doc["config"]["N"] == 10000 and doc["config"]["theta"] == "1/20")

doc = report("classify fp", "classify", "--family", "fp", "--primes", "3,7", "--completely", "--N", "16384",
             "--dilate", "3")
if doc:
    r = doc["result"]
    check("fp variant", r["variant"] == "AlmostEverywhereZero", r["variant"])
    check("fp completely multiplicative", r["completely_multiplicative"]["holds"])
    check("fp dilation", r["dilation"]["holds"])

doc = report("classify geometric", "classify", "--family", "geometric", "--A", "1,2,4,8", "--N", "4096")
if doc:
    w = doc["result"]["completely_multiplicative"]["witness"]
    check("geometric witness", w is not None and (w["n"], w["m"]) == (2, 4), json.dumps(w))
    check("geometric multiplicative", doc["result"]["multiplicative"]["holds"])

doc = report("equi", "equi", "--g", "0", "--g", "sqrt(2)", "--N", "1000", "--K", "10", "--C", "10")
if doc:
    check("equi no character", doc["result"]["character"] is None)

doc = report("equi rational", "equi", "--g", "0", "--g", "1/3", "--N", "1000", "--K", "3", "--C", "1")
if doc:
    c = doc["result"]["character"]
    check("equi rational character", c is not None and c["norm"] == "0", json.dumps(c))

doc = report("primes list", "primes", "list", "--X", "10")
if doc:
    check("primes list", doc["result"]["primes"] == [11, 13, 17, 19], json.dumps(doc["result"]["primes"]))

p = run("primes", "list", "--X", "10", "--Q", "4", "--r", "2")
check("bad residue exit 2", p.returncode == 2, f"rc={p.returncode}")

doc = report("primes rhin", "primes", "rhin", "--poly", "0,1/3", "--X", "1000", "--lo", "0", "--hi", "1/3")
if doc:
    check("rhin hypothesis flag", doc["result"]["hypothesis"] is False)

doc = report("primes census", "primes", "census", "--g", "0", "--g", "sqrt(2)", "--N", "20", "--X", "200",
             "--K", "2", "--C", "1")
if doc:
    check("census all-or-none", doc["result"]["lambda_zero_all_or_none"])

report("primes joint-dense", "primes", "joint-dense", "--g", "0", "--g", "sqrt(2)", "--m", "101", "--N", "300",
       "--delta", "1/5")

doc = report("theorem-a", "theorem-a", "--battery", "geometric,fp,zero")
if doc:
    check("theorem-a dichotomy", doc["result"]["all_in_dichotomy"])

p = run("theorem-a", "--battery", "")
check("empty battery exit 2", p.returncode == 2, f"rc={p.returncode}")

# determinism and the refinement cap override
a = run("classify", "--family", "chi-power", "--q", "5", "--char", "2", "--a", "1", "--N", "2000")
b = run("classify", "--family", "chi-power", "--q", "5", "--char", "2", "--a", "1", "--N", "2000")
check("deterministic", a.stdout == b.stdout and a.returncode == 0)
env = {"GPSEQ_PRECISION_BITS": "512", "PATH": "/usr/bin:/bin"}
p = run("expand", "--expr", "n", "--format", "json", env=env)
check("precision env", p.returncode == 0 and json.loads(p.stdout)["config"]["refinement_cap_bits"] == 512,
      p.stdout[:200])

if failures:
    print(f"{len(failures)} failure(s)")
    sys.exit(1)
print("all CLI checks passed")
