"""Drive the command-line interface end to end.

Every subcommand reads/writes a small JSON manifold file and emits a
deterministic JSON report on stdout (byte-identical for identical input
and flags), so the CLI composes well with shell pipelines.  This script
shells out exactly as a user would: generate a manifold, validate it,
then ask for homology, the linking gram matrix, partition sums, and the
independent oracle cross-check.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

CLI = [sys.executable, "-m", "heegaard"]


def run(*args):
    proc = subprocess.run(CLI + list(args), capture_output=True, text=True)
    if proc.returncode != 0:
        raise SystemExit(f"command {' '.join(args)} failed:\n{proc.stderr}")
    return json.loads(proc.stdout)


with tempfile.TemporaryDirectory() as tmp:
    work = Path(tmp)
    lens_file = str(work / "lens_12_5.json")
    rand_file = str(work / "random.json")
    sum_file = str(work / "sum.json")

    print("== catalog + random generation ==")
    rep = run("catalog", "lens", "12", "5", "--out", lens_file)
    print(f"  wrote {Path(lens_file).name}: {rep['results']['manifold']['name']}")
    rep = run("random", "--genus", "2", "--seed", "7", "--length", "4", "--out", rand_file)
    print(f"  wrote {Path(rand_file).name}: {rep['results']['manifold']['name']}")
    rep = run("sum", lens_file, rand_file, "--out", sum_file)
    m = rep["results"]["manifold"]
    print(f"  wrote {Path(sum_file).name}: {m['name']} (genus {m['genus']})")

    print()
    print("== validate ==")
    for f in (lens_file, rand_file, sum_file):
        rep = run("validate", f)
        print(f"  {Path(f).name}: valid={rep['validation']['valid']} "
              f"genus={rep['results']['genus']} "
              f"determinant={rep['results']['determinant']}")

    print()
    print("== homology and linking ==")
    rep = run("homology", sum_file)
    print(f"  homology of the sum: {rep['results']}")
    rep = run("linking", lens_file)
    print(f"  linking lens(12,5): generator orders {rep['results']['generator_orders']}, "
          f"gram {rep['results']['gram']}")

    print()
    print("== partition sums ==")
    rep = run("partition", lens_file, "--theory", "cs", "--level", "3", "--numeric")
    r = rep["results"]
    print(f"  cs level 3: phase_sum={r['phase_sum']} numeric={r['numeric']}")
    rep = run("partition", sum_file, "--theory", "bf", "--level", "2", "--numeric")
    r = rep["results"]
    print(f"  bf level 2 on the sum: term_count={r['term_count']} numeric={r['numeric']}")

    print()
    print("== oracle cross-check ==")
    for f in (lens_file, rand_file):
        rep = run("oracle", f, "--level", "2")
        r = rep["results"]
        names = ", ".join(sorted(c["name"] for c in r["checks"]))
        print(f"  {r['name']}: ran [{names}] all_agree={r['all_agree']} "
              f"max |dev| = {r['max_abs_deviation']:.2e}")

    print()
    print("== determinism: identical invocations give identical bytes ==")
    a = subprocess.run(CLI + ["homology", lens_file], capture_output=True).stdout
    b = subprocess.run(CLI + ["homology", lens_file], capture_output=True).stdout
    print(f"  byte-identical: {a == b}")
