"""
The girthkit command line
=========================

Everything above is also reachable as `girthkit <subcommand>`. Graphs
travel as plain text files (header `n m directed unit|weighted`, one
edge per line), results as text or one JSON object per run, and every
randomized run prints the seed that reproduces it. This script drives
one short end-to-end tour through a temp directory.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

tmp = Path(tempfile.mkdtemp(prefix="girthkit-demo-"))


def run(*args):
    cmd = [sys.executable, "-m", "girthkit", *args]
    print(f"$ girthkit {' '.join(args)}")
    out = subprocess.run(cmd, capture_output=True, text=True, check=True)
    print(out.stdout, end="")
    print()
    return out.stdout


# Generate a weighted instance and store it in the exchange format.
host = tmp / "host.graph"
run("gen", "gnm", "--n", "80", "--m", "400",
    "--weights", "uniform", "--max-weight", "20", "--seed", "12",
    "--out", str(host))

# Exact girth, then the 2+eps estimate on the same file.
run("exact", "--input", str(host))
run("approx2eps", "--eps", "0.25", "--seed", "5", "--input", str(host))

# Build a roundtrip spanner, then verify it against its host.
spanner = tmp / "spanner.graph"
payload = json.loads(run("spanner", "--eps", "0.25", "--seed", "5",
                         "--input", str(host), "--out", str(spanner),
                         "--json"))
run("verify-spanner", "--input", str(host), "--spanner", str(spanner),
    "--stretch", str(payload["stretch"]))

# The runtime exponent table the multilevel driver is built around.
run("alpha", "--k", "3")

print(f"(files left in {tmp})")
