"""Smoke test for the hermspec extension module.

Builds the cdylib with cargo unless HERMSPEC_LIB points at one, copies it
next to a temporary hermspec.so and imports it.

    python3 python/smoke_test.py
"""

import math
import os
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def locate_library():
    if "HERMSPEC_LIB" in os.environ:
        return Path(os.environ["HERMSPEC_LIB"])
    subprocess.run(["cargo", "build", "-p", "hermspec-py", "--release"], cwd=ROOT, check=True)
    for name in ("libhermspec.so", "libhermspec.dylib", "hermspec.dll"):
        path = ROOT / "target" / "release" / name
        if path.exists():
            return path
    sys.exit("built library not found under target/release")


def main():
    lib = locate_library()
    tmp = Path(tempfile.mkdtemp())
    suffix = ".pyd" if lib.suffix == ".dll" else ".so"
    shutil.copy(lib, tmp / f"hermspec{suffix}")
    sys.path.insert(0, str(tmp))
    import hermspec as h

    c = h.certify(h.MixedGraph.named("oriented-K55-M"), k=6)
    assert c.verdict and c.pair == ("2", "-2") and c.multiplicities == (5, 5), c
    print("oriented-K55-M:", c)

    tri = h.MixedGraph(3, arcs=[(0, 1), (1, 2), (2, 0)])
    print("directed triangle spectrum:", [round(x, 6) for x in h.spectrum(tri)])

    report = h.certify_three_ev(h.paley_tournament(11))
    assert report["verdict"], report
    print("Paley 11 tournament: three eigenvalues", [round(v, 6) for v, _ in report["expected"]])

    r = h.search("K6", mode="signed")
    pm = [hit for hit in r["hits"] if abs(hit["certificate"]["pair"][0]["float"] - math.sqrt(5)) < 1e-8]
    assert pm, r["hits"][:1]
    print(f"K6 signings: {len(r['hits'])} two-eigenvalue, {len(pm)} with +-sqrt(5)")

    quick = h.verify_paper("quick")
    assert quick["passed"], [c for c in quick["checks"] if c["status"] == "fail"]
    print("quick reproduction:", sum(c["status"] == "pass" for c in quick["checks"]), "checks passed")
    shutil.rmtree(tmp)
    print("ok")


if __name__ == "__main__":
    main()
