#!/usr/bin/env python3
"""Smoke test for the proxring_py extension module.

Build the extension first:

    cargo build -p proxring-py --release

The script locates the compiled cdylib under target/, loads it under the
importable name, and re-checks a handful of frozen facts end to end.
"""

import json
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        REPO / "target" / "release" / "libproxring_py.so",
        REPO / "target" / "debug" / "libproxring_py.so",
        REPO / "target" / "release" / "proxring_py.dll",
        REPO / "target" / "debug" / "proxring_py.dll",
        REPO / "target" / "release" / "libproxring_py.dylib",
        REPO / "target" / "debug" / "libproxring_py.dylib",
    ]
    built = next((p for p in candidates if p.is_file()), None)
    if built is None:
        sys.exit("no compiled extension found; run `cargo build -p proxring-py` first")
    staging = Path(tempfile.mkdtemp(prefix="proxring-py-"))
    suffix = ".pyd" if built.suffix == ".dll" else ".so"
    shutil.copy2(built, staging / f"proxring_py{suffix}")
    sys.path.insert(0, str(staging))
    import proxring_py

    return proxring_py


def main():
    px = load_module()
    print(f"loaded proxring_py {px.__version__} (MAX_POINTS={px.MAX_POINTS})")

    assert px.fixture_names() == ["F-Z2", "F-Z4p", "F-Z6i", "F-Z8i", "F-R013", "F-Z2xZ2"]

    # The parity instance: {0} is an ideal, 1-absorbing primary, but neither
    # prime nor primary; its radical is the even class.
    z4p = px.fixture("F-Z4p")
    assert z4p.n_points == 4
    assert z4p.upper_approx([0]) == [0, 2]
    assert z4p.near([0], [2]) and not z4p.near([0], [1])
    report = json.loads(z4p.classify_json("W0"))
    assert report["ideal"]["verdict"] == "Holds"
    assert report["prime"]["verdict"] == "Fails"
    assert report["prime"]["witness"]["points"] == [1, 2]
    assert report["primary"]["witness"]["points"] == [2, 1]
    assert report["one_absorbing"]["verdict"] == "Holds"
    assert z4p.radical("W0") == [0, 2]
    assert z4p.is_prime("W02")

    # Injective instances collapse to the textbook picture.
    z6 = px.fixture("F-Z6i")
    assert z6.enumerate_ideals() == [[0], [0, 3], [0, 2, 4], [0, 1, 2, 3, 4, 5]]
    assert z6.colon("W03", 2) == [0, 3]
    assert not z6.is_prime("W0")

    z8 = px.fixture("F-Z8i")
    assert z8.radical("W0") == [0, 2, 4, 6]
    quotient = json.loads(z8.quotient_json("W04"))
    assert quotient["well_defined"] is True
    assert quotient["zero_cosets"] == [0]

    # Structure flags line up with the frozen facts.
    r013 = json.loads(px.fixture("F-R013").check_structure_json())
    assert r013["ring"] and r013["commutative"] and r013["has_unity"]
    assert not r013["op_closed"]

    # Products concatenate probes; the parity block stays glued.
    prod = px.product(px.fixture("F-Z4p"), px.fixture("F-Z2"))
    assert prod.n_points == 8
    assert prod.upper_approx([0]) == [0, 4]

    # Round-trip through the text format.
    doc = z4p.serialize()
    again = px.parse_instance(doc)
    assert again.fingerprint() == z4p.fingerprint()

    # A small deterministic suite run: identical calls, identical findings.
    a = px.run_suite_json(family="modular", n_points=6, samples=25, seed=3)
    b = px.run_suite_json(family="modular", n_points=6, samples=25, seed=3)
    assert a == b
    findings = json.loads(a)
    assert any(f["theorem"] == "CONV-K" and f["status"] == "COUNTEREXAMPLE" for f in findings)
    assert all(
        f["status"] != "COUNTEREXAMPLE"
        for f in findings
        if f["stratum"]["injective_probe"] and f["stratum"]["op_closed"] and f["theorem"] != "CONV-K"
    )

    print(f"suite findings: {len(findings)}")
    print("smoke test passed")


if __name__ == "__main__":
    main()
