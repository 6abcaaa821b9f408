#!/usr/bin/env python3
"""Smoke test for the _projtri extension module.

Build the module first:

    cargo build --release -p projtri-python --features extension-module

then run:

    python3 python/smoke_test.py
"""

import importlib.util
import json
import os
import shutil
import sys
import tempfile


def load_module():
    here = os.path.dirname(os.path.abspath(__file__))
    root = os.path.dirname(here)
    candidates = [
        os.path.join(root, "target", profile, name)
        for profile in ("release", "debug")
        for name in ("lib_projtri.so", "_projtri.so", "lib_projtri.dylib")
    ]
    built = next((c for c in candidates if os.path.exists(c)), None)
    if built is None:
        sys.exit(
            "extension module not found; build it with\n"
            "  cargo build --release -p projtri-python --features extension-module"
        )
    tmp = tempfile.mkdtemp(prefix="projtri_smoke_")
    target = os.path.join(tmp, "_projtri.so")
    shutil.copyfile(built, target)
    spec = importlib.util.spec_from_file_location("_projtri", target)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    m = load_module()
    failures = 0

    def check(label, ok, detail=""):
        nonlocal failures
        print(f"{label}: {'PASS' if ok else 'FAIL'}{' ' + detail if detail else ''}")
        if not ok:
            failures += 1

    points = {
        "points": [
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, 1, 1],
            [1, 2, 4],
            [4, 2, 1],
            [2, 3, 5],
            [7, 1, 2],
        ]
    }
    doc_text = m.triangulate(json.dumps(points), arithmetic="exact", validate="full")
    doc = json.loads(doc_text)
    meta = doc["meta"]
    n = len(points["points"])
    check(
        "triangulate counts",
        meta["vertex_count"] == n
        and meta["edge_count"] == 3 * n - 3
        and meta["face_count"] == 2 * n - 2
        and meta["euler"] == 1,
        f"V={meta['vertex_count']} E={meta['edge_count']} F={meta['face_count']}",
    )

    passed, checks = m.validate(doc_text, samples=2000)
    check("validate", passed, str([c for c, ok in checks if not ok]))

    svg = m.render_svg(doc_text, size=480)
    check("render_svg", svg.startswith("<svg") and svg.count('class="edge"') >= 15)

    obj = m.export_obj(doc_text)
    check(
        "export_obj",
        sum(1 for line in obj.splitlines() if line.startswith("v ")) == n,
    )

    check("join", m.join([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]) == [0.0, 0.0, 1.0])
    met = m.meet([-1.0, -1.0, 1.0], [1.0, -1.0, 0.0])
    check("meet", all(abs(a - b) < 1e-12 for a, b in zip(met, [1.0, 1.0, 2.0])))
    check("collinear", m.collinear([1.0, 0.0, 1.0], [0.0, 1.0, 1.0], [2.0, 1.0, 3.0]))
    check(
        "classify_triangle",
        m.classify_triangle(
            [1.0, 0.0, 1.0], [0.0, 1.0, 1.0], [-1.0, -1.0, 1.0], [0.0, 0.0, 1.0]
        )
        == "inside",
    )

    # determinism across calls
    check("deterministic", m.triangulate(json.dumps(points)) == m.triangulate(json.dumps(points)))

    # degenerate input surfaces an error rather than a bad structure
    try:
        m.triangulate(json.dumps({"points": [[i, i, 1] for i in range(8)]}))
        check("collinear input rejected", False)
    except ValueError:
        check("collinear input rejected", True)

    if failures:
        sys.exit(f"{failures} smoke checks failed")
    print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
