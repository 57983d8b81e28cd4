#!/usr/bin/env python3
"""Smoke test for the _skostka extension module.

Builds nothing itself: expects `cargo build --release -p skostka-py` to
have produced the cdylib, which is copied next to a temp directory under
the importable name. Run from the repository root:

    cargo build --release -p skostka-py
    python3 python/smoke_test.py
"""

import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def import_extension():
    candidates = []
    for profile in ("release", "debug"):
        for stem, suffix in (("lib_skostka", ".so"), ("_skostka", ".so"), ("lib_skostka", ".dylib")):
            candidates.append(ROOT / "target" / profile / f"{stem}{suffix}")
    built = [c for c in candidates if c.exists()]
    if not built:
        sys.exit("extension not built; run: cargo build --release -p skostka-py")
    tmp = Path(tempfile.mkdtemp(prefix="skostka_py_"))
    shutil.copy(built[0], tmp / "_skostka.so")
    sys.path.insert(0, str(tmp))
    import _skostka

    return _skostka


def main():
    sk = import_extension()

    # p-adic expansions
    assert sk.padic_expansion([6, 2], 3) == [[3, 2], [1]]
    assert sk.padic_expansion([4, 3], 3) == [[1], [1, 1]]
    assert sk.padic_expansion([], 3) == []

    # dominance on pairs
    assert sk.dominates([2], [1], [1], [2])
    assert not sk.dominates([1], [2], [2], [1])

    # conjugation and vertex bookkeeping
    assert sk.conjugate([3, 1]) == [2, 1, 1]
    assert sk.vertex_shape([4, 3], [], 3) == [1, 2]
    assert sk.ell_p([2, 1], [], 3) == 0

    # labels of degree 3, most dominant first
    ls = sk.labels(3, 3)
    assert ls[0] == ([3], []) and ls[-1] == ([], [1]), ls

    # the fixed-tabloid example: Q2 fixes exactly three tabloids, Q1 none
    q2 = [
        [1, 2, 3, 5, 6, 4, 7, 8, 9],  # (4,5,6)
        [1, 2, 3, 4, 5, 6, 8, 9, 7],  # (7,8,9)
    ]
    fixed = sk.fixed_tabloids([2, 1], [6], q2)
    assert len(fixed) == 3, fixed
    assert fixed[0] == ([[1, 2], [3]], [[4, 5, 6, 7, 8, 9]])
    q1 = [[2, 3, 1, 4, 5, 6, 7, 8, 9]] + q2
    assert sk.fixed_tabloids([2, 1], [6], q1) == []

    # Sylow generators, ascending block layout
    assert sk.sylow_generators([3, 2], 3) == q2

    # index sets
    entries = sk.lambda_set([2, 1], [6], [3, 2], 3)
    assert entries == [([[2, 1], []], [[], [2]])], entries

    # engine: decomposition, labels, both multiplicity routes
    eng = sk.Engine(p=3, seed=7)
    parts = eng.decompose([2, 1], [])
    assert len(parts) == 1
    assert parts[0]["end_dim"] == 2
    assert parts[0]["vertex"] == [3]

    assert eng.signed_kostka([3, 1], [], [4], []) == 1
    assert eng.klyachko_kostka([3, 1], [], [4], []) == 1
    assert eng.signed_kostka([2, 2], [], [4], []) == 0
    assert eng.klyachko_kostka([2, 2], [], [4], []) == 0
    assert eng.signed_kostka([], [3, 1], [1], [1]) == 1

    table = eng.kostka_table(3, cross_check=True)
    assert table["p"] == 3 and len(table["entries"]) == 40

    report = eng.verify("thm1.1", n=3)
    assert all(item["outcome"] == "pass" for item in report["items"]), report

    report = eng.verify("thm1.4", n_max=3)
    assert all(item["outcome"] == "pass" for item in report["items"]), report

    print("smoke test passed:", len(fixed), "fixed tabloids,",
          len(table["entries"]), "table entries")


if __name__ == "__main__":
    main()
