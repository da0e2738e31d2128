#!/usr/bin/env python3
"""Smoke test for the primroot_py extension module.

Builds nothing itself: compile the extension first with

    cargo build -p primroot-py --release

then run this script from the repository root (or anywhere inside it).
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path


def load_module():
    here = Path(__file__).resolve().parent.parent
    candidates = [
        here / "target" / "release" / "libprimroot_py.so",
        here / "target" / "debug" / "libprimroot_py.so",
        here / "target" / "release" / "libprimroot_py.dylib",
        here / "target" / "debug" / "libprimroot_py.dylib",
    ]
    built = next((c for c in candidates if c.exists()), None)
    if built is None:
        sys.exit("extension not built: run `cargo build -p primroot-py --release` first")
    stage = Path(tempfile.mkdtemp(prefix="primroot_py_"))
    shutil.copy2(built, stage / "primroot_py.so")
    sys.path.insert(0, str(stage))
    import primroot_py

    return primroot_py


def main():
    pr = load_module()
    A = pr.artin_constant()
    assert abs(A - 0.373955813619202288054728) < 1e-15
    assert pr.ARTIN_CONSTANT_DECIMAL == "0.373955813619202288054728"

    # closed form: the three classes mod 28 carrying 7A/82
    for a in (3, 19, 27):
        r = pr.density(2, 28, a)
        assert r.coeff == "7/82", r.coeff
        assert abs(r.value - 7 * A / 82) < 1e-15
        assert r.case == "b_even" and r.b == 2 and not r.vanishes
    assert pr.density("2", 28, 3).coeff == "7/82"  # string g works too

    # the two closed forms agree, including for rational g
    for g in (2, 5, -3, "8/9", 1801088541):
        for f, a in ((1, 1), (8, 3), (5, 2)):
            assert pr.density(g, f, a).coeff == pr.density_jacobi(g, f, a).coeff

    # vanishing and its classification
    assert pr.density(5, 5, 1).vanishes
    assert pr.vanishing_case(5, 5, 1) == "quadratic"
    assert pr.vanishing_case(8, 3, 1) == "power"
    assert pr.vanishing_case(27, 4, 3) == "cubic"
    assert pr.vanishing_case(2, 1, 1) is None

    # domain gate
    try:
        pr.density(4, 5, 2)
        raise AssertionError("g = 4 must be rejected")
    except ValueError as e:
        assert "perfect square" in str(e)

    # weak uniform distribution
    assert pr.is_wud(5, 8) and not pr.is_wud(5, 3)
    assert pr.is_wud(1801088541, 12)
    assert pr.wud_set(1801088541) == "{2^n 3^m}"
    assert pr.wud_set(5) == "{2^n}"

    # series oracle brackets the closed form
    value, tail = pr.oracle(2, 1, 1, 100_000)
    assert abs(value - A) <= tail

    # arithmetic primitives
    assert pr.mobius(10) == 1 and pr.mobius(12) == 0
    assert pr.euler_phi(28) == 12
    assert pr.kronecker(5, 11) == 1 and pr.kronecker(12, 3) == 0
    assert pr.jacobi(3, 2) == -1 and pr.jacobi(2, 15) == 1
    assert pr.power_index(1801088541) == 7
    assert pr.factorize(1801088541) == (1, [(3, 7), (7, 7)])
    assert pr.squarefree_decompose("8/9") == (2, "2/3")
    assert pr.is_primitive_root(2, 3) and not pr.is_primitive_root(2, 7)
    assert pr.is_primitive_root("1/2", 5)

    # partial Euler product honors its error bound
    value, bound = pr.artin_constant_partial(10_000)
    assert abs(value - A) <= bound

    # a small census: class 1 (mod 8) is empty for g = 2, the others live
    report = pr.census(2, 8, 100_000)
    assert report.pi_x == 9592
    assert report.excluded_primes == [2]
    rows = {a: (count, coeff, predicted) for a, count, coeff, predicted in report.rows}
    assert rows[1][0] == 0 and rows[1][1] == "0/1"
    for a in (3, 5):
        count, coeff, predicted = rows[a]
        assert coeff == "1/2"
        assert abs(count / report.pi_x - predicted) < 0.02
    assert '"g":"2/1"' in report.to_json()

    # heuristic sums at desk scale
    h = pr.heuristic_sum(2, 1, 1, 100_000)
    g2_count = pr.census(2, 1, 100_000).rows[0][1]
    assert abs(h - g2_count) / g2_count < 0.05
    naive = pr.naive_artin_sum(100_000)
    assert abs(naive / 9592 - A) < 0.01
    assert math.isfinite(naive)

    print("primroot_py smoke test: all checks passed")


if __name__ == "__main__":
    main()
