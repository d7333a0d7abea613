"""Smoke test for the qgrass extension module.

Build first, e.g. `cargo build --release -p qgrass-py` and copy
`target/release/libqgrass_py.so` to `python/qgrass.so`, or `maturin develop`
inside crates/py.
"""

import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import qgrass


def main():
    box = qgrass.BoxShape(2, 4)
    assert box.c == 2 and box.dim == 4
    assert len(box.classes()) == 6

    lam = qgrass.Partition([2, 1])
    assert lam.conjugate() == qgrass.Partition([2, 1])
    assert lam.poincare_dual(box) == qgrass.Partition([1])

    s1 = qgrass.RingElement.schubert([1], box)
    s21 = qgrass.RingElement.schubert("2,1", box)
    prod = s1 * s21
    assert str(prod) == "s(2,2) + q*s()", str(prod)
    assert prod == s21.pieri(1)
    assert prod.coeff(1, []) == 1
    assert qgrass.RingElement.from_json(prod.to_json(), box) == prod
    assert (2 * s1 - s1) == s1

    assert qgrass.structure_constant([1], [2, 1], [2, 2], 1, box) == 1
    assert qgrass.structure_constant([1, 1], [1, 1], [2, 2], 1, box) == 0
    value, residual = qgrass.vi_invariant([1], [2, 1], [2, 2], 1, box)
    assert value == 1 and residual < 1e-6
    rows = qgrass.gw_table(box)
    assert all(r["value"] == r["vi"] for r in rows)
    assert qgrass.lr_coefficient([2, 1], [2, 1], [3, 2, 1]) == 2

    u = qgrass.positive_point(1.0, box)
    assert abs(u.bands()[0] - math.sqrt(2)) < 1e-12
    assert abs(u.q_value() - 1) < 1e-12
    assert u.in_variety()
    assert abs(u.evaluate(prod) - u.evaluate(s1) * u.evaluate(s21)) < 1e-10
    assert abs(qgrass.hook_schur_value([2, 1], 1.0, box) - math.sqrt(2)) < 1e-12
    grid = dict(qgrass.factor_params(u))
    assert abs(grid[(1, 1)] - 1 / math.sqrt(2)) < 1e-12
    assert abs(grid[(1, 2)] - math.sqrt(2)) < 1e-12
    assert qgrass.factorization_error(qgrass.positive_point(3.0, qgrass.BoxShape(3, 6))) < 1e-10

    real = qgrass.real_fiber_points(box)
    assert sum(qgrass.is_totally_nonnegative(p, all_minors=True) for p in real) == 1
    assert len(qgrass.fiber_points(box)) == 6
    v = qgrass.point_at(2.0, box, "1/2,3/2")
    assert abs(v.q_value() - 16) < 1e-9

    report = qgrass.check_orthogonality("orthogonality3", qgrass.BoxShape(2, 5))
    assert report["pass"], report
    assert qgrass.inequality_scan(qgrass.BoxShape(3, 6))["violations"] == 0

    try:
        qgrass.RingElement.schubert([3], box)
    except ValueError:
        pass
    else:
        raise AssertionError("partition outside the box accepted")

    qgrass.set_precision("extended:128")
    value, residual = qgrass.vi_invariant([1], [2, 1], [2, 2], 1, box)
    assert value == 1 and residual < 1e-25
    qgrass.set_precision("double")
    print("smoke test passed")


if __name__ == "__main__":
    main()
