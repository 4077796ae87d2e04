"""Smoke test for the pyqsov extension module.

Build and install first:
    pip install --no-build-isolation ./crates/qsov-py
"""

import cmath
from fractions import Fraction

import pyqsov


def frac_dict(d):
    return {k: Fraction(v) for k, v in d.items()}


def main():
    ctx = pyqsov.Context(Fraction(1, 2), 1, 1)
    assert (ctx.q, ctx.t) == ("1/4", "1/4"), ctx

    # f_(0,1)(y) = 1 + y/t and c = t/(1+t) at xi = 1
    assert frac_dict(pyqsov.separated_poly((0, 1), ctx)) == {0: 1, 1: 4}
    fac = pyqsov.factorize((0, 1), ctx)
    assert fac["verified"] and Fraction(fac["c"]) == Fraction(1, 5)

    # C_3(x; q|q) is Chebyshev U_3 in w = e^{i theta}
    assert frac_dict(pyqsov.cq_poly(3, "1/4", "1/4")) == {-3: 1, -1: 1, 1: 1, 3: 1}

    ctx = pyqsov.Context("1/3", 2, "3/2")
    p = pyqsov.macdonald_poly((-1, 2), ctx)
    image = pyqsov.apply_m(p, ctx)
    assert frac_dict(pyqsov.apply_m_inverse(image, ctx)) == frac_dict(p)
    assert pyqsov.apply_m_inverse_qdiff(image, ctx) == pyqsov.apply_m_inverse(image, ctx)
    assert pyqsov.factorize((-1, 2), ctx)["image"] == image

    rho = pyqsov.transition_row("rho", (0, 2), ctx)
    assert set(rho) == {(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)}

    num, closed = pyqsov.askey_wilson(0.3, -0.2, 0.1 + 0.2j, 0.1 - 0.2j, 0.4)
    assert abs(num - closed) < 1e-10 * abs(closed), (num, closed)

    assert abs(pyqsov.dilog(1.0) - cmath.pi**2 / 6) < 1e-14

    h = pyqsov.hamiltonians([0.3, 2.1], [1.0, 1.0], 0.5)
    assert abs(h[1] - 1.0) < 1e-12
    y, ty = pyqsov.separation_variables([0.3, 2.1], [0.8, 1.3], 0.5, 1.0)
    assert len(y) == len(ty) == 2

    report = pyqsov.run_suite("qpoly", lmax=2)
    assert report["status"] == "pass", [c for c in report["cases"] if c["status"] != "pass"]

    try:
        pyqsov.Context(2, 1)
    except ValueError:
        pass
    else:
        raise AssertionError("s = 2 should be rejected")

    print("pyqsov smoke test passed")


if __name__ == "__main__":
    main()
