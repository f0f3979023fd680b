"""Smoke test for the galmag Python extension.

Build and install first, e.g. `maturin build -m crates/py/Cargo.toml` and
`pip install target/wheels/galmag-*.whl`, then run `python python/smoke_test.py`.
"""

import math

import galmag


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol


def main():
    # algebra
    assert galmag.cross((1, 0, 0), (0, 1, 0)) == (0.0, 0.0, 1.0)
    assert galmag.cross((0, 1, 0), (0, 0, 1)) == (1.0, 0.0, 0.0)
    assert galmag.scalar_product((2, 5, 7), (3, 1, 1)) == 6.0
    assert galmag.norm((0, 3, 4)) == 5.0
    assert galmag.classify((0, 0, 0)) == "isotropic"

    # Example 3.1 parabola
    c = galmag.solve_magnetic((0, 1, 1), y0=1, Y0=5, z0=4, Z0=3)
    assert c.case == "Magnetic-Isotropic"
    s, x, y, z = c.sample([2.0])[0]
    assert (s, x) == (2.0, 2.0)
    assert close(y, 0.5 * 4 + 10 + 1) and close(z, -0.5 * 4 + 6 + 4)
    assert close(c.curvature(1.0), math.sqrt(2))
    report = c.verify(0.0, math.pi)
    assert report["max_deviation"] < 1e-10, report

    # unit helix
    h = galmag.solve_magnetic((1, 0, 0), Z0=1)
    helix = h.helix()
    assert helix["r"] == 1.0 and helix["line"]["b"] == -1.0
    assert close(h.torsion(0.3), 1.0)
    frame = h.frenet_frame(0.3)
    assert close(frame["kappa"], 1.0)
    assert max(h.frenet_residual(0.3)) < 1e-6

    # Example 4.1 and the isotropic constraint
    n = galmag.solve_n_magnetic((0, 0, 0), y0=4, Y0=3, T0=1, z0=1, Z0=2, U0=1)
    assert n.case == "NMag-i"
    assert close(n.curvature(2.5), math.sqrt(2))
    try:
        galmag.solve_n_magnetic((0, 1, 2), T0=1, U0=1)
    except ValueError as e:
        assert str(e).startswith("incompatible-ic"), e
    else:
        raise AssertionError("incompatible data accepted")

    # oracle
    grid, states = galmag.integrate_magnetic((1, 0, 0), [0, 0, 0, 1], 0.0, 2 * math.pi)
    assert grid[-1] == 2 * math.pi
    assert close(states[-1][0], h.state(grid[-1])[0], 1e-9)

    deriv, constraint = galmag.n_magnetic_rhs((0, 1, 2), [0, 0, 0, 0, 1, 1])
    assert constraint == -1.0 and deriv[4:] == [0.0, 0.0]

    print("galmag", galmag.__version__, "smoke test OK")


if __name__ == "__main__":
    main()
