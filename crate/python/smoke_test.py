"""Smoke test for the `selberg` extension module.

Build it with `maturin develop -m crates/py/Cargo.toml`, or with cargo:

    cargo build -p selberg-py --release
    cp target/release/libselberg.so python/selberg.so
    python3 python/smoke_test.py
"""

import cmath
import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import selberg  # noqa: E402


def main():
    ctx = selberg.Context(5)
    info = ctx.info()
    assert (info["q"], info["generator"], info["N"]) == (5, "2", 20), info

    # Se at degree 0 is 1
    assert ctx.selberg(ctx.family(1, 1), 1, 2, 0).as_integer() == 1

    # |tau(chi)| = sqrt(q) in every embedding
    tau = ctx.gauss_sum(1)
    for sigma in (1, 3, 7, 9):
        assert math.isclose(abs(tau.embed(sigma)), math.sqrt(5), rel_tol=1e-12)
    assert ctx.gauss_sum(0).as_integer() == -1

    # J(a, b) tau(ab) = tau(a) tau(b)
    assert ctx.jacobi_sum(1, 2) * ctx.gauss_sum(3) == ctx.gauss_sum(1) * ctx.gauss_sum(2)

    # closed form against enumeration
    r = ctx.family(1, 2)
    for chi1 in range(4):
        for chi2 in (1, 2, 3):
            for i in range(4):
                value, branch = ctx.closed_form(1, 2, chi1, chi2, i)
                assert value.equals_int(ctx.selberg(r, chi1, chi2, i)), (chi1, chi2, i, branch)

    rep = ctx.verify("pellet")
    assert rep["status"] == "pass" and rep["failed"] == 0

    s = ctx.series_analyze("0,4,1", 3, 2, i0=0, length=4)
    assert s["fit"]["den_degree"] == 1
    assert s["checks"]["predicted_consistent"]["taylor_matches"]

    lrep = selberg.Context(3).lseries([0, 2, 1], 1)
    assert lrep["primitive"] and lrep["weil"]["holds"]

    z = tau.embed()
    assert isinstance(z, complex) and cmath.isfinite(z)
    print("smoke test ok")


if __name__ == "__main__":
    main()
