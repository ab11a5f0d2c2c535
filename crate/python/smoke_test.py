"""Smoke test for the vtschur_py extension.

Build and install first:

    pip install --no-build-isolation -e crates/python
    python python/smoke_test.py
"""

import json
import sys
from fractions import Fraction

import vtschur_py as vs


def check(cond, what):
    if not cond:
        print(f"FAIL {what}")
        sys.exit(1)
    print(f"ok   {what}")


def main():
    v2 = vs.Poly.monomial(2, 0)
    one = vs.Poly("1*v^0*t^0")
    p = v2 + one
    check(p.bar() == vs.Poly.monomial(-2, 0) + one, "bar inverts v")
    check(p.bar().bar() == p, "bar is an involution")
    check(p.specialize((3, 1), (5, 1)) == Fraction(10), "specialize at v=3, t=5")
    check(vs.qbinom(4, 2).specialize((1, 1), (1, 1)) == 6, "Gaussian binomial at v = 1")
    check(vs.Poly(str(p)) == p, "text form round-trips")

    t1 = vs.HeckeElt.generator(2, 1)
    sq = t1 * t1
    q = vs.Poly.monomial(1, 1) - vs.Poly.monomial(-1, 1)
    rhs = t1.scale(q) + vs.HeckeElt.one(2).scale(vs.Poly.monomial(0, 2))
    check(sq == rhs, "T1^2 = (vt - v^-1 t) T1 + t^2")
    check(vs.HeckeElt.from_json(sq.to_json()) == sq, "Hecke JSON round-trip")

    basis = vs.theta(2, 2)
    check(len(basis) == 10, "|Theta(2, 2)| = 10")
    x = vs.SchurElt.basis([[1, 1], [0, 0]])
    check(vs.SchurElt.unit(2, 2) * x == x, "unit is neutral")
    check(x.to_basis("e").to_basis("braced") == x, "basis conversion round-trips")
    check(vs.SchurElt.from_json(x.to_json()) == x, "Schur JSON round-trip")
    e1 = vs.SchurElt.generator(2, 2, "E1")
    f1 = vs.SchurElt.generator(2, 2, "F1")
    check(len(e1 * f1 - f1 * e1) > 0, "E1 and F1 do not commute")
    check(x.sigma().sigma() == x, "sigma is an involution")

    b, a = [[1, 1], [0, 0]], [[1, 0], [1, 0]]
    check(len(vs.mult_chev_e(b, vs.SchurElt.basis(a))) == 1, "Chevalley product in the braced basis")
    for rows, c in vs.e_product(b, a).terms():
        for prime in (3, 5):
            counts = dict((json.dumps(m), k) for m, k in vs.convolve_count(prime, b, a))
            got = c.eval_q(prime)
            check(got == f"{counts[json.dumps(rows)]}*t^0", f"oracle count for {rows} at q={prime}")

    rep = vs.verify("duality", n=2, d=2)
    check(rep["schema"] == 1 and all(c["status"] != "Fail" for c in rep["checks"]), "duality suite")
    rep = vs.verify("oracle", n=2, d=1, primes=[3, 5])
    check(all(c["status"] == "Pass" for c in rep["checks"]), "oracle suite")
    fit = vs.stab_fit([[1, 2], [0, 0]], [[0, 1], [3, -1]])
    check(all(c["status"] == "Pass" for c in fit["checks"]), "stabilization fit")

    try:
        vs.verify("nonsense")
    except ValueError:
        check(True, "unknown suite raises ValueError")
    else:
        check(False, "unknown suite raises ValueError")
    print("all smoke checks passed")


if __name__ == "__main__":
    main()
