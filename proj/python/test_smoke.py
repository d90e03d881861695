"""Smoke test for the _gmtk extension module."""
import json
import math
import sys

import _gmtk as g

T1 = """p 2 2 4 2
a 0 0 0 -1
a 1 0 1 -2
a 2 1 0 -3
a 3 1 1 -1
e 0 3 -5
e 1 2 -1
"""


def main():
    p = g.parse_dd(T1)
    assert p.num_nodes == 2 and p.num_labels == 2
    assert p.num_assignments == 4 and p.num_edges == 2
    assert p.is_bijective() and p.is_non_positive()

    assert g.evaluate(p, [0, 1]) == -7.0
    assert g.evaluate(p, [g.DUMMY, g.DUMMY]) == 0.0
    assert g.is_feasible(p, [0, 1])
    assert not g.is_feasible(p, [0, 0])

    y, e = g.brute_force_solve(p)
    assert y == [0, 1] and e == -7.0

    # the canonical writer round-trips
    assert g.write_dd(g.parse_dd(g.write_dd(p))) == g.write_dd(p)

    names = g.solver_names()
    assert "fm" in names and "fm+dual" in names
    params = g.SolverParams()
    params.fm_generations = 50
    for name in names:
        r = g.solve(name, p, params)
        assert r.solver == name
        assert g.is_feasible(p, r.labeling)
        assert r.energy >= -7.0 - 1e-9, (name, r.energy)
    r = g.solve("fm", p, params)
    assert r.energy == -7.0

    r = g.solve("fm+dual", p, params)
    assert r.bound is not None
    assert r.bound <= -7.0 + 1e-9
    doc = json.loads(g.record_to_json(r))
    assert doc["solver"] == "fm+dual"
    assert doc["energy"] == -7.0

    # weak duality of the hand-rolled bound
    assert g.lower_bound(p, [0.0] * 4) <= -7.0 + 1e-9

    # transforms keep the problem solvable
    q = g.make_non_positive(g.gm_to_qap(p))
    assert q.is_non_positive()

    # generators produce the advertised shapes
    h = g.gen_house_style(8, 3)
    assert h.is_bijective() and h.has_zero_unaries()
    c = g.gen_caltech_style(5, 7, 1, 3)
    assert c.num_nodes == 5 and c.num_labels == 7

    # errors surface as the bound exception type
    try:
        g.parse_dd("p 1 1 1 0\n")
    except g.GmtkError:
        pass
    else:
        raise AssertionError("expected GmtkError")

    print("smoke ok")


if __name__ == "__main__":
    main()
