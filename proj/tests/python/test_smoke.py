import math

import numpy as np
import pytest

import _hyperlab as hl


def test_lattice_remainder_coverage_trend():
    basis = hl.make_alpha(2, [2, 3])
    w = hl.Window.cube(2, 0.0, 1.0)
    vals = []
    for S in (50, 100, 200, 400):
        s = hl.sample_lattice_remainders(basis, S, w, mode="float")
        vals.append(hl.coverage(s, w, 0.1)["coverage"])
    assert vals == sorted(vals)
    assert abs(vals[0] - 0.47) < 1e-12
    assert abs(vals[-1] - 0.87) < 1e-12


def test_sample_accessors():
    basis = hl.make_alpha(1, [2])
    w = hl.Window.cube(1, 0.0, 1.0)
    s = hl.sample_lattice_remainders(basis, 3, w)
    pts = sorted(s.points()[:, 0].tolist())
    expected = sorted([0.0, 3 - 2 * math.sqrt(2), 2 - math.sqrt(2), 5 - 3 * math.sqrt(2), 1.0])
    assert len(pts) == 5
    assert pts == pytest.approx(expected, abs=1e-15)
    assert s.meta_names[0] == "s"
    assert s.meta().shape == (5, 2)
    assert s.to_csv().splitlines()[0] == "s,s1,x1"


def test_probe_on_diagonal_family():
    gens = [np.diag([2.0, 1.0]), np.diag([1.0 / 3.0, 1.0]), np.diag([-1.0, 1.0]),
            np.diag([1.0, 2.0]), np.diag([1.0, 1.0 / 3.0]), np.diag([1.0, -1.0])]
    G = hl.make_semigroup([g.astype(complex) for g in gens], field="R")
    assert G.abelian
    res = hl.hypercyclicity_probe(G, hl.Window.cube(2, -2.0, 2.0), 0.1, [40, 80, 160])
    assert res["verdict"] == "DenseEvidence"
    assert res["report"]["coverage"] >= 0.9


def test_canonical_subspace_probe():
    r1 = complex(math.cos(math.pi * math.sqrt(2)), math.sin(math.pi * math.sqrt(2)))
    r2 = complex(math.cos(math.pi * math.sqrt(3)), math.sin(math.pi * math.sqrt(3)))
    gens = [np.diag([2.0 + 0j, 1.0]), np.diag([1.0 / 3.0 + 0j, 1.0]), np.diag([r1, 1.0]),
            np.diag([1.0 + 0j, 2.0]), np.diag([1.0 + 0j, 1.0 / 3.0]), np.diag([1.0 + 0j, r2])]
    G = hl.make_semigroup(gens, field="C")
    M = hl.canonical_invariant_subspace(G)
    assert M.r == 2  # a complex line, two real coordinates
    res = hl.subspace_hypercyclicity_probe(G, M, hl.Window.cube(2, -2.0, 2.0), 0.1, [30, 60, 120])
    assert res["verdict"] == "DenseEvidence"


def test_g_theta_exact_line_trace():
    g = hl.make_G_theta(2, 3, "sqrt(2)")
    tr = hl.line_trace_G_theta(g, 20, 2.0)
    assert tr["sin_guard"] > 0
    assert all(v > 0 for v in tr["values"])
    assert 2.0 in tr["values"] and 1.0 in tr["values"]
    assert tr["values"] == sorted(tr["values"])


def test_triangular_pair_orbit():
    J = hl.make_triangular_pair([["1", "0"], ["1", "2"]], [["1", "0"], ["0", "1/3"]])
    assert J.spectral_condition_evidence
    s = hl.triangular_pair_orbit(J, ["0", "1"], 12)
    pts = s.points()
    on_axis = pts[np.abs(pts[:, 0]) < 1e-12]
    assert len(on_axis) > 20


def test_errors_are_typed():
    with pytest.raises(hl.ConfigError):
        hl.make_alpha(2, [2, 4])  # 4 is not squarefree
    with pytest.raises(hl.ConfigError):
        hl.Window([[1.0, 0.0]])
