"""Smoke tests for the python bindings."""

import json

import numpy as np
import pytest

import bvpindex


def test_version():
    assert bvpindex.__version__ == "0.1.0"


def test_expression_roundtrip():
    e = bvpindex.Expression.parse("-pi^2*t + t^3/(1+t^2)", ["x", "t"])
    val = e.evaluate({"x": 0.0, "t": 1.0})
    assert val == pytest.approx(-np.pi**2 + 0.5)
    again = bvpindex.Expression.parse(e.pretty(), ["x", "t"])
    assert again.evaluate({"x": 0.0, "t": 1.0}) == val


def test_expression_errors():
    with pytest.raises(bvpindex.BvpIndexError):
        bvpindex.Expression.parse("t + * 2", ["x", "t"])


def test_homogeneity_check():
    e = bvpindex.Expression.parse("sign(t)*abs(t)^0.5", ["x", "t"])
    hom, par, passes = bvpindex.check_homogeneity(e, 0.5, "odd")
    assert passes
    assert hom <= 1e-10 and par <= 1e-10


def test_degree_engines():
    def complex_square(u):
        x, y = u
        return np.array([x * x - y * y, 2 * x * y])

    assert bvpindex.degree_2d_winding(complex_square, 1.0) == 2
    assert bvpindex.degree_1d(lambda u: u**3, 1.0) == 1
    value, heuristic = bvpindex.degree_nd_regular(lambda u: -u, 3, 1.0)
    assert value == -1 and heuristic


def test_pencil_analysis_and_index():
    pencil = bvpindex.OperatorPencil(np.diag([0.0, 1.0]), np.eye(2))
    s = bvpindex.analyze_pencil(pencil)
    assert (s.nu, s.n0, s.l) == (0, 1, 1)

    def cube(u):
        r = np.zeros_like(u)
        r[0] = u[0] ** 3
        return r

    theta = bvpindex.build_reduced_map(s, pencil, cube, 3.0, "odd")
    idx = bvpindex.index_at_zero(s, theta)
    assert idx.defined and idx.value == 1

    jordan = bvpindex.OperatorPencil(np.array([[0.0, 1.0], [0.0, 0.0]]), np.eye(2))
    sj = bvpindex.analyze_pencil(jordan)
    assert (sj.nu, sj.n0, sj.l) == (0, 2, 1)


def test_fem_surface():
    disc = bvpindex.Discretization(50)
    assert disc.dim == 49
    assert bvpindex.embedding_constant(disc) == pytest.approx(1 / np.pi, rel=1e-2)

    spec = bvpindex.ProblemSpec.from_json(
        json.dumps({"p": "1", "g": "-5*t - 10*t^3/(1+t^2)", "gprime0": "-5", "gprimeInf": "-15"})
    )
    assert bvpindex.dirichlet_zero_check(spec, disc)
    assert bvpindex.monotonicity_probe(spec) == pytest.approx(1.0)

    verdict = json.loads(bvpindex.run_verdict("nontrivial_parity", spec, 64))
    assert verdict["conclusion"] == "nontrivial_solution_exists"


def test_analyze_json_deterministic():
    config = {
        "problem": {"p": "1", "g": "-5*t - 10*t^3/(1+t^2)", "gprime0": "-5", "gprimeInf": "-15"},
        "mesh": {"n_elements": 64},
        "analysis": {"theorems": ["nontrivial_parity"]},
    }
    text = json.dumps(config)
    report1, code1 = bvpindex.analyze_json(text)
    report2, code2 = bvpindex.analyze_json(text)
    assert code1 == 0 and code2 == 0
    m1 = json.dumps(json.loads(report1)["machine"], sort_keys=True)
    m2 = json.dumps(json.loads(report2)["machine"], sort_keys=True)
    assert m1 == m2
    verdicts = json.loads(report1)["machine"]["verdicts"]
    assert verdicts[0]["conclusion"] == "nontrivial_solution_exists"
