import math

import pytest

import lpuniq


def test_thresholds_match_their_equations():
    b = lpuniq.beta_threshold(1.0, 2.0, 1 / math.sqrt(2))
    assert b * b * math.exp(2 * b / math.sqrt(2)) == pytest.approx(4.0, rel=1e-12)
    assert lpuniq.beta_threshold(3.0, 2.0, 0.0) == pytest.approx(math.sqrt(12.0), rel=1e-12)
    assert lpuniq.alpha_threshold(1.0, 2.0, 0.0, 4.0) == pytest.approx(0.5, rel=1e-12)
    with pytest.raises(lpuniq.ParameterError):
        lpuniq.beta_threshold(-1.0, 2.0, 0.5)


def test_parameter_selection():
    pc = lpuniq.select_parameters(1.0, 2.0, 0.5, 0.4)
    assert pc["beta"] < pc["alpha"] < pc["beta_star"]
    assert 0 < pc["delta"] < 0.5 - pc["beta"] / (2 * pc["alpha"])


def test_metric_object():
    m = lpuniq.Metric("lattice:1")
    assert m.distance("0", "3") == pytest.approx(3 / math.sqrt(2))
    assert sorted(m.ball("0", 1.0)) == ["-1", "0", "1"]
    assert m.jump_size(5.0) == pytest.approx(1 / math.sqrt(2), abs=1e-14)
    assert m.intrinsic_bound(2.0, 5.0) == pytest.approx(1.0, abs=1e-14)
    t = lpuniq.Metric("tree:3", kind="combinatorial")
    assert len(t.ball(t.base_vertex(), 2.5)) == 10


def test_interval_solution():
    u = lpuniq.solve_interval(5)
    assert len(u) == 11
    assert u[5] == pytest.approx(2 / 123, rel=1e-10)
    assert u[0] == u[-1] == 1.0
    lp, lm = lpuniq.characteristic_roots(1.0)
    assert lp * lm == pytest.approx(1.0)
    assert lpuniq.growing_solution(1.0, 2) == pytest.approx(7.0)


def test_commands(tmp_path):
    code, res = lpuniq.certify({"family": "lattice:1"})
    assert code == 0 and res["beta_star"] == pytest.approx(0.99, abs=0.005)

    code, res = lpuniq.verify({"family": "lattice:1", "checks": ["zeta_supersolution"], "out_dir": str(tmp_path)})
    assert code == 0 and res[0]["verdict"] == "pass"
    assert (tmp_path / "zeta_supersolution.json").exists()

    code, res = lpuniq.sharpness({"family": "lattice:1"})
    assert code == 0 and res["consistent"] is True

    code, res = lpuniq.certify({"family": "lattice:1", "metric": {"kind": "combinatorial"}})
    assert code == 1 and "refused" in res

    with pytest.raises(lpuniq.ParameterError):
        lpuniq.verify({"family": "lattice:1", "bogus": 1})
