import math

import pytest

import dfnnc


def test_awgn_mutual_information():
    sys = dfnnc.GaussianSystem(2)
    x = sys.add_variable("X", [math.sqrt(10.0), 0.0])
    y = sys.add_variable("Y", [math.sqrt(10.0), 1.0])
    assert sys.mutual_info([x], [y]) == pytest.approx(0.5 * math.log2(11.0), abs=1e-12)
    assert sys.mutual_info([x], [y], [x]) == 0.0
    assert math.isinf(sys.mutual_info([x], [x]))
    nats, rank, degenerate = sys.entropy([x, x])
    assert degenerate and rank == 1


def test_oneway_midpoint():
    ch = dfnnc.oneway_from_geometry(0.5, 3.0, 10.0)
    assert ch.g1 == pytest.approx(2.8284271, abs=1e-7)
    assert dfnnc.df_rate(ch, 0.0) == pytest.approx(0.5 * math.log2(81.0), abs=1e-12)
    nnc, _ = dfnnc.optimize_nnc_rate(ch)
    assert nnc == pytest.approx(0.5 * math.log2(11.0 + 6400.0 / 171.0), abs=1e-6)
    combined, params = dfnnc.optimize_combined_rate(ch)
    assert combined >= max(nnc, 3.169925) - 1e-6
    assert combined <= dfnnc.oneway_cutset_bound(ch) + 1e-9
    assert params.alpha1 ** 2 + params.beta1 ** 2 + params.gamma1 ** 2 <= 10.0 + 1e-9


def test_polytope_and_hull():
    v = dfnnc.polytope_vertices([(1, 0, 2.0), (0, 1, 2.0), (1, 1, 3.0), (2, 1, 4.0)])
    assert sorted(v) == [(0.0, 0.0), (0.0, 2.0), (1.0, 2.0), (2.0, 0.0)]
    hull = dfnnc.convex_hull([(0, 0), (1, 0), (0, 1), (0.4, 0.4)])
    assert len(hull) == 3
    assert dfnnc.sum_rate([(0, 0), (2, 0), (2, 1), (0, 1)]) == 3.0
    assert dfnnc.weighted_sum_max([(0, 0), (2, 0), (2, 1), (0, 1)], 0.5) == 1.5


def test_twrc_region_inside_cutset():
    ch = dfnnc.TwoWayChannel(g12=1, g1r=2, g21=0.5, g2r=3, gr1=6, gr2=2, power=3)
    budget = dfnnc.SearchBudget()
    budget.coarse_steps = 5
    budget.refine_rounds = 2
    region = dfnnc.lnnc_region(ch, budget, [0.0, 0.5, 1.0])
    assert (0.0, 0.0) in region
    assert dfnnc.sum_rate(region) > 0.0
    values, mirrored = dfnnc.constraint_set(ch, dfnnc.TwrcParams())
    assert len(values) == 19 and len(mirrored) == 19


def test_experiment_csv():
    csv = dfnnc.run_experiment_csv({"d_min": "0.3", "d_max": "0.5", "d_steps": "2"})
    lines = csv.splitlines()
    assert lines[0] == "d,df,nnc,combined,cutset"
    assert len(lines) == 3
    with pytest.raises(ValueError):
        dfnnc.run_experiment_csv({"colour": "red"})
