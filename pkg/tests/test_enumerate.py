import pytest

from affinecluster.enumerate import (
    EnumerationError,
    bfs_explore,
    cross_check,
    non_frieze,
    predicted_variables,
    worker_count,
    WORKERS_ENV,
)
from affinecluster.laurent import LaurentPoly
from affinecluster.periodic import PeriodicFamily
from affinecluster.quiver import ExchangeMatrix, Seed, a_tilde_matrix, d_tilde_matrix


def test_depth_zero_and_one():
    S = Seed(a_tilde_matrix(2, 1))
    assert bfs_explore(S, 0).variables == set(S.vars)
    r = bfs_explore(S, 1)
    assert len(r) == 6
    assert {r.first_seen[v] for v in S.vars} == {0}
    with pytest.raises(ValueError):
        bfs_explore(S, -1)


def test_a21_depth8():
    S = Seed(a_tilde_matrix(2, 1))
    found = bfs_explore(S, 8)
    pred = predicted_variables("a", q=2, p=1, window=(-8, 8))
    assert len(pred.determinant) == 2
    rep = cross_check(found, pred)
    assert rep.passed and rep.extras == []
    x0, x1, x2 = S.vars
    J = PeriodicFamily.a_type("J", 2, 1)
    assert non_frieze(found, pred) == sorted([J(0), J(1)], key=lambda v: (len(v), v.serialize()))
    x3 = (x1 * x2 + 1).exact_div(x0)
    assert (x2 + x0).exact_div(x1) in found.variables
    assert (x3 + x1).exact_div(x2) in found.variables


def test_workers_do_not_change_the_result():
    S = Seed(a_tilde_matrix(3, 2))
    a = bfs_explore(S, 4, workers=1)
    b = bfs_explore(S, 4, workers=2)
    assert a.variables == b.variables and a.seeds == b.seeds and a.first_seen == b.first_seen


def test_prediction_sizes():
    assert len(predicted_variables("a", q=3, p=2).determinant) == 8
    assert len(predicted_variables("d", N=5, window=(-1, 1)).determinant) == 6
    assert predicted_variables("d", N=4, window=(0, 0)).exceptional == 3
    with pytest.raises(ValueError):
        predicted_variables("e", N=6)


def test_containment_violation_raises():
    S = Seed(a_tilde_matrix(2, 1))
    found = bfs_explore(S, 4)
    narrow = predicted_variables("a", q=2, p=1, window=(0, 0))
    with pytest.raises(EnumerationError) as info:
        cross_check(found, narrow)
    assert info.value.details.found_not_predicted


def test_d4_reports_extras():
    S = Seed(d_tilde_matrix(4))
    found = bfs_explore(S, 4)
    pred = predicted_variables("d", N=4, window=(-6, 6))
    rep = cross_check(found, pred)
    J = PeriodicFamily.d_type(4)
    assert J(0) in found.variables and J(1) in found.variables
    assert rep.to_dict()["counts"]["extras"] == len(rep.extras)


def test_non_laurent_input_reports_path():
    # a non-cluster seed: divisions stop being exact
    B = ExchangeMatrix.from_arrows(2, [(0, 1)])
    x0, x1 = LaurentPoly.gens(2)
    with pytest.raises(EnumerationError) as info:
        bfs_explore(Seed(B, (x0 + x1, x1)), 2)
    assert info.value.path


def test_worker_env(monkeypatch):
    monkeypatch.setenv(WORKERS_ENV, "3")
    assert worker_count() == 3
    monkeypatch.setenv(WORKERS_ENV, "many")
    with pytest.raises(ValueError):
        worker_count()
    monkeypatch.delenv(WORKERS_ENV)
    assert worker_count() == 1
