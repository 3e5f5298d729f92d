import json
import random

import pytest

from affinecluster.laurent import InexactDivisionError, LaurentPoly
from affinecluster.quiver import (
    ExchangeMatrix,
    QuiverError,
    QuiverSpec,
    Seed,
    a_tilde_matrix,
    bipartite_classes,
    build_quiver,
    d_tilde_matrix,
    mutate_matrix,
    mutate_seed,
    mutate_sequence,
    period1_check,
)


def arrows(B):
    return sorted((B.labels[i], B.labels[j]) for i, j, m in B.arrows() for _ in range(m))


def test_a21_arrows():
    assert arrows(a_tilde_matrix(2, 1)) == [(0, 1), (0, 2), (1, 2)]


def test_a87_is_a_cycle_through_multiples_of_p():
    B = a_tilde_matrix(8, 7)
    assert B.n == 15
    assert sum(m for *_, m in B.arrows()) == 15
    for k in range(15):
        a, b = 7 * k % 15, 7 * (k + 1) % 15
        assert abs(B[a, b]) == 1
        assert B[min(a, b), max(a, b)] == 1


def test_d4_star():
    B = d_tilde_matrix(4)
    assert B.labels == (1, 2, 3, 4, 5)
    assert arrows(B) == [(1, 3), (2, 3), (4, 3), (5, 3)]


def test_bipartite_classes():
    sinks, sources = bipartite_classes(d_tilde_matrix(4))
    assert [i + 1 for i in sinks] == [3]
    assert [i + 1 for i in sources] == [1, 2, 4, 5]
    sinks, sources = bipartite_classes(d_tilde_matrix(6))
    assert [i + 1 for i in sinks] == [3, 5]
    assert [i + 1 for i in sources] == [1, 2, 4, 6, 7]
    assert bipartite_classes(a_tilde_matrix(2, 1)) is None


def test_source_mutation_reverses_incident_arrows():
    B = mutate_matrix(a_tilde_matrix(2, 1), 0)
    assert arrows(B) == [(1, 0), (1, 2), (2, 0)]


def test_sink_mutation_on_star():
    B = mutate_matrix(d_tilde_matrix(4), 2)
    assert arrows(B) == [(3, 1), (3, 2), (3, 4), (3, 5)]


def test_mutation_is_involution_on_random_matrices():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(2, 6)
        b = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                b[i][j] = rng.randint(-2, 2)
                b[j][i] = -b[i][j]
        B = ExchangeMatrix(b)
        k = rng.randrange(n)
        assert mutate_matrix(mutate_matrix(B, k), k) == B


def test_mutate_seed_examples():
    S = Seed(a_tilde_matrix(2, 1))
    x0, x1, x2 = S.vars
    S1 = mutate_seed(S, 0)
    assert S1.vars[0] == (x1 * x2 + 1).exact_div(x0)
    assert len(S1.vars[0]) == 2
    assert mutate_seed(S1, 0) == S

    D = Seed(d_tilde_matrix(4))
    y = D.vars
    assert mutate_seed(D, 2).vars[2] == (y[0] * y[1] * y[3] * y[4] + 1).exact_div(y[2])


def test_mutation_index_errors():
    S = Seed(a_tilde_matrix(2, 1))
    with pytest.raises(IndexError):
        mutate_seed(S, 3)
    with pytest.raises(IndexError):
        mutate_matrix(S.matrix, -1)


def test_non_laurent_seed_raises():
    # variables that are not a cluster: exchange is not divisible
    B = a_tilde_matrix(2, 1)
    x0, x1, x2 = LaurentPoly.gens(3)
    with pytest.raises(InexactDivisionError):
        mutate_seed(Seed(B, (x0 + x1, x1, x2)), 0)


def test_build_quiver_errors():
    with pytest.raises(QuiverError):
        build_quiver(QuiverSpec.a_tilde(4, 2))
    with pytest.raises(QuiverError):
        build_quiver(QuiverSpec.d_tilde(3))
    with pytest.raises(QuiverError):
        ExchangeMatrix(((0, 1), (1, 0)))


def test_period1():
    assert period1_check(Seed(a_tilde_matrix(2, 1)))
    assert period1_check(a_tilde_matrix(8, 7))
    for q, p in [(3, 2), (4, 3), (3, 1), (5, 2)]:
        assert period1_check(a_tilde_matrix(q, p))
    assert not period1_check(d_tilde_matrix(4))


def test_json_round_trip():
    B = d_tilde_matrix(5)
    assert ExchangeMatrix.from_json_obj(json.loads(json.dumps(B.to_json_obj()))) == B


def test_random_mutation_paths_stay_laurent_and_positive():
    rng = random.Random(3)
    S0 = build_quiver(QuiverSpec.a_tilde(3, 2))
    for _ in range(10):
        ks = [rng.randrange(5) for _ in range(8)]
        S = mutate_sequence(S0, ks)
        assert all(v.has_positive_coefficients() for v in S.vars)
        assert mutate_sequence(S, reversed(ks)) == S0
