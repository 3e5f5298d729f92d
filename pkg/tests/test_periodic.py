import pytest

from affinecluster.frieze import ATypeSequence
from affinecluster.laurent import LaurentPoly
from affinecluster.periodic import (
    J,
    JPRIME,
    JTILDE,
    ASystem,
    InvariantError,
    Mat2,
    PeriodicFamily,
    expected_shape,
    jprime_cross_identity_check,
    linear_relation_check,
    m_product,
    matrix_entry,
    periodic_linear_check,
    periodic_value,
    psi_transport_check,
    structure_check,
    trace_check,
    trace_invariant,
    verify_period,
)


def unit_values(F, ns):
    return [periodic_value(F, n).eval_units() for n in ns]


def test_unit_values():
    s21 = ASystem.build(2, 1)
    assert unit_values(s21.J, [0, 1]) == [2, 3]
    assert unit_values(s21.Jtilde, [0]) == [4]
    s32 = ASystem.build(3, 2)
    assert unit_values(s32.J, [0, 1, 2]) == [2, 3, 3]
    assert unit_values(s32.Jtilde, [0, 1]) == [3, 4]
    assert unit_values(PeriodicFamily.d_type(4), [0, 1]) == [5, 5]


def test_j_definition():
    s = ASystem.build(2, 1)
    x = s.seq
    assert s.J(0) == (x(2) + x(0)).exact_div(x(1))
    assert s.J(1) == (x(3) + x(1)).exact_div(x(2))


def test_periods():
    assert verify_period(PeriodicFamily.a_type(J, 3, 2), -3, 3).passed
    assert verify_period(PeriodicFamily.a_type(JTILDE, 3, 2), -3, 3).passed
    assert verify_period(PeriodicFamily.d_type(5), -2, 4).passed


def test_corrupted_family_fails_at_zero():
    F = PeriodicFamily.a_type(J, 3, 2)
    bad = F.with_override(0, F(0) + 1)
    rep = verify_period(bad, -3, 3)
    assert not rep.passed
    assert [f["n"] for f in rep.failures] == [-3, 0]


def test_m3_upper_left():
    F = PeriodicFamily.a_type(J, 3, 2)
    p = 2
    for n in range(3):
        M = m_product(F, 3, n)
        Jn, Jp, J2p = F(n), F(n + p), F(n + 2 * p)
        assert M.a == J2p * Jp * Jn - J2p - Jn


def test_m1_is_generator():
    for F in (PeriodicFamily.a_type(J, 3, 2), PeriodicFamily.a_type(JTILDE, 3, 2),
              PeriodicFamily.d_type(5)):
        assert m_product(F, 1, 0) == F.generator(0)
        assert m_product(F, 0, 0) == Mat2.identity(F.nvars)


@pytest.mark.parametrize("kind", [J, JTILDE])
def test_structure_a32(kind):
    rep = structure_check(PeriodicFamily.a_type(kind, 3, 2), range(0, 7), range(3))
    assert rep.passed, rep.failures[:1]


def test_structure_d5():
    rep = structure_check(PeriodicFamily.d_type(5), range(0, 7), range(3))
    assert rep.passed, rep.failures[:1]


def test_period_catches_scaled_entry():
    F = PeriodicFamily.a_type(J, 2, 1)
    bad = F.with_override(1, F(1) * 2)
    assert not verify_period(bad, 0, 1).passed


def test_matrix_entry_edges():
    F = PeriodicFamily.a_type(J, 2, 1)
    assert matrix_entry(F, -1, 0).is_zero()
    assert matrix_entry(F, -2, 0) == -1
    assert matrix_entry(F, 0, 0) == 1
    assert matrix_entry(F, 1, 3) == F(3)
    with pytest.raises(ValueError):
        matrix_entry(F, -3, 0)
    with pytest.raises(ValueError):
        m_product(F, -1, 0)
    assert expected_shape(F, 1, 0) == F.generator(0)


@pytest.mark.parametrize("q,p,K", [(2, 1, 4), (3, 2, 10)])
def test_trace_a(q, p, K):
    rep = trace_check(PeriodicFamily.a_type(J, q, p))
    assert rep.passed
    assert rep.info["K_units"] == K
    assert rep.info["K"] == trace_invariant(PeriodicFamily.a_type(JTILDE, q, p))


def test_trace_a21_formula():
    F = PeriodicFamily.a_type(J, 2, 1)
    assert trace_invariant(F) == F(0) * F(1) - 2


@pytest.mark.parametrize("N,K", [(4, 23), (6, 167)])
def test_trace_d(N, K):
    assert trace_invariant(PeriodicFamily.d_type(N)).eval_units() == K


def test_trace_constancy_violation_raises():
    F = PeriodicFamily.a_type(J, 3, 2)
    bad = F.with_override(1, F(1) + 1)
    with pytest.raises(InvariantError):
        trace_invariant(bad)
    assert not trace_check(bad).passed


def test_linear_relations():
    assert linear_relation_check(PeriodicFamily.a_type(J, 2, 1), range(0, 4)).passed
    assert linear_relation_check(PeriodicFamily.a_type(J, 3, 2), range(0, 6)).passed
    rep = linear_relation_check(PeriodicFamily.d_type(4), range(-1, 3))
    assert rep.passed and rep.info["gap"] == 2


def test_linear_relation_units_example():
    x = ATypeSequence(3, 2)
    assert x(12).eval_units() - 10 * x(6).eval_units() + x(0).eval_units() == 0


def test_linear_relation_wrong_k_fails():
    F = PeriodicFamily.a_type(J, 2, 1)
    K = trace_invariant(F)
    assert not linear_relation_check(F, range(2), K=K + 1).passed


def test_full_lengths():
    assert PeriodicFamily.d_type(4).full_length() == 2
    assert PeriodicFamily.d_type(5).full_length() == 6
    assert PeriodicFamily.a_type(JTILDE, 3, 2).full_length() == 2


def test_periodic_linear_and_psi():
    s = ASystem.build(3, 2)
    assert periodic_linear_check(s.J, range(-3, 4)).passed
    assert periodic_linear_check(s.Jtilde, range(-3, 4)).passed
    assert periodic_linear_check(PeriodicFamily.d_type(5), range(-2, 3)).passed
    assert psi_transport_check(s.seq, range(-3, 4)).passed


def test_jprime_cross_identity():
    assert jprime_cross_identity_check(PeriodicFamily.d_type(6), range(-1, 2)).passed
    with pytest.raises(ValueError):
        jprime_cross_identity_check(PeriodicFamily.d_type(5), [0])


def test_jprime_units():
    assert unit_values(PeriodicFamily.d_type(5), range(3)) == [5, 5, 3]
    assert unit_values(PeriodicFamily.d_type(6), range(4)) == [5, 3, 5, 3]


def test_mat2_basics():
    x0, x1 = LaurentPoly.gens(2)
    M = Mat2.of(((x0, 1), (-1, 0)), 2)
    assert M.det() == 1
    assert M.trace() == x0
    assert (Mat2.identity(2) @ M) == M


def test_family_construction_errors():
    with pytest.raises(ValueError):
        PeriodicFamily("K", seq=ATypeSequence(2, 1))
    with pytest.raises(ValueError):
        PeriodicFamily(J)
    with pytest.raises(ValueError):
        PeriodicFamily(JPRIME)
    with pytest.raises(ValueError):
        PeriodicFamily.d_type(4).sibling()
