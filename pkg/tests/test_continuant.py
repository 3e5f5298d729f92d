import pytest

from affinecluster.continuant import (
    ContinuantFrieze,
    build_continuant_frieze,
    continuant,
    continuant_by_determinant,
    desnanot_check,
    determinant,
    frieze_parameters,
    glue_check,
    recurrence_vs_determinant,
)
from affinecluster.laurent import LaurentPoly
from affinecluster.periodic import J, JPRIME, JTILDE, PeriodicFamily, m_product


@pytest.fixture(scope="module")
def j32():
    return PeriodicFamily.a_type(J, 3, 2)


def test_base_cases(j32):
    assert continuant(j32, 2, 0, 0) == 1
    assert continuant(j32, 2, 1, 4) == j32(4)


def test_order_three_matches_product(j32):
    F, p = j32, 2
    for n in range(3):
        D3 = continuant(F, p, 3, n)
        assert D3 == F(n) * F(n + p) * F(n + 2 * p) - F(n) - F(n + 2 * p)
        assert D3 == m_product(F, 3, n).a


def test_units_example(j32):
    assert continuant(j32, 2, 2, 0).eval_units() == 5
    assert continuant(j32, 2, 2, 0) == j32(0) * j32(2) - 1


@pytest.mark.parametrize("family", [
    lambda: PeriodicFamily.a_type(J, 3, 2),
    lambda: PeriodicFamily.a_type(JTILDE, 4, 3),
    lambda: PeriodicFamily.d_type(5),
])
def test_recurrence_equals_determinant(family):
    F = family()
    rep = recurrence_vs_determinant(F, F.step, range(0, 7), range(0, 2))
    assert rep.passed and rep.checked == 14


def test_determinant_small():
    x0, x1 = LaurentPoly.gens(2)
    one = LaurentPoly.const(2, 1)
    assert determinant([], 2) == 1
    assert determinant([[x0, one], [one, x1]], 2) == x0 * x1 - 1


def test_frieze_rows():
    CF = build_continuant_frieze(PeriodicFamily.a_type(J, 3, 2))
    assert CF.L == 2
    assert [CF[(2, n)].eval_units() for n in (0, 2, 4)] == [5, 8, 5]
    assert build_continuant_frieze(PeriodicFamily.a_type(JTILDE, 3, 2)).L == 1
    assert build_continuant_frieze(PeriodicFamily.d_type(5)).L == 2
    assert frieze_parameters(JPRIME, N=6) == (1, 3)
    with pytest.raises(ValueError):
        frieze_parameters("X")


def test_d6_rows_at_units():
    CF = build_continuant_frieze(PeriodicFamily.d_type(6), margin=0)
    assert [CF[(1, n)].eval_units() for n in range(4)] == [5, 3, 5, 3]
    assert {CF[(2, n)].eval_units() for n in range(4)} == {14}
    assert [CF[(3, n)].eval_units() for n in range(4)] == [65, 39, 65, 39]


@pytest.mark.parametrize("family", [
    lambda: PeriodicFamily.a_type(J, 3, 2),
    lambda: PeriodicFamily.a_type(JTILDE, 3, 2),
    lambda: PeriodicFamily.d_type(6),
])
def test_desnanot(family):
    rep = desnanot_check(build_continuant_frieze(family()))
    assert rep.passed and rep.checked > 0


def test_desnanot_catches_corruption():
    F = PeriodicFamily.a_type(J, 3, 2)
    CF = ContinuantFrieze(F, 2, 2, 0, 3)
    CF.table[(2, 2)] = CF.table[(2, 2)] + 1
    assert not desnanot_check(CF).passed


def test_glue():
    rep = glue_check(J, (0, 3), q=2, p=1)
    assert rep.passed
    F = PeriodicFamily.a_type(J, 2, 1)
    x = F.seq
    assert F(1) * x(2) == x(3) + x(1)
    assert glue_check(JTILDE, (-2, 2), q=3, p=2).passed
    assert glue_check(JPRIME, (-1, 2), N=4).passed


def test_render_shape():
    CF = build_continuant_frieze(PeriodicFamily.a_type(J, 3, 2), margin=0)
    text = CF.render(fmt="csv")
    assert text.splitlines()[0].startswith("l/")
    assert "8" in text
