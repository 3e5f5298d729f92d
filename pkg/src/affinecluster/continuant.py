"""Continuant determinants of periodic families and the friezes they form.

``D^m_a(F_n)`` is the determinant of the m x m tridiagonal matrix with
diagonal ``F_n, F_{n+a}, ..., F_{n+(m-1)a}`` and ones just off the diagonal.
"""

from __future__ import annotations

from itertools import permutations

from .frieze import render_grid
from .laurent import LaurentPoly
from .periodic import J, JPRIME, JTILDE, PeriodicFamily
from .report import CheckReport


def continuant(F: PeriodicFamily, a: int, m: int, n: int) -> LaurentPoly:
    """``D^m_a(F_n)`` by ``D^m = F_{n+(m-1)a} D^{m-1} - D^{m-2}``."""
    if m < 0:
        raise ValueError("order m must be non-negative")
    prev, cur = LaurentPoly.zero(F.nvars), LaurentPoly.const(F.nvars, 1)
    for k in range(m):
        prev, cur = cur, F(n + k * a) * cur - prev
    return cur


def tridiagonal(F: PeriodicFamily, a: int, m: int, n: int) -> list:
    nv = F.nvars
    zero, one = LaurentPoly.zero(nv), LaurentPoly.const(nv, 1)
    rows = []
    for i in range(m):
        row = [zero] * m
        row[i] = F(n + i * a)
        if i > 0:
            row[i - 1] = one
        if i + 1 < m:
            row[i + 1] = one
        rows.append(row)
    return rows


def _sign(perm) -> int:
    s, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def determinant(rows, nvars: int) -> LaurentPoly:
    """Leibniz expansion; only meant for small matrices."""
    m = len(rows)
    total = LaurentPoly.zero(nvars)
    for perm in permutations(range(m)):
        entries = [rows[i][perm[i]] for i in range(m)]
        if any(e.is_zero() for e in entries):
            continue
        term = LaurentPoly.const(nvars, _sign(perm))
        for e in entries:
            term = term * e
        total = total + term
    return total


def continuant_by_determinant(F: PeriodicFamily, a: int, m: int, n: int) -> LaurentPoly:
    return determinant(tridiagonal(F, a, m, n), F.nvars)


class ContinuantFrieze:
    """Rows ``l = 0..L`` with ``table[(l, n)] = D^l_a(F_n)`` for ``n`` in ``a*Z``.

    Row 0 is all ones, row 1 is the family itself sampled with step ``a``.
    """

    def __init__(self, base: PeriodicFamily, a: int, L: int, j_min: int, j_max: int):
        self.base, self.a, self.L = base, a, L
        self.j_min, self.j_max = j_min, j_max
        self.table = {}
        for j in range(j_min, j_max + 1):
            n = j * a
            prev, cur = LaurentPoly.zero(base.nvars), LaurentPoly.const(base.nvars, 1)
            self.table[(0, n)] = cur
            for l in range(1, L + 1):
                prev, cur = cur, base(n + (l - 1) * a) * cur - prev
                self.table[(l, n)] = cur

    @property
    def columns(self) -> list[int]:
        return [j * self.a for j in range(self.j_min, self.j_max + 1)]

    def __getitem__(self, key) -> LaurentPoly:
        return self.table[key]

    def render(self, fmt="text", units=True) -> str:
        cols = self.columns
        stagger = {l: l % 2 for l in range(self.L + 1)}
        return render_grid(range(self.L + 1), cols, self.table, fmt=fmt, units=units,
                           stagger=stagger, row_name="l")


def frieze_parameters(kind: str, *, q=None, p=None, N=None) -> tuple[int, int]:
    """``(a, L)``: step and number of nontrivial rows."""
    if kind == J:
        return p, q - 1
    if kind == JTILDE:
        return q, p - 1
    if kind == JPRIME:
        return 1, N - 3
    raise ValueError(f"unknown family {kind!r}")


def build_continuant_frieze(F: PeriodicFamily, margin: int = 2) -> ContinuantFrieze:
    """One period of columns plus ``margin`` on each side."""
    if F.kind == JPRIME:
        a, L = frieze_parameters(JPRIME, N=F.N)
    else:
        a, L = frieze_parameters(F.kind, q=F.q, p=F.p)
    return ContinuantFrieze(F, a, L, -margin, F.period - 1 + margin)


def desnanot_check(CF: ContinuantFrieze) -> CheckReport:
    """``D^{m}(F_n) D^{m-2}(F_{n+a}) == D^{m-1}(F_n) D^{m-1}(F_{n+a}) - 1`` for every diamond
    centred on a cell of rows ``1..L``.

    The bottom corner of a diamond centred on row ``L`` lies one row below
    the stored table and is produced by the recurrence.
    """
    t, a, F = CF.table, CF.a, CF.base

    def cell(l, n):
        if l <= CF.L:
            return t[(l, n)]
        return F(n + (l - 1) * a) * t[(l - 1, n)] - t[(l - 2, n)]

    rep = CheckReport("desnanot-jacobi", info={"rows": CF.L})
    for (c, n) in sorted(t):
        if c < 1 or (c, n + a) not in t:
            continue
        m = c + 1
        lhs = cell(m, n) * t[(m - 2, n + a)]
        rhs = t[(m - 1, n)] * t[(m - 1, n + a)] - 1
        rep.record(lhs == rhs, {"m": m, "n": n}, lhs, rhs)
    return rep


def recurrence_vs_determinant(F: PeriodicFamily, a: int, ms, ns) -> CheckReport:
    rep = CheckReport("continuant-determinant")
    for m in ms:
        for n in ns:
            lhs = continuant(F, a, m, n)
            rhs = continuant_by_determinant(F, a, m, n)
            rep.record(lhs == rhs, {"m": m, "n": n}, lhs, rhs)
    return rep


def glue_check(kind: str, window, *, q=None, p=None, N=None, source=None) -> CheckReport:
    """First-row continuant entries against the frieze-pattern ratios they glue to.

    ``J_n x_{n+p} == x_{n+2p} + x_n``, ``J~_n x_{n+q} == x_{n+2q} + x_n`` and
    ``J'_n X^2_n == X^1_{n+1} + X^1_{n-1}``; each entry is also compared with
    its translate by one period.
    """
    n_min, n_max = window
    if kind == JPRIME:
        F = source if source is not None else PeriodicFamily.d_type(N)
        X = F.table
        lhs_of = lambda n: F(n) * X.value(1, n)
        rhs_of = lambda n: X.value(0, n + 1) + X.value(0, n - 1)
    else:
        F = source if source is not None else PeriodicFamily.a_type(kind, q, p)
        x, s = F.seq, F.step
        lhs_of = lambda n: F(n) * x(n + s)
        rhs_of = lambda n: x(n + 2 * s) + x(n)
    rep = CheckReport(f"glue[{kind}]")
    for n in range(n_min, n_max + 1):
        lhs, rhs = lhs_of(n), rhs_of(n)
        rep.record(lhs == rhs, n, lhs, rhs)
        shifted = F(n + F.period)
        rep.record(shifted == F(n), {"n": n, "shift": F.period}, shifted, F(n))
    return rep

