"""The generalised frieze pattern X^i_n, the cluster map, and the A-type sequence x_n."""

from __future__ import annotations

import csv
import io
import json
import math

from .laurent import LaurentPoly
from .quiver import (
    ExchangeMatrix,
    QuiverError,
    Seed,
    a_tilde_matrix,
    bipartite_classes,
    mutate_seed,
)


class FriezeTable:
    """Lazily computed X^i_n for a fixed acyclic quiver.

    ``X^i_0`` is the i-th initial variable and every adjacent pair satisfies

        X^i_n X^i_{n+1} = 1 + prod_{j->i} (X^j_n)^{b_ji} prod_{i->j} (X^j_{n+1})^{b_ij}
    """

    def __init__(self, matrix: ExchangeMatrix):
        self.matrix = matrix
        self.order = matrix.topological_order()  # raises on cycles
        n = matrix.n
        self.nvars = n
        self._levels = {0: tuple(LaurentPoly.gens(n))}
        self.lo = 0
        self.hi = 0
        self._into = [matrix.in_neighbors(i) for i in range(n)]
        self._outof = [matrix.out_neighbors(i) for i in range(n)]

    @property
    def n(self) -> int:
        return self.matrix.n

    def _rhs(self, i: int, earlier, later) -> LaurentPoly:
        # 1 + prod over arrows into i (earlier level) * prod over arrows out of i (later level)
        prod = LaurentPoly.const(self.nvars, 1)
        for j, m in self._into[i]:
            prod = prod * earlier[j] ** m
        for j, m in self._outof[i]:
            prod = prod * later[j] ** m
        return prod + 1

    def _step_forward(self) -> None:
        cur = self._levels[self.hi]
        nxt = [None] * self.n
        for i in reversed(self.order):
            nxt[i] = self._rhs(i, cur, nxt).exact_div(cur[i])
        self.hi += 1
        self._levels[self.hi] = tuple(nxt)

    def _step_backward(self) -> None:
        cur = self._levels[self.lo]
        prev = [None] * self.n
        for i in self.order:
            prev[i] = self._rhs(i, prev, cur).exact_div(cur[i])
        self.lo -= 1
        self._levels[self.lo] = tuple(prev)

    def fill(self, n_min: int, n_max: int) -> None:
        while self.hi < n_max:
            self._step_forward()
        while self.lo > n_min:
            self._step_backward()

    def level(self, n: int) -> tuple:
        self.fill(min(n, self.lo), max(n, self.hi))
        return self._levels[n]

    def value(self, i: int, n: int) -> LaurentPoly:
        return self.level(n)[i]

    def __getitem__(self, key) -> LaurentPoly:
        i, n = key
        return self.value(i, n)

    def relation_holds(self, i: int, n: int) -> bool:
        lhs = self.value(i, n) * self.value(i, n + 1)
        return lhs == self._rhs(i, self.level(n), self.level(n + 1))

    def window(self, n_min: int, n_max: int) -> dict:
        self.fill(n_min, n_max)
        return {(i, n): self._levels[n][i]
                for n in range(n_min, n_max + 1) for i in range(self.n)}


def frieze_value(T: FriezeTable, i: int, n: int) -> LaurentPoly:
    return T.value(i, n)


def cluster_map_apply(S: Seed) -> Seed:
    """Mutate at every sink, then at every source."""
    classes = bipartite_classes(S.matrix)
    if classes is None:
        raise QuiverError("cluster map needs a bipartite quiver")
    sinks, sources = classes
    for k in sinks:
        S = mutate_seed(S, k)
    for k in sources:
        S = mutate_seed(S, k)
    return S


class ATypeSequence:
    """x_n for ``x_{n+N} x_n = x_{n+q} x_{n+p} + 1`` with ``N = q + p``."""

    def __init__(self, q: int, p: int):
        if q < 1 or p < 1 or math.gcd(q, p) != 1:
            raise QuiverError(f"unsupported parameters ({q}, {p})")
        self.q, self.p = q, p
        self.N = q + p
        gens = LaurentPoly.gens(self.N)
        self._memo = {i: g for i, g in enumerate(gens)}
        self.lo, self.hi = 0, self.N - 1

    @property
    def nvars(self) -> int:
        return self.N

    def __call__(self, n: int) -> LaurentPoly:
        memo, q, p, N = self._memo, self.q, self.p, self.N
        while self.hi < n:
            m = self.hi + 1 - N
            memo[self.hi + 1] = (memo[m + q] * memo[m + p] + 1).exact_div(memo[m])
            self.hi += 1
        while self.lo > n:
            m = self.lo - 1
            memo[m] = (memo[m + q] * memo[m + p] + 1).exact_div(memo[m + N])
            self.lo -= 1
        return memo[n]

    def matrix(self) -> ExchangeMatrix:
        return a_tilde_matrix(self.q, self.p)


def a_seq(A: ATypeSequence, n: int) -> LaurentPoly:
    return A(n)


# rendering ---------------------------------------------------------------

def _cell(v: LaurentPoly, units: bool) -> str:
    return str(v.eval_units()) if units else str(v)


def render_grid(rows, columns, cells, *, fmt="text", units=True, stagger=None,
                row_name="row", col_name="n") -> str:
    """Render ``cells[(row, col)]`` as text, CSV or JSON.

    ``stagger`` maps a row key to 0/1; staggered rows are shifted half a
    column in the text layout so diamonds line up.
    """
    rows, columns = list(rows), list(columns)
    if not rows or not columns:
        return ""
    if fmt == "json":
        out = {
            "rows": rows,
            "columns": columns,
            "values": [[(cells[(r, c)].eval_units() if units else cells[(r, c)].to_json_obj())
                        if (r, c) in cells else None for c in columns] for r in rows],
        }
        return json.dumps(out, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"{row_name}/{col_name}"] + columns)
        for r in rows:
            w.writerow([r] + [_cell(cells[(r, c)], units) if (r, c) in cells else ""
                              for c in columns])
        return buf.getvalue()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    text = {k: _cell(v, units) for k, v in cells.items()}
    width = max([len(s) for s in text.values()] + [len(str(c)) for c in columns] + [1]) + 2
    label_w = max(len(str(r)) for r in rows) + 2
    lines = [" " * label_w + "".join(str(c).rjust(width) for c in columns)]
    for r in rows:
        pad = " " * (width // 2) if stagger and stagger.get(r) else ""
        body = "".join(text.get((r, c), ".").rjust(width) for c in columns)
        lines.append(str(r).ljust(label_w) + pad + body)
    return "\n".join(lines) + "\n"


def render_frieze(T, window, fmt="text", units=True) -> str:
    """Render a :class:`FriezeTable` over ``window = (n_min, n_max)``.

    Continuant friezes render through their own ``render`` method; this
    dispatches to it so callers can treat both uniformly.
    """
    if not isinstance(T, FriezeTable):
        return T.render(fmt=fmt, units=units)
    n_min, n_max = window
    if n_max < n_min:
        return ""
    cells = T.window(n_min, n_max)
    labels = T.matrix.labels
    cells = {(labels[i], n): v for (i, n), v in cells.items()}
    classes = bipartite_classes(T.matrix)
    stagger = None
    if classes is not None:
        sinks = set(classes[0])
        stagger = {labels[i]: int(i in sinks) for i in range(T.n)}
    return render_grid(labels, range(n_min, n_max + 1), cells, fmt=fmt, units=units,
                       stagger=stagger, row_name="vertex")


def render_sequence(A: ATypeSequence, n_min: int, n_max: int, fmt="text", units=True) -> str:
    """The A-type frieze laid out on the repetition quiver: row i, column n holds x_{nN+ip}."""
    if n_max < n_min:
        return ""
    N, p = A.N, A.p
    rows = list(range(N))
    cols = list(range(n_min, n_max + 1))
    cells = {(i, n): A(n * N + i * p) for i in rows for n in cols}
    return render_grid(rows, cols, cells, fmt=fmt, units=units, row_name="i")
