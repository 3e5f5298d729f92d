"""Exchange matrices, seeds, mutation and the affine quiver builders.

Vertices are 0-based indices internally.  Each :class:`ExchangeMatrix`
carries a tuple of display labels: the affine A quiver uses the labels
``0..N-1`` (identical to the indices), the affine D quiver uses ``1..N+1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .laurent import LaurentPoly


class QuiverError(ValueError):
    """Invalid or unsupported quiver parameters."""


@dataclass(frozen=True)
class ExchangeMatrix:
    b: tuple
    labels: tuple = None

    def __post_init__(self):
        b = tuple(tuple(int(x) for x in row) for row in self.b)
        n = len(b)
        for i, row in enumerate(b):
            if len(row) != n:
                raise QuiverError("exchange matrix must be square")
            if row[i] != 0:
                raise QuiverError(f"nonzero diagonal entry at {i}")
            for j in range(n):
                if row[j] != -b[j][i]:
                    raise QuiverError(f"not skew-symmetric at ({i}, {j})")
        object.__setattr__(self, "b", b)
        labels = tuple(range(n)) if self.labels is None else tuple(self.labels)
        if len(labels) != n:
            raise QuiverError("label count does not match matrix size")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_arrows(cls, n: int, arrows, labels=None) -> "ExchangeMatrix":
        """Build from ``(i, j)`` index pairs, one entry per arrow ``i -> j``."""
        b = [[0] * n for _ in range(n)]
        for i, j in arrows:
            if i == j:
                raise QuiverError("loops are not allowed")
            b[i][j] += 1
            b[j][i] -= 1
        return cls(b, labels)

    @property
    def n(self) -> int:
        return len(self.b)

    def __getitem__(self, ij):
        i, j = ij
        return self.b[i][j]

    def index(self, label) -> int:
        return self.labels.index(label)

    def arrows(self) -> list[tuple[int, int, int]]:
        """``(i, j, multiplicity)`` for every ``b[i][j] > 0``."""
        return [(i, j, self.b[i][j]) for i in range(self.n) for j in range(self.n)
                if self.b[i][j] > 0]

    def in_neighbors(self, k: int) -> list[tuple[int, int]]:
        return [(i, self.b[i][k]) for i in range(self.n) if self.b[i][k] > 0]

    def out_neighbors(self, k: int) -> list[tuple[int, int]]:
        return [(j, self.b[k][j]) for j in range(self.n) if self.b[k][j] > 0]

    def permuted(self, perm: Sequence[int]) -> "ExchangeMatrix":
        """Matrix ``c`` with ``c[i][j] = b[perm[i]][perm[j]]``."""
        n = self.n
        return ExchangeMatrix(
            [[self.b[perm[i]][perm[j]] for j in range(n)] for i in range(n)], self.labels)

    def topological_order(self) -> list[int]:
        """Sources first; raises :class:`QuiverError` on a directed cycle."""
        n = self.n
        indeg = [sum(1 for i in range(n) if self.b[i][j] > 0) for j in range(n)]
        ready = sorted(j for j in range(n) if indeg[j] == 0)
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for j, _ in self.out_neighbors(v):
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
                    ready.sort()
        if len(order) != n:
            raise QuiverError("quiver has a directed cycle")
        return order

    def to_json_obj(self) -> dict:
        return {"n": self.n, "b": [list(r) for r in self.b], "labels": list(self.labels)}

    @classmethod
    def from_json_obj(cls, obj) -> "ExchangeMatrix":
        return cls(obj["b"], obj.get("labels"))


def mutate_matrix(B: ExchangeMatrix, k: int) -> ExchangeMatrix:
    n = B.n
    if not 0 <= k < n:
        raise IndexError(f"vertex {k} out of range 0..{n - 1}")
    b = B.b
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == k or j == k:
                row.append(-b[i][j])
            else:
                bik, bkj = b[i][k], b[k][j]
                row.append(b[i][j] + (abs(bik) * bkj + bik * abs(bkj)) // 2)
        out.append(row)
    return ExchangeMatrix(out, B.labels)


def exchange_binomial(B: ExchangeMatrix, xs: Sequence[LaurentPoly], k: int) -> LaurentPoly:
    """``prod_{i->k} x_i + prod_{k->i} x_i`` with arrow multiplicities."""
    nv = xs[0].nvars
    into = LaurentPoly.const(nv, 1)
    out = LaurentPoly.const(nv, 1)
    for i in range(B.n):
        bik = B.b[i][k]
        if bik > 0:
            into = into * xs[i] ** bik
        elif bik < 0:
            out = out * xs[i] ** (-bik)
    return into + out


@dataclass(frozen=True)
class Seed:
    matrix: ExchangeMatrix
    vars: tuple = field(default=None)

    def __post_init__(self):
        if self.vars is None:
            object.__setattr__(self, "vars", tuple(LaurentPoly.gens(self.matrix.n)))
        else:
            object.__setattr__(self, "vars", tuple(self.vars))
        if len(self.vars) != self.matrix.n:
            raise QuiverError("one cluster variable per vertex required")

    @property
    def n(self) -> int:
        return self.matrix.n

    def key(self) -> tuple:
        return (self.matrix.b, self.vars)

    def to_json_obj(self) -> dict:
        return {"quiver": self.matrix.to_json_obj(),
                "vars": [v.to_json_obj() for v in self.vars]}


def mutate_seed(S: Seed, k: int) -> Seed:
    if not 0 <= k < S.n:
        raise IndexError(f"vertex {k} out of range 0..{S.n - 1}")
    num = exchange_binomial(S.matrix, S.vars, k)
    new = num.exact_div(S.vars[k])
    xs = list(S.vars)
    xs[k] = new
    return Seed(mutate_matrix(S.matrix, k), tuple(xs))


@dataclass(frozen=True)
class QuiverSpec:
    family: str          # "A", "D" or "custom"
    q: int = 0
    p: int = 0
    N: int = 0
    matrix: ExchangeMatrix | None = None

    @classmethod
    def a_tilde(cls, q: int, p: int) -> "QuiverSpec":
        return cls("A", q=q, p=p)

    @classmethod
    def d_tilde(cls, N: int) -> "QuiverSpec":
        return cls("D", N=N)


def a_tilde_matrix(q: int, p: int) -> ExchangeMatrix:
    """The cycle ``0, p, 2p, ...`` (labels mod ``q+p``), arrows low -> high."""
    if q < 1 or p < 1:
        raise QuiverError("q and p must be positive")
    if math.gcd(q, p) != 1:
        raise QuiverError(f"unsupported parameters: gcd({q}, {p}) != 1")
    N = q + p
    arrows = []
    for k in range(N):
        a, b = (k * p) % N, ((k + 1) * p) % N
        arrows.append((min(a, b), max(a, b)))
    return ExchangeMatrix.from_arrows(N, arrows)


def d_tilde_edges(N: int) -> list[tuple[int, int]]:
    """Undirected edges of the affine D_N tree in labels ``1..N+1``."""
    if N < 4:
        raise QuiverError("affine D requires N >= 4")
    edges = [(1, 3), (2, 3)]
    edges += [(k, k + 1) for k in range(3, N - 1)]
    edges += [(N - 1, N), (N - 1, N + 1)]
    return edges


def d_tilde_matrix(N: int) -> ExchangeMatrix:
    """Bipartite orientation; vertex 3 and every other spine vertex are sinks."""
    edges = d_tilde_edges(N)
    # distance parity from vertex 3 decides the class
    adj = {v: [] for v in range(1, N + 2)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    color = {3: 0}
    stack = [3]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in color:
                color[w] = 1 - color[v]
                stack.append(w)
    arrows = []
    for a, b in edges:
        src, dst = (a, b) if color[a] == 1 else (b, a)
        arrows.append((src - 1, dst - 1))
    return ExchangeMatrix.from_arrows(N + 1, arrows, labels=range(1, N + 2))


def build_quiver(spec: QuiverSpec) -> Seed:
    if spec.family == "A":
        return Seed(a_tilde_matrix(spec.q, spec.p))
    if spec.family == "D":
        return Seed(d_tilde_matrix(spec.N))
    if spec.family == "custom":
        if spec.matrix is None:
            raise QuiverError("custom spec needs a matrix")
        return Seed(spec.matrix)
    raise QuiverError(f"unknown family {spec.family!r}")


def period1_check(S: Seed | ExchangeMatrix) -> bool:
    """Whether mutation at vertex 0 equals the relabelling ``i -> i-1 mod n``.

    After mutating at 0 the new variable ``x_N`` sits at vertex 0 and plays
    the role of the last vertex, while ``x_i`` at vertex ``i`` plays the role
    of vertex ``i-1``.
    """
    B = S.matrix if isinstance(S, Seed) else S
    n = B.n
    mutated = mutate_matrix(B, 0)
    return mutated == B.permuted([(i - 1) % n for i in range(n)])


def bipartite_classes(B: ExchangeMatrix):
    """``(sinks, sources)`` as sorted index lists, or ``None``.

    Isolated vertices are put in the source class.
    """
    sinks, sources = [], []
    for v in range(B.n):
        has_in = any(B.b[i][v] > 0 for i in range(B.n))
        has_out = any(B.b[v][j] > 0 for j in range(B.n))
        if has_in and has_out:
            return None
        (sinks if has_in else sources).append(v)
    return sinks, sources


def mutate_sequence(S: Seed, ks) -> Seed:
    for k in ks:
        S = mutate_seed(S, k)
    return S
