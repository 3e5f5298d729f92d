"""Arcs and triangulations of the annulus with q marked points on the bottom
boundary and p on the top, worked out in the universal cover (an infinite
strip).

In the cover the bottom points are ``B_i`` and the top points ``T_j`` for
``i, j`` in Z, and the deck transformation sends ``B_i -> B_{i+q}`` and
``T_j -> T_{j+p}``.  Walking around the boundary of the strip meets the
bottom points in increasing order and then the top points in decreasing
order, so ``B_i`` gets the sort key ``(0, i)`` and ``T_j`` the key
``(1, -j)``; two chords cross exactly when their keys interleave.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations

from .laurent import LaurentPoly
from .quiver import ExchangeMatrix, QuiverError

BOTTOM, TOP = 0, 1


class TriangulationError(ValueError):
    """Arcs that cross, repeat, or do not form a triangulation."""


@dataclass(frozen=True, order=True)
class Crossing:
    """Arc from ``B_bottom`` to ``T_top``; canonical lift has ``0 <= bottom < q``."""
    bottom: int
    top: int
    kind = "crossing"

    def to_json_obj(self) -> dict:
        return {"kind": self.kind, "bottom": self.bottom, "top": self.top}


@dataclass(frozen=True, order=True)
class PeripheralBottom:
    """Arc from ``B_start`` to ``B_{start+span+1}``, jumping over ``span`` points."""
    start: int
    span: int
    kind = "peripheral_bottom"

    def to_json_obj(self) -> dict:
        return {"kind": self.kind, "start": self.start, "span": self.span}


@dataclass(frozen=True, order=True)
class PeripheralTop:
    """Arc from ``T_start`` to ``T_{start-span-1}``, jumping over ``span`` points."""
    start: int
    span: int
    kind = "peripheral_top"

    def to_json_obj(self) -> dict:
        return {"kind": self.kind, "start": self.start, "span": self.span}


def arc_from_json_obj(obj):
    kind = obj.get("kind")
    try:
        if kind == Crossing.kind:
            return Crossing(int(obj["bottom"]), int(obj["top"]))
        if kind == PeripheralBottom.kind:
            return PeripheralBottom(int(obj["start"]), int(obj["span"]))
        if kind == PeripheralTop.kind:
            return PeripheralTop(int(obj["start"]), int(obj["span"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed arc {obj!r}") from exc
    raise ValueError(f"unknown arc kind {kind!r}")


# -- geometry in the cover ----------------------------------------------------

def _shift_key(key, k: int, q: int, p: int):
    side, v = key
    return (side, v + k * q) if side == BOTTOM else (side, v - k * p)


def _position(key, q: int, p: int) -> float:
    # location along the strip measured in deck periods
    side, v = key
    return v / q if side == BOTTOM else -v / p


def lift(arc, k: int, q: int, p: int) -> tuple:
    """Endpoint keys (sorted) of the ``k``-th deck translate of the canonical lift."""
    if isinstance(arc, Crossing):
        a, b = (BOTTOM, arc.bottom), (TOP, -arc.top)
    elif isinstance(arc, PeripheralBottom):
        a, b = (BOTTOM, arc.start), (BOTTOM, arc.start + arc.span + 1)
    elif isinstance(arc, PeripheralTop):
        a, b = (TOP, -arc.start), (TOP, -(arc.start - arc.span - 1))
    else:
        raise TypeError(f"not an arc: {arc!r}")
    return tuple(sorted((_shift_key(a, k, q, p), _shift_key(b, k, q, p))))


def chord_to_arc(u, v, q: int, p: int):
    """Canonical arc for the chord ``u``-``v``; ``None`` for a boundary segment."""
    u, v = sorted((u, v))
    if u == v:
        raise TriangulationError("degenerate chord")
    if u[0] == BOTTOM and v[0] == BOTTOM:
        span = v[1] - u[1] - 1
        if span == 0:
            return None
        if span > q - 1:
            raise TriangulationError(f"bottom arc jumps {span} > {q - 1} points")
        return PeripheralBottom(u[1] % q, span)
    if u[0] == TOP and v[0] == TOP:
        hi, lo = -u[1], -v[1]
        span = hi - lo - 1
        if span == 0:
            return None
        if span > p - 1:
            raise TriangulationError(f"top arc jumps {span} > {p - 1} points")
        return PeripheralTop(hi % p, span)
    i, j = u[1], -v[1]
    k = i // q
    return Crossing(i - k * q, j - k * p)


def canonical(arc, q: int, p: int):
    return chord_to_arc(*lift(arc, 0, q, p), q, p)


def _interleave(c1, c2) -> bool:
    a, b = c1
    c, d = c2
    return a < c < b < d or c < a < d < b


def _extent(arc, q: int, p: int) -> float:
    a, b = lift(arc, 0, q, p)
    return abs(_position(a, q, p) - _position(b, q, p))


def _center(arc, q: int, p: int) -> int:
    a, b = lift(arc, 0, q, p)
    return round(-(_position(a, q, p) + _position(b, q, p)) / 2)


def arcs_cross(a1, a2, q: int, p: int) -> bool:
    """Whether some lifts of ``a1`` and ``a2`` cross (an arc may cross itself)."""
    c1 = lift(a1, _center(a1, q, p), q, p)
    base = _center(a2, q, p)
    R = math.ceil(_extent(a1, q, p) + _extent(a2, q, p)) + 2
    return any(_interleave(c1, lift(a2, base + k, q, p)) for k in range(-R, R + 1))


# -- triangulations -----------------------------------------------------------

@dataclass(frozen=True)
class Triangulation:
    """``q + p`` canonical arcs; position ``k`` is quiver vertex ``k``."""
    q: int
    p: int
    arcs: tuple

    def __post_init__(self):
        q, p = self.q, self.p
        if q < 1 or p < 1:
            raise QuiverError("q and p must be positive")
        arcs = tuple(canonical(a, q, p) for a in self.arcs)
        if any(a is None for a in arcs):
            raise TriangulationError("boundary segments are not arcs")
        object.__setattr__(self, "arcs", arcs)

    @property
    def N(self) -> int:
        return self.q + self.p

    def validate(self) -> None:
        q, p, arcs = self.q, self.p, self.arcs
        if len(arcs) != self.N:
            raise TriangulationError(f"expected {self.N} arcs, got {len(arcs)}")
        if len(set(arcs)) != len(arcs):
            raise TriangulationError("repeated arc")
        for a in arcs:
            if arcs_cross(a, a, q, p):
                raise TriangulationError(f"arc {a} crosses itself")
        for a, b in combinations(arcs, 2):
            if arcs_cross(a, b, q, p):
                raise TriangulationError(f"arcs {a} and {b} cross")

    def index(self, arc) -> int:
        arc = canonical(arc, self.q, self.p)
        try:
            return self.arcs.index(arc)
        except ValueError:
            raise TriangulationError(f"arc {arc} is not in the triangulation") from None

    def _window(self):
        q, p = self.q, self.p
        R = math.ceil(max(_extent(a, q, p) for a in self.arcs)) + 3
        return R

    def chords(self) -> dict:
        """Lifted chords near the origin: endpoint pair -> arc index (None for boundary)."""
        q, p = self.q, self.p
        R = self._window()
        out = {}
        for idx, a in enumerate(self.arcs):
            c = _center(a, q, p)
            for k in range(c - 2 * R, c + 2 * R + 1):
                out[lift(a, k, q, p)] = idx
        lo, hi = -3 * R - 2, 3 * R + 2
        for i in range(lo * q, hi * q):
            out[((BOTTOM, i), (BOTTOM, i + 1))] = None
        for j in range(lo * p, hi * p):
            out[tuple(sorted(((TOP, -j), (TOP, -(j + 1)))))] = None
        return out

    def triangles(self) -> list:
        """One representative per deck orbit, as ``(a, b, c)`` sorted keys with side labels."""
        q, p = self.q, self.p
        chords = self.chords()
        adj: dict = {}
        for u, v in chords:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        seen = set()
        out = []
        for (u, v) in chords:
            for w in adj[u] & adj[v]:
                tri = tuple(sorted((u, v, w)))
                side, val = tri[0]
                k = val // q if side == BOTTOM else (-val) // p
                norm = tuple(_shift_key(x, -k, q, p) for x in tri)
                if norm in seen:
                    continue
                seen.add(norm)
                a, b, c = norm
                sides = {}
                for x, y in ((a, b), (b, c), (a, c)):
                    sides[(x, y)] = chord_to_arc(x, y, q, p)
                out.append((norm, {key: (None if arc is None else self.arcs.index(arc))
                                   for key, arc in sides.items()}))
        out.sort()
        if len(out) != self.N:
            raise TriangulationError(f"found {len(out)} triangles, expected {self.N}")
        return out

    def to_json_obj(self) -> dict:
        return {"q": self.q, "p": self.p, "arcs": [a.to_json_obj() for a in self.arcs]}

    @classmethod
    def from_json_obj(cls, obj) -> "Triangulation":
        try:
            T = cls(int(obj["q"]), int(obj["p"]), tuple(arc_from_json_obj(a) for a in obj["arcs"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed triangulation: {exc}") from None
        T.validate()
        return T

    def serialize(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


def initial_triangulation(q: int, p: int) -> Triangulation:
    """Zig-zag triangulation; arc ``k`` joins ``B_{k - floor(kp/N)}`` to ``T_{floor(kp/N)}``
    and sits at quiver vertex ``kp mod N``."""
    if q < 1 or p < 1 or math.gcd(q, p) != 1:
        raise QuiverError(f"unsupported parameters ({q}, {p})")
    N = q + p
    arcs = [None] * N
    for k in range(N):
        f = k * p // N
        arcs[k * p % N] = Crossing(k - f, f)
    T = Triangulation(q, p, tuple(arcs))
    T.validate()
    return T


def quiver_from_triangulation(T: Triangulation) -> ExchangeMatrix:
    """Inside every triangle each arc points to the next one clockwise."""
    T.validate()
    n = T.N
    b = [[0] * n for _ in range(n)]
    for (a, bb, c), sides in T.triangles():
        ab, bc, ca = sides[(a, bb)], sides[(bb, c)], sides[(a, c)]
        for s, t in ((ca, bc), (bc, ab), (ab, ca)):
            if s is None or t is None or s == t:
                continue
            b[s][t] += 1
            b[t][s] -= 1
    return ExchangeMatrix(b)


def _quadrilateral(T: Triangulation, k: int):
    q, p = T.q, T.p
    arc = T.arcs[k]
    u, v = lift(arc, _center(arc, q, p), q, p)
    chords = T.chords()
    adj: dict = {}
    for x, y in chords:
        adj.setdefault(x, set()).add(y)
        adj.setdefault(y, set()).add(x)
    apex = sorted(adj[u] & adj[v])
    if len(apex) != 2:
        raise TriangulationError(f"arc {arc} does not bound exactly two triangles")
    return u, v, apex[0], apex[1], chords


def flip(T: Triangulation, arc):
    """Replace ``arc`` by the other diagonal of its quadrilateral.

    ``arc`` may be an arc or its index.  Returns ``(new triangulation, new arc)``.
    """
    k = arc if isinstance(arc, int) else T.index(arc)
    if not 0 <= k < T.N:
        raise TriangulationError(f"arc index {k} out of range")
    _, _, c, d, _ = _quadrilateral(T, k)
    new = chord_to_arc(c, d, T.q, T.p)
    if new is None:
        raise TriangulationError("flip produced a boundary segment")
    arcs = list(T.arcs)
    arcs[k] = new
    out = Triangulation(T.q, T.p, tuple(arcs))
    out.validate()
    return out, new


def ptolemy_value(T: Triangulation, k: int, values) -> LaurentPoly:
    """Variable of the flipped arc: ``(v(ac) v(bd) + v(ad) v(bc)) / v(ab)``.

    ``values[i]`` is the variable on arc ``i``; boundary segments count as 1.
    """
    a, b, c, d, chords = _quadrilateral(T, k)
    one = LaurentPoly.const(values[0].nvars, 1)

    def val(x, y):
        idx = chords[tuple(sorted((x, y)))]
        return one if idx is None else values[idx]

    return (val(a, c) * val(b, d) + val(a, d) * val(b, c)).exact_div(values[k])


def ptolemy_check(T: Triangulation, k: int, values, new_value: LaurentPoly) -> bool:
    """``x_k x_k' == x_a x_c + x_b x_d`` around the quadrilateral of arc ``k``."""
    a, b, c, d, chords = _quadrilateral(T, k)
    one = LaurentPoly.const(values[0].nvars, 1)

    def val(x, y):
        idx = chords[tuple(sorted((x, y)))]
        return one if idx is None else values[idx]

    return values[k] * new_value == val(a, c) * val(b, d) + val(a, d) * val(b, c)


def flip_with_values(T: Triangulation, k: int, values):
    new_value = ptolemy_value(T, k, values)
    T2, _ = flip(T, k)
    vals = list(values)
    vals[k] = new_value
    return T2, tuple(vals)


# -- arcs as cluster variables -------------------------------------------------

@dataclass(frozen=True)
class ArcVariable:
    """Symbolic name of an arc's cluster variable.

    ``family`` is ``"x"`` (the value is ``x_index``), ``"J"`` (``D^span_p(J_index)``)
    or ``"Jtilde"`` (``D^span_q(J~_index)``).
    """
    family: str
    index: int
    span: int = 0

    def __str__(self) -> str:
        if self.family == "x":
            return f"x_{self.index}"
        step = "p" if self.family == "J" else "q"
        return f"D^{self.span}_{step}({self.family}_{self.index})"


def arc_variable(arc, q: int, p: int) -> ArcVariable:
    arc = canonical(arc, q, p)
    if isinstance(arc, Crossing):
        return ArcVariable("x", p * arc.bottom - q * arc.top)
    if isinstance(arc, PeripheralBottom):
        return ArcVariable("J", arc.start * p, arc.span)
    return ArcVariable("Jtilde", -arc.start * q, arc.span)


def evaluate_arc_variable(var: ArcVariable, families) -> LaurentPoly:
    """``families`` provides ``seq`` (x_n), ``J`` and ``Jtilde`` callables."""
    if var.family == "x":
        return families.seq(var.index)
    from .continuant import continuant
    if var.family == "J":
        return continuant(families.J, families.J.step, var.span, var.index)
    return continuant(families.Jtilde, families.Jtilde.step, var.span, var.index)


# -- affine D arcs: labelling and counting only --------------------------------

GAMMA_11, GAMMA_PUNC, GAMMA_20, GAMMA_EXCEPT = "Gamma_11", "Gamma_punc", "Gamma_20", "Gamma_except"


def classify_d_arc(N: int, kind: str, *args) -> tuple[str, str]:
    """Family and variable name of an arc on the twice-punctured disc with N-2 marked points.

    ``kind``: ``"separating"`` (i, j, m) for gamma(v_i, v_j, m); ``"boundary"`` (i, l)
    for the arc from v_i jumping l points with both punctures on one side;
    ``"punctured"`` (i, m) for the arc inside gamma(v_i, v_i, m); ``"exceptional"`` (k,)
    with k in 0..2.
    """
    if N < 4:
        raise QuiverError("affine D requires N >= 4")
    M = N - 2
    if kind == "separating":
        i, j, m = args
        _check_vertex(i, M)
        _check_vertex(j, M)
        return GAMMA_11, f"gamma(v_{i},v_{j},{m})"
    if kind == "boundary":
        i, l = args
        _check_vertex(i, M)
        if not 1 <= l <= N - 3:
            raise ValueError(f"span {l} outside 1..{N - 3}")
        return GAMMA_20, f"D^{l}_1(J'_{i})"
    if kind == "punctured":
        i, m = args
        _check_vertex(i, M)
        return GAMMA_PUNC, f"punc(v_{i},{m})"
    if kind == "exceptional":
        (k,) = args
        if k not in (0, 1, 2):
            raise ValueError("there are exactly three exceptional arcs")
        return GAMMA_EXCEPT, f"except_{k}"
    raise ValueError(f"unknown arc kind {kind!r}")


def _check_vertex(i: int, M: int) -> None:
    if not 0 <= i < M:
        raise ValueError(f"boundary vertex {i} outside 0..{M - 1}")


def d_arc_counts(N: int, winding: int) -> dict:
    """Family sizes with windings restricted to ``|m| <= winding``."""
    if N < 4:
        raise QuiverError("affine D requires N >= 4")
    M, w = N - 2, 2 * winding + 1
    return {GAMMA_11: M * M * w, GAMMA_PUNC: M * w, GAMMA_20: M * (N - 3), GAMMA_EXCEPT: 3}
