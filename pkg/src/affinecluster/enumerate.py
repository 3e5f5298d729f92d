"""Breadth-first mutation closure as an independent oracle, and the
variable sets it is compared against."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .continuant import continuant
from .frieze import FriezeTable
from .laurent import InexactDivisionError, LaurentPoly
from .periodic import JPRIME, ASystem, PeriodicFamily
from .quiver import Seed, a_tilde_matrix, d_tilde_matrix, mutate_seed

WORKERS_ENV = "AFFINECLUSTER_WORKERS"


class EnumerationError(RuntimeError):
    """Either the oracle met a non-Laurent exchange or a found variable was not predicted."""

    def __init__(self, message: str, path=None, details=None):
        super().__init__(message)
        self.path = path
        self.details = details


def _children(item):
    seed, path = item
    out = []
    for k in range(seed.n):
        try:
            out.append((mutate_seed(seed, k), path + (k,)))
        except InexactDivisionError as exc:
            raise EnumerationError(f"inexact exchange along path {path + (k,)}",
                                   path=path + (k,)) from exc
    return out


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None


@dataclass
class BFSResult:
    variables: set
    seeds: int
    depth: int
    first_seen: dict = field(default_factory=dict)   # variable -> depth

    def __len__(self) -> int:
        return len(self.variables)


def bfs_explore(S: Seed, depth: int, workers: int | None = None) -> BFSResult:
    """All variables in seeds reachable by at most ``depth`` mutations.

    Seeds are deduplicated on exact (matrix, ordered variables).  The result
    does not depend on ``workers``: children are merged in frontier order.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    workers = worker_count() if workers is None else workers
    seen = {S.key()}
    first_seen = {v: 0 for v in S.vars}
    frontier = [(S, ())]
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        for d in range(1, depth + 1):
            if pool is not None and len(frontier) > 4 * workers:
                batches = list(pool.map(_children, frontier, chunksize=16))
            else:
                batches = [_children(item) for item in frontier]
            nxt = []
            for batch in batches:
                for child, path in batch:
                    key = child.key()
                    if key in seen:
                        continue
                    seen.add(key)
                    nxt.append((child, path))
                    for v in child.vars:
                        first_seen.setdefault(v, d)
            frontier = nxt
            if not frontier:
                break
    finally:
        if pool is not None:
            pool.shutdown()
    return BFSResult(set(first_seen), len(seen), depth, first_seen)


# -- predictions -------------------------------------------------------------

@dataclass
class Prediction:
    family: str
    frieze: dict           # variable -> n (frieze time)
    determinant: dict      # variable -> label
    window: tuple
    exceptional: int = 0   # placeholder count without formulas

    @property
    def all(self) -> set:
        return set(self.frieze) | set(self.determinant)


def predicted_variables(family: str, *, q=None, p=None, N=None, window=(-8, 8)) -> Prediction:
    """Frieze variables ``X^i_n`` for ``n`` in ``window`` plus the finite continuant families."""
    n_min, n_max = window
    fam = family.lower()
    if fam == "a":
        T = FriezeTable(a_tilde_matrix(q, p))
        sysA = ASystem.build(q, p)
        det = {}
        for j in range(q):
            for l in range(1, q):
                det.setdefault(continuant(sysA.J, p, l, j * p), f"D^{l}_p(J_{j * p})")
        for j in range(p):
            for l in range(1, p):
                det.setdefault(continuant(sysA.Jtilde, q, l, j * q), f"D^{l}_q(Jtilde_{j * q})")
        exceptional = 0
    elif fam == "d":
        T = FriezeTable(d_tilde_matrix(N))
        F = PeriodicFamily(JPRIME, table=T)
        det = {}
        for j in range(N - 2):
            for l in range(1, N - 2):
                det.setdefault(continuant(F, 1, l, j), f"D^{l}_1(J'_{j})")
        exceptional = 3
    else:
        raise ValueError(f"unknown family {family!r}")
    frieze = {}
    for (i, n), v in sorted(T.window(n_min, n_max).items(), key=lambda kv: (kv[0][1], kv[0][0])):
        frieze.setdefault(v, n)
    return Prediction(fam, frieze, det, (n_min, n_max), exceptional)


@dataclass
class CrossCheckReport:
    family: str
    found_not_predicted: list
    predicted_not_found: list
    extras: list
    counts: dict

    @property
    def passed(self) -> bool:
        return not self.found_not_predicted and not self.predicted_not_found

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "passed": self.passed,
            "found_not_predicted": [str(v) for v in self.found_not_predicted],
            "predicted_not_found": self.predicted_not_found,
            "extras": [str(v) for v in self.extras],
            "counts": self.counts,
        }


def _ordered(vs):
    return sorted(vs, key=lambda v: (len(v), v.serialize()))


def cross_check(found: BFSResult, predicted: Prediction) -> CrossCheckReport:
    """Affine A: found must sit inside the prediction and every continuant
    variable must be found.  Affine D: the continuant variables must be found;
    anything else outside the frieze window is reported as an extra."""
    vs = found.variables
    missing = sorted(label for v, label in predicted.determinant.items() if v not in vs)
    outside = [v for v in vs if v not in predicted.frieze and v not in predicted.determinant]
    n_min, n_max = predicted.window
    edge = sum(1 for v in vs if predicted.frieze.get(v) in (n_min, n_max))
    counts = {
        "found": len(vs),
        "seeds": found.seeds,
        "frieze_found": sum(1 for v in vs if v in predicted.frieze),
        "determinant_found": sum(1 for v in vs if v in predicted.determinant),
        "determinant_predicted": len(predicted.determinant),
        "window_edge_hits": edge,
    }
    if predicted.family == "a":
        report = CrossCheckReport("a", _ordered(outside), missing, [], counts)
        if outside:
            raise EnumerationError(f"{len(outside)} found variables were not predicted",
                                   details=report)
        return report
    counts["extras"] = len(outside)
    counts["exceptional_placeholder"] = predicted.exceptional
    return CrossCheckReport("d", [], missing, _ordered(outside), counts)


def non_frieze(found: BFSResult, predicted: Prediction) -> list[LaurentPoly]:
    return _ordered(v for v in found.variables if v not in predicted.frieze)
