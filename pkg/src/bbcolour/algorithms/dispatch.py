"""Run every applicable algorithm and keep the smallest verified span."""
from __future__ import annotations

from fractions import Fraction

from ..chordal import NotChordalError, peo
from ..exact import exact_mad
from ..graph import BackboneInstance, Colouring, Graph
from .base import AlgorithmReport, ConstructionError, PreconditionError, double_spaced_colouring
from .forests import colour_forest_partition
from .interval import colour_interval_bipartite
from .sparse import MAD_CHECK_THRESHOLD, colour_sparse_peel

EXACT_MAD_LIMIT = MAD_CHECK_THRESHOLD


def degeneracy(h: Graph) -> int:
    deg = [len(s) for s in h.adj]
    buckets: dict[int, set[int]] = {}
    for v in h.vertices:
        buckets.setdefault(deg[v], set()).add(v)
    alive = [True] * (h.n + 1)
    best = 0
    for _ in range(h.n):
        d = min(k for k, s in buckets.items() if s)
        v = min(buckets[d])
        buckets[d].discard(v)
        alive[v] = False
        best = max(best, d)
        for u in h.adj[v]:
            if alive[u]:
                buckets[deg[u]].discard(u)
                deg[u] -= 1
                buckets.setdefault(deg[u], set()).add(u)
    return best


def mad_parameter(inst: BackboneInstance) -> Fraction:
    """Exact Mad(H) on moderate instances, else the bound 2 * degeneracy."""
    h = inst.backbone
    if inst.n <= EXACT_MAD_LIMIT:
        return exact_mad(h).value
    return Fraction(2 * degeneracy(h))


def _rejected(name: str, inst: BackboneInstance, omega: int, why: str) -> AlgorithmReport:
    return AlgorithmReport(name, inst.n, omega, note=f"rejected: {why}")


def best_colouring(inst: BackboneInstance) -> tuple[Colouring, list[AlgorithmReport]]:
    """Smallest verified span over the applicable algorithms.  Raises
    PreconditionError only when the host is not chordal."""
    try:
        peo(inst.host)
    except NotChordalError as exc:
        raise PreconditionError(f"host graph is not chordal ({exc})") from None
    best, report = double_spaced_colouring(inst)
    reports = [report]
    omega = report.omega
    if inst.q != 2:
        for name in ("interval2", "sparse", "c4free"):
            reports.append(_rejected(name, inst, omega, f"q must be 2 (got {inst.q})"))
        return best, reports

    attempts = [
        ("interval2", colour_interval_bipartite),
        ("sparse", lambda i: colour_sparse_peel(i, mad_parameter(i) or 1)),
        ("c4free", colour_forest_partition),
    ]
    for name, run in attempts:
        try:
            col, rep = run(inst)
        except PreconditionError as exc:
            reports.append(_rejected(name, inst, omega, exc.condition))
            continue
        except ConstructionError as exc:
            reports.append(_rejected(name, inst, omega, f"construction failed: {exc}"))
            continue
        reports.append(rep)
        if col.span < best.span:
            best = col
    return best, reports
