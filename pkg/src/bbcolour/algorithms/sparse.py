"""2-backbone colouring for chordal hosts with a backbone of bounded maximum
average degree ``d``: span at most ``omega + 2*sqrt(d*omega) + 3d``.

Vertices with ``deg_G + 2*deg_H < k`` are peeled one at a time; whatever
survives is small (at most ``d/eps`` vertices when Mad(H) <= d) and gets the
double-spaced colouring.  Peeled vertices then return in reverse order, each
taking the smallest colour its coloured neighbours leave free.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction

from ..chordal import greedy_omega_colouring, peo
from ..exact import mad_exceeds
from ..graph import BackboneInstance, Colouring
from .base import (
    AlgorithmReport,
    ConstructionError,
    PreconditionError,
    chordal_omega_colouring,
    gate,
    require_q2,
    timed,
)

MAD_CHECK_THRESHOLD = 200


class MadViolation(PreconditionError):
    """Mad(H) > d.  ``witness`` is a vertex set whose subgraph shows it."""

    def __init__(self, condition: str, witness: frozenset[int]):
        super().__init__(condition)
        self.witness = witness


def ceil_sqrt_sum(a: Fraction, b: Fraction) -> int:
    """Exact ``ceil(a + sqrt(b))`` for rationals ``a`` and ``b >= 0``."""
    m = math.ceil(a + math.sqrt(b)) - 2
    m = max(m, math.ceil(a))
    while (m - a) ** 2 < b:
        m += 1
    while m - 1 >= a and (m - 1 - a) ** 2 >= b:
        m -= 1
    return m


@dataclass(frozen=True)
class SparsityParameters:
    d: Fraction
    omega: int
    eps: float
    c: float
    k: int

    @classmethod
    def compute(cls, d, omega: int) -> "SparsityParameters":
        d = to_fraction(d)
        if d <= 0:
            raise ValueError("d must be positive")
        eps = math.sqrt(d / omega)
        c = max(float(d) / eps, float(d) / (2 * eps) + 3 * float(d))
        k = math.floor((1 + eps) * omega + c + 1e-9)
        return cls(d, omega, eps, c, k)

    @property
    def guaranteed_bound(self) -> int:
        """``ceil(omega + 2*sqrt(d*omega) + 3d)``, computed exactly."""
        return ceil_sqrt_sum(self.omega + 3 * self.d, 4 * self.d * self.omega)

    @property
    def base_size(self) -> int:
        """``ceil(d/eps)``: most vertices a stuck residual may have."""
        return math.ceil(float(self.d) / self.eps - 1e-9)


def to_fraction(d) -> Fraction:
    if isinstance(d, float):
        return Fraction(str(d))
    return Fraction(d)


def colour_sparse_peel(inst: BackboneInstance, d, mad_check_threshold: int = MAD_CHECK_THRESHOLD
                       ) -> tuple[Colouring, AlgorithmReport]:
    require_q2(inst)
    g = inst.host
    f = chordal_omega_colouring(inst)
    omega = f.span
    report = AlgorithmReport("sparse", inst.n, omega)
    if not inst.backbone_edges:
        with timed(report):
            report.note = "edgeless backbone"
            gate(inst, f, report, omega)
        return f, report

    params = SparsityParameters.compute(d, omega)
    with timed(report):
        if inst.n <= mad_check_threshold:
            witness = mad_exceeds(inst.backbone, params.d)
            if witness is not None:
                raise MadViolation(f"Mad(H) > d = {params.d}", witness)
        k = params.k
        adj_g = g.adj
        adj_h: list[list[int]] = [[] for _ in range(g.n + 1)]
        for u, v in inst.backbone_edges:
            adj_h[u].append(v)
            adj_h[v].append(u)
        deg_g = [len(s) for s in adj_g]
        deg_h = [len(s) for s in adj_h]
        removed = [False] * (g.n + 1)

        def key(v):
            return deg_g[v] + 2 * deg_h[v]

        heap = [(key(v), v) for v in g.vertices if key(v) < k]
        heapq.heapify(heap)
        stack = []
        while heap:
            kv, v = heapq.heappop(heap)
            if removed[v] or kv != key(v):
                continue
            removed[v] = True
            stack.append(v)
            touched = set()
            for u in adj_g[v]:
                if not removed[u]:
                    deg_g[u] -= 1
                    touched.add(u)
            for u in adj_h[v]:
                if not removed[u]:
                    deg_h[u] -= 1
            for u in touched:
                if key(u) < k:
                    heapq.heappush(heap, (key(u), u))

        residual = [v for v in g.vertices if not removed[v]]
        if len(residual) > params.base_size:
            raise MadViolation(
                f"{len(residual)} vertices left with deg_G + 2 deg_H >= {k}; "
                f"more than ceil(d/eps) = {params.base_size}, so Mad(H) > d",
                frozenset(residual),
            )
        colour: dict[int, int] = {}
        if residual:
            sub, labels = g.induced(residual)
            base = greedy_omega_colouring(sub, peo(sub))
            for v, c in base.assignment.items():
                colour[labels[v]] = 2 * c - 1
        for v in reversed(stack):
            blocked = set()
            for u in adj_g[v]:
                if u in colour:
                    blocked.add(colour[u])
            for u in adj_h[v]:
                if u in colour:
                    c = colour[u]
                    blocked.update((c - 1, c + 1))
            c = 1
            while c in blocked:
                c += 1
            if c > k:
                raise ConstructionError(f"no free colour for vertex {v} among 1..{k}")
            colour[v] = c
        col = Colouring(colour)
        gate(inst, col, report, k)
        if col.span > params.guaranteed_bound:
            raise ConstructionError(f"span {col.span} above {params.guaranteed_bound}")
    return col, report
