from __future__ import annotations

import time
from dataclasses import dataclass
from contextlib import contextmanager

from ..chordal import NotChordalError, greedy_omega_colouring, peo
from ..graph import BackboneInstance, Colouring, VerificationReport, verify_backbone_colouring


class PreconditionError(ValueError):
    """The instance is outside the class an algorithm handles."""

    def __init__(self, condition: str):
        self.condition = condition
        super().__init__(condition)


class ConstructionError(RuntimeError):
    """An algorithm built a colouring that the verifier rejects."""


@dataclass
class AlgorithmReport:
    algorithm: str
    n: int
    omega: int
    span: int | None = None
    bound: int | None = None
    certified: bool = False
    millis: float = 0.0
    verification: VerificationReport | None = None
    note: str = ""

    CSV_HEADER = ("instance", "algorithm", "n", "omega", "span", "bound", "certified", "millis")

    def csv_row(self, instance_id: str) -> list[str]:
        return [
            instance_id,
            self.algorithm,
            str(self.n),
            str(self.omega),
            "" if self.span is None else str(self.span),
            "" if self.bound is None else str(self.bound),
            "true" if self.certified else "false",
            f"{self.millis:.3f}",
        ]


@contextmanager
def timed(report: AlgorithmReport):
    start = time.perf_counter()
    try:
        yield report
    finally:
        report.millis = (time.perf_counter() - start) * 1000.0


def require_q2(inst: BackboneInstance) -> None:
    if inst.q != 2:
        raise PreconditionError(f"q must be 2 (got {inst.q})")


def chordal_omega_colouring(inst: BackboneInstance) -> Colouring:
    try:
        return greedy_omega_colouring(inst.host, peo(inst.host))
    except NotChordalError as exc:
        raise PreconditionError(f"host graph is not chordal ({exc})") from None


def gate(inst: BackboneInstance, col: Colouring, report: AlgorithmReport, bound: int | None) -> Colouring:
    """Verify ``col`` and record it; never hand back an invalid colouring."""
    check = verify_backbone_colouring(inst, col)
    report.verification = check
    if not check.valid:
        raise ConstructionError(
            f"{report.algorithm}: verifier rejected colouring ({check.violations[0]})"
        )
    report.span = col.span
    report.bound = bound
    report.certified = bound is None or col.span <= bound
    if not report.certified:
        raise ConstructionError(f"{report.algorithm}: span {col.span} exceeds bound {bound}")
    return col


def double_spaced_colouring(inst: BackboneInstance) -> tuple[Colouring, AlgorithmReport]:
    """``q*f(v) - q + 1`` over a greedy omega-colouring ``f`` of the chordal host."""
    f = chordal_omega_colouring(inst)
    omega = f.span
    report = AlgorithmReport("double", inst.n, omega)
    with timed(report):
        q = inst.q
        col = Colouring({v: q * c - q + 1 for v, c in f.assignment.items()})
        gate(inst, col, report, max(q * omega - q + 1, 0))
    return col, report
