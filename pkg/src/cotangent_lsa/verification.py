"""Pass/fail reports with concrete witnesses, shared by all checkers."""

from __future__ import annotations

from dataclasses import dataclass

from .exactnum import Scalar

# Reports are diagnostics, not exhaustive dumps; failures beyond the cap are
# counted but their witnesses are dropped.
WITNESS_CAP = 16


@dataclass(frozen=True)
class Witness:
    """One concrete failure of a checked identity, at basis resolution."""

    indices: tuple[int, ...]
    labels: tuple[str, ...]
    lhs: tuple[Scalar, ...] | None = None
    rhs: tuple[Scalar, ...] | None = None
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    check: str
    passed: bool
    witnesses: tuple[Witness, ...] = ()
    failure_count: int = 0
    note: str = ""

    @property
    def truncated(self) -> bool:
        return self.failure_count > len(self.witnesses)


def make_report(check: str, witnesses: list[Witness], note: str = "") -> VerificationReport:
    """Assemble a report; ``passed`` is true exactly when no witness exists."""
    return VerificationReport(
        check=check,
        passed=not witnesses,
        witnesses=tuple(witnesses[:WITNESS_CAP]),
        failure_count=len(witnesses),
        note=note,
    )
