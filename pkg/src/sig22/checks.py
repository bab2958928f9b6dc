"""Named verification results shared by every module and the CLI report."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .numeric import Tolerance, is_exact


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    max_residual: object = "exact"  # float, or the string "exact" for an exact zero
    samples: int = 1
    detail: str = ""
    skipped: bool = False

    @property
    def status(self) -> str:
        if self.skipped:
            return "skipped"
        return "pass" if self.passed else "fail"

    def __bool__(self):
        return self.passed or self.skipped


def residual_check(name: str, residuals, tol: Tolerance | None = None, samples: int | None = None,
                   detail: str = "") -> Check:
    """Pass iff every residual vanishes: exactly on the exact path, within ``tol`` otherwise."""
    tol = tol or Tolerance()
    values = [r for r in _flatten(residuals)]
    count = samples if samples is not None else max(1, len(values))
    if not values:
        return Check(name, True, "exact", count, detail)
    if all(is_exact(v) for v in values):
        worst = max(abs(Fraction(v)) for v in values)
        if worst == 0:
            return Check(name, True, "exact", count, detail)
        return Check(name, False, float(worst), count, detail)
    worst = max(abs(float(v)) for v in values)
    return Check(name, worst <= tol.abs_tol, worst, count, detail)


def bool_check(name: str, ok: bool, detail: str = "", samples: int = 1) -> Check:
    return Check(name, bool(ok), "exact", samples, detail)


def merge(name: str, checks, detail: str = "") -> Check:
    """Combine several checks into one, keeping the worst residual."""
    checks = list(checks)
    passed = all(c.passed for c in checks)
    floats = [c.max_residual for c in checks if not isinstance(c.max_residual, str)]
    worst = max(floats) if floats else "exact"
    return Check(name, passed, worst, sum(c.samples for c in checks), detail)


def _flatten(x):
    if isinstance(x, np.ndarray):
        yield from x.flat
    elif isinstance(x, (list, tuple)) or hasattr(x, "__next__"):
        for item in x:
            yield from _flatten(item)
    else:
        yield x


@dataclass
class Report:
    """An ordered list of checks; passes iff every non-skipped check passes."""
    title: str
    checks: list[Check] = field(default_factory=list)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if not c.skipped)

    def __bool__(self):
        return self.passed

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed and not c.skipped]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)
