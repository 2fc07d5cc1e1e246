"""Shared exception types and capacity handling."""

from __future__ import annotations

import os


class InputError(ValueError):
    """A structurally invalid input (bad labels, broken invariants, ...)."""


class CapacityError(RuntimeError):
    """An input exceeds a soft capacity bound of an exact procedure."""


class BudgetExhausted(RuntimeError):
    """A search ran out of its time budget before reaching a verdict."""


def capacity_override() -> bool:
    """True when the MIL_CAPACITY_OVERRIDE environment variable lifts bounds."""
    return os.environ.get("MIL_CAPACITY_OVERRIDE", "") not in ("", "0", "false", "no")


def check_capacity(actual: int, bound: int, what: str) -> None:
    if actual > bound and not capacity_override():
        raise CapacityError(
            f"{what}: {actual} exceeds the soft bound {bound} "
            "(set MIL_CAPACITY_OVERRIDE=1 to lift)"
        )
