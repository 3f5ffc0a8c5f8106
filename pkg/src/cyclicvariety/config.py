"""Enumeration and size budgets.

Every budget can be overridden through an environment variable named
``CYCLICVARIETY_BUDGET_<NAME>`` (e.g. ``CYCLICVARIETY_BUDGET_POINTS``).
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, fields, replace

from .errors import BudgetExceeded

ENV_PREFIX = "CYCLICVARIETY_BUDGET_"


@dataclass(frozen=True)
class Budgets:
    points: int = 10**7
    tuples: int = 10**7
    field: int = 2**31
    messages: int = 2**24

    @classmethod
    def from_env(cls, environ=None) -> "Budgets":
        environ = os.environ if environ is None else environ
        overrides = {}
        for f in fields(cls):
            raw = environ.get(ENV_PREFIX + f.name.upper())
            if raw is not None:
                overrides[f.name] = int(raw)
        return cls(**overrides)

    def with_overrides(self, **kwargs) -> "Budgets":
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})

    def as_dict(self) -> dict:
        return asdict(self)

    def check(self, name: str, amount: int) -> None:
        limit = getattr(self, name)
        if amount > limit:
            raise BudgetExceeded(f"{name} budget exceeded: {amount} > {limit}")


_current = Budgets.from_env()


def get_budgets() -> Budgets:
    return _current


def set_budgets(budgets: Budgets) -> None:
    global _current
    _current = budgets
