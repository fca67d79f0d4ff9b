"""Enumeration bounds and output settings shared by the library and the CLI."""

from __future__ import annotations

from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class Config:
    int_bound: int = 8
    base_limit: int = 12  # atoms swept by the here-and-there equivalence check
    eq_limit: int = 20  # atoms searched for stable models
    instance_cap: int = 100_000
    interval_cap: int = 10_000
    quantifier_cap: int = 1_000_000
    format: str = "text"
    solver: str | None = None
    timeout: float = 30.0

    def __post_init__(self):
        if self.int_bound < 0:
            raise ValueError("int_bound must be non-negative")
        for name in ("base_limit", "eq_limit", "instance_cap", "interval_cap", "quantifier_cap"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")
        if self.format not in ("text", "json"):
            raise ValueError(f"unknown output format {self.format!r}")

    def limits(self) -> dict:
        d = asdict(self)
        for key in ("format", "solver", "timeout"):
            d.pop(key)
        return d
