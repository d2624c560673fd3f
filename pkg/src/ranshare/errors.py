"""Shared exception types."""

from __future__ import annotations


class ConfigError(ValueError):
    """One or more scenario-config violations, each tied to a field path."""

    def __init__(self, violations: list[tuple[str, str]]):
        self.violations = list(violations)
        super().__init__("; ".join(f"{path}: {msg}" for path, msg in self.violations))
