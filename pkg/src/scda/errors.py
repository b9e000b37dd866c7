"""Exception hierarchy shared across the toolkit.

The CLI maps these onto process exit codes, so new error types should
subclass one of the three below rather than Exception directly.
"""

from __future__ import annotations


class ScdaError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(ScdaError):
    """Bad configuration or unusable asset files (exit code 1)."""


class DataError(ScdaError):
    """Malformed input data (exit code 2)."""


class ProviderError(ScdaError):
    """A pluggable provider failed hard (exit code 3).

    Carries the provider identity so operators can tell which remote
    endpoint or builtin component misbehaved.
    """

    def __init__(self, provider: str, message: str):
        self.provider = provider
        super().__init__(f"provider {provider!r}: {message}")
