"""Exception types shared across the package.

Kept in one place so the CLI can map failure categories to exit codes
without importing every module.
"""
from __future__ import annotations


class VortexedError(Exception):
    """Base class for all package-specific failures."""


class ConfigError(VortexedError):
    """Bad or inconsistent run configuration (unknown key, range violation,
    conflicting frequency settings, malformed config file)."""


class DimensionCapError(VortexedError):
    """Requested basis would exceed the hard dimension cap."""

    def __init__(self, would_be: int, cap: int):
        self.would_be = would_be
        self.cap = cap
        super().__init__(
            f"basis dimension {would_be} exceeds the cap {cap}; "
            "tighten the L window or lower n_ll"
        )


class EmptyBasisError(VortexedError):
    """No Fock state satisfies the requested truncation."""


class TableCoverageError(VortexedError):
    """A matrix-element table does not cover the modes of the basis."""


class DimensionTooLargeError(VortexedError):
    """Dense operation requested above the dense-path cap."""


class UnnormalizedStateError(VortexedError):
    """State vector norm deviates from 1 beyond tolerance."""


class LeakageError(VortexedError):
    """Mode rotation lost norm, i.e. the target space truncates support."""


class OrbitalConsistencyError(VortexedError):
    """Supplied orbital is not an eigenvector of the state's density matrix."""


class NoCrossingError(VortexedError):
    """Occupation crossing not found inside the requested bracket."""
