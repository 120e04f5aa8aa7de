"""Exceptions shared across the package."""


class CapExceededError(RuntimeError):
    """An operation refused to run because it would exceed a configured
    resource cap (table size, direct-summation bound, ...)."""
