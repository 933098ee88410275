"""Shared exception types for resource caps and numerical-accuracy failures."""


class CapExceededError(RuntimeError):
    """A requested computation exceeds a configured size cap.

    Raised instead of silently falling back to sampling or truncation; callers
    must either shrink the instance or raise the cap explicitly.
    """


class IntegrationAccuracyError(RuntimeError):
    """Time integration lost too much accuracy (norm drift above tolerance)."""
