"""Units and numerical tolerances shared by every module.

Everything is computed with hbar = k_B = 1. The two scalars are kept here so
callers can rescale results for display; they are never mutated internally.
"""

import os

HBAR = 1.0
KB = 1.0

DEFAULT_TOL = 1e-10
TOL_ENV_VAR = "RSFKIT_TOL"


def default_tol():
    """Absolute tolerance used when a function is called with ``tol=None``.

    The ``RSFKIT_TOL`` environment variable overrides the built-in 1e-10.
    """
    raw = os.environ.get(TOL_ENV_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_TOL
    value = float(raw)
    if not value > 0:
        raise ValueError(f"{TOL_ENV_VAR} must be a positive number, got {raw!r}")
    return value


def resolve_tol(tol):
    return default_tol() if tol is None else float(tol)
