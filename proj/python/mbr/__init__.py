"""Multi-agent belief revision over pointed Kripke models."""

from ._core import (
    DomainError,
    Error,
    Model,
    ParseError,
    SignatureError,
    StarUpdateError,
    replay,
    report_table,
    run_suite,
)

__all__ = [
    "DomainError",
    "Error",
    "Model",
    "ParseError",
    "SignatureError",
    "StarUpdateError",
    "replay",
    "report_table",
    "run_suite",
]
