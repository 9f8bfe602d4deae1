from __future__ import annotations

from .format import format_check, format_report_table
from .suite import CHECK_GROUPS, REPORT_COLUMNS, CheckResult, VerifyReport, run_suite

__all__ = [
    "CHECK_GROUPS",
    "REPORT_COLUMNS",
    "CheckResult",
    "VerifyReport",
    "format_check",
    "format_report_table",
    "run_suite",
]
