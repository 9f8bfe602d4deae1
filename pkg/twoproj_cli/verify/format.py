from __future__ import annotations

from typing import TYPE_CHECKING

from rich.markup import escape
from rich.table import Table

from ..utils import console

if TYPE_CHECKING:
    from .suite import CheckResult, VerifyReport


def format_value(value: float) -> str:
    if isinstance(value, int):
        return str(value)
    return f"{value:.3e}"


def format_check(result: CheckResult) -> None:
    """Print one check as it completes."""
    from ..widgets import STATUS_COLORS

    color = STATUS_COLORS[result.status]
    console.print(
        f"  [{color}]{result.status.upper():4}[/{color}] {result.name} "
        f"[dim]{format_value(result.measured)} {result.comparison} "
        f"{format_value(result.threshold)}[/dim]"
    )


def format_report_table(report: VerifyReport) -> Table:
    """Rich table of every check with pass/fail coloring and a totals row."""
    from ..widgets import STATUS_COLORS

    table = Table(title="Verification")
    table.add_column("Check", style="cyan", no_wrap=True)
    table.add_column("Status", style="bold")
    table.add_column("Measured", justify="right")
    table.add_column("Threshold", justify="right")
    table.add_column("Detail")

    for check in report.checks:
        color = STATUS_COLORS[check.status]
        table.add_row(
            check.name,
            f"[{color}]{check.status}[/{color}]",
            format_value(check.measured),
            f"{check.comparison} {format_value(check.threshold)}",
            escape(check.detail),
        )

    passed = len(report.checks) - len(report.failed)
    table.add_section()
    table.add_row("[bold]Total[/bold]", f"[bold]{passed}/{len(report.checks)}[/bold]", "", "", "")
    return table
