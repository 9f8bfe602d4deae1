from __future__ import annotations

from typing import TYPE_CHECKING

from rich.markup import escape
from rich.text import Text
from textual.widgets import Static

if TYPE_CHECKING:
    from .verify import VerifyReport

# Colors for check outcomes
STATUS_COLORS = {
    "pass": "#98fb98",
    "fail": "#ff6b6b",
}


class CheckResultWidget(Static):
    """A widget that displays verify results with status coloring.

    Shows a pass/total bar followed by one line per check. Failed checks
    also show their detail text.
    """

    def __init__(self, report: VerifyReport, **kwargs) -> None:
        super().__init__(**kwargs)
        self._report = report
        self._refresh_display()

    def _refresh_display(self) -> None:
        report = self._report
        total = len(report.checks)
        passed = total - len(report.failed)

        bar_width = 30
        filled = int((passed / total) * bar_width) if total else 0
        bar = "█" * filled + "░" * (bar_width - filled)
        lines = [f"Checks: [{bar}] {passed}/{total}"]

        for check in report.checks:
            color = STATUS_COLORS[check.status]
            lines.append(f"[{color}]{check.status.upper():4}[/{color}] {check.name}")
            if not check.passed and check.detail:
                lines.append(f"     [dim]{escape(check.detail)}[/dim]")

        self.update(Text.from_markup("\n".join(lines)))
