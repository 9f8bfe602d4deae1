from __future__ import annotations

from .run import cli, main, main_tui, run

__all__ = ("cli", "main", "main_tui", "run")
