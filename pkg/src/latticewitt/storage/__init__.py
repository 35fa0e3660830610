"""Storage layer for configs and reports."""

from .json_storage import ReportStorage

__all__ = ["ReportStorage"]
