"""Exporters for report tables."""

from .csv_exporter import CSVExporter

__all__ = ["CSVExporter"]
