"""CSV export of verification and cover reports."""

import json
from pathlib import Path
from typing import List

import pandas as pd

from ..models import CoverAuditReport, SuiteReport


class CSVExporter:
    """Exports report rows to CSV format."""

    def export_suites(self, reports: List[SuiteReport], output_path: Path) -> None:
        """Export one row per trial of every suite.

        Args:
            reports: Suite reports to export
            output_path: Path to output CSV file
        """
        df = self._suites_to_dataframe(reports)
        df.to_csv(output_path, index=False, encoding="utf-8")

    def export_cover(self, report: CoverAuditReport, output_path: Path) -> None:
        """Export one row per sampled component of a cover audit."""
        df = self._cover_to_dataframe(report)
        df.to_csv(output_path, index=False, encoding="utf-8")

    def _suites_to_dataframe(self, reports: List[SuiteReport]) -> pd.DataFrame:
        data = []
        for report in reports:
            for result in report.results:
                data.append({
                    "Suite": report.suite,
                    "Seed": report.seed,
                    "Trial": result.trial,
                    "Passed": result.passed,
                    "Parameters": json.dumps(result.parameters, sort_keys=True),
                    "Residual": result.residual or "",
                    "Location": result.location or "",
                })
        columns = ["Suite", "Seed", "Trial", "Passed", "Parameters", "Residual", "Location"]
        return pd.DataFrame(data, columns=columns)

    def _cover_to_dataframe(self, report: CoverAuditReport) -> pd.DataFrame:
        data = [
            {
                "Module": report.module,
                "Gamma": " ".join(str(c) for c in row.gamma),
                "Rank": row.rank,
                "Bound": row.bound,
                "Stabilized": row.stabilized,
                "Windows": " ".join(str(w) for w in row.windows),
            }
            for row in report.rows
        ]
        columns = ["Module", "Gamma", "Rank", "Bound", "Stabilized", "Windows"]
        return pd.DataFrame(data, columns=columns)
