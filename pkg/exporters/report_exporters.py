"""File exporters for experiment reports: deterministic JSON, CSV and Excel workbooks."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, List

import pandas as pd


def _checks_rows(reports: List[Dict[str, Any]]) -> List[Dict[str, Any]]:
    rows: List[Dict[str, Any]] = []
    for report in reports:
        parameters = report.get("parameters", {})
        for name, passed in report.get("checks", {}).items():
            rows.append(
                {
                    "experiment": report.get("experiment"),
                    "k": parameters.get("k"),
                    "n": parameters.get("n"),
                    "ell": parameters.get("ell"),
                    "check": name,
                    "passed": passed,
                }
            )
    return rows


class _ReportExporter:
    default_filename = "reports"

    def __init__(self, output_dir: Path) -> None:
        self.output_dir = output_dir
        self.output_dir.mkdir(parents=True, exist_ok=True)

    def _path(self, filename: str | None) -> Path:
        return self.output_dir / (filename or self.default_filename)


class JSONExporter(_ReportExporter):
    """Sorted keys and a trailing newline so equal reports give equal bytes."""

    default_filename = "reports.json"

    def export(self, documents: List[Dict[str, Any]], filename: str | None = None) -> Path:
        output_path = self._path(filename)
        with output_path.open("w", encoding="utf-8") as fh:
            json.dump(documents, fh, indent=2, sort_keys=True)
            fh.write("\n")
        return output_path


class CSVExporter(_ReportExporter):
    default_filename = "reports.csv"

    def export(self, rows: List[Dict[str, Any]], filename: str | None = None) -> Path:
        output_path = self._path(filename)
        pd.DataFrame(rows).to_csv(output_path, index=False, lineterminator="\n")
        return output_path


class ExcelExporter(_ReportExporter):
    default_filename = "reports.xlsx"

    def export(
        self,
        rows: List[Dict[str, Any]],
        documents: List[Dict[str, Any]],
        filename: str | None = None,
    ) -> Path:
        output_path = self._path(filename)
        with pd.ExcelWriter(output_path, engine="openpyxl") as writer:
            self._write_table_sheet(rows, "Reports", writer)
            self._write_table_sheet(_checks_rows(documents), "Checks", writer)
        return output_path

    def _write_table_sheet(
        self,
        items: List[Dict[str, Any]],
        sheet_name: str,
        writer: pd.ExcelWriter,
    ) -> None:
        df = pd.json_normalize(items) if items else pd.DataFrame()
        df.to_excel(writer, sheet_name=sheet_name[:31], index=False)


__all__ = ["JSONExporter", "CSVExporter", "ExcelExporter"]
