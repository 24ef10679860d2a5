"""Write experiment reports to JSON, CSV and Excel."""
from __future__ import annotations

from collections.abc import Iterable
from pathlib import Path
from typing import Dict

from exporters.report_exporters import CSVExporter, ExcelExporter, JSONExporter
from rainbowthreshold.experiments import ExperimentReport

_SUPPORTED_FORMATS = {"json", "csv", "excel"}
_ALIASES = {"xlsx": "excel"}


def _normalise_formats(formats: Iterable[str] | None) -> set[str]:
    if formats is None:
        return {"json", "csv"}
    requested = {_ALIASES.get(fmt.strip().lower(), fmt.strip().lower()) for fmt in formats if fmt}
    invalid = requested - _SUPPORTED_FORMATS
    if invalid:
        raise ValueError(f"Unsupported export formats requested: {sorted(invalid)}")
    return requested or {"json", "csv"}


def export_reports(
    reports: Iterable[ExperimentReport],
    *,
    out_dir: str | Path,
    formats: Iterable[str] | None = None,
    include_timing: bool = False,
) -> Dict[str, Path]:
    """Export ``reports`` into ``out_dir`` as ``reports.json``, ``reports.csv`` and ``reports.xlsx``.

    The JSON file is byte-identical across runs with the same seeds unless
    ``include_timing`` adds wall times.
    """

    requested_formats = _normalise_formats(formats)
    base_dir = Path(out_dir).resolve()
    collected = list(reports)
    documents = [report.to_dict(include_timing=include_timing) for report in collected]
    rows = [report.to_row() for report in collected]
    if include_timing:
        for row, report in zip(rows, collected):
            row["wall_time"] = report.wall_time

    outputs: Dict[str, Path] = {}
    if "json" in requested_formats:
        outputs["json"] = JSONExporter(base_dir).export(documents)
    if "csv" in requested_formats:
        outputs["csv"] = CSVExporter(base_dir).export(rows)
    if "excel" in requested_formats:
        outputs["excel"] = ExcelExporter(base_dir).export(rows, documents)
    return outputs


__all__ = ["export_reports"]
