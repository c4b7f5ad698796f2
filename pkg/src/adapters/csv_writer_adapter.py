"""
CSV and JSON artifact writer.

This module provides the CsvWriterAdapter class that writes the tabular
results of an analysis run. Output is bit-stable: floats are written with
repr (shortest round-trip form), rows end in a bare "\\n", and JSON keys
are sorted.

Example:
    adapter = CsvWriterAdapter()
    adapter.write_rows(
        "out/steady.csv",
        headers=["r", "rho0", "g0", "vtheta0"],
        rows=[[0.5, 4.65, 4.65, 2.91]],
        overwrite=True,
    )
"""

import csv
import json
import logging
import math
import os
from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np

from src.exceptions.mill_exceptions import OutputError

logger = logging.getLogger(__name__)


class CsvWriterAdapter:
    """
    Adapter for writing run artifacts.

    Values are formatted by type: bool -> 0/1, float -> repr, None -> empty,
    enums -> their value, anything else -> str.
    """

    def _validate_output_path(self, file_path: str, overwrite: bool = False) -> Path:
        """
        Validate and prepare the output file path.

        Args:
            file_path: Path where the file will be written.
            overwrite: Whether to overwrite if the file exists.

        Returns:
            Path object for the output file.

        Raises:
            OutputError: If the file exists without overwrite, or its
                directory cannot be created or written.
        """
        path = Path(file_path)

        if path.exists() and not overwrite:
            raise OutputError(file_path, "file already exists and overwrite is False")

        parent = path.parent
        try:
            parent.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise OutputError(file_path, f"cannot create directory {parent}: {e}") from e

        if not os.access(str(parent), os.W_OK):
            raise OutputError(file_path, f"directory {parent} is not writable")

        return path

    def _format_cell(self, value: Any) -> str:
        if value is None:
            return ""
        if isinstance(value, Enum):
            return str(value.value)
        if isinstance(value, (bool, np.bool_)):
            return "1" if value else "0"
        if isinstance(value, (float, np.floating)):
            number = float(value)
            return repr(number) if math.isfinite(number) else str(number)
        if isinstance(value, np.integer):
            return str(int(value))
        return str(value)

    def write_rows(
        self,
        file_path: str,
        headers: list[str],
        rows: list[list[Any]],
        overwrite: bool = False,
    ) -> dict[str, Any]:
        """
        Write a header row and data rows to a CSV file.

        Args:
            file_path: Destination path; missing directories are created.
            headers: Column names.
            rows: Data rows, each as long as headers.
            overwrite: Whether to replace an existing file.

        Returns:
            Dictionary containing:
                - file_path: Path to the written file
                - rows_written: Number of data rows written
                - file_size_bytes: Size of the file in bytes

        Raises:
            OutputError: If a row has the wrong width or writing fails.
        """
        path = self._validate_output_path(file_path, overwrite)
        for index, row in enumerate(rows):
            if len(row) != len(headers):
                raise OutputError(
                    file_path,
                    f"row {index} has {len(row)} values for {len(headers)} columns",
                )

        try:
            with open(path, "w", encoding="utf-8", newline="") as handle:
                writer = csv.writer(handle, lineterminator="\n")
                writer.writerow(headers)
                for row in rows:
                    writer.writerow([self._format_cell(value) for value in row])
        except OSError as e:
            raise OutputError(file_path, str(e)) from e

        logger.info("wrote %s (%d rows)", path, len(rows))
        return {
            "file_path": str(path),
            "rows_written": len(rows),
            "file_size_bytes": path.stat().st_size,
        }

    def write_json(
        self,
        file_path: str,
        payload: dict[str, Any],
        overwrite: bool = False,
    ) -> dict[str, Any]:
        """
        Write a JSON document with sorted keys and a trailing newline.

        Raises:
            OutputError: If writing fails.
        """
        path = self._validate_output_path(file_path, overwrite)
        try:
            text = json.dumps(payload, indent=2, sort_keys=True, allow_nan=True)
            path.write_text(text + "\n", encoding="utf-8")
        except (OSError, TypeError, ValueError) as e:
            raise OutputError(file_path, str(e)) from e

        logger.info("wrote %s", path)
        return {"file_path": str(path), "file_size_bytes": path.stat().st_size}
