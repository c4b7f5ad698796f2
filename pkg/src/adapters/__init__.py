"""
Adapters around third-party engines and file formats.

- LinalgAdapter: dense eigenvalues, singular values and norms (scipy.linalg)
- JsonConfigAdapter: run configuration from JSON (pydantic validation)
- CsvWriterAdapter: bit-stable CSV/JSON artifacts
"""

from src.adapters.csv_writer_adapter import CsvWriterAdapter
from src.adapters.json_config_adapter import JsonConfigAdapter
from src.adapters.linalg_adapter import LinalgAdapter

__all__ = [
    "LinalgAdapter",
    "JsonConfigAdapter",
    "CsvWriterAdapter",
]
