"""
Phantom QEC Toolkit - Utilities Module

This module provides helper functions shared across the toolkit: permutation
formatting for reports and logs, DataFrame conversion and file operations.
"""

from mylogger import logger
from typing import Any, Dict, List, Optional, Sequence, Union
import pandas as pd
import json
import sys
from pathlib import Path


logger.info("Loading utils module")


class QecUtils:
    """
    Static utility class providing helper methods for the toolkit.

    This class contains static methods for:
    - Permutation formatting (cycle notation)
    - Data formatting (DataFrame)
    - File operations (save/load json, jsonl, csv, bytes)
    """

    # ==================== Permutation Operations ====================

    @staticmethod
    def format_permutation(perm: Sequence[int]) -> str:
        """
        Cycle notation (1-based), fixed points omitted; "()" for the identity.

        Example:
            >>> QecUtils.format_permutation([2, 1, 0, 3])
            '(1 3)'
        """
        seen = [False] * len(perm)
        cycles = []
        for start in range(len(perm)):
            if seen[start] or perm[start] == start:
                seen[start] = True
                continue
            cycle, i = [], start
            while not seen[i]:
                seen[i] = True
                cycle.append(str(i + 1))
                i = perm[i]
            cycles.append("(" + " ".join(cycle) + ")")
        return "".join(cycles) or "()"

    # ==================== Data Formatting ====================

    @staticmethod
    def to_dataframe(data: Union[List, tuple, Dict], columns: Optional[List[str]] = None) -> pd.DataFrame:
        """
        Convert data to pandas DataFrame.

        Args:
            data: List of dicts or named tuples, or a dict of columns
            columns: Optional column names

        Raises:
            ValueError: If data cannot be converted to DataFrame
        """
        logger.debug(f"Converting to DataFrame: {type(data)}")

        try:
            if isinstance(data, (list, tuple)) and len(data) > 0 and hasattr(data[0], "_asdict"):
                data = [item._asdict() for item in data]
            df = pd.DataFrame(data, columns=columns)
            logger.debug(f"Created DataFrame with shape: {df.shape}")
            return df

        except Exception as e:
            logger.error(f"Error converting to DataFrame: {e}")
            raise ValueError(f"Failed to convert to DataFrame: {e}")

    # ==================== File Operations ====================

    @staticmethod
    def save(data: Any, filepath: Union[str, Path], format: str = "json", **kwargs) -> bool:
        """
        Save data to file.

        Args:
            data: Data to save
            filepath: Path to save file
            format: 'json', 'jsonl' (iterable of objects), 'csv' (DataFrame) or 'bytes'
            **kwargs: indent for json, index for csv

        Returns:
            True if successful

        Raises:
            ValueError: If format is not supported or save fails
        """
        logger.debug(f"Saving data to {filepath} in {format} format")

        filepath = Path(filepath)
        filepath.parent.mkdir(parents=True, exist_ok=True)

        try:
            if format == "json":
                with open(filepath, "w") as f:
                    json.dump(data, f, indent=kwargs.get("indent", 2), default=str)

            elif format == "jsonl":
                mode = "a" if kwargs.get("append") else "w"
                with open(filepath, mode) as f:
                    for item in data:
                        f.write(json.dumps(item, default=str) + "\n")

            elif format == "csv":
                if not isinstance(data, pd.DataFrame):
                    raise ValueError("CSV format requires a DataFrame")
                data.to_csv(filepath, index=kwargs.get("index", False))

            elif format == "bytes":
                mode = "ab" if kwargs.get("append") else "wb"
                with open(filepath, mode) as f:
                    f.write(bytes(data))

            else:
                raise ValueError(f"Unsupported format: {format}")

            logger.debug(f"Successfully saved data to {filepath}")
            return True

        except Exception as e:
            logger.error(f"Error saving file: {e}")
            raise ValueError(f"Failed to save file: {e}")

    @staticmethod
    def load(filepath: Union[str, Path], format: str = "json", **kwargs) -> Any:
        """
        Load data from file.

        Args:
            filepath: Path to load file from
            format: 'json', 'jsonl', 'csv' or 'bytes'
            **kwargs: Passed to pandas.read_csv for csv

        Returns:
            Loaded data (list of objects for jsonl)

        Raises:
            ValueError: If format is not supported or load fails
            FileNotFoundError: If file doesn't exist
        """
        logger.debug(f"Loading data from {filepath} in {format} format")

        filepath = Path(filepath)

        if not filepath.exists():
            raise FileNotFoundError(f"File not found: {filepath}")

        try:
            if format == "json":
                with open(filepath, "r") as f:
                    data = json.load(f)

            elif format == "jsonl":
                with open(filepath, "r") as f:
                    data = [json.loads(line) for line in f if line.strip()]

            elif format == "csv":
                data = pd.read_csv(filepath, **kwargs)

            elif format == "bytes":
                data = filepath.read_bytes()

            else:
                raise ValueError(f"Unsupported format: {format}")

            logger.debug(f"Successfully loaded data from {filepath}")
            return data

        except Exception as e:
            logger.error(f"Error loading file: {e}")
            raise ValueError(f"Failed to load file: {e}")

    @staticmethod
    def read_json_input(source: str) -> Any:
        """
        Read JSON from a path, or from stdin when source is '-'.

        Raises:
            ValueError: On malformed JSON
            FileNotFoundError: If the path does not exist
        """
        if source == "-":
            try:
                return json.load(sys.stdin)
            except json.JSONDecodeError as e:
                raise ValueError(f"Malformed JSON on stdin: {e}") from e
        return QecUtils.load(source, "json")

