"""
Report Loading Module
Writes command output (DOT, JSON, ledgers) to stdout or files.
"""

from pathlib import Path
from typing import Dict, List, Optional, Sequence, TextIO, Union
import logging
import sys

import pandas as pd

logger = logging.getLogger(__name__)

LEDGER_COLUMNS = ["tree", "n", "check", "expected", "observed", "status", "note"]

# Widest cell in the printed ledger; the CSV keeps full values
LEDGER_CELL_WIDTH = 60


def ledger_frame(rows: Sequence[Dict]) -> pd.DataFrame:
    """Ledger rows as a DataFrame with the fixed column order."""
    frame = pd.DataFrame(list(rows), columns=LEDGER_COLUMNS, dtype=object)
    return frame.fillna("")


def abbreviate(value, width: int = LEDGER_CELL_WIDTH) -> str:
    """Short form of a ledger cell: long integers become '<N digits>', other text is cut."""
    text = str(value)
    if len(text) <= width:
        return text
    digits = text.lstrip("-")
    if digits.isdigit():
        return f"<{len(digits)} digits>"
    return text[:width - 3] + "..."


class ReportWriter:
    """
    Sends text reports to a stream or a file, and ledgers to CSV.
    """

    def __init__(self, stream: Optional[TextIO] = None):
        self.stream = stream if stream is not None else sys.stdout
        self.written: List[Path] = []

    def emit(self, content: str, output: Optional[Union[str, Path]] = None) -> Optional[Path]:
        """Write content to the output file, or to the stream when no file is given."""
        if output is None:
            self.stream.write(content)
            self.stream.flush()
            return None

        path = Path(output)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(content, encoding='utf-8')
        except OSError as e:
            error_msg = f"Error writing {path}: {e}"
            logger.error(error_msg)
            raise IOError(error_msg)

        self.written.append(path)
        logger.info(f"Wrote {len(content)} characters to {path}")
        return path

    def emit_ledger(self, rows: Sequence[Dict]) -> None:
        frame = ledger_frame(rows)
        if frame.empty:
            self.emit("(no checks)\n")
            return
        self.emit(frame.map(abbreviate).to_string(index=False) + "\n")

    def write_ledger_csv(
        self,
        rows: Sequence[Dict],
        output: Union[str, Path],
        encoding: str = "utf-8",
    ) -> Path:
        """
        Write the ledger to a CSV file.

        Raises:
            IOError: If file writing fails
        """
        frame = ledger_frame(rows)
        path = Path(output)
        logger.info(f"Writing ledger with {len(frame)} rows to: {path}")
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            frame.to_csv(path, encoding=encoding, index=False)
        except OSError as e:
            error_msg = f"Error writing CSV file: {e}"
            logger.error(error_msg)
            raise IOError(error_msg)

        self.written.append(path)
        logger.info(f"Ledger written: {path} ({path.stat().st_size} bytes)")
        return path
