# file: app/results_csv.py
"""
Result table writer. One comment line with the generation time, then a
header and one row per reported value:

    case_id,a,b,h,layup,cutout_kind,cutout_r,cutout_d,cutout_e,cutout_psi,
    T,C,bc,mode,index,raw_value,nondim_value,error
"""

import csv
import logging
import os
import sys
from datetime import datetime, timezone
from typing import Any, Dict, Iterable, List, Optional, TextIO

logger = logging.getLogger("hygro_xfem")

CSV_COLUMNS = (
    "case_id", "a", "b", "h", "layup",
    "cutout_kind", "cutout_r", "cutout_d", "cutout_e", "cutout_psi",
    "T", "C", "bc", "mode",
    "index", "raw_value", "nondim_value", "error",
)


def error_row(columns: Dict[str, Any], error: BaseException) -> Dict[str, Any]:
    """Row standing in for a case that failed."""
    message = f"{type(error).__name__}: {error}".replace("\n", " ")
    return {**columns, "index": "", "raw_value": "", "nondim_value": "", "error": message}


def timestamp_line(now: Optional[datetime] = None) -> str:
    now = now or datetime.now(timezone.utc)
    return f"# generated {now.isoformat(timespec='seconds')}\n"


def write_rows(stream: TextIO, rows: Iterable[Dict[str, Any]], header: bool = True) -> int:
    writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS, lineterminator="\n", extrasaction="ignore")
    if header:
        stream.write(timestamp_line())
        writer.writeheader()
    count = 0
    for row in rows:
        writer.writerow({key: row.get(key, "") for key in CSV_COLUMNS})
        count += 1
    return count


def write_results(path: Optional[str], rows: List[Dict[str, Any]], append: bool = False) -> str:
    """
    Write rows to `path` (stdout when None).

    With `append` the rows go after an existing table without a new header.

    Returns:
        the destination ("-" for stdout)
    """
    if path is None or path == "-":
        write_rows(sys.stdout, rows)
        return "-"

    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    header = not (append and os.path.exists(path) and os.path.getsize(path) > 0)
    with open(path, "a" if append else "w", encoding="utf-8", newline="") as f:
        count = write_rows(f, rows, header=header)

    logger.info(f"Wrote {count} row(s) to {path}")
    return path
