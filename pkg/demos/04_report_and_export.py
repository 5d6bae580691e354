#!/usr/bin/env python3
"""Drive the command line tool: a CSV summary and an edge list.

Equivalent to running ``lieboundary report --csv --l 2,3,4 --q 2`` and
``lieboundary export --l 2 --q 2`` from a shell.  The edge list is
written to a temporary file and its first lines are shown.

Run with ``python demos/04_report_and_export.py``.
"""

import tempfile
from pathlib import Path

from lieboundary.cli import main as cli


def main() -> None:
    print("$ lieboundary report --csv --l 2,3,4 --q 2")
    cli(["report", "--csv", "--l", "2,3,4", "--q", "2"])

    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "sl32.txt"
        code = cli(["export", "--l", "2", "--q", "2", "-o", str(out)])
        lines = out.read_text().splitlines()
        print(f"\n$ lieboundary export --l 2 --q 2 -o {out.name}   (exit {code})")
        print("\n".join(lines[:6]))
        print(f"... {len(lines) - 1} edges")


if __name__ == "__main__":
    main()
