#!/usr/bin/env python3
"""Run the default verification battery and write the JSON report.

Usage: python scripts/run_full_report.py [output.json]
"""

import sys

from trilie.cli import main

if __name__ == "__main__":
    argv = ["report", "--format", "json"]
    if len(sys.argv) > 1:
        import contextlib
        import io

        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            code = main(argv)
        with open(sys.argv[1], "w") as fh:
            fh.write(buf.getvalue())
        print(f"wrote {sys.argv[1]} (exit {code})")
        sys.exit(code)
    sys.exit(main(argv))
