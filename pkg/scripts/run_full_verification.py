#!/usr/bin/env python3
"""Run every randomized suite and write the JSON report.

Thin wrapper over `sympspec verify --suite all`; any extra arguments
are forwarded, so e.g. `--seed 7 --jobs 4 --report out.json` work here
too.
"""

import sys

from sympspec.cli import main

if __name__ == "__main__":
    sys.exit(main(["verify", "--suite", "all"] + sys.argv[1:]))
