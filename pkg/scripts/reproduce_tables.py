#!/usr/bin/env python3
"""Regenerate the full analysis bundle for the bundled 13-ray scenario.

Writes the text report to stdout (or ``--out``); pass ``--format json``
for the machine-readable variant.  Equivalent to

    ctxkit report --scenario yu-oh
"""

import sys

from ctxkit.cli import main

if __name__ == "__main__":
    raise SystemExit(main(["report", "--scenario", "yu-oh", *sys.argv[1:]]))
