#!/usr/bin/env python3
"""Run every acceptance criterion and print one PASS/FAIL line per criterion."""

import sys

from prmcode.acceptance import run_all

if __name__ == "__main__":
    sys.exit(0 if run_all(verbose=True) else 1)
