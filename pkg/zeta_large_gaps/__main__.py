#!/usr/bin/env python3
"""
Command-line entry point for Zeta Large Gaps.

Equivalent to the installed ``zeta-large-gaps`` script.
"""

import sys

from zeta_large_gaps.cli import main

if __name__ == "__main__":
    sys.exit(main())
