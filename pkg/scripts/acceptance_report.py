"""Run the acceptance criteria outside pytest and print one line per criterion."""

from __future__ import annotations

import os
import runpy
import sys

if __name__ == "__main__":
    here = os.path.dirname(os.path.abspath(__file__))
    sys.argv = [os.path.join(here, "..", "tests", "test_acceptance.py")]
    runpy.run_path(sys.argv[0], run_name="__main__")
