#!/usr/bin/env python3
"""Full cross-validation sweep: 500 seeded instances per polynomial variant."""

import sys

from coalition_bribery.cli import main

if __name__ == "__main__":
    argv = ["crossval", "--seed", "1", "--count", "500"] + sys.argv[1:]
    sys.exit(main(argv))
