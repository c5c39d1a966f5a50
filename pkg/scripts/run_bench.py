#!/usr/bin/env python3
"""Timing sweep: serialize the fixtures to a temp dir and benchmark them."""

import sys
import tempfile
from pathlib import Path

from coalition_bribery.cli import main
from coalition_bribery.instance_io import serialize_instance
from coalition_bribery.sample_instances import (
    sixteen_voter_shift_cbp,
    three_party_dollar_cbp,
    three_party_unit_cb,
    unanimous_four_party_borda_cb,
)

FIXTURES = {
    "hundred-voter-unit.txt": three_party_unit_cb(5),
    "hundred-voter-dollar-preferred.txt": three_party_dollar_cbp(7),
    "unanimous-rank-scoring.txt": unanimous_four_party_borda_cb(1),
    "sixteen-voter-shift.txt": sixteen_voter_shift_cbp(3),
}

if __name__ == "__main__":
    with tempfile.TemporaryDirectory() as tmp:
        paths = []
        for name, instance in FIXTURES.items():
            path = Path(tmp) / name
            path.write_text(serialize_instance(instance))
            paths.append(str(path))
        sys.exit(main(["bench", *paths, "--reps", "5"]))
