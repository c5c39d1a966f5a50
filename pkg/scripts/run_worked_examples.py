#!/usr/bin/env python3
"""Solve the hand-built fixtures and print their reports."""

import sys

from coalition_bribery.dispatch import solve_instance
from coalition_bribery.instance_io import format_rational
from coalition_bribery.sample_instances import (
    sixteen_voter_shift_cbp,
    three_party_dollar_cb,
    three_party_dollar_cbp,
    three_party_unit_cb,
    unanimous_four_party_borda_cb,
)


def show(name, instance):
    report = solve_instance(instance)
    verdict = "feasible" if report.feasible else "infeasible"
    line = f"{name:34} {report.variant:26} {report.solver:22} {verdict}"
    if report.cost is not None:
        line += f" cost={report.cost}"
    print(line)
    if report.scores_after:
        after = " ".join(f"{p}={v}" for p, v in report.scores_after.items())
        seats = " ".join(
            f"{p}={format_rational(v)}" for p, v in report.seats_after.items()
        )
        print(f"{'':34} scores {after} | seats {seats}")


def main():
    show("unit, budget 5", three_party_unit_cb(5))
    show("unit, budget 4", three_party_unit_cb(4))
    show("dollar, budget 5", three_party_dollar_cb(5))
    show("dollar+preferred, budget 7", three_party_dollar_cbp(7))
    show("dollar+preferred, budget 6", three_party_dollar_cbp(6))
    show("unanimous rank-scoring, budget 1", unanimous_four_party_borda_cb(1))
    show("unanimous rank-scoring, budget 0", unanimous_four_party_borda_cb(0))
    show("16-voter shift, budget 3", sixteen_voter_shift_cbp(3))
    show("16-voter shift, budget 2", sixteen_voter_shift_cbp(2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
