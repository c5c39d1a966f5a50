"""Flow-based solver for zero-threshold plurality under swap/shift bribery."""

import random
from fractions import Fraction

import pytest

from coalition_bribery.core import (
    PreferenceOrder,
    ProblemInstance,
    ScoringRule,
    tally,
)
from coalition_bribery.costs import ShiftCost, SwapCost, apply_plan
from coalition_bribery.generators import with_budget
from coalition_bribery.oracle import enumerate_voter_options, oracle_solve
from coalition_bribery.plurality_flow import (
    LEADER,
    OUTSIDE,
    REST,
    build_top_signature_network,
    min_bribe_to_top,
    solve_plurality_zero,
)
from coalition_bribery.sample_instances import sixteen_voter_shift_cbp

from conftest import assert_verifies, make_election, random_problem


def swap_instance(rankings, coalition, preferred, phi, rho, budget, pair_price):
    parties = tuple(sorted(set(rankings[0])))
    election = make_election(parties, rankings)
    model = SwapCost(
        tuple(
            {(x, y): pair_price(x, y) for x in parties for y in parties if x != y}
            for _ in rankings
        )
    )
    return ProblemInstance(
        election=election,
        rule=ScoringRule.PLURALITY,
        threshold=Fraction(0),
        coalition=coalition,
        preferred=preferred,
        phi=phi,
        rho=rho,
        budget=budget,
        cost_model=model,
    )


class TestMinBribeToTop:
    def test_shift_lift_of_leader(self):
        inst = ProblemInstance(
            election=sixteen_voter_shift_cbp(3).election,
            rule=ScoringRule.PLURALITY,
            threshold=Fraction(0),
            coalition=("c1", "c2"),
            preferred="c1",
            phi=Fraction(1, 2),
            rho=Fraction(3, 4),
            budget=3,
            cost_model=sixteen_voter_shift_cbp(3).cost_model,
        )
        order, cost = min_bribe_to_top(inst, 6, LEADER)
        assert order == PreferenceOrder(("c1", "c3", "c2")) and cost == 1

    def test_top_already_in_class(self):
        inst = swap_instance(
            [["z", "a", "b"]], ("a", "b"), "a", Fraction(0), Fraction(0), 0,
            lambda x, y: 1,
        )
        order, cost = min_bribe_to_top(inst, 0, OUTSIDE)
        assert cost == 0 and order == inst.election.orders[0]

    def test_shift_cannot_give_outsider_the_top(self):
        rankings = [["a", "z", "b"]]
        parties = ("a", "b", "z")
        election = make_election(parties, rankings)
        inst = ProblemInstance(
            election=election,
            rule=ScoringRule.PLURALITY,
            threshold=Fraction(0),
            coalition=("a", "b"),
            preferred="a",
            phi=Fraction(0),
            rho=Fraction(0),
            budget=0,
            cost_model=ShiftCost.multiplicative([1], 3),
        )
        assert min_bribe_to_top(inst, 0, OUTSIDE) is None

    def test_swap_lift_is_cheapest_same_top_order(self):
        # against enumeration of every order with the target's class on top
        rng = random.Random(17)
        for _ in range(30):
            inst = random_problem(rng, ScoringRule.PLURALITY, False, "swap", True,
                                  max_voters=1, max_parties=4)
            options = enumerate_voter_options(inst, 0)
            for which, targets in (
                (LEADER, {inst.leader}),
                (REST, set(inst.coalition_rest)),
                (OUTSIDE, set(inst.outsiders)),
            ):
                if not targets:
                    continue
                best = min(
                    (cost for order, cost in options if order.top() in targets),
                    default=None,
                )
                got = min_bribe_to_top(inst, 0, which)
                assert (got[1] if got else None) == best


class TestNetworkShape:
    def _options(self, n):
        order = PreferenceOrder(("a", "b"))
        return [[(order, 0), (order, 1), None] for _ in range(n)]

    def test_node_count(self):
        net = build_top_signature_network(1, 0, self._options(2))
        assert net.num_nodes == 13

    def test_source_capacities(self):
        net = build_top_signature_network(1, 0, self._options(3))
        caps = [e.capacity for e in net.edges[:3]]
        assert caps == [1, 0, 2]

    def test_inadmissible_candidate_has_no_edges(self):
        net = build_top_signature_network(1, 0, self._options(1))
        # hub 4 is the outsider hub; nothing may leave it
        assert not [e for e in net.edges if e.tail == 4]
        assert net.demand == 1


class TestSolver:
    def test_three_outsider_voters(self):
        # all voters top an outsider; lifting either coalition party costs 1
        def price(x, y):
            return 1 if y in ("a", "b") and x == "z" else 0

        inst = swap_instance(
            [["z", "a", "b"]] * 3,
            ("a", "b"),
            "a",
            Fraction(2, 3),
            Fraction(1, 2),
            2,
            price,
        )
        out = solve_plurality_zero(inst)
        assert out.feasible and out.plan.cost == 2
        assert_verifies(inst, out.plan)
        tight = with_budget(inst, 1)
        assert not solve_plurality_zero(tight).feasible

    def test_satisfied_instance_empty_plan(self):
        inst = swap_instance(
            [["a", "z", "b"]], ("a", "b"), "a", Fraction(1, 2), Fraction(1), 0,
            lambda x, y: 3,
        )
        out = solve_plurality_zero(inst)
        assert out.feasible and len(out.plan) == 0

    def test_signature_scan_is_quadratic(self):
        rng = random.Random("scan-count")
        for _ in range(20):
            inst = random_problem(rng, ScoringRule.PLURALITY, False, "swap", True,
                                  max_voters=5, max_parties=4)
            stats = {}
            solve_plurality_zero(inst, stats=stats)
            n = inst.election.num_voters
            assert stats["networks_solved"] <= (n + 1) * (n + 2) // 2

    def test_unreachable_support_is_infeasible(self):
        rankings = [["z", "a", "b"]]
        parties = ("a", "b", "z")
        election = make_election(parties, rankings)
        inst = ProblemInstance(
            election=election,
            rule=ScoringRule.PLURALITY,
            threshold=Fraction(0),
            coalition=("a", "b"),
            preferred="a",
            phi=Fraction(1),
            rho=Fraction(0),
            budget=0,
            cost_model=ShiftCost.multiplicative([5], 3),
        )
        assert not solve_plurality_zero(inst).feasible


@pytest.mark.parametrize("kind", ["swap", "shift"])
@pytest.mark.parametrize("cbp", [False, True])
def test_oracle_equivalence_small(kind, cbp):
    rng = random.Random(f"flow-oracle:{kind}:{cbp}")
    for _ in range(40):
        inst = random_problem(
            rng, ScoringRule.PLURALITY, False, kind, cbp, max_voters=5, max_parties=4
        )
        optimum, _ = oracle_solve(inst)
        upper = sum(
            inst.cost_model.max_voter_cost(i, inst.election.num_parties)
            for i in range(inst.election.num_voters)
        )
        feasible = [
            b for b in range(upper + 1)
            if solve_plurality_zero(with_budget(inst, b)).feasible
        ]
        solver_min = feasible[0] if feasible else None
        assert solver_min == optimum
        if feasible:
            out = solve_plurality_zero(with_budget(inst, solver_min))
            assert_verifies(with_budget(inst, solver_min), out.plan)
            # decoded tallies must reproduce a scanned signature exactly
            counts = tally(
                apply_plan(inst.election, out.plan), inst.election.parties, inst.rule
            )
            assert sum(counts.values()) == inst.election.num_voters
