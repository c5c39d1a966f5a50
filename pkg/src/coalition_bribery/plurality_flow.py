"""Zero-threshold plurality under swap and shift bribery, via min-cost flow.

Only the top of each order matters here, so a voter has three interesting
replacements: the cheapest orders putting the leader, some other coalition
member, or an outsider on top.  A transport network wires k1 leader-tops and
k2 other-coalition-tops through the voters; its cheapest flow of value n is
exactly the cheapest bribe realizing that top signature.  Scanning the
O(n^2) signatures that meet the support and ratio targets decides the
instance.
"""

from __future__ import annotations

from typing import Optional

from .core import DomainError, ProblemInstance, ScoringRule, check_goals, tally
from .costs import (
    BribePlan,
    ShiftCost,
    SolveOutcome,
    SwapCost,
    apply_plan,
    bribe_cost,
    lift_to_top,
    plan_cost,
)
from .flow import FlowEdge, FlowNetwork, min_cost_flow
from .plurality_dp import WitnessError

LEADER, REST, OUTSIDE = 0, 1, 2


def min_bribe_to_top(
    instance: ProblemInstance, voter: int, which: int
) -> Optional[tuple]:
    """Cheapest replacement giving voter `voter` a top in the named class.

    Classes are LEADER (the preferred party), REST (the rest of the
    coalition) and OUTSIDE.  Returns (order, cost) or None when no admissible
    replacement exists, e.g. an outsider top under shift bribery for a voter
    currently topped by a coalition member.
    """
    election = instance.election
    order = election.orders[voter]
    model = instance.cost_model
    if which == LEADER:
        targets = (instance.leader,)
    elif which == REST:
        targets = instance.coalition_rest
    else:
        targets = instance.outsiders
    if order.top() in targets:
        return order, 0
    best = None
    for party in targets:
        lifted = lift_to_top(order, party)
        cost = bribe_cost(model, voter, order, lifted, instance.coalition)
        if cost is None:
            continue
        if best is None or cost < best[1]:
            best = (lifted, cost)
    return best


def build_top_signature_network(
    k_leader: int,
    k_rest: int,
    options: list[list[Optional[tuple]]],
) -> FlowNetwork:
    """The transport network for one (k_leader, k_rest) top signature.

    Nodes: source, sink, one hub per class, and per voter one collector plus
    one relay per class.  Inadmissible replacements simply have no relay
    edge.
    """
    n = len(options)
    source, sink = 0, 1
    hubs = (2, 3, 4)

    def relay(i: int, which: int) -> int:
        return 5 + 4 * i + which

    def collector(i: int) -> int:
        return 5 + 4 * i + 3

    edges = [
        FlowEdge(source, hubs[LEADER], k_leader, 0),
        FlowEdge(source, hubs[REST], k_rest, 0),
        FlowEdge(source, hubs[OUTSIDE], n - k_leader - k_rest, 0),
    ]
    for i in range(n):
        for which in (LEADER, REST, OUTSIDE):
            if options[i][which] is None:
                continue
            edges.append(FlowEdge(hubs[which], relay(i, which), 1, 0))
            edges.append(FlowEdge(relay(i, which), collector(i), 1, options[i][which][1]))
        edges.append(FlowEdge(collector(i), sink, 1, 0))
    return FlowNetwork(
        num_nodes=5 + 4 * n,
        source=source,
        sink=sink,
        demand=n,
        edges=tuple(edges),
    )


def solve_plurality_zero(
    instance: ProblemInstance, stats: Optional[dict] = None
) -> SolveOutcome:
    """Decide a zero-threshold plurality instance under swap/shift bribery."""
    if instance.rule is not ScoringRule.PLURALITY:
        raise DomainError("plurality instances only")
    if instance.threshold != 0:
        raise DomainError("this solver requires a zero threshold")
    if not isinstance(instance.cost_model, (SwapCost, ShiftCost)):
        raise DomainError("this solver handles swap and shift bribery only")
    election = instance.election
    if stats is not None:
        stats["networks_solved"] = 0
    if check_goals(election.orders, instance):
        return SolveOutcome.yes(BribePlan.empty())

    n = election.num_voters
    options = [
        [min_bribe_to_top(instance, i, which) for which in (LEADER, REST, OUTSIDE)]
        for i in range(n)
    ]
    solved = 0
    for k_leader in range(n, -1, -1):
        for k_rest in range(n - k_leader, -1, -1):
            k_coalition = k_leader + k_rest
            if k_coalition < instance.phi * n:
                continue
            if k_leader < instance.rho * k_coalition:
                continue
            network = build_top_signature_network(k_leader, k_rest, options)
            flow = min_cost_flow(network)
            solved += 1
            if flow is None or flow.cost > instance.budget:
                continue
            if stats is not None:
                stats["networks_solved"] = solved
            plan = _decode(instance, options, network, flow, k_leader, k_rest)
            return SolveOutcome.yes(plan)
    if stats is not None:
        stats["networks_solved"] = solved
    return SolveOutcome.no()


def _decode(instance, options, network, flow, k_leader, k_rest) -> BribePlan:
    """Read the chosen replacement class off each voter's saturated relay edge."""
    election = instance.election
    chosen: dict[int, int] = {}
    for value, edge in zip(flow.values, network.edges):
        if value <= 0:
            continue
        offset = edge.tail - 5
        if offset >= 0 and offset % 4 in (0, 1, 2):
            voter, which = divmod(offset, 4)
            if chosen.setdefault(voter, which) != which:
                raise WitnessError("two replacement classes saturated for one voter")
    if len(chosen) != len(options):
        raise WitnessError("some voter received no replacement class")
    replacements = {}
    for voter, which in chosen.items():
        order, _cost = options[voter][which]
        if order != election.orders[voter]:
            replacements[voter] = order
    plan_candidate = BribePlan(replacements, 0)
    cost = plan_cost(
        instance.cost_model, instance.coalition, election, plan_candidate
    )
    if cost is None or cost != flow.cost:
        raise WitnessError("decoded plan cost disagrees with the flow cost")
    new_orders = apply_plan(election, BribePlan(replacements, cost))
    counts = tally(new_orders, election.parties, ScoringRule.PLURALITY)
    if counts[instance.leader] != k_leader:
        raise WitnessError("decoded leader tally disagrees with the signature")
    if sum(counts[p] for p in instance.coalition_rest) != k_rest:
        raise WitnessError("decoded coalition tally disagrees with the signature")
    plan = BribePlan(replacements, cost)
    if not check_goals(new_orders, instance):
        raise WitnessError("decoded plan misses the goals")
    return plan
