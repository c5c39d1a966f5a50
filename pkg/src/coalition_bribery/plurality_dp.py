"""Threshold plurality under 1- and $-bribery, by layered dynamic programs.

The search splits a bribe in two stages: first pick *which* voters to buy
(their old votes vanish from the pool), then decide where the freed votes go.
Three tables drive the scan:

  * per-party ``mincost``: cheapest way to buy a given number of a party's
    supporters;
  * ``f`` over non-coalition parties: cost of freeing votes there while
    leaving a prescribed number of active outsider votes;
  * ``h`` over the coalition minus its leader: same, but with extra votes
    poured in so the surviving active count is prescribed.

Cells combine into the least cost of any undetermined bribe with a given
signature, and a scan over signatures applies the remaining arithmetic:
top-up bribes drawn from the leader's own supporters when more redirected
votes are needed than were freed, threshold zeroing of the leader's count,
and the exact support/ratio test.  The scan runs in descending lexicographic
signature order and returns a reconstructed plan for the first hit.
"""

from __future__ import annotations

from typing import Optional

from .core import DomainError, ProblemInstance, ScoringRule, check_goals
from .costs import (
    BribePlan,
    DollarCost,
    SolveOutcome,
    UnitCost,
    apply_plan,
    lift_to_top,
    plan_cost,
)

INF = float("inf")


class WitnessError(RuntimeError):
    """A reconstructed plan failed re-verification; indicates a solver bug."""


def _voter_prices(instance: ProblemInstance) -> list[int]:
    model = instance.cost_model
    n = instance.election.num_voters
    if isinstance(model, UnitCost):
        return [1] * n
    if isinstance(model, DollarCost):
        return list(model.prices)
    raise DomainError("this solver handles unit and dollar bribery only")


class _Tables:
    """The mincost/f/h tables for one instance, with backpointers."""

    def __init__(self, instance: ProblemInstance):
        election = instance.election
        self.n = election.num_voters
        self.threshold_count = instance.plurality_activity_count()
        self.leader = instance.leader
        self.rest = list(instance.coalition_rest)
        self.outs = list(instance.outsiders)
        prices = _voter_prices(instance)
        self.supporters: dict[str, list[tuple[int, int]]] = {
            p: [] for p in election.parties
        }
        for i, order in enumerate(election.orders):
            self.supporters[order.top()].append((prices[i], i))
        for lst in self.supporters.values():
            lst.sort()
        self.prefix = {
            p: self._prefix_sums(lst) for p, lst in self.supporters.items()
        }
        self.cells_built = 0
        self.f_table, self.f_bp = self._combine(
            [self._f_single(p) for p in self.outs], arity=2
        )
        self.h_table, self.h_bp = self._combine(
            [self._h_single(p) for p in self.rest], arity=3
        )

    @staticmethod
    def _prefix_sums(lst):
        sums = [0]
        for price, _ in lst:
            sums.append(sums[-1] + price)
        return sums

    def mincost(self, party: str, count: int):
        """Sum of the `count` smallest prices among the party's supporters."""
        if count <= 0:
            return 0
        sums = self.prefix[party]
        if count >= len(sums):
            return INF
        return sums[count]

    def _f_single(self, party: str) -> dict[tuple[int, int], int]:
        table = {}
        t = self.threshold_count
        for bought in range(len(self.supporters[party]) + 1):
            remaining = len(self.supporters[party]) - bought
            active = remaining if remaining >= t else 0
            table[(bought, active)] = self.mincost(party, bought)
        self.cells_built += len(table)
        return table

    def _h_single(self, party: str) -> dict[tuple[int, int, int], int]:
        table = {}
        t = self.threshold_count
        for bought in range(len(self.supporters[party]) + 1):
            cost = self.mincost(party, bought)
            remaining = len(self.supporters[party]) - bought
            for added in range(self.n + 1):
                count = remaining + added
                active = count if count >= t else 0
                if active > self.n:
                    continue
                table[(bought, added, active)] = cost
        self.cells_built += len(table)
        return table

    def _combine(self, singles, arity: int):
        """Fold single-party tables left to right, keeping split backpointers."""
        combined = {tuple([0] * arity): 0}
        backpointers = []
        for table in singles:
            merged: dict[tuple, float] = {}
            bp: dict[tuple, tuple] = {}
            for prev_key, prev_cost in combined.items():
                if prev_cost is INF:
                    continue
                for single_key, single_cost in table.items():
                    if single_cost is INF:
                        continue
                    key = tuple(a + b for a, b in zip(prev_key, single_key))
                    if any(v > self.n for v in key):
                        continue
                    cost = prev_cost + single_cost
                    if cost < merged.get(key, INF):
                        merged[key] = cost
                        bp[key] = single_key
            self.cells_built += len(merged)
            combined = merged
            backpointers.append(bp)
        return combined, backpointers

    def trace(self, backpointers, key) -> list[tuple]:
        """Per-party single-table keys realizing a combined cell."""
        parts = []
        for bp in reversed(backpointers):
            single = bp[key]
            parts.append(single)
            key = tuple(a - b for a, b in zip(key, single))
        parts.reverse()
        return parts


def g_value(instance: ProblemInstance, ell: int, active_out: int, added: int,
            active_rest: int) -> float:
    """Least cost of an undetermined bribe with the given signature (or inf)."""
    tables = _Tables(instance)
    best = INF
    for (lh, d, a), ch in tables.h_table.items():
        if d != added or a != active_rest:
            continue
        lf = ell - lh
        if lf < 0:
            continue
        cf = tables.f_table.get((lf, active_out), INF)
        best = min(best, ch + cf)
    return best


def solve_plurality_t_dollar(
    instance: ProblemInstance, stats: Optional[dict] = None
) -> SolveOutcome:
    """Decide the instance and emit a verifying plan when feasible.

    Works for any threshold, including zero, under unit or dollar pricing.
    """
    if instance.rule is not ScoringRule.PLURALITY:
        raise DomainError("plurality instances only")
    election = instance.election
    if check_goals(election.orders, instance):
        return SolveOutcome.yes(BribePlan.empty())

    tables = _Tables(instance)
    n = election.num_voters
    base_leader = len(tables.supporters[instance.leader])
    t_count = tables.threshold_count

    # Every finite g-cell is a pairing of one h-cell and one f-cell; collect
    # the cheapest pairing per (ell, active_out, added, active_rest) signature.
    candidates: dict[tuple[int, int, int, int], tuple[float, tuple, tuple]] = {}
    for hkey, ch in tables.h_table.items():
        lh, d, a_rest = hkey
        for fkey, cf in tables.f_table.items():
            lf, a_out = fkey
            ell = lh + lf
            if ell > n:
                continue
            key = (ell, a_out, d, a_rest)
            cost = ch + cf
            if cost < candidates.get(key, (INF, None, None))[0]:
                candidates[key] = (cost, hkey, fkey)
    if stats is not None:
        stats["table_cells"] = tables.cells_built
        stats["signatures"] = len(candidates)

    budget = instance.budget
    phi, rho = instance.phi, instance.rho
    for key in sorted(candidates, reverse=True):
        ell, a_out, d, a_rest = key
        base_cost, hkey, fkey = candidates[key]
        if base_cost > budget:
            continue
        topup = 0
        if d > ell:
            topup = d - ell
            extra = tables.mincost(instance.leader, topup)
            if base_cost + extra > budget:
                continue
        leader_count = base_leader + ell - d
        leader_active = leader_count if leader_count >= t_count else 0
        coalition_active = a_rest + leader_active
        total_active = coalition_active + a_out
        if total_active == 0:
            ok = phi == 0
        else:
            ok = coalition_active >= phi * total_active and (
                leader_active >= rho * coalition_active
            )
        if ok:
            plan = _reconstruct(instance, tables, hkey, fkey, topup)
            return SolveOutcome.yes(plan)
    return SolveOutcome.no()


def _reconstruct(
    instance: ProblemInstance, tables: _Tables, hkey, fkey, topup: int
) -> BribePlan:
    election = instance.election
    leader = instance.leader

    bought: list[int] = []
    for party, (lp, _a) in zip(tables.outs, tables.trace(tables.f_bp, fkey)):
        bought.extend(idx for _, idx in tables.supporters[party][:lp])
    additions: list[tuple[str, int]] = []
    for party, (lp, dp, _a) in zip(tables.rest, tables.trace(tables.h_bp, hkey)):
        bought.extend(idx for _, idx in tables.supporters[party][:lp])
        if dp:
            additions.append((party, dp))
    topups = [idx for _, idx in tables.supporters[leader][:topup]]

    # Redirect `d` of the freed votes into the coalition remainder, the rest
    # to the leader.  Prefer cross-party targets so replacements are real.
    pool = bought + topups
    targets: list[str] = []
    for party, count in additions:
        targets.extend([party] * count)
    targets.extend([leader] * (len(pool) - len(targets)))
    replacements = {}
    remaining = list(pool)
    for target in targets:
        pick = next(
            (i for i in remaining if election.orders[i].top() != target),
            remaining[0] if remaining else None,
        )
        if pick is None:
            raise WitnessError("vote reassignment ran out of bought voters")
        remaining.remove(pick)
        new_order = lift_to_top(election.orders[pick], target)
        if new_order != election.orders[pick]:
            replacements[pick] = new_order

    cost = plan_cost(
        instance.cost_model, instance.coalition, election,
        BribePlan(replacements, 0),
    )
    if cost is None or cost > instance.budget:
        raise WitnessError("reconstructed plan exceeds the budget")
    plan = BribePlan(replacements, cost)
    if not check_goals(apply_plan(election, plan), instance):
        raise WitnessError("reconstructed plan misses the goals")
    return plan
