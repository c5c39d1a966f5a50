"""Election model: parties, preference orders, positional scoring, seats.

Everything that decides feasibility is exact: thresholds, seat fractions and
goal checks use `fractions.Fraction`, never floats.  Elections and problem
instances are immutable once built, so all functions here are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

Rational = Fraction


class DomainError(ValueError):
    """Raised when inputs violate the election model (unknown party, etc.)."""


class ScoringRule(Enum):
    PLURALITY = "plurality"
    BORDA = "borda"


@dataclass(frozen=True)
class PreferenceOrder:
    """A strict ranking over all parties, best first."""

    ranking: tuple[str, ...]
    _pos: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.ranking)) != len(self.ranking):
            raise DomainError(f"duplicate party in order {self.ranking}")
        object.__setattr__(
            self, "_pos", {p: i + 1 for i, p in enumerate(self.ranking)}
        )

    @classmethod
    def of(cls, *parties: str) -> "PreferenceOrder":
        return cls(tuple(parties))

    def position(self, party: str) -> int:
        """1-based rank of `party`; 1 is the most preferred."""
        try:
            return self._pos[party]
        except KeyError:
            raise DomainError(f"party {party!r} not in order") from None

    def top(self) -> str:
        return self.ranking[0]

    def __len__(self) -> int:
        return len(self.ranking)

    def __iter__(self):
        return iter(self.ranking)


@dataclass(frozen=True)
class Election:
    """An immutable election: m parties, n voters, one full order per voter."""

    parties: tuple[str, ...]
    voters: tuple[str, ...]
    orders: tuple[PreferenceOrder, ...]

    def __post_init__(self):
        if not self.parties:
            raise DomainError("election needs at least one party")
        if not self.voters:
            raise DomainError("election needs at least one voter")
        if len(set(self.parties)) != len(self.parties):
            raise DomainError("duplicate party names")
        if len(set(self.voters)) != len(self.voters):
            raise DomainError("duplicate voter ids")
        if len(self.orders) != len(self.voters):
            raise DomainError("one preference order per voter required")
        universe = frozenset(self.parties)
        for voter, order in zip(self.voters, self.orders):
            if frozenset(order.ranking) != universe:
                raise DomainError(
                    f"order of voter {voter} is not a permutation of the parties"
                )

    @property
    def num_parties(self) -> int:
        return len(self.parties)

    @property
    def num_voters(self) -> int:
        return len(self.voters)

    def voter_index(self, voter: str) -> int:
        try:
            return self.voters.index(voter)
        except ValueError:
            raise DomainError(f"unknown voter {voter!r}") from None


def score(order: PreferenceOrder, party: str, rule: ScoringRule) -> int:
    """Points `order` awards to `party`: top-only for plurality, m - rank for Borda."""
    pos = order.position(party)
    if rule is ScoringRule.PLURALITY:
        return 1 if pos == 1 else 0
    return len(order) - pos


def total_score(
    orders: Iterable[PreferenceOrder], parties: Iterable[str], rule: ScoringRule
) -> int:
    """Sum of `score` over every (order, party) pair."""
    parties = list(parties)
    return sum(score(order, party, rule) for order in orders for party in parties)


def tally(
    orders: Sequence[PreferenceOrder], parties: Sequence[str], rule: ScoringRule
) -> dict[str, int]:
    """Per-party total points under `rule`."""
    counts = {p: 0 for p in parties}
    if rule is ScoringRule.PLURALITY:
        for order in orders:
            counts[order.top()] += 1
    else:
        m = len(parties)
        for order in orders:
            for i, p in enumerate(order.ranking):
                counts[p] += m - 1 - i
    return counts


def grand_total(num_voters: int, num_parties: int, rule: ScoringRule) -> int:
    """Total points any order profile distributes; invariant under bribery."""
    if rule is ScoringRule.PLURALITY:
        return num_voters
    return num_voters * num_parties * (num_parties - 1) // 2


def active_parties_from_scores(
    scores: Mapping[str, int], total: int, threshold: Fraction
) -> set[str]:
    """Parties whose points reach `threshold` * `total`; equality counts as active."""
    bar = threshold * total
    return {p for p, s in scores.items() if s >= bar}


def active_parties(
    orders: Sequence[PreferenceOrder],
    parties: Sequence[str],
    rule: ScoringRule,
    threshold: Fraction,
) -> set[str]:
    scores = tally(orders, parties, rule)
    total = grand_total(len(orders), len(parties), rule)
    return active_parties_from_scores(scores, total, threshold)


def seat_fractions_from_scores(
    scores: Mapping[str, int], total: int, threshold: Fraction
) -> dict[str, Fraction]:
    """Seat share per party: proportional among active parties, zero otherwise.

    When no party is active (or all active scores are zero) every party gets
    zero seats.
    """
    active = active_parties_from_scores(scores, total, threshold)
    active_total = sum(scores[p] for p in active)
    if active_total == 0:
        return {p: Fraction(0) for p in scores}
    return {
        p: Fraction(scores[p], active_total) if p in active else Fraction(0)
        for p in scores
    }


def seat_fractions(
    orders: Sequence[PreferenceOrder],
    parties: Sequence[str],
    rule: ScoringRule,
    threshold: Fraction,
) -> dict[str, Fraction]:
    scores = tally(orders, parties, rule)
    total = grand_total(len(orders), len(parties), rule)
    return seat_fractions_from_scores(scores, total, threshold)


@dataclass(frozen=True)
class ProblemInstance:
    """A complete coalition-bribery query.

    `preferred` is None for the plain coalition problem; in that case `rho`
    must be zero (the preferred-party condition degenerates).
    """

    election: Election
    rule: ScoringRule
    threshold: Fraction
    coalition: tuple[str, ...]
    phi: Fraction
    rho: Fraction
    budget: int
    cost_model: object
    preferred: Optional[str] = None

    def __post_init__(self):
        universe = set(self.election.parties)
        if not self.coalition:
            raise DomainError("coalition must be nonempty")
        if len(set(self.coalition)) != len(self.coalition):
            raise DomainError("duplicate parties in coalition")
        if not set(self.coalition) <= universe:
            raise DomainError("coalition must be a subset of the parties")
        if self.preferred is not None and self.preferred not in self.coalition:
            raise DomainError("preferred party must belong to the coalition")
        if self.preferred is None and self.rho != 0:
            raise DomainError("rho must be 0 when no preferred party is given")
        for name, value in (
            ("threshold", self.threshold),
            ("phi", self.phi),
            ("rho", self.rho),
        ):
            if not 0 <= value <= 1:
                raise DomainError(f"{name} must lie in [0, 1], got {value}")
        if self.budget < 0:
            raise DomainError("budget must be non-negative")
        # Per-voter cost data is validated against this election here, where
        # both sides are known.
        validate = getattr(self.cost_model, "validate_for", None)
        if validate is not None:
            validate(self.election)

    @property
    def leader(self) -> str:
        """The preferred party, or a designated coalition member for CB."""
        return self.preferred if self.preferred is not None else self.coalition[0]

    @property
    def coalition_rest(self) -> tuple[str, ...]:
        leader = self.leader
        return tuple(p for p in self.coalition if p != leader)

    @property
    def outsiders(self) -> tuple[str, ...]:
        inside = set(self.coalition)
        return tuple(p for p in self.election.parties if p not in inside)

    def activity_bar(self) -> Fraction:
        """Exact point count a party needs to stay active."""
        total = grand_total(
            self.election.num_voters, self.election.num_parties, self.rule
        )
        return self.threshold * total

    def plurality_activity_count(self) -> int:
        """Least integral vote count that clears the threshold (plurality only)."""
        return math.ceil(self.threshold * self.election.num_voters)

    def variant_label(self) -> str:
        rule = "Plurality" if self.rule is ScoringRule.PLURALITY else "Borda"
        sub = "t" if self.threshold > 0 else "0"
        kind = "CBP" if self.preferred is not None else "CB"
        bribery = getattr(self.cost_model, "kind", "?")
        return f"{rule}_{sub}-{kind}/{bribery}"


def check_goals_from_scores(scores: Mapping[str, int], instance: ProblemInstance) -> bool:
    """Goal test on a score table: coalition share and preferred-party ratio."""
    total = grand_total(
        instance.election.num_voters, instance.election.num_parties, instance.rule
    )
    seats = seat_fractions_from_scores(scores, total, instance.threshold)
    seats_all = sum(seats.values())
    seats_coalition = sum(seats[p] for p in instance.coalition)
    if seats_all == 0:
        # Nobody is seated; a positive support target cannot be met.
        coalition_ok = instance.phi == 0
    else:
        coalition_ok = seats_coalition >= instance.phi * seats_all
    if not coalition_ok:
        return False
    if instance.preferred is None:
        return True
    return seats[instance.preferred] >= instance.rho * seats_coalition


def check_goals(orders: Sequence[PreferenceOrder], instance: ProblemInstance) -> bool:
    """True iff the order profile meets the instance's support and ratio targets."""
    scores = tally(orders, instance.election.parties, instance.rule)
    return check_goals_from_scores(scores, instance)
