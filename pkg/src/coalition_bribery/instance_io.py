"""Plain-text instance files: parsing with line-anchored errors, canonical
serialization, and parsing of the reduction source formats.

An instance file is line-oriented.  Keys before the voter block come in a
fixed order; every voter contributes a `voter` line and, depending on the
cost model, a matching `price`, `swap` or `shift` line:

    rule: plurality
    threshold: 1/5
    phi: 1/2
    rho: 61/100
    budget: 7
    parties: X Y Z
    coalition: X Y
    preferred: X
    cost: dollar
    voter v1: X Y Z
    price v1: 1

Swap lines price each ordered pair, `X>Y=2` meaning: moving Y from below X
to above X costs 2.  Shift lines carry either the full table `shift v1: 0 1
5` or `shift v1: slope 2`.  Blank lines and `#` comments are ignored when
parsing; the serializer emits neither, and serialize(parse(s)) is a fixed
point of parse/serialize.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional

from .core import DomainError, Election, PreferenceOrder, ProblemInstance, ScoringRule
from .costs import CostModel, DollarCost, ShiftCost, SwapCost, UnitCost
from .reductions import ExactCover34Instance, MinBisectionInstance

NAME_RE = re.compile(r"^[A-Za-z0-9_.-]+$")


class InstanceParseError(ValueError):
    """Parse failure with the 1-based line it occurred on."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


class _Lines:
    def __init__(self, text: str):
        self.rows = [
            (i + 1, line.strip())
            for i, line in enumerate(text.splitlines())
            if line.strip() and not line.strip().startswith("#")
        ]
        self.pos = 0

    def peek(self) -> Optional[tuple[int, str]]:
        return self.rows[self.pos] if self.pos < len(self.rows) else None

    def next(self) -> tuple[int, str]:
        row = self.peek()
        if row is None:
            last = self.rows[-1][0] if self.rows else 1
            raise InstanceParseError(last, "unexpected end of file")
        self.pos += 1
        return row


def _expect(lines: _Lines, key: str) -> tuple[int, str]:
    lineno, text = lines.next()
    prefix = key + ":"
    if not text.startswith(prefix):
        raise InstanceParseError(lineno, f"expected '{key}:', found {text!r}")
    return lineno, text[len(prefix):].strip()


def _names(lineno: int, text: str) -> tuple[str, ...]:
    names = tuple(text.split())
    for name in names:
        if not NAME_RE.match(name):
            raise InstanceParseError(lineno, f"bad name {name!r}")
    return names


def parse_instance(text: str) -> ProblemInstance:
    """Parse an instance file; raises InstanceParseError with a line number."""
    lines = _Lines(text)
    lineno, rule_text = _expect(lines, "rule")
    try:
        rule = ScoringRule(rule_text)
    except ValueError:
        raise InstanceParseError(lineno, f"unknown rule {rule_text!r}") from None

    def rational(key: str) -> tuple[int, Fraction]:
        lineno, text = _expect(lines, key)
        try:
            return lineno, parse_rational(text)
        except (ValueError, ZeroDivisionError):
            raise InstanceParseError(lineno, f"bad rational {text!r}") from None

    _, threshold = rational("threshold")
    _, phi = rational("phi")
    _, rho = rational("rho")
    lineno, budget_text = _expect(lines, "budget")
    try:
        budget = int(budget_text)
    except ValueError:
        raise InstanceParseError(lineno, f"bad budget {budget_text!r}") from None
    parties_line, parties_text = _expect(lines, "parties")
    parties = _names(parties_line, parties_text)
    if len(set(parties)) != len(parties):
        raise InstanceParseError(parties_line, "duplicate party names")
    coalition_line, coalition_text = _expect(lines, "coalition")
    coalition = _names(coalition_line, coalition_text)
    for p in coalition:
        if p not in parties:
            raise InstanceParseError(coalition_line, f"unknown coalition party {p!r}")
    preferred = None
    row = lines.peek()
    if row is not None and row[1].startswith("preferred:"):
        lineno, preferred = _expect(lines, "preferred")
        if preferred not in coalition:
            raise InstanceParseError(lineno, f"preferred party {preferred!r} not in coalition")
    lineno, cost_kind = _expect(lines, "cost")
    if cost_kind not in ("unit", "dollar", "swap", "shift"):
        raise InstanceParseError(lineno, f"unknown cost model {cost_kind!r}")

    voters: list[str] = []
    orders: list[PreferenceOrder] = []
    prices: list[int] = []
    swap_tables: list[dict[tuple[str, str], int]] = []
    shift_tables: list[tuple[int, ...]] = []
    max_pairs = len(parties) * (len(parties) - 1) // 2
    while lines.peek() is not None:
        lineno, text = lines.next()
        match = re.match(r"^voter\s+(\S+):\s*(.*)$", text)
        if not match:
            raise InstanceParseError(lineno, f"expected a 'voter <id>:' line, found {text!r}")
        voter_id = match.group(1)
        if not NAME_RE.match(voter_id):
            raise InstanceParseError(lineno, f"bad voter id {voter_id!r}")
        if voter_id in voters:
            raise InstanceParseError(lineno, f"duplicate voter {voter_id!r}")
        ranking = _names(lineno, match.group(2))
        if sorted(ranking) != sorted(parties) or len(set(ranking)) != len(ranking):
            raise InstanceParseError(
                lineno, f"order of voter {voter_id!r} is not a permutation of the parties"
            )
        voters.append(voter_id)
        orders.append(PreferenceOrder(ranking))
        if cost_kind == "dollar":
            lineno, text = _expect(lines, f"price {voter_id}")
            try:
                prices.append(int(text))
            except ValueError:
                raise InstanceParseError(lineno, f"bad price {text!r}") from None
        elif cost_kind == "swap":
            lineno, text = _expect(lines, f"swap {voter_id}")
            table: dict[tuple[str, str], int] = {}
            for token in text.split():
                pair_match = re.match(r"^([^>=\s]+)>([^>=\s]+)=(\d+)$", token)
                if not pair_match:
                    raise InstanceParseError(lineno, f"bad swap entry {token!r}")
                upper, riser, price = pair_match.groups()
                if upper not in parties or riser not in parties or upper == riser:
                    raise InstanceParseError(lineno, f"bad swap pair {token!r}")
                table[(upper, riser)] = int(price)
            missing = [
                (a, b) for a in parties for b in parties if a != b and (a, b) not in table
            ]
            if missing:
                raise InstanceParseError(
                    lineno, f"missing swap price for pair {missing[0]}"
                )
            swap_tables.append(table)
        elif cost_kind == "shift":
            lineno, text = _expect(lines, f"shift {voter_id}")
            tokens = text.split()
            try:
                if tokens and tokens[0] == "slope":
                    slope = int(tokens[1])
                    shift_tables.append(
                        tuple(slope * k for k in range(max_pairs + 1))
                    )
                else:
                    shift_tables.append(tuple(int(v) for v in tokens))
            except (ValueError, IndexError):
                raise InstanceParseError(lineno, f"bad shift table {text!r}") from None

    if not voters:
        raise InstanceParseError(1, "no voters given")
    model: CostModel
    if cost_kind == "unit":
        model = UnitCost()
    elif cost_kind == "dollar":
        model = DollarCost(tuple(prices))
    elif cost_kind == "swap":
        model = SwapCost(tuple(swap_tables))
    else:
        model = ShiftCost(tuple(shift_tables))
    try:
        election = Election(parties, tuple(voters), tuple(orders))
        return ProblemInstance(
            election=election,
            rule=rule,
            threshold=threshold,
            coalition=coalition,
            preferred=preferred,
            phi=phi,
            rho=rho if preferred is not None else Fraction(0),
            budget=budget,
            cost_model=model,
        )
    except DomainError as exc:
        raise InstanceParseError(1, str(exc)) from None


def serialize_instance(instance: ProblemInstance) -> str:
    """Canonical text form; parse(serialize(x)) == x."""
    election = instance.election
    for name in election.parties + election.voters:
        if not NAME_RE.match(name):
            raise DomainError(f"name {name!r} cannot be serialized")
    model = instance.cost_model
    out = [
        f"rule: {instance.rule.value}",
        f"threshold: {format_rational(instance.threshold)}",
        f"phi: {format_rational(instance.phi)}",
        f"rho: {format_rational(instance.rho)}",
        f"budget: {instance.budget}",
        "parties: " + " ".join(election.parties),
        "coalition: " + " ".join(instance.coalition),
    ]
    if instance.preferred is not None:
        out.append(f"preferred: {instance.preferred}")
    out.append(f"cost: {model.kind}")
    for i, voter in enumerate(election.voters):
        out.append(f"voter {voter}: " + " ".join(election.orders[i].ranking))
        if isinstance(model, DollarCost):
            out.append(f"price {voter}: {model.prices[i]}")
        elif isinstance(model, SwapCost):
            entries = " ".join(
                f"{a}>{b}={model.pair_prices[i][(a, b)]}"
                for a in election.parties
                for b in election.parties
                if a != b
            )
            out.append(f"swap {voter}: {entries}")
        elif isinstance(model, ShiftCost):
            out.append(
                f"shift {voter}: " + " ".join(str(v) for v in model.tables[i])
            )
    return "\n".join(out) + "\n"


def parse_exact_cover(text: str) -> ExactCover34Instance:
    """Source format: a `universe: n` line then one `subset:` line per subset."""
    lines = _Lines(text)
    lineno, n_text = _expect(lines, "universe")
    try:
        n = int(n_text)
    except ValueError:
        raise InstanceParseError(lineno, f"bad universe size {n_text!r}") from None
    subsets = []
    while lines.peek() is not None:
        lineno, members = _expect(lines, "subset")
        try:
            subsets.append(tuple(int(z) for z in members.split()))
        except ValueError:
            raise InstanceParseError(lineno, f"bad subset {members!r}") from None
    try:
        return ExactCover34Instance(n, tuple(subsets))
    except DomainError as exc:
        raise InstanceParseError(1, str(exc)) from None


def parse_min_bisection(text: str) -> MinBisectionInstance:
    """Source format: `vertices:` and `bound:` lines then `edge: u v` lines."""
    lines = _Lines(text)
    lineno, n_text = _expect(lines, "vertices")
    try:
        n = int(n_text)
    except ValueError:
        raise InstanceParseError(lineno, f"bad vertex count {n_text!r}") from None
    lineno, k_text = _expect(lines, "bound")
    try:
        bound = int(k_text)
    except ValueError:
        raise InstanceParseError(lineno, f"bad bound {k_text!r}") from None
    edges = set()
    while lines.peek() is not None:
        lineno, pair = _expect(lines, "edge")
        try:
            u, v = (int(t) for t in pair.split())
        except ValueError:
            raise InstanceParseError(lineno, f"bad edge {pair!r}") from None
        edges.add((u, v))
    try:
        return MinBisectionInstance(n, frozenset(edges), bound)
    except DomainError as exc:
        raise InstanceParseError(1, str(exc)) from None
