"""Search for preferred answer sets over specifications of rule sets.

A specification fixes rules that must be satisfied (``r_in``) and rules that
must be violated (``r_out``); a constraint is a family of rule sets of which a
solution must contain at least one.  ``aset`` walks the rules bottom-up along
the order, and after the "satisfied" branch has produced its minimal reducts,
the "violated" branch is only allowed to return reducts that are not beaten
by any of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet, Iterable

from .core import Interpretation, OrderedProgram
from .semantics import AnswerSetReport, ReportKind, search


@dataclass(frozen=True)
class Specification:
    r_in: frozenset = frozenset()
    r_out: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "r_in", frozenset(self.r_in))
        object.__setattr__(self, "r_out", frozenset(self.r_out))
        if self.r_in & self.r_out:
            raise ValueError("a specification's two rule sets must be disjoint")

    def check_closed(self, op: OrderedProgram) -> None:
        assigned = self.r_in | self.r_out
        for x in assigned:
            if not op.order.below[x] <= assigned:
                raise ValueError(f"specification is not downward closed at {x}")


@dataclass(frozen=True)
class SearchConstraint:
    clauses: frozenset = frozenset([frozenset()])

    def __post_init__(self):
        object.__setattr__(self, "clauses", frozenset(frozenset(c) for c in self.clauses))


@dataclass(frozen=True)
class WitnessFamily:
    target: frozenset
    sets: frozenset


def spec_satisfied(r: AbstractSet, s: Specification, op: OrderedProgram) -> bool:
    """``r`` is the reduct of an extended answer set respecting ``s``."""
    r = frozenset(r)
    if not (s.r_in <= r) or r & s.r_out:
        return False
    ip = op.program.indexed
    rmask = ip.rule_mask(r)
    rest = ip.all_rules & ~rmask
    return bool(_expand(ip, rmask, rest, limit=1))


def constraint_satisfied(r: AbstractSet, c: SearchConstraint) -> bool:
    return any(clause <= r for clause in c.clauses)


def spec_consistent_with(s: Specification, c: SearchConstraint) -> bool:
    return any(not (clause & s.r_out) for clause in c.clauses)


def witnesses(t: AbstractSet, op: OrderedProgram) -> WitnessFamily:
    t = frozenset(t)
    below = op.order.below
    sets = frozenset(frozenset({x}) | (below[x] & t) for x in op.labels if x not in t)
    return WitnessFamily(t, sets)


def _expand(ip, rmask: int, rest: int, limit=None) -> list:
    """Extended answer sets (literal masks) whose reduct is exactly ``rmask``."""
    if ip.naf_free:
        lits, bottom = ip.star(rmask)
        if bottom or not ip.consistent(lits):
            return []
        red = ip.reduct(lits)
        if red == rmask and ip.is_extended_answer_set(lits, red):
            return [lits]
        return []
    return search(ip, require_in=rmask, require_out=rest, limit=limit)


def _bits(m: int):
    while m:
        b = m & -m
        yield b.bit_length() - 1
        m ^= b


def _reduce(clauses: Iterable[int]) -> list:
    """Drop clauses that include another clause."""
    out: list = []
    for c in sorted(set(clauses), key=lambda x: bin(x).count("1")):
        if not any(d & ~c == 0 for d in out):
            out.append(c)
    return out


class _Aset:
    def __init__(self, op: OrderedProgram, prune: bool):
        self.op = op
        self.ip = ip = op.program.indexed
        self.prune = prune
        below = op.order.below
        self.below = [ip.rule_mask(below[r.label]) for r in op.rules]
        self.calls = 0

    def witness_masks(self, m: int) -> list:
        return [(1 << s) | (self.below[s] & m) for s in _bits(self.ip.all_rules & ~m)]

    def run(self, ri: int, ro: int, clauses: list) -> list:
        self.calls += 1
        ip = self.ip
        if not any(not c & ro for c in clauses):
            return []
        assigned = ri | ro
        if assigned == ip.all_rules:
            return [ri] if _expand(ip, ri, ro, limit=1) else []
        if self.prune and not search(ip, require_in=ri, require_out=ro, limit=1):
            return []
        r = next(j for j in _bits(ip.all_rules & ~assigned) if not self.below[j] & ~assigned)
        bit = 1 << r
        found = self.run(ri | bit, ro, clauses)
        updated = clauses
        for m in found:
            updated = _reduce(c | x for c in updated for x in self.witness_masks(m) if not x & bit)
            if not updated:
                break
        if not updated:
            # every reduct violating r is beaten by one of those found above
            return found
        return found + self.run(ri, ro | bit, updated)


def aset(s: Specification, c: SearchConstraint, op: OrderedProgram, *, prune: bool = False) -> set:
    """Minimal (w.r.t. the reduct order) reducts of extended answer sets
    respecting ``s`` and ``c``.

    With ``prune`` every node first checks that some extended answer set
    respects the current specification; the result is unchanged.
    """
    s.check_closed(op)
    ip = op.program.indexed
    engine = _Aset(op, prune)
    clauses = _reduce(ip.rule_mask(x) for x in c.clauses)
    found = engine.run(ip.rule_mask(s.r_in), ip.rule_mask(s.r_out), clauses)
    return {ip.rule_labels(m) for m in found}


def preferred_answer_sets(op: OrderedProgram, *, proper: bool = False, prune: bool = True) -> list:
    """Preferred (optionally: proper preferred) answer sets of ``op``.

    For the proper variant the search starts from the specification that
    already requires every <-minimal rule, which yields the minimal proper
    answer sets; these are exactly the proper preferred ones.
    """
    ip = op.program.indexed
    start = op.order.minimal() if proper else frozenset()
    reducts = aset(Specification(start), SearchConstraint(), op, prune=prune)
    kind = ReportKind.PROPER_PREFERRED if proper else ReportKind.PREFERRED
    minimal = op.order.minimal()
    reports = []
    for labels in reducts:
        rmask = ip.rule_mask(labels)
        for m in _expand(ip, rmask, ip.all_rules & ~rmask):
            k = ReportKind.PROPER_PREFERRED if minimal <= labels else kind
            reports.append(AnswerSetReport(Interpretation(ip.literals(m)), labels, k))
    reports.sort(key=lambda rep: sorted(str(x) for x in rep.interpretation))
    return reports


def preferred_interpretations(op: OrderedProgram, *, proper: bool = False, prune: bool = True) -> set:
    return {rep.interpretation for rep in preferred_answer_sets(op, proper=proper, prune=prune)}
