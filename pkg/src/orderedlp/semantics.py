"""Answer sets, extended answer sets and the preference order on them."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import AbstractSet, Iterable

from .core import (
    IndexedProgram,
    Interpretation,
    OrderedProgram,
    Program,
    ProgramKind,
    Rule,
    StrictOrder,
    closure,
    defeated,
    is_consistent,
    reduct,
    satisfies,
    star_closure,
)


def _rules(p) -> tuple:
    if isinstance(p, OrderedProgram):
        return p.program.rules
    if isinstance(p, Program):
        return p.rules
    return tuple(p)


def _program(p) -> Program:
    if isinstance(p, OrderedProgram):
        return p.program
    if isinstance(p, Program):
        return p
    return Program(tuple(p))


def gl_reduct(p, i: AbstractSet) -> Program:
    """Gelfond-Lifschitz reduct: drop naf, keeping rules whose naf parts hold."""
    out = []
    for r in _rules(p):
        if any(e.lit in i for e in r.body if e.naf):
            continue
        head = tuple(h for h in r.head if not h.naf)
        naf_head = [h.lit for h in r.head if h.naf]
        if naf_head and not all(l in i for l in naf_head):
            continue
        body = frozenset(e for e in r.body if not e.naf)
        out.append(Rule(r.label, head, body))
    return Program(tuple(out), ProgramKind.ELP)


def is_classical_answer_set(i: AbstractSet, p) -> bool:
    if not is_consistent(i):
        return False
    star = star_closure(gl_reduct(p, i).rules)
    return not star.bottom and star.literals == frozenset(i)


def satisfied_rules(p, i: AbstractSet) -> tuple:
    return tuple(r for r in _rules(p) if satisfies(i, r))


def is_founded(i: AbstractSet, p) -> bool:
    star = star_closure(satisfied_rules(p, i))
    return not star.bottom and star.literals == frozenset(i)


def is_extended_answer_set(i: AbstractSet, p) -> bool:
    if not is_consistent(i):
        return False
    rules = _rules(p)
    for r in rules:
        if not satisfies(i, r) and not defeated(r, i, rules):
            return False
    return is_classical_answer_set(i, satisfied_rules(rules, i))


# ---------------------------------------------------------------------------
# search


class _Stop(Exception):
    pass


def search(ip: IndexedProgram, require_in: int = 0, require_out: int = 0, limit: int | None = None) -> list:
    """Extended answer sets (as literal masks) whose reduct contains every
    rule of ``require_in`` and none of ``require_out``.

    Branches on head literals; each node propagates consistency, rule
    obligations and an upper bound from the rules that could still support a
    literal.  Leaves are checked against the full definition.
    """
    n = ip.n
    full = (1 << ip.nlits) - 1
    pos, neg, head, head_naf, comp = ip.pos, ip.neg, ip.head, ip.head_naf, ip.competitors
    if any(require_out >> j & 1 and not head[j] for j in range(n)):
        return []
    candidates = ip.ordinary_heads
    found: list = []

    def possibly_applied(k, T, F):
        if pos[k] & F or neg[k] & T:
            return False
        h = head[k]
        return not (h & T) if head_naf[k] else not (h & F)

    def propagate(T, F):
        while True:
            F2 = F | ip.complement(T)
            T2 = T
            if T2 & F2:
                return None
            for j in range(n):
                out = require_out >> j & 1
                if pos[j] & F2 or neg[j] & T2:
                    if out:
                        return None
                    continue
                h = head[j]
                if out:
                    T2 |= pos[j]
                    F2 |= neg[j]
                    if head_naf[j]:
                        T2 |= h
                    else:
                        F2 |= h
                elif pos[j] & ~T2 or neg[j] & ~F2:
                    continue
                # the body is true from here on
                if not h:
                    return None
                if head_naf[j]:
                    h_true, h_false = h & F2, h & T2
                else:
                    h_true, h_false = h & T2, h & F2
                if h_true:
                    continue
                rescuable = not (require_in >> j & 1) and any(possibly_applied(k, T2, F2) for k in comp[j])
                if h_false:
                    if not rescuable:
                        return None
                elif not rescuable:
                    if head_naf[j]:
                        F2 |= h
                    else:
                        T2 |= h
            items = [
                (pos[j], head[j])
                for j in range(n)
                if head[j] and not head_naf[j] and not head[j] & F2 and not neg[j] & T2 and not require_out >> j & 1
            ]
            up, _ = closure(items)
            F2 |= full & ~up
            if T2 & F2:
                return None
            if T2 == T and F2 == F:
                return T, F
            T, F = T2, F2

    def rec(T, F):
        state = propagate(T, F)
        if state is None:
            return
        T, F = state
        free = candidates & ~(T | F)
        if not free:
            red = ip.reduct(T)
            if red & require_in == require_in and not red & require_out and ip.is_extended_answer_set(T, red):
                found.append(T)
                if limit is not None and len(found) >= limit:
                    raise _Stop
            return
        b = free & -free
        rec(T | b, F)
        rec(T, F | b)

    try:
        rec(0, full & ~candidates)
    except _Stop:
        pass
    return found


def enumerate_extended_answer_sets(p) -> set:
    ip = _program(p).indexed
    return {Interpretation(ip.literals(m)) for m in search(ip)}


def enumerate_answer_sets(p) -> set:
    """Classical answer sets: extended answer sets satisfying every rule."""
    ip = _program(p).indexed
    return {Interpretation(ip.literals(m)) for m in search(ip, require_in=ip.all_rules)}


def construct_extended_answer_set(p) -> Interpretation:
    """Grow an extended answer set of a constraint-free simple program.

    Starting from the empty set, repeatedly add the head of the first rule
    (in program order) whose body holds and whose head is neither present
    nor contradicted, until no such rule is left.
    """
    rules = _rules(p)
    for r in rules:
        if r.is_constraint:
            raise ValueError(f"rule {r.label}: the construction needs a constraint-free program")
        if r.has_naf or len(r.head) > 1:
            raise ValueError(f"rule {r.label}: the construction needs a simple program")
    current: set = set()
    while True:
        for r in rules:
            h = r.head[0].lit
            if h not in current and -h not in current and r.positive_body <= current:
                current.add(h)
                break
        else:
            return Interpretation(current)


# ---------------------------------------------------------------------------
# preference


def reduct_preceq(r1: AbstractSet, r2: AbstractSet, o: StrictOrder) -> bool:
    """Every rule of ``r2`` missing from ``r1`` is countered by a more
    preferred rule of ``r1`` missing from ``r2``."""
    gain = set(r1) - set(r2)
    return all(o.below[x] & gain for x in set(r2) - set(r1))


class Comparison(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def is_olp(op: OrderedProgram) -> bool:
    return op.program.kind is ProgramKind.SLP or not op.has_naf


def answer_set_prefer(m1: AbstractSet, m2: AbstractSet, op: OrderedProgram) -> Comparison:
    if frozenset(m1) == frozenset(m2):
        return Comparison.EQUAL
    r1, r2 = reduct(op, m1), reduct(op, m2)
    if is_olp(op):
        le12 = reduct_preceq(r1, r2, op.order)
        le21 = reduct_preceq(r2, r1, op.order)
        if le12 and not le21:
            return Comparison.LESS
        if le21 and not le12:
            return Comparison.GREATER
        return Comparison.INCOMPARABLE
    # extended ordered programs: answer sets with equal reducts are unrelated
    if r1 == r2:
        return Comparison.INCOMPARABLE
    if reduct_preceq(r1, r2, op.order):
        return Comparison.LESS
    if reduct_preceq(r2, r1, op.order):
        return Comparison.GREATER
    return Comparison.INCOMPARABLE


def is_proper(m: AbstractSet, op: OrderedProgram) -> bool:
    minimal = op.order.minimal()
    return all(satisfies(m, r) for r in op.rules if r.label in minimal)


class ReportKind(enum.Enum):
    CLASSICAL = "classical"
    EXTENDED = "extended"
    PREFERRED = "preferred"
    PROPER_PREFERRED = "proper-preferred"


@dataclass(frozen=True)
class AnswerSetReport:
    interpretation: Interpretation
    reduct_labels: frozenset
    kind: ReportKind

    def defeated_labels(self, p) -> frozenset:
        return frozenset(r.label for r in _rules(p)) - self.reduct_labels

    def __str__(self) -> str:
        return str(self.interpretation)


def minimal_elements(sets: Iterable, op: OrderedProgram) -> set:
    """The extended answer sets among ``sets`` not strictly beaten by another."""
    sets = list(sets)
    reducts = [reduct(op, m) for m in sets]
    out = set()
    for k, m in enumerate(sets):
        beaten = any(
            reducts[j] != reducts[k] and reduct_preceq(reducts[j], reducts[k], op.order)
            for j in range(len(sets))
            if j != k
        )
        if not beaten:
            out.add(m)
    return out
