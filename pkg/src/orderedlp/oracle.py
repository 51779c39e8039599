"""Exhaustive reference implementations used to cross-check the solver.

Everything here is written directly from the definitions, over plain Python
sets, without using the search code or the bitmask engine.  Inputs are
guarded by size limits; the enumerations are exponential on purpose.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import AbstractSet, Iterable

from .core import HeadKind, Interpretation, Literal, OrderedProgram, Program, herbrand_base


class OracleSizeError(ValueError):
    pass


def _guard(n: int, limit: int, what: str) -> None:
    if n > limit:
        raise OracleSizeError(f"{what}: {n} exceeds the exhaustive-search limit of {limit}")


def _rules(p) -> tuple:
    if isinstance(p, OrderedProgram):
        return p.program.rules
    if isinstance(p, Program):
        return p.rules
    return tuple(p)


def _true(s: AbstractSet, e) -> bool:
    return (e.lit not in s) if e.naf else (e.lit in s)


def _body_true(s, r) -> bool:
    return all(_true(s, b) for b in r.body)


def _satisfied(s, r) -> bool:
    return not _body_true(s, r) or any(_true(s, h) for h in r.head)


def _applied(s, r) -> bool:
    return _body_true(s, r) and any(_true(s, h) for h in r.head)


def _consistent(s) -> bool:
    return all(Literal(l.atom, not l.positive) not in s for l in s)


def _least_model(definite) -> tuple:
    """Naive fixpoint of (body, head-or-None) pairs; returns (model, bottom)."""
    model: set = set()
    bottom = False
    changed = True
    while changed:
        changed = False
        for body, head in definite:
            if body <= model:
                if head is None:
                    bottom = True
                elif head not in model:
                    model.add(head)
                    changed = True
    return model, bottom


def _reduct_rules(rules, s) -> list:
    """Gelfond-Lifschitz reduct as (positive body, head-or-None) pairs."""
    out = []
    for r in rules:
        if any(b.lit in s for b in r.body if b.naf):
            continue
        body = frozenset(b.lit for b in r.body if not b.naf)
        if not r.head:
            out.append((body, None))
        elif r.head[0].naf:
            if r.head[0].lit in s:
                out.append((body, None))
        else:
            out.append((body, r.head[0].lit))
    return out


def is_answer_set(s: AbstractSet, rules) -> bool:
    if not _consistent(s):
        return False
    model, bottom = _least_model(_reduct_rules(rules, s))
    return not bottom and model == set(s)


def _clash(a, b) -> bool:
    if a.naf and b.naf:
        return False
    if a.naf or b.naf:
        return a.lit == b.lit
    return a.lit.atom == b.lit.atom and a.lit.positive != b.lit.positive


def is_extended(s: AbstractSet, rules) -> bool:
    if not _consistent(s):
        return False
    kept = []
    for r in rules:
        if _satisfied(s, r):
            kept.append(r)
            continue
        if len(r.head) != 1:
            return False
        if not any(len(q.head) == 1 and _clash(r.head[0], q.head[0]) and _applied(s, q) for q in rules):
            return False
    return is_answer_set(s, kept)


def _candidates(rules, atoms) -> Iterable[frozenset]:
    """All consistent literal sets over ``atoms``, lexicographically.

    An atom's polarity is only tried when some rule can derive it: literals
    that head no rule are never part of an (extended) answer set.
    """
    heads = {h.lit for r in rules for h in r.head if not h.naf}
    choices = []
    for a in atoms:
        opts = [None]
        for positive in (True, False):
            if Literal(a, positive) in heads:
                opts.append(Literal(a, positive))
        choices.append(opts)
    for pick in itertools.product(*choices):
        yield frozenset(l for l in pick if l is not None)


def brute_force_extended(p, max_atoms: int = 10) -> set:
    rules = _rules(p)
    atoms = sorted(herbrand_base(rules))
    _guard(len(atoms), max_atoms, "atoms")
    return {Interpretation(s) for s in _candidates(rules, atoms) if is_extended(s, rules)}


def brute_force_answer_sets(p, max_atoms: int = 12) -> set:
    """Classical answer sets of a non-disjunctive program (naf allowed)."""
    rules = _rules(p)
    atoms = sorted(herbrand_base(rules))
    _guard(len(atoms), max_atoms, "atoms")
    return {Interpretation(s) for s in _candidates(rules, atoms) if is_answer_set(s, rules)}


def _preceq(r1: frozenset, r2: frozenset, below: dict) -> bool:
    only1 = r1 - r2
    for x in r2 - r1:
        if not any(y in only1 for y in below[x]):
            return False
    return True


def brute_force_preferred(op: OrderedProgram, max_atoms: int = 10, proper: bool = False) -> set:
    """⊑-minimal extended answer sets of ``op`` by exhaustive enumeration.

    Two answer sets with the same reduct never beat each other.  With
    ``proper`` only those satisfying every <-minimal rule are kept.
    """
    rules = op.program.rules
    ext = sorted(brute_force_extended(rules, max_atoms), key=sorted)
    reducts = [frozenset(r.label for r in rules if _satisfied(m, r)) for m in ext]
    below = op.order.below
    out = set()
    for k, m in enumerate(ext):
        if any(reducts[j] != reducts[k] and _preceq(reducts[j], reducts[k], below) for j in range(len(ext))):
            continue
        out.add(m)
    if proper:
        minimal = {x for x in op.labels if not below[x]}
        out = {m for m in out if all(_satisfied(m, r) for r in rules if r.label in minimal)}
    return out


# ---------------------------------------------------------------------------
# classical semantics of plain and disjunctive programs


def _atom_subsets(atoms) -> Iterable[frozenset]:
    for bits in itertools.product((False, True), repeat=len(atoms)):
        yield frozenset(a for a, b in zip(atoms, bits) if b)


def _check_atoms_only(rules, allow_naf_body=True, what="program") -> None:
    for r in rules:
        for e in list(r.head) + list(r.body):
            if not e.lit.positive:
                raise ValueError(f"{what}: classical negation is not allowed ({r.label})")
        if any(h.naf for h in r.head):
            raise ValueError(f"{what}: naf in a head ({r.label})")
        if not allow_naf_body and any(b.naf for b in r.body):
            raise ValueError(f"{what}: naf in a body ({r.label})")


def stable_models(p, max_atoms: int = 12) -> set:
    """Stable models (as sets of atom names) of a seminegative normal program."""
    rules = _rules(p)
    _check_atoms_only(rules, what="seminegative program")
    if any(len(r.head) > 1 for r in rules):
        raise ValueError("stable_models needs a normal (non-disjunctive) program")
    atoms = sorted(herbrand_base(rules))
    _guard(len(atoms), max_atoms, "atoms")
    out = set()
    for m in _atom_subsets(atoms):
        s = frozenset(Literal(a) for a in m)
        if is_answer_set(s, rules):
            out.add(m)
    return out


def minimal_sets(sets: Iterable[frozenset]) -> set:
    sets = set(sets)
    return {s for s in sets if not any(t < s for t in sets)}


def minimal_models(p, max_atoms: int = 14) -> set:
    """⊆-minimal models of a positive disjunctive program."""
    rules = _rules(p)
    _check_atoms_only(rules, allow_naf_body=False, what="positive program")
    atoms = sorted(herbrand_base(rules))
    _guard(len(atoms), max_atoms, "atoms")
    models = []
    for m in _atom_subsets(atoms):
        if all(_model_of(m, r) for r in rules):
            models.append(m)
    return minimal_sets(models)


def _model_of(m: frozenset, r) -> bool:
    body = all((b.lit.atom not in m) if b.naf else (b.lit.atom in m) for b in r.body)
    return not body or any(h.lit.atom in m for h in r.head)


def disjunctive_answer_sets(p, max_atoms: int = 12) -> set:
    """Answer sets of a seminegative disjunctive program: the sets M that
    are minimal models of the reduct P^M."""
    rules = _rules(p)
    _check_atoms_only(rules, what="seminegative program")
    atoms = sorted(herbrand_base(rules))
    _guard(len(atoms), max_atoms, "atoms")
    subsets = list(_atom_subsets(atoms))
    out = set()
    for m in subsets:
        red = [r for r in rules if not any(b.naf and b.lit.atom in m for b in r.body)]
        red = [r.__class__(r.label, r.head, frozenset(b for b in r.body if not b.naf), r.kind) for r in red]
        if not all(_model_of(m, r) for r in red):
            continue
        if not any(n < m and all(_model_of(n, r) for r in red) for n in subsets):
            out.add(m)
    return out


def split_programs(p, max_splits: int = 4096) -> Iterable[list]:
    """Every way of replacing each disjunctive head by a nonempty subset of
    its atoms, one single-headed rule per chosen atom."""
    rules = _rules(p)
    choices = []
    total = 1
    for r in rules:
        if len(r.head) <= 1:
            choices.append([[r]])
            continue
        opts = []
        for k in range(1, len(r.head) + 1):
            for subset in itertools.combinations(r.head, k):
                opts.append([r.__class__(f"{r.label}/{h.lit}", (h,), r.body) for h in subset])
        choices.append(opts)
        total *= len(opts)
    _guard(total, max_splits, "split programs")
    for pick in itertools.product(*choices):
        yield [q for part in pick for q in part]


def possible_models(p, max_atoms: int = 12) -> set:
    """Union of the stable models of all split programs."""
    out = set()
    for split in split_programs(p):
        out |= stable_models(split, max_atoms)
    return out


# ---------------------------------------------------------------------------
# ordered disjunction


def _options(r) -> tuple:
    return tuple(h.lit for h in r.head)


def lpod_split_programs(p, max_splits: int = 4096) -> Iterable[list]:
    """Replace every ordered rule a1*...*an <- B by one of its options
    ak <- B, not a1, ..., not a(k-1)."""
    from .core import ExtLiteral, Rule

    rules = _rules(p)
    choices = []
    total = 1
    for r in rules:
        if r.kind is not HeadKind.ORDERED:
            choices.append([r])
            continue
        opts = []
        for k, a in enumerate(_options(r)):
            body = frozenset(r.body) | {ExtLiteral(x, True) for x in _options(r)[:k]}
            opts.append(Rule(f"{r.label}/{k + 1}", (ExtLiteral(a),), body))
        choices.append(opts)
        total *= len(opts)
    _guard(total, max_splits, "split programs")
    for pick in itertools.product(*choices):
        yield list(pick)


def lpod_answer_sets(p, max_atoms: int = 10) -> set:
    out = set()
    for split in lpod_split_programs(p):
        out |= brute_force_answer_sets(split, max_atoms)
    return out


@dataclass(frozen=True)
class DegreeProfile:
    degrees: tuple  # (label, degree) pairs in program order

    def level(self, k: int) -> frozenset:
        return frozenset(label for label, d in self.degrees if d == k)

    @property
    def max_degree(self) -> int:
        return max((d for _, d in self.degrees), default=1)


def degree(s: AbstractSet, r) -> int:
    if not _body_true(s, r):
        return 1
    for k, a in enumerate(_options(r)):
        if a in s:
            return k + 1
    # only reachable for sets that are not answer sets
    return max(len(r.head), 1)


def degree_profile(s: AbstractSet, p) -> DegreeProfile:
    return DegreeProfile(tuple((r.label, degree(s, r)) for r in _rules(p)))


def lpod_better(s1: AbstractSet, s2: AbstractSet, p) -> bool:
    """s1 is strictly better than s2: at the first level where their
    rule sets differ, s1's strictly includes s2's."""
    d1, d2 = degree_profile(s1, p), degree_profile(s2, p)
    top = max(d1.max_degree, d2.max_degree)
    for k in range(1, top + 1):
        a, b = d1.level(k), d2.level(k)
        if a == b:
            continue
        return b < a
    return False


def lpod_preferred(p, max_atoms: int = 10) -> set:
    sets = lpod_answer_sets(p, max_atoms)
    return {s for s in sets if not any(lpod_better(t, s, p) for t in sets if t != s)}


# ---------------------------------------------------------------------------
# database repairs


def satisfies_clause(db: AbstractSet, clause: AbstractSet) -> bool:
    return any(l in db for l in clause)


def brute_force_repairs(d: AbstractSet, constraints: Iterable[AbstractSet], max_atoms: int = 14) -> set:
    """⊆-minimal additions D'\\D over total databases D' satisfying C."""
    d = frozenset(d)
    constraints = [frozenset(c) for c in constraints]
    atoms = sorted({l.atom for l in d} | {l.atom for c in constraints for l in c})
    _guard(len(atoms), max_atoms, "atoms")
    deltas = []
    for bits in itertools.product((True, False), repeat=len(atoms)):
        db = frozenset(Literal(a, b) for a, b in zip(atoms, bits))
        if all(satisfies_clause(db, c) for c in constraints):
            deltas.append(db - d)
    return minimal_sets(deltas)
