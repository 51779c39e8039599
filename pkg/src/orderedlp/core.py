"""Literals, rules, programs, rule orders and the primitive judgments.

Atoms are plain (interned) strings.  A literal is an atom or its classical
negation; an extended literal may additionally be wrapped in negation as
failure (``not l``).  Rules carry explicit labels so that programs behave as
multisets of rules and so that orders can be stated over labels.
"""

from __future__ import annotations

import enum
import graphlib
import sys
from dataclasses import dataclass, field
from functools import cached_property
from typing import AbstractSet, Iterable, NamedTuple

# Atoms starting with this prefix are reserved for atoms invented by the
# program transformations.
RESERVED_PREFIX = "_"


def atom(name: str) -> str:
    if not name:
        raise ValueError("atom names must be nonempty")
    return sys.intern(name)


class Literal(NamedTuple):
    atom: str
    positive: bool = True

    def __neg__(self) -> "Literal":
        return Literal(self.atom, not self.positive)

    def __str__(self) -> str:
        return self.atom if self.positive else "-" + self.atom


class ExtLiteral(NamedTuple):
    lit: Literal
    naf: bool = False

    def __str__(self) -> str:
        return "not " + str(self.lit) if self.naf else str(self.lit)


def lit(text: str) -> Literal:
    """Build a literal from ``a``, ``-a`` or ``¬a``."""
    text = text.strip()
    if text[:1] in ("-", "¬"):
        return Literal(atom(text[1:].strip()), False)
    return Literal(atom(text))


def ext(text) -> ExtLiteral:
    """Build an extended literal from ``a``, ``-a``, ``not a``, ``not -a``."""
    if isinstance(text, ExtLiteral):
        return text
    if isinstance(text, Literal):
        return ExtLiteral(text)
    text = text.strip()
    if text.startswith("not "):
        return ExtLiteral(lit(text[4:]), True)
    return ExtLiteral(lit(text))


def underlying(e: ExtLiteral) -> Literal:
    return e.lit


def is_consistent(literals: Iterable[Literal]) -> bool:
    seen = set(literals)
    return not any(-l in seen for l in seen)


def format_literals(literals: Iterable) -> str:
    items = sorted(literals, key=_literal_key)
    return "{ " + ", ".join(str(x) for x in items) + " }" if items else "{ }"


def _literal_key(l):
    if isinstance(l, ExtLiteral):
        return (l.lit.atom, not l.lit.positive, l.naf)
    if isinstance(l, Literal):
        return (l.atom, not l.positive, False)
    return (str(l), False, False)


class Interpretation(frozenset):
    """A consistent set of literals."""

    def __new__(cls, literals: Iterable = ()):
        items = [lit(x) if isinstance(x, str) else x for x in literals]
        for x in items:
            if not isinstance(x, Literal):
                raise TypeError(f"not a literal: {x!r}")
        self = super().__new__(cls, items)
        for x in self:
            if -x in self:
                raise ValueError(f"inconsistent interpretation: contains {x} and {-x}")
        return self

    def __repr__(self) -> str:
        return f"Interpretation({format_literals(self)})"

    def __str__(self) -> str:
        return format_literals(self)


def holds(i: AbstractSet[Literal], e: ExtLiteral) -> bool:
    """Truth of an extended literal in an interpretation."""
    return (e.lit not in i) if e.naf else (e.lit in i)


class HeadKind(enum.Enum):
    PLAIN = "plain"
    DISJUNCTIVE = "disjunctive"
    ORDERED = "ordered"
    CR = "cr"


@dataclass(frozen=True)
class Rule:
    label: str
    head: tuple = ()
    body: frozenset = frozenset()
    kind: HeadKind = HeadKind.PLAIN

    def __post_init__(self):
        head = tuple(ext(h) for h in self.head)
        body = frozenset(ext(b) for b in self.body)
        if len(set(head)) != len(head):
            raise ValueError(f"rule {self.label}: duplicate head literals")
        if self.kind in (HeadKind.PLAIN, HeadKind.CR) and len(head) > 1:
            raise ValueError(f"rule {self.label}: {self.kind.value} rules have at most one head literal")
        if self.kind is HeadKind.CR and not head:
            raise ValueError(f"rule {self.label}: cr rules need a head")
        if self.kind in (HeadKind.DISJUNCTIVE, HeadKind.ORDERED, HeadKind.CR):
            if any(h.naf for h in head):
                raise ValueError(f"rule {self.label}: naf not allowed in {self.kind.value} heads")
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "body", body)

    @property
    def is_constraint(self) -> bool:
        return not self.head

    @property
    def head_literal(self) -> ExtLiteral | None:
        """The single head of a non-disjunctive rule (None for constraints)."""
        if len(self.head) > 1:
            raise ValueError(f"rule {self.label} has a disjunctive head")
        return self.head[0] if self.head else None

    @property
    def positive_body(self) -> frozenset:
        return frozenset(e.lit for e in self.body if not e.naf)

    @property
    def naf_body(self) -> frozenset:
        return frozenset(e.lit for e in self.body if e.naf)

    @property
    def has_naf(self) -> bool:
        return any(e.naf for e in self.head) or any(e.naf for e in self.body)

    def literals(self) -> Iterable[Literal]:
        for e in self.head:
            yield e.lit
        for e in self.body:
            yield e.lit

    def __str__(self) -> str:
        sep = {HeadKind.ORDERED: " * ", HeadKind.DISJUNCTIVE: " | "}.get(self.kind, ", ")
        head = sep.join(str(h) for h in self.head)
        body = ", ".join(str(b) for b in sorted(self.body, key=_literal_key))
        if self.kind is HeadKind.CR:
            return f"{head} +- {body}." if body else f"{head} +-."
        if not body:
            return f"{head}." if head else ":-."
        return f"{head} :- {body}." if head else f":- {body}."


def rule(label: str, head=None, body=(), kind: HeadKind = HeadKind.PLAIN) -> Rule:
    """Convenience constructor: ``rule("r1", "a", ["-b", "not c"])``."""
    if head is None:
        heads = ()
    elif isinstance(head, (str, Literal, ExtLiteral)):
        heads = (ext(head),)
    else:
        heads = tuple(ext(h) for h in head)
    return Rule(label, heads, frozenset(ext(b) for b in body), kind)


class ProgramKind(enum.Enum):
    SLP = "slp"
    ELP = "elp"
    DLP = "dlp"
    LPOD = "lpod"
    CR = "cr"


_ALLOWED_KINDS = {
    ProgramKind.SLP: {HeadKind.PLAIN},
    ProgramKind.ELP: {HeadKind.PLAIN},
    ProgramKind.DLP: {HeadKind.PLAIN, HeadKind.DISJUNCTIVE},
    ProgramKind.LPOD: {HeadKind.PLAIN, HeadKind.ORDERED},
    ProgramKind.CR: {HeadKind.PLAIN, HeadKind.CR},
}


@dataclass(frozen=True)
class Program:
    rules: tuple = ()
    kind: ProgramKind = ProgramKind.ELP

    def __post_init__(self):
        rules = tuple(self.rules)
        object.__setattr__(self, "rules", rules)
        seen = set()
        for r in rules:
            if r.label in seen:
                raise ValueError(f"duplicate rule label {r.label!r}")
            seen.add(r.label)
            if r.kind not in _ALLOWED_KINDS[self.kind]:
                raise ValueError(f"rule {r.label}: {r.kind.value} rule not allowed in a {self.kind.value} program")
            if self.kind is ProgramKind.SLP and r.has_naf:
                raise ValueError(f"rule {r.label}: simple programs cannot use negation as failure")
            if self.kind is ProgramKind.DLP and any(h.naf for h in r.head):
                raise ValueError(f"rule {r.label}: naf in a disjunctive program head")
            if self.kind is ProgramKind.LPOD and r.kind is HeadKind.PLAIN and any(h.naf for h in r.head):
                raise ValueError(f"rule {r.label}: naf heads are not part of ordered disjunction programs")

    @cached_property
    def labels(self) -> tuple:
        return tuple(r.label for r in self.rules)

    @cached_property
    def by_label(self) -> dict:
        return {r.label: r for r in self.rules}

    @cached_property
    def indexed(self) -> "IndexedProgram":
        return IndexedProgram(self)

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    def __str__(self) -> str:
        return "\n".join(f"{r.label}: {r}" for r in self.rules)


def herbrand_base(p) -> frozenset:
    rules = p.rules if isinstance(p, Program) else p
    return frozenset(l.atom for r in rules for l in r.literals())


def literal_base(p) -> frozenset:
    """All literals (both polarities) over the Herbrand base."""
    return frozenset(Literal(a, s) for a in herbrand_base(p) for s in (True, False))


class CycleDetected(ValueError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("order contains a cycle: " + " < ".join(map(str, self.cycle)))


@dataclass(frozen=True)
class StrictOrder:
    """A strict partial order on rule labels, stored transitively closed.

    ``x < y`` means the rule labelled ``x`` is more preferred than ``y``.
    """

    domain: frozenset = frozenset()
    pairs: frozenset = frozenset()

    @cached_property
    def below(self) -> dict:
        down = {x: set() for x in self.domain}
        for x, y in self.pairs:
            down[y].add(x)
        return {x: frozenset(s) for x, s in down.items()}

    @cached_property
    def above(self) -> dict:
        up = {x: set() for x in self.domain}
        for x, y in self.pairs:
            up[x].add(y)
        return {x: frozenset(s) for x, s in up.items()}

    def lt(self, x, y) -> bool:
        return (x, y) in self.pairs

    def minimal(self) -> frozenset:
        return frozenset(x for x in self.domain if not self.below[x])

    def restrict(self, domain) -> "StrictOrder":
        domain = frozenset(domain)
        return StrictOrder(domain, frozenset((x, y) for x, y in self.pairs if x in domain and y in domain))


def validate_order(domain: Iterable, edges: Iterable = ()) -> StrictOrder:
    """Close ``edges`` transitively, rejecting cycles and unknown labels."""
    domain = frozenset(domain)
    preds = {x: set() for x in domain}
    for x, y in edges:
        if x not in domain or y not in domain:
            raise ValueError(f"order edge ({x}, {y}) mentions an unknown rule")
        if x == y:
            raise CycleDetected([x, x])
        preds[y].add(x)
    ts = graphlib.TopologicalSorter(preds)
    try:
        topo = list(ts.static_order())
    except graphlib.CycleError as err:
        raise CycleDetected(err.args[1]) from None
    down: dict = {}
    for y in topo:
        acc = set()
        for x in preds[y]:
            acc.add(x)
            acc |= down[x]
        down[y] = acc
    return StrictOrder(domain, frozenset((x, y) for y in domain for x in down[y]))


def layered_order(layers: Iterable[Iterable]) -> StrictOrder:
    """Order where every label of an earlier layer is below every later one."""
    layers = [list(l) for l in layers]
    domain = [x for layer in layers for x in layer]
    edges = [(x, y) for k in range(len(layers) - 1) for x in layers[k] for y in layers[k + 1]]
    return validate_order(domain, edges)


def down_closure(x: Iterable, o: StrictOrder) -> frozenset:
    out = set()
    for v in x:
        out |= o.below[v]
    return frozenset(out)


@dataclass(frozen=True)
class OrderedProgram:
    program: Program
    order: StrictOrder = None

    def __post_init__(self):
        labels = frozenset(self.program.labels)
        if self.order is None:
            object.__setattr__(self, "order", StrictOrder(labels))
        elif self.order.domain != labels:
            raise ValueError("order domain must equal the set of rule labels")

    @property
    def rules(self) -> tuple:
        return self.program.rules

    @property
    def labels(self) -> tuple:
        return self.program.labels

    @property
    def has_naf(self) -> bool:
        return any(r.has_naf for r in self.program.rules)


def ordered(rules: Iterable[Rule], layers=None, edges=(), kind: ProgramKind = ProgramKind.ELP) -> OrderedProgram:
    """Build an ordered program; ``layers`` lists labels from most to least preferred."""
    p = Program(tuple(rules), kind)
    if layers is not None:
        o = layered_order(layers)
        edges = list(o.pairs) + list(edges)
    return OrderedProgram(p, validate_order(p.labels, edges))


# ---------------------------------------------------------------------------
# primitive judgments over literal sets


@dataclass(frozen=True)
class StarResult:
    literals: frozenset
    bottom: bool = False

    @property
    def consistent(self) -> bool:
        return not self.bottom and is_consistent(self.literals)


def star_closure(rules: Iterable[Rule]) -> StarResult:
    """Least fixpoint of a naf-free program, negative literals read as atoms."""
    rules = list(rules)
    for r in rules:
        if r.has_naf:
            raise ValueError(f"rule {r.label}: star closure is only defined for naf-free rules")
        if len(r.head) > 1:
            raise ValueError(f"rule {r.label}: star closure needs non-disjunctive rules")
    waiting: dict = {}
    missing = []
    queue = []
    for k, r in enumerate(rules):
        missing.append(len(r.body))
        for b in r.body:
            waiting.setdefault(b.lit, []).append(k)
        if not r.body:
            queue.append(k)
    derived: set = set()
    bottom = False
    while queue:
        k = queue.pop()
        r = rules[k]
        if not r.head:
            bottom = True
            continue
        h = r.head[0].lit
        if h in derived:
            continue
        derived.add(h)
        for j in waiting.get(h, ()):
            missing[j] -= 1
            if missing[j] == 0:
                queue.append(j)
    return StarResult(frozenset(derived), bottom)


def body_true(i: AbstractSet[Literal], r: Rule) -> bool:
    return all(holds(i, b) for b in r.body)


def satisfies(i: AbstractSet[Literal], r: Rule) -> bool:
    if not body_true(i, r):
        return True
    return any(holds(i, h) for h in r.head)


def applied(i: AbstractSet[Literal], r: Rule) -> bool:
    return body_true(i, r) and any(holds(i, h) for h in r.head)


def conflicting(a: ExtLiteral, b: ExtLiteral) -> bool:
    """Whether two rule heads contradict each other (l vs -l, l vs not l)."""
    if not a.naf and not b.naf:
        return a.lit == -b.lit
    if a.naf != b.naf:
        return a.lit == b.lit
    return False


def defeated(r: Rule, i: AbstractSet[Literal], p) -> bool:
    """Whether some applied rule of ``p`` has a head conflicting with ``r``'s."""
    if not r.head:
        return False
    if len(r.head) > 1:
        raise ValueError(f"defeat is only defined for rules with a single head ({r.label})")
    h = r.head[0]
    rules = p.rules if isinstance(p, (Program, OrderedProgram)) else p
    return any(len(s.head) == 1 and conflicting(h, s.head[0]) and applied(i, s) for s in rules)


def reduct(p, i: AbstractSet[Literal]) -> frozenset:
    """Labels of the rules satisfied by ``i``."""
    rules = p.rules if isinstance(p, (Program, OrderedProgram)) else p
    return frozenset(r.label for r in rules if satisfies(i, r))


# ---------------------------------------------------------------------------
# bitmask form used by the search procedures


class IndexedProgram:
    """A program compiled to integer bitmasks.

    Atom ``k`` (in sorted order) owns bit ``2k`` for its positive literal and
    bit ``2k+1`` for its negation; rule ``j`` owns bit ``j`` of a rule mask.
    """

    def __init__(self, program: Program):
        self.program = program
        self.rules = program.rules
        self.atoms = sorted(herbrand_base(program))
        self.atom_index = {a: k for k, a in enumerate(self.atoms)}
        self.nlits = 2 * len(self.atoms)
        self.even = sum(1 << (2 * k) for k in range(len(self.atoms)))
        self.n = len(self.rules)
        self.all_rules = (1 << self.n) - 1
        self.label_index = {r.label: j for j, r in enumerate(self.rules)}
        self.pos, self.neg, self.head, self.head_naf = [], [], [], []
        for r in self.rules:
            if len(r.head) > 1:
                raise ValueError(f"rule {r.label}: bitmask form needs non-disjunctive rules")
            self.pos.append(self.mask(e.lit for e in r.body if not e.naf))
            self.neg.append(self.mask(e.lit for e in r.body if e.naf))
            self.head.append(self.bit(r.head[0].lit) if r.head else 0)
            self.head_naf.append(bool(r.head) and r.head[0].naf)
        self.ordinary_heads = 0
        for j in range(self.n):
            if self.head[j] and not self.head_naf[j]:
                self.ordinary_heads |= self.head[j]
        self.constraints = [j for j in range(self.n) if not self.head[j]]
        self.naf_free = not any(self.neg) and not any(self.head_naf)
        by_head: dict = {}
        for j in range(self.n):
            if self.head[j]:
                by_head.setdefault((self.head[j], self.head_naf[j]), []).append(j)
        self.competitors = []
        for j in range(self.n):
            if not self.head[j]:
                self.competitors.append(())
            elif self.head_naf[j]:
                self.competitors.append(tuple(by_head.get((self.head[j], False), ())))
            else:
                comp = by_head.get((self.complement(self.head[j]), False), []) + by_head.get((self.head[j], True), [])
                self.competitors.append(tuple(sorted(comp)))

    # literal masks
    def bit(self, l: Literal) -> int:
        return 1 << (2 * self.atom_index[l.atom] + (0 if l.positive else 1))

    def mask(self, literals: Iterable[Literal]) -> int:
        m = 0
        for l in literals:
            m |= self.bit(l)
        return m

    def literals(self, m: int) -> frozenset:
        out = []
        k = 0
        while m:
            if m & 1:
                out.append(Literal(self.atoms[k >> 1], not (k & 1)))
            m >>= 1
            k += 1
        return frozenset(out)

    def complement(self, m: int) -> int:
        return ((m & self.even) << 1) | ((m >> 1) & self.even)

    def consistent(self, m: int) -> bool:
        return not (m & (m >> 1) & self.even)

    # rule masks
    def rule_mask(self, labels: Iterable) -> int:
        m = 0
        for x in labels:
            m |= 1 << self.label_index[x]
        return m

    def rule_labels(self, m: int) -> frozenset:
        return frozenset(self.rules[j].label for j in range(self.n) if m >> j & 1)

    # judgments
    def body_true(self, j: int, m: int) -> bool:
        return not (self.pos[j] & ~m) and not (self.neg[j] & m)

    def head_true(self, j: int, m: int) -> bool:
        h = self.head[j]
        if not h:
            return False
        return not (h & m) if self.head_naf[j] else bool(h & m)

    def satisfied(self, j: int, m: int) -> bool:
        return not self.body_true(j, m) or self.head_true(j, m)

    def applied(self, j: int, m: int) -> bool:
        return self.body_true(j, m) and self.head_true(j, m)

    def defeated(self, j: int, m: int) -> bool:
        return any(self.applied(k, m) for k in self.competitors[j])

    def reduct(self, m: int) -> int:
        out = 0
        for j in range(self.n):
            if self.satisfied(j, m):
                out |= 1 << j
        return out

    def star(self, rmask: int) -> tuple:
        """Closure of the naf-free rules selected by ``rmask``: (literals, bottom)."""
        items = [(self.pos[j], self.head[j]) for j in range(self.n) if rmask >> j & 1]
        return closure(items)

    def gl_star(self, rmask: int, m: int) -> tuple:
        """Closure of the Gelfond-Lifschitz reduct of the selected rules w.r.t. ``m``."""
        items = []
        for j in range(self.n):
            if not rmask >> j & 1 or self.neg[j] & m:
                continue
            if self.head_naf[j]:
                if self.head[j] & m:
                    items.append((self.pos[j], 0))
            else:
                items.append((self.pos[j], self.head[j]))
        return closure(items)

    def is_extended_answer_set(self, m: int, rmask: int | None = None) -> bool:
        """Extended answer set test; ``rmask`` may pass a precomputed reduct."""
        if not self.consistent(m):
            return False
        red = self.reduct(m) if rmask is None else rmask
        for j in range(self.n):
            if not red >> j & 1 and not self.defeated(j, m):
                return False
        lits, bottom = self.gl_star(red, m)
        return not bottom and lits == m


def closure(items, start: int = 0) -> tuple:
    """Least fixpoint of (body-mask, head-bit) pairs; a zero head is ⊥."""
    m = start
    bottom = False
    pending = items
    changed = True
    while changed:
        changed = False
        rest = []
        for pos, h in pending:
            if pos & ~m:
                rest.append((pos, h))
            elif h:
                if not h & m:
                    m |= h
                    changed = True
            else:
                bottom = True
        pending = rest
    return m, bottom
