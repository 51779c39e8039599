"""Program-to-program reductions.

Atoms invented by a translation live in a reserved namespace: they start
with ``_``, followed by a tag and the polarity/atom of the source literal they
stand for (see :func:`fresh` and :func:`decode`).  Source programs may not use
that namespace.  The translations never reuse source labels verbatim except
where a rule is mapped one-to-one; new labels are prefixed with the name of
the layer they belong to.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import AbstractSet, Iterable

from .core import (
    RESERVED_PREFIX,
    ExtLiteral,
    HeadKind,
    Interpretation,
    Literal,
    OrderedProgram,
    Program,
    ProgramKind,
    Rule,
    StrictOrder,
    herbrand_base,
    layered_order,
    validate_order,
)

INCONSISTENT = "inconsistent"

# tags of the fresh-atom namespace
NAF_HEAD = "h"  # witness for a naf head in the naf-head-free version
LIT_IMAGE = "l"  # image of an ordinary literal
NAF_IMAGE = "d"  # image of a naf literal


def fresh(tag: str, l: Literal) -> str:
    return f"{RESERVED_PREFIX}{tag}{'p' if l.positive else 'n'}_{l.atom}"


def decode(name: str) -> tuple | None:
    """Inverse of :func:`fresh`: ``(tag, literal)`` or None for other atoms."""
    if not name.startswith(RESERVED_PREFIX) or len(name) < 5 or name[3] != "_":
        return None
    tag, sign, a = name[1], name[2], name[4:]
    if sign not in "pn":
        return None
    return tag, Literal(a, sign == "p")


def _pos(l: Literal) -> ExtLiteral:
    return ExtLiteral(l)


def _naf(l: Literal) -> ExtLiteral:
    return ExtLiteral(l, True)


def _check_source(rules: Iterable[Rule]) -> None:
    for r in rules:
        for l in r.literals():
            if l.atom.startswith(RESERVED_PREFIX):
                raise ValueError(f"rule {r.label}: atom {l.atom!r} is in the reserved namespace")


def _rules(p) -> tuple:
    if isinstance(p, OrderedProgram):
        return p.program.rules
    if isinstance(p, Program):
        return p.rules
    return tuple(p)


def project(m: AbstractSet[Literal], atoms: AbstractSet[str]) -> Interpretation:
    """Keep the literals over ``atoms``."""
    return Interpretation(l for l in m if l.atom in atoms)


def completion(m: AbstractSet[str], atoms: Iterable[str]) -> Interpretation:
    """M ∪ ¬(H \\ M) for a set of atom names."""
    return Interpretation(Literal(a, a in m) for a in atoms)


def positive_part(m: AbstractSet[Literal]) -> frozenset:
    return frozenset(l.atom for l in m if l.positive)


# ---------------------------------------------------------------------------
# extended answer sets as classical answer sets


def slp_to_elp(p) -> Program:
    """a ← β becomes a ← β, not ¬a; constraints are unchanged."""
    rules = _rules(p)
    out = []
    for r in rules:
        if r.has_naf or len(r.head) > 1:
            raise ValueError(f"rule {r.label}: expected a simple program")
        if not r.head:
            out.append(r)
            continue
        h = r.head[0].lit
        out.append(Rule(r.label, r.head, r.body | {_naf(-h)}))
    return Program(tuple(out), ProgramKind.ELP)


def elp_remove_naf_heads(p) -> Program:
    """a ← β becomes a ← β, not ¬a, not a°; not a ← β becomes a° ← β, not a."""
    rules = _rules(p)
    _check_source(rules)
    out = []
    for r in rules:
        if len(r.head) > 1:
            raise ValueError(f"rule {r.label}: expected at most one head literal")
        if not r.head:
            out.append(r)
            continue
        h = r.head[0]
        witness = Literal(fresh(NAF_HEAD, h.lit))
        if h.naf:
            out.append(Rule(r.label, (_pos(witness),), r.body | {_naf(h.lit)}))
        else:
            out.append(Rule(r.label, r.head, r.body | {_naf(-h.lit), _naf(witness)}))
    return Program(tuple(out), ProgramKind.ELP)


# ---------------------------------------------------------------------------
# normal and disjunctive programs as ordered programs


def _seminegative(rules, allow_disjunction: bool) -> None:
    _check_source(rules)
    for r in rules:
        for e in list(r.head) + list(r.body):
            if not e.lit.positive:
                raise ValueError(f"rule {r.label}: classical negation is not allowed here")
        if any(h.naf for h in r.head):
            raise ValueError(f"rule {r.label}: naf in a head is not allowed here")
        if not allow_disjunction and len(r.head) > 1:
            raise ValueError(f"rule {r.label}: disjunctive heads are not allowed here")


def _classical(body: Iterable[ExtLiteral]) -> frozenset:
    """Replace ``not a`` by ``¬a``."""
    return frozenset(_pos(-e.lit) if e.naf else e for e in body)


def naf_sim(p) -> OrderedProgram:
    """Ordered version of a seminegative normal program: naf becomes
    classical negation, with the defaults ¬a ← in a less preferred layer."""
    rules = _rules(p)
    _seminegative(rules, allow_disjunction=False)
    main = [Rule(f"p:{r.label}", r.head, _classical(r.body)) for r in rules]
    defaults = [Rule(f"neg:{a}", (_pos(Literal(a, False)),)) for a in sorted(herbrand_base(rules))]
    prog = Program(tuple(main + defaults), ProgramKind.SLP)
    return OrderedProgram(prog, layered_order([[r.label for r in main], [r.label for r in defaults]]))


def _shifted(r: Rule, a: Literal, body: frozenset) -> frozenset:
    return body | {_pos(-h.lit) for h in r.head if h.lit != a}


def disj_sim(p) -> OrderedProgram:
    """Ordered version of a positive disjunctive program (guess layers for
    every atom under the shifted rules)."""
    rules = _rules(p)
    _seminegative(rules, allow_disjunction=True)
    for r in rules:
        if any(b.naf for b in r.body):
            raise ValueError(f"rule {r.label}: a positive program cannot use naf")
    atoms = sorted(herbrand_base(rules))
    shifted = []
    for r in rules:
        if not r.head:
            shifted.append(Rule(f"p:{r.label}", (), r.body))
        for h in r.head:
            shifted.append(Rule(f"p:{r.label}:{h.lit.atom}", (h,), _shifted(r, h.lit, r.body)))
    minus = [Rule(f"minus:{a}", (_pos(Literal(a, False)),)) for a in atoms]
    plus = [Rule(f"plus:{a}", (_pos(Literal(a)),)) for a in atoms]
    prog = Program(tuple(shifted + minus + plus), ProgramKind.SLP)
    order = layered_order([[r.label for r in layer] for layer in (shifted, minus, plus)])
    return OrderedProgram(prog, order)


def disj_naf_sim(p) -> OrderedProgram:
    """Ordered version of a seminegative disjunctive program."""
    rules = _rules(p)
    _seminegative(rules, allow_disjunction=True)
    atoms = sorted(herbrand_base(rules))
    choice, shifted = [], []
    for r in rules:
        body = _classical(r.body)
        if not r.head:
            shifted.append(Rule(f"p:{r.label}", (), body))
        for h in r.head:
            choice.append(Rule(f"c:{r.label}:{h.lit.atom}", (h,), body))
            shifted.append(Rule(f"p:{r.label}:{h.lit.atom}", (h,), _shifted(r, h.lit, body)))
    minus = [Rule(f"minus:{a}", (_pos(Literal(a, False)),)) for a in atoms]
    prog = Program(tuple(shifted + minus + choice), ProgramKind.SLP)
    order = layered_order([[r.label for r in layer] for layer in (shifted, minus, choice)])
    return OrderedProgram(prog, order)


# ---------------------------------------------------------------------------
# extended ordered programs as ordered programs


def image(e: ExtLiteral) -> Literal:
    """The fresh atom standing for an extended literal."""
    return Literal(fresh(NAF_IMAGE if e.naf else LIT_IMAGE, e.lit))


def eolp_to_olp(op: OrderedProgram) -> OrderedProgram:
    """Simulate an extended ordered program by a simple one.

    Layers, most preferred first: consistency constraints and the rules
    mapping images back to literals; the translated rules, ordered as their
    sources; the defaults making every naf literal true.
    """
    rules = op.program.rules
    _check_source(rules)
    atoms = sorted(herbrand_base(rules))
    lits = [Literal(a, s) for a in atoms for s in (True, False)]

    def phi(body):
        return frozenset(_pos(image(e)) for e in body)

    bottom, translated, defaults = [], [], []
    source_of: dict = {}
    for r in rules:
        body = phi(r.body)
        if not r.head:
            bottom.append(Rule(f"c:{r.label}", (), body))
            continue
        if len(r.head) > 1:
            raise ValueError(f"rule {r.label}: expected at most one head literal")
        h = r.head[0]
        if h.naf:
            new = [
                Rule(f"t:{r.label}:1", (_pos(image(h)),), body),
                Rule(f"t:{r.label}:2", (_pos(-image(_pos(h.lit))),), body | {_pos(image(h))}),
            ]
        else:
            new = [
                Rule(f"t:{r.label}:1", (_pos(image(h)),), body),
                Rule(f"t:{r.label}:2", (_pos(-image(_pos(-h.lit))),), body | {_pos(image(h))}),
                Rule(f"t:{r.label}:3", (_pos(-image(_naf(h.lit))),), body | {_pos(image(h))}),
            ]
        for q in new:
            source_of[q.label] = r.label
        translated.extend(new)
    for l in lits:
        bottom.append(Rule(f"cons:{l}", (), frozenset({_pos(image(_pos(l))), _pos(image(_naf(l)))})))
        bottom.append(Rule(f"back:{l}", (_pos(l),), frozenset({_pos(image(_pos(l)))})))
    for a in atoms:
        pair = frozenset({_pos(image(_pos(Literal(a)))), _pos(image(_pos(Literal(a, False))))})
        bottom.append(Rule(f"excl:{a}", (), pair))
    for l in lits:
        defaults.append(Rule(f"n:{l}", (_pos(image(_naf(l))),)))
    prog = Program(tuple(bottom + translated + defaults), ProgramKind.SLP)
    edges = []
    for x in bottom:
        edges += [(x.label, y.label) for y in translated + defaults]
    for x in translated:
        edges += [(x.label, y.label) for y in defaults]
    for x in translated:
        for y in translated:
            if op.order.lt(source_of[x.label], source_of[y.label]):
                edges.append((x.label, y.label))
    return OrderedProgram(prog, validate_order(prog.labels, edges))


# ---------------------------------------------------------------------------
# ordered disjunction


def _is_ordered(r: Rule) -> bool:
    return r.kind is HeadKind.ORDERED and len(r.head) > 1


def nap_atom(index: int) -> str:
    return f"{RESERVED_PREFIX}nap_{index}"


def lpod_translate(p) -> OrderedProgram:
    """Extended ordered program whose proper preferred answer sets are the
    preferred answer sets of an ordered disjunction program."""
    rules = _rules(p)
    _check_source(rules)
    width = max((len(r.head) for r in rules if _is_ordered(r)), default=0)
    base, top = [], []
    levels: list = [[] for _ in range(width)]
    for idx, r in enumerate(rules):
        if not _is_ordered(r):
            base.append(Rule(f"r:{r.label}", r.head, r.body))
            continue
        options = [h.lit for h in r.head]
        nap = Literal(nap_atom(idx))
        for i, a in enumerate(options):
            others = {_naf(b) for b in options if b != a}
            base.append(Rule(f"r:{r.label}:{i + 1}", (_pos(a),), r.body | others))
        for j, e in enumerate(sorted(r.body, key=str)):
            base.append(Rule(f"nap:{r.label}:{j + 1}", (_pos(nap),), {ExtLiteral(e.lit, not e.naf)}))
        top.append(Rule(f"d:{r.label}", (_naf(nap),)))
        for i, a in enumerate(options):
            earlier = {_naf(b) for b in options[:i]}
            top.append(Rule(f"d:{r.label}:{i + 1}", (_naf(a),), r.body | earlier))
            levels[i].append(Rule(f"k{i + 1}:{r.label}", (_pos(a),), r.body | earlier))
    layers = [base] + levels + [top]
    prog = Program(tuple(q for layer in layers for q in layer), ProgramKind.ELP)
    return OrderedProgram(prog, layered_order([[q.label for q in layer] for layer in layers]))


# ---------------------------------------------------------------------------
# consistency-restoring rules


@dataclass(frozen=True)
class CrProgram:
    regular: tuple
    cr: tuple
    cr_pref: StrictOrder = None

    def __post_init__(self):
        object.__setattr__(self, "regular", tuple(self.regular))
        object.__setattr__(self, "cr", tuple(self.cr))
        labels = [r.label for r in self.regular + self.cr]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate rule labels")
        for r in self.cr:
            if not r.head:
                raise ValueError(f"cr rule {r.label} needs a head")
        domain = frozenset(r.label for r in self.cr)
        if self.cr_pref is None:
            object.__setattr__(self, "cr_pref", StrictOrder(domain))
        elif self.cr_pref.domain != domain:
            raise ValueError("the cr preference must range over exactly the cr rules")


def cr_translate(p: CrProgram) -> OrderedProgram:
    """Ordered program for a program with consistency-restoring rules.

    Layers, most preferred first: the regular rules; ``not inconsistent``;
    one ``not h ← inconsistent`` rule per cr rule, ordered opposite to the cr
    preference (applying a preferred cr rule means violating the blocking
    rule of a less preferred one); finally the cr rules themselves, guarded
    by ``inconsistent``, together with the fact ``inconsistent``.
    """
    for r in p.regular + p.cr:
        if any(h.lit.atom == INCONSISTENT for h in r.head):
            raise ValueError(f"rule {r.label}: {INCONSISTENT!r} is reserved")
    _check_source(p.regular + p.cr)
    inc = Literal(INCONSISTENT)
    regular = [Rule(f"reg:{r.label}", r.head, r.body) for r in p.regular]
    keep = Rule("cons", (_naf(inc),))
    block = {r.label: Rule(f"def:{r.label}", (_naf(r.head[0].lit),), {_pos(inc)}) for r in p.cr}
    apply = [Rule(f"cr:{r.label}", r.head, r.body | {_pos(inc)}) for r in p.cr]
    guess = Rule("guess", (_pos(inc),))
    top = apply + [guess]
    prog = Program(tuple(regular + [keep] + list(block.values()) + top), ProgramKind.ELP)
    edges = [(x.label, keep.label) for x in regular]
    edges += [(keep.label, b.label) for b in block.values()]
    edges += [(b.label, t.label) for b in block.values() for t in top]
    edges += [(block[y].label, block[x].label) for x, y in p.cr_pref.pairs]
    return OrderedProgram(prog, validate_order(prog.labels, edges))


# ---------------------------------------------------------------------------
# database repair


@dataclass(frozen=True)
class Database:
    facts: frozenset

    def __post_init__(self):
        facts = Interpretation(self.facts)
        object.__setattr__(self, "facts", frozenset(facts))

    @property
    def atoms(self) -> frozenset:
        return frozenset(l.atom for l in self.facts)


@dataclass(frozen=True)
class ConstraintClause:
    disjuncts: frozenset

    def __post_init__(self):
        object.__setattr__(self, "disjuncts", frozenset(self.disjuncts))
        if not self.disjuncts:
            raise ValueError("a constraint needs at least one disjunct")

    def __str__(self) -> str:
        return " ; ".join(sorted(str(l) for l in self.disjuncts))


@dataclass(frozen=True)
class RepairDelta:
    added: frozenset

    def __le__(self, other: "RepairDelta") -> bool:
        return self.added <= other.added

    def __lt__(self, other: "RepairDelta") -> bool:
        return self.added < other.added

    def apply(self, d: Database) -> Interpretation:
        flipped = {-l for l in self.added}
        return Interpretation((d.facts - flipped) | self.added)


def constraints_consistent(clauses: Iterable[ConstraintClause], limit: int = 20) -> bool:
    clauses = [c.disjuncts for c in clauses]
    atoms = sorted({l.atom for c in clauses for l in c})
    if len(atoms) > limit:
        raise ValueError(f"too many atoms ({len(atoms)}) to check constraint consistency")
    for bits in itertools.product((True, False), repeat=len(atoms)):
        db = {Literal(a, b) for a, b in zip(atoms, bits)}
        if all(c & db for c in clauses):
            return True
    return False


def db_repair_program(d: Database, c: Iterable[ConstraintClause]) -> OrderedProgram:
    """Layers, most preferred first: one rule per way of satisfying each
    constraint, the database facts, and their negations."""
    c = list(c)
    for k, clause in enumerate(c):
        outside = {l.atom for l in clause.disjuncts} - d.atoms
        if outside:
            raise ValueError(f"constraint {k + 1} mentions atoms outside the database: {sorted(outside)}")
    if not constraints_consistent(c):
        raise ValueError("the constraints are inconsistent")
    facts = sorted(d.facts)
    layer_c = []
    for k, clause in enumerate(c):
        for a in sorted(clause.disjuncts):
            body = frozenset(_pos(-b) for b in clause.disjuncts if b != a)
            layer_c.append(Rule(f"c{k + 1}:{a}", (_pos(a),), body))
    layer_d = [Rule(f"d:{a}", (_pos(a),)) for a in facts]
    layer_n = [Rule(f"n:{a}", (_pos(-a),)) for a in facts]
    prog = Program(tuple(layer_c + layer_d + layer_n), ProgramKind.SLP)
    return OrderedProgram(prog, layered_order([[r.label for r in l] for l in (layer_c, layer_d, layer_n)]))


def repairs(d: Database, c: Iterable[ConstraintClause], **solver) -> set:
    from .prefsolve import preferred_interpretations

    op = db_repair_program(d, c)
    return {RepairDelta(frozenset(m) - d.facts) for m in preferred_interpretations(op, **solver)}


def symmetric_delta(d: AbstractSet[Literal], d2: AbstractSet[Literal]) -> frozenset:
    """Atoms whose truth differs, computed from the positive parts."""
    return positive_part(d) ^ positive_part(d2)
