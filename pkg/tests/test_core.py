import pytest

from orderedlp.core import (
    CycleDetected,
    ExtLiteral,
    HeadKind,
    Interpretation,
    Literal,
    Program,
    ProgramKind,
    Rule,
    StrictOrder,
    applied,
    defeated,
    down_closure,
    ext,
    herbrand_base,
    layered_order,
    lit,
    reduct,
    rule,
    satisfies,
    star_closure,
    validate_order,
)
from gen import random_olp, random_order, seeds
from programs import defeat_program, defeat_rules, interp, naf_defeat_rules


def test_literals():
    a = lit("a")
    assert -a == lit("-a") and -(-a) == a
    assert str(lit("-a")) == "-a"
    assert ext("not -b") == ExtLiteral(Literal("b", False), True)
    with pytest.raises(ValueError):
        Interpretation([lit("a"), lit("-a")])


def test_rule_shapes():
    assert rule("c", None, ["a"]).is_constraint
    assert str(rule("r", "a", ["-b", "not c"])) in ("a :- -b, not c.", "a :- not c, -b.")
    assert str(rule("f", "a")) == "a."
    assert str(rule("c", None, [])) == ":-."
    with pytest.raises(ValueError):
        Program((rule("r", "a"), rule("r", "b")), ProgramKind.SLP)
    with pytest.raises(ValueError):
        Program((rule("r", "a", ["not b"]),), ProgramKind.SLP)
    with pytest.raises(ValueError):
        Program((rule("r", ["a", "b"], kind=HeadKind.DISJUNCTIVE),), ProgramKind.ELP)


def test_herbrand_base():
    assert herbrand_base(defeat_program()) == {"a", "b"}
    assert herbrand_base([]) == frozenset()
    assert herbrand_base([rule("c", None, ["a", "not b"])]) == {"a", "b"}


def test_star_closure():
    s = star_closure(defeat_rules())
    assert s.literals == {lit("-a"), lit("-b"), lit("a"), lit("b")} and not s.bottom
    assert star_closure([]).literals == frozenset() and not star_closure([]).bottom
    assert star_closure([rule("f", "a"), rule("c", None, ["a"])]).bottom
    with pytest.raises(ValueError):
        star_closure([rule("r", "a", ["not b"])])


def test_star_closure_is_monotone():
    for rng in seeds(100, 1):
        rules = list(random_olp(rng).rules)
        rules = [r for r in rules if not r.has_naf]
        sub = [r for r in rules if rng.random() < 0.5]
        assert star_closure(sub).literals <= star_closure(rules).literals


def test_satisfaction_and_application():
    i = interp("-a", "b")
    r1, r2, r3, r4 = defeat_rules()
    assert not satisfies(i, r2)
    assert satisfies(i, r3) and not applied(i, r3)
    assert applied(i, r4) and applied(i, r1)
    assert satisfies(Interpretation(), rule("c", None, ["a"]))
    assert not applied(Interpretation(), rule("c", None, []))
    assert applied(interp("a"), rule("f", "a"))


def test_defeat():
    p = defeat_program()
    assert defeated(p.rules[1], interp("-a", "b"), p)
    ex4 = Program((rule("r1", "-a"), rule("r2", "b"), rule("r3", "-b", ["-a"])), ProgramKind.SLP)
    assert not defeated(ex4.rules[0], interp("b"), ex4)
    ex0b = Program(tuple(naf_defeat_rules()), ProgramKind.ELP)
    c_fact = ex0b.by_label["r6"]
    assert defeated(c_fact, interp("a", "-b"), ex0b)


def test_naf_heads_never_compete_with_each_other():
    p = Program((rule("r1", "not a", ["b"]), rule("r2", "not a"), rule("r3", "b")), ProgramKind.ELP)
    assert not defeated(p.rules[0], interp("a", "b"), p)


def test_reduct():
    p = defeat_program()
    assert reduct(p, interp("-a", "b")) == {"r1", "r3", "r4"}
    assert reduct(Program((), ProgramKind.SLP), Interpretation()) == frozenset()


def test_validate_order():
    o = validate_order(["x", "y", "z"], [("x", "y"), ("y", "z")])
    assert o.lt("x", "z") and not o.lt("z", "x")
    assert validate_order(["x"], []).pairs == frozenset()
    with pytest.raises(CycleDetected):
        validate_order(["x", "y"], [("x", "y"), ("y", "x")])
    with pytest.raises(ValueError):
        validate_order(["x"], [("x", "w")])


def test_layered_order_counts_edges():
    o = layered_order([["s1"], ["n1", "n2"], ["f1", "f2"]])
    assert len(o.pairs) == 1 * 2 + 1 * 2 + 2 * 2
    assert o.minimal() == {"s1"}


def test_down_closure():
    o = layered_order([["a"], ["b"], ["c"]])
    assert down_closure({"c"}, o) == {"a", "b"}
    assert down_closure(set(), o) == frozenset()
    for rng in seeds(50, 2):
        labels = [f"r{k}" for k in range(rng.randint(1, 10))]
        o = random_order(rng, labels)
        x = {l for l in labels if rng.random() < 0.4}
        closed = down_closure(x, o) | x
        assert down_closure(closed, o) <= closed


def test_order_is_strict_and_transitive():
    for rng in seeds(50, 3):
        labels = [f"r{k}" for k in range(rng.randint(1, 9))]
        o = random_order(rng, labels)
        assert isinstance(o, StrictOrder)
        for x, y in o.pairs:
            assert (y, x) not in o.pairs and x != y
            assert all((x, z) in o.pairs for z in o.above[y])


def test_indexed_program_agrees_with_set_judgments():
    for rng in seeds(60, 4):
        op = random_olp(rng, naf=0.3, naf_head=0.2)
        ip = op.program.indexed
        atoms = sorted(herbrand_base(op.program))
        m = Interpretation(Literal(a, rng.random() < 0.5) for a in atoms if rng.random() < 0.7)
        mask = ip.mask(m)
        assert ip.literals(mask) == m
        assert ip.rule_labels(ip.reduct(mask)) == reduct(op.program, m)
        for k, r in enumerate(op.rules):
            if r.head:
                assert bool(ip.defeated(k, mask)) == defeated(r, m, op.program)


def test_rule_is_hashable_value():
    a = Rule("r", (ext("a"),), frozenset([ext("-b")]))
    b = rule("r", "a", ["-b"])
    assert a == b and hash(a) == hash(b)
