import itertools

import pytest

from orderedlp.core import HeadKind, Interpretation, Literal, Program, ProgramKind, herbrand_base, lit, ordered, rule
from orderedlp.oracle import brute_force_preferred, brute_force_repairs, lpod_preferred, stable_models
from orderedlp.prefsolve import preferred_interpretations
from orderedlp.semantics import enumerate_answer_sets, enumerate_extended_answer_sets
from orderedlp.transforms import (
    INCONSISTENT,
    ConstraintClause,
    Database,
    RepairDelta,
    completion,
    cr_translate,
    db_repair_program,
    decode,
    disj_naf_sim,
    disj_sim,
    elp_remove_naf_heads,
    eolp_to_olp,
    fresh,
    lpod_translate,
    naf_sim,
    positive_part,
    project,
    repairs,
    slp_to_elp,
    symmetric_delta,
)
from gen import random_seminegative, seeds
from programs import (
    cr_program,
    defeat_program,
    interp,
    lpod_guarded,
    lpod_options,
    naf_defeat_ordered,
    naf_defeat_rules,
    or_loop,
    or_naf,
    repair_cycle,
    repair_keep,
)


def test_fresh_names_round_trip():
    for l in [lit("a"), lit("-b_c")]:
        for tag in "hld":
            assert decode(fresh(tag, l)) == (tag, l)
    assert decode("a") is None


def test_reserved_namespace_is_rejected():
    with pytest.raises(ValueError):
        elp_remove_naf_heads(Program((rule("r", "_x"),), ProgramKind.SLP))


def test_slp_to_elp():
    p = defeat_program()
    e = slp_to_elp(p)
    assert all(len([b for b in r.body if b.naf]) == 1 for r in e.rules)
    assert enumerate_answer_sets(e) == enumerate_extended_answer_sets(p)
    c = rule("c", None, ["a"])
    assert slp_to_elp([c]).rules == (c,)
    single = slp_to_elp([rule("f", "a")])
    assert str(single.rules[0]) == "a :- not -a."
    assert enumerate_answer_sets(single) == {interp("a")}


def test_remove_naf_heads():
    p = Program((rule("r1", "a"), rule("r2", "not a")), ProgramKind.ELP)
    e = elp_remove_naf_heads(p)
    answers = enumerate_answer_sets(e)
    assert len(answers) == 2
    assert {project(m, {"a"}) for m in answers} == {interp("a"), interp()}
    ex0b = Program(tuple(naf_defeat_rules()), ProgramKind.ELP)
    got = {project(m, herbrand_base(ex0b)) for m in enumerate_answer_sets(elp_remove_naf_heads(ex0b))}
    assert got == enumerate_extended_answer_sets(ex0b)


def test_naf_sim():
    p = Program((rule("r1", "a", ["not b"]), rule("r2", "b", ["not a"])), ProgramKind.ELP)
    op = naf_sim(p)
    assert preferred_interpretations(op, proper=True) == {interp("a", "-b"), interp("-a", "b")}
    f = naf_sim([rule("f", "a"), rule("g", "b", ["c"])])
    assert preferred_interpretations(f, proper=True) == {interp("a", "-b", "-c")}


def test_naf_sim_random():
    for rng in seeds(40, 30):
        p = random_seminegative(rng)
        atoms = sorted(herbrand_base(p))
        expected = {completion(m, atoms) for m in stable_models(p)}
        assert preferred_interpretations(naf_sim(p), proper=True) == expected


def test_disj_sim():
    assert {positive_part(m) for m in preferred_interpretations(disj_sim(or_loop()), proper=True)} == {frozenset("ab")}
    single = Program((rule("r", ["a", "b"], kind=HeadKind.DISJUNCTIVE),), ProgramKind.DLP)
    got = {positive_part(m) for m in preferred_interpretations(disj_sim(single), proper=True)}
    assert got == {frozenset("a"), frozenset("b")}


def test_disj_naf_sim():
    got = preferred_interpretations(disj_naf_sim(or_naf()), proper=True)
    assert {positive_part(m) for m in got} == {frozenset("ab")}


def test_eolp_to_olp():
    ns = eolp_to_olp(naf_defeat_ordered())
    got = {project(m, {"a", "b", "c"}) for m in preferred_interpretations(ns, proper=True)}
    assert got == {interp("-a", "b", "c"), interp("a", "-b", "c")}
    assert preferred_interpretations(eolp_to_olp(ordered([rule("r", "a", ["not a"])])), proper=True) == set()


def test_lpod_translate():
    got = {project(m, {"a", "b", "c", "d"}) for m in preferred_interpretations(lpod_translate(lpod_options()), proper=True)}
    assert got == {interp("a", "b", "-c"), interp("c")} == lpod_preferred(lpod_options())
    got = {project(m, {"a", "b", "c", "d"}) for m in preferred_interpretations(lpod_translate(lpod_guarded()), proper=True)}
    assert got == {interp("a", "c"), interp("b")}


def test_lpod_single_option_rules_are_plain():
    p = Program((rule("r", "a", ["not b"]), rule("s", "b", ["not a"])), ProgramKind.LPOD)
    op = lpod_translate(p)
    assert len(op.rules) == 2
    got = {project(m, {"a", "b"}) for m in preferred_interpretations(op, proper=True)}
    assert got == enumerate_answer_sets(Program(p.rules, ProgramKind.ELP))


def test_cr_translate():
    assert preferred_interpretations(cr_translate(cr_program())) == {interp("q", "s", INCONSISTENT)}
    assert preferred_interpretations(cr_translate(cr_program(with_constraint=False))) == {interp("s")}
    op = cr_translate(cr_program())
    assert preferred_interpretations(op) == brute_force_preferred(op)


def test_repair_program_shape():
    d, c = repair_cycle()
    op = db_repair_program(d, c)
    assert len(op.rules) == 3 + 3 + 12
    assert preferred_interpretations(op, proper=True) == {interp("-p", "-q", "-r")}
    assert repairs(d, c) == {RepairDelta(frozenset(interp("-p", "-q", "-r")))}


def test_repairs_without_constraints_keep_the_database():
    d = Database(frozenset(map(lit, ["a", "-b"])))
    assert repairs(d, []) == {RepairDelta(frozenset())}
    d, c = repair_keep()
    assert preferred_interpretations(db_repair_program(d, c), proper=True) == {Interpretation(d.facts)}


def test_repair_input_checks():
    d = Database(frozenset(map(lit, ["a"])))
    with pytest.raises(ValueError):
        db_repair_program(d, [ConstraintClause(frozenset([lit("z")]))])
    with pytest.raises(ValueError):
        db_repair_program(d, [ConstraintClause(frozenset([lit("a")])), ConstraintClause(frozenset([lit("-a")]))])


def test_repairs_match_exhaustive_search():
    for rng in seeds(30, 31):
        atoms = [f"a{k}" for k in range(rng.randint(1, 4))]
        d = Database(frozenset(Literal(a, rng.random() < 0.5) for a in atoms))
        c = []
        for _ in range(rng.randint(0, 4)):
            size = rng.randint(1, min(3, len(atoms)))
            c.append(ConstraintClause(frozenset(Literal(a, rng.random() < 0.5) for a in rng.sample(atoms, size))))
        try:
            got = repairs(d, c)
        except ValueError:
            continue
        assert {x.added for x in got} == brute_force_repairs(d.facts, [x.disjuncts for x in c])


def test_delta_orders_agree():
    for rng in seeds(100, 32):
        atoms = [f"a{k}" for k in range(rng.randint(1, 5))]
        d, d1, d2 = (frozenset(Literal(a, rng.random() < 0.5) for a in atoms) for _ in range(3))
        assert ((d1 - d) <= (d2 - d)) == (symmetric_delta(d, d1) <= symmetric_delta(d, d2))


def test_delta_apply():
    d = Database(frozenset(map(lit, ["p", "q"])))
    assert RepairDelta(frozenset([lit("-p")])).apply(d) == interp("-p", "q")
    a, b = RepairDelta(frozenset([lit("-p")])), RepairDelta(frozenset(map(lit, ["-p", "-q"])))
    assert a <= b and a < b and not b <= a


def test_completion_and_projection():
    assert completion({"a"}, ["a", "b"]) == interp("a", "-b")
    assert project(interp("a", "-b", "_x"), {"a"}) == interp("a")
    assert positive_part(interp("a", "-b")) == {"a"}
    assert list(itertools.islice(iter(completion(set(), [])), 1)) == []
