"""Concrete syntax: module/order documents and the database repair format.

A document is a sequence of modules and order assertions::

    FaultModel { -power. -bulb. }
    NormalOperation { power. bulb. }
    System { light :- power, bulb. }
    System < NormalOperation < FaultModel

Rules are ``head :- body.``, ``head.`` or ``:- body.``.  Literals are atoms
(``[A-Za-z_][A-Za-z0-9_']*``), optionally preceded by ``-`` for classical
negation; ``not`` marks negation as failure.  Depending on the dialect a head
may be ``not l`` (olp), an ordered disjunction ``a * b * c`` (lpod), or a rule
may use ``+-`` instead of ``:-`` to mark a consistency-restoring rule (cr).
Rule ``k`` (counting from 1) of module ``M`` is labelled ``M.k``; an order
assertion may mention single rules that way (``A.3 < B.1``).  ``%`` starts a
comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .core import ExtLiteral, HeadKind, Literal, Rule

DIALECTS = ("olp", "lpod", "cr", "repair")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        self.message, self.line, self.column = message, line, column
        super().__init__(f"{line}:{column}: {message}")


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+) | (?P<comment>%[^\n]*)
  | (?P<if>:-) | (?P<cr>\+-)
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*) | (?P<int>[0-9]+)
  | (?P<sym>[{}.,<*|-])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            value = m.group()
            tokens.append(Token(value if kind == "sym" else kind, value, line, pos - line_start + 1))
        newlines = m.group().count("\n")
        if newlines:
            line += newlines
            line_start = m.start() + m.group().rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


@dataclass(frozen=True)
class Module:
    name: str
    rules: tuple = ()


@dataclass(frozen=True)
class SourceDocument:
    modules: tuple = ()
    order_assertions: tuple = ()  # chains of references: "Module" or "Module.k"
    dialect: str = "olp"

    def module(self, name: str) -> Module:
        for m in self.modules:
            if m.name == name:
                return m
        raise KeyError(name)

    @property
    def rules(self) -> tuple:
        return tuple(r for m in self.modules for r in m.rules)


class _Parser:
    def __init__(self, text: str, dialect: str):
        if dialect not in ("olp", "lpod", "cr"):
            raise ValueError(f"unknown rule dialect {dialect!r}")
        self.tokens = tokenize(text)
        self.k = 0
        self.dialect = dialect

    @property
    def tok(self) -> Token:
        return self.tokens[self.k]

    def fail(self, expected: str):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(f"expected {expected}, found {found}", t.line, t.column)

    def take(self, kind: str, expected: str | None = None) -> Token:
        if self.tok.kind != kind:
            self.fail(expected or repr(kind))
        t = self.tok
        self.k += 1
        return t

    def accept(self, kind: str) -> bool:
        if self.tok.kind == kind:
            self.k += 1
            return True
        return False

    def document(self) -> SourceDocument:
        modules, chains, names = [], [], set()
        while self.tok.kind != "eof":
            start = self.tok
            name = self.take("name", "a module name").text
            if self.tok.kind == "{":
                if name in names:
                    raise ParseError(f"module {name!r} is defined twice", start.line, start.column)
                names.add(name)
                modules.append(self.module(name))
            else:
                chain = [self.reference(name)]
                while self.accept("<"):
                    chain.append(self.reference(self.take("name", "a module name").text))
                if len(chain) < 2:
                    self.fail("'{' or '<'")
                chains.append(tuple(chain))
        return SourceDocument(tuple(modules), tuple(chains), self.dialect)

    def reference(self, name: str) -> str:
        if self.tok.kind == "." and self.tokens[self.k + 1].kind == "int":
            self.k += 1
            return f"{name}.{self.take('int').text}"
        return name

    def module(self, name: str) -> Module:
        self.take("{")
        rules = []
        while not self.accept("}"):
            if self.tok.kind == "eof":
                self.fail("'}'")
            rules.append(self.rule(f"{name}.{len(rules) + 1}"))
        return Module(name, tuple(rules))

    def literal(self) -> Literal:
        positive = not self.accept("-")
        t = self.take("name", "an atom")
        if t.text == "not":
            raise ParseError("'not' cannot be used as an atom", t.line, t.column)
        return Literal(t.text, positive)

    def ext_literal(self) -> ExtLiteral:
        if self.tok.kind == "name" and self.tok.text == "not":
            self.k += 1
            return ExtLiteral(self.literal(), True)
        return ExtLiteral(self.literal())

    def rule(self, label: str) -> Rule:
        start = self.tok
        head, kind = [], HeadKind.PLAIN
        if self.tok.kind not in ("if", "cr"):
            head.append(self.ext_literal())
            while self.tok.kind in ("*", "|"):
                sep = self.tok
                if sep.kind == "|" or self.dialect != "lpod":
                    raise ParseError(f"{sep.text!r} heads are not part of the {self.dialect} dialect", sep.line, sep.column)
                self.k += 1
                kind = HeadKind.ORDERED
                head.append(self.ext_literal())
        if any(h.naf for h in head) and (self.dialect != "olp" or len(head) > 1):
            raise ParseError(f"'not' in a head is not allowed in the {self.dialect} dialect", start.line, start.column)
        body = []
        if self.tok.kind == "cr":
            arrow = self.tok
            if self.dialect != "cr":
                raise ParseError("'+-' rules need the cr dialect", arrow.line, arrow.column)
            if kind is not HeadKind.PLAIN or len(head) != 1:
                raise ParseError("a '+-' rule needs exactly one head literal", arrow.line, arrow.column)
            kind = HeadKind.CR
            self.k += 1
            if self.tok.kind != ".":
                body = self.body()
        elif self.accept("if"):
            if self.tok.kind != "." or head:
                body = self.body()
        elif not head:
            self.fail("a rule")
        self.take(".", "'.'")
        try:
            return Rule(label, tuple(head), frozenset(body), kind)
        except ValueError as err:
            raise ParseError(str(err), start.line, start.column) from None

    def body(self) -> list:
        items = [self.ext_literal()]
        while self.accept(","):
            items.append(self.ext_literal())
        return items


def parse(text: str, dialect: str = "olp") -> SourceDocument:
    p = _Parser(text, dialect)
    doc = p.document()
    declared = {m.name: len(m.rules) for m in doc.modules}
    for chain in doc.order_assertions:
        for ref in chain:
            name, _, index = ref.partition(".")
            if name not in declared:
                raise ParseError(f"order assertion mentions undeclared module {name!r}", 0, 0)
            if index and not 1 <= int(index) <= declared[name]:
                raise ParseError(f"module {name!r} has no rule {index}", 0, 0)
    if dialect == "lpod" and doc.order_assertions:
        raise ParseError("order assertions are not used by the lpod dialect", 0, 0)
    return doc


def format_rule(r: Rule) -> str:
    return str(r)


def print_document(doc: SourceDocument) -> str:
    out = []
    for m in doc.modules:
        if not m.rules:
            out.append(f"{m.name} {{ }}")
            continue
        out.append(f"{m.name} {{")
        out.extend(f"  {format_rule(r)}" for r in m.rules)
        out.append("}")
    for chain in doc.order_assertions:
        out.append(" < ".join(chain))
    return "\n".join(out) + ("\n" if out else "")


# ---------------------------------------------------------------------------
# repair inputs


def _literal_text(text: str, line: int) -> Literal:
    text = text.strip()
    m = re.fullmatch(r"(-?)\s*([A-Za-z_][A-Za-z0-9_']*)", text)
    if not m:
        raise ParseError(f"expected a literal, found {text!r}", line, 1)
    return Literal(m.group(2), not m.group(1))


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("%", 1)[0].strip()
        if line:
            yield number, line


def parse_database(text: str) -> frozenset:
    """One literal per line."""
    facts = set()
    for number, line in _lines(text):
        l = _literal_text(line.rstrip("."), number)
        if -l in facts:
            raise ParseError(f"database contains both {l} and {-l}", number, 1)
        facts.add(l)
    return frozenset(facts)


def parse_constraints(text: str) -> tuple:
    """One constraint per line, disjuncts separated by ``;``."""
    out = []
    for number, line in _lines(text):
        parts = [p for p in line.rstrip(".").split(";")]
        out.append(frozenset(_literal_text(p, number) for p in parts))
    return tuple(out)


def print_database(facts) -> str:
    return "".join(f"{l}\n" for l in sorted(facts))


def print_constraints(clauses) -> str:
    return "".join(" ; ".join(str(l) for l in sorted(c)) + "\n" for c in clauses)
