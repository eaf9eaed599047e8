"""Parser and evaluator for the conjunctive triple-pattern query language.

Grammar (smallest language covering the context-definition queries):

    query   := "SELECT" ("*" | var+) "WHERE" pattern+ ["USING" binding ("," binding)*]
    pattern := "(" term "," term "," term ")"
    binding := name "FOR" "<" absolute-iri ">"
    term    := var | "<" (prefixed-name | absolute-iri) ">" | quoted-literal

Keywords are case-insensitive. Angle brackets hold either an absolute IRI
(contains "://") or a prefixed name resolved via the USING clause.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import QuerySyntaxError, UnknownPrefix
from .rdf import Graph, IRI, Literal, Term, term_to_ntriples

STAR = "*"


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class IRIRef:
    raw: str  # prefixed name or absolute IRI

    @property
    def is_absolute(self) -> bool:
        return "://" in self.raw


@dataclass(frozen=True)
class LiteralTerm:
    text: str


PatternTerm = Variable | IRIRef | LiteralTerm


@dataclass(frozen=True)
class TriplePattern:
    s: PatternTerm
    p: PatternTerm
    o: PatternTerm

    def terms(self) -> tuple[PatternTerm, PatternTerm, PatternTerm]:
        return (self.s, self.p, self.o)


@dataclass
class Query:
    select: str | list[str]  # STAR or ordered variable names
    patterns: list[TriplePattern]
    prefixes: list[tuple[str, str]] = field(default_factory=list)

    def variables(self) -> list[str]:
        """All variable names in first-occurrence order across patterns."""
        seen: list[str] = []
        for pattern in self.patterns:
            for term in pattern.terms():
                if isinstance(term, Variable) and term.name not in seen:
                    seen.append(term.name)
        return seen


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<var>\?[A-Za-z_][\w-]*)
  | (?P<iri><[^<>]*>)
  | (?P<lit>"(?:[^"\\]|\\.)*")
  | (?P<punct>[(),*])
  | (?P<word>[A-Za-z_][\w-]*)
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise QuerySyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self):
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def next(self):
        token = self.peek()
        if token is None:
            raise QuerySyntaxError("unexpected end of query", len(self.text))
        self.index += 1
        return token

    def expect_keyword(self, keyword: str):
        token = self.peek()
        if token is None or token[0] != "word" or token[1].upper() != keyword:
            pos = token[2] if token else len(self.text)
            raise QuerySyntaxError(f"expected {keyword}", pos)
        self.index += 1

    def at_keyword(self, keyword: str) -> bool:
        token = self.peek()
        return token is not None and token[0] == "word" and token[1].upper() == keyword

    def parse(self) -> Query:
        self.expect_keyword("SELECT")
        token = self.peek()
        if token is None:
            raise QuerySyntaxError("expected * or variables after SELECT", len(self.text))
        if token[1] == STAR:
            select: str | list[str] = STAR
            self.index += 1
        else:
            names = []
            while (t := self.peek()) is not None and t[0] == "var":
                names.append(t[1][1:])
                self.index += 1
            if not names:
                raise QuerySyntaxError("expected * or variables after SELECT", token[2])
            select = names
        self.expect_keyword("WHERE")
        patterns = []
        while (t := self.peek()) is not None and t[1] == "(":
            patterns.append(self.parse_pattern())
        if not patterns:
            pos = self.peek()[2] if self.peek() else len(self.text)
            raise QuerySyntaxError("expected at least one triple pattern", pos)
        prefixes = []
        if self.at_keyword("USING"):
            self.index += 1
            prefixes.append(self.parse_binding())
            while (t := self.peek()) is not None and t[1] == ",":
                self.index += 1
                prefixes.append(self.parse_binding())
        if (t := self.peek()) is not None:
            raise QuerySyntaxError(f"unexpected trailing token {t[1]!r}", t[2])
        names = [n for n, _ in prefixes]
        if len(names) != len(set(names)):
            raise QuerySyntaxError("duplicate prefix name in USING clause", len(self.text))
        if select != STAR:
            pattern_vars = set(Query(STAR, patterns).variables())
            for name in select:
                if name not in pattern_vars:
                    raise QuerySyntaxError(
                        f"selected variable ?{name} does not occur in any pattern",
                        len(self.text),
                    )
        return Query(select=select, patterns=patterns, prefixes=prefixes)

    def parse_pattern(self) -> TriplePattern:
        self.punct("(")
        s = self.parse_term()
        self.punct(",")
        p = self.parse_term()
        self.punct(",")
        o = self.parse_term()
        self.punct(")")
        return TriplePattern(s, p, o)

    def punct(self, symbol: str):
        token = self.peek()
        if token is None or token[1] != symbol:
            pos = token[2] if token else len(self.text)
            raise QuerySyntaxError(f"expected {symbol!r}", pos)
        self.index += 1

    def parse_term(self) -> PatternTerm:
        kind, value, pos = self.next()
        if kind == "var":
            return Variable(value[1:])
        if kind == "iri":
            inner = value[1:-1].strip()
            if not inner:
                raise QuerySyntaxError("empty IRI", pos)
            return IRIRef(inner)
        if kind == "lit":
            body = value[1:-1]
            return LiteralTerm(body.replace('\\"', '"').replace("\\\\", "\\"))
        raise QuerySyntaxError(f"expected term, got {value!r}", pos)

    def parse_binding(self) -> tuple[str, str]:
        kind, name, pos = self.next()
        if kind != "word":
            raise QuerySyntaxError("expected prefix name", pos)
        self.expect_keyword("FOR")
        kind, value, pos = self.next()
        if kind != "iri":
            raise QuerySyntaxError("expected <iri> after FOR", pos)
        iri = value[1:-1]
        if "://" not in iri:
            raise QuerySyntaxError(f"prefix binding must be an absolute IRI: {iri!r}", pos)
        return (name, iri)


def parse(text: str) -> Query:
    return _Parser(text).parse()


def expand(query: Query) -> Query:
    """Resolve every prefixed name against the query's own USING table."""
    table = dict(query.prefixes)

    def expand_term(term: PatternTerm) -> PatternTerm:
        if isinstance(term, IRIRef) and not term.is_absolute:
            prefix, sep, local = term.raw.partition(":")
            if not sep or prefix not in table:
                raise UnknownPrefix(prefix if sep else term.raw)
            return IRIRef(table[prefix] + local)
        return term

    patterns = [
        TriplePattern(*(expand_term(t) for t in p.terms())) for p in query.patterns
    ]
    return Query(select=query.select, patterns=patterns, prefixes=list(query.prefixes))


def print_query(query: Query) -> str:
    """Canonical text form; parse(print_query(q)) == q."""

    def term_text(term: PatternTerm) -> str:
        if isinstance(term, Variable):
            return f"?{term.name}"
        if isinstance(term, IRIRef):
            return f"<{term.raw}>"
        escaped = term.text.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'

    select = STAR if query.select == STAR else " ".join(f"?{n}" for n in query.select)
    patterns = " ".join(
        "(" + ", ".join(term_text(t) for t in p.terms()) + ")" for p in query.patterns
    )
    text = f"SELECT {select} WHERE {patterns}"
    if query.prefixes:
        bindings = ", ".join(f"{name} FOR <{iri}>" for name, iri in query.prefixes)
        text += f" USING {bindings}"
    return text


@dataclass
class BindingTable:
    columns: list[str]
    rows: list[tuple[Term, ...]]

    def to_tsv(self) -> str:
        lines = ["\t".join(f"?{c}" for c in self.columns)]
        for row in self.rows:
            lines.append("\t".join(term_to_ntriples(t) for t in row))
        return "\n".join(lines) + "\n"


def _constant(term: PatternTerm) -> Term:
    if isinstance(term, IRIRef):
        return IRI(term.raw)
    assert isinstance(term, LiteralTerm)
    return Literal(term.text)


def evaluate(query: Query, graph: Graph) -> BindingTable:
    """Join the patterns left to right with binding propagation.

    Result is the set of assignments under which every pattern is a graph
    triple; rows are duplicate-free and sorted by serialized terms.
    """
    solutions: list[dict[str, Term]] = [{}]
    for pattern in query.patterns:
        next_solutions = []
        for binding in solutions:
            parts = []
            for term in pattern.terms():
                if isinstance(term, Variable):
                    parts.append(binding.get(term.name))
                else:
                    parts.append(_constant(term))
            s, p, o = parts
            # constants in subject/predicate slots must be IRIs to match anything
            if s is not None and not isinstance(s, IRI):
                continue
            if p is not None and not isinstance(p, IRI):
                continue
            for triple in graph.match(s, p, o):
                extended = dict(binding)
                ok = True
                for term, value in zip(pattern.terms(), (triple.s, triple.p, triple.o)):
                    if isinstance(term, Variable):
                        bound = extended.get(term.name)
                        if bound is None:
                            extended[term.name] = value
                        elif bound != value:
                            ok = False
                            break
                if ok:
                    next_solutions.append(extended)
        solutions = next_solutions
    columns = query.variables() if query.select == STAR else list(query.select)
    rows = {tuple(solution[c] for c in columns) for solution in solutions}
    ordered = sorted(rows, key=lambda row: [term_to_ntriples(t) for t in row])
    return BindingTable(columns=columns, rows=ordered)


def parse_and_expand(text: str) -> Query:
    return expand(parse(text))
