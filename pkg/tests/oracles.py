"""Independent oracles used by tests: brute-force query evaluation and
path enumeration over the structure graph. Kept free of the code paths
they check."""

import itertools

from hylos.rdf import Graph, IRI, Literal, Triple, term_to_ntriples
from hylos.rdql import IRIRef, LiteralTerm, Query, STAR, Variable


def brute_force_evaluate(query: Query, graph: Graph) -> set[tuple]:
    """Enumerate every assignment of variables to graph terms and keep
    those under which all patterns are triples of the graph."""
    variables = query.variables()
    terms = sorted(graph.terms(), key=term_to_ntriples)
    triples = graph.triples()
    columns = variables if query.select == STAR else list(query.select)
    results = set()
    for assignment in itertools.product(terms, repeat=len(variables)):
        env = dict(zip(variables, assignment))

        def value(term):
            if isinstance(term, Variable):
                return env[term.name]
            if isinstance(term, IRIRef):
                return IRI(term.raw)
            assert isinstance(term, LiteralTerm)
            return Literal(term.text)

        ok = True
        for pattern in query.patterns:
            s, p, o = (value(t) for t in pattern.terms())
            if not isinstance(s, IRI) or not isinstance(p, IRI) or Triple(s, p, o) not in triples:
                ok = False
                break
        if ok:
            results.add(tuple(env[c] for c in columns))
    return results


def count_root_paths(children: dict[str, list[str]], root: str, target: str) -> int:
    """Number of distinct paths from root to target in the child relation."""
    if root == target:
        return 1
    return sum(count_root_paths(children, kid, target) for kid in children.get(root, []))
