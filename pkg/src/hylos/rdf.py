"""RDF statement graph over ELOs, anchors and links.

Metadata fields become plain (subject, predicate, object) statements;
anchors inherit the statements of their resource and add dedicated ones;
every hyperlink becomes a reified statement node carrying rdf:subject /
rdf:predicate / rdf:object, so that statements about the link itself are
expressible. The orientation puts the arc's *target* anchor in rdf:subject
and the *source* anchor in rdf:object.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .elo import Elo
from .linkbase import Link, LinkBase
from .store import Repository

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
DC_NS = "http://purl.org/dc/elements/1.1/"
MIR_NS = "http://www.rz.fhtw-berlin.de/MIR#"

RDF_TYPE = RDF_NS + "type"
RDF_STATEMENT = RDF_NS + "Statement"
RDF_SUBJECT = RDF_NS + "subject"
RDF_PREDICATE = RDF_NS + "predicate"
RDF_OBJECT = RDF_NS + "object"


@dataclass(frozen=True)
class IRI:
    value: str

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Literal:
    text: str
    lang: str | None = None

    def __str__(self) -> str:
        return self.text


Term = IRI | Literal


@dataclass(frozen=True)
class Triple:
    s: IRI
    p: IRI
    o: Term


def _escape(text: str) -> str:
    return (
        text.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\r", "\\r")
        .replace("\t", "\\t")
    )


def _unescape(text: str) -> str:
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\\" and i + 1 < len(text):
            nxt = text[i + 1]
            out.append({"n": "\n", "r": "\r", "t": "\t", '"': '"', "\\": "\\"}.get(nxt, nxt))
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def term_to_ntriples(term: Term) -> str:
    if isinstance(term, IRI):
        return f"<{term.value}>"
    lang = f"@{term.lang}" if term.lang else ""
    return f'"{_escape(term.text)}"{lang}'


def triple_to_ntriples(t: Triple) -> str:
    return f"{term_to_ntriples(t.s)} {term_to_ntriples(t.p)} {term_to_ntriples(t.o)} ."


def triple_sort_key(t: Triple) -> tuple[str, str, str]:
    return (term_to_ntriples(t.s), term_to_ntriples(t.p), term_to_ntriples(t.o))


class Graph:
    """Immutable set of triples with subject/predicate/object indexes."""

    def __init__(self, triples=()):
        self._triples = frozenset(triples)
        self._by_s: dict[IRI, set[Triple]] = {}
        self._by_p: dict[IRI, set[Triple]] = {}
        self._by_o: dict[Term, set[Triple]] = {}
        for t in self._triples:
            self._by_s.setdefault(t.s, set()).add(t)
            self._by_p.setdefault(t.p, set()).add(t)
            self._by_o.setdefault(t.o, set()).add(t)

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self):
        return iter(self._triples)

    def __contains__(self, t: Triple) -> bool:
        return t in self._triples

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._triples == other._triples

    def __hash__(self) -> int:
        return hash(self._triples)

    def triples(self) -> frozenset[Triple]:
        return self._triples

    def terms(self) -> set[Term]:
        out: set[Term] = set()
        for t in self._triples:
            out.update((t.s, t.p, t.o))
        return out

    def match(self, s: IRI | None = None, p: IRI | None = None, o: Term | None = None) -> list[Triple]:
        """Triples agreeing with every bound component, in sorted order."""
        candidate_sets = []
        if s is not None:
            candidate_sets.append(self._by_s.get(s, set()))
        if p is not None:
            candidate_sets.append(self._by_p.get(p, set()))
        if o is not None:
            candidate_sets.append(self._by_o.get(o, set()))
        if candidate_sets:
            found = set.intersection(*candidate_sets)
        else:
            found = set(self._triples)
        return sorted(found, key=triple_sort_key)

    def to_ntriples(self) -> str:
        lines = [triple_to_ntriples(t) for t in sorted(self._triples, key=triple_sort_key)]
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_ntriples(cls, text: str) -> "Graph":
        triples = []
        # split on \n only: exotic control characters inside literals must
        # not be treated as line breaks
        for lineno, line in enumerate(text.split("\n"), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            triples.append(parse_ntriples_line(line, lineno))
        return cls(triples)


def parse_ntriples_line(line: str, lineno: int = 0) -> Triple:
    terms, pos = [], 0
    while len(terms) < 3:
        while pos < len(line) and line[pos].isspace():
            pos += 1
        if pos >= len(line):
            raise ValueError(f"line {lineno}: truncated triple")
        if line[pos] == "<":
            end = line.index(">", pos)
            terms.append(IRI(line[pos + 1 : end]))
            pos = end + 1
        elif line[pos] == '"':
            end = pos + 1
            while end < len(line):
                if line[end] == '"' and line[end - 1] != "\\":
                    break
                end += 1
            text = _unescape(line[pos + 1 : end])
            pos = end + 1
            lang = None
            if pos < len(line) and line[pos] == "@":
                lang_end = pos + 1
                while lang_end < len(line) and not line[lang_end].isspace():
                    lang_end += 1
                lang = line[pos + 1 : lang_end]
                pos = lang_end
            terms.append(Literal(text, lang))
        else:
            raise ValueError(f"line {lineno}: unexpected character {line[pos]!r}")
    s, p, o = terms
    if not isinstance(s, IRI) or not isinstance(p, IRI):
        raise ValueError(f"line {lineno}: subject and predicate must be IRIs")
    return Triple(s, p, o)


@dataclass
class Namespace:
    """Mints absolute IRIs from repository-local slugs."""

    base: str = MIR_NS

    def iri(self, slug: str) -> IRI:
        return IRI(self.base + slug)


# flat LOM field name -> predicate IRI
_DC_FIELDS = {
    "title": DC_NS + "title",
    "description": DC_NS + "description",
    "coverage": DC_NS + "coverage",
    "keywords": DC_NS + "subject",
    "language": DC_NS + "language",
    "format": DC_NS + "format",
    "author": DC_NS + "creator",
}
_MIR_FIELDS = (
    "structure",
    "aggregationLevel",
    "size",
    "location",
    "created",
    "modified",
    "documentStatus",
    "semanticDensity",
    "difficulty",
    "context",
    "learningResourceType",
    "intendedEndUserRole",
)


def predicate_for(field_name: str) -> IRI:
    if field_name in _DC_FIELDS:
        return IRI(_DC_FIELDS[field_name])
    return IRI(MIR_NS + field_name)


def elo_statements(elo: Elo, ns: Namespace | None = None) -> list[Triple]:
    """One triple per set metadata field, plus the rdf:type marker."""
    ns = ns or Namespace()
    subject = ns.iri(elo.id)
    triples = [Triple(subject, IRI(RDF_TYPE), IRI(MIR_NS + "ELO"))]
    meta = elo.metadata

    def emit(field_name: str, value) -> None:
        if value is None or value == []:
            return
        values = value if isinstance(value, list) else [value]
        for v in values:
            triples.append(Triple(subject, predicate_for(field_name), Literal(str(v))))

    emit("title", meta.title)
    emit("description", meta.description)
    emit("keywords", meta.keywords)
    emit("coverage", meta.coverage)
    emit("language", meta.language)
    emit("structure", meta.structure)
    emit("aggregationLevel", meta.aggregationLevel)
    for name in ("format", "size", "location", "created", "modified"):
        emit(name, getattr(meta.technical, name))
    emit("author", meta.lifecycle.author)
    emit("documentStatus", meta.lifecycle.documentStatus)
    for name in (
        "semanticDensity",
        "difficulty",
        "context",
        "learningResourceType",
        "intendedEndUserRole",
    ):
        emit(name, getattr(meta.educational, name))
    return triples


def anchor_statements(anchor, owning_elo_triples: list[Triple], ns: Namespace | None = None) -> list[Triple]:
    """Inherited statements of the resource plus the anchor's dedicated ones.

    Inherited triples are materialized copies re-subjected to the anchor,
    marked with a provenance triple; a generic anchor carries nothing
    dedicated beyond its resource pointer.
    """
    ns = ns or Namespace()
    subject = ns.iri(anchor.id)
    resource = IRI(anchor.resource) if anchor.is_external else ns.iri(anchor.resource)
    triples = []
    for t in owning_elo_triples:
        triples.append(Triple(subject, t.p, t.o))
    if owning_elo_triples:
        triples.append(Triple(subject, IRI(MIR_NS + "inheritedFrom"), owning_elo_triples[0].s))
    if anchor.title is not None:
        triples.append(Triple(subject, IRI(DC_NS + "title"), Literal(anchor.title)))
    if anchor.label is not None:
        triples.append(Triple(subject, IRI(MIR_NS + "label"), Literal(anchor.label)))
    triples.append(Triple(subject, IRI(MIR_NS + "anchorOf"), resource))
    return triples


def _reification(node: IRI, arc, ns: Namespace) -> list[Triple]:
    return [
        Triple(node, IRI(RDF_TYPE), IRI(RDF_STATEMENT)),
        Triple(node, IRI(RDF_SUBJECT), ns.iri(arc.to_anchor)),
        Triple(node, IRI(RDF_PREDICATE), IRI(arc.arcrole)),
        Triple(node, IRI(RDF_OBJECT), ns.iri(arc.from_anchor)),
    ]


def link_statements(link: Link, ns: Namespace | None = None) -> list[Triple]:
    """Reify a link as a statement about the relation it asserts.

    A single-arc link is its own reification node, so queries can bind the
    link IRI directly against rdf:predicate. A multi-arc link gets one
    "#arc-k" node per arc, attached to the link node.
    """
    ns = ns or Namespace()
    link_node = ns.iri(link.id)
    triples = []
    if len(link.arcs) == 1:
        triples.extend(_reification(link_node, link.arcs[0], ns))
    else:
        for k, arc in enumerate(link.arcs, 1):
            arc_node = IRI(link_node.value + f"#arc-{k}")
            triples.append(Triple(link_node, IRI(MIR_NS + "arc"), arc_node))
            triples.extend(_reification(arc_node, arc, ns))
    for lang, text in link.titles:
        triples.append(Triple(link_node, IRI(DC_NS + "title"), Literal(text, lang or None)))
    if link.creator is not None:
        triples.append(Triple(link_node, IRI(DC_NS + "creator"), Literal(link.creator)))
    if link.path_space:
        triples.append(Triple(link_node, IRI(MIR_NS + "pathSpace"), Literal(link.path_space)))
    return triples


def build_model(repo: Repository, base: LinkBase, ns: Namespace | None = None) -> Graph:
    """Union of all ELO, anchor and link statements; duplicates collapse."""
    ns = ns or Namespace()
    triples: list[Triple] = []
    elo_cache: dict[str, list[Triple]] = {}
    for elo in repo.elos.values():
        stmts = elo_statements(elo, ns)
        elo_cache[elo.id] = stmts
        triples.extend(stmts)
    for anchor in base.anchors.values():
        owning = [] if anchor.is_external else elo_cache.get(anchor.resource, [])
        triples.extend(anchor_statements(anchor, owning, ns))
    for link in base.links.values():
        triples.extend(link_statements(link, ns))
    return Graph(triples)
