"""Link contexts: authored, query-defined selection schemes over the link base.

A context is an RDF/XML document holding descriptive metadata and an
embedded query. Activating contexts filters which hyperlinks a page shows;
selection never creates links or anchors and never mutates anything.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from . import rdql
from .errors import FormatError, HylosError, NotFound, QueryError, UnknownContext
from .linkbase import LinkBase
from .rdf import (
    DC_NS,
    Graph,
    IRI,
    Literal,
    Namespace,
    RDF_NS,
    RDF_OBJECT,
    RDF_PREDICATE,
    RDF_STATEMENT,
    RDF_SUBJECT,
    RDF_TYPE,
)
from .store import Repository

XML_LANG = "{http://www.w3.org/XML/1998/namespace}lang"

# context files may declare the MIR namespace with or without the trailing #
_MIR_VARIANTS = (
    "http://www.rz.fhtw-berlin.de/MIR#",
    "http://www.rz.fhtw-berlin.de/MIR",
)


@dataclass
class LinkContext:
    id: str
    creator: str | None = None
    title: tuple[str | None, str] | None = None  # (lang, text)
    description: tuple[str | None, str] | None = None
    query_text: str = ""

    @property
    def title_text(self) -> str | None:
        return self.title[1] if self.title else None

    def query(self) -> rdql.Query:
        return rdql.parse_and_expand(self.query_text)


@dataclass(frozen=True)
class SelectedLink:
    link: IRI
    subject: IRI  # target anchor
    predicate: IRI  # arcrole
    object: IRI  # source anchor
    title: str | None
    via_context: str


def _find_any(element: ET.Element, namespaces: tuple[str, ...], local: str):
    for ns in namespaces:
        found = element.findall(f"{{{ns}}}{local}")
        if found:
            return found
    return []


def parse_context(document: str) -> LinkContext:
    """Parse one context definition from its RDF/XML document."""
    try:
        root = ET.fromstring(document)
    except ET.ParseError as exc:
        raise FormatError(f"not well-formed XML: {exc}") from exc
    descriptions = root.findall(f"{{{RDF_NS}}}Description")
    if not descriptions:
        raise FormatError("missing rdf:Description element")
    desc = descriptions[0]
    about = desc.get(f"{{{RDF_NS}}}about")
    if not about:
        raise FormatError("rdf:Description lacks rdf:about")

    def text_with_lang(local: str):
        # dc elements are capitalized in context files (dc:Creator, dc:Title)
        for name in (local, local.capitalize()):
            found = desc.findall(f"{{{DC_NS}}}{name}")
            if found:
                el = found[0]
                return (el.get(XML_LANG), (el.text or "").strip())
        return None

    creator = text_with_lang("creator")
    title = text_with_lang("title")
    description = text_with_lang("description")
    query_els = _find_any(desc, _MIR_VARIANTS, "link-context")
    if not query_els:
        raise FormatError("missing mir:link-context element")
    query_text = (query_els[0].text or "").strip()
    try:
        rdql.parse_and_expand(query_text)
    except HylosError as exc:
        raise QueryError(f"context {about!r}: {exc}") from exc
    return LinkContext(
        id=about,
        creator=creator[1] if creator else None,
        title=title,
        description=description,
        query_text=query_text,
    )


def context_to_xml(context: LinkContext) -> str:
    """Canonical serialization of a context definition."""
    mir = _MIR_VARIANTS[0]
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<rdf:RDF xmlns:rdf="{RDF_NS}" xmlns:mir="{mir}" xmlns:dc="{DC_NS}">',
        f'<rdf:Description rdf:about="{context.id}">',
    ]

    def element(tag: str, value) -> None:
        if value is None:
            return
        lang, text = value if isinstance(value, tuple) else (None, value)
        attr = f' xml:lang="{lang}"' if lang else ""
        escaped = (
            text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        )
        lines.append(f"<{tag}{attr}>{escaped}</{tag}>")

    element("dc:Creator", context.creator)
    element("dc:Title", context.title)
    element("dc:Description", context.description)
    lines.append(f"<mir:link-context><![CDATA[\n{context.query_text}\n]]></mir:link-context>")
    lines.append("</rdf:Description>")
    lines.append("</rdf:RDF>")
    return "\n".join(lines) + "\n"


@dataclass
class ContextSet:
    """Ordered, duplicate-free set of active context ids for one session."""

    active: list[str] = field(default_factory=list)

    def activate(self, registered: dict[str, LinkContext], context_id: str) -> None:
        if context_id not in registered:
            raise UnknownContext(context_id)
        if context_id not in self.active:
            self.active.append(context_id)

    def deactivate(self, context_id: str) -> None:
        if context_id in self.active:
            self.active.remove(context_id)


def _statement_fields(graph: Graph, node: IRI):
    def one(predicate: str):
        hits = graph.match(s=node, p=IRI(predicate))
        return hits[0].o if hits else None

    return one(RDF_SUBJECT), one(RDF_PREDICATE), one(RDF_OBJECT)


def select_links(context: LinkContext, graph: Graph) -> list[SelectedLink]:
    """Evaluate the context query and keep bound terms that are reified
    statement nodes; non-statement bindings are ignored."""
    table = rdql.evaluate(context.query(), graph)
    seen: set[IRI] = set()
    selected: list[SelectedLink] = []
    for row in table.rows:
        for term in row:
            if not isinstance(term, IRI) or term in seen:
                continue
            if not graph.match(s=term, p=IRI(RDF_TYPE), o=IRI(RDF_STATEMENT)):
                continue
            seen.add(term)
            s, p, o = _statement_fields(graph, term)
            if not (isinstance(s, IRI) and isinstance(p, IRI) and isinstance(o, IRI)):
                continue
            titles = graph.match(s=term, p=IRI(DC_NS + "title"))
            title = None
            for t in titles:
                if isinstance(t.o, Literal):
                    title = t.o.text
                    break
            selected.append(
                SelectedLink(
                    link=term,
                    subject=s,
                    predicate=p,
                    object=o,
                    title=title,
                    via_context=context.id,
                )
            )
    selected.sort(key=lambda sl: sl.link.value)
    return selected


def links_for_document(
    doc: str,
    contexts: list[LinkContext],
    graph: Graph,
    base: LinkBase,
    repo: Repository,
    ns: Namespace | None = None,
) -> list[SelectedLink]:
    """Links whose source anchor sits on the given document, unioned over
    the active contexts in activation order."""
    ns = ns or Namespace()
    if doc not in repo.elos:
        raise NotFound(f"no ELO {doc!r}")
    anchors_by_iri = {ns.iri(a.id): a for a in base.anchors.values()}
    out: list[SelectedLink] = []
    seen: set[tuple[IRI, str]] = set()
    for context in contexts:
        for sl in select_links(context, graph):
            source = anchors_by_iri.get(sl.object)
            if source is None or source.resource != doc:
                continue
            key = (sl.link, sl.via_context)
            if key in seen:
                continue
            seen.add(key)
            out.append(sl)
    return out
