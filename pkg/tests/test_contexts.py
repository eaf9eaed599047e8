import hashlib

import pytest

from hylos.contexts import (
    ContextSet,
    LinkContext,
    context_to_xml,
    links_for_document,
    parse_context,
    select_links,
)
from hylos.errors import FormatError, NotFound, QueryError, UnknownContext
from hylos.rdf import Graph, IRI, MIR_NS, RDF_PREDICATE, Triple
from hylos.xmlio import linkbase_to_xml

from .conftest import BACKGROUND_CONTEXT_XML


class TestParseContext:
    def test_canonical_document(self, background_context):
        ctx = background_context
        assert ctx.id == "link-context1"
        assert ctx.creator == "Mr. X"
        assert ctx.title == ("en", "Background Information")
        query = ctx.query()
        assert len(query.patterns) == 1

    def test_missing_query_element(self):
        broken = BACKGROUND_CONTEXT_XML.replace("mir:link-context", "mir:something-else")
        with pytest.raises(FormatError):
            parse_context(broken)

    def test_invalid_embedded_query(self):
        broken = BACKGROUND_CONTEXT_XML.replace(
            "SELECT * WHERE (?link, <rdf:predicate>, <mir:BackgroundInfo>) USING",
            "SELECT WHERE USING",
        )
        with pytest.raises(QueryError):
            parse_context(broken)

    def test_not_xml(self):
        with pytest.raises(FormatError):
            parse_context("this is not xml")

    def test_serialization_round_trip(self, background_context):
        again = parse_context(context_to_xml(background_context))
        assert again == background_context


class TestSelectLinks:
    def test_background_context_selects_link1(self, background_context, hamster_graph):
        selected = select_links(background_context, hamster_graph)
        assert len(selected) == 1
        sl = selected[0]
        assert sl.link == IRI(MIR_NS + "link1")
        assert sl.subject == IRI(MIR_NS + "anchor-handbook")
        assert sl.predicate == IRI(MIR_NS + "BackgroundInfo")
        assert sl.object == IRI(MIR_NS + "anchor-hamster")
        assert sl.title == "For freshman"
        assert sl.via_context == "link-context1"

    def test_no_matches(self, hamster_graph):
        ctx = LinkContext(
            id="c", query_text="SELECT * WHERE (?l, <http://nowhere/p>, ?o)"
        )
        assert select_links(ctx, hamster_graph) == []

    def test_statement_gate_excludes_decoys(self, background_context, hamster_graph):
        # decoy: a non-statement node also carrying rdf:predicate
        decoy = Triple(
            IRI(MIR_NS + "hamster-text"),
            IRI(RDF_PREDICATE),
            IRI(MIR_NS + "BackgroundInfo"),
        )
        extended = Graph(set(hamster_graph.triples()) | {decoy})
        selected = select_links(background_context, extended)
        assert [sl.link for sl in selected] == [IRI(MIR_NS + "link1")]


class TestLinksForDocument:
    def test_source_document_gets_the_link(
        self, background_context, hamster_graph, hamster_base, hamster_repo
    ):
        found = links_for_document(
            "hamster-text", [background_context], hamster_graph, hamster_base, hamster_repo
        )
        assert [sl.link for sl in found] == [IRI(MIR_NS + "link1")]

    def test_no_active_contexts(self, hamster_graph, hamster_base, hamster_repo):
        assert links_for_document(
            "hamster-text", [], hamster_graph, hamster_base, hamster_repo
        ) == []

    def test_target_document_gets_nothing(
        self, background_context, hamster_graph, hamster_base, hamster_repo
    ):
        # the link starts on hamster-text, so the handbook page shows nothing
        assert links_for_document(
            "handbook", [background_context], hamster_graph, hamster_base, hamster_repo
        ) == []

    def test_unknown_document(
        self, background_context, hamster_graph, hamster_base, hamster_repo
    ):
        with pytest.raises(NotFound):
            links_for_document(
                "nope", [background_context], hamster_graph, hamster_base, hamster_repo
            )

    def test_union_monotone(
        self, background_context, hamster_graph, hamster_base, hamster_repo
    ):
        empty_ctx = LinkContext(id="e", query_text="SELECT * WHERE (?l, <http://no/p>, ?o)")
        only = links_for_document(
            "hamster-text", [background_context], hamster_graph, hamster_base, hamster_repo
        )
        both = links_for_document(
            "hamster-text",
            [empty_ctx, background_context],
            hamster_graph,
            hamster_base,
            hamster_repo,
        )
        assert {sl.link for sl in only} <= {sl.link for sl in both}


class TestContextSet:
    REGISTERED = {"a": LinkContext(id="a"), "b": LinkContext(id="b")}

    def test_activate_idempotent(self):
        cs = ContextSet()
        cs.activate(self.REGISTERED, "a")
        cs.activate(self.REGISTERED, "a")
        assert cs.active == ["a"]

    def test_deactivate_absent_is_noop(self):
        cs = ContextSet()
        cs.deactivate("a")
        assert cs.active == []

    def test_activation_order_preserved(self):
        cs = ContextSet()
        cs.activate(self.REGISTERED, "a")
        cs.activate(self.REGISTERED, "b")
        assert cs.active == ["a", "b"]

    def test_unknown_context(self):
        with pytest.raises(UnknownContext):
            ContextSet().activate(self.REGISTERED, "nope")


def test_selection_is_pure(background_context, hamster_graph, hamster_base, hamster_repo):
    def state_hash():
        return hashlib.sha256(
            (hamster_graph.to_ntriples() + linkbase_to_xml(hamster_base)).encode()
        ).hexdigest()

    before = state_hash()
    for _ in range(3):
        select_links(background_context, hamster_graph)
        links_for_document(
            "hamster-text", [background_context], hamster_graph, hamster_base, hamster_repo
        )
    assert state_hash() == before
