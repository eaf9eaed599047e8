"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion lines.
"""

import hashlib
import itertools
import random
import time
import xml.etree.ElementTree as ET

import pytest

from hylos import rdql
from hylos.contexts import links_for_document, parse_context, select_links
from hylos.elo import (
    AuthorPresets,
    Elo,
    LomMetadata,
    ParagraphContent,
    Technical,
    autogen_metadata,
    validate_for_publication,
)
from hylos.engine import Engine
from hylos.linkbase import Anchor, Arc, Link, LinkBase
from hylos.rdf import (
    IRI,
    MIR_NS,
    Namespace,
    RDF_OBJECT,
    RDF_PREDICATE,
    RDF_SUBJECT,
    RDF_TYPE,
    build_model,
)
from hylos.render import nav_for
from hylos.store import Repository, attach_child, linearize, tree_view
from hylos.vocab import OBLIGATORY_FIELDS
from hylos.xmlio import linkbase_to_xml

from .conftest import BACKGROUND_QUERY, BACKGROUND_CONTEXT_XML, make_hamster_engine
from .oracles import brute_force_evaluate, count_root_paths
from .test_gateway import random_engine
from .test_rdql import random_graph, random_query
from .test_store import build_random_repo

NS = Namespace()


def report(name: str, ok: bool, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {status}: {name}{suffix}")
    assert ok, f"{name}{suffix}"


def test_worked_example_end_to_end():
    started = time.perf_counter()
    engine = make_hamster_engine()
    context = engine.contexts["link-context1"]

    table = rdql.evaluate(rdql.parse_and_expand(BACKGROUND_QUERY), engine.graph)
    one_binding = table.rows == [(IRI(MIR_NS + "link1"),)]

    found = links_for_document(
        "hamster-text", [context], engine.graph, engine.base, engine.repo
    )
    one_selected = (
        len(found) == 1
        and found[0].subject == IRI(MIR_NS + "anchor-handbook")
        and found[0].object == IRI(MIR_NS + "anchor-hamster")
    )

    page_on = engine.page("hamster-text", context_ids=["link-context1"])
    page_off = engine.page("hamster-text", context_ids=[])
    one_href = page_on.html.count('href="/elos/handbook"') == 1
    zero_hrefs = 'href="/elos/handbook"' not in page_off.html

    elapsed = time.perf_counter() - started
    report(
        "worked example end-to-end",
        one_binding and one_selected and one_href and zero_hrefs and elapsed < 1.0,
        f"{elapsed:.3f}s",
    )


def test_reification_shape_on_random_links():
    rng = random.Random(20030718)
    base = LinkBase()
    anchors = [f"a{i}" for i in range(40)]
    for a in anchors:
        base.anchors[a] = Anchor(id=a, resource="http://example.org/doc")
    for i in range(200):
        base.links[f"l{i}"] = Link(
            id=f"l{i}",
            arcs=[Arc(
                from_anchor=rng.choice(anchors),
                to_anchor=rng.choice(anchors),
                arcrole=f"{MIR_NS}Rel{rng.randrange(6)}",
            )],
            titles=[("en", f"t{i}")] if rng.random() < 0.5 else [],
            creator="x" if rng.random() < 0.5 else None,
        )
    graph = build_model(Repository(), base)
    reif_preds = {RDF_TYPE, RDF_SUBJECT, RDF_PREDICATE, RDF_OBJECT}
    violations = 0
    for link in base.links.values():
        node = NS.iri(link.id)
        reif = [t for t in graph.match(s=node) if t.p.value in reif_preds]
        arc = link.arcs[0]
        ok = (
            len(reif) == 4
            and {t.p.value for t in reif} == reif_preds
            and graph.match(s=node, p=IRI(RDF_SUBJECT))[0].o == NS.iri(arc.to_anchor)
            and graph.match(s=node, p=IRI(RDF_OBJECT))[0].o == NS.iri(arc.from_anchor)
        )
        if not ok:
            violations += 1
    report("reification shape (200 random single-arc links)", violations == 0,
           f"{violations} violations")


def test_rdql_oracle_equivalence_500_cases():
    started = time.perf_counter()
    rng = random.Random(1484121)
    failures = 0
    for _ in range(500):
        graph = random_graph(rng)
        query = random_query(rng)
        if set(rdql.evaluate(query, graph).rows) != brute_force_evaluate(query, graph):
            failures += 1
    elapsed = time.perf_counter() - started
    report(
        "query evaluation vs brute-force oracle (500 cases)",
        failures == 0 and elapsed < 30.0,
        f"{failures} mismatches, {elapsed:.1f}s",
    )


def _fixture_paragraphs():
    rng = random.Random(5)
    paragraphs = []
    for i in range(20):
        sections = [f"Section {i}.{j}" for j in range(rng.randrange(0, 4))]
        first_block = f"Paragraph {i} opening   text with  spaces " + "filler " * rng.randrange(0, 120)
        paragraphs.append(
            ParagraphContent(
                title=f"Title {i}",
                body=f"<paragraph><section>{first_block}</section></paragraph>",
                sectional_titles=sections,
                headwords=[f"hw{i}"],
            )
        )
    return paragraphs


def test_metadata_autogen_mapping_rules():
    tech = Technical(format="text/xml", size=1, location="x", created="2003-01-01",
                     modified="2003-01-02")
    presets = AuthorPresets(language="en", intendedEndUserRole="learner")
    bad = 0
    for paragraph in _fixture_paragraphs():
        meta = autogen_metadata(paragraph, tech, "Author", presets)
        expected_description = " ".join(
            "".join(ET.fromstring(paragraph.body)[0].itertext()).split()
        )
        if len(expected_description) > 500:
            cut = expected_description.rfind(" ", 0, 501)
            expected_description = expected_description[:cut]
        ok = (
            meta.title == paragraph.title
            and meta.coverage == paragraph.sectional_titles
            and meta.description == expected_description
            and meta.language == "en"
        )
        if not ok:
            bad += 1
    report("metadata autogen mapping (20 paragraphs)", bad == 0, f"{bad} mismatches")


def test_seven_field_gate_all_proper_subsets():
    def record_with(present):
        meta = LomMetadata()
        values = {
            "keywords": ["k"],
            "semanticDensity": "medium",
            "difficulty": "easy",
            "context": "school",
            "learningResourceType": "slide",
            "structure": "atomic",
            "documentStatus": "final",
        }
        for name in present:
            meta.set_field(name, values[name])
        return Elo(id="x", metadata=meta)

    checked = 0
    bad = 0
    for size in range(len(OBLIGATORY_FIELDS)):
        for present in itertools.combinations(OBLIGATORY_FIELDS, size):
            checked += 1
            expected = set(OBLIGATORY_FIELDS) - set(present)
            if set(validate_for_publication(record_with(present))) != expected:
                bad += 1
    report("seven-field publication gate (127 proper subsets)",
           checked == 127 and bad == 0, f"{checked} subsets, {bad} wrong reports")


def test_structure_laws_on_random_dags():
    rng = random.Random(11)
    bad = 0
    for _ in range(100):
        ops = [
            (rng.randrange(15), rng.randrange(15), rng.randrange(6))
            for _ in range(rng.randrange(0, 30))
        ]
        repo = build_random_repo(ops, size=15)
        for root in repo.roots():
            order = linearize(repo, root)
            flat = [n.elo_id for n in tree_view(repo, root).flatten()]
            if order != flat:
                bad += 1
                continue
            for i in range(1, len(order) - 1):
                nav = nav_for(repo, root, i)
                if nav.prev != order[i - 1] or nav.next != order[i + 1]:
                    bad += 1
            for elo_id in set(order):
                if order.count(elo_id) != count_root_paths(repo.children, root, elo_id):
                    bad += 1
    report("structure laws (100 random DAGs)", bad == 0, f"{bad} violations")


def test_persistence_round_trip_50_states(tmp_path):
    rng = random.Random(50)
    bad = 0
    for case in range(50):
        engine = random_engine(rng)
        target = tmp_path / f"state{case}"
        engine.save(target)
        loaded = Engine.load(target)
        if loaded.graph != engine.graph:
            bad += 1
    report("persistence round-trip (50 random states)", bad == 0, f"{bad} mismatches")


def test_context_purity():
    engine = make_hamster_engine()
    context = engine.contexts["link-context1"]

    def state_hash():
        return hashlib.sha256(
            (engine.graph.to_ntriples() + linkbase_to_xml(engine.base)).encode()
        ).hexdigest()

    before = state_hash()
    for _ in range(5):
        select_links(context, engine.graph)
        links_for_document(
            "hamster-text", [context], engine.graph, engine.base, engine.repo
        )
        links_for_document(
            "handbook", [context], engine.graph, engine.base, engine.repo
        )
    report("context selection purity", state_hash() == before)
