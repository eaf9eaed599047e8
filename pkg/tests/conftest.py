import pytest

from hylos.contexts import parse_context
from hylos.elo import Elo, LomMetadata, ParagraphContent
from hylos.engine import Engine
from hylos.linkbase import Arc, LinkBase, Selector, create_anchor, create_link
from hylos.rdf import MIR_NS, build_model
from hylos.store import Repository, attach_child, put_elo

BACKGROUND_CONTEXT_XML = """<?xml version="1.0"?>
<rdf:RDF xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#"
xmlns:mir="http://www.rz.fhtw-berlin.de/MIR"
xmlns:dc="http://purl.org/dc/elements/1.1/">
<rdf:Description rdf:about="link-context1">
<dc:Creator>Mr. X</dc:Creator>
<dc:Title xml:lang="en">Background Information</dc:Title>
<dc:Description xml:lang="en">Some continuative information on.</dc:Description>
<mir:link-context>
<![CDATA[
SELECT * WHERE (?link, <rdf:predicate>, <mir:BackgroundInfo>) USING
rdf FOR <http://www.w3.org/1999/02/22-rdf-syntax-ns#>,
mir FOR <http://www.rz.fhtw-berlin.de/MIR#>
]]>
</mir:link-context>
</rdf:Description>
</rdf:RDF>
"""

BACKGROUND_QUERY = (
    "SELECT * WHERE (?link, <rdf:predicate>, <mir:BackgroundInfo>) USING "
    "rdf FOR <http://www.w3.org/1999/02/22-rdf-syntax-ns#>, "
    "mir FOR <http://www.rz.fhtw-berlin.de/MIR#>"
)


def make_hamster_repo() -> Repository:
    repo = Repository()
    hamster = Elo(
        id="hamster-text",
        metadata=LomMetadata(
            title="Hamsters having hay fever",
            description="about hamster diseases",
        ),
        paragraph=ParagraphContent(
            title="Hamsters having hay fever",
            body=(
                "<paragraph><section>Hamster allergies are common in spring."
                "</section><section>Antihistamines help.</section></paragraph>"
            ),
            headwords=["allergy"],
            sectional_titles=["Symptoms", "Treatment"],
        ),
    )
    handbook = Elo(
        id="handbook",
        metadata=LomMetadata(title="Hay fever handbook"),
        paragraph=ParagraphContent(
            title="Hay fever handbook",
            body="<paragraph><section>Everything about hay fever.</section></paragraph>",
        ),
    )
    put_elo(repo, hamster)
    put_elo(repo, handbook)
    return repo


def make_hamster_base(repo: Repository) -> LinkBase:
    base = LinkBase()
    create_anchor(
        base,
        repo,
        "hamster-text",
        selector=Selector.parse("/paragraph/section[1]@0+7"),
        title="hamster having hay fever",
        slug="anchor-hamster",
    )
    create_anchor(base, repo, "handbook", slug="anchor-handbook")
    create_link(
        base,
        [Arc(from_anchor="anchor-hamster", to_anchor="anchor-handbook",
             arcrole=MIR_NS + "BackgroundInfo")],
        titles=[("en", "For freshman")],
        creator="Mr. X",
        path_space="course1/unit2",
        created="2003-07-18",
        slug="link1",
    )
    return base


@pytest.fixture
def hamster_repo():
    return make_hamster_repo()


@pytest.fixture
def hamster_base(hamster_repo):
    return make_hamster_base(hamster_repo)


@pytest.fixture
def hamster_graph(hamster_repo, hamster_base):
    return build_model(hamster_repo, hamster_base)


@pytest.fixture
def background_context():
    return parse_context(BACKGROUND_CONTEXT_XML)


def make_diamond_repo() -> Repository:
    """A -> {B, C}, B -> D, C -> D: D is re-used under two parents."""
    repo = Repository()
    for name in "abcd":
        put_elo(
            repo,
            Elo(
                id=name,
                metadata=LomMetadata(title=name.upper()),
                paragraph=ParagraphContent(
                    title=name.upper(),
                    body=f"<paragraph><section>{name}</section></paragraph>",
                    sectional_titles=[name.upper()],
                ),
            ),
        )
    attach_child(repo, "a", "b", 0)
    attach_child(repo, "a", "c", 1)
    attach_child(repo, "b", "d", 0)
    attach_child(repo, "c", "d", 0)
    return repo


@pytest.fixture
def diamond_repo():
    return make_diamond_repo()


def make_hamster_engine() -> Engine:
    engine = Engine()
    engine.repo = make_hamster_repo()
    engine.base = make_hamster_base(engine.repo)
    engine.contexts["link-context1"] = parse_context(BACKGROUND_CONTEXT_XML)
    engine.rebuild_graph()
    return engine


@pytest.fixture
def hamster_engine():
    return make_hamster_engine()
