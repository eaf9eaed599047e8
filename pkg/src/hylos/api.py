"""HTTP/JSON service over the engine.

Read endpoints serve consistent snapshots; authoring endpoints rebuild the
graph snapshot before responding, so a 2xx mutation is visible to every
subsequent read.
"""

from __future__ import annotations

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import store
from .engine import Engine
from .errors import (
    FormatError,
    HylosError,
    IntegrityError,
    NotFound,
    QueryError,
    QuerySyntaxError,
    UnknownContext,
    VocabError,
)
from .linkbase import Arc
from .render import Nav
from .store import TreeNode


class TreeNodeModel(BaseModel):
    elo_id: str
    depth: int
    path: list[int]
    title: str | None = None
    children: list["TreeNodeModel"] = Field(default_factory=list)


class NavModel(BaseModel):
    prev: str | None = None
    next: str | None = None
    up: str | None = None


class PageModel(BaseModel):
    elo_id: str
    mode: str
    html: str
    nav: NavModel
    active_contexts: list[str]
    badges: dict[str, str]


class EloModel(BaseModel):
    id: str
    title: str | None
    description: str | None
    keywords: list[str]
    difficulty: str | None
    semanticDensity: str | None
    has_slide: bool
    publication_report: list[str]


class ContextModel(BaseModel):
    id: str
    title: str | None
    description: str | None
    creator: str | None


class SelectorModel(BaseModel):
    path: str


class AnchorCreate(BaseModel):
    resource: str
    selector: str | None = None
    title: str | None = None
    label: str | None = None
    slug: str | None = None


class ArcModel(BaseModel):
    from_anchor: str
    to_anchor: str
    arcrole: str
    title: str | None = None


class LinkCreate(BaseModel):
    arcs: list[ArcModel]
    titles: list[tuple[str | None, str]] = Field(default_factory=list)
    creator: str | None = None
    path_space: str = ""
    created: str | None = None
    slug: str | None = None


class CreatedModel(BaseModel):
    id: str


_BAD_REQUEST = (UnknownContext, FormatError, QueryError, QuerySyntaxError, VocabError)


def _tree_model(engine: Engine, node: TreeNode) -> TreeNodeModel:
    elo = engine.repo.elos.get(node.elo_id)
    title = elo.metadata.title if elo and elo.metadata.title else None
    if title is None and elo and elo.paragraph:
        title = elo.paragraph.title
    return TreeNodeModel(
        elo_id=node.elo_id,
        depth=node.depth,
        path=list(node.path),
        title=title,
        children=[_tree_model(engine, child) for child in node.children],
    )


def _default_nav(engine: Engine, elo_id: str, root: str | None) -> Nav:
    roots = [root] if root else engine.repo.roots()
    for candidate in roots:
        if candidate not in engine.repo.elos:
            continue
        order = store.linearize(engine.repo, candidate)
        if elo_id in order:
            return engine.nav_for_occurrence(candidate, order.index(elo_id))
    return Nav()


def create_app(engine: Engine) -> FastAPI:
    app = FastAPI(title="hylos", version="0.1.0")
    app.state.engine = engine

    @app.exception_handler(HylosError)
    async def domain_error(request: Request, exc: HylosError):
        if isinstance(exc, IntegrityError):
            status = 409
            detail = {"detail": str(exc), "violations": exc.violations}
        elif isinstance(exc, NotFound):
            status = 404
            detail = {"detail": str(exc)}
        elif isinstance(exc, _BAD_REQUEST):
            status = 400
            detail = {"detail": str(exc)}
        else:
            status = 400
            detail = {"detail": str(exc)}
        return JSONResponse(status_code=status, content=detail)

    @app.get("/api/tree", response_model=TreeNodeModel)
    def get_tree(root: str | None = None):
        if root is None:
            roots = engine.repo.roots()
            if not roots:
                raise NotFound("repository has no roots")
            root = sorted(roots)[0]
        return _tree_model(engine, store.tree_view(engine.repo, root))

    @app.get("/api/roots")
    def get_roots() -> list[str]:
        return sorted(engine.repo.roots())

    @app.get("/api/elos/{elo_id}", response_model=EloModel)
    def get_elo(elo_id: str):
        from .elo import validate_for_publication

        elo = store.get_elo(engine.repo, elo_id)
        return EloModel(
            id=elo.id,
            title=elo.metadata.title,
            description=elo.metadata.description,
            keywords=elo.metadata.keywords,
            difficulty=elo.metadata.educational.difficulty,
            semanticDensity=elo.metadata.educational.semanticDensity,
            has_slide=elo.slide is not None,
            publication_report=validate_for_publication(elo),
        )

    @app.get("/api/elos/{elo_id}/page", response_model=PageModel)
    def get_page(
        elo_id: str,
        mode: str = "descriptive",
        session: str | None = None,
        root: str | None = None,
    ):
        context_ids: list[str] = []
        if session is not None:
            context_ids = list(engine.session(session).contexts.active)
        nav = _default_nav(engine, elo_id, root)
        view = engine.page(elo_id, mode=mode, context_ids=context_ids, nav=nav)
        return PageModel(
            elo_id=view.elo_id,
            mode=view.mode,
            html=view.html,
            nav=NavModel(prev=view.nav.prev, next=view.nav.next, up=view.nav.up),
            active_contexts=view.active_contexts,
            badges=view.badges,
        )

    @app.get("/api/contexts", response_model=list[ContextModel])
    def get_contexts():
        return [
            ContextModel(
                id=c.id,
                title=c.title_text,
                description=c.description[1] if c.description else None,
                creator=c.creator,
            )
            for c in sorted(engine.contexts.values(), key=lambda c: c.id)
        ]

    @app.put("/api/sessions/{session_id}/contexts")
    def put_session_contexts(session_id: str, context_ids: list[str]):
        session = engine.set_session_contexts(session_id, context_ids)
        return {"session": session.id, "active_contexts": list(session.contexts.active)}

    @app.get("/api/sessions/{session_id}/contexts")
    def get_session_contexts(session_id: str):
        session = engine.session(session_id)
        return {"session": session.id, "active_contexts": list(session.contexts.active)}

    @app.get("/api/graph")
    def get_graph():
        return Response(content=engine.graph.to_ntriples(), media_type="text/plain")

    @app.post("/api/anchors", response_model=CreatedModel, status_code=201)
    def post_anchor(body: AnchorCreate):
        try:
            anchor_id = engine.add_anchor(
                body.resource,
                selector=body.selector,
                title=body.title,
                label=body.label,
                slug=body.slug,
            )
        except NotFound as exc:
            # authoring against a missing resource is an integrity violation
            raise IntegrityError([str(exc)]) from exc
        return CreatedModel(id=anchor_id)

    @app.post("/api/links", response_model=CreatedModel, status_code=201)
    def post_link(body: LinkCreate):
        arcs = [
            Arc(
                from_anchor=a.from_anchor,
                to_anchor=a.to_anchor,
                arcrole=a.arcrole,
                title=a.title,
            )
            for a in body.arcs
        ]
        try:
            link_id = engine.add_link(
                arcs,
                titles=body.titles,
                creator=body.creator,
                path_space=body.path_space,
                created=body.created,
                slug=body.slug,
            )
        except NotFound as exc:
            raise IntegrityError([str(exc)]) from exc
        return CreatedModel(id=link_id)

    return app
