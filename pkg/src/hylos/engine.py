"""Engine: owns the loaded repository, link base, contexts and graph snapshot.

All mutations pass through one writer lock and end by swapping in a freshly
built graph snapshot, so readers always observe a consistent state. Both
the CLI and the HTTP service render through this one path.
"""

from __future__ import annotations

import copy
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from . import rdf, store, xmlio
from .contexts import (
    ContextSet,
    LinkContext,
    SelectedLink,
    context_to_xml,
    links_for_document,
    parse_context,
)
from .elo import Elo
from .errors import HylosError, IntegrityError, NotFound, ParseError, UnknownContext
from .linkbase import Arc, LinkBase, Selector, create_anchor, create_link
from .render import Nav, PageView, nav_for, render_descriptive, render_slide
from .rdf import Graph, Namespace
from .store import Repository


@dataclass
class Session:
    id: str
    contexts: ContextSet = field(default_factory=ContextSet)
    mode: str = "descriptive"
    root: str | None = None


class Engine:
    def __init__(self, namespace: str = rdf.MIR_NS):
        self.repo = Repository()
        self.base = LinkBase()
        self.contexts: dict[str, LinkContext] = {}
        self.ns = Namespace(namespace)
        self.sessions: dict[str, Session] = {}
        self.graph: Graph = Graph()
        self._lock = threading.RLock()

    # ------------------------------------------------------------------ state

    def rebuild_graph(self) -> None:
        self.graph = rdf.build_model(self.repo, self.base, self.ns)

    def integrity_violations(self) -> list[str]:
        problems = []
        for parent, kids in self.repo.children.items():
            if parent not in self.repo.elos:
                problems.append(f"structure references missing ELO {parent!r}")
            for child in kids:
                if child not in self.repo.elos:
                    problems.append(f"structure references missing ELO {child!r}")
        for elo in self.repo.elos.values():
            for ref in self.repo.dangling_refs(elo):
                problems.append(f"ELO {elo.id!r} has dangling reference {ref}")
        problems.extend(self.base.integrity_violations(self.repo))
        for context in self.contexts.values():
            try:
                context.query()
            except HylosError as exc:
                problems.append(f"context {context.id!r}: {exc}")
        return problems

    def check_integrity(self) -> None:
        problems = self.integrity_violations()
        if problems:
            raise IntegrityError(problems)

    def mutate(self, fn):
        """Run a mutation under the writer gate; verify and reswap the
        snapshot, rolling back on integrity violations."""
        with self._lock:
            before = copy.deepcopy((self.repo, self.base, self.contexts))
            try:
                result = fn()
                problems = self.integrity_violations()
                if problems:
                    raise IntegrityError(problems)
            except Exception:
                self.repo, self.base, self.contexts = before
                raise
            self.rebuild_graph()
            return result

    # ---------------------------------------------------------------- loading

    @classmethod
    def load(cls, path: str | Path) -> "Engine":
        path = Path(path)
        if not path.is_dir():
            raise NotFound(f"no repository directory {path}")
        engine = cls()
        config_file = path / "config.xml"
        children: dict[str, list[str]] = {}
        if config_file.exists():
            namespace, children = xmlio.config_from_xml(
                config_file.read_text("utf-8"), str(config_file)
            )
            if namespace:
                engine.ns = Namespace(namespace)
        for elo_file in sorted((path / "elos").glob("*.xml")) if (path / "elos").is_dir() else []:
            elo = xmlio.elo_from_xml(elo_file.read_text("utf-8"), str(elo_file))
            engine.repo.elos[elo.id] = elo
        engine.repo.children = {
            parent: list(kids) for parent, kids in children.items() if kids
        }
        linkbase_file = path / "linkbase.xml"
        if linkbase_file.exists():
            engine.base = xmlio.linkbase_from_xml(
                linkbase_file.read_text("utf-8"), str(linkbase_file)
            )
        registries_dir = path / "registries"
        if registries_dir.is_dir():
            for reg_file in sorted(registries_dir.glob("*.xml")):
                kind, entries = xmlio.registry_from_xml(
                    reg_file.read_text("utf-8"), str(reg_file)
                )
                engine.repo.registries[kind].update(entries)
        contexts_dir = path / "contexts"
        if contexts_dir.is_dir():
            for ctx_file in sorted(contexts_dir.glob("*.xml")):
                try:
                    context = parse_context(ctx_file.read_text("utf-8"))
                except HylosError as exc:
                    raise IntegrityError([f"{ctx_file}: {exc}"]) from exc
                engine.contexts[context.id] = context
        engine.check_integrity()
        engine.rebuild_graph()
        return engine

    def save(self, path: str | Path) -> None:
        with self._lock:
            self.check_integrity()
            path = Path(path)
            (path / "elos").mkdir(parents=True, exist_ok=True)
            (path / "contexts").mkdir(exist_ok=True)
            (path / "registries").mkdir(exist_ok=True)
            for elo in self.repo.elos.values():
                (path / "elos" / f"{elo.id}.xml").write_text(
                    xmlio.elo_to_xml(elo), "utf-8"
                )
            (path / "linkbase.xml").write_text(xmlio.linkbase_to_xml(self.base), "utf-8")
            for kind, entries in self.repo.registries.items():
                if entries:
                    (path / "registries" / f"{kind}.xml").write_text(
                        xmlio.registry_to_xml(kind, entries), "utf-8"
                    )
            for context in self.contexts.values():
                safe_name = context.id.replace("/", "_")
                (path / "contexts" / f"{safe_name}.xml").write_text(
                    context_to_xml(context), "utf-8"
                )
            (path / "config.xml").write_text(
                xmlio.config_to_xml(self.ns.base, self.repo), "utf-8"
            )

    # --------------------------------------------------------------- sessions

    def session(self, session_id: str | None = None) -> Session:
        with self._lock:
            if session_id is None:
                session_id = uuid.uuid4().hex
            if session_id not in self.sessions:
                self.sessions[session_id] = Session(id=session_id)
            return self.sessions[session_id]

    def set_session_contexts(self, session_id: str, context_ids: list[str]) -> Session:
        with self._lock:
            session = self.session(session_id)
            fresh = ContextSet()
            for cid in context_ids:
                fresh.activate(self.contexts, cid)
            session.contexts = fresh
            return session

    # -------------------------------------------------------------- authoring

    def add_elo(self, elo: Elo) -> None:
        self.mutate(lambda: store.put_elo(self.repo, elo))

    def attach(self, parent: str, child: str, position: int | None = None) -> None:
        self.mutate(lambda: store.attach_child(self.repo, parent, child, position))

    def add_anchor(self, resource, selector=None, title=None, label=None, slug=None) -> str:
        sel = Selector.parse(selector) if isinstance(selector, str) else selector
        return self.mutate(
            lambda: create_anchor(
                self.base, self.repo, resource, sel, title=title, label=label, slug=slug
            )
        )

    def add_link(
        self,
        arcs: list[Arc],
        titles=None,
        creator=None,
        path_space: str = "",
        created=None,
        slug=None,
    ) -> str:
        return self.mutate(
            lambda: create_link(
                self.base,
                arcs,
                titles=titles,
                creator=creator,
                path_space=path_space,
                created=created,
                slug=slug,
            )
        )

    def add_context(self, document: str) -> LinkContext:
        context = parse_context(document)

        def register():
            self.contexts[context.id] = context
            return context

        return self.mutate(register)

    # -------------------------------------------------------------- rendering

    def active_contexts(self, context_ids: list[str]) -> list[LinkContext]:
        out = []
        for cid in context_ids:
            if cid not in self.contexts:
                raise UnknownContext(cid)
            out.append(self.contexts[cid])
        return out

    def selected_links(self, elo_id: str, context_ids: list[str]) -> list[SelectedLink]:
        contexts = self.active_contexts(context_ids)
        return links_for_document(
            elo_id, contexts, self.graph, self.base, self.repo, self.ns
        )

    def page(
        self,
        elo_id: str,
        mode: str = "descriptive",
        context_ids: list[str] | None = None,
        nav: Nav | None = None,
    ) -> PageView:
        context_ids = list(context_ids or [])
        elo = store.get_elo(self.repo, elo_id)
        if mode == "slide":
            return render_slide(elo, nav=nav, active_contexts=context_ids)
        selected = self.selected_links(elo_id, context_ids)
        titles = {
            cid: self.contexts[cid].title_text
            for cid in context_ids
            if self.contexts[cid].title_text
        }
        return render_descriptive(
            elo,
            selected,
            self.base,
            nav=nav,
            context_titles=titles,
            active_contexts=context_ids,
            ns=self.ns,
        )

    def nav_for_occurrence(self, root: str, occurrence: int) -> Nav:
        return nav_for(self.repo, root, occurrence)
