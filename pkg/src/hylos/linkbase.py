"""External link base: anchors and links stored apart from content.

Anchors address whole resources (generic) or XML fragments via a restricted
selector path; links bundle directed arcs with metadata and live in
slash-separated path spaces.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from .elo import parse_body
from .errors import (
    DanglingSelector,
    EmptyLink,
    HylosError,
    InvalidArcrole,
    InvalidSelector,
    NotFound,
    RangeError,
)
from .store import Repository

_STEP_RE = re.compile(r"^([A-Za-z_][\w.-]*)(?:\[(\d+)\])?$")


@dataclass(frozen=True)
class Selector:
    steps: tuple[tuple[str, int], ...]
    char_range: tuple[int, int] | None = None  # (start, length)

    def __str__(self) -> str:
        parts = []
        for name, pos in self.steps:
            parts.append(name if pos == 1 else f"{name}[{pos}]")
        text = "/" + "/".join(parts)
        if self.char_range is not None:
            start, length = self.char_range
            text += f"@{start}+{length}"
        return text

    @classmethod
    def parse(cls, text: str) -> "Selector":
        char_range = None
        if "@" in text:
            text, _, range_part = text.partition("@")
            m = re.match(r"^(\d+)\+(\d+)$", range_part)
            if not m:
                raise InvalidSelector(f"bad character range {range_part!r}")
            char_range = (int(m.group(1)), int(m.group(2)))
        if not text.startswith("/"):
            raise InvalidSelector(f"selector must be absolute: {text!r}")
        steps = []
        for raw in text[1:].split("/"):
            m = _STEP_RE.match(raw)
            if not m:
                raise InvalidSelector(f"bad step {raw!r}")
            steps.append((m.group(1), int(m.group(2) or 1)))
        if not steps:
            raise InvalidSelector("empty selector")
        return cls(steps=tuple(steps), char_range=char_range)

    def validate(self) -> None:
        if not self.steps:
            raise InvalidSelector("empty selector")
        for name, pos in self.steps:
            if pos < 1:
                raise InvalidSelector(f"position {pos} in step {name!r} (1-based)")
        if self.char_range is not None:
            start, length = self.char_range
            if start < 0 or length < 1:
                raise InvalidSelector(f"bad character range {self.char_range}")


@dataclass
class Anchor:
    id: str
    resource: str  # ELO id or external IRI (contains "://")
    selector: Selector | None = None
    title: str | None = None
    label: str | None = None

    @property
    def is_generic(self) -> bool:
        return self.selector is None

    @property
    def is_external(self) -> bool:
        return "://" in self.resource


@dataclass(frozen=True)
class Arc:
    from_anchor: str
    to_anchor: str
    arcrole: str
    title: str | None = None


@dataclass
class Link:
    id: str
    arcs: list[Arc]
    titles: list[tuple[str, str]] = field(default_factory=list)  # (lang, text)
    creator: str | None = None
    created: str | None = None
    path_space: str = ""


@dataclass
class LinkBase:
    anchors: dict[str, Anchor] = field(default_factory=dict)
    links: dict[str, Link] = field(default_factory=dict)
    _seq: int = 0

    def mint_id(self, kind: str) -> str:
        while True:
            self._seq += 1
            candidate = f"{kind}-{self._seq}"
            if candidate not in self.anchors and candidate not in self.links:
                return candidate

    def integrity_violations(self, repo: Repository) -> list[str]:
        problems = []
        for anchor in self.anchors.values():
            if not anchor.is_external and anchor.resource not in repo.elos:
                problems.append(
                    f"anchor {anchor.id!r} references missing ELO {anchor.resource!r}"
                )
        for link in self.links.values():
            for arc in link.arcs:
                for endpoint in (arc.from_anchor, arc.to_anchor):
                    if endpoint not in self.anchors:
                        problems.append(
                            f"link {link.id!r} references missing anchor {endpoint!r}"
                        )
        return problems


def create_anchor(
    base: LinkBase,
    repo: Repository,
    resource: str,
    selector: Selector | None = None,
    title: str | None = None,
    label: str | None = None,
    slug: str | None = None,
) -> str:
    """Store an anchor and return its id.

    A missing selector denotes a generic anchor over the whole resource.
    """
    if "://" not in resource and resource not in repo.elos:
        raise NotFound(f"no ELO {resource!r}")
    if selector is not None:
        selector.validate()
    anchor_id = slug or base.mint_id("anchor")
    if anchor_id in base.anchors:
        raise InvalidSelector(f"anchor id {anchor_id!r} already taken")
    base.anchors[anchor_id] = Anchor(
        id=anchor_id, resource=resource, selector=selector, title=title, label=label
    )
    return anchor_id


def resolve_selector(selector: Selector, body: str) -> tuple[ET.Element, tuple[int, int] | None]:
    """Resolve a selector against a paragraph body.

    Returns the addressed element and the optional character span into its
    text content. Deterministic: same inputs, same span.
    """
    return resolve_in(selector, parse_body(body))


def resolve_in(selector: Selector, root: ET.Element) -> tuple[ET.Element, tuple[int, int] | None]:
    """Resolve a selector within an already-parsed body tree."""
    selector.validate()
    name, pos = selector.steps[0]
    if root.tag != name or pos != 1:
        raise DanglingSelector(f"root step {name}[{pos}] does not match <{root.tag}>")
    node = root
    for name, pos in selector.steps[1:]:
        matches = [child for child in node if child.tag == name]
        if pos > len(matches):
            raise DanglingSelector(f"no {name}[{pos}] under <{node.tag}>")
        node = matches[pos - 1]
    if selector.char_range is not None:
        start, length = selector.char_range
        text = "".join(node.itertext())
        if start + length > len(text):
            raise RangeError(
                f"range {start}+{length} exceeds text length {len(text)}"
            )
    return node, selector.char_range


def create_link(
    base: LinkBase,
    arcs: list[Arc],
    titles: list[tuple[str, str]] | None = None,
    creator: str | None = None,
    path_space: str = "",
    created: str | None = None,
    slug: str | None = None,
) -> str:
    """Store a link; arc endpoints must exist and arcroles be absolute IRIs."""
    if not arcs:
        raise EmptyLink("a link needs at least one arc")
    for arc in arcs:
        for endpoint in (arc.from_anchor, arc.to_anchor):
            if endpoint not in base.anchors:
                raise NotFound(f"no anchor {endpoint!r}")
        if "://" not in arc.arcrole:
            raise InvalidArcrole(f"arcrole must be an absolute IRI: {arc.arcrole!r}")
    link_id = slug or base.mint_id("link")
    if link_id in base.links:
        raise EmptyLink(f"link id {link_id!r} already taken")
    base.links[link_id] = Link(
        id=link_id,
        arcs=list(arcs),
        titles=list(titles or []),
        creator=creator,
        created=created,
        path_space=path_space,
    )
    return link_id


def query_links(
    base: LinkBase,
    path_space_prefix: str | None = None,
    touching_anchor: str | None = None,
    direction: str | None = None,
) -> list[Link]:
    """Conjunctive link retrieval, ordered by (path_space, id)."""
    results = []
    for link in base.links.values():
        if path_space_prefix is not None and not link.path_space.startswith(path_space_prefix):
            continue
        if touching_anchor is not None:
            if direction == "from":
                hit = any(a.from_anchor == touching_anchor for a in link.arcs)
            elif direction == "to":
                hit = any(a.to_anchor == touching_anchor for a in link.arcs)
            else:
                hit = any(
                    touching_anchor in (a.from_anchor, a.to_anchor) for a in link.arcs
                )
            if not hit:
                continue
        results.append(link)
    results.sort(key=lambda l: (l.path_space, l.id))
    return results


class DependentAnchors(HylosError):
    def __init__(self, elo_id: str, dependents: list[str]):
        self.dependents = dependents
        super().__init__(
            f"ELO {elo_id!r} has dependent anchors {dependents}; use cascade to remove"
        )


def delete_elo(base: LinkBase, repo: Repository, elo_id: str, cascade: bool = False) -> None:
    """Remove an ELO; refuses while anchors depend on it unless cascading."""
    if elo_id not in repo.elos:
        raise NotFound(f"no ELO {elo_id!r}")
    dependents = [a.id for a in base.anchors.values() if a.resource == elo_id]
    if dependents and not cascade:
        raise DependentAnchors(elo_id, dependents)
    for anchor_id in dependents:
        dependent_links = [
            l.id
            for l in base.links.values()
            if any(anchor_id in (a.from_anchor, a.to_anchor) for a in l.arcs)
        ]
        for link_id in dependent_links:
            base.links.pop(link_id, None)
        del base.anchors[anchor_id]
    del repo.elos[elo_id]
    repo.children.pop(elo_id, None)
    for kids in repo.children.values():
        while elo_id in kids:
            kids.remove(elo_id)
