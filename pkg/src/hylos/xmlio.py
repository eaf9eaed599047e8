"""On-disk XML formats: ELO documents, the link base, registries, config.

One file per ELO under elos/, a single linkbase.xml, one context file per
definition under contexts/, registry entries under registries/ and a config
file holding the IRI namespace plus the structure edges. Everything is
UTF-8 XML so a repository stays inspectable and diffable.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from xml.dom import minidom

from .elo import (
    Educational,
    Elo,
    Lifecycle,
    LomMetadata,
    ParagraphContent,
    SlideContent,
    Technical,
)
from .errors import ParseError
from .linkbase import Anchor, Arc, Link, LinkBase, Selector
from .store import REGISTRY_KINDS, Repository

_META_SIMPLE = (
    "title",
    "description",
    "language",
    "structure",
)
_TECH_FIELDS = ("format", "size", "location", "created", "modified")
_EDU_FIELDS = (
    "semanticDensity",
    "difficulty",
    "context",
    "learningResourceType",
    "intendedEndUserRole",
)
_REF_KINDS = ("glossary", "bibliography", "taxonomy", "person")


def _pretty(root: ET.Element) -> str:
    raw = ET.tostring(root, encoding="unicode")
    doc = minidom.parseString(raw)
    text = doc.toprettyxml(indent="  ", encoding=None)
    lines = [line for line in text.splitlines() if line.strip()]
    lines[0] = '<?xml version="1.0" encoding="UTF-8"?>'
    return "\n".join(lines) + "\n"


def _sub(parent: ET.Element, tag: str, text: str | None = None, **attrs) -> ET.Element:
    el = ET.SubElement(parent, tag, {k: v for k, v in attrs.items() if v is not None})
    if text is not None:
        el.text = text
    return el


def elo_to_xml(elo: Elo) -> str:
    root = ET.Element("elo", {"id": elo.id})
    meta = ET.SubElement(root, "metadata")
    m = elo.metadata
    for name in _META_SIMPLE:
        value = getattr(m, name)
        if value is not None:
            _sub(meta, name, str(value))
    if m.aggregationLevel is not None:
        _sub(meta, "aggregationLevel", str(m.aggregationLevel))
    for kw in m.keywords:
        _sub(meta, "keyword", kw)
    for cv in m.coverage:
        _sub(meta, "coverage", cv)
    for name in _TECH_FIELDS:
        value = getattr(m.technical, name)
        if value is not None:
            _sub(meta, name, str(value))
    if m.lifecycle.author is not None:
        _sub(meta, "author", m.lifecycle.author)
    if m.lifecycle.documentStatus is not None:
        _sub(meta, "documentStatus", m.lifecycle.documentStatus)
    for name in _EDU_FIELDS:
        value = getattr(m.educational, name)
        if value is not None:
            _sub(meta, name, value)
    if elo.paragraph is not None:
        para = ET.SubElement(root, "paragraph")
        _sub(para, "title", elo.paragraph.title)
        for hw in elo.paragraph.headwords:
            _sub(para, "headword", hw)
        for st in elo.paragraph.sectional_titles:
            _sub(para, "sectionalTitle", st)
        body = ET.SubElement(para, "body")
        body.append(ET.fromstring(elo.paragraph.body))
    if elo.slide is not None:
        slide = ET.SubElement(root, "slide")
        _sub(slide, "title", elo.slide.title)
        for b in elo.slide.bullets:
            _sub(slide, "bullet", b)
        if elo.slide.body:
            sbody = ET.SubElement(slide, "body")
            sbody.append(ET.fromstring(elo.slide.body))
    refs = ET.SubElement(root, "refs")
    for kind, values in zip(
        _REF_KINDS,
        (elo.glossary_refs, elo.bibliography_refs, elo.taxonomy_refs, elo.person_refs),
    ):
        for ref in values:
            _sub(refs, kind, ref=ref)
    return _pretty(root)


def _texts(el: ET.Element, tag: str) -> list[str]:
    return [(child.text or "") for child in el.findall(tag)]


def _text(el: ET.Element, tag: str) -> str | None:
    child = el.find(tag)
    return None if child is None else (child.text or "")


def _inner_xml(body: ET.Element) -> str | None:
    children = list(body)
    if not children:
        return None
    return ET.tostring(children[0], encoding="unicode").strip()


def elo_from_xml(text: str, file: str | None = None) -> Elo:
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise ParseError(str(exc), file) from exc
    if root.tag != "elo" or not root.get("id"):
        raise ParseError("root must be <elo id=...>", file)
    meta_el = root.find("metadata")
    meta = LomMetadata()
    if meta_el is not None:
        for name in _META_SIMPLE:
            setattr(meta, name, _text(meta_el, name))
        agg = _text(meta_el, "aggregationLevel")
        meta.aggregationLevel = int(agg) if agg else None
        meta.keywords = _texts(meta_el, "keyword")
        meta.coverage = _texts(meta_el, "coverage")
        size = _text(meta_el, "size")
        meta.technical = Technical(
            format=_text(meta_el, "format"),
            size=int(size) if size else None,
            location=_text(meta_el, "location"),
            created=_text(meta_el, "created"),
            modified=_text(meta_el, "modified"),
        )
        meta.lifecycle = Lifecycle(
            author=_text(meta_el, "author"),
            documentStatus=_text(meta_el, "documentStatus"),
        )
        meta.educational = Educational(
            **{name: _text(meta_el, name) for name in _EDU_FIELDS}
        )
    paragraph = None
    para_el = root.find("paragraph")
    if para_el is not None:
        body_el = para_el.find("body")
        paragraph = ParagraphContent(
            title=_text(para_el, "title") or "",
            headwords=_texts(para_el, "headword"),
            sectional_titles=_texts(para_el, "sectionalTitle"),
            body=(_inner_xml(body_el) if body_el is not None else None) or "<body/>",
        )
    slide = None
    slide_el = root.find("slide")
    if slide_el is not None:
        sbody = slide_el.find("body")
        slide = SlideContent(
            title=_text(slide_el, "title") or "",
            bullets=_texts(slide_el, "bullet"),
            body=_inner_xml(sbody) if sbody is not None else None,
        )
    refs_el = root.find("refs")
    refs = {kind: [] for kind in _REF_KINDS}
    if refs_el is not None:
        for kind in _REF_KINDS:
            refs[kind] = [c.get("ref") for c in refs_el.findall(kind) if c.get("ref")]
    return Elo(
        id=root.get("id"),
        metadata=meta,
        paragraph=paragraph,
        slide=slide,
        glossary_refs=refs["glossary"],
        bibliography_refs=refs["bibliography"],
        taxonomy_refs=refs["taxonomy"],
        person_refs=refs["person"],
    )


def linkbase_to_xml(base: LinkBase) -> str:
    root = ET.Element("linkbase")
    for anchor in sorted(base.anchors.values(), key=lambda a: a.id):
        _sub(
            root,
            "anchor",
            id=anchor.id,
            resource=anchor.resource,
            selector=str(anchor.selector) if anchor.selector else None,
            title=anchor.title,
            label=anchor.label,
        )
    for link in sorted(base.links.values(), key=lambda l: l.id):
        link_el = _sub(
            root,
            "link",
            id=link.id,
            space=link.path_space or None,
            creator=link.creator,
            created=link.created,
        )
        for arc in link.arcs:
            _sub(
                link_el,
                "arc",
                **{"from": arc.from_anchor, "to": arc.to_anchor},
                arcrole=arc.arcrole,
                title=arc.title,
            )
        for lang, text in link.titles:
            title_el = _sub(link_el, "title", text)
            if lang:
                title_el.set("lang", lang)
    return _pretty(root)


def linkbase_from_xml(text: str, file: str | None = None) -> LinkBase:
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise ParseError(str(exc), file) from exc
    if root.tag != "linkbase":
        raise ParseError("root must be <linkbase>", file)
    base = LinkBase()
    for a in root.findall("anchor"):
        anchor = Anchor(
            id=a.get("id"),
            resource=a.get("resource"),
            selector=Selector.parse(a.get("selector")) if a.get("selector") else None,
            title=a.get("title"),
            label=a.get("label"),
        )
        if not anchor.id or not anchor.resource:
            raise ParseError("anchor needs id and resource", file)
        base.anchors[anchor.id] = anchor
    for l in root.findall("link"):
        arcs = [
            Arc(
                from_anchor=arc.get("from"),
                to_anchor=arc.get("to"),
                arcrole=arc.get("arcrole"),
                title=arc.get("title"),
            )
            for arc in l.findall("arc")
        ]
        titles = [(t.get("lang"), t.text or "") for t in l.findall("title")]
        link = Link(
            id=l.get("id"),
            arcs=arcs,
            titles=titles,
            creator=l.get("creator"),
            created=l.get("created"),
            path_space=l.get("space") or "",
        )
        if not link.id or not arcs:
            raise ParseError("link needs id and at least one arc", file)
        base.links[link.id] = link
    return base


def registry_to_xml(kind: str, entries: dict[str, str]) -> str:
    root = ET.Element("registry", {"kind": kind})
    for entry_id in sorted(entries):
        _sub(root, "entry", entries[entry_id], id=entry_id)
    return _pretty(root)


def registry_from_xml(text: str, file: str | None = None) -> tuple[str, dict[str, str]]:
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise ParseError(str(exc), file) from exc
    if root.tag != "registry" or root.get("kind") not in REGISTRY_KINDS:
        raise ParseError("root must be <registry kind=...>", file)
    return root.get("kind"), {
        e.get("id"): (e.text or "") for e in root.findall("entry") if e.get("id")
    }


def config_to_xml(namespace: str, repo: Repository) -> str:
    root = ET.Element("config")
    _sub(root, "namespace", namespace)
    structure = ET.SubElement(root, "structure")
    for parent in sorted(repo.children):
        if not repo.children[parent]:
            continue
        node = _sub(structure, "node", id=parent)
        for child in repo.children[parent]:
            _sub(node, "child", ref=child)
    return _pretty(root)


def config_from_xml(text: str, file: str | None = None) -> tuple[str, dict[str, list[str]]]:
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise ParseError(str(exc), file) from exc
    namespace = _text(root, "namespace") or ""
    children: dict[str, list[str]] = {}
    structure = root.find("structure")
    if structure is not None:
        for node in structure.findall("node"):
            children[node.get("id")] = [
                c.get("ref") for c in node.findall("child") if c.get("ref")
            ]
    return namespace, children
