"""HTML presentation of ELOs with on-the-fly link decoration.

Pages are built from immutable snapshots: the same repository, link base
and context selection always produce byte-identical HTML. Context-selected
hyperlinks wrap the spans their source anchors address; generic anchors
(whole-document) collect into a trailing "Related" list.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from .contexts import SelectedLink
from .elo import Elo, derive_standard_slide, parse_body
from .errors import DanglingSelector, NotFound, RangeError, RenderError
from .linkbase import LinkBase, resolve_in
from .rdf import Namespace
from .store import Repository, TreeNode, tree_view

# body tags emitted as themselves; anything else becomes a classed div
_SAFE_TAGS = {
    "p", "em", "strong", "b", "i", "u", "ul", "ol", "li", "code", "pre",
    "span", "div", "section", "blockquote", "br", "img", "table", "tr",
    "td", "th", "h1", "h2", "h3", "h4", "h5", "h6",
}
_SAFE_ATTRS = {"src", "alt", "title", "class"}
_VOID_TAGS = {"br", "img"}


def escape(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


@dataclass
class Nav:
    prev: str | None = None
    next: str | None = None
    up: str | None = None


@dataclass
class PageView:
    elo_id: str
    mode: str  # "descriptive" | "slide"
    html: str
    nav: Nav = field(default_factory=Nav)
    active_contexts: list[str] = field(default_factory=list)
    badges: dict[str, str] = field(default_factory=dict)


def href_for_resource(resource: str) -> str:
    return resource if "://" in resource else f"/elos/{resource}"


@dataclass
class _Decoration:
    """One hyperlink to draw: where it points and how it is titled."""

    href: str
    title: str | None
    link_iri: str


def _anchor_open(decorations: list[_Decoration]) -> str:
    hrefs = ",".join(d.href for d in decorations)
    titles = [d.title for d in decorations if d.title]
    title_attr = f' title="{escape("; ".join(titles))}"' if titles else ""
    return f'<a class="elo-anchor-link" href="{escape(hrefs)}"{title_attr}>'


def _render_text_with_ranges(text: str, ranged: list[tuple[int, int, _Decoration]]) -> str:
    """Wrap character ranges of a text node, nesting contained ranges.

    Identical ranges merge into one anchor; partial overlaps are clipped to
    start after the earlier range closes.
    """
    groups: dict[tuple[int, int], list[_Decoration]] = {}
    for start, length, deco in ranged:
        groups.setdefault((start, length), []).append(deco)
    intervals = sorted(groups, key=lambda r: (r[0], -r[1], groups[r][0].link_iri))
    for key in intervals:
        groups[key].sort(key=lambda d: d.link_iri)

    def emit(span_start: int, span_end: int, pending: list[tuple[int, int]]) -> str:
        out = []
        cursor = span_start
        i = 0
        while i < len(pending):
            start, length = pending[i]
            start = max(start, cursor)
            end = min(start + length, span_end)
            if start >= end:
                i += 1
                continue
            out.append(escape(text[cursor:start]))
            # contained intervals nest inside this one
            inner = []
            j = i + 1
            while j < len(pending) and pending[j][0] < end:
                inner.append(pending[j])
                j += 1
            out.append(_anchor_open(groups[pending[i]]))
            out.append(emit(start, end, inner))
            out.append("</a>")
            cursor = end
            i = j
        out.append(escape(text[cursor:span_end]))
        return "".join(out)

    return emit(0, len(text), intervals)


def _render_element(
    el: ET.Element,
    element_decos: dict[int, list[_Decoration]],
    range_decos: dict[int, list[tuple[int, int, _Decoration]]],
) -> str:
    tag = el.tag
    if tag in _SAFE_TAGS:
        open_tag, close_tag = tag, tag
        attrs = {k: v for k, v in el.attrib.items() if k in _SAFE_ATTRS}
    else:
        open_tag = f'div class="elo-xml-{escape(tag)}"'
        close_tag = "div"
        attrs = {}
    attr_text = "".join(f' {k}="{escape(v)}"' for k, v in sorted(attrs.items()))
    if tag in _VOID_TAGS:
        inner = ""
        body = f"<{open_tag}{attr_text}/>"
        return _wrap_element(body, element_decos.get(id(el), []))

    ranges = range_decos.get(id(el), [])
    parts = []
    if ranges and len(el) == 0:
        parts.append(_render_text_with_ranges(el.text or "", ranges))
    else:
        parts.append(escape(el.text or ""))
        for child in el:
            parts.append(_render_element(child, element_decos, range_decos))
            parts.append(escape(child.tail or ""))
    inner = "".join(parts)
    body = f"<{open_tag}{attr_text}>{inner}</{close_tag}>"
    decos = list(element_decos.get(id(el), []))
    # ranges that could not apply inside (mixed content) wrap the element
    if ranges and len(el) > 0:
        decos.extend(d for _, _, d in ranges)
    return _wrap_element(body, decos)


def _wrap_element(html: str, decorations: list[_Decoration]) -> str:
    if not decorations:
        return html
    merged: dict[str, list[_Decoration]] = {}
    for deco in sorted(decorations, key=lambda d: d.link_iri):
        merged.setdefault(deco.href, []).append(deco)
    out = html
    for href in sorted(merged):
        out = _anchor_open(merged[href]) + out + "</a>"
    return out


def _badges(elo: Elo) -> dict[str, str]:
    badges = {}
    if elo.metadata.educational.difficulty:
        badges["difficulty"] = elo.metadata.educational.difficulty
    if elo.metadata.educational.semanticDensity:
        badges["semanticDensity"] = elo.metadata.educational.semanticDensity
    return badges


def _nav_html(nav: Nav) -> str:
    parts = ['<nav class="elo-nav">']
    for label, target in (("prev", nav.prev), ("up", nav.up), ("next", nav.next)):
        if target:
            parts.append(
                f'<a class="elo-nav-{label}" href="{escape(href_for_resource(target))}">{label}</a>'
            )
        else:
            parts.append(f'<span class="elo-nav-{label} elo-nav-disabled">{label}</span>')
    parts.append("</nav>")
    return "".join(parts)


def _badges_html(badges: dict[str, str]) -> str:
    if not badges:
        return ""
    spans = "".join(
        f'<span class="elo-badge elo-badge-{name}">{name}: {escape(value)}</span>'
        for name, value in sorted(badges.items())
    )
    return f'<div class="elo-badges">{spans}</div>'


def _document(title: str, body_html: str) -> str:
    return (
        "<!DOCTYPE html>\n"
        '<html><head><meta charset="utf-8"/>'
        f"<title>{escape(title)}</title></head>\n"
        f"<body>\n{body_html}\n</body></html>\n"
    )


def render_descriptive(
    elo: Elo,
    selected: list[SelectedLink],
    base: LinkBase,
    nav: Nav | None = None,
    context_titles: dict[str, str] | None = None,
    active_contexts: list[str] | None = None,
    ns: Namespace | None = None,
) -> PageView:
    """Descriptive page: transformed paragraph body with inline hyperlinks
    at anchored spans, a Related list for generic-anchor links, navigation
    controls and metadata badges."""
    ns = ns or Namespace()
    nav = nav or Nav()
    context_titles = context_titles or {}
    if elo.paragraph is None:
        raise RenderError(f"ELO {elo.id!r} has no paragraph content")
    root = parse_body(elo.paragraph.body)

    anchors_by_iri = {ns.iri(a.id).value: a for a in base.anchors.values()}
    element_decos: dict[int, list[_Decoration]] = {}
    range_decos: dict[int, list[tuple[int, int, _Decoration]]] = {}
    related: list[tuple[str, _Decoration]] = []

    for sl in sorted(selected, key=lambda s: s.link.value):
        source = anchors_by_iri.get(sl.object.value)
        target = anchors_by_iri.get(sl.subject.value)
        if source is None or source.resource != elo.id:
            raise RenderError(f"link {sl.link.value} does not start on {elo.id!r}")
        if target is not None:
            href = href_for_resource(target.resource)
        else:
            href = sl.subject.value  # external target anchor
        title_parts = [p for p in (sl.title, context_titles.get(sl.via_context)) if p]
        deco = _Decoration(
            href=href,
            title=" — ".join(title_parts) if title_parts else None,
            link_iri=sl.link.value,
        )
        if source.is_generic:
            related.append((sl.title or href, deco))
            continue
        try:
            node, char_range = resolve_in(source.selector, root)
        except (DanglingSelector, RangeError) as exc:
            raise RenderError(f"anchor {source.id!r} no longer resolves: {exc}") from exc
        if char_range is None:
            element_decos.setdefault(id(node), []).append(deco)
        else:
            start, length = char_range
            range_decos.setdefault(id(node), []).append((start, length, deco))

    body_html = _render_element(root, element_decos, range_decos)
    parts = [
        _nav_html(nav),
        f'<h1 class="elo-title">{escape(elo.paragraph.title)}</h1>',
        _badges_html(_badges(elo)),
        f'<div class="elo-body">{body_html}</div>',
    ]
    if related:
        items = "".join(
            f'<li>{_anchor_open([deco])}{escape(label)}</a></li>'
            for label, deco in sorted(related, key=lambda r: r[1].link_iri)
        )
        parts.append(f'<ul class="elo-related">{items}</ul>')
    html = _document(elo.paragraph.title, "\n".join(parts))
    return PageView(
        elo_id=elo.id,
        mode="descriptive",
        html=html,
        nav=nav,
        active_contexts=list(active_contexts or []),
        badges=_badges(elo),
    )


def render_slide(elo: Elo, nav: Nav | None = None, active_contexts: list[str] | None = None) -> PageView:
    """Slide page: authored slide content wins, else the standard slide."""
    nav = nav or Nav()
    slide = elo.slide
    if slide is None:
        if elo.paragraph is None:
            raise RenderError(f"ELO {elo.id!r} has no content")
        slide = derive_standard_slide(elo.paragraph)
    bullets = "".join(f"<li>{escape(b)}</li>" for b in slide.bullets)
    parts = [
        _nav_html(nav),
        f'<h1 class="elo-title">{escape(slide.title)}</h1>',
        _badges_html(_badges(elo)),
    ]
    if bullets:
        parts.append(f'<ul class="elo-slide-bullets">{bullets}</ul>')
    if slide.body:
        body_html = _render_element(parse_body(slide.body), {}, {})
        parts.append(f'<div class="elo-body">{body_html}</div>')
    html = _document(slide.title, "\n".join(parts))
    return PageView(
        elo_id=elo.id,
        mode="slide",
        html=html,
        nav=nav,
        active_contexts=list(active_contexts or []),
        badges=_badges(elo),
    )


def nav_for(repo: Repository, root: str, occurrence: int) -> Nav:
    """Navigation for one occurrence (index) in the linear access path."""
    view = tree_view(repo, root)
    flat: list[tuple[TreeNode, str | None]] = []

    def walk(node: TreeNode, parent: str | None) -> None:
        flat.append((node, parent))
        for child in node.children:
            walk(child, node.elo_id)

    walk(view, None)
    if not 0 <= occurrence < len(flat):
        raise NotFound(f"no occurrence {occurrence} under root {root!r}")
    _, parent = flat[occurrence]
    return Nav(
        prev=flat[occurrence - 1][0].elo_id if occurrence > 0 else None,
        next=flat[occurrence + 1][0].elo_id if occurrence + 1 < len(flat) else None,
        up=parent,
    )
