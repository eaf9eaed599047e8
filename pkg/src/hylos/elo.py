"""Learning-object information model and metadata acquisition logic.

An Elo pairs XML paragraph content (plus an optional slide view) with a
LOM-subset metadata record and lists of reference identifiers into the
repository registries.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field, replace

from . import vocab
from .errors import EmptySource, MalformedBody, VocabError

ID_PATTERN = re.compile(r"^[a-z0-9-]+$")

DESCRIPTION_LIMIT = 500


@dataclass
class ParagraphContent:
    title: str
    body: str = "<body/>"
    headwords: list[str] = field(default_factory=list)
    sectional_titles: list[str] = field(default_factory=list)


@dataclass
class SlideContent:
    title: str
    bullets: list[str] = field(default_factory=list)
    body: str | None = None


@dataclass
class Technical:
    format: str | None = None
    size: int | None = None
    location: str | None = None
    created: str | None = None
    modified: str | None = None


@dataclass
class Lifecycle:
    author: str | None = None
    documentStatus: str | None = None


@dataclass
class Educational:
    semanticDensity: str | None = None
    difficulty: str | None = None
    context: str | None = None
    learningResourceType: str | None = None
    intendedEndUserRole: str | None = None


@dataclass
class LomMetadata:
    title: str | None = None
    description: str | None = None
    keywords: list[str] = field(default_factory=list)
    coverage: list[str] = field(default_factory=list)
    language: str | None = None
    structure: str | None = None
    aggregationLevel: int | None = None
    technical: Technical = field(default_factory=Technical)
    lifecycle: Lifecycle = field(default_factory=Lifecycle)
    educational: Educational = field(default_factory=Educational)

    def copy(self) -> "LomMetadata":
        return replace(
            self,
            keywords=list(self.keywords),
            coverage=list(self.coverage),
            technical=replace(self.technical),
            lifecycle=replace(self.lifecycle),
            educational=replace(self.educational),
        )

    def get_field(self, name: str):
        """Read a metadata field by its flat LOM name."""
        for holder in (self, self.technical, self.lifecycle, self.educational):
            if hasattr(holder, name):
                return getattr(holder, name)
        raise AttributeError(name)

    def set_field(self, name: str, value) -> None:
        for holder in (self, self.technical, self.lifecycle, self.educational):
            if hasattr(holder, name):
                setattr(holder, name, value)
                return
        raise AttributeError(name)


@dataclass
class Elo:
    id: str
    metadata: LomMetadata = field(default_factory=LomMetadata)
    paragraph: ParagraphContent | None = None
    slide: SlideContent | None = None
    glossary_refs: list[str] = field(default_factory=list)
    bibliography_refs: list[str] = field(default_factory=list)
    taxonomy_refs: list[str] = field(default_factory=list)
    person_refs: list[str] = field(default_factory=list)


@dataclass
class AuthorPresets:
    language: str | None = None
    intendedEndUserRole: str | None = None
    context: str | None = None
    obligatory: dict[str, object] = field(default_factory=dict)

    def validate(self) -> None:
        for name in ("intendedEndUserRole", "context"):
            value = getattr(self, name)
            if value is not None and value not in vocab.VOCABULARIES[name]:
                raise VocabError(name, value)
        for name, value in self.obligatory.items():
            allowed = vocab.VOCABULARIES.get(name)
            if allowed is not None and value not in allowed:
                raise VocabError(name, value)


def parse_body(body: str) -> ET.Element:
    try:
        return ET.fromstring(body)
    except ET.ParseError as exc:
        raise MalformedBody(str(exc)) from exc


def _normalize(text: str) -> str:
    return " ".join(text.split())


def _truncate_at_word(text: str, limit: int = DESCRIPTION_LIMIT) -> str:
    if len(text) <= limit:
        return text
    cut = text.rfind(" ", 0, limit + 1)
    if cut <= 0:
        return text[:limit]
    return text[:cut]


def first_text_block(body: str) -> str:
    """First paragraph-level text block of a body, whitespace-normalized."""
    root = parse_body(body)
    blocks = [root.text or ""]
    blocks.extend("".join(child.itertext()) for child in root)
    for block in blocks:
        normalized = _normalize(block)
        if normalized:
            return normalized
    return ""


def autogen_metadata(
    paragraph: ParagraphContent,
    tech: Technical,
    author: str,
    presets: AuthorPresets,
) -> LomMetadata:
    """Derive a metadata record from content, technical facts and presets.

    Title, coverage and description come from the paragraph; technical and
    lifecycle facts are copied; session defaults and last-used obligatory
    values come from the author presets. Purely derived: the same inputs
    always yield the same record.
    """
    presets.validate()
    description = _truncate_at_word(first_text_block(paragraph.body)) or None
    meta = LomMetadata(
        title=paragraph.title,
        description=description,
        coverage=list(paragraph.sectional_titles),
        language=presets.language,
        technical=replace(tech),
        lifecycle=Lifecycle(author=author),
    )
    meta.educational.intendedEndUserRole = presets.intendedEndUserRole
    for name in vocab.OBLIGATORY_FIELDS:
        if name in presets.obligatory:
            value = presets.obligatory[name]
            meta.set_field(name, list(value) if name == "keywords" else value)
    return meta


def validate_for_publication(elo: Elo) -> list[str]:
    """Names of missing obligatory fields and vocabulary violations.

    An empty report means the object is publishable. Never raises.
    """
    report = []
    meta = elo.metadata
    for name in vocab.OBLIGATORY_FIELDS:
        value = meta.get_field(name)
        if value is None or value == []:
            report.append(name)
    for name, allowed in vocab.VOCABULARIES.items():
        value = meta.get_field(name)
        if value is not None and value not in allowed:
            report.append(f"{name}: invalid vocabulary value")
    return report


def set_obligatory_fields(meta: LomMetadata, fields: dict) -> LomMetadata:
    """Return a copy of meta with the supplied obligatory fields replaced."""
    updated = meta.copy()
    for name, value in fields.items():
        if name not in vocab.OBLIGATORY_FIELDS:
            raise VocabError(name, value)
        allowed = vocab.VOCABULARIES.get(name)
        if allowed is not None and value not in allowed:
            raise VocabError(name, value)
        updated.set_field(name, list(value) if name == "keywords" else value)
    return updated


def derive_standard_slide(paragraph: ParagraphContent) -> SlideContent:
    """Recycle sectional titles (or headwords) into a standard slide."""
    bullets = paragraph.sectional_titles or paragraph.headwords
    if not bullets:
        raise EmptySource(
            "paragraph has neither sectional titles nor headwords"
        )
    return SlideContent(title=paragraph.title, bullets=list(bullets))
