"""Semantic hypermedia engine for self-contained learning objects.

Content carries LOM-subset metadata; hyperlinks live outside content in a
link base; everything translates into an RDF statement graph where links
are reified statements, and query-defined link contexts decide which
hyperlinks a rendered page shows.
"""

from .engine import Engine

__all__ = ["Engine"]
__version__ = "0.1.0"
