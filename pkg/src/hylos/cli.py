"""Command-line client over the engine.

Every command operates on a repository directory (--repo, or HYLOS_REPO).
Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import sys
from functools import wraps

import click

from . import rdql, store
from .engine import Engine
from .errors import HylosError
from .linkbase import Arc


def _handle_domain_errors(fn):
    @wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except HylosError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)

    return wrapper


def _load(repo_path: str) -> Engine:
    if not repo_path:
        click.echo("error: no repository path (use --repo or HYLOS_REPO)", err=True)
        sys.exit(2)
    return Engine.load(repo_path)


@click.group()
@click.option(
    "--repo",
    envvar="HYLOS_REPO",
    type=click.Path(),
    default=None,
    help="Repository directory (env: HYLOS_REPO).",
)
@click.pass_context
def main(ctx, repo):
    """Semantic hypermedia engine for learning objects."""
    ctx.ensure_object(dict)
    ctx.obj["repo"] = repo


@main.command()
@click.argument("directory", type=click.Path(exists=True, file_okay=False))
@click.pass_context
@_handle_domain_errors
def ingest(ctx, directory):
    """Validate a repository layout and adopt it as the working repository."""
    engine = Engine.load(directory)
    target = ctx.obj["repo"]
    if target and str(target) != str(directory):
        engine.save(target)
    click.echo(
        f"ingested {len(engine.repo.elos)} ELOs, {len(engine.base.anchors)} anchors, "
        f"{len(engine.base.links)} links, {len(engine.contexts)} contexts"
    )


@main.command()
@click.option("--tree", "root", default=None, help="Show the tree under this root.")
@click.pass_context
@_handle_domain_errors
def ls(ctx, root):
    """List ELOs, or the tree view under a root."""
    engine = _load(ctx.obj["repo"])
    if root is None:
        for elo_id in sorted(engine.repo.elos):
            click.echo(elo_id)
        return
    for node in store.tree_view(engine.repo, root).flatten():
        click.echo("  " * node.depth + node.elo_id)


@main.group()
def elo():
    """Inspect learning objects."""


@elo.command("show")
@click.argument("elo_id")
@click.pass_context
@_handle_domain_errors
def elo_show(ctx, elo_id):
    from .elo import validate_for_publication

    engine = _load(ctx.obj["repo"])
    obj = store.get_elo(engine.repo, elo_id)
    meta = obj.metadata
    click.echo(f"id: {obj.id}")
    click.echo(f"title: {meta.title or ''}")
    click.echo(f"description: {meta.description or ''}")
    click.echo(f"keywords: {', '.join(meta.keywords)}")
    click.echo(f"difficulty: {meta.educational.difficulty or ''}")
    report = validate_for_publication(obj)
    click.echo("publishable: " + ("yes" if not report else "no (" + ", ".join(report) + ")"))


@main.group()
def anchor():
    """Manage anchors in the link base."""


@anchor.command("add")
@click.argument("resource")
@click.option("--selector", default=None, help='Selector path, e.g. "/paragraph/section[2]".')
@click.option("--title", default=None)
@click.option("--label", default=None)
@click.option("--slug", default=None, help="Explicit anchor id.")
@click.pass_context
@_handle_domain_errors
def anchor_add(ctx, resource, selector, title, label, slug):
    engine = _load(ctx.obj["repo"])
    anchor_id = engine.add_anchor(resource, selector=selector, title=title, label=label, slug=slug)
    engine.save(ctx.obj["repo"])
    click.echo(anchor_id)


@anchor.command("list")
@click.pass_context
@_handle_domain_errors
def anchor_list(ctx):
    engine = _load(ctx.obj["repo"])
    for a in sorted(engine.base.anchors.values(), key=lambda a: a.id):
        selector = str(a.selector) if a.selector else "(generic)"
        click.echo(f"{a.id}\t{a.resource}\t{selector}")


@main.group()
def link():
    """Manage links in the link base."""


@link.command("add")
@click.option("--from", "from_anchor", required=True, help="Source anchor id.")
@click.option("--to", "to_anchor", required=True, help="Target anchor id.")
@click.option("--arcrole", required=True, help="Absolute relation IRI.")
@click.option("--title", default=None, help="Link title (session language).")
@click.option("--lang", default="en")
@click.option("--creator", default=None)
@click.option("--space", "path_space", default="")
@click.option("--created", default=None, help="ISO-8601 creation date.")
@click.option("--slug", default=None, help="Explicit link id.")
@click.pass_context
@_handle_domain_errors
def link_add(ctx, from_anchor, to_anchor, arcrole, title, lang, creator, path_space, created, slug):
    engine = _load(ctx.obj["repo"])
    titles = [(lang, title)] if title else []
    link_id = engine.add_link(
        [Arc(from_anchor=from_anchor, to_anchor=to_anchor, arcrole=arcrole)],
        titles=titles,
        creator=creator,
        path_space=path_space,
        created=created,
        slug=slug,
    )
    engine.save(ctx.obj["repo"])
    click.echo(link_id)


@link.command("list")
@click.option("--space", "path_space_prefix", default=None)
@click.pass_context
@_handle_domain_errors
def link_list(ctx, path_space_prefix):
    from .linkbase import query_links

    engine = _load(ctx.obj["repo"])
    for l in query_links(engine.base, path_space_prefix=path_space_prefix):
        arcs = "; ".join(f"{a.from_anchor}->{a.to_anchor} [{a.arcrole}]" for a in l.arcs)
        click.echo(f"{l.id}\t{l.path_space}\t{arcs}")


@main.group()
def context():
    """Manage link contexts."""


@context.command("add")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
@_handle_domain_errors
def context_add(ctx, file):
    engine = _load(ctx.obj["repo"])
    with open(file, encoding="utf-8") as fh:
        registered = engine.add_context(fh.read())
    engine.save(ctx.obj["repo"])
    click.echo(registered.id)


@context.command("list")
@click.pass_context
@_handle_domain_errors
def context_list(ctx):
    engine = _load(ctx.obj["repo"])
    for c in sorted(engine.contexts.values(), key=lambda c: c.id):
        click.echo(f"{c.id}\t{c.title_text or ''}\t{c.creator or ''}")


@main.command()
@click.argument("query_text")
@click.pass_context
@_handle_domain_errors
def query(ctx, query_text):
    """Run a query and print the bindings as TSV."""
    engine = _load(ctx.obj["repo"])
    parsed = rdql.parse_and_expand(query_text)
    table = rdql.evaluate(parsed, engine.graph)
    click.echo(table.to_tsv(), nl=False)


@main.command()
@click.argument("elo_id")
@click.option("--mode", type=click.Choice(["descriptive", "slide"]), default="descriptive")
@click.option("--context", "context_ids", multiple=True, help="Activate a link context.")
@click.pass_context
@_handle_domain_errors
def render(ctx, elo_id, mode, context_ids):
    """Render an ELO page and print the HTML."""
    engine = _load(ctx.obj["repo"])
    view = engine.page(elo_id, mode=mode, context_ids=list(context_ids))
    click.echo(view.html, nl=False)


@main.group()
def graph():
    """Inspect the statement graph."""


@graph.command("dump")
@click.pass_context
@_handle_domain_errors
def graph_dump(ctx):
    engine = _load(ctx.obj["repo"])
    click.echo(engine.graph.to_ntriples(), nl=False)


@main.command()
@click.option("--port", envvar="HYLOS_PORT", default=8000, type=int, help="Port (env: HYLOS_PORT).")
@click.option("--host", default="127.0.0.1")
@click.pass_context
@_handle_domain_errors
def serve(ctx, port, host):
    """Start the HTTP service over the repository."""
    import uvicorn

    from .api import create_app

    engine = _load(ctx.obj["repo"])
    uvicorn.run(create_app(engine), host=host, port=port)


if __name__ == "__main__":
    main()
