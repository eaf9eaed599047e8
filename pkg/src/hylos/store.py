"""Content repository: ELO storage plus the ordered, acyclic structure graph.

Objects may be re-used (a node can sit under several parents), so the
structure is a DAG with ordered child lists, not a strict tree. Views over
it are non-normalised: a re-used object appears once per distinct path from
the root.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import vocab
from .elo import Elo
from .errors import CycleError, DuplicateChild, NotFound, VocabError

REGISTRY_KINDS = ("glossary", "bibliography", "taxonomy", "person")


@dataclass
class TreeNode:
    elo_id: str
    depth: int
    path: tuple[int, ...]
    children: list["TreeNode"] = field(default_factory=list)

    def flatten(self) -> list["TreeNode"]:
        out = [self]
        for child in self.children:
            out.extend(child.flatten())
        return out


@dataclass
class Repository:
    elos: dict[str, Elo] = field(default_factory=dict)
    children: dict[str, list[str]] = field(default_factory=dict)
    registries: dict[str, dict[str, str]] = field(
        default_factory=lambda: {kind: {} for kind in REGISTRY_KINDS}
    )

    def child_ids(self, parent: str) -> list[str]:
        return self.children.get(parent, [])

    def parent_ids(self, child: str) -> list[str]:
        return [p for p, kids in self.children.items() if child in kids]

    def roots(self) -> list[str]:
        with_parent = {c for kids in self.children.values() for c in kids}
        return [i for i in self.elos if i not in with_parent]

    def dangling_refs(self, elo: Elo) -> list[str]:
        missing = []
        for kind, refs in (
            ("glossary", elo.glossary_refs),
            ("bibliography", elo.bibliography_refs),
            ("taxonomy", elo.taxonomy_refs),
            ("person", elo.person_refs),
        ):
            for ref in refs:
                if ref not in self.registries.get(kind, {}):
                    missing.append(f"{kind}:{ref}")
        return missing


def put_elo(repo: Repository, elo: Elo) -> None:
    """Upsert by id; the edge relation is untouched."""
    repo.elos[elo.id] = elo


def get_elo(repo: Repository, elo_id: str) -> Elo:
    try:
        return repo.elos[elo_id]
    except KeyError:
        raise NotFound(f"no ELO {elo_id!r}") from None


def _reachable(repo: Repository, start: str, target: str) -> bool:
    stack = [start]
    seen = set()
    while stack:
        node = stack.pop()
        if node == target:
            return True
        if node in seen:
            continue
        seen.add(node)
        stack.extend(repo.child_ids(node))
    return False


def attach_child(repo: Repository, parent: str, child: str, position: int | None = None) -> None:
    """Insert child at position in parent's ordered list (clamped).

    Re-use is allowed (a child may gain multiple parents); cycles and
    duplicate membership under the same parent are rejected eagerly.
    """
    if parent not in repo.elos:
        raise NotFound(f"no ELO {parent!r}")
    if child not in repo.elos:
        raise NotFound(f"no ELO {child!r}")
    if child == parent or _reachable(repo, child, parent):
        raise CycleError(f"attaching {child!r} under {parent!r} would create a cycle")
    siblings = repo.children.setdefault(parent, [])
    if child in siblings:
        raise DuplicateChild(f"{child!r} already under {parent!r}")
    if position is None:
        position = len(siblings)
    position = max(0, min(position, len(siblings)))
    siblings.insert(position, child)


def detach_child(repo: Repository, parent: str, child: str) -> None:
    siblings = repo.children.get(parent, [])
    if child not in siblings:
        raise NotFound(f"{child!r} is not under {parent!r}")
    siblings.remove(child)


def tree_view(repo: Repository, root: str, max_depth: int | None = None) -> TreeNode:
    """Depth-first expansion from root; re-used nodes repeat per path."""
    if root not in repo.elos:
        raise NotFound(f"no ELO {root!r}")

    def expand(node_id: str, depth: int, path: tuple[int, ...]) -> TreeNode:
        node = TreeNode(elo_id=node_id, depth=depth, path=path)
        if max_depth is None or depth < max_depth:
            for ordinal, child in enumerate(repo.child_ids(node_id)):
                node.children.append(expand(child, depth + 1, path + (ordinal,)))
        return node

    return expand(root, 0, ())


def linearize(repo: Repository, root: str) -> list[str]:
    """Depth-first preorder access path, repeats included for re-use."""
    return [node.elo_id for node in tree_view(repo, root).flatten()]


def filter_by_difficulty(repo: Repository, ids: list[str], ceiling: str) -> list[str]:
    """Keep ids at or below the difficulty ceiling; unrated ELOs are kept."""
    if ceiling not in vocab.DIFFICULTY:
        raise VocabError("difficulty", ceiling)
    limit = vocab.difficulty_rank(ceiling)
    kept = []
    for elo_id in ids:
        elo = get_elo(repo, elo_id)
        rating = elo.metadata.educational.difficulty
        if rating is None or vocab.difficulty_rank(rating) <= limit:
            kept.append(elo_id)
    return kept
