"""Deterministic node ordering by iterated longest-path extraction.

Positions are assigned 1..n: the source gets 1, the sink gets n, and the
remaining nodes are numbered by repeatedly taking the longest source-to-sink
path that still contains an unnumbered node and walking it in order. Tied
longest paths are ranked by the SHA-224 digest of their nodes' basic
property strings (largest digest wins); paths whose digests are also equal
are resolved by a fixed positional rule so the whole procedure is
deterministic. Identical architectures therefore always produce identical
orderings, no matter how their nodes and edges were enumerated on input.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Mapping

from .errors import (
    AmbiguousSinkError,
    AmbiguousSourceError,
    BrokenPathError,
    NoNodesError,
    PathExplosionError,
    UnreachableNodeError,
)
from .model import ArchGraph, validate_graph
from .unitformat import basic_string

DEFAULT_MAX_PATHS = 100_000

_VALIDATION_ERRORS = {
    "NoNodes": NoNodesError,
    "AmbiguousSource": AmbiguousSourceError,
    "AmbiguousSink": AmbiguousSinkError,
}


@dataclass(frozen=True)
class CanonicalOrder:
    """A bijection node-name <-> position in 1..n."""

    positions: Mapping[str, int]
    n: int

    def position_of(self, name: str) -> int:
        return self.positions[name]

    def name_at(self, position: int) -> str:
        return self.by_position[position - 1]

    @property
    def by_position(self) -> tuple[str, ...]:
        ordered = sorted(self.positions, key=self.positions.__getitem__)
        return tuple(ordered)


@dataclass(frozen=True)
class PathCandidate:
    """One source-to-sink path plus the material that ranks it."""

    node_sequence: tuple[str, ...]
    basic_string: str
    digest: bytes


def detect_terminals(g: ArchGraph) -> tuple[str, str]:
    """Return (source, sink): the unique indegree-0 and outdegree-0 nodes."""
    diag = validate_graph(g)
    for finding in diag.errors():
        exc = _VALIDATION_ERRORS.get(finding.code)
        if exc is not None:
            raise exc(finding.message, subject=finding.subject)
    source = next(n for n in g.names() if g.in_degree(n) == 0)
    sink = next(n for n in g.names() if g.out_degree(n) == 0)
    return source, sink


def path_digest(path, g: ArchGraph) -> PathCandidate:
    """Hash a path's basic strings (newline-joined) with SHA-224.

    Identifiers and connection lists never enter the digest: they are what
    the ordering produces, so they cannot exist yet when paths are ranked.
    """
    seq = tuple(path)
    for a, b in zip(seq, seq[1:]):
        if b not in g.successors(a):
            raise BrokenPathError(
                f"no edge {a!r} -> {b!r} on the given path", subject=(a, b)
            )
    joined = "\n".join(basic_string(g.spec(name)) for name in seq)
    digest = hashlib.sha224(joined.encode("utf-8")).digest()
    return PathCandidate(seq, joined, digest)


def longest_unnumbered_paths(
    g: ArchGraph,
    positions: Mapping[str, int],
    *,
    max_paths: int = DEFAULT_MAX_PATHS,
) -> list[PathCandidate]:
    """All maximal-length source->sink paths containing an unnumbered node.

    Empty when every source->sink path consists only of numbered nodes.
    Raises PathExplosionError if more than ``max_paths`` such paths exist;
    the bound is checked during enumeration so pathological graphs fail
    fast instead of exhausting memory.
    """
    source, sink = detect_terminals(g)
    exact, exact_u = _suffix_length_masks(g, sink, positions)
    best = exact_u[source].bit_length() - 1
    if best < 1:
        return []
    if best == 1:  # single-node graph; the DFS below assumes >= 1 edge
        return [path_digest((source,), g)]

    sequences = _enumerate_paths(g, source, positions, exact, exact_u, best, max_paths)
    return [path_digest(seq, g) for seq in sequences]


def _suffix_length_masks(g, sink, positions):
    # exact[v] bit L: some v->sink path has exactly L nodes.
    # exact_u[v] bit L: additionally, the path contains an unnumbered node.
    exact = {name: 0 for name in g.names()}
    exact_u = {name: 0 for name in g.names()}
    for v in reversed(g.topological_order()):
        if v == sink:
            exact[v] = 0b10  # the 1-node path
            exact_u[v] = 0b10 if v not in positions else 0
            continue
        succ_any = 0
        succ_un = 0
        for w in g.successors(v):
            succ_any |= exact[w]
            succ_un |= exact_u[w]
        exact[v] = succ_any << 1
        exact_u[v] = (exact[v] if v not in positions else succ_un << 1)
    return exact, exact_u


def _enumerate_paths(g, source, positions, exact, exact_u, target_len, max_paths):
    found: list[tuple[str, ...]] = []
    path = [source]
    # at depth d (= len(path)) a successor w must extend to the sink in
    # exactly target_len - d more nodes
    stack = [iter(g.successors(source))]
    have_un = [source not in positions]
    while stack:
        depth = len(path)
        step = next(stack[-1], None)
        if step is None:
            stack.pop()
            path.pop()
            have_un.pop()
            continue
        rem = target_len - depth
        mask = exact[step] if have_un[-1] else exact_u[step]
        if rem < 1 or not (mask >> rem) & 1:
            continue
        if rem == 1:
            if len(found) >= max_paths:
                raise PathExplosionError(
                    f"more than {max_paths} tied longest paths; "
                    "raise the limit only if the graph is trusted",
                    subject=max_paths,
                )
            found.append(tuple(path) + (step,))
            continue
        path.append(step)
        have_un.append(have_un[-1] or step not in positions)
        stack.append(iter(g.successors(step)))
    return found


def assign_positions(
    g: ArchGraph, *, max_paths: int = DEFAULT_MAX_PATHS
) -> CanonicalOrder:
    """Number every node: source=1, sink=n, the rest by path extraction.

    Each round takes the longest path still containing an unnumbered node;
    among several, the largest digest wins (bytes compared as one big-endian
    unsigned integer). Digest ties are broken by preferring the path whose
    node sequence is smallest under (assigned position, else past-the-end;
    then node insertion index) compared element-wise. The counter advances
    only when a node actually receives a number, so positions come out
    consecutive.
    """
    source, sink = detect_terminals(g)
    n = len(g)
    positions: dict[str, int] = {source: 1}
    if sink != source:
        positions[sink] = n
    next_free = 2

    infinity = n + 1  # beyond any assignable position

    while True:
        candidates = longest_unnumbered_paths(g, positions, max_paths=max_paths)
        if not candidates:
            break

        def tie_key(c: PathCandidate):
            return tuple(
                (positions.get(name, infinity), g.node_index(name))
                for name in c.node_sequence
            )

        best = candidates[0]
        for c in candidates[1:]:
            if c.digest > best.digest:
                best = c
            elif c.digest == best.digest and tie_key(c) < tie_key(best):
                best = c

        for name in best.node_sequence:
            if name not in positions:
                positions[name] = next_free
                next_free += 1

    if len(positions) != n:
        stranded = sorted(set(g.names()) - positions.keys(), key=g.node_index)
        raise UnreachableNodeError(
            f"{len(stranded)} node(s) lie on no source->sink path: {stranded}",
            subject=tuple(stranded),
        )
    return CanonicalOrder(positions, n)
