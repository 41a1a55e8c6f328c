"""Vertex-level and atom-level hypergraph representations."""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Sequence

from .errors import IndexOutOfRange, InvalidHypergraph, ParseError


class Color(IntEnum):
    RED = 1
    BLUE = -1


Coloring = Sequence[Color]


@dataclass(frozen=True)
class Hypergraph:
    num_vertices: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.num_vertices < 0:
            raise InvalidHypergraph("negative vertex count")
        edges = tuple(tuple(e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        for k, e in enumerate(edges):
            for a, b in zip(e, e[1:]):
                if a >= b:
                    raise InvalidHypergraph(f"edge {k} is not strictly ascending")
            if e and (e[0] < 0 or e[-1] >= self.num_vertices):
                raise InvalidHypergraph(f"edge {k} has a vertex outside [0, {self.num_vertices})")

    @classmethod
    def from_sets(cls, num_vertices, edges):
        return cls(num_vertices, tuple(tuple(sorted(set(e))) for e in edges))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def edge_sizes(self) -> list[int]:
        return [len(e) for e in self.edges]

    def is_uniform(self, n: int) -> bool:
        return all(len(e) == n for e in self.edges)


@dataclass(frozen=True)
class AtomSystem:
    """Vertices grouped by identical edge membership.

    ``vertices[a]`` lists the ids in atom ``a`` (ascending) and
    ``edge_atoms[e]`` the atoms contained in edge ``e``.  Vertices lying in no
    edge form a single trailing atom with an empty signature.
    """

    atom_sizes: tuple[int, ...]
    edge_atoms: tuple[tuple[int, ...], ...]
    vertices: tuple[tuple[int, ...], ...]

    @property
    def num_edges(self) -> int:
        return len(self.edge_atoms)

    @property
    def num_atoms(self) -> int:
        return len(self.atom_sizes)

    def edge_sizes(self) -> list[int]:
        return [sum(self.atom_sizes[a] for a in atoms) for atoms in self.edge_atoms]

    def atom_degrees(self) -> list[int]:
        deg = [0] * self.num_atoms
        for atoms in self.edge_atoms:
            for a in atoms:
                deg[a] += 1
        return deg


def atomize(h: Hypergraph) -> AtomSystem:
    membership: list[list[int]] = [[] for _ in range(h.num_vertices)]
    for k, e in enumerate(h.edges):
        for v in e:
            membership[v].append(k)
    groups: dict[tuple[int, ...], list[int]] = {}
    for v, sig in enumerate(membership):
        groups.setdefault(tuple(sig), []).append(v)
    # lexicographic by signature, the empty (isolated) signature last
    order = sorted(groups, key=lambda sig: (not sig, sig, groups[sig][0]))
    index = {sig: a for a, sig in enumerate(order)}
    edge_atoms: list[list[int]] = [[] for _ in h.edges]
    for sig in order:
        for k in sig:
            edge_atoms[k].append(index[sig])
    return AtomSystem(
        atom_sizes=tuple(len(groups[sig]) for sig in order),
        edge_atoms=tuple(tuple(atoms) for atoms in edge_atoms),
        vertices=tuple(tuple(groups[sig]) for sig in order),
    )


def _check_coloring(h: Hypergraph, c: Coloring):
    if len(c) != h.num_vertices:
        raise InvalidHypergraph(f"coloring has length {len(c)}, hypergraph has {h.num_vertices} vertices")


def edge_imbalance(h: Hypergraph, c: Coloring, edge_index: int) -> int:
    _check_coloring(h, c)
    if not 0 <= edge_index < h.num_edges:
        raise IndexOutOfRange(f"edge index {edge_index} not in [0, {h.num_edges})")
    return abs(sum(int(c[v]) for v in h.edges[edge_index]))


def discrepancy_of_coloring(h: Hypergraph, c: Coloring) -> int:
    _check_coloring(h, c)
    return max((abs(sum(int(c[v]) for v in e)) for e in h.edges), default=0)


def atom_differences(a: AtomSystem, c: Coloring) -> list[int]:
    """Per-atom ``#red - #blue`` for a concrete coloring."""
    return [sum(int(c[v]) for v in verts) for verts in a.vertices]


def discrepancy_from_atoms(a: AtomSystem, d: Sequence[int]) -> int:
    return max((abs(sum(d[x] for x in atoms)) for atoms in a.edge_atoms), default=0)


def write_hypergraph(h: Hypergraph) -> str:
    lines = [f"HG {h.num_vertices} {h.num_edges}"]
    lines.extend(" ".join(map(str, e)) for e in h.edges)
    return "\n".join(lines) + "\n"


def _parse_ints(text: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in text.split(" ")] if text else []
    except ValueError:
        raise ParseError(f"expected space-separated integers, got {text!r}", lineno) from None


def read_hypergraph(text: str) -> Hypergraph:
    if not text.endswith("\n"):
        raise ParseError("missing trailing newline", text.count("\n") + 1)
    lines = text[:-1].split("\n")
    header = lines[0].split(" ")
    if len(header) != 3 or header[0] != "HG":
        raise ParseError(f"expected 'HG <num_vertices> <num_edges>', got {lines[0]!r}", 1)
    try:
        nv, ne = int(header[1]), int(header[2])
    except ValueError:
        raise ParseError(f"bad header counts in {lines[0]!r}", 1) from None
    if nv < 0 or ne < 0:
        raise ParseError("negative count in header", 1)
    body = lines[1:]
    if len(body) != ne:
        bad = min(len(body), ne) + 2
        raise ParseError(f"header declares {ne} edges, file has {len(body)}", bad)
    edges = []
    for i, line in enumerate(body, start=2):
        if "\r" in line:
            raise ParseError("CR characters are not allowed", i)
        e = _parse_ints(line, i)
        if any(v < 0 or v >= nv for v in e):
            raise ParseError(f"vertex id out of range [0, {nv})", i)
        if any(x >= y for x, y in zip(e, e[1:])):
            raise ParseError("vertex ids must be strictly ascending", i)
        edges.append(tuple(e))
    return Hypergraph(nv, tuple(edges))
