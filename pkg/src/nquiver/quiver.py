"""Quivers: finite directed multigraphs with named vertices and arrows.

Ids are strings so they match the text format; declaration order is the
canonical order everywhere (reports, bases, emitted files).  Loops and
parallel arrows are permitted; `validate` reports on connectivity and
acyclicity but nothing downstream refuses a bad report.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CyclicQuiver, DanglingEndpoint, DuplicateId


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class ValidationReport:
    finite: bool
    connected: bool
    acyclic: bool


class Quiver:
    """An ordered vertex list plus an ordered arrow list."""

    __slots__ = ("vertices", "arrows", "_vpos", "_apos")

    def __init__(self, vertices: Iterable[str], arrows: Iterable = ()):
        vs = tuple(str(v) for v in vertices)
        ars = []
        for a in arrows:
            if isinstance(a, Arrow):
                ars.append(a)
            else:
                name, src, tgt = a
                ars.append(Arrow(str(name), str(src), str(tgt)))
        vpos: dict[str, int] = {}
        for i, v in enumerate(vs):
            if v in vpos:
                raise DuplicateId(f"duplicate vertex id {v!r}")
            vpos[v] = i
        apos: dict[str, int] = {}
        for i, a in enumerate(ars):
            if a.name in apos:
                raise DuplicateId(f"duplicate arrow id {a.name!r}")
            apos[a.name] = i
            for end in (a.source, a.target):
                if end not in vpos:
                    raise DanglingEndpoint(
                        f"arrow {a.name!r} endpoint {end!r} is not a declared vertex"
                    )
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "arrows", tuple(ars))
        object.__setattr__(self, "_vpos", vpos)
        object.__setattr__(self, "_apos", apos)

    def __setattr__(self, name, value):
        raise AttributeError("Quiver is immutable")

    def vertex_index(self, v: str) -> int:
        return self._vpos[v]

    def has_vertex(self, v: str) -> bool:
        return v in self._vpos

    def arrow(self, name: str) -> Arrow:
        return self.arrows[self._apos[name]]

    def has_arrow(self, name: str) -> bool:
        return name in self._apos

    def __eq__(self, other) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self) -> int:
        return hash((self.vertices, self.arrows))

    def __repr__(self) -> str:
        ars = ", ".join(f"{a.name}: {a.source} -> {a.target}" for a in self.arrows)
        return f"Quiver([{', '.join(self.vertices)}], [{ars}])"


def validate(q: Quiver) -> ValidationReport:
    """Report whether q is finite, connected, and acyclic.

    Report only: construction never refuses non-connected or cyclic
    quivers.  A quiver with at most one connected component (including
    the empty one) counts as connected.
    """
    n = len(q.vertices)
    adj: dict[str, set[str]] = {v: set() for v in q.vertices}
    for a in q.arrows:
        adj[a.source].add(a.target)
        adj[a.target].add(a.source)
    connected = True
    if n > 1:
        seen = {q.vertices[0]}
        stack = [q.vertices[0]]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        connected = len(seen) == n
    try:
        topo_order(q)
        acyclic = True
    except CyclicQuiver:
        acyclic = False
    return ValidationReport(finite=True, connected=connected, acyclic=acyclic)


def arrow_pairs(q: Quiver, q2: Quiver) -> list[tuple[Arrow, Arrow]]:
    """Cartesian product of arrow lists in declaration order."""
    return [(a, b) for a in q.arrows for b in q2.arrows]


def topo_order(q: Quiver) -> list[str]:
    """Topological order of the vertices, ties broken by declaration order."""
    indeg = {v: 0 for v in q.vertices}
    for a in q.arrows:
        if a.source != a.target:
            indeg[a.target] += 1
        else:
            raise CyclicQuiver(f"loop at vertex {a.source!r}")
    out: list[str] = []
    placed: set[str] = set()
    remaining = len(q.vertices)
    while remaining:
        pick = next(
            (v for v in q.vertices if v not in placed and indeg[v] == 0), None
        )
        if pick is None:
            raise CyclicQuiver("quiver has a directed cycle")
        placed.add(pick)
        out.append(pick)
        remaining -= 1
        for a in q.arrows:
            if a.source == pick and a.target not in placed:
                indeg[a.target] -= 1
    return out
