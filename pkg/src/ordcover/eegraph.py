"""Graphs with edge ends.

Every vertex ``v`` owns a set of edge ends, one of which is its
distinguished empty end.  An involution on all ends pairs the two halves of
each edge; its only fixed points are the empty ends.  Edges are the
two-element orbits of the involution, so loops and parallel edges come for
free.
"""

from __future__ import annotations

import re
from collections import defaultdict, deque
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from ordcover.perms import FiniteGroup, Permutation

MAX_ISO_VERTICES = 64


class GraphError(ValueError):
    """Invalid graph, morphism or action data."""


def _freeze(mapping: Mapping) -> Mapping:
    return MappingProxyType(dict(mapping))


@dataclass(frozen=True)
class EEGraph:
    vertices: tuple[str, ...]
    ends: Mapping[str, tuple[str, ...]]
    empty: Mapping[str, str]
    involution: Mapping[str, str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "ends", _freeze({v: tuple(es) for v, es in self.ends.items()}))
        object.__setattr__(self, "empty", _freeze(self.empty))
        object.__setattr__(self, "involution", _freeze(self.involution))

    @classmethod
    def from_edges(
        cls,
        vertices: Iterable[str],
        edges: Iterable[tuple[str, str, str, str]],
        empty: Mapping[str, str] | None = None,
    ) -> EEGraph:
        """Build a graph from ``(end_a, vertex_a, end_b, vertex_b)`` tuples.

        Empty ends default to ``"<vertex>/0"``.
        """
        vertices = tuple(vertices)
        empty = dict(empty or {v: f"{v}/0" for v in vertices})
        ends: dict[str, list[str]] = {v: [empty[v]] for v in vertices}
        involution = {e: e for e in empty.values()}
        for ea, va, eb, vb in edges:
            ends[va].append(ea)
            ends[vb].append(eb)
            involution[ea] = eb
            involution[eb] = ea
        return cls(vertices, {v: tuple(es) for v, es in ends.items()}, empty, involution)

    def end_vertex(self) -> dict[str, str]:
        return {e: v for v in self.vertices for e in self.ends.get(v, ())}

    def all_ends(self) -> list[str]:
        return [e for v in self.vertices for e in self.ends.get(v, ())]

    def degree(self, v: str) -> int:
        return len(self.ends[v]) - 1

    def __repr__(self) -> str:
        return f"EEGraph(|V|={len(self.vertices)}, |E|={len(edges(self))})"


def validate(g: EEGraph) -> list[str]:
    """Every violated graph axiom, as readable findings; empty iff valid."""
    findings = []
    if len(set(g.vertices)) != len(g.vertices):
        findings.append("duplicate vertex identifiers")
    owner: dict[str, str] = {}
    for v in g.vertices:
        if v not in g.ends:
            findings.append(f"vertex {v}: no end set")
            continue
        for e in g.ends[v]:
            if e in owner:
                findings.append(f"end {e}: listed under both {owner[e]} and {v}")
            owner[e] = v
        if v not in g.empty:
            findings.append(f"vertex {v}: no distinguished empty end")
        elif g.empty[v] not in g.ends[v]:
            findings.append(f"vertex {v}: empty end {g.empty[v]} missing from its end set")
    for v in g.ends:
        if v not in g.vertices:
            findings.append(f"end set for unknown vertex {v}")
    for e in owner:
        if e not in g.involution:
            findings.append(f"end {e}: involution undefined")
    empties = set(g.empty.values())
    for e, f in g.involution.items():
        if e not in owner:
            findings.append(f"involution defined on unknown end {e}")
            continue
        if f not in owner:
            findings.append(f"end {e}: involution image {f} is not an end")
            continue
        if g.involution.get(f) != e:
            findings.append(f"end {e}: involution not self-inverse ({e} -> {f} -> {g.involution.get(f)})")
        if f == e and e not in empties:
            findings.append(f"end {e}: stray fixed point of the involution")
        if e in empties and f != e:
            findings.append(f"end {e}: empty end is not fixed by the involution")
    return findings


def is_valid(g: EEGraph) -> bool:
    return not validate(g)


def require_valid(g: EEGraph) -> None:
    findings = validate(g)
    if findings:
        raise GraphError("invalid graph: " + "; ".join(findings))


def edges(g: EEGraph) -> list[tuple[str, str]]:
    """Edges as sorted end pairs ``(e, n(e))`` with ``e < n(e)``."""
    out = {tuple(sorted((e, f))) for e, f in g.involution.items() if e != f}
    return sorted(out)


def edge_vertices(g: EEGraph) -> list[tuple[str, str]]:
    owner = g.end_vertex()
    return [(owner[a], owner[b]) for a, b in edges(g)]


def components(g: EEGraph) -> list[set[str]]:
    adj: dict[str, set[str]] = {v: set() for v in g.vertices}
    for u, w in edge_vertices(g):
        adj[u].add(w)
        adj[w].add(u)
    seen: set[str] = set()
    comps = []
    for v in g.vertices:
        if v in seen:
            continue
        comp = {v}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    queue.append(y)
        seen |= comp
        comps.append(comp)
    return comps


def is_connected(g: EEGraph) -> bool:
    return len(components(g)) == 1


def betti1(g: EEGraph) -> int:
    return len(edges(g)) - len(g.vertices) + len(components(g))


@dataclass(frozen=True)
class GraphMorphism:
    vertex_map: Mapping[str, str]
    end_map: Mapping[str, str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertex_map", _freeze(self.vertex_map))
        object.__setattr__(self, "end_map", _freeze(self.end_map))

    @classmethod
    def identity(cls, g: EEGraph) -> GraphMorphism:
        return cls({v: v for v in g.vertices}, {e: e for e in g.all_ends()})

    def compose(self, inner: GraphMorphism) -> GraphMorphism:
        """``self`` after ``inner``."""
        return GraphMorphism(
            {v: self.vertex_map[w] for v, w in inner.vertex_map.items()},
            {e: self.end_map[f] for e, f in inner.end_map.items()},
        )

    def inverse(self) -> GraphMorphism:
        return GraphMorphism(
            {w: v for v, w in self.vertex_map.items()},
            {f: e for e, f in self.end_map.items()},
        )

    def is_identity(self) -> bool:
        return all(k == v for k, v in self.vertex_map.items()) and all(
            k == v for k, v in self.end_map.items()
        )


def morphism_findings(m: GraphMorphism, source: EEGraph, target: EEGraph) -> list[str]:
    findings = []
    src_owner = source.end_vertex()
    tgt_owner = target.end_vertex()
    for v in source.vertices:
        if m.vertex_map.get(v) not in target.ends:
            findings.append(f"vertex {v}: image {m.vertex_map.get(v)} is not a target vertex")
    for e, v in src_owner.items():
        f = m.end_map.get(e)
        if f not in tgt_owner:
            findings.append(f"end {e}: image {f} is not a target end")
            continue
        if tgt_owner[f] != m.vertex_map.get(v):
            findings.append(f"end {e}: image {f} does not lie over the image of vertex {v}")
        ne = source.involution[e]
        if m.end_map.get(ne) != target.involution[f]:
            findings.append(f"end {e}: morphism does not commute with the involution")
    return findings


def is_automorphism(m: GraphMorphism, g: EEGraph) -> bool:
    if morphism_findings(m, g, g):
        return False
    return len(set(m.vertex_map.values())) == len(g.vertices) and len(set(m.end_map.values())) == len(
        m.end_map
    )


@dataclass(frozen=True)
class GraphAction:
    """A finite group acting on a graph through automorphisms."""

    graph: EEGraph
    group: FiniteGroup
    morphism_of: Mapping[Permutation, GraphMorphism]

    def __post_init__(self) -> None:
        object.__setattr__(self, "morphism_of", _freeze(self.morphism_of))

    @classmethod
    def from_generators(
        cls,
        graph: EEGraph,
        group: FiniteGroup,
        generator_morphisms: Mapping[Permutation, GraphMorphism],
    ) -> GraphAction:
        """Extend generator images to the whole group.

        Raises ``GraphError`` when two words for the same element give
        different morphisms (the data is not a homomorphism).
        """
        ident = group.identity
        table = {ident: GraphMorphism.identity(graph)}
        queue = deque([ident])
        while queue:
            x = queue.popleft()
            for s, ms in generator_morphisms.items():
                y = x * s
                my = table[x].compose(ms)
                if y in table:
                    if table[y] != my:
                        raise GraphError(
                            f"generator images do not define a homomorphism (conflict at {y})"
                        )
                    continue
                table[y] = my
                queue.append(y)
        if set(table) != set(group.elements):
            raise GraphError("generator morphisms do not generate the stated group")
        return cls(graph, group, table)

    def __call__(self, g: Permutation) -> GraphMorphism:
        return self.morphism_of[g]

    def findings(self) -> list[str]:
        out = []
        if set(self.morphism_of) != set(self.group.elements):
            out.append("action is not defined on exactly the group elements")
            return out
        if not self.morphism_of[self.group.identity].is_identity():
            out.append("identity element does not act as the identity")
        for g, m in self.morphism_of.items():
            if not is_automorphism(m, self.graph):
                out.append(f"element {g}: not a graph automorphism")
        gens = self.group.generators or tuple(self.group.elements)
        for s in gens:
            for h in self.group.elements:
                if self.morphism_of[s * h] != self.morphism_of[s].compose(self.morphism_of[h]):
                    out.append(f"action not multiplicative at ({s}, {h})")
                    return out
        return out

    def vertex_orbits(self) -> list[list[str]]:
        return _orbits(self.graph.vertices, (m.vertex_map for m in self.morphism_of.values()))

    def end_orbits(self) -> list[list[str]]:
        return _orbits(self.graph.all_ends(), (m.end_map for m in self.morphism_of.values()))

    def vertex_stabilizer(self, v: str) -> FiniteGroup:
        return self.group.subgroup(g for g, m in self.morphism_of.items() if m.vertex_map[v] == v)

    def edge_stabilizer(self, edge: Sequence[str]) -> FiniteGroup:
        pair = set(edge)
        return self.group.subgroup(
            g for g, m in self.morphism_of.items() if {m.end_map[e] for e in pair} == pair
        )


def _orbits(points: Iterable[str], maps: Iterable[Mapping[str, str]]) -> list[list[str]]:
    parent = {p: p for p in points}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for mp in maps:
        for a, b in mp.items():
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[str, list[str]] = defaultdict(list)
    for p in parent:
        groups[find(p)].append(p)
    return sorted(sorted(orb) for orb in groups.values())


def trivial_action(graph: EEGraph, group: FiniteGroup) -> GraphAction:
    ident = GraphMorphism.identity(graph)
    return GraphAction(graph, group, {g: ident for g in group.elements})


def quotient(g: EEGraph, action: GraphAction) -> tuple[EEGraph, GraphMorphism]:
    """Quotient graph by a group action, with the projection morphism.

    Quotient vertices are vertex orbits and quotient ends are end orbits.
    End orbits fixed by the induced involution are merged into the empty end
    of their quotient vertex.  Identifiers are ``"orbit:<min member>"``.
    """
    require_valid(g)
    bad = action.findings()
    if bad:
        raise GraphError("invalid action: " + "; ".join(bad))

    owner = g.end_vertex()
    vertex_name = {}
    for orb in action.vertex_orbits():
        for v in orb:
            vertex_name[v] = f"orbit:{orb[0]}"
    end_orbit_name = {}
    for orb in action.end_orbits():
        for e in orb:
            end_orbit_name[e] = f"orbit:{orb[0]}"

    q_vertices = sorted(set(vertex_name.values()))
    q_empty = {vertex_name[v]: end_orbit_name[g.empty[v]] for v in g.vertices}
    end_name = {}
    for e in owner:
        here, there = end_orbit_name[e], end_orbit_name[g.involution[e]]
        end_name[e] = q_empty[vertex_name[owner[e]]] if here == there else here

    q_ends: dict[str, set[str]] = {v: set() for v in q_vertices}
    q_inv: dict[str, str] = {}
    for e, v in owner.items():
        q_ends[vertex_name[v]].add(end_name[e])
        q_inv[end_name[e]] = end_name[g.involution[e]]
    result = EEGraph(
        tuple(q_vertices),
        {v: _with_empty_first(es, q_empty[v]) for v, es in q_ends.items()},
        q_empty,
        dict(sorted(q_inv.items())),
    )
    return result, GraphMorphism(vertex_name, end_name)


def _with_empty_first(ends: set[str], empty: str) -> tuple[str, ...]:
    return (empty,) + tuple(sorted(ends - {empty}))


def _multiplicity(g: EEGraph) -> dict[frozenset[str], int]:
    counts: dict[frozenset[str], int] = defaultdict(int)
    for u, w in edge_vertices(g):
        counts[frozenset((u, w))] += 1
    return counts


def is_isomorphic(
    g1: EEGraph,
    g2: EEGraph,
    labels1: Mapping[str, object] | None = None,
    labels2: Mapping[str, object] | None = None,
) -> tuple[bool, GraphMorphism | None]:
    """Backtracking isomorphism test; returns ``(found, witness)``.

    Optional vertex labels must be preserved (used for decorated curves).
    """
    require_valid(g1)
    require_valid(g2)
    if max(len(g1.vertices), len(g2.vertices)) > MAX_ISO_VERTICES:
        raise GraphError(f"isomorphism search limited to {MAX_ISO_VERTICES} vertices")
    if len(g1.vertices) != len(g2.vertices) or len(edges(g1)) != len(edges(g2)):
        return False, None
    mult1, mult2 = _multiplicity(g1), _multiplicity(g2)

    def signature(g: EEGraph, mult: Mapping, labels: Mapping | None, v: str) -> tuple:
        return (g.degree(v), mult.get(frozenset((v,)), 0), repr(labels[v]) if labels else "")

    sig1 = {v: signature(g1, mult1, labels1, v) for v in g1.vertices}
    sig2 = {v: signature(g2, mult2, labels2, v) for v in g2.vertices}
    if sorted(sig1.values()) != sorted(sig2.values()):
        return False, None

    nbrs1: dict[str, set[str]] = defaultdict(set)
    for u, w in edge_vertices(g1):
        nbrs1[u].add(w)
        nbrs1[w].add(u)
    # BFS order keeps each new vertex adjacent to the mapped part, which prunes early.
    order: list[str] = []
    for start in sorted(g1.vertices, key=lambda v: (-g1.degree(v), v)):
        if start in order:
            continue
        queue = deque([start])
        order.append(start)
        while queue:
            x = queue.popleft()
            for y in sorted(nbrs1[x]):
                if y not in order:
                    order.append(y)
                    queue.append(y)

    mapping: dict[str, str] = {}
    used: set[str] = set()

    def consistent(v: str, w: str) -> bool:
        for u, x in mapping.items():
            if mult1.get(frozenset((u, v)), 0) != mult2.get(frozenset((x, w)), 0):
                return False
        return True

    def search(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in g2.vertices:
            if w in used or sig2[w] != sig1[v] or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if search(i + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    if not search(0):
        return False, None
    return True, _end_bijection(g1, g2, mapping)


def _end_bijection(g1: EEGraph, g2: EEGraph, vmap: Mapping[str, str]) -> GraphMorphism:
    owner1, owner2 = g1.end_vertex(), g2.end_vertex()
    end_map = {g1.empty[v]: g2.empty[vmap[v]] for v in g1.vertices}
    bucket2: dict[frozenset[str], list[tuple[str, str]]] = defaultdict(list)
    for a, b in edges(g2):
        bucket2[frozenset((owner2[a], owner2[b]))].append((a, b))
    for a, b in edges(g1):
        key = frozenset((vmap[owner1[a]], vmap[owner1[b]]))
        c, d = bucket2[key].pop(0)
        if owner2[c] != vmap[owner1[a]]:
            c, d = d, c
        end_map[a] = c
        end_map[b] = d
    return GraphMorphism(dict(vmap), end_map)


_PLAIN_ID = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|-?\d+")


def _dot_id(name: str) -> str:
    if _PLAIN_ID.fullmatch(name):
        return name
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: EEGraph, name: str = "") -> str:
    """Undirected DOT multigraph; loops kept, empty ends omitted."""
    head = f"graph {_dot_id(name)} {{" if name else "graph {"
    lines = [head]
    for v in g.vertices:
        lines.append(f"  {_dot_id(v)};")
    for u, w in edge_vertices(g):
        lines.append(f"  {_dot_id(u)} -- {_dot_id(w)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
