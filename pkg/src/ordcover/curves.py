"""Decorated semi-stable curves with finite group actions.

A curve is its dual graph plus, per vertex, the genus of the normalized
component and whether that component is ordinary.  A group action is a
graph action together with tangent data at nodes: for each stabilizer
element sigma the branch ``a`` goes to ``zeta**char_a`` times branch
``a`` (or ``b`` when sigma swaps the branches), ``zeta`` being a primitive
``modulus``-th root of unity; likewise for ``b``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping

from ordcover.eegraph import (
    EEGraph,
    GraphAction,
    GraphMorphism,
    betti1,
    edges,
    is_connected,
    quotient,
    validate,
)
from ordcover.perms import FiniteGroup, Permutation, is_abelian, is_cyclic

Node = tuple[str, str]


class CurveError(ValueError):
    """Inconsistent curve or action data."""


class NodeStructureError(CurveError):
    """A node stabilizer contradicts the local structure of a tame cover."""


class MissingCharacterData(CurveError):
    """Tangent characters are required at a node but were not supplied."""


@dataclass(frozen=True)
class Component:
    genus: int = 0
    ordinary: bool = True


@dataclass(frozen=True)
class SSCurve:
    graph: EEGraph
    components: Mapping[str, Component]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", MappingProxyType(dict(self.components)))

    @classmethod
    def rational(cls, graph: EEGraph) -> SSCurve:
        """All components copies of P^1."""
        return cls(graph, {v: Component() for v in graph.vertices})


def curve_findings(c: SSCurve) -> list[str]:
    out = validate(c.graph)
    if out:
        return out
    if not is_connected(c.graph):
        out.append("curve is not connected")
    for v in c.graph.vertices:
        comp = c.components.get(v)
        if comp is None:
            out.append(f"vertex {v}: no component data")
        elif comp.genus < 0:
            out.append(f"vertex {v}: negative genus")
        elif comp.genus == 0 and not comp.ordinary:
            out.append(f"vertex {v}: genus-0 component must be ordinary")
    return out


def arithmetic_genus(c: SSCurve) -> int:
    return betti1(c.graph) + sum(c.components[v].genus for v in c.graph.vertices)


def is_ordinary(c: SSCurve) -> bool:
    """A nodal curve is ordinary exactly when all its components are."""
    return all(c.components[v].ordinary for v in c.graph.vertices)


@dataclass(frozen=True)
class Character:
    char_a: int
    char_b: int
    modulus: int
    swap: bool | None = None

    def exponents(self) -> tuple[Fraction, Fraction]:
        return Fraction(self.char_a % self.modulus, self.modulus), Fraction(
            self.char_b % self.modulus, self.modulus
        )

    def is_trivial(self) -> bool:
        return self.char_a % self.modulus == 0 and self.char_b % self.modulus == 0


@dataclass(frozen=True)
class NodeLocalAction:
    node: Node
    characters: Mapping[Permutation, Character]

    def __post_init__(self) -> None:
        object.__setattr__(self, "node", tuple(sorted(self.node)))
        object.__setattr__(self, "characters", MappingProxyType(dict(self.characters)))


@dataclass(frozen=True)
class CurveAction:
    curve: SSCurve
    action: GraphAction
    node_local: Mapping[Node, NodeLocalAction] = field(default_factory=dict)
    quotient_genus: Mapping[str, int] = field(default_factory=dict)
    attestations: Mapping[str, frozenset[Permutation]] = field(default_factory=dict)
    label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "node_local", MappingProxyType({tuple(sorted(k)): v for k, v in self.node_local.items()})
        )
        object.__setattr__(self, "quotient_genus", MappingProxyType(dict(self.quotient_genus)))
        object.__setattr__(
            self,
            "attestations",
            MappingProxyType({v: frozenset(gs) for v, gs in self.attestations.items()}),
        )

    @property
    def group(self) -> FiniteGroup:
        return self.action.group

    @property
    def graph(self) -> EEGraph:
        return self.curve.graph


def nodes(a: CurveAction | SSCurve) -> list[Node]:
    return edges(a.graph)


def node_stabilizer(a: CurveAction, node: Node) -> FiniteGroup:
    return a.action.edge_stabilizer(node)


def swaps(a: CurveAction, sigma: Permutation, node: Node) -> bool:
    x, _ = node
    return a.action(sigma).end_map[x] != x


# (branch permutation, exponents) for one stabilizer element.
_Local = tuple[bool, tuple[Fraction, Fraction]]


def _compose(outer: _Local, inner: _Local) -> _Local:
    # outer after inner: alpha_i(st) = alpha_i(t) + alpha_{pi_t(i)}(s)
    s_swap, s_alpha = outer
    t_swap, t_alpha = inner
    out = []
    for i in (0, 1):
        j = 1 - i if t_swap else i
        out.append((t_alpha[i] + s_alpha[j]) % 1)
    return (s_swap != t_swap, (out[0], out[1]))


def local_table(a: CurveAction, node: Node) -> tuple[dict[Permutation, _Local], list[str]]:
    """Tangent data for every derivable stabilizer element, plus conflicts.

    Supplied characters are closed under composition inside the stabilizer.
    """
    node = tuple(sorted(node))
    stab = node_stabilizer(a, node)
    local = a.node_local.get(node)
    conflicts: list[str] = []
    table: dict[Permutation, _Local] = {stab.identity: (False, (Fraction(0), Fraction(0)))}
    if local is None:
        return table, conflicts
    for sigma, ch in sorted(local.characters.items()):
        if sigma not in stab:
            conflicts.append(f"node {node}: element {sigma} does not stabilize the node")
            continue
        actual = swaps(a, sigma, node)
        if ch.swap is not None and ch.swap != actual:
            conflicts.append(f"node {node}: element {sigma} swap flag disagrees with the action")
        entry = (actual, ch.exponents())
        if sigma in table and table[sigma] != entry:
            conflicts.append(f"node {node}: element {sigma} has inconsistent character data")
        table[sigma] = entry
    changed = True
    while changed:
        changed = False
        for s, ds in list(table.items()):
            for t, dt in list(table.items()):
                st = s * t
                dst = _compose(ds, dt)
                if st not in table:
                    table[st] = dst
                    changed = True
                elif table[st] != dst:
                    msg = f"node {node}: characters are not multiplicative at ({s}) * ({t})"
                    if msg not in conflicts:
                        conflicts.append(msg)
    return table, conflicts


def action_findings(a: CurveAction) -> list[str]:
    """Structural problems with the action data (not the smoothing hypotheses)."""
    out = curve_findings(a.curve)
    if out:
        return out
    out = a.action.findings()
    if a.action.graph != a.graph:
        out.append("graph action is on a different graph")
    if out:
        return out
    for orb in a.action.vertex_orbits():
        decs = {a.curve.components[v] for v in orb}
        if len(decs) > 1:
            out.append(f"vertex orbit {orb}: component data not constant on the orbit")
        declared = {a.quotient_genus[v] for v in orb if v in a.quotient_genus}
        if len(declared) > 1:
            out.append(f"vertex orbit {orb}: conflicting quotient genus declarations")
    for v, q in a.quotient_genus.items():
        if v not in a.curve.components:
            out.append(f"quotient genus declared for unknown vertex {v}")
        elif not 0 <= q <= a.curve.components[v].genus:
            out.append(f"vertex {v}: quotient genus {q} outside 0..{a.curve.components[v].genus}")
    for v, gs in a.attestations.items():
        if v not in a.curve.components:
            out.append(f"attestation for unknown vertex {v}")
            continue
        stab = a.action.vertex_stabilizer(v)
        for g in gs:
            if g not in stab:
                out.append(f"vertex {v}: attested element {g} does not fix the vertex")
    node_set = set(nodes(a))
    for node, local in a.node_local.items():
        if node not in node_set:
            out.append(f"node-local data for unknown node {node}")
        for ch in local.characters.values():
            if ch.modulus < 1:
                out.append(f"node {node}: modulus must be positive")
    return out


def node_local_findings(a: CurveAction) -> list[str]:
    """Character data that is not a homomorphism or contradicts the action."""
    out = []
    for node in a.node_local:
        out.extend(local_table(a, node)[1])
    return out


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    evidence: str

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _acts_nontrivially_on(a: CurveAction, g: Permutation, v: str, tables: Mapping) -> str | None:
    """Reason g (fixing v) is not the identity on component v, if any."""
    m = a.action(g)
    moved = [e for e in a.graph.ends[v] if m.end_map[e] != e]
    if moved:
        return f"moves end {moved[0]}"
    own = set(a.graph.ends[v])
    for node, table in tables.items():
        if own.intersection(node) and g in table:
            _, alpha = table[g]
            if any(alpha):
                return f"nontrivial tangent character at node {node}"
    if g in a.attestations.get(v, ()):
        return "attested"
    return None


def _node_tables(a: CurveAction) -> dict[Node, dict[Permutation, _Local]]:
    return {node: local_table(a, node)[0] for node in nodes(a)}


def check_setup(a: CurveAction, p: int) -> list[Check]:
    """Tameness and faithfulness hypotheses of the quotient construction."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    order = a.group.order
    checks = [
        Check(
            "coprimality",
            math.gcd(order, p) == 1,
            f"|G| = {order}, p = {p}, gcd = {math.gcd(order, p)}",
        )
    ]
    tables = _node_tables(a)

    bad = []
    for v in a.graph.vertices:
        for g in a.action.vertex_stabilizer(v):
            if not g.is_identity() and _acts_nontrivially_on(a, g, v, tables) is None:
                bad.append(f"vertex {v}: element {g} fixes all its ends with no character data or attestation")
    checks.append(
        Check(
            "faithfulness",
            not bad,
            "; ".join(bad) if bad else "every vertex stabilizer acts faithfully on its component",
        )
    )

    bad = []
    for g in a.group:
        if g.is_identity():
            continue
        m = a.action(g)
        if any(m.vertex_map[v] != v for v in a.graph.vertices):
            continue
        if not any(_acts_nontrivially_on(a, g, v, tables) for v in a.graph.vertices):
            bad.append(f"element {g} acts as the identity on every component")
    checks.append(
        Check(
            "galois",
            not bad,
            "; ".join(bad) if bad else "no non-identity element is trivial on a component",
        )
    )
    return checks


class NodeCase(Enum):
    SINGULAR_IMAGE = "SingularImage"
    SMOOTH_IMAGE = "SmoothImage"


@dataclass(frozen=True)
class NodeClass:
    node: Node
    stabilizer: FiniteGroup
    case: NodeCase
    m: int
    structure: str  # "trivial", "cyclic" or "two-by-m"

    def describe(self) -> str:
        return (
            f"{self.node[0]}~{self.node[1]}: {self.case.value}, |Stab| = {self.stabilizer.order}, "
            f"m = {self.m}, {self.structure}"
        )


def classify_node(a: CurveAction, node: Node) -> NodeClass:
    """Local type of the cover at a node.

    If some stabilizer element swaps the branches the image point is smooth
    and ``m = |Stab| / 2``; otherwise it is a node and ``m = |Stab|``.
    """
    node = tuple(sorted(node))
    stab = node_stabilizer(a, node)
    swapping = [g for g in stab if swaps(a, g, node)]
    cyc, _ = is_cyclic(stab)
    if not swapping:
        if not cyc:
            raise NodeStructureError(
                f"node {node}: stabilizer of order {stab.order} fixes both branches but is not cyclic"
            )
        structure = "trivial" if stab.order == 1 else "cyclic"
        return NodeClass(node, stab, NodeCase.SINGULAR_IMAGE, stab.order, structure)

    m = stab.order // 2
    if cyc:
        return NodeClass(node, stab, NodeCase.SMOOTH_IMAGE, m, "cyclic")
    fixing = stab.subgroup(g for g in stab if not swaps(a, g, node))
    involutive_swap = any((g * g).is_identity() for g in swapping)
    if is_abelian(stab) and is_cyclic(fixing)[0] and involutive_swap:
        return NodeClass(node, stab, NodeCase.SMOOTH_IMAGE, m, "two-by-m")
    raise NodeStructureError(
        f"node {node}: stabilizer of order {stab.order} is neither cyclic nor C2 x C{m}"
    )


def in_fast_path(stab: FiniteGroup) -> bool:
    """Stabilizers 1, C2 and C2 x C2, where orientation holds automatically."""
    if stab.order <= 2:
        return True
    return stab.order == 4 and all((g * g).is_identity() for g in stab)


@dataclass(frozen=True)
class OrientationResult:
    node: Node
    passed: bool
    details: tuple[str, ...]


def check_orientation(a: CurveAction) -> list[OrientationResult]:
    """Per-node determinant condition: the two tangent characters multiply to 1.

    Supplied character data is always checked.  Elements without data pass
    automatically when the stabilizer is 1, C2 or C2 x C2; otherwise
    ``MissingCharacterData`` is raised.
    """
    results = []
    for node in nodes(a):
        stab = node_stabilizer(a, node)
        table, _ = local_table(a, node)
        local = a.node_local.get(node)
        supplied = local.characters if local is not None else {}
        details = []
        ok = True
        for sigma in stab:
            if sigma.is_identity() and sigma not in supplied:
                continue
            if sigma in table:
                _, (alpha_a, alpha_b) = table[sigma]
                good = (alpha_a + alpha_b) % 1 == 0
                ok = ok and good
                verdict = "PASS" if good else "FAIL"
                details.append(f"{sigma}: exponents {alpha_a} + {alpha_b} -> {verdict}")
            elif in_fast_path(stab):
                details.append(f"{sigma}: stabilizer of order {stab.order} in the automatic list -> PASS")
            else:
                raise MissingCharacterData(
                    f"node {node}: no character data for {sigma} (stabilizer order {stab.order})"
                )
        results.append(OrientationResult(node, ok, tuple(details)))
    return results


@dataclass(frozen=True)
class CoverData:
    projection: GraphMorphism
    node_classes: Mapping[Node, NodeClass]
    component_stabilizer_orders: Mapping[str, int]


def node_orbit_representatives(a: CurveAction) -> list[Node]:
    reps = set()
    for node in nodes(a):
        images = [tuple(sorted(m.end_map[e] for e in node)) for m in a.action.morphism_of.values()]
        reps.add(min(images))
    return sorted(reps)


def quotient_curve(a: CurveAction) -> tuple[SSCurve, CoverData]:
    """Quotient curve D = C/G with its local cover data."""
    q_graph, proj = quotient(a.graph, a.action)
    comps: dict[str, Component] = {}
    stab_orders: dict[str, int] = {}
    for orb in a.action.vertex_orbits():
        target = proj.vertex_map[orb[0]]
        comp = a.curve.components[orb[0]]
        stab_orders[target] = a.group.order // len(orb)
        if comp.genus == 0:
            comps[target] = Component(0, True)
            continue
        declared = [a.quotient_genus[v] for v in orb if v in a.quotient_genus]
        if not declared:
            raise CurveError(f"vertex orbit {orb}: positive genus component needs a quotient genus declaration")
        q = declared[0]
        comps[target] = Component(q, True if q == 0 else comp.ordinary)
    classes = {node: classify_node(a, node) for node in node_orbit_representatives(a)}
    return SSCurve(q_graph, comps), CoverData(proj, classes, stab_orders)


def orbit_sizes(a: CurveAction) -> Iterable[int]:
    return [len(o) for o in a.action.vertex_orbits()]
