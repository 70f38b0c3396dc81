"""Shared oracles and fixture builders for the test suite."""

from __future__ import annotations

import dataclasses
import itertools

import numpy as np

from ordcover.curves import (
    Character,
    CurveAction,
    NodeLocalAction,
    node_stabilizer,
    nodes,
    prime_factors,
    swaps,
)
from ordcover.eegraph import EEGraph, edge_vertices, trivial_action


def betti_by_rank(g: EEGraph) -> int:
    """b1 = |E| - rank of the vertex/edge incidence matrix over Q."""
    verts = list(g.vertices)
    pairs = edge_vertices(g)
    if not pairs:
        return 0
    m = np.zeros((len(verts), len(pairs)))
    for j, (u, w) in enumerate(pairs):
        if u != w:
            m[verts.index(u), j] = 1
            m[verts.index(w), j] = -1
    return len(pairs) - int(np.linalg.matrix_rank(m))


def petersen_hardcoded() -> EEGraph:
    """Outer 5-cycle, inner pentagram, spokes."""
    adj = [(i, (i + 1) % 5) for i in range(5)]
    adj += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    adj += [(i, 5 + i) for i in range(5)]
    return EEGraph.from_edges(
        [f"p{i}" for i in range(10)],
        [(f"e{k}a", f"p{u}", f"e{k}b", f"p{w}") for k, (u, w) in enumerate(adj)],
    )


def petersen_subsets() -> EEGraph:
    pairs = ["".join(map(str, p)) for p in itertools.combinations(range(5), 2)]
    edge_list = [
        (f"{u}-{w}", u, f"{w}-{u}", w)
        for u, w in itertools.combinations(pairs, 2)
        if not set(u) & set(w)
    ]
    return EEGraph.from_edges(pairs, edge_list)


def cycle_graph(n: int) -> EEGraph:
    return EEGraph.from_edges(
        [f"v{i}" for i in range(n)],
        [(f"v{i}+", f"v{i}", f"v{(i + 1) % n}-", f"v{(i + 1) % n}") for i in range(n)],
    )


# Fault injections: each returns (corrupted input, prime, expected failure name).


def fault_prime(a: CurveAction) -> tuple[CurveAction, int, str]:
    return a, prime_factors(a.group.order)[0], "coprimality"


def fault_character(a: CurveAction) -> tuple[CurveAction, int, str]:
    """Give one node a stabilizer element whose tangent characters do not multiply to 1."""
    candidates = [(node, node_stabilizer(a, node)) for node in nodes(a)]
    node, stab = next(((n, s) for n, s in candidates if s.order > 1), candidates[0])
    # with only free nodes the identity is the one element left to lie about
    sigma = next((g for g in stab if not g.is_identity()), stab.identity)
    bad = Character(1, 0, 2, swap=swaps(a, sigma, node))
    chars = dict(a.node_local[node].characters) if node in a.node_local else {}
    chars[sigma] = bad
    node_local = dict(a.node_local)
    node_local[node] = NodeLocalAction(node, chars)
    return dataclasses.replace(a, node_local=node_local), _good_prime(a), "orientation"


def fault_faithfulness(a: CurveAction) -> tuple[CurveAction, int, str]:
    """Zero all end motion and drop attestations and characters."""
    corrupted = dataclasses.replace(
        a,
        action=trivial_action(a.graph, a.group),
        node_local={},
        attestations={},
    )
    return corrupted, _good_prime(a), "faithfulness"


def _good_prime(a: CurveAction) -> int:
    p = 3
    while a.group.order % p == 0:
        p += 2
    return p


FAULTS = (fault_prime, fault_character, fault_faithfulness)
