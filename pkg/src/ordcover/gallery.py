"""Builders for the standard example covers.

Each builder returns a fully populated ``CurveAction``: the nodal curve,
the group acting on its dual graph, tangent characters where they are not
automatic, quotient-genus declarations for positive-genus components and
faithfulness attestations for every element fixing a component.

All components built from copies of P^1 carry at least one node, and the
group acts on each such component by the automorphism matching its action
on the nodes (unique once three points are fixed).  Attestations record
that choice; for the hyperelliptic step they record the hyperelliptic
involution of the two glued curves.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Mapping

from ordcover.curves import Character, Component, CurveAction, NodeLocalAction, SSCurve
from ordcover.eegraph import EEGraph, GraphAction, GraphMorphism
from ordcover.perms import (
    FiniteGroup,
    Permutation,
    closure,
    cyclic,
    dihedral,
    alternating,
    element_order,
    enumerate_elements,
    is_abelian,
    semidirect_with_inversion,
    standard_group,
)


class GalleryError(ValueError):
    """Builder parameters violate the construction's requirements."""


def _action(graph: EEGraph, group: FiniteGroup, morphism_for: Callable[[Permutation], GraphMorphism]) -> GraphAction:
    gens = group.generators or tuple(g for g in group if not g.is_identity())
    return GraphAction.from_generators(graph, group, {g: morphism_for(g) for g in gens})


def _attest_stabilizers(action: GraphAction) -> dict[str, frozenset[Permutation]]:
    out = {}
    for v in action.graph.vertices:
        stab = [g for g in action.vertex_stabilizer(v) if not g.is_identity()]
        if stab:
            out[v] = frozenset(stab)
    return out


def _rational_cover(graph: EEGraph, action: GraphAction, label: str) -> CurveAction:
    return CurveAction(
        SSCurve.rational(graph),
        action,
        attestations=_attest_stabilizers(action),
        label=label,
    )


def triangle(group_name: str = "C3") -> CurveAction:
    """Three P^1's glued in a triangle, acted on by C3 or S3."""
    if group_name not in ("C3", "S3"):
        raise GalleryError("triangle group must be C3 or S3")
    group = standard_group(group_name)
    verts = [f"C{i}" for i in range(3)]
    graph = EEGraph.from_edges(
        verts,
        [(f"C{i}{j}", f"C{i}", f"C{j}{i}", f"C{j}") for i, j in [(0, 1), (0, 2), (1, 2)]],
        empty={f"C{i}": f"C{i}{i}" for i in range(3)},
    )

    def morphism(s: Permutation) -> GraphMorphism:
        return GraphMorphism(
            {f"C{i}": f"C{s(i)}" for i in range(3)},
            {f"C{i}{j}": f"C{s(i)}{s(j)}" for i in range(3) for j in range(3)},
        )

    return _rational_cover(graph, _action(graph, group, morphism), f"triangle/{group_name}")


def hyperelliptic_base() -> CurveAction:
    """Two P^1's glued in two points, C2 swapping them; genus 1 over P^1."""
    group = cyclic(2)
    graph = EEGraph.from_edges(
        ["P0", "P1"],
        [("P0:0", "P0", "P1:0", "P1"), ("P0:1", "P0", "P1:1", "P1")],
    )
    other = {"P0": "P1", "P1": "P0"}
    flip = GraphMorphism(
        other,
        {e: other[e[:2]] + e[2:] for v in graph.vertices for e in graph.ends[v]},
    )
    action = _action(graph, group, lambda s: flip)
    return _rational_cover(graph, action, "hyperelliptic/base")


def hyperelliptic_step(ell: int) -> CurveAction:
    """Genus ell hyperelliptic from genus ell-1 and an elliptic curve.

    H (genus ell-1) and E (genus 1) meet in one node at ramification points
    of their hyperelliptic involutions; C2 fixes the node and acts by -1 on
    both branches.
    """
    if ell < 2:
        raise GalleryError("hyperelliptic_step needs ell >= 2")
    group = cyclic(2)
    (sigma,) = group.generators
    graph = EEGraph.from_edges(["H", "E"], [("H:Q", "H", "E:P", "E")])
    curve = SSCurve(graph, {"H": Component(ell - 1, True), "E": Component(1, True)})
    action = _action(graph, group, lambda s: GraphMorphism.identity(graph))
    node = ("E:P", "H:Q")
    return CurveAction(
        curve,
        action,
        node_local={node: NodeLocalAction(node, {sigma: Character(1, 1, 2, swap=False)})},
        quotient_genus={"H": 0, "E": 0},
        attestations={"H": frozenset([sigma]), "E": frozenset([sigma])},
        label=f"hyperelliptic/step{ell}",
    )


def hyperelliptic(genus: int) -> CurveAction:
    if genus < 1:
        raise GalleryError("hyperelliptic genus must be >= 1")
    return hyperelliptic_base() if genus == 1 else hyperelliptic_step(genus)


def hyperelliptic_chain(genus: int) -> list[CurveAction]:
    """Base case followed by every induction step up to ``genus``."""
    return [hyperelliptic(g) for g in range(1, genus + 1)]


def _check_generators(group: FiniteGroup, h1: Permutation, h2: Permutation) -> None:
    if h1 not in group or h2 not in group:
        raise GalleryError("h1 and h2 must be elements of the group")
    if h1.is_identity() or not (h1 * h1).is_identity():
        raise GalleryError(f"h1 = {h1} must have order 2")
    if element_order(h2) <= 2:
        raise GalleryError(f"h2 = {h2} must have order greater than 2")
    if closure([h1, h2], degree=group.degree) != group:
        raise GalleryError("h1 and h2 do not generate the group")


_LABELS = ("h1", "h2", "h2^-1")
_INVERSE_LABEL = {"h1": "h1", "h2": "h2^-1", "h2^-1": "h2"}


def _cayley_graph(group: FiniteGroup, h1: Permutation, h2: Permutation) -> EEGraph:
    elems = enumerate_elements(group)
    name = {x: x.cycle_string() for x in elems}
    verts = [name[x] for x in elems]
    edge_list = []
    for x in elems:
        y = x * h1
        if x < y:
            edge_list.append((f"{name[x]}|h1", name[x], f"{name[y]}|h1", name[y]))
    for x in elems:
        y = x * h2
        edge_list.append((f"{name[x]}|h2", name[x], f"{name[y]}|h2^-1", name[y]))
    return EEGraph.from_edges(verts, edge_list, empty={v: f"{v}|e" for v in verts})


def _translate(graph: EEGraph, vertex_image: Mapping[str, str], invert: bool) -> GraphMorphism:
    ends = {}
    for v in graph.vertices:
        w = vertex_image[v]
        ends[f"{v}|e"] = f"{w}|e"
        for lab in _LABELS:
            ends[f"{v}|{lab}"] = f"{w}|{_INVERSE_LABEL[lab] if invert else lab}"
    return GraphMorphism(dict(vertex_image), ends)


def cayley_two_generator(group: FiniteGroup, h1: Permutation, h2: Permutation) -> CurveAction:
    """Trivalent Cayley-type graph of P^1's, G acting by left translation.

    Quotient: one P^1 glued to itself in a point, so the base is genus 1.
    """
    _check_generators(group, h1, h2)
    graph = _cayley_graph(group, h1, h2)
    elems = enumerate_elements(group)

    def morphism(k: Permutation) -> GraphMorphism:
        return _translate(graph, {x.cycle_string(): (k * x).cycle_string() for x in elems}, False)

    action = _action(graph, group, morphism)
    label = f"cayley/{group.label or 'G'}"
    return _rational_cover(graph, action, label)


def semidirect_cover(group: FiniteGroup, h1: Permutation, h2: Permutation) -> CurveAction:
    """The Cayley curve of an abelian G with G x| C2 acting; quotient P^1."""
    if not is_abelian(group):
        raise GalleryError("semidirect_cover needs an abelian group")
    _check_generators(group, h1, h2)
    graph = _cayley_graph(group, h1, h2)
    big = semidirect_with_inversion(group)
    elems = enumerate_elements(group)
    index = {x: i for i, x in enumerate(elems)}
    ident_idx = index[group.identity]

    def morphism(h: Permutation) -> GraphMorphism:
        shift = elems[h(ident_idx)]
        is_translation = all(h(i) == index[shift * x] for i, x in enumerate(elems))
        image = {x.cycle_string(): elems[h(i)].cycle_string() for i, x in enumerate(elems)}
        return _translate(graph, image, not is_translation)

    action = _action(graph, big, morphism)
    return _rational_cover(graph, action, f"semidirect/{big.label}")


def ngon_dihedral(n: int) -> CurveAction:
    """n P^1's in a cycle, 0 of one glued to infinity of the next; D_n acting."""
    if n < 3:
        raise GalleryError("ngon_dihedral needs n >= 3")
    group = dihedral(n)
    verts = [f"v{i}" for i in range(n)]
    graph = EEGraph.from_edges(
        verts,
        [(f"v{i}:0", f"v{i}", f"v{(i + 1) % n}:inf", f"v{(i + 1) % n}") for i in range(n)],
    )

    def morphism(s: Permutation) -> GraphMorphism:
        flips = (s(1) - s(0)) % n != 1
        ends = {}
        for i in range(n):
            j = s(i)
            ends[f"v{i}/0"] = f"v{j}/0"
            ends[f"v{i}:0"] = f"v{j}:inf" if flips else f"v{j}:0"
            ends[f"v{i}:inf"] = f"v{j}:0" if flips else f"v{j}:inf"
        return GraphMorphism({f"v{i}": f"v{s(i)}" for i in range(n)}, ends)

    return _rational_cover(graph, _action(graph, group, morphism), f"ngon/D{n}")


def _pair_name(pair: tuple[int, int]) -> str:
    return f"{pair[0]}{pair[1]}"


def petersen_a5() -> CurveAction:
    """Ten P^1's on the Petersen graph (2-subsets of 5 points), A5 acting."""
    group = alternating(5)
    pairs = list(itertools.combinations(range(5), 2))
    verts = [_pair_name(p) for p in pairs]
    edge_list = [
        (f"{_pair_name(u)}>{_pair_name(w)}", _pair_name(u), f"{_pair_name(w)}>{_pair_name(u)}", _pair_name(w))
        for u, w in itertools.combinations(pairs, 2)
        if not set(u) & set(w)
    ]
    graph = EEGraph.from_edges(verts, edge_list, empty={v: f"{v}>*" for v in verts})

    def image(s: Permutation, pair: tuple[int, int]) -> str:
        return _pair_name(tuple(sorted((s(pair[0]), s(pair[1])))))

    def morphism(s: Permutation) -> GraphMorphism:
        ends = {}
        for u in pairs:
            ends[f"{_pair_name(u)}>*"] = f"{image(s, u)}>*"
            for w in pairs:
                if not set(u) & set(w):
                    ends[f"{_pair_name(u)}>{_pair_name(w)}"] = f"{image(s, u)}>{image(s, w)}"
        return GraphMorphism({_pair_name(u): image(s, u) for u in pairs}, ends)

    return _rational_cover(graph, _action(graph, group, morphism), "petersen/A5")


@dataclass(frozen=True)
class GalleryEntry:
    name: str
    parameters: Mapping[str, object]
    build: CurveAction
    expected: Mapping[str, int] = field(default_factory=dict)


def _perm(text: str, degree: int) -> Permutation:
    return Permutation.from_cycles(text, degree)


def gallery_entries() -> list[GalleryEntry]:
    """The standard example set with pinned shapes.

    ``expected`` holds group order, genus of C, and the quotient's vertex
    count, edge count and genus.
    """
    a4, s3, d4, c4 = (standard_group(n) for n in ("A4", "S3", "D4", "C4"))
    c2c4 = standard_group("C2xC4")
    out = [
        GalleryEntry("triangle", {"group": "C3"}, triangle("C3"), dict(order=3, genus=1, qv=1, qe=1, qg=1)),
        GalleryEntry("triangle", {"group": "S3"}, triangle("S3"), dict(order=6, genus=1, qv=1, qe=0, qg=0)),
        GalleryEntry("hyperelliptic", {"genus": 1}, hyperelliptic_base(), dict(order=2, genus=1, qv=1, qe=0, qg=0)),
    ]
    for g in (2, 3, 5):
        out.append(
            GalleryEntry("hyperelliptic", {"genus": g}, hyperelliptic_step(g), dict(order=2, genus=g, qv=2, qe=1, qg=0))
        )
    for label, grp, h1, h2 in [
        ("A4", a4, "(0 1)(2 3)", "(0 1 2)"),
        ("S3", s3, "(0 1)", "(0 1 2)"),
        ("D4", d4, "(1 3)", "(0 1 2 3)"),
        ("C4", c4, "(0 2)(1 3)", "(0 1 2 3)"),
    ]:
        build = cayley_two_generator(grp, _perm(h1, grp.degree), _perm(h2, grp.degree))
        out.append(
            GalleryEntry(
                "cayley",
                {"group": label, "h1": h1, "h2": h2},
                build,
                dict(order=grp.order, genus=grp.order // 2 + 1, qv=1, qe=1, qg=1),
            )
        )
    build = semidirect_cover(c2c4, _perm("(0 1)", 6), _perm("(2 3 4 5)", 6))
    out.append(
        GalleryEntry(
            "semidirect", {"group": "C2xC4", "h1": "(0 1)", "h2": "(2 3 4 5)"}, build, dict(order=16, genus=5, qv=1, qe=0, qg=0)
        )
    )
    for n in (3, 4, 5, 6):
        out.append(GalleryEntry("ngon", {"n": n}, ngon_dihedral(n), dict(order=2 * n, genus=1, qv=1, qe=0, qg=0)))
    out.append(GalleryEntry("petersen", {}, petersen_a5(), dict(order=60, genus=6, qv=1, qe=0, qg=0)))
    return out


def build(name: str, **params: object) -> CurveAction:
    """Dispatch by gallery name; used by the command line."""
    def group_arg() -> FiniteGroup:
        if "group" not in params or params["group"] is None:
            raise GalleryError(f"{name} needs --group")
        return standard_group(str(params["group"]))

    def perm_arg(key: str, grp: FiniteGroup) -> Permutation:
        if params.get(key) is None:
            raise GalleryError(f"{name} needs --{key}")
        return Permutation.from_cycles(str(params[key]), grp.degree)

    def int_arg(key: str) -> int:
        if params.get(key) is None:
            raise GalleryError(f"{name} needs --{key}")
        return int(params[key])  # type: ignore[arg-type]

    if name == "triangle":
        return triangle(str(params.get("group") or "C3"))
    if name == "hyperelliptic":
        return hyperelliptic(int_arg("genus"))
    if name == "hyperelliptic-base":
        return hyperelliptic_base()
    if name == "hyperelliptic-step":
        return hyperelliptic_step(int_arg("ell"))
    if name == "ngon":
        return ngon_dihedral(int_arg("n"))
    if name == "petersen":
        return petersen_a5()
    if name in ("cayley", "semidirect"):
        grp = group_arg()
        h1, h2 = perm_arg("h1", grp), perm_arg("h2", grp)
        builder = cayley_two_generator if name == "cayley" else semidirect_cover
        return builder(grp, h1, h2)
    raise GalleryError(f"unknown gallery entry {name!r}")


GALLERY_NAMES = (
    "triangle",
    "hyperelliptic",
    "hyperelliptic-base",
    "hyperelliptic-step",
    "ngon",
    "petersen",
    "cayley",
    "semidirect",
)
