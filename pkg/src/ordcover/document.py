"""JSON curve documents (schema version 1).

A document holds the group (generators in cycle notation), the curve
(vertices, ends, involution pairs), the action of each generator, tangent
characters at nodes, quotient-genus declarations and attestations.
Elements inside ``node_local`` and ``attestations`` may be written in cycle
notation or as words in the generators, e.g. ``"g0*g1^-1"``.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any

from ordcover.curves import (
    Character,
    Component,
    CurveAction,
    NodeLocalAction,
    SSCurve,
    action_findings,
)
from ordcover.eegraph import EEGraph, GraphAction, GraphError, GraphMorphism, trivial_action
from ordcover.perms import FiniteGroup, GroupError, Permutation, closure

SCHEMA_VERSION = 1


class DocumentError(ValueError):
    """Unreadable or inconsistent curve document; message names the field."""


def dump_action(a: CurveAction) -> dict[str, Any]:
    g = a.graph
    group = a.group
    gens = list(group.generators)
    doc: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "label": a.label,
        "group": {
            "label": group.label,
            "degree": group.degree,
            "generators": [s.cycle_string() for s in gens],
        },
        "curve": {
            "vertices": [
                {"id": v, "genus": a.curve.components[v].genus, "ordinary": a.curve.components[v].ordinary}
                for v in g.vertices
            ],
            "ends": [{"id": e, "vertex": v, "empty": e == g.empty[v]} for v in g.vertices for e in g.ends[v]],
            "involution": [list(p) for p in sorted({tuple(sorted((e, f))) for e, f in g.involution.items() if e != f})],
        },
        "action": [
            {
                "generator": s.cycle_string(),
                "vertex_map": dict(a.action(s).vertex_map),
                "end_map": dict(a.action(s).end_map),
            }
            for s in gens
        ],
        "node_local": [
            {
                "node": list(node),
                "element": sigma.cycle_string(),
                "swap": ch.swap,
                "char_a": ch.char_a,
                "char_b": ch.char_b,
                "modulus": ch.modulus,
            }
            for node, local in sorted(a.node_local.items())
            for sigma, ch in sorted(local.characters.items())
        ],
        "quotient_genus": dict(sorted(a.quotient_genus.items())),
        "attestations": {v: sorted(s.cycle_string() for s in gs) for v, gs in sorted(a.attestations.items())},
    }
    return doc


def dump_curve(c: SSCurve, label: str = "") -> dict[str, Any]:
    """A bare curve as a document with the trivial group acting."""
    group = closure([], degree=1, label="C1")
    return dump_action(CurveAction(c, trivial_action(c.graph, group), label=label))


def to_json(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _field(obj: Any, key: str, where: str, kind: type | tuple[type, ...]) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise DocumentError(f"{where}: missing field {key!r}")
    value = obj[key]
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise DocumentError(f"{where}.{key}: expected {getattr(kind, '__name__', kind)}")
    return value


_WORD_TOKEN = re.compile(r"g(\d+)(\^-?\d+)?")


def parse_element(text: str, group: FiniteGroup, where: str) -> Permutation:
    text = text.strip()
    try:
        if text.startswith("("):
            g = Permutation.from_cycles(text, group.degree)
        else:
            g = group.identity
            for tok in filter(None, re.split(r"[*\s]+", text)):
                m = _WORD_TOKEN.fullmatch(tok)
                if not m or int(m.group(1)) >= len(group.generators):
                    raise DocumentError(f"{where}: bad generator word {text!r}")
                power = int(m.group(2)[1:]) if m.group(2) else 1
                g = g * group.generators[int(m.group(1))] ** power
    except GroupError as exc:
        raise DocumentError(f"{where}: {exc}") from exc
    if g not in group:
        raise DocumentError(f"{where}: {g} is not in the group")
    return g


def parse_action(doc: Any) -> CurveAction:
    """Build and structurally validate a ``CurveAction`` from a parsed document."""
    if not isinstance(doc, dict):
        raise DocumentError("document: expected a JSON object")
    version = _field(doc, "schema_version", "document", int)
    if version != SCHEMA_VERSION:
        raise DocumentError(f"document.schema_version: unsupported version {version}")

    gdoc = _field(doc, "group", "document", dict)
    degree = _field(gdoc, "degree", "group", int)
    gen_texts = _field(gdoc, "generators", "group", list)
    gens = []
    for i, text in enumerate(gen_texts):
        if not isinstance(text, str):
            raise DocumentError(f"group.generators[{i}]: expected a cycle string")
        try:
            gens.append(Permutation.from_cycles(text, degree))
        except GroupError as exc:
            raise DocumentError(f"group.generators[{i}]: {exc}") from exc
    try:
        group = closure(gens, degree=degree, label=gdoc.get("label", ""))
    except GroupError as exc:
        raise DocumentError(f"group: {exc}") from exc
    group = FiniteGroup(group.degree, group.elements, tuple(gens), group.label)

    cdoc = _field(doc, "curve", "document", dict)
    vertices, comps = [], {}
    for i, vd in enumerate(_field(cdoc, "vertices", "curve", list)):
        where = f"curve.vertices[{i}]"
        vid = _field(vd, "id", where, str)
        if vid in comps:
            raise DocumentError(f"{where}.id: duplicate vertex {vid!r}")
        vertices.append(vid)
        comps[vid] = Component(_field(vd, "genus", where, int), _field(vd, "ordinary", where, bool))
    ends: dict[str, list[str]] = {v: [] for v in vertices}
    empty: dict[str, str] = {}
    involution: dict[str, str] = {}
    for i, ed in enumerate(_field(cdoc, "ends", "curve", list)):
        where = f"curve.ends[{i}]"
        eid = _field(ed, "id", where, str)
        vid = _field(ed, "vertex", where, str)
        if vid not in ends:
            raise DocumentError(f"{where}.vertex: unknown vertex {vid!r}")
        if eid in involution:
            raise DocumentError(f"{where}.id: duplicate end {eid!r}")
        ends[vid].append(eid)
        involution[eid] = eid
        if _field(ed, "empty", where, bool):
            if vid in empty:
                raise DocumentError(f"{where}: vertex {vid!r} has two empty ends")
            empty[vid] = eid
    paired: set[str] = set()
    for i, pair in enumerate(_field(cdoc, "involution", "curve", list)):
        where = f"curve.involution[{i}]"
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, str) for x in pair)):
            raise DocumentError(f"{where}: expected a pair of end ids")
        e, f = pair
        for x in pair:
            if x not in involution:
                raise DocumentError(f"{where}: unknown end {x!r}")
            if x in paired:
                raise DocumentError(f"{where}: end {x!r} paired twice")
        paired.update(pair)
        involution[e], involution[f] = f, e
    graph = EEGraph(tuple(vertices), ends, empty, involution)
    curve = SSCurve(graph, comps)

    gen_morphisms = {}
    for i, ad in enumerate(_field(doc, "action", "document", list)):
        where = f"action[{i}]"
        s = parse_element(_field(ad, "generator", where, str), group, f"{where}.generator")
        gen_morphisms[s] = GraphMorphism(
            _field(ad, "vertex_map", where, dict), _field(ad, "end_map", where, dict)
        )
    missing = [s for s in group.generators if s not in gen_morphisms]
    if missing:
        raise DocumentError(f"action: no entry for generator {missing[0]}")
    try:
        action = GraphAction.from_generators(graph, group, gen_morphisms)
    except (GraphError, KeyError) as exc:
        raise DocumentError(f"action: {exc}") from exc

    chars: dict[tuple[str, str], dict[Permutation, Character]] = {}
    for i, nd in enumerate(doc.get("node_local", [])):
        where = f"node_local[{i}]"
        node = _field(nd, "node", where, list)
        if len(node) != 2 or not all(isinstance(x, str) for x in node):
            raise DocumentError(f"{where}.node: expected two end ids")
        key = tuple(sorted(node))
        sigma = parse_element(_field(nd, "element", where, str), group, f"{where}.element")
        swap = nd.get("swap")
        if swap is not None and not isinstance(swap, bool):
            raise DocumentError(f"{where}.swap: expected boolean or null")
        modulus = _field(nd, "modulus", where, int)
        if modulus < 1:
            raise DocumentError(f"{where}.modulus: must be positive")
        chars.setdefault(key, {})[sigma] = Character(
            _field(nd, "char_a", where, int), _field(nd, "char_b", where, int), modulus, swap
        )
    node_local = {k: NodeLocalAction(k, v) for k, v in chars.items()}

    qdoc = doc.get("quotient_genus", {})
    if not isinstance(qdoc, dict) or not all(isinstance(x, int) for x in qdoc.values()):
        raise DocumentError("quotient_genus: expected a vertex -> integer map")
    adoc = doc.get("attestations", {})
    if not isinstance(adoc, dict):
        raise DocumentError("attestations: expected a vertex -> element list map")
    attest = {
        v: frozenset(parse_element(t, group, f"attestations.{v}[{j}]") for j, t in enumerate(ts))
        for v, ts in adoc.items()
    }

    a = CurveAction(curve, action, node_local, qdoc, attest, label=doc.get("label", ""))
    problems = action_findings(a)
    if problems:
        raise DocumentError("validation: " + "; ".join(problems))
    return a


def load_action(path: str | Path) -> CurveAction:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"{path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return parse_action(doc)
