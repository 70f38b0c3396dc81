"""Hypothesis checklist for smoothing a nodal Galois cover, and its certificate."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from ordcover.curves import (
    Check,
    CoverData,
    CurveAction,
    CurveError,
    MissingCharacterData,
    NodeStructureError,
    SSCurve,
    action_findings,
    arithmetic_genus,
    check_orientation,
    check_setup,
    classify_node,
    is_ordinary,
    is_prime,
    node_local_findings,
    nodes,
    prime_factors,
    quotient_curve,
)

FIELD_NOTE = (
    "Existence only: the nodal cover deforms over k[[X]] (k = algebraic closure of F_p) to a "
    "G-Galois cover of smooth curves over k((X)), ordinary when C is ordinary; specializing "
    "the generic fibre gives such a cover over k itself. No equations are computed."
)
NOT_COMPUTED = "not computed"


class CertificationRefused(Exception):
    """At least one hypothesis failed; ``checklist`` holds every check run."""

    def __init__(self, checklist: Sequence[Check]):
        self.checklist = tuple(checklist)
        self.failures = tuple(c for c in self.checklist if not c.passed)
        names = ", ".join(c.name for c in self.failures)
        super().__init__(f"certificate refused: {names}")

    @property
    def failed_names(self) -> set[str]:
        return {c.name for c in self.failures}


@dataclass(frozen=True)
class SmoothingCertificate:
    group_label: str
    group_order: int
    prime: int
    excluded_primes: tuple[int, ...]
    genus_total: int
    genus_base: int
    total_ordinary: bool
    ramification_budget: int
    checklist: tuple[Check, ...]
    node_classes: tuple[str, ...]
    component_stabilizers: tuple[tuple[str, int], ...]
    field_note: str = FIELD_NOTE


def riemann_hurwitz_budget(g_total: int, g_base: int, n: int) -> int:
    """Total ramification a degree-n Galois cover of these genera carries."""
    if n < 1:
        raise ValueError("group order must be positive")
    return 2 * g_total - 2 - n * (2 * g_base - 2)


@dataclass
class _Run:
    checklist: list[Check]
    quotient: SSCurve | None = None
    cover: CoverData | None = None


def _evaluate(a: CurveAction, p: int) -> _Run:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    run = _Run([])
    add = run.checklist.append

    structural = action_findings(a)
    add(Check("structure", not structural, "; ".join(structural) or "graph, curve and action are well formed"))
    if structural:
        return run

    run.checklist.extend(check_setup(a, p))

    try:
        results = check_orientation(a)
    except MissingCharacterData as exc:
        add(Check("orientation", False, str(exc)))
    else:
        bad = [r for r in results if not r.passed]
        evidence = "; ".join(
            f"node {r.node[0]}~{r.node[1]}: " + ", ".join(d for d in r.details if d.endswith("FAIL")) for r in bad
        )
        add(Check("orientation", not bad, evidence or f"determinant condition holds at all {len(results)} nodes"))

    struct_errors = []
    for node in nodes(a):
        try:
            classify_node(a, node)
        except NodeStructureError as exc:
            struct_errors.append(str(exc))
    add(
        Check(
            "node-structure",
            not struct_errors,
            "; ".join(struct_errors) or "every node stabilizer matches the local cover structure",
        )
    )

    conflicts = node_local_findings(a)
    add(Check("node-local-consistency", not conflicts, "; ".join(conflicts) or "tangent characters are multiplicative"))

    if struct_errors:
        add(Check("quotient", False, "skipped: node structure inconsistent"))
        return run
    try:
        run.quotient, run.cover = quotient_curve(a)
    except CurveError as exc:
        add(Check("quotient", False, str(exc)))
        return run
    g_c, g_d = arithmetic_genus(a.curve), arithmetic_genus(run.quotient)
    add(
        Check(
            "quotient",
            True,
            f"D has {len(run.quotient.graph.vertices)} components, arithmetic genus {g_d}",
        )
    )
    budget = riemann_hurwitz_budget(g_c, g_d, a.group.order)
    needs_nonneg = g_d >= 1 or a.group.order >= 2
    add(
        Check(
            "rh-budget",
            budget >= 0 or not needs_nonneg,
            f"2*{g_c} - 2 - {a.group.order}*(2*{g_d} - 2) = {budget}",
        )
    )
    return run


def run_checks(a: CurveAction, p: int) -> list[Check]:
    """All hypothesis checks, in a fixed order, without issuing anything."""
    return _evaluate(a, p).checklist


def certify(a: CurveAction, p: int) -> SmoothingCertificate:
    """Issue a certificate, or raise ``CertificationRefused`` naming every failed check."""
    run = _evaluate(a, p)
    if not all(c.passed for c in run.checklist):
        raise CertificationRefused(run.checklist)
    assert run.quotient is not None and run.cover is not None
    g_c, g_d = arithmetic_genus(a.curve), arithmetic_genus(run.quotient)
    return SmoothingCertificate(
        group_label=a.group.label or "G",
        group_order=a.group.order,
        prime=p,
        excluded_primes=tuple(prime_factors(a.group.order)),
        genus_total=g_c,
        genus_base=g_d,
        total_ordinary=is_ordinary(a.curve),
        ramification_budget=riemann_hurwitz_budget(g_c, g_d, a.group.order),
        checklist=tuple(run.checklist),
        node_classes=tuple(c.describe() for c in run.cover.node_classes.values()),
        component_stabilizers=tuple(sorted(run.cover.component_stabilizer_orders.items())),
    )


def certificate_dict(c: SmoothingCertificate) -> dict:
    return {
        "group": {"label": c.group_label, "order": c.group_order},
        "prime": c.prime,
        "excluded_primes": list(c.excluded_primes),
        "genus_total": c.genus_total,
        "genus_base": c.genus_base,
        "ordinary": c.total_ordinary,
        "rh_budget": c.ramification_budget,
        "checklist": [{"name": k.name, "status": k.status, "evidence": k.evidence} for k in c.checklist],
        "field_note": c.field_note,
        "cover": {
            "node_orbits": list(c.node_classes),
            "component_stabilizer_orders": dict(c.component_stabilizers),
        },
        "ramification_points": NOT_COMPUTED,
    }


def render_certificate(c: SmoothingCertificate, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(certificate_dict(c), sort_keys=True, indent=2) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    excluded = ", ".join(map(str, c.excluded_primes)) or "none"
    lines = [
        "CERTIFICATE smoothening of the nodal Galois cover exists",
        f"GROUP {c.group_label} order {c.group_order}",
        f"PRIME {c.prime} (excluded characteristics: {excluded})",
        f"GENUS(C) {c.genus_total}",
        f"GENUS(D) {c.genus_base}",
        f"ORDINARY {'yes' if c.total_ordinary else 'no (smoothening exists, ordinarity not guaranteed)'}",
        f"RH-BUDGET {c.ramification_budget}",
    ]
    lines += [f"CHECK {k.name} {k.status}: {k.evidence}" for k in c.checklist]
    lines += [f"NODE-ORBIT {d}" for d in c.node_classes]
    lines.append(f"RAMIFICATION-POINTS {NOT_COMPUTED}")
    lines.append(f"NOTE {c.field_note}")
    return "\n".join(lines) + "\n"


def render_checklist(checklist: Sequence[Check], fmt: str = "text") -> str:
    """Render a (possibly failing) checklist; failures come with their evidence."""
    failed = [c for c in checklist if not c.passed]
    if fmt == "json":
        doc = {
            "issued": not failed,
            "failures": [c.name for c in failed],
            "checklist": [{"name": c.name, "status": c.status, "evidence": c.evidence} for c in checklist],
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"REFUSED {len(failed)} hypothesis check(s) failed" if failed else "ALL CHECKS PASS"]
    lines += [f"CHECK {c.name} {c.status}: {c.evidence}" for c in checklist]
    return "\n".join(lines) + "\n"
