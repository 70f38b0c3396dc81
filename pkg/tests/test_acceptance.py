"""Acceptance criteria, one test each; every test records a PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) for the lines alone, or
through pytest, where they are printed in the terminal summary.
"""

from __future__ import annotations

import itertools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import FAULTS, petersen_hardcoded  # noqa: E402

from ordcover import gallery  # noqa: E402
from ordcover.certificate import CertificationRefused, certify  # noqa: E402
from ordcover.curves import arithmetic_genus, is_prime, nodes, quotient_curve  # noqa: E402
from ordcover.eegraph import EEGraph, is_isomorphic, quotient, trivial_action, validate  # noqa: E402
from ordcover.perms import Permutation, closure, cyclic, standard_group  # noqa: E402

RESULTS: list[str] = []


def one_loop() -> EEGraph:
    return EEGraph.from_edges(["v"], [("x", "v", "y", "v")])


def one_point() -> EEGraph:
    return EEGraph.from_edges(["v"], [])


def brute_closure(gens: list[Permutation], degree: int) -> set[Permutation]:
    elems = {Permutation.identity(degree), *gens}
    while True:
        new = elems | {a * b for a in elems for b in elems}
        if new == elems:
            return elems
        elems = new


def coprime_primes(order: int, count: int) -> list[int]:
    return list(itertools.islice((p for p in itertools.count(2) if is_prime(p) and order % p), count))


def crit_1() -> list[str]:
    bad = []
    c3, s3 = gallery.triangle("C3"), gallery.triangle("S3")
    if not is_isomorphic(quotient(c3.graph, c3.action)[0], one_loop())[0]:
        bad.append("triangle/C3 quotient is not one vertex with one loop")
    if not is_isomorphic(quotient(s3.graph, s3.action)[0], one_point())[0]:
        bad.append("triangle/S3 quotient is not one edgeless vertex")
    return bad


def crit_2() -> list[str]:
    bad = []
    for g, a in enumerate(gallery.hyperelliptic_chain(10), start=1):
        for p in (3, 5, 7):
            c = certify(a, p)
            got = (c.group_order, c.genus_total, c.genus_base, c.total_ordinary, c.ramification_budget)
            if got != (2, g, 0, True, 2 * g + 2):
                bad.append(f"g={g} p={p}: {got}")
    return bad


CAYLEY = [("A4", "(0 1)(2 3)", "(0 1 2)"), ("S3", "(0 1)", "(0 1 2)"), ("D4", "(1 3)", "(0 1 2 3)")]


def crit_3() -> list[str]:
    bad = []
    for name, h1, h2 in CAYLEY:
        grp = standard_group(name)
        a = gallery.cayley_two_generator(
            grp, Permutation.from_cycles(h1, grp.degree), Permutation.from_cycles(h2, grp.degree)
        )
        p = coprime_primes(grp.order, 1)[0]
        c = certify(a, p)
        d, _ = quotient_curve(a)
        if c.genus_total != grp.order // 2 + 1 or c.genus_base != 1:
            bad.append(f"{name}: genus {c.genus_total} over {c.genus_base}")
        if not is_isomorphic(d.graph, one_loop())[0]:
            bad.append(f"{name}: quotient is not one vertex with one loop")
    return bad


def crit_4() -> list[str]:
    grp = standard_group("C2xC4")
    a = gallery.semidirect_cover(grp, Permutation.from_cycles("(0 1)", 6), Permutation.from_cycles("(2 3 4 5)", 6))
    c = certify(a, 3)
    d, _ = quotient_curve(a)
    bad = []
    if a.group.order != 16:
        bad.append(f"|H| = {a.group.order}")
    if not is_isomorphic(d.graph, one_point())[0]:
        bad.append("quotient is not a single edgeless vertex")
    if (c.genus_total, c.genus_base) != (5, 0):
        bad.append(f"genus {c.genus_total} over {c.genus_base}")
    return bad


def crit_5() -> list[str]:
    bad = []
    for n in range(3, 13):
        a = gallery.ngon_dihedral(n)
        for p in coprime_primes(2 * n, 3):
            c = certify(a, p)
            if (c.genus_total, c.genus_base, c.ramification_budget) != (1, 0, 4 * n):
                bad.append(f"n={n} p={p}: {c.genus_total}/{c.genus_base} R={c.ramification_budget}")
    return bad


def crit_6() -> list[str]:
    a = gallery.petersen_a5()
    bad = []
    if not is_isomorphic(a.graph, petersen_hardcoded())[0]:
        bad.append("graph is not the Petersen graph")
    c = certify(a, 7)
    got = (c.group_order, c.genus_total, c.genus_base, c.ramification_budget)
    if got != (60, 6, 0, 130):
        bad.append(f"certificate fields {got}")
    return bad


def crit_7() -> list[str]:
    bad = []
    total = refused = 0
    for entry in gallery.gallery_entries():
        for fault in FAULTS:
            corrupted, p, name = fault(entry.build)
            total += 1
            try:
                certify(corrupted, p)
            except CertificationRefused as exc:
                if name in exc.failed_names:
                    refused += 1
                else:
                    bad.append(f"{entry.build.label}/{fault.__name__}: refused for {sorted(exc.failed_names)}")
            else:
                bad.append(f"{entry.build.label}/{fault.__name__}: certificate issued")
    if refused != total:
        bad.append(f"{refused}/{total} refused")
    return bad


def crit_8() -> list[str]:
    bad = []
    trivial = closure([], degree=1)
    for entry in gallery.gallery_entries():
        a = entry.build
        label = a.label
        q, _ = quotient(a.graph, a.action)
        if validate(q):
            bad.append(f"{label}: quotient violates involution axioms")
        if not is_isomorphic(quotient(a.graph, trivial_action(a.graph, trivial))[0], a.graph)[0]:
            bad.append(f"{label}: trivial quotient not isomorphic")
        d, _ = quotient_curve(a)
        if d.graph != q:
            bad.append(f"{label}: graph of quotient curve differs from quotient of graph")
        for orb in a.action.vertex_orbits() + a.action.end_orbits():
            if a.group.order % len(orb):
                bad.append(f"{label}: orbit of size {len(orb)}")
        if a.group.order <= 60 and a.group.elements != brute_closure(list(a.group.generators), a.group.degree):
            bad.append(f"{label}: closure differs from brute force")
    for name in ("C1", "C2", "C6", "D6", "S4", "A5", "C2xC4", "C3xC3", "D12"):
        grp = standard_group(name)
        if grp.elements != brute_closure(list(grp.generators), grp.degree):
            bad.append(f"{name}: closure differs from brute force")
    return bad


CRITERIA = [
    (1, "triangle quotients", crit_1),
    (2, "hyperelliptic family g = 1..10", crit_2),
    (3, "Cayley family A4, S3, D4", crit_3),
    (4, "semidirect C2 x C4", crit_4),
    (5, "D_n n-gon, n = 3..12", crit_5),
    (6, "Petersen / A5", crit_6),
    (7, "fault injection refusal", crit_7),
    (8, "property suites", crit_8),
]


def evaluate(number: int, title: str, fn) -> tuple[bool, str]:
    bad = fn()
    line = f"{'PASS' if not bad else 'FAIL'} criterion {number}: {title}"
    if bad:
        line += " -- " + "; ".join(bad[:5])
    return not bad, line


@pytest.mark.parametrize("number,title,fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn):
    ok, line = evaluate(number, title, fn)
    RESULTS.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    outcomes = [evaluate(*c) for c in CRITERIA]
    for _, line in outcomes:
        print(line)
    sys.exit(0 if all(ok for ok, _ in outcomes) else 1)
