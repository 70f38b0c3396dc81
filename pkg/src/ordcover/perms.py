"""Finite permutation groups stored as explicit, closed element sets.

Permutations act on ``{0, ..., degree - 1}``.  Products compose right to
left: ``(a * b)(x) == a(b(x))``.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Iterator, Sequence

DEFAULT_CAP = 10_000


class GroupError(ValueError):
    """Raised for malformed permutations or inconsistent group data."""


class GroupTooLarge(GroupError):
    """The closure exceeded the configured element cap."""


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(i) for i in self.images)
        if not images:
            raise GroupError("a permutation needs degree >= 1")
        if sorted(images) != list(range(len(images))):
            raise GroupError(f"not a bijection of 0..{len(images) - 1}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> Permutation:
        """Parse cycle notation such as ``"(0 1 2)(3 4)"``; ``"()"`` is the identity."""
        text = text.strip()
        if not re.fullmatch(r"(\(\s*[\d\s,]*\))+", text):
            raise GroupError(f"bad cycle notation: {text!r}")
        images = list(range(degree))
        seen: set[int] = set()
        for body in re.findall(r"\(([^)]*)\)", text):
            points = [int(tok) for tok in re.split(r"[\s,]+", body.strip()) if tok]
            for pt in points:
                if pt < 0 or pt >= degree:
                    raise GroupError(f"point {pt} outside 0..{degree - 1} in {text!r}")
                if pt in seen:
                    raise GroupError(f"point {pt} repeated in {text!r}")
                seen.add(pt)
            for i, pt in enumerate(points):
                images[pt] = points[(i + 1) % len(points)]
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        if self.degree != other.degree:
            raise GroupError(f"degree mismatch: {self.degree} vs {other.degree}")
        return Permutation(tuple(self.images[i] for i in other.images))

    def __pow__(self, n: int) -> Permutation:
        if n < 0:
            return self.inverse() ** (-n)
        result = Permutation.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            nxt = self.images[start]
            while nxt != start:
                cyc.append(nxt)
                seen[nxt] = True
                nxt = self.images[nxt]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __str__(self) -> str:
        return self.cycle_string()


def element_order(g: Permutation) -> int:
    """Least n >= 1 with g**n the identity (lcm of the cycle lengths)."""
    return reduce(math.lcm, (len(c) for c in g.cycles()), 1)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A permutation group given by its complete element set.

    Equality compares degree and element set only; ``generators`` and
    ``label`` are presentation data.
    """

    degree: int
    elements: frozenset[Permutation]
    generators: tuple[Permutation, ...] = ()
    label: str = field(default="")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.degree == other.degree and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.degree, self.elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: object) -> bool:
        return g in self.elements

    def __iter__(self) -> Iterator[Permutation]:
        return iter(sorted(self.elements))

    def subgroup(self, elements: Iterable[Permutation], label: str = "") -> FiniteGroup:
        """Wrap a subset known to be closed (e.g. a stabilizer) as a group."""
        elems = frozenset(elements) | {self.identity}
        if not elems <= self.elements:
            raise GroupError("subgroup elements must lie in the group")
        gens = tuple(sorted(g for g in elems if not g.is_identity()))
        return FiniteGroup(self.degree, elems, gens, label)

    def is_closed(self) -> bool:
        """Exhaustive product/inverse table check."""
        if self.identity not in self.elements:
            return False
        for a in self.elements:
            if a.inverse() not in self.elements:
                return False
            for b in self.elements:
                if a * b not in self.elements:
                    return False
        return True

    def __repr__(self) -> str:
        name = self.label or "group"
        gens = ", ".join(g.cycle_string() for g in self.generators)
        return f"FiniteGroup({name}, order={self.order}, degree={self.degree}, gens=[{gens}])"


def closure(
    generators: Iterable[Permutation],
    degree: int | None = None,
    cap: int = DEFAULT_CAP,
    label: str = "",
) -> FiniteGroup:
    """Smallest group containing ``generators``, found breadth first."""
    gens = tuple(dict.fromkeys(generators))
    degrees = {g.degree for g in gens}
    if degree is not None:
        degrees.add(degree)
    if len(degrees) > 1:
        raise GroupError(f"generators have mixed degrees {sorted(degrees)}")
    deg = degrees.pop() if degrees else 1

    ident = Permutation.identity(deg)
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x * g
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise GroupTooLarge(f"closure exceeds cap of {cap} elements")
                queue.append(y)
    return FiniteGroup(deg, frozenset(seen), gens, label)


def is_cyclic(group: FiniteGroup) -> tuple[bool, Permutation | None]:
    """Return ``(True, witness)`` when some element has order ``|G|``."""
    n = group.order
    for g in group:
        if element_order(g) == n:
            return True, g
    return False, None


def is_abelian(group: FiniteGroup) -> bool:
    gens = group.generators or tuple(group.elements)
    return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1 :])


def enumerate_elements(group: FiniteGroup) -> list[Permutation]:
    """Canonical enumeration of a group's elements (sorted by images)."""
    return sorted(group.elements)


def semidirect_with_inversion(group: FiniteGroup) -> FiniteGroup:
    """G x| C2 with C2 inverting, realized on the element set of G.

    Point ``i`` stands for ``enumerate_elements(group)[i]``.  The result is
    generated by left translations by the generators of ``group`` and the
    inversion map.  When every element of G squares to the identity the
    inversion map is trivial and the result is just G acting on itself.
    """
    if not is_abelian(group):
        raise GroupError("semidirect_with_inversion needs an abelian group")
    elems = enumerate_elements(group)
    index = {g: i for i, g in enumerate(elems)}
    gens = [Permutation(tuple(index[g * x] for x in elems)) for g in group.generators]
    gens.append(Permutation(tuple(index[x.inverse()] for x in elems)))
    label = f"{group.label or 'G'}:C2"
    return closure(gens, degree=len(elems), label=label)


def direct_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    """G1 x G2 acting on the disjoint union of the two ground sets."""
    d1, d2 = g1.degree, g2.degree

    def left(p: Permutation) -> Permutation:
        return Permutation(p.images + tuple(range(d1, d1 + d2)))

    def right(p: Permutation) -> Permutation:
        return Permutation(tuple(range(d1)) + tuple(d1 + i for i in p.images))

    gens = [left(p) for p in g1.generators] + [right(p) for p in g2.generators]
    label = f"{g1.label or 'G1'}x{g2.label or 'G2'}"
    return closure(gens, degree=d1 + d2, label=label)


def _cycle(points: Sequence[int], degree: int) -> Permutation:
    images = list(range(degree))
    for i, pt in enumerate(points):
        images[pt] = points[(i + 1) % len(points)]
    return Permutation(tuple(images))


def cyclic(n: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic(n) needs n >= 1")
    gens = [_cycle(range(n), n)] if n > 1 else []
    return closure(gens, degree=n, cap=cap, label=f"C{n}")


def dihedral(n: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Symmetries of the regular n-gon; order 2n."""
    if n < 1:
        raise GroupError("dihedral(n) needs n >= 1")
    if n == 1:
        return closure([_cycle([0, 1], 2)], cap=cap, label="D1")
    if n == 2:
        return closure([_cycle([0, 1], 4), _cycle([2, 3], 4)], cap=cap, label="D2")
    rotation = _cycle(range(n), n)
    reflection = Permutation(tuple((-i) % n for i in range(n)))
    return closure([reflection, rotation], cap=cap, label=f"D{n}")


def symmetric(n: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    if n < 1:
        raise GroupError("symmetric(n) needs n >= 1")
    if math.factorial(n) > cap:
        raise GroupTooLarge(f"S{n} has more than {cap} elements")
    gens = [] if n == 1 else [_cycle([0, 1], n), _cycle(range(n), n)]
    return closure(dict.fromkeys(gens), degree=n, cap=cap, label=f"S{n}")


def alternating(n: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    if n < 1:
        raise GroupError("alternating(n) needs n >= 1")
    if math.factorial(n) // 2 > cap:
        raise GroupTooLarge(f"A{n} has more than {cap} elements")
    gens = [_cycle([0, 1, i], n) for i in range(2, n)]
    return closure(gens, degree=n, cap=cap, label=f"A{n}")


_FAMILIES = {"C": cyclic, "D": dihedral, "S": symmetric, "A": alternating}


def standard_group(name: str, n: int | None = None, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Look up a standard group.

    Accepts ``standard_group("dihedral", 4)``, ``standard_group("D", 4)`` or
    ``standard_group("D4")``; products are written ``"C2xC4"``.
    """
    if n is None:
        parts = name.split("x")
        if len(parts) > 1:
            return reduce(direct_product, (standard_group(p, cap=cap) for p in parts))
        m = re.fullmatch(r"([A-Za-z]+)(\d+)", name.strip())
        if not m:
            raise GroupError(f"unknown group name {name!r}")
        name, n = m.group(1), int(m.group(2))
    key = name.strip()
    long_names = {"cyclic": "C", "dihedral": "D", "symmetric": "S", "alternating": "A"}
    key = long_names.get(key.lower(), key.upper())
    if key not in _FAMILIES:
        raise GroupError(f"unknown group family {name!r}")
    return _FAMILIES[key](n, cap=cap)


def parse_group(generators: Sequence[str], degree: int, label: str = "") -> FiniteGroup:
    return closure((Permutation.from_cycles(g, degree) for g in generators), degree=degree, label=label)
