"""Structure-constant triples ``(p, q, r)`` meaning ``e_p e_q = e_r``.

Triples are generated from the seeds ``(1, 2k, 2k+1)`` (or their reversal
for the transposed products) by four doubling rules per product family,
closed under cyclic rotation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .algebra import VALID_PRODUCTS, ProductSpec
from .twists import twist, twist_id


class Triple(NamedTuple):
    p: int
    q: int
    r: int

    def rotations(self) -> tuple["Triple", "Triple", "Triple"]:
        p, q, r = self
        return Triple(p, q, r), Triple(q, r, p), Triple(r, p, q)

    def canonical(self) -> "Triple":
        return min(self.rotations())

    def reversed(self) -> "Triple":
        """Swap the factors: ``(q, p, r)``."""
        return Triple(self.q, self.p, self.r)

    def __str__(self) -> str:
        return f"({self.p},{self.q},{self.r})"


def canonical(t: Iterable[int]) -> Triple:
    return Triple(*t).canonical()


def cyclic_closure(t: Iterable[int]) -> tuple[Triple, Triple, Triple]:
    return Triple(*t).rotations()


def _family(product: ProductSpec) -> int:
    return twist_id(product).base


def seed_triples(product: ProductSpec, n: int) -> list[Triple]:
    if n < 1:
        raise ValueError("n must be >= 1")
    tid = twist_id(product)
    seeds = []
    for k in range(1, 1 << (n - 1)):
        even, odd = 2 * k, 2 * k + 1
        seeds.append(Triple(1, odd, even) if tid.transposed else Triple(1, even, odd))
    return seeds


def successors(product: ProductSpec, t: Iterable[int]) -> tuple[Triple, ...]:
    p, q, r = t
    family = _family(product)
    if family in (0, 1):
        first = Triple(2 * r, 2 * q, 2 * p)
    else:
        first = Triple(2 * p, 2 * q, 2 * r)
    if family in (0, 2):
        rest = (
            Triple(2 * p, 2 * q + 1, 2 * r + 1),
            Triple(2 * p + 1, 2 * q, 2 * r + 1),
            Triple(2 * p + 1, 2 * q + 1, 2 * r),
        )
    else:
        rest = (
            Triple(2 * r + 1, 2 * q + 1, 2 * p),
            Triple(2 * r + 1, 2 * q, 2 * p + 1),
            Triple(2 * r, 2 * q + 1, 2 * p + 1),
        )
    return (first,) + rest


def all_triples(product: ProductSpec, n: int, verify: bool = True) -> set[Triple]:
    """Canonical triples of ``product`` with all indices below ``2**n``.

    Breadth-first closure of the seeds under successors and rotation.  With
    ``verify`` every result is confirmed against the twist recursion.
    """
    if n > 8:
        raise ValueError("all_triples is limited to n <= 8")
    bound = 1 << n
    seen: set[Triple] = set()
    queue = deque(seed_triples(product, n) if n >= 1 else [])
    while queue:
        t = queue.popleft()
        c = t.canonical()
        if c in seen:
            continue
        seen.add(c)
        for rot in c.rotations():
            for succ in successors(product, rot):
                if max(succ) < bound and succ.canonical() not in seen:
                    queue.append(succ)
    if verify:
        tid = twist_id(product)
        for t in seen:
            if t.r != t.p ^ t.q or twist(tid, t.p, t.q) != 1:
                raise AssertionError(f"{product}: generated triple {t} is not a structure constant")
    return seen


def brute_force_triples(product: ProductSpec, n: int) -> set[Triple]:
    """Canonical triples read directly off the twist over ``p, q < 2**n``."""
    tid = twist_id(product)
    size = 1 << n
    return {
        Triple(p, q, p ^ q).canonical()
        for p in range(1, size)
        for q in range(1, size)
        if p != q and twist(tid, p, q) == 1
    }


def format_triples(triples: Iterable[Triple]) -> str:
    return "\n".join(f"{t.p} {t.q} {t.r}" for t in sorted(triples))


# -- Fano plane ---------------------------------------------------------------

ARROWS = {"down": "↓", "up": "↑", "ccw": "↺", "cw": "↻", "sides_ccw": "→", "sides_cw": "←"}


@dataclass(frozen=True)
class FanoOrientation:
    altitudes: str  # "down" or "up"
    circle: str  # "ccw" or "cw"
    sides: str  # "ccw" or "cw"

    def arrows(self) -> str:
        return " ".join(
            (ARROWS[self.altitudes], ARROWS[self.circle], ARROWS["sides_" + self.sides])
        )

    def __str__(self) -> str:
        return self.arrows()


def _sense(triples: set[Triple], forward, backward, labels) -> str:
    has_fwd = canonical(forward) in triples
    has_bwd = canonical(backward) in triples
    if has_fwd == has_bwd:
        raise AssertionError(f"ambiguous orientation for {forward} / {backward}")
    return labels[0] if has_fwd else labels[1]


def fano_orientation(product: ProductSpec) -> FanoOrientation:
    triples = all_triples(product, 3)
    return FanoOrientation(
        altitudes=_sense(triples, (1, 2, 3), (1, 3, 2), ("down", "up")),
        circle=_sense(triples, (2, 6, 4), (2, 4, 6), ("ccw", "cw")),
        sides=_sense(triples, (7, 2, 5), (5, 2, 7), ("ccw", "cw")),
    )


# -- permutation orbits ------------------------------------------------------

ORBIT_CYCLES = {
    VALID_PRODUCTS[0]: (1, 2, 6, 3, 4, 5, 7),
    VALID_PRODUCTS[3]: (1, 2, 4, 3, 6, 7, 5),
}


@dataclass
class OrbitReport:
    product: ProductSpec
    cycle: tuple[int, ...]
    orbit: list[Triple]
    all_valid: bool
    covers_all: bool

    @property
    def ok(self) -> bool:
        return self.all_valid and self.covers_all


def permutation_orbit(product: ProductSpec, start: Triple = Triple(1, 2, 3)) -> OrbitReport:
    product = ProductSpec(*product)
    if product not in ORBIT_CYCLES:
        raise ValueError("orbit cycles are known only for P0 and P3")
    cycle = ORBIT_CYCLES[product]
    image = {a: cycle[(i + 1) % len(cycle)] for i, a in enumerate(cycle)}
    octonion = all_triples(product, 3)
    orbit, t = [], Triple(*start)
    for _ in range(len(cycle)):
        orbit.append(t)
        t = Triple(image[t.p], image[t.q], image[t.r])
    return OrbitReport(
        product,
        cycle,
        orbit,
        all_valid=all(o.canonical() in octonion for o in orbit),
        covers_all={o.canonical() for o in orbit} == octonion,
    )
