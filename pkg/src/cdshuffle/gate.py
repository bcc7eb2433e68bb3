"""Computational elimination of the 32 candidate doubling products.

The quaternion property (``e_p e_q = e_r`` implies ``e_q e_r = e_p`` and
``e_r e_p = e_q``) is checked in two stages: a screen on the initial
interior points ``(2s, 1)``, ``(1, 2s+1)``, ``(2s+1, 2s)``, then an
exhaustive pass over every interior pair below ``2**n``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator

from .algebra import (
    ALL_PRODUCTS,
    VALID_PRODUCTS,
    Element,
    ProductSpec,
    as_signed_index,
    basis,
    basis_mul,
    conj,
    level_for,
    mul,
    norm_sq,
    one,
    random_element,
    scalar,
)

Q_CONDITIONS = ("(2s,1,2s+1)", "(1,2s+1,2s)", "(2s+1,2s,1)")
QT_CONDITIONS = ("(1,2s,2s+1)", "(2s,2s+1,1)", "(2s+1,1,2s)")

AXIOMS = ("unit", "conj_sum", "conj_product", "product_conj", "square", "anticommute")


def candidates() -> list[ProductSpec]:
    return list(ALL_PRODUCTS)


# -- axioms ------------------------------------------------------------------


@dataclass
class AxiomReport:
    spec: ProductSpec
    n: int
    checks: dict = field(default_factory=lambda: {a: 0 for a in AXIOMS})
    failures: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def passed(self, axiom: str) -> bool:
        return axiom not in self.failures

    def _record(self, axiom, holds, witness):
        self.checks[axiom] += 1
        if not holds and axiom not in self.failures:
            self.failures[axiom] = witness


def _is_real(x: Element) -> bool:
    return not any(x.coeffs[1:])


def _check_pair_axioms(report: AxiomReport, spec, x, y, witness) -> None:
    level = x.level
    xs = conj(x)
    report._record("unit", mul(spec, one(level), x) == x == mul(spec, x, one(level)), witness)
    report._record("conj_sum", _is_real(x + xs), witness)
    nx = scalar(norm_sq(x), level)
    report._record("conj_product", mul(spec, x, xs) == nx == mul(spec, xs, x), witness)
    report._record("product_conj", conj(mul(spec, x, y)) == mul(spec, conj(y), xs), witness)


def axiom_check(spec: ProductSpec, n: int, samples: int = 50, seed: int = 0) -> AxiomReport:
    """Check the defining axioms on every basis vector and on random elements.

    Levels ``0..n`` are covered.  Random elements are drawn ``samples`` per
    level; the square and anticommutation laws only concern basis vectors.
    """
    if n > 4:
        raise ValueError("axiom_check supports n <= 4")
    spec = ProductSpec(*spec)
    rng = random.Random(seed)
    report = AxiomReport(spec, n)
    for level in range(n + 1):
        dim = 1 << level
        units = [basis(p, level) for p in range(dim)]
        for p, ep in enumerate(units):
            for q, eq in enumerate(units):
                _check_pair_axioms(report, spec, ep, eq, (level, p, q))
            if p:
                report._record("square", mul(spec, ep, ep) == -one(level), (level, p))
            for q in range(1, p):
                eq = units[q]
                anti = (mul(spec, ep, eq) + mul(spec, eq, ep)).is_zero()
                report._record("anticommute", anti, (level, p, q))
        for i in range(samples):
            x = random_element(rng, level)
            y = random_element(rng, level)
            _check_pair_axioms(report, spec, x, y, (level, "random", i))
    return report


# -- initial screen ----------------------------------------------------------


@dataclass
class ScreenResult:
    spec: ProductSpec
    q_hits: frozenset
    qt_hits: frozenset

    @property
    def passed(self) -> bool:
        return not self.q_hits or not self.qt_hits


def initial_screen(spec: ProductSpec, s_max: int = 8) -> ScreenResult:
    """Classify the initial-point products into options Q and Q-transpose."""
    if s_max < 1:
        raise ValueError("s_max must be >= 1")
    spec = ProductSpec(*spec)
    q_hits, qt_hits = set(), set()
    for s in range(1, s_max + 1):
        level = level_for(2 * s + 1)
        e1, e2s, e2s1 = basis(1, level), basis(2 * s, level), basis(2 * s + 1, level)
        # (product, target, Q label, Q-transpose label)
        cases = (
            (mul(spec, e2s, e1), e2s1, Q_CONDITIONS[0], QT_CONDITIONS[0]),
            (mul(spec, e1, e2s1), e2s, Q_CONDITIONS[1], QT_CONDITIONS[2]),
            (mul(spec, e2s1, e2s), e1, Q_CONDITIONS[2], QT_CONDITIONS[1]),
        )
        for prod, target, q_label, qt_label in cases:
            if prod == target:
                q_hits.add(q_label)
            elif prod == -target:
                qt_hits.add(qt_label)
            else:
                raise AssertionError(f"{spec.raw_name}: initial product is not ±basis")
    return ScreenResult(spec, frozenset(q_hits), frozenset(qt_hits))


# -- exhaustive quaternion check ---------------------------------------------

NOT_SIGNED_BASIS = "not_signed_basis"
WRONG_INDEX = "wrong_index"
Q_TO_PQ = "e_q*e_pq != e_p"
PQ_TO_P = "e_pq*e_p != e_q"


@dataclass(frozen=True)
class Violation:
    spec: ProductSpec
    p: int
    q: int
    kind: str

    def __str__(self) -> str:
        return f"{self.spec.raw_name}: (p,q)=({self.p},{self.q}) {self.kind}"


def interior_pairs(n: int) -> Iterator[tuple[int, int]]:
    """All ``(p, q)`` with ``0 != p != q != 0`` below ``2**n``, lexicographic."""
    size = 1 << n
    for p in range(1, size):
        for q in range(1, size):
            if p != q:
                yield p, q


def _dense_basis_mul(spec, p, q, level):
    return as_signed_index(mul(spec, basis(p, level), basis(q, level)))


def quaternion_check(spec: ProductSpec, n: int, dense: bool = False) -> Violation | None:
    """First (lexicographically least) violation below ``2**n``, or ``None``.

    ``dense=True`` multiplies full coefficient vectors instead of using the
    signed-basis recursion; both evaluate the same binomials.
    """
    if n > 6:
        raise ValueError("quaternion_check is capped at n <= 6")
    spec = ProductSpec(*spec)
    if dense:
        def prod(p, q):
            return _dense_basis_mul(spec, p, q, n)
    else:
        def prod(p, q):
            return basis_mul(spec, p, q)

    for p, q in interior_pairs(n):
        r = p ^ q
        pq = prod(p, q)
        if pq is None:
            return Violation(spec, p, q, NOT_SIGNED_BASIS)
        if pq.index != r:
            return Violation(spec, p, q, WRONG_INDEX)
        if pq.sign < 0:
            continue
        if prod(q, r) != (1, p):
            return Violation(spec, p, q, Q_TO_PQ)
        if prod(r, p) != (1, q):
            return Violation(spec, p, q, PQ_TO_P)
    return None


# -- full elimination --------------------------------------------------------


@dataclass
class EliminationRecord:
    spec: ProductSpec
    screen: ScreenResult
    gate_pass: bool | None
    violation: Violation | None

    def to_dict(self) -> dict:
        d = {
            "f": self.spec.f,
            "g": self.spec.g,
            "name": self.spec.name,
            "screenPass": self.screen.passed,
            "qHits": sorted(self.screen.q_hits),
            "qtHits": sorted(self.screen.qt_hits),
            "gatePass": self.gate_pass,
        }
        if self.violation is not None:
            v = self.violation
            d["violation"] = {"p": v.p, "q": v.q, "kind": v.kind}
        return d


@dataclass
class EliminationReport:
    s_max: int
    n: int
    records: list[EliminationRecord]

    @property
    def screen_survivors(self) -> list[ProductSpec]:
        return [r.spec for r in self.records if r.screen.passed]

    @property
    def survivors(self) -> list[ProductSpec]:
        return [r.spec for r in self.records if r.gate_pass]

    @property
    def matches_expected(self) -> bool:
        return len(self.screen_survivors) == 16 and set(self.survivors) == set(VALID_PRODUCTS)

    def to_dict(self) -> dict:
        return {
            "sMax": self.s_max,
            "n": self.n,
            "candidates": len(self.records),
            "screenSurvivors": [s.raw_name for s in self.screen_survivors],
            "survivors": [s.name for s in self.survivors],
            "records": [r.to_dict() for r in self.records],
        }

    def render_text(self) -> str:
        by_fg = {(r.spec.f, r.spec.g): r for r in self.records}
        header = "      " + "".join(f"{'f' + str(f):>6}" for f in range(8))

        def grid(title, cell):
            lines = [title, header]
            for g in range(4):
                lines.append(f"g{g:<5}" + "".join(f"{cell(by_fg[f, g]):>6}" for f in range(8)))
            return lines

        def screen_cell(r):
            if r.screen.q_hits and r.screen.qt_hits:
                return "x"
            return "Q" if r.screen.q_hits else "QT"

        def gate_cell(r):
            if not r.screen.passed:
                return "-"
            return r.spec.name if r.gate_pass else "x"

        out = grid(f"initial screen (sMax={self.s_max}): Q / QT options, x = both", screen_cell)
        out.append("")
        out += grid(f"quaternion gate (n={self.n}): survivors named, x = violation", gate_cell)
        out.append("")
        out.append(
            f"32 candidates -> {len(self.screen_survivors)} after screen"
            f" -> {len(self.survivors)} valid: {' '.join(s.name for s in self.survivors)}"
        )
        return "\n".join(out)


def elimination_report(s_max: int = 8, n: int = 4) -> EliminationReport:
    records = []
    for spec in candidates():
        screen = initial_screen(spec, s_max)
        if screen.passed:
            violation = quaternion_check(spec, n)
            records.append(EliminationRecord(spec, screen, violation is None, violation))
        else:
            records.append(EliminationRecord(spec, screen, None, None))
    return EliminationReport(s_max, n, records)
