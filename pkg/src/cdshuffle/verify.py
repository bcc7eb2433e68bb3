"""Invariant suite run by ``cdshuffle verify``."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .algebra import ALL_PRODUCTS, VALID_PRODUCTS, basis_mul, mul, random_element
from .gate import axiom_check, quaternion_check
from .render import render_pgm
from .structure import all_triples, brute_force_triples
from .tree import evaluate, evaluate_table
from .twists import ALL_TWISTS, W2, mul_via_twist, twist, twist_id, twist_table, twist_table_direct, verify_blocks


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        tail = f"  ({self.detail})" if self.detail else ""
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}{tail}"


def _axioms(level):
    n = min(level, 3)
    bad = [s.raw_name for s in ALL_PRODUCTS if not axiom_check(s, n, samples=10).ok]
    return not bad, f"32 candidates, levels <= {n}" + (f"; failing {bad}" if bad else "")


def _engines_basis(level):
    size = 1 << level
    for spec in VALID_PRODUCTS:
        tid = twist_id(spec)
        for p in range(size):
            for q in range(size):
                if basis_mul(spec, p, q) != (twist(tid, p, q), p ^ q):
                    return False, f"{spec} at ({p},{q})"
    return True, f"8 products, p,q < {size}"


def _engines_dense(level):
    n = min(level, 4)
    rng = random.Random(level)
    for spec in VALID_PRODUCTS:
        for _ in range(10):
            x, y = random_element(rng, n), random_element(rng, n)
            if mul(spec, x, y) != mul_via_twist(twist_id(spec), x, y):
                return False, f"{spec} on random level-{n} elements"
    return True, f"8 products, 10 random pairs at level {n}"


def _antisymmetry(level):
    size = 1 << level
    for tid in ALL_TWISTS:
        t = twist_table(tid, level)
        off = ~np.eye(size, dtype=bool)
        off[0, :] = off[:, 0] = False
        if not (t[off] == -t.T[off]).all():
            return False, tid.name
        if np.diag(t)[1:].max(initial=-1) != -1:
            return False, f"{tid.name} diagonal"
    return True, f"p,q < {size}"


def _transpose(level):
    for k in range(4):
        if not np.array_equal(twist_table(ALL_TWISTS[k + 4], level), twist_table(ALL_TWISTS[k], level).T):
            return False, f"w{k}"
    return True, ""


def _tables(level):
    n = min(level, 7)
    for tid in ALL_TWISTS:
        if not np.array_equal(twist_table(tid, n), twist_table_direct(tid, n)):
            return False, tid.name
        for m in range(1, n):
            small, big = twist_table(tid, m), twist_table(tid, m + 1)
            side = 1 << m
            if not np.array_equal(big[:side, :side], small):
                return False, f"{tid.name} quadrant n={m}"
            if render_pgm(big[:side, :side]) != render_pgm(small):
                return False, f"{tid.name} pgm quadrant n={m}"
    return True, f"vectorised == scalar and quadrant property, n <= {n}"


def _blocks(level):
    if level < 2:
        return True, "skipped below level 2"
    bad = [r.summary() for r in (verify_blocks(t, level) for t in ALL_TWISTS) if not r.ok]
    return not bad, "; ".join(bad)


def _tree(level):
    size = 1 << level
    t = twist_table(W2, level)
    if not np.array_equal(evaluate_table(level), t):
        return False, "vectorised automaton"
    step = max(1, size // 64)
    for p in range(0, size, step):
        for q in range(size):
            if evaluate(p, q) != t[p, q]:
                return False, f"({p},{q})"
    return True, f"p,q < {size}"


def _triples(level):
    n = min(level, 5)
    for spec in VALID_PRODUCTS:
        if all_triples(spec, n) != brute_force_triples(spec, n):
            return False, str(spec)
    return True, f"rules == brute force, n <= {n}"


def _gate(level):
    n = min(level, 5)
    for spec in ALL_PRODUCTS:
        if (quaternion_check(spec, n) is None) != spec.valid:
            return False, spec.raw_name
    return True, f"exactly the 8 valid products pass at n={n}"


CHECKS: list[tuple[str, Callable[[int], tuple[bool, str]]]] = [
    ("defining axioms", _axioms),
    ("doubling == twist on basis pairs", _engines_basis),
    ("doubling == twist on dense elements", _engines_dense),
    ("twist antisymmetry and squares", _antisymmetry),
    ("transpose duality", _transpose),
    ("table construction and self-similarity", _tables),
    ("twist blocks", _blocks),
    ("tree automaton == w2", _tree),
    ("triple rules == brute force", _triples),
    ("quaternion gate", _gate),
]


def run_checks(level: int) -> list[CheckResult]:
    if not 1 <= level <= 10:
        raise ValueError("verify level must be in 1..10")
    results = []
    for name, fn in CHECKS:
        ok, detail = fn(level)
        results.append(CheckResult(name, ok, detail))
    return results
