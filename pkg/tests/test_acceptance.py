"""The thirteen acceptance criteria, one test each.

Every test prints a ``PASS``/``FAIL`` line; the lines are repeated in the
pytest terminal summary.
"""

import random
import traceback

import numpy as np
import pytest

from cdshuffle.algebra import ALL_PRODUCTS, VALID_PRODUCTS, as_signed_index, basis, basis_mul, mul, random_element
from cdshuffle.cli import main
from cdshuffle.gate import axiom_check, elimination_report, quaternion_check
from cdshuffle.render import render_pgm
from cdshuffle.structure import all_triples, fano_orientation, permutation_orbit
from cdshuffle.tree import conjecture_scan, evaluate, evaluate_table
from cdshuffle.twists import ALL_TWISTS, W2, basis_product, mul_via_twist, twist, twist_id, twist_table, verify_blocks, xor_index
from conftest import ACCEPTANCE_LINES
from golden import FANO_ARROWS, OCTONION_TRIPLES, ORBITS, SCAN_1024, rotation_set
from oracle import ref_basis_product


def c1_elimination():
    report = elimination_report(8, 4)
    screen = {tuple(s) for s in report.screen_survivors}
    expected = {(f, g) for f in range(4) for g in (0, 1)} | {(f, g) for f in range(4, 8) for g in (2, 3)}
    ok = screen == expected and sorted(report.survivors) == sorted(VALID_PRODUCTS)
    ok = ok and main(["eliminate", "--smax", "8", "--n", "4"]) == 0
    return ok, f"32 -> {len(screen)} -> {len(report.survivors)}"


def c2_triples():
    bad = [s.name for s in VALID_PRODUCTS if all_triples(s, 3) != rotation_set(OCTONION_TRIPLES[s.name])]
    return not bad, "octonion triples for 8 products" + (f"; mismatch {bad}" if bad else "")


def c3_spot_value():
    spec = VALID_PRODUCTS[2]
    engines = {
        "doubling": tuple(basis_mul(spec, 93, 37)),
        "twist": tuple(basis_product(W2, 93, 37)),
        "tree": (evaluate(93, 37), 93 ^ 37),
        "dense": tuple(as_signed_index(mul(spec, basis(93, 7), basis(37, 7)))),
    }
    ok = twist(W2, 93, 37) == -1 and set(engines.values()) == {(-1, 120)}
    return ok, f"e93 e37 = -e120 via {', '.join(engines)}"


def c4_xor():
    return xor_index(27, 14) == 21, "27 xor 14 = 21"


def c5_blocks():
    bad = [r.summary() for r in (verify_blocks(t, 4) for t in ALL_TWISTS) if not r.ok]
    return not bad, "8 twists at n=4" + (f"; {bad}" if bad else "")


def c6_engines():
    n = 7
    size = 1 << n
    units = [basis(p, n) for p in range(size)]
    for spec in VALID_PRODUCTS:
        tid = twist_id(spec)
        for p in range(size):
            for q in range(size):
                if as_signed_index(mul(spec, units[p], units[q])) != basis_product(tid, p, q):
                    return False, f"{spec.name} basis ({p},{q})"
    rng = random.Random(2024)
    for spec in VALID_PRODUCTS:
        for _ in range(100):
            x, y = random_element(rng, 4), random_element(rng, 4)
            if mul(spec, x, y) != mul_via_twist(twist_id(spec), x, y):
                return False, f"{spec.name} dense level 4"
    if not np.array_equal(evaluate_table(12), twist_table(W2, 12)):
        return False, "tree vs w2 at 2^12"
    return True, "basis pairs < 2^7, 100 dense level-4 pairs, tree == w2 below 2^12"


def c7_axioms():
    bad = [s.raw_name for s in ALL_PRODUCTS if not axiom_check(s, 3, samples=50).ok]
    return not bad, "32 candidates, levels <= 3, 50 random elements per level" + (f"; {bad}" if bad else "")


def c8_quaternion():
    failing_valid = [s.name for s in VALID_PRODUCTS if quaternion_check(s, 5) is not None]
    invalid = [s for s in ALL_PRODUCTS if not s.valid]
    missing = [s.raw_name for s in invalid if quaternion_check(s, 4) is None]
    ok = not failing_valid and not missing and len(invalid) == 24
    return ok, "8 pass at n=5, 24 fail at n<=4"


def c9_self_similarity():
    for tid in ALL_TWISTS:
        for n in range(1, 7):
            small, big = twist_table(tid, n), twist_table(tid, n + 1)
            quad = big[: 1 << n, : 1 << n]
            if not np.array_equal(quad, small) or render_pgm(quad) != render_pgm(small):
                return False, f"{tid.name} n={n}"
    return True, "8 twists, n = 1..6, arrays and PGM bytes"


def c10_fano():
    got = {s.name: fano_orientation(s).arrows() for s in VALID_PRODUCTS}
    return got == FANO_ARROWS, " ".join(f"{k}:{v.replace(' ', '')}" for k, v in got.items())


def c11_orbits():
    ok = all(
        permutation_orbit(s).ok and rotation_set(permutation_orbit(s).orbit) == rotation_set(ORBITS[s.name])
        for s in (VALID_PRODUCTS[0], VALID_PRODUCTS[3])
    )
    return ok, "P0 (1263457), P3 (1243675)"


def c12_conjecture():
    report = conjecture_scan(1 << 10)
    got = {c.name: (c.checked, c.counterexamples) for c in report.claims}
    return got == SCAN_1024, ", ".join(f"{k}={v[1]}/{v[0]}" for k, v in got.items())


def _oracle_triples(spec):
    found = set()
    for p in range(1, 16):
        for q in range(1, 16):
            if p != q and ref_basis_product(spec.f, spec.g, p, q)[0] == 1:
                r = p ^ q
                found.add(min((p, q, r), (q, r, p), (r, p, q)))
    return found


def c13_triple_count():
    counts = {len(all_triples(s, 4)) for s in VALID_PRODUCTS}
    oracle = {len(_oracle_triples(s)) for s in VALID_PRODUCTS}
    return counts == oracle == {35}, f"|triples| = {counts} for all 8, oracle {oracle}"


CRITERIA = [
    (1, "elimination counts", c1_elimination),
    (2, "octonion triples", c2_triples),
    (3, "twist-tree spot value", c3_spot_value),
    (4, "xor example", c4_xor),
    (5, "block patterns", c5_blocks),
    (6, "engine equivalence", c6_engines),
    (7, "axiom suite", c7_axioms),
    (8, "quaternion property", c8_quaternion),
    (9, "self-similarity", c9_self_similarity),
    (10, "Fano orientations", c10_fano),
    (11, "permutation orbits", c11_orbits),
    (12, "conjecture scan", c12_conjecture),
    (13, "triple count", c13_triple_count),
]


@pytest.mark.parametrize("number, title, check", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, check):
    try:
        ok, detail = check()
    except Exception:
        ok, detail = False, traceback.format_exc(limit=2).strip().splitlines()[-1]
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({detail})"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line
