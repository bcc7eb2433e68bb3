"""Twist functions of the eight valid doubling products.

Every valid product satisfies ``e_p e_q = w(p, q) e_{p^q}`` for a sign
function ``w`` on the XOR group of non-negative integers.  Writing
``p = 2r + i`` and ``q = 2s + j``, each ``w`` is defined by a recursion on
``(r, s)`` whose shape depends on the parities ``(i, j)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .algebra import (
    MAX_LEVEL,
    VALID_PRODUCTS,
    Element,
    LevelError,
    ProductSpec,
    SignedIndex,
)

# A sign matrix is an int8 ndarray of +1/-1 with entry [p, q] = w(p, q).
SignMatrix = np.ndarray


class TwistId(NamedTuple):
    base: int
    transposed: bool = False

    @property
    def name(self) -> str:
        return f"w{self.base}{'*' if self.transposed else ''}"

    @property
    def product(self) -> ProductSpec:
        return VALID_PRODUCTS[self.base + (4 if self.transposed else 0)]

    def __str__(self) -> str:
        return self.name


W0, W1, W2, W3 = (TwistId(k) for k in range(4))
W0T, W1T, W2T, W3T = (TwistId(k, True) for k in range(4))
ALL_TWISTS = (W0, W1, W2, W3, W0T, W1T, W2T, W3T)


def twist_id(product: ProductSpec) -> TwistId:
    """Twist of a valid product; raises ``ValueError`` for the other 24."""
    product = ProductSpec(*product)
    try:
        k = VALID_PRODUCTS.index(product)
    except ValueError:
        raise ValueError(f"{product.raw_name} is not one of the eight valid products") from None
    return TwistId(k % 4, k >= 4)


def as_twist_id(x) -> TwistId:
    if isinstance(x, TwistId):
        return x
    if isinstance(x, ProductSpec):
        return twist_id(x)
    return TwistId(*x)


def xor_index(p: int, q: int) -> int:
    return p ^ q


# Recursion rules per parity case (even/even, even/odd, odd/even, odd/odd).
# Each rule is (swap, kind): swap means recurse on w(s, r) instead of w(r, s);
# kind is one of
#   ""    w
#   "-r"  -w if r > 0 else 1        "-s"  -w if s > 0 else 1
#   "+r"   w if r > 0 else -1       "+s"   w if s > 0 else -1
_RULES: dict[TwistId, tuple[tuple[bool, str], ...]] = {
    W0: ((True, ""), (True, "-r"), (False, ""), (False, "+r")),
    W0T: ((True, ""), (False, ""), (True, "-s"), (False, "+s")),
    W1: ((True, ""), (False, "-r"), (True, ""), (True, "+r")),
    W1T: ((True, ""), (True, ""), (False, "-s"), (True, "+s")),
    W2: ((False, ""), (True, "-r"), (False, ""), (False, "+r")),
    W2T: ((False, ""), (False, ""), (True, "-s"), (False, "+s")),
    W3: ((False, ""), (False, "-r"), (True, ""), (True, "+r")),
    W3T: ((False, ""), (True, ""), (False, "-s"), (True, "+s")),
}


@lru_cache(maxsize=None)
def _twist(tid: TwistId, p: int, q: int) -> int:
    if p == 0 or q == 0:
        return 1
    r, s = p >> 1, q >> 1
    swap, kind = _RULES[tid][2 * (p & 1) + (q & 1)]
    w = _twist(tid, s, r) if swap else _twist(tid, r, s)
    if not kind:
        return w
    pivot = r if kind[1] == "r" else s
    if kind[0] == "-":
        return -w if pivot else 1
    return w if pivot else -1


def twist(tid, p: int, q: int) -> int:
    """Sign ``w(p, q)`` in ``e_p e_q = w(p, q) e_{p^q}``."""
    if p < 0 or q < 0:
        raise IndexError("indices must be non-negative")
    return _twist(as_twist_id(tid), p, q)


def basis_product(tid, p: int, q: int) -> SignedIndex:
    return SignedIndex(twist(tid, p, q), p ^ q)


def mul_via_twist(tid, x: Element, y: Element, promote: bool = False) -> Element:
    """Bilinear expansion of ``x * y`` over the twisted XOR group."""
    tid = as_twist_id(tid)
    if x.level != y.level:
        if not promote:
            raise LevelError(f"level mismatch: {x.level} vs {y.level}")
        level = max(x.level, y.level)
        x, y = x.promote(level), y.promote(level)
    out = [Fraction(0)] * x.dim
    ys = [(q, c) for q, c in enumerate(y.coeffs) if c]
    for p, a in enumerate(x.coeffs):
        if not a:
            continue
        for q, b in ys:
            w = _twist(tid, p, q)
            out[p ^ q] += a * b if w > 0 else -(a * b)
    return Element(x.level, tuple(out))


def twist_table(tid, n: int) -> SignMatrix:
    """The ``2**n x 2**n`` table of ``w(p, q)``.

    Built level by level from the same parity rules as :func:`twist`, using
    array operations; ``diag[r] = w(r, r)`` supplies the ``r > 0`` cases.
    """
    tid = as_twist_id(tid)
    if not 0 <= n <= MAX_LEVEL:
        raise LevelError(f"table level {n} outside 0..{MAX_LEVEL}")
    table = np.ones((1, 1), dtype=np.int8)
    for _ in range(n):
        size = table.shape[0]
        sign_r = np.where(np.arange(size) > 0, -1, 1).astype(np.int8)
        new = np.empty((2 * size, 2 * size), dtype=np.int8)
        for case, (swap, kind) in enumerate(_RULES[tid]):
            base = table.T if swap else table
            if kind == "-r":
                block = sign_r[:, None] * base
            elif kind == "+r":
                block = -sign_r[:, None] * base
            elif kind == "-s":
                block = sign_r[None, :] * base
            elif kind == "+s":
                block = -sign_r[None, :] * base
            else:
                block = base
            i, j = divmod(case, 2)
            new[i::2, j::2] = block
        table = new
    return table


def twist_table_direct(tid, n: int) -> SignMatrix:
    """Entry-by-entry table from the scalar recursion (reference route)."""
    tid = as_twist_id(tid)
    size = 1 << n
    return np.array(
        [[_twist(tid, p, q) for q in range(size)] for p in range(size)], dtype=np.int8
    )


# -- block patterns ----------------------------------------------------------

REGIONS = ("C", "L", "T", "D", "N")

_COMMON = {"C": ((1, 1), (1, -1)), "L": ((1, -1), (1, 1)), "T": ((1, 1), (1, -1)), "D": ((1, -1), (1, 1))}
_COMMON_T = {"C": ((1, 1), (1, -1)), "L": ((1, 1), (1, -1)), "T": ((1, 1), (-1, 1)), "D": ((1, 1), (-1, 1))}
_INTERIOR = (
    ((-1, 1), (1, 1)),
    ((-1, -1), (-1, -1)),
    ((1, 1), (1, 1)),
    ((1, -1), (-1, -1)),
)

# D is listed in its positive form; the table shows w(r, r) * D = -D.
BLOCK_PATTERNS: dict[TwistId, dict[str, np.ndarray]] = {}
for _k in range(4):
    BLOCK_PATTERNS[TwistId(_k)] = {
        key: np.array(v, dtype=np.int8) for key, v in {**_COMMON, "N": _INTERIOR[_k]}.items()
    }
    BLOCK_PATTERNS[TwistId(_k, True)] = {
        key: np.array(v, dtype=np.int8) for key, v in {**_COMMON_T, "N": _INTERIOR[_k]}.items()
    }


def region(r: int, s: int) -> str:
    if r == 0 and s == 0:
        return "C"
    if s == 0:
        return "L"
    if r == 0:
        return "T"
    if r == s:
        return "D"
    return "N"


@dataclass
class BlockReport:
    twist: TwistId
    n: int
    passed: Counter = field(default_factory=Counter)
    failed: Counter = field(default_factory=Counter)
    first_failure: tuple[int, int] | None = None

    @property
    def ok(self) -> bool:
        return not self.failed

    def summary(self) -> str:
        parts = [f"{k}:{self.passed[k]}/{self.passed[k] + self.failed[k]}" for k in REGIONS]
        return f"{self.twist.name} n={self.n} " + " ".join(parts) + (" ok" if self.ok else " FAIL")


def verify_blocks(tid, n: int) -> BlockReport:
    """Check every 2x2 block ``(r, s)`` equals ``w(r, s) * pattern(region)``."""
    tid = as_twist_id(tid)
    if n < 2:
        raise ValueError("block verification needs n >= 2")
    table = twist_table(tid, n)
    report = BlockReport(tid, n)
    half = 1 << (n - 1)
    patterns = BLOCK_PATTERNS[tid]
    for r in range(half):
        for s in range(half):
            key = region(r, s)
            expected = twist(tid, r, s) * patterns[key]
            block = table[2 * r : 2 * r + 2, 2 * s : 2 * s + 2]
            if np.array_equal(block, expected):
                report.passed[key] += 1
            else:
                report.failed[key] += 1
                if report.first_failure is None:
                    report.first_failure = (r, s)
    return report
