"""Finite automaton computing the twist of the P2 product.

The binary expansions of ``p`` and ``q`` are interleaved into 2-bit
instructions, most significant first, and fed to a four-state machine whose
states name the block regions C, L, T, D of the twist table.  Two absorbing
states carry the answer once it is decided.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .twists import W2, twist_table


class TreeState(enum.Enum):
    C = "C"
    L = "L"
    T = "T"
    D = "D"
    PLUS = "PLUS"
    MINUS = "MINUS"

    @property
    def absorbing(self) -> bool:
        return self in (TreeState.PLUS, TreeState.MINUS)


C, L, T, D, PLUS, MINUS = TreeState

TRANSITIONS: dict[TreeState, dict[str, TreeState]] = {
    C: {"00": C, "01": T, "10": L, "11": D},
    L: {"00": L, "01": MINUS, "10": L, "11": PLUS},
    T: {"00": T, "01": T, "10": PLUS, "11": MINUS},
    D: {"00": D, "01": PLUS, "10": MINUS, "11": D},
}

# value when the instructions run out without absorption; D stands for -D
TERMINAL = {C: 1, L: 1, T: 1, D: -1, PLUS: 1, MINUS: -1}


def shuffle_bits(p: int, q: int) -> list[str]:
    if p < 0 or q < 0:
        raise ValueError("indices must be non-negative")
    width = max(p.bit_length(), q.bit_length())
    return [f"{(p >> k) & 1}{(q >> k) & 1}" for k in range(width - 1, -1, -1)]


def step(state: TreeState, instr: str) -> TreeState:
    if state.absorbing:
        return state
    return TRANSITIONS[state][instr]


@dataclass
class TreeRun:
    p: int
    q: int
    sign: int
    path: list[tuple[str, TreeState]] = field(default_factory=list)

    def trace(self) -> str:
        text = C.value + "".join(f" -{instr}-> {state.value}" for instr, state in self.path)
        return f"{text}  => {self.sign:+d}"


def run(p: int, q: int) -> TreeRun:
    """Evaluate with the state path, stopping at the first absorbing state."""
    state = C
    path = []
    for instr in shuffle_bits(p, q):
        state = step(state, instr)
        path.append((instr, state))
        if state.absorbing:
            break
    return TreeRun(p, q, TERMINAL[state], path)


def evaluate(p: int, q: int) -> int:
    """Twist of the P2 product via the automaton."""
    state = C
    for instr in shuffle_bits(p, q):
        state = TRANSITIONS[state][instr]
        if state.absorbing:
            break
    return TERMINAL[state]


_STATES = (C, L, T, D, PLUS, MINUS)
_INSTRS = ("00", "01", "10", "11")


def evaluate_table(n: int) -> np.ndarray:
    """Run the automaton on every ``(p, q)`` below ``2**n`` at once.

    Returns the int8 sign table.  All cells consume ``n`` instructions; the
    leading ``00`` padding keeps C in place and absorbing states stay put, so
    the result matches :func:`evaluate` cell by cell.
    """
    if not 0 <= n <= 14:
        raise ValueError("n must lie in 0..14")
    code = {s: i for i, s in enumerate(_STATES)}
    trans = np.array(
        [[code[step(s, instr)] for instr in _INSTRS] for s in _STATES], dtype=np.int8
    )
    terminal = np.array([TERMINAL[s] for s in _STATES], dtype=np.int8)
    idx = np.arange(1 << n)
    state = np.full((1 << n, 1 << n), code[C], dtype=np.int8)
    for k in range(n - 1, -1, -1):
        bits = ((idx >> k) & 1).astype(np.int8)
        instr = 2 * bits[:, None] + bits[None, :]
        state = trans[state, instr]
    return terminal[state]


def run_all(instructions: Iterable[str], start: TreeState = C) -> TreeState:
    """Consume every instruction, including those after absorption."""
    state = start
    for instr in instructions:
        state = step(state, instr)
    return state


# -- conjecture scan -----------------------------------------------------------

MAX_SCAN_BOUND = 1 << 14


@dataclass
class ClaimResult:
    name: str
    checked: int = 0
    counterexamples: int = 0
    first: tuple | None = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "checked": self.checked,
            "counterexamples": self.counterexamples,
            "first": list(self.first) if self.first else None,
        }


@dataclass
class ConjectureReport:
    bound: int
    claims: list[ClaimResult]

    def __getitem__(self, name: str) -> ClaimResult:
        for c in self.claims:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"bound": self.bound, "claims": [c.to_dict() for c in self.claims]}

    def render_text(self) -> str:
        lines = [f"conjecture scan below {self.bound}"]
        for c in self.claims:
            first = "" if c.first is None else f" first={c.first}"
            lines.append(f"  {c.name:<16} checked={c.checked:<9} counterexamples={c.counterexamples}{first}")
        return "\n".join(lines)


def conjecture_scan(bound: int) -> ConjectureReport:
    """Count counterexamples to the suggested laws for the P2 twist.

    ``band_plus``:  w(p,q) = +1 when 1 < q/p < 3/2
    ``band_minus``: w(p,q) = -1 when 2/3 < q/p <= 1
    ``identity_1``: w(2^n + r, 2^m + s) = 1
    ``identity_2``: w(2^m + 2^n + r, 2^n + s) = 1
    ``identity_3``: w(2^m + r, 2^m + 2^n + s) = 1
    where m > n >= 0 and r, s < 2^n, interior p, q only, all arguments below
    ``bound``.  First counterexamples are lexicographic in (p, q) and
    (m, n, r, s) respectively.
    """
    if not 1 <= bound <= MAX_SCAN_BOUND:
        raise ValueError(f"bound must lie in 1..{MAX_SCAN_BOUND}")
    level = max(bound - 1, 1).bit_length()
    table = twist_table(W2, level)[:bound, :bound]

    plus, minus = ClaimResult("band_plus"), ClaimResult("band_minus")
    q = np.arange(bound)
    for p in range(1, bound):
        row = table[p]
        in_plus = (q > p) & (2 * q < 3 * p)
        in_minus = (2 * p < 3 * q) & (q < p)
        for claim, mask, want in ((plus, in_plus, 1), (minus, in_minus, -1)):
            bad = np.flatnonzero(mask & (row != want))
            claim.checked += int(mask.sum())
            claim.counterexamples += len(bad)
            if len(bad) and claim.first is None:
                claim.first = (p, int(bad[0]))

    ids = [ClaimResult(f"identity_{k}") for k in (1, 2, 3)]
    for m in range(level):
        for n in range(m):
            w, hi, lo = 1 << n, 1 << m, 1 << n
            origins = ((lo, hi), (hi + lo, lo), (hi, hi + lo))
            for claim, (a0, b0) in zip(ids, origins):
                block = table[a0 : a0 + w, b0 : b0 + w]
                claim.checked += block.size
                bad = np.argwhere(block != 1)
                claim.counterexamples += len(bad)
                if len(bad) and claim.first is None:
                    r, s = bad[0]
                    claim.first = (m, n, int(r), int(s))
    return ConjectureReport(bound, [plus, minus, *ids])
