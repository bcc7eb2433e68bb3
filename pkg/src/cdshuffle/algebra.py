"""Exact Cayley-Dickson elements in the shuffle basis.

An element of the level-N algebra is a vector of 2**N rationals.  The ordered
pair ``(x, y)`` is stored as the interleaving ``x0, y0, x1, y1, ...`` so that
``e_{2p} = (e_p, 0)`` and ``e_{2p+1} = (0, e_p)``.

Multiplication is parameterised by a :class:`ProductSpec`, one of the 32
candidate doubling products ``(a,b)(c,d) = (f_i(a,b,c,d), g_j(a,b,c,d))``.
The binomials are written once, generically, and shared by the dense engine
(:func:`mul`) and the signed-basis engine (:func:`basis_mul`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, NamedTuple, Sequence

MAX_LEVEL = 14

_ZERO = Fraction(0)
_ONE = Fraction(1)


class LevelError(ValueError):
    """Raised for mismatched or out-of-range algebra levels."""


def _check_level(level: int) -> None:
    if not isinstance(level, int) or level < 0:
        raise LevelError(f"level must be a non-negative integer, got {level!r}")
    if level > MAX_LEVEL:
        raise LevelError(f"level {level} exceeds MAX_LEVEL={MAX_LEVEL}")


@dataclass(frozen=True)
class Element:
    """Immutable element of the level-``level`` algebra."""

    level: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        _check_level(self.level)
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != 1 << self.level:
            raise LevelError(
                f"level {self.level} needs {1 << self.level} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def of(cls, values: Iterable) -> "Element":
        """Build an element from a power-of-two length sequence of numbers."""
        values = tuple(values)
        level = len(values).bit_length() - 1
        if len(values) == 0 or len(values) != 1 << level:
            raise LevelError(f"length {len(values)} is not a power of two")
        return cls(level, values)

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, p: int) -> Fraction:
        return self.coeffs[p]

    def __iter__(self):
        return iter(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _same_level(self, other: "Element") -> None:
        if self.level != other.level:
            raise LevelError(f"level mismatch: {self.level} vs {other.level}")

    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        self._same_level(other)
        return Element(self.level, _add(self.coeffs, other.coeffs))

    def __sub__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        self._same_level(other)
        return Element(self.level, _sub(self.coeffs, other.coeffs))

    def __neg__(self) -> "Element":
        return Element(self.level, _neg(self.coeffs))

    def __mul__(self, k) -> "Element":
        # scalar multiplication only; algebra products need a ProductSpec
        if isinstance(k, Element):
            return NotImplemented
        k = Fraction(k)
        return Element(self.level, tuple(k * c for c in self.coeffs))

    __rmul__ = __mul__

    def promote(self, level: int) -> "Element":
        """Zero-pad to a higher level (the level-N algebra is a subalgebra)."""
        _check_level(level)
        if level < self.level:
            raise LevelError(f"cannot demote level {self.level} to {level}")
        pad = (1 << level) - self.dim
        return Element(level, self.coeffs + (_ZERO,) * pad)

    def __repr__(self) -> str:
        terms = [f"{c}*e{p}" for p, c in enumerate(self.coeffs) if c]
        return f"Element(level={self.level}, {' + '.join(terms) or '0'})"


def zero(level: int) -> Element:
    _check_level(level)
    return Element(level, (_ZERO,) * (1 << level))


def scalar(r, level: int = 0) -> Element:
    _check_level(level)
    return Element(level, (Fraction(r),) + (_ZERO,) * ((1 << level) - 1))


def one(level: int = 0) -> Element:
    return scalar(1, level)


def basis(p: int, level: int) -> Element:
    """Unit vector ``e_p`` of the level-``level`` algebra."""
    _check_level(level)
    if not 0 <= p < 1 << level:
        raise IndexError(f"basis index {p} out of range for level {level}")
    coeffs = [_ZERO] * (1 << level)
    coeffs[p] = _ONE
    return Element(level, tuple(coeffs))


def pair(x: Element, y: Element) -> Element:
    """The ordered pair ``(x, y)``, stored as the shuffle of x and y."""
    if x.level != y.level:
        raise LevelError(f"pair of mismatched levels {x.level} and {y.level}")
    return Element(x.level + 1, _interleave(x.coeffs, y.coeffs))


def split(z: Element) -> tuple[Element, Element]:
    """Inverse of :func:`pair`."""
    if z.level == 0:
        raise LevelError("a level-0 element is not an ordered pair")
    return Element(z.level - 1, z.coeffs[0::2]), Element(z.level - 1, z.coeffs[1::2])


def conj(x: Element) -> Element:
    return Element(x.level, _conj(x.coeffs))


def norm_sq(x: Element) -> Fraction:
    return sum((c * c for c in x.coeffs), _ZERO)


# -- product specifications --------------------------------------------------

VALID_NAMES = {
    (0, 0): "P0",
    (1, 1): "P1",
    (2, 0): "P2",
    (3, 1): "P3",
    (4, 2): "P0T",
    (5, 3): "P1T",
    (6, 2): "P2T",
    (7, 3): "P3T",
}


class ProductSpec(NamedTuple):
    """Choice of binomials ``(f_f, g_g)``; 32 values, 8 of them valid."""

    f: int
    g: int

    @property
    def valid(self) -> bool:
        return (self.f, self.g) in VALID_NAMES

    @property
    def name(self) -> str:
        return VALID_NAMES.get((self.f, self.g), f"f{self.f}g{self.g}")

    @property
    def raw_name(self) -> str:
        return f"f{self.f}g{self.g}"

    def __str__(self) -> str:
        return self.name


P0 = ProductSpec(0, 0)
P1 = ProductSpec(1, 1)
P2 = ProductSpec(2, 0)
P3 = ProductSpec(3, 1)
P0T = ProductSpec(4, 2)
P1T = ProductSpec(5, 3)
P2T = ProductSpec(6, 2)
P3T = ProductSpec(7, 3)

VALID_PRODUCTS = (P0, P1, P2, P3, P0T, P1T, P2T, P3T)
ALL_PRODUCTS = tuple(ProductSpec(f, g) for f in range(8) for g in range(4))

_NAMES = {name.upper(): ProductSpec(*fg) for fg, name in VALID_NAMES.items()}
_RAW = re.compile(r"^f([0-7])g([0-3])$", re.IGNORECASE)


def product_from_name(name: str) -> ProductSpec:
    """Parse ``P2``, ``P2T`` or the raw spelling ``f2g0``."""
    key = name.strip()
    if key.upper() in _NAMES:
        return _NAMES[key.upper()]
    m = _RAW.match(key)
    if m:
        return ProductSpec(int(m.group(1)), int(m.group(2)))
    raise ValueError(f"unknown product {name!r}")


# -- the binomials -----------------------------------------------------------
# Each returns (left term, right term); f combines them as left - right and
# g as left + right.  M is the product, C the involution.

_Binomial = Callable[..., tuple]

F_BINOMIALS: tuple[_Binomial, ...] = (
    lambda a, b, c, d, M, C: (M(c, a), M(C(b), d)),  # ca - b*d
    lambda a, b, c, d, M, C: (M(c, a), M(d, C(b))),  # ca - db*
    lambda a, b, c, d, M, C: (M(a, c), M(C(b), d)),  # ac - b*d
    lambda a, b, c, d, M, C: (M(a, c), M(d, C(b))),  # ac - db*
    lambda a, b, c, d, M, C: (M(c, a), M(b, C(d))),  # ca - bd*
    lambda a, b, c, d, M, C: (M(c, a), M(C(d), b)),  # ca - d*b
    lambda a, b, c, d, M, C: (M(a, c), M(b, C(d))),  # ac - bd*
    lambda a, b, c, d, M, C: (M(a, c), M(C(d), b)),  # ac - d*b
)

G_BINOMIALS: tuple[_Binomial, ...] = (
    lambda a, b, c, d, M, C: (M(d, C(a)), M(b, c)),  # da* + bc
    lambda a, b, c, d, M, C: (M(C(a), d), M(c, b)),  # a*d + cb
    lambda a, b, c, d, M, C: (M(a, d), M(C(c), b)),  # ad + c*b
    lambda a, b, c, d, M, C: (M(d, a), M(b, C(c))),  # da + bc*
)

F_TEXT = ("ca-b*d", "ca-db*", "ac-b*d", "ac-db*", "ca-bd*", "ca-d*b", "ac-bd*", "ac-d*b")
G_TEXT = ("da*+bc", "a*d+cb", "ad+c*b", "da+bc*")


def formula(spec: ProductSpec) -> str:
    return f"(a,b)(c,d)=({F_TEXT[spec.f]}, {G_TEXT[spec.g]})"


# -- dense engine on coefficient tuples --------------------------------------


def _add(x, y):
    return tuple(u + v for u, v in zip(x, y))


def _sub(x, y):
    return tuple(u - v for u, v in zip(x, y))


def _neg(x):
    return tuple(-u for u in x)


def _conj(x):
    return (x[0],) + tuple(-u for u in x[1:])


def _interleave(x, y):
    out = [None] * (2 * len(x))
    out[0::2] = x
    out[1::2] = y
    return tuple(out)


def _nz(x):
    return x if any(x) else None


def _zconj(x):
    return None if x is None else _conj(x)


def _zmul(spec: ProductSpec, x, y):
    # None stands for a zero vector so zero halves cost nothing
    if x is None or y is None:
        return None
    if len(x) == 1:
        return _nz((x[0] * y[0],))
    a, b = _nz(x[0::2]), _nz(x[1::2])
    c, d = _nz(y[0::2]), _nz(y[1::2])

    def M(u, v):
        return _zmul(spec, u, v)

    f1, f2 = F_BINOMIALS[spec.f](a, b, c, d, M, _zconj)
    g1, g2 = G_BINOMIALS[spec.g](a, b, c, d, M, _zconj)
    half = len(x) // 2
    if f1 is None:
        f = _neg(f2) if f2 is not None else (_ZERO,) * half
    else:
        f = f1 if f2 is None else _sub(f1, f2)
    if g1 is None:
        g = g2 if g2 is not None else (_ZERO,) * half
    else:
        g = g1 if g2 is None else _add(g1, g2)
    return _nz(_interleave(f, g))


def _mul_coeffs(spec: ProductSpec, x: tuple, y: tuple) -> tuple:
    z = _zmul(spec, _nz(x), _nz(y))
    return z if z is not None else (_ZERO,) * len(x)


def mul(spec: ProductSpec, x: Element, y: Element, promote: bool = False) -> Element:
    """Product ``x * y`` under the doubling product ``spec``.

    With ``promote=True`` the lower-level operand is zero-padded first;
    otherwise unequal levels raise :class:`LevelError`.
    """
    if x.level != y.level:
        if not promote:
            raise LevelError(f"level mismatch: {x.level} vs {y.level}")
        level = max(x.level, y.level)
        x, y = x.promote(level), y.promote(level)
    return Element(x.level, _mul_coeffs(spec, x.coeffs, y.coeffs))


# -- signed-basis engine -----------------------------------------------------


class SignedIndex(NamedTuple):
    """``sign * e_index``."""

    sign: int
    index: int

    def __neg__(self) -> "SignedIndex":
        return SignedIndex(-self.sign, self.index)

    def __str__(self) -> str:
        return f"{'+' if self.sign > 0 else '-'}e{self.index}"

    def compose(self, other: "SignedIndex", twist) -> "SignedIndex":
        """Product of two signed basis vectors given a twist ``(p, q) -> sign``."""
        w = twist(self.index, other.index)
        return SignedIndex(self.sign * other.sign * w, self.index ^ other.index)


def _sconj(u):
    if u is None or u.index == 0:
        return u
    return SignedIndex(-u.sign, u.index)


@lru_cache(maxsize=None)
def _basis_mul(spec: ProductSpec, p: int, q: int) -> SignedIndex:
    if p == 0 and q == 0:
        return SignedIndex(1, 0)
    half_p, half_q = SignedIndex(1, p >> 1), SignedIndex(1, q >> 1)
    a, b = (None, half_p) if p & 1 else (half_p, None)
    c, d = (None, half_q) if q & 1 else (half_q, None)

    def M(u, v):
        if u is None or v is None:
            return None
        w = _basis_mul(spec, u.index, v.index)
        return SignedIndex(u.sign * v.sign * w.sign, w.index)

    f1, f2 = F_BINOMIALS[spec.f](a, b, c, d, M, _sconj)
    g1, g2 = G_BINOMIALS[spec.g](a, b, c, d, M, _sconj)
    # exactly one of a, b and one of c, d is nonzero, so one term survives
    if f1 is not None:
        return SignedIndex(f1.sign, 2 * f1.index)
    if f2 is not None:
        return SignedIndex(-f2.sign, 2 * f2.index)
    g = g1 if g1 is not None else g2
    return SignedIndex(g.sign, 2 * g.index + 1)


def basis_mul(spec: ProductSpec, p: int, q: int) -> SignedIndex:
    """``e_p * e_q`` by the doubling recursion restricted to signed basis vectors."""
    if p < 0 or q < 0:
        raise IndexError("basis indices must be non-negative")
    return _basis_mul(ProductSpec(*spec), p, q)


def as_signed_index(x: Element) -> SignedIndex | None:
    """Return ``±e_r`` if ``x`` is a signed basis vector, else ``None``."""
    nonzero = [(p, c) for p, c in enumerate(x.coeffs) if c]
    if len(nonzero) != 1 or abs(nonzero[0][1]) != 1:
        return None
    p, c = nonzero[0]
    return SignedIndex(1 if c > 0 else -1, p)


def from_signed_index(s: SignedIndex, level: int) -> Element:
    return basis(s.index, level) * s.sign


def level_for(*indices: int) -> int:
    """Smallest level whose algebra contains every ``e_p`` listed."""
    return max((int(p).bit_length() for p in indices), default=0)


def random_element(rng, level: int, spread: int = 5, denominators: Sequence[int] = (1, 2, 3)) -> Element:
    """Dense element with small random rational coefficients."""
    return Element(
        level,
        tuple(
            Fraction(rng.randint(-spread, spread), rng.choice(denominators))
            for _ in range(1 << level)
        ),
    )
