"""Cayley-Dickson doubling products in the shuffle basis."""

from .algebra import (
    ALL_PRODUCTS,
    MAX_LEVEL,
    P0,
    P0T,
    P1,
    P1T,
    P2,
    P2T,
    P3,
    P3T,
    VALID_PRODUCTS,
    Element,
    LevelError,
    ProductSpec,
    SignedIndex,
    basis,
    basis_mul,
    conj,
    mul,
    norm_sq,
    one,
    pair,
    product_from_name,
    split,
    zero,
)
from .twists import ALL_TWISTS, TwistId, basis_product, mul_via_twist, twist, twist_table, xor_index

__version__ = "0.1.0"
