import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cdshuffle.algebra import P0, P2, VALID_PRODUCTS, Element, LevelError, SignedIndex, basis, mul, one, random_element
from cdshuffle.twists import (
    ALL_TWISTS,
    BLOCK_PATTERNS,
    W0,
    W0T,
    W2,
    TwistId,
    basis_product,
    mul_via_twist,
    region,
    twist,
    twist_id,
    twist_table,
    twist_table_direct,
    verify_blocks,
    xor_index,
)
from oracle import ref_basis_product

twists = st.sampled_from(ALL_TWISTS)
indices = st.integers(0, 1 << 16)


def test_xor_index():
    assert xor_index(27, 14) == 21
    for p in range(64):
        assert xor_index(p, 0) == p
        assert xor_index(p, p) == 0


def test_twist_ids_match_products():
    assert [twist_id(p) for p in VALID_PRODUCTS] == list(ALL_TWISTS)
    assert [t.product for t in ALL_TWISTS] == list(VALID_PRODUCTS)
    with pytest.raises(ValueError):
        twist_id((1, 0))


def test_twist_examples():
    assert twist(W2, 93, 37) == -1
    assert twist(W0, 2, 6) == 1
    assert basis_product(W2, 93, 37) == (-1, 120)
    assert basis_product(W0, 1, 2) == (1, 3)


@given(twists, indices)
def test_identity_row_and_column(tid, p):
    assert twist(tid, p, 0) == 1
    assert twist(tid, 0, p) == 1
    assert basis_product(tid, p, 0) == (1, p)


@given(twists, st.integers(1, 1 << 16))
def test_squares_are_minus_one(tid, p):
    assert twist(tid, p, p) == -1


@pytest.mark.parametrize("tid", ALL_TWISTS, ids=str)
def test_w11_is_minus_one(tid):
    # e1 e1 = -e0, so the diagonal is -1 from p = 1 on
    assert twist(tid, 1, 1) == -1


@pytest.mark.parametrize("tid", ALL_TWISTS, ids=str)
def test_antisymmetry_exhaustive(tid):
    t = twist_table(tid, 8)
    size = 1 << 8
    p, q = np.meshgrid(np.arange(size), np.arange(size), indexing="ij")
    interior = (p != 0) & (q != 0) & (p != q)
    assert (t[interior] == -t.T[interior]).all()


@pytest.mark.parametrize("k", range(4))
def test_transpose_duality(k):
    plain, transposed = TwistId(k), TwistId(k, True)
    assert np.array_equal(twist_table(transposed, 8), twist_table(plain, 8).T)
    for p in range(1, 256, 7):
        for q in range(1, 256, 5):
            assert twist(transposed, p, q) == twist(plain, q, p)


@pytest.mark.parametrize("tid", ALL_TWISTS, ids=str)
def test_recursion_agrees_with_reference_doubling(tid):
    spec = tid.product
    for p in range(16):
        for q in range(16):
            assert (twist(tid, p, q), p ^ q) == ref_basis_product(spec.f, spec.g, p, q)


@pytest.mark.parametrize("tid", ALL_TWISTS, ids=str)
def test_quaternion_property_via_twists(tid):
    for p in range(1, 64):
        for q in range(1, 64):
            if p != q and twist(tid, p, q) == 1:
                r = p ^ q
                assert twist(tid, q, r) == 1
                assert twist(tid, r, p) == 1


def test_signed_index_composition_associative():
    rng = random.Random(3)
    for tid in ALL_TWISTS:
        w = lambda p, q, tid=tid: twist(tid, p, q)  # noqa: E731
        for _ in range(200):
            a, b, c = (SignedIndex(rng.choice((1, -1)), rng.randrange(64)) for _ in range(3))
            left = a.compose(b, w).compose(c, w)
            right = a.compose(b.compose(c, w), w)
            assert left.index == right.index == a.index ^ b.index ^ c.index
            assert abs(left.sign) == abs(right.sign) == 1


# -- twist multiplication -----------------------------------------------------


def test_mul_via_twist_examples():
    assert mul_via_twist(W2, basis(2, 3), basis(4, 3)) == basis(6, 3)
    x = Element.of([1, -2, 3, 4])
    for tid in ALL_TWISTS:
        assert mul_via_twist(tid, one(2), x) == x


def test_mul_via_twist_levels():
    with pytest.raises(LevelError):
        mul_via_twist(W2, basis(1, 1), basis(1, 2))
    assert mul_via_twist(W2, basis(1, 1), basis(2, 2), promote=True) == basis(3, 2)


@pytest.mark.parametrize("tid", ALL_TWISTS, ids=str)
def test_mul_via_twist_matches_doubling(tid):
    rng = random.Random(tid.base + 10 * tid.transposed)
    spec = tid.product
    for level in range(5):
        for _ in range(5):
            x, y = random_element(rng, level), random_element(rng, level)
            assert mul_via_twist(tid, x, y) == mul(spec, x, y)


# -- tables --------------------------------------------------------------------


def test_small_tables():
    for tid in ALL_TWISTS:
        assert twist_table(tid, 0).tolist() == [[1]]
        assert twist_table(tid, 1).tolist() == [[1, 1], [1, -1]]


@pytest.mark.parametrize("tid", ALL_TWISTS, ids=str)
def test_table_matches_scalar_recursion(tid):
    assert np.array_equal(twist_table(tid, 7), twist_table_direct(tid, 7))


@pytest.mark.parametrize("tid", ALL_TWISTS, ids=str)
def test_table_is_quadrant_of_next(tid):
    for n in range(8):
        big = twist_table(tid, n + 1)
        side = 1 << n
        assert np.array_equal(big[:side, :side], twist_table(tid, n))


def test_table_first_row_and_column():
    for tid in ALL_TWISTS:
        t = twist_table(tid, 6)
        assert (t[0] == 1).all() and (t[:, 0] == 1).all()


def test_table_size_limit():
    with pytest.raises(LevelError):
        twist_table(W2, 15)


# -- blocks --------------------------------------------------------------------


def test_regions():
    assert region(0, 0) == "C"
    assert region(3, 0) == "L"
    assert region(0, 3) == "T"
    assert region(3, 3) == "D"
    assert region(2, 3) == "N"


def test_block_patterns_from_table():
    assert BLOCK_PATTERNS[W2]["N"].tolist() == [[1, 1], [1, 1]]
    assert BLOCK_PATTERNS[W0]["N"].tolist() == [[-1, 1], [1, 1]]
    assert BLOCK_PATTERNS[W0T]["L"].tolist() == [[1, 1], [1, -1]]
    for tid in ALL_TWISTS:
        assert BLOCK_PATTERNS[tid]["C"].tolist() == [[1, 1], [1, -1]]


@pytest.mark.parametrize("tid", ALL_TWISTS, ids=str)
@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_verify_blocks(tid, n):
    report = verify_blocks(tid, n)
    assert report.ok, report.summary()
    half = 1 << (n - 1)
    assert sum(report.passed.values()) == half * half


def test_verify_blocks_reports_failures(monkeypatch):
    import cdshuffle.twists as tw

    real = tw.twist_table

    def broken(tid, n):
        t = real(tid, n).copy()
        t[4, 6] *= -1
        return t

    monkeypatch.setattr(tw, "twist_table", broken)
    report = tw.verify_blocks(W2, 4)
    assert not report.ok
    assert report.failed == {"N": 1}
    assert report.first_failure == (2, 3)


def test_verify_blocks_needs_level_two():
    with pytest.raises(ValueError):
        verify_blocks(W2, 1)


def test_twist_accepts_product_spec():
    assert twist(P2, 93, 37) == -1
    assert basis_product(P0, 2, 6) == (1, 4)
