import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import loop_partial_transpose, loop_realign, random_density, random_gram, random_separable
from sppt.bipartite import (
    PptStatus,
    ZeroTrace,
    block,
    from_matrix,
    is_ppt,
    maximally_entangled,
    partial_transpose_a,
    ppt_status,
    product_state,
    realign,
    realign_matrix,
    realignment_value,
    unrealign_matrix,
)
from sppt.families import orthogonally_invariant
from sppt.matrix_core import DimensionMismatch, NotHermitian, NotPsd, max_abs, trace_norm

dims = st.tuples(st.integers(1, 4), st.integers(1, 4))
seeds = st.integers(0, 2**32 - 1)


def test_from_matrix_validation(rng):
    s = from_matrix(np.eye(4) / 4, 2, 2)
    assert s.normalized
    with pytest.raises(NotPsd):
        from_matrix(np.diag([1.0, -1.0, 1.0, 1.0]), 2, 2)
    with pytest.raises(DimensionMismatch):
        from_matrix(np.eye(4), 2, 3)
    with pytest.raises(NotHermitian):
        from_matrix(np.triu(np.ones((4, 4))), 2, 2)
    with pytest.raises(ZeroTrace):
        from_matrix(np.zeros((4, 4)), 2, 2, require_normalized=True)
    s = from_matrix(random_gram(rng, 6), 2, 3, require_normalized=True)
    assert s.normalized and abs(np.trace(s.matrix) - 1) <= 1e-15


def test_state_is_immutable():
    s = from_matrix(np.eye(4) / 4, 2, 2)
    with pytest.raises(ValueError):
        s.matrix[0, 0] = 1.0


def test_block_access(rng):
    s = from_matrix(np.eye(6) / 6, 2, 3)
    np.testing.assert_array_equal(block(s, 2, 2), np.eye(3) / 6)
    s = from_matrix(random_density(rng, 6), 2, 3)
    np.testing.assert_allclose(block(s, 1, 2), block(s, 2, 1).conj().T, atol=1e-15)
    with pytest.raises(IndexError):
        block(s, 0, 1)
    with pytest.raises(IndexError):
        block(s, 1, 3)


def test_partial_transpose_of_product(rng):
    ra, rb = random_density(rng, 2), random_density(rng, 3)
    s = product_state(ra, rb)
    np.testing.assert_allclose(partial_transpose_a(s), np.kron(ra.T, rb), atol=1e-15)


def test_partial_transpose_of_bell_state():
    s = from_matrix(maximally_entangled(2), 2, 2)
    status, lo = ppt_status(s)
    assert status is PptStatus.NPT
    assert lo == pytest.approx(-0.5, abs=1e-12)
    assert is_ppt(s) == (False, lo)


def test_ppt_of_product_and_oi_state(rng):
    assert is_ppt(product_state(random_density(rng, 3), random_density(rng, 2)))[0]
    assert not is_ppt(orthogonally_invariant(0.0, 0.6, 0.4))[0]


def test_marginal_counts_as_ppt():
    # b = 1/2 sits on the PPT boundary: the partial transpose has a zero eigenvalue
    status, lo = ppt_status(orthogonally_invariant(0.5, 0.5, 0.0))
    assert status is PptStatus.MARGINAL
    assert status.is_ppt and abs(lo) <= 1e-10


@settings(max_examples=100)
@given(seeds, dims)
def test_partial_transpose_properties(seed, d):
    m, n = d
    rho = random_density(np.random.default_rng(seed), m * n)
    s = from_matrix(rho, m, n)
    pt = partial_transpose_a(s)
    np.testing.assert_allclose(pt, loop_partial_transpose(s.matrix, m, n), atol=0)
    assert abs(np.trace(pt) - np.trace(s.matrix)) <= 1e-10
    assert max_abs(pt - pt.conj().T) <= 1e-10
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            np.testing.assert_array_equal(pt[(i - 1) * n:i * n, (j - 1) * n:j * n], block(s, j, i))


def test_partial_transpose_involution_entrywise(rng):
    from sppt.bipartite import partial_transpose_matrix

    for _ in range(500):
        m, n = (int(x) for x in rng.integers(1, 5, size=2))
        s = from_matrix(random_density(rng, m * n), m, n)
        pt = partial_transpose_a(s)
        assert abs(np.trace(pt) - np.trace(s.matrix)) <= 1e-10
        assert max_abs(pt - pt.conj().T) <= 1e-10
        np.testing.assert_array_equal(partial_transpose_matrix(pt, m, n), s.matrix)


@settings(max_examples=100)
@given(seeds, dims)
def test_realign_index_map_and_round_trip(seed, d):
    m, n = d
    rho = random_density(np.random.default_rng(seed), m * n)
    r = realign_matrix(rho, m, n)
    assert r.shape == (m * m, n * n)
    np.testing.assert_array_equal(r, loop_realign(rho, m, n))
    np.testing.assert_array_equal(unrealign_matrix(r, m, n), rho)


def test_realignment_examples(rng):
    va = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    vb = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    va, vb = va / np.linalg.norm(va), vb / np.linalg.norm(vb)
    s = product_state(np.outer(va, va.conj()), np.outer(vb, vb.conj()))
    assert realignment_value(s) == pytest.approx(1, abs=1e-10)
    bell = from_matrix(maximally_entangled(2), 2, 2)
    # oracle: singular values of the loop-realigned 4x4 matrix
    expected = np.linalg.svd(loop_realign(maximally_entangled(2), 2, 2), compute_uv=False).sum()
    assert expected == pytest.approx(2, abs=1e-12)
    assert realignment_value(bell) == pytest.approx(expected, abs=1e-10)
    assert realignment_value(from_matrix(np.eye(4) / 4, 2, 2)) <= 1


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 3), (3, 4)])
def test_realigned_identity(m, n):
    rho = np.eye(m * n) / (m * n)
    expected = np.linalg.svd(loop_realign(rho, m, n), compute_uv=False).sum()
    s = from_matrix(rho, m, n)
    assert trace_norm(realign(s)) == pytest.approx(expected, abs=1e-12)
    assert expected == pytest.approx(1 / np.sqrt(m * n), abs=1e-12)


def test_realignment_unnormalized_input_is_normalized(rng):
    rho = random_density(rng, 6)
    a = realignment_value(from_matrix(rho, 2, 3))
    b = realignment_value(from_matrix(7.5 * rho, 2, 3))
    assert a == pytest.approx(b, abs=1e-12)


def test_separable_states_pass_both_criteria(rng):
    for _ in range(200):
        m, n = (int(x) for x in rng.integers(2, 4, size=2))
        terms = int(rng.integers(1, 6))
        s = from_matrix(random_separable(rng, m, n, terms), m, n, require_normalized=True)
        assert realignment_value(s) <= 1 + 1e-8
        assert is_ppt(s)[0]
