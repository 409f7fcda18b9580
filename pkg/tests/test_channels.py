import numpy as np
import pytest

from oracles import random_density
from sppt.bipartite import block, from_matrix, maximally_entangled, product_state
from sppt.channels import EbStatus, apply, channel, choi, eb_report, tp_defect
from sppt.factor import assemble_state, sample_commuting_factor
from sppt.matrix_core import DimensionMismatch, max_abs


def test_apply_examples(rng):
    s = from_matrix(random_density(rng, 6), 2, 3)
    ch = channel(s)
    e11 = np.zeros((2, 2))
    e11[0, 0] = 1
    np.testing.assert_array_equal(apply(ch, e11), block(s, 1, 1))
    np.testing.assert_allclose(apply(ch, np.eye(2)), block(s, 1, 1) + block(s, 2, 2), atol=1e-15)
    np.testing.assert_array_equal(apply(ch, np.zeros((2, 2))), 0)
    with pytest.raises(DimensionMismatch):
        apply(ch, np.eye(3))


def test_apply_is_linear(rng):
    ch = channel(from_matrix(random_density(rng, 9), 3, 3))
    for _ in range(50):
        a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        assert max_abs(apply(ch, a + b) - apply(ch, a) - apply(ch, b)) <= 1e-10


def test_choi_state_identity(rng):
    for _ in range(200):
        m, n = (int(x) for x in rng.integers(1, 5, size=2))
        s = from_matrix(random_density(rng, m * n), m, n)
        c = choi(channel(s))
        assert max_abs(c.matrix * m - s.matrix) <= 1e-10
        assert np.linalg.eigvalsh(c.matrix)[0] >= -1e-10


def test_choi_of_maximally_mixed():
    m, n = 2, 3
    c = choi(channel(from_matrix(np.eye(m * n) / (m * n), m, n)))
    np.testing.assert_allclose(c.matrix, np.eye(m * n) / (m * m * n), atol=1e-16)


def test_tp_defect():
    assert tp_defect(channel(from_matrix(np.eye(6) / 3, 2, 3))) == 0
    assert tp_defect(channel(from_matrix(np.diag([0.1, 0.1, 0.4, 0.4]), 2, 2))) > 0
    # blocks of P+ are e_ij/M, whose traces are delta_ij/M
    assert tp_defect(channel(from_matrix(maximally_entangled(3), 3, 3))) == pytest.approx(0, abs=1e-15)


def test_eb_report_sppt_source_is_consistent():
    for seed in range(20):
        s = assemble_state(sample_commuting_factor(3, 3, seed)).normalize()
        r = eb_report(channel(s))
        assert r.cp and r.choi_ppt
        assert r.choi_realignment <= 1 + 1e-8
        assert r.status is EbStatus.CONSISTENT
        assert not r.eb_certified_false


def test_eb_report_bell_source_is_certified_not_eb():
    r = eb_report(channel(from_matrix(maximally_entangled(2), 2, 2)))
    assert r.eb_certified_false and r.status is EbStatus.CERTIFIED_NOT
    assert not r.choi_ppt
    assert r.choi_realignment == pytest.approx(2, abs=1e-8)


def test_eb_report_product_source(rng):
    r = eb_report(channel(product_state(random_density(rng, 2), random_density(rng, 3))))
    assert r.cp and r.choi_ppt
