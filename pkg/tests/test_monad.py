import numpy as np
import pytest
import sympy as sp

from instanton_algebra import monad as mon


def pair(k, r, seed=0):
    return mon.SubspacePair.random(k, r, np.random.default_rng(seed))


# --- integrability ------------------------------------------------------------------


def test_zero_config_residual():
    assert mon.integrability_residual(mon.MonadConfig.zero(2, 5)) == 0.0


def test_m0_residual_vanishes():
    cfg = mon.m0_config(pair(3, 8))
    assert cfg.is_m0
    assert mon.integrability_residual(cfg) <= 1e-14


def test_residual_positive_when_bc_nonzero(rng):
    b = rng.standard_normal((2, 4))
    c = rng.standard_normal((4, 2))
    z = np.zeros((2, 2))
    cfg = mon.MonadConfig(2, 4, z, z, z, b, c)
    expected = np.linalg.norm(b @ c) / (np.linalg.norm(b) * np.linalg.norm(c))
    assert mon.integrability_residual(cfg) == pytest.approx(expected, rel=1e-12)
    assert expected > 0


def test_residual_with_commutator_term():
    a1 = np.diag([1.0, 2.0])
    a2 = np.array([[0.0, 1.0], [0.0, 0.0]])
    d = np.eye(2)
    z = np.zeros((2, 3))
    cfg = mon.MonadConfig(2, 3, a1, a2, d, z, z.T)
    m = a1 @ a2 - a2 @ a1
    scale = np.linalg.norm(a1) * np.linalg.norm(d) * np.linalg.norm(a2)
    assert mon.integrability_residual(cfg) == pytest.approx(np.linalg.norm(m) / scale)


def test_shape_validation():
    with pytest.raises(ValueError):
        mon.MonadConfig(2, 3, np.zeros((2, 2)), np.zeros((2, 2)), np.zeros((2, 2)), np.zeros((3, 2)), np.zeros((3, 2)))
    with pytest.raises(ValueError):
        mon.MonadConfig(1, 1, [[np.nan]], [[0]], [[0]], [[0]], [[0]])


# --- gauge action ----------------------------------------------------------------------


def test_gauge_identity(rng):
    cfg = mon.MonadConfig.random(3, 7, rng)
    assert mon.gauge_act(mon.GaugePair.identity(3), cfg).allclose(cfg)


def test_gauge_composition(rng):
    cfg = mon.MonadConfig.random(2, 5, rng)
    p1, p2 = mon.GaugePair.random(2, rng), mon.GaugePair.random(2, rng)
    lhs = mon.gauge_act(p2, mon.gauge_act(p1, cfg))
    assert lhs.allclose(mon.gauge_act(p2.compose(p1), cfg), atol=1e-12)


def test_gauge_formula(rng):
    cfg = mon.MonadConfig.random(2, 3, rng)
    p = mon.GaugePair.random(2, rng)
    out = mon.gauge_act(p, cfg)
    gi, hi = np.linalg.inv(p.g), np.linalg.inv(p.h)
    assert np.allclose(out.a1, p.g @ cfg.a1 @ hi)
    assert np.allclose(out.d, p.h @ cfg.d @ gi)
    assert np.allclose(out.b, p.g @ cfg.b)
    assert np.allclose(out.c, cfg.c @ hi)


def test_unitary_preserves_residual(rng):
    cfg = mon.m0_config(pair(2, 6))
    u = mon.GaugePair.random_unitary(2, rng)
    assert mon.integrability_residual(mon.gauge_act(u, cfg)) <= 1e-12
    # the residual of a generic config is unitarily invariant too
    gen = mon.MonadConfig.random(2, 6, rng)
    assert mon.integrability_residual(mon.gauge_act(u, gen)) == pytest.approx(mon.integrability_residual(gen), rel=1e-10)


def test_general_gauge_keeps_zero_set(rng):
    cfg = mon.m0_config(pair(2, 5))
    p = mon.GaugePair.random(2, rng)
    assert mon.integrability_residual(mon.gauge_act(p, cfg)) <= 1e-12 * p.condition


def test_singular_gauge_rejected():
    sing = mon.GaugePair(np.array([[1.0, 0.0], [0.0, 0.0]]), np.eye(2))
    with pytest.raises(np.linalg.LinAlgError):
        mon.gauge_act(sing, mon.MonadConfig.zero(2, 4))


# --- M0 <-> orthogonal pairs ----------------------------------------------------------------


def test_m0_basic_example():
    e = np.eye(3)
    sp_ = mon.SubspacePair(e[:, [0]], e[:, [1]])
    cfg = mon.m0_config(sp_)
    assert np.allclose(cfg.c[:, 0], e[:, 0])
    assert np.allclose(cfg.b[0], e[1])
    assert np.allclose(cfg.b @ cfg.c, 0)


def test_m0_roundtrip_and_gauge_invariance(rng):
    sp_ = pair(3, 8, seed=4)
    cfg = mon.m0_config(sp_)
    assert mon.pair_distance(mon.m0_subspaces(cfg), sp_) <= 1e-10
    acted = mon.gauge_act(mon.GaugePair.random(3, rng), cfg)
    assert mon.pair_distance(mon.m0_subspaces(acted), sp_) <= 1e-10


def test_m0_subspaces_errors(rng):
    with pytest.raises(mon.DegenerateConfiguration):
        z = np.zeros((2, 2))
        mon.m0_subspaces(mon.MonadConfig(2, 5, z, z, z, rng.standard_normal((2, 5)), rng.standard_normal((5, 2))))
    with pytest.raises(ValueError):
        mon.m0_subspaces(mon.MonadConfig.random(2, 5, rng))
    cfg = mon.m0_config(pair(2, 5))
    with pytest.raises(mon.DegenerateConfiguration):
        mon.m0_subspaces(mon.MonadConfig(2, 5, cfg.a1, cfg.a2, cfg.d, np.zeros((2, 5)), cfg.c))


def test_subspace_pair_validation():
    e = np.eye(3)
    with pytest.raises(ValueError):
        mon.SubspacePair(e[:, [0]], e[:, [0]])
    with pytest.raises(ValueError):
        mon.SubspacePair(2 * e[:, [0]], e[:, [1]])
    with pytest.raises(ValueError):
        mon.SubspacePair.random(2, 3, np.random.default_rng(0))


# --- monad maps --------------------------------------------------------------------


def test_sample_points_contract():
    pts = mon.sample_blowup_points(1)
    assert len(pts) == 3
    assert pts[0].x[2] == 0
    assert pts[1].x[:2] == (0, 0)
    many = mon.sample_blowup_points(50, seed=7)
    for p in many:
        assert p.incidence_defect() <= 1e-14
    again = mon.sample_blowup_points(50, seed=7)
    assert [(p.x, p.s) for p in many] == [(p.x, p.s) for p in again]
    with pytest.raises(ValueError):
        mon.sample_blowup_points(0)


def test_blowup_point_validation():
    with pytest.raises(ValueError):
        mon.BlowupPoint((1, 0, 0), (0, 1))
    with pytest.raises(ValueError):
        mon.BlowupPoint((2, 0, 0), (1, 0))


def test_monad_shapes():
    cfg = mon.m0_config(pair(2, 5))
    A, B = mon.monad_maps(cfg, mon.sample_blowup_points(1)[2])
    assert A.shape == (4 * 2 + 5, 4) and B.shape == (4, 4 * 2 + 5)


def test_line_at_infinity_kills_composite(rng):
    b, c = rng.standard_normal((2, 4)), rng.standard_normal((4, 2))
    z = np.zeros((2, 2))
    cfg = mon.MonadConfig(2, 4, z, z, z, b, c)
    pt = mon.sample_blowup_points(1)[0]
    A, B = mon.monad_maps(cfg, pt)
    assert np.abs(B @ A).max() <= 1e-14


def test_composite_vanishes_on_m0():
    cfg = mon.m0_config(pair(2, 6))
    for pt in mon.sample_blowup_points(100):
        assert mon.composite_residual(cfg, pt) <= 1e-12


def test_monad_maps_need_m0(rng):
    with pytest.raises(ValueError):
        mon.monad_maps(mon.MonadConfig.random(1, 3, rng), mon.sample_blowup_points(1)[0])


@pytest.mark.parametrize("k,r", [(1, 2), (1, 3), (2, 2), (2, 4)])
def test_composite_block_identity_symbolic(k, r):
    b = np.array(sp.symbols(f"b0:{k * r}"), dtype=object).reshape(k, r)
    c = np.array(sp.symbols(f"c0:{r * k}"), dtype=object).reshape(r, k)
    x1, x2, x3, s1, s2 = sp.symbols("x1 x2 x3 s1 s2")
    A, B = mon.monad_blocks(b, c, (x1, x2, x3), (s1, s2))
    BA = sp.Matrix(B.tolist()) * sp.Matrix(A.tolist())
    bc = sp.Matrix(b.tolist()) * sp.Matrix(c.tolist())
    top_left = BA[:k, :k]
    assert (top_left - bc * x3 ** 2).expand() == sp.zeros(k, k)
    assert (BA[:k, k:] - (x2 * s1 - x1 * s2) * sp.eye(k)).expand() == sp.zeros(k, k)
    assert (BA[k:, :k] - (x1 * s2 - x2 * s1) * sp.eye(k)).expand() == sp.zeros(k, k)
    assert BA[k:, k:].expand() == sp.zeros(k, k)


def test_exactness_generic():
    cfg = mon.m0_config(pair(1, 3))
    rep = mon.exactness_check(cfg, mon.sample_blowup_points(100))
    assert rep.ok and all(p.rank_A == p.rank_B == 2 for p in rep.points)


def test_exactness_fails_without_b():
    cfg = mon.m0_config(pair(1, 3))
    z = np.zeros((1, 1))
    bad = mon.MonadConfig(1, 3, z, z, z, np.zeros((1, 3)), cfg.c)
    pts = mon.sample_blowup_points(20)
    rep = mon.exactness_check(bad, pts)
    assert not rep.ok
    # B keeps full rank only where x_1 or x_2 supply the first block row
    for p, pr in zip(pts, rep.points):
        assert pr.rank_A == 2
    exceptional = rep.points[1]
    assert exceptional.rank_B < 2


def test_exactness_charge_zero():
    cfg = mon.MonadConfig.zero(0, 3)
    assert mon.exactness_check(cfg, mon.sample_blowup_points(3)).ok


# --- dimension count ---------------------------------------------------------------


@pytest.mark.parametrize("k,r,expected", [(1, 3, 6), (1, 5, 14), (2, 6, 24), (1, 4, 10), (2, 5, 16), (3, 8, 42)])
def test_dimension(k, r, expected):
    dim = mon.m0_dimension_check(k, r)
    assert dim.measured == expected == dim.expected
    assert dim.orthogonal_pair_count == expected
    assert dim.constraint_rank == k * k and dim.gauge_rank == 2 * k * k


def test_dimension_needs_room():
    with pytest.raises(ValueError):
        mon.m0_dimension_check(2, 4)


# --- direct sums -------------------------------------------------------------------------


def test_direct_sum_integrable():
    c1, c2 = mon.m0_config(pair(1, 3, 1)), mon.m0_config(pair(2, 5, 2))
    s = mon.direct_sum(c1, c2)
    assert (s.k, s.r) == (3, 8)
    assert mon.integrability_residual(s) <= 1e-13


def test_direct_sum_with_empty():
    cfg = mon.MonadConfig.random(2, 4, np.random.default_rng(3))
    empty = mon.MonadConfig.zero(0, 0)
    assert mon.direct_sum(cfg, empty).allclose(cfg)
    assert mon.direct_sum(empty, cfg).allclose(cfg)


def test_direct_sum_of_pairs():
    p1, p2 = pair(1, 3, 5), pair(2, 6, 6)
    s = mon.direct_sum(mon.m0_config(p1), mon.m0_config(p2))
    assert mon.pair_distance(mon.m0_subspaces(s), mon.direct_sum_pair(p1, p2)) <= 1e-10


def test_direct_sum_general_integrable(rng):
    # a commuting pair with d = 0 and bc = 0 is integrable; sums stay integrable
    k, r = 2, 5
    a1 = np.diag(rng.standard_normal(k))
    a2 = np.diag(rng.standard_normal(k))
    m0 = mon.m0_config(pair(k, r, 8))
    cfg = mon.MonadConfig(k, r, a1, a2, np.diag(rng.standard_normal(k)), m0.b, m0.c)
    assert mon.integrability_residual(cfg) <= 1e-14
    assert mon.integrability_residual(mon.direct_sum(cfg, cfg)) <= 1e-13


# --- JSON --------------------------------------------------------------------------


def test_json_roundtrip(rng):
    cfg = mon.MonadConfig.random(2, 3, rng)
    assert mon.config_from_json(mon.config_to_json(cfg)).allclose(cfg, atol=0)


def test_json_partial_and_bad_shape():
    cfg = mon.config_from_json({"k": 1, "r": 2, "b": [[[1, 0], [0, 1]]]})
    assert cfg.b[0, 1] == 1j and not cfg.c.any()
    with pytest.raises(ValueError):
        mon.config_from_json({"k": 1, "r": 2, "b": [[1, 2, 3]]})
