"""Generator lab: limiting generators, ring embeddings, commutation residuals."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parrondo_ring import (
    Configuration,
    CylinderFunction,
    GameParams,
    PeriodicPattern,
    PureGame,
    RandomMixture,
    RingFunction,
    coin_generator,
    continuum_generator,
    discrete_generator,
    duel_generator,
    embed_on_ring,
    embedding_residual,
    mixture_generator,
    periodic_residual,
)
from parrondo_ring.generators import duel_generator_events
from parrondo_ring.rules import coin_flip_rate, duel_flip_rate

from conftest import game_params

P_STD = GameParams(0.1, 0.6, 0.6, 0.9)


def window_config(w, k):
    """3-site ring whose centred window matches the half-width-k window w."""
    assert k <= 1
    bits = [(w >> (j + k)) & 1 for j in (-1, 0, 1)] if k == 1 else [w & 1] * 3
    # ring sites 0, 1, 2 carry labels 0, +1, -1
    return Configuration.from_bits((bits[1], bits[2], bits[0]))


# -- CylinderFunction / RingFunction ------------------------------------------


def test_cylinder_function_validation():
    with pytest.raises(ValueError):
        CylinderFunction(5, np.zeros(1 << 11))  # beyond storage cap
    with pytest.raises(ValueError):
        CylinderFunction(1, np.zeros(4))  # wrong table length
    with pytest.raises(ValueError):
        CylinderFunction(0, np.array([0.0, np.inf]))
    t = CylinderFunction.constant(2.5, k=1)
    with pytest.raises(ValueError):
        t.table[0] = 0.0  # read-only


def test_cylinder_constructors():
    c = CylinderFunction.constant(3.0)
    assert c.k == 0 and np.all(c.table == 3.0)
    f = CylinderFunction.coordinate(0)
    assert f.k == 0 and tuple(f.table) == (0.0, 1.0)
    g = CylinderFunction.coordinate(1)
    assert g.k == 1
    w = np.arange(8)
    assert np.array_equal(g.table, (w >> 2) & 1)  # coordinate +1 is bit j+k = 2
    r1 = CylinderFunction.random(2, seed=9)
    r2 = CylinderFunction.random(2, seed=9)
    assert np.array_equal(r1.table, r2.table)
    assert r1.table.min() >= -1.0 and r1.table.max() <= 1.0


def test_ring_function_validation():
    with pytest.raises(ValueError):
        RingFunction(3, np.zeros(7))
    v = RingFunction(3, np.arange(8.0))
    with pytest.raises(ValueError):
        v.values[0] = 9.0


def test_generator_input_cap():
    wide = CylinderFunction(4, np.zeros(1 << 9))
    for build in (duel_generator, lambda f: coin_generator(P_STD, f)):
        with pytest.raises(ValueError):
            build(wide)


# -- generator values ----------------------------------------------------------


def test_generators_annihilate_constants():
    c = CylinderFunction.constant(4.2, k=1)
    for g in (
        duel_generator(c),
        duel_generator_events(c),
        coin_generator(P_STD, c),
        mixture_generator(0.3, P_STD, c),
    ):
        assert np.abs(g.table).max() <= 1e-14
        assert g.k == c.k + 1


def test_coin_generator_fair_coordinate():
    # fair coins flip the origin at rate 1/2 regardless of neighbours, so
    # Omega_B f = (1 - 2 eta(0)) / 2 for f = eta(0)
    g = coin_generator(GameParams.fair(), CylinderFunction.coordinate(0))
    assert g.k == 1
    w = np.arange(8)
    want = 0.5 * (1.0 - 2.0 * ((w >> 1) & 1))
    assert np.array_equal(g.table, want)


def test_coin_generator_coordinate_matches_flip_rate():
    # for f = eta(0) only the origin flip survives: Omega_B f (eta) =
    # c(0, eta) (1 - 2 eta(0))
    g = coin_generator(P_STD, CylinderFunction.coordinate(0))
    for w in range(8):
        cfg = window_config(w, k=1)
        rate = coin_flip_rate(P_STD, cfg, 0)
        want = rate * (1.0 - 2.0 * cfg.bits[0])
        assert g.table[w] == pytest.approx(want, abs=1e-15)


def test_duel_generator_coordinate_hand_expansion():
    # flips at the origin with the alignment rate, plus the two swaps that
    # move a neighbour's status onto the origin, each at weight 1/2
    g = duel_generator(CylinderFunction.coordinate(0))
    assert g.k == 1
    for w in range(8):
        cfg = window_config(w, k=1)
        e_left, e0, e_right = (w >> 0) & 1, (w >> 1) & 1, (w >> 2) & 1
        want = (
            duel_flip_rate(cfg, 0) * (1.0 - 2.0 * e0)
            + 0.5 * (e_left - e0)
            + 0.5 * (e_right - e0)
        )
        assert g.table[w] == pytest.approx(want, abs=1e-15)


@settings(max_examples=15)
@given(st.integers(0, 3), st.integers(0, 10 ** 6))
def test_duel_generator_forms_agree(k, seed):
    f = CylinderFunction.random(k, seed=seed)
    a = duel_generator(f)
    b = duel_generator_events(f)
    assert np.abs(a.table - b.table).max() <= 1e-13


def test_generator_output_ignores_outer_bits():
    # the same function stored at a wider half-width must give the same
    # generator values, independent of the extra window bits
    narrow = CylinderFunction.coordinate(0)  # k = 0
    w = np.arange(8)
    wide = CylinderFunction(1, narrow.table[(w >> 1) & 1])  # k = 1, same function
    for build in (duel_generator, lambda f: coin_generator(P_STD, f)):
        g_narrow = build(narrow)  # k = 1
        g_wide = build(wide)  # k = 2
        v = np.arange(1 << 5)
        assert np.abs(g_wide.table - g_narrow.table[(v >> 1) & 7]).max() <= 1e-13


@settings(max_examples=15)
@given(game_params(), st.integers(0, 10 ** 6))
def test_coin_generator_is_linear(params, seed):
    f = CylinderFunction.random(1, seed=seed)
    g = CylinderFunction.random(1, seed=seed + 1)
    combo = CylinderFunction(1, 2.0 * f.table - 3.0 * g.table)
    lhs = coin_generator(params, combo).table
    rhs = 2.0 * coin_generator(params, f).table - 3.0 * coin_generator(params, g).table
    assert np.abs(lhs - rhs).max() <= 1e-12


def test_mixture_generator_is_the_convex_combination():
    f = CylinderFunction.random(1, seed=4)
    mix = mixture_generator(0.3, P_STD, f)
    want = 0.3 * duel_generator(f).table + 0.7 * coin_generator(P_STD, f).table
    assert np.array_equal(mix.table, want)
    with pytest.raises(ValueError):
        mixture_generator(0.0, P_STD, f)
    with pytest.raises(ValueError):
        mixture_generator(1.0, P_STD, f)


def test_continuum_generator_dispatch():
    f = CylinderFunction.random(1, seed=6)
    assert np.array_equal(
        continuum_generator(PureGame("duel"), P_STD, f).table, duel_generator(f).table
    )
    assert np.array_equal(
        continuum_generator(PureGame("coin"), P_STD, f).table,
        coin_generator(P_STD, f).table,
    )
    assert np.array_equal(
        continuum_generator(RandomMixture(0.4), P_STD, f).table,
        mixture_generator(0.4, P_STD, f).table,
    )
    with pytest.raises(TypeError):
        continuum_generator(PeriodicPattern(1, 1), P_STD, f)


# -- embedding -----------------------------------------------------------------


def test_embed_constant():
    rf = embed_on_ring(CylinderFunction.constant(1.5, k=1), 5)
    assert np.all(rf.values == 1.5)


def test_embed_coordinate_reads_site_zero():
    rf = embed_on_ring(CylinderFunction.coordinate(0), 5)
    states = np.arange(32)
    assert np.array_equal(rf.values, (states & 1).astype(float))


def test_embed_k1_on_three_sites():
    # n = 3 holds the whole window -1..1: labels -1, 0, 1 are sites 2, 0, 1
    f = CylinderFunction.random(1, seed=1)
    rf = embed_on_ring(f, 3)
    for state in range(8):
        b = [(state >> x) & 1 for x in range(3)]
        w = b[2] | (b[0] << 1) | (b[1] << 2)
        assert rf.values[state] == f.table[w]


def test_embed_k2_on_five_sites():
    f = CylinderFunction.random(2, seed=2)
    rf = embed_on_ring(f, 5)
    state = 0b10110  # sites 1, 2, 4 occupied
    b = [(state >> x) & 1 for x in range(5)]
    # window coordinates -2..2 are sites 3, 4, 0, 1, 2
    w = b[3] | (b[4] << 1) | (b[0] << 2) | (b[1] << 3) | (b[2] << 4)
    assert rf.values[state] == f.table[w]


def test_embed_ring_too_small():
    with pytest.raises(ValueError):
        embed_on_ring(CylinderFunction.random(2, seed=0), 4)


# -- commutation residuals -------------------------------------------------------


def test_embedding_residual_vanishes_in_regime():
    f = CylinderFunction.random(1, seed=3)
    for sched in (PureGame("duel"), PureGame("coin"), RandomMixture(0.3), RandomMixture(0.7)):
        for n in (6, 8):
            assert embedding_residual(f, n, sched, P_STD) <= 1e-13


def test_embedding_residual_warns_below_regime():
    f = CylinderFunction.random(1, seed=3)
    with pytest.warns(UserWarning, match="outside the exact-commutation regime"):
        res = embedding_residual(f, 5, PureGame("coin"), P_STD)
    assert np.isfinite(res)  # wrap-around value, recorded but not certified


def test_embedding_residual_rejects_periodic():
    f = CylinderFunction.random(1, seed=3)
    with pytest.raises(TypeError):
        embedding_residual(f, 8, PeriodicPattern(1, 1), P_STD)


def test_periodic_residual_constant_is_zero():
    assert periodic_residual(CylinderFunction.constant(2.0, k=1), 8, 2, 1, P_STD) <= 1e-14


def test_periodic_residual_shrinks_with_ring_size():
    f = CylinderFunction.random(1, seed=7)
    small = periodic_residual(f, 6, 1, 1, P_STD)
    large = periodic_residual(f, 12, 1, 1, P_STD)
    assert large < small


def test_periodic_residual_validation():
    f = CylinderFunction.random(1, seed=7)
    with pytest.raises(ValueError):
        periodic_residual(f, 5, 1, 1, P_STD)  # n below 2k+4
    with pytest.raises(ValueError):
        periodic_residual(f, 8, 1, 1, P_STD, margin=2)  # k=1 > K-2=0
    assert periodic_residual(f, 8, 1, 1, P_STD, margin=3) >= 0.0


def test_discrete_generator_shape_check():
    g = RingFunction(4, np.arange(16.0))
    with pytest.raises(ValueError):
        discrete_generator(5, RandomMixture(0.5), P_STD, g)


def test_discrete_generator_constant_is_zero():
    g = RingFunction(4, np.full(16, 3.3))
    out = discrete_generator(4, RandomMixture(0.5), P_STD, g)
    assert np.abs(out.values).max() <= 1e-13
