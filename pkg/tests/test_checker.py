"""Schubert pairs and the reduction calculus; A_5 slice machinery units."""

import itertools

import numpy as np
import pytest

from binfty import checker, geom, modp, quiver
from binfty.checker import (
    A5_DIMS,
    A5_WORD_B,
    A5_WORD_BP,
    ELIMINATED,
    INCONCLUSIVE,
    SURVIVES,
)
from binfty.strings import parse_word

P = modp.DEFAULT_PRIME


def test_perm_of_word_oracles():
    # swaps act on values, rightmost letter first: (1,2) sends 1,2,3 through
    # s_2 to 1,3,2 and then s_1 swaps the values 1 and 2, giving 2,3,1
    assert checker.perm_of_word((), 3) == (1, 2, 3)
    assert checker.perm_of_word((1,), 3) == (2, 1, 3)
    assert checker.perm_of_word((1, 2), 3) == (2, 3, 1)
    assert checker.perm_of_word((2, 1), 3) == (3, 1, 2)
    assert checker.perm_of_word(checker.A8_WORD_W, 8) == (6, 2, 8, 4, 5, 1, 7, 3)
    assert checker.perm_of_word(checker.A8_WORD_WP, 8) == (2, 1, 6, 5, 4, 3, 8, 7)


def test_nu_cl():
    assert checker.nu_cl(2) == (1, 2, 1)
    assert checker.nu_cl(4) == (1, 2, 3, 4, 3, 2, 1)


def test_schubert_rep_flags():
    # Ker(V_n -> V_{n-j}) must be the standard flag and Im(V_{2n-j} -> V_n)
    # the w-permuted flag
    n = 3
    g = quiver.type_a(2 * n - 1)
    w = (2, 3, 1)
    rep = checker.schubert_rep(g, n, w, P)
    assert quiver.is_nilpotent(rep)
    # image of V_4 -> V_3 is spanned by e_{w(1)}, e_{w(2)}
    m = rep.mat((4, 3))
    img = m[:, :]
    want = np.zeros((3, 2), dtype=np.int64)
    want[w[0] - 1, 0] = 1
    want[w[1] - 1, 1] = 1
    assert (img == want).all()
    # composite V_3 -> V_1 kills exactly the first two coordinates
    comp = modp.matmul(rep.mat((2, 1)), rep.mat((3, 2)), P)
    assert (comp == np.array([[0, 0, 1]])).all()


def test_fine_table_is_permutation_matrix():
    for n, w in ((2, (1, 2)), (2, (2, 1)), (3, (2, 3, 1)), (3, (3, 1, 2))):
        g = quiver.type_a(2 * n - 1)
        ctx = geom.GeomContext(g, p=P, seed=geom.DEFAULT_SEED)
        dat = checker.schubert_orbit(ctx, n, w)
        fine = checker.gr_table_fine(dat)
        assert fine == [[1 if w[j] == i else 0 for i in range(1, n + 1)]
                        for j in range(n)]


def test_check_pair_validates_input():
    g = quiver.type_a(3)
    ctx = geom.GeomContext(g, p=P, seed=geom.DEFAULT_SEED)
    keys = geom.enumerate_orbits(g, ctx.omega0, (1, 2, 1), P)
    with pytest.raises(ValueError):
        checker.check_pair(ctx, keys[0], keys[0])  # equal keys
    other = geom.enumerate_orbits(g, ctx.omega0, (1, 1, 1), P)[0]
    with pytest.raises(ValueError):
        checker.check_pair(ctx, keys[0], other)  # different dims


def test_check_pair_budget_inconclusive():
    n = 2
    g = quiver.type_a(3)
    ctx = geom.GeomContext(g, p=P, seed=geom.DEFAULT_SEED)
    dat = checker.schubert_orbit(ctx, n, (1, 2))
    keys = geom.enumerate_orbits(g, ctx.omega0, checker.nu_cl(n), P)
    other = next(k for k in keys
                 if k != dat.key
                 and checker.check_pair(ctx, dat.key, k).reachable > 1)
    full = checker.check_pair(ctx, dat.key, other)
    assert full.status == ELIMINATED
    verdict = checker.check_pair(ctx, dat.key, other, budget=1)
    assert verdict.status == INCONCLUSIVE
    assert verdict.reachable == 1


def test_check_conjecture_n2():
    report = checker.check_conjecture(2, seed=geom.DEFAULT_SEED, p=P)
    assert report["pairs_total"] == 8
    assert report["eliminated"] == 8
    assert report["survivors"] == [] and report["inconclusive"] == 0


def test_check_conjecture_n1_vacuous():
    report = checker.check_conjecture(1, seed=geom.DEFAULT_SEED, p=P)
    assert report["pairs_total"] == 0
    assert report["survivors"] == []


def _equal_weight_pairs(ctx, dims_list):
    pairs = []
    for dims in dims_list:
        keys = geom.enumerate_orbits(ctx.graph, ctx.omega0, dims, P)
        pairs.extend(
            (a, b) for idx, a in enumerate(keys) for b in keys[idx + 1:]
        )
    return pairs


def test_verdicts_independent_of_exploration_order():
    # the reachable closure is a set, so BFS and DFS agree on the verdict;
    # on survivors they visit the identical closure
    g = quiver.type_a(3)
    ctx = geom.GeomContext(g, p=P, seed=geom.DEFAULT_SEED)
    pool = _equal_weight_pairs(
        ctx, [(1, 1, 0), (1, 1, 1), (2, 1, 1), (1, 2, 1), (2, 2, 1), (1, 2, 2)]
    )
    rng = np.random.default_rng(41)
    picks = rng.choice(len(pool), size=50, replace=len(pool) < 50)
    for idx in picks:
        a, b = pool[int(idx)]
        bfs = checker.check_pair(ctx, a, b)
        dfs = checker.check_pair(ctx, a, b, _order="dfs")
        assert bfs.status == dfs.status
        if bfs.status == SURVIVES:
            assert bfs.reachable == dfs.reachable


def test_moves_preserve_equal_weight():
    g = quiver.type_a(3)
    ctx = geom.GeomContext(g, p=P, seed=geom.DEFAULT_SEED)
    keys = geom.enumerate_orbits(g, ctx.omega0, (1, 2, 1), P)
    applied = 0
    for a, b in itertools.combinations(keys, 2):
        root = checker.ReductionState(ctx.omega0.bitmask(), a, b)
        for i in g.vertices:
            eb = geom.component_eps(ctx, root.b, i)
            if eb != geom.component_eps(ctx, root.b2, i):
                continue
            child = (checker.crt1_reduce(ctx, root, i) if eb
                     else checker.crt2_reduce(ctx, root, i))
            assert child.b.dims == child.b2.dims
            applied += 1
    assert applied > 0


def test_star_moves_flag():
    # the star-side criteria are sound, so the distinguished A_5 pair must
    # still survive when they are switched on
    g = quiver.type_a(5)
    ctx = geom.GeomContext(g, p=P, seed=geom.DEFAULT_SEED)
    key_b = geom.apply_word(ctx, parse_word(A5_WORD_B))
    key_bp = geom.apply_word(ctx, parse_word(A5_WORD_BP))
    plain = checker.check_pair(ctx, key_b, key_bp)
    starred = checker.check_pair(ctx, key_b, key_bp, star_moves=True)
    assert plain.status == SURVIVES
    assert starred.status == SURVIVES
    assert starred.reachable >= plain.reachable


# -- A_5 slice ----------------------------------------------------------------


def test_a5_printed_reps_rank_table():
    # hand-computed path ranks of the printed representative B_0
    rep = checker.a5_printed_rep("b", P)
    table = quiver.path_rank_table(rep, quiver.omega0(rep.graph))
    want = {(1, 2): 2, (1, 3): 1, (1, 4): 1, (1, 5): 0,
            (2, 3): 3, (2, 4): 2, (2, 5): 1,
            (3, 4): 3, (3, 5): 1, (4, 5): 2}
    for k, v in want.items():
        assert table[k] == v, k
    # and B'_0 differs from B_0 as an orbit
    repp = checker.a5_printed_rep("bp", P)
    tablep = quiver.path_rank_table(repp, quiver.omega0(rep.graph))
    assert tablep != table


def test_a5_words_hit_printed_orbits():
    g = quiver.type_a(5)
    ctx = geom.GeomContext(g, p=P, seed=geom.DEFAULT_SEED)
    om = ctx.omega0
    for word, which in ((A5_WORD_B, "b"), (A5_WORD_BP, "bp")):
        key = geom.apply_word(ctx, parse_word(word))
        assert key.dims == A5_DIMS
        rep = checker.a5_printed_rep(which, P)
        assert key.table == quiver.path_rank_table(rep, om)


def test_a5_quadruple_slice_roundtrip():
    rng = np.random.default_rng(3)
    _, quad = checker._a5_quadruple_sample(rng, P)
    # rank one and cyclically vanishing products
    for k in range(4):
        assert modp.rank(quad[k], P) == 1
        assert (modp.matmul(quad[(k + 1) % 4], quad[k], P) == 0).all()
    y1 = rng.integers(0, P, size=(2, 2), dtype=np.int64)
    rep = checker._a5_slice_point(quad, y1, P)
    back = checker._a5_quadruple_of_slice(rep, P)
    for k in range(4):
        assert (back[k] == quad[k]).all()


def test_a5_slice_point_lands_in_printed_orbit():
    g = quiver.type_a(5)
    om = quiver.omega0(g)
    want = quiver.path_rank_table(checker.a5_printed_rep("b", P), om)
    rng = np.random.default_rng(9)
    for _ in range(5):
        _, quad = checker._a5_quadruple_sample(rng, P)
        y1 = rng.integers(0, P, size=(2, 2), dtype=np.int64)
        rep = checker._a5_slice_point(quad, y1, P)
        assert quiver.path_rank_table(rep, om) == want


def test_a5_polar_vanishes_on_tangent_complement():
    rng = np.random.default_rng(27)
    for _ in range(10):
        f_val, tangent_rank = checker._a5_polar_sample(rng, P)
        assert f_val == 0
        assert tangent_rank == 8


def test_cof2_involution():
    m = np.array([[3, 7], [2, 9]], dtype=np.int64)
    cof = checker._cof2(m, P)
    assert (checker._cof2(cof, P) == m).all()
    det = (3 * 9 - 7 * 2) % P
    assert (modp.matmul(m, cof, P) == det * np.eye(2, dtype=np.int64) % P).all()
