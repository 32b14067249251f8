import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oncolor.algorithms import (
    BO,
    AlgorithmA,
    Bnd,
    FirstFit,
    _AInstance,
    a_step,
    bnd_palette,
    bo_classes,
    bo_width,
    ff_step,
    make_colorer,
    offline_bipartite_finish,
    offline_classes,
    phase_sizes,
)
from oncolor.engine import OnlineInstance, PrefixView, replay
from oncolor.generators import GenSpec, OrderSpec, complete, cycle, generate, order
from oncolor.graph import Graph, is_proper
from oncolor.verify import bound_bo, bound_offline, check_trace


def run(g, alg, seed=None, **params):
    perm = list(range(g.n))
    if seed is not None:
        random.Random(seed).shuffle(perm)
    return replay(OnlineInstance(g, tuple(perm)), alg, **params)


def view_of(n, edges, revealed):
    g = Graph.from_edges(n, edges)
    view = PrefixView()
    for v in revealed:
        view.reveal(v, [u for u in g.adj[v] if u in view])
    return view


# -- palette arithmetic --------------------------------------------------------------

@pytest.mark.parametrize("n,d,k1", [(5, 1, 3), (16, 1, 4), (17, 1, 5), (64, 2, 8), (125, 2, 10),
                                    (16, 3, 6), (1, 4, 4), (1000, 3, 17)])
def test_bnd_palette_examples(n, d, k1):
    assert bnd_palette(n, d) == k1


@given(st.integers(1, 10**6), st.integers(1, 6))
def test_bnd_palette_is_exact_ceiling(n, d):
    k = bnd_palette(n, d)
    assert k ** (d + 1) >= d ** (d + 1) * n > (k - 1) ** (d + 1)


def test_bo_sizes():
    assert [bo_width(d) for d in (2, 3, 4, 8)] == [2, 4, 4, 6]
    assert bo_classes(32, 2) == 4
    assert bo_classes(33, 2) == 5
    assert bo_classes(512, 4) == 8
    assert offline_classes(1024, 8) == 8
    for n in range(1, 300):
        r = bo_classes(n, 4)
        assert r * r * 8 >= n > (r - 1) * (r - 1) * 8 or r == 1


# -- First Fit ----------------------------------------------------------------------

def test_ff_step_examples():
    view = view_of(4, [(3, 0), (3, 1), (3, 2)], [0, 1, 2, 3])
    assert ff_step(view_of(1, [], [0]), 0, {}) == 1
    assert ff_step(view, 3, {0: 1, 1: 2, 2: 2}) == 3
    assert ff_step(view, 3, {0: 2, 1: 3, 2: 3}) == 1


def test_ff_clique():
    t = run(complete(6), "ff", seed=3)
    assert t.colors_used == 6


# -- Algorithm A --------------------------------------------------------------------

def test_a_single_edge():
    t = run(Graph.from_edges(2, [(0, 1)]), "a")
    assert t.colors == [1, 2]


def test_a_merge_five_vertices():
    # a-b and c-d colored independently, then e joins them
    g = Graph.from_edges(5, [(0, 1), (2, 3), (4, 1), (4, 2)])
    assert run(g, "a").colors == [1, 2, 1, 2, 3]   # far side {b, c} holds {2, 1}
    g = Graph.from_edges(5, [(0, 1), (2, 3), (4, 0), (4, 2)])
    assert run(g, "a").colors == [1, 2, 1, 2, 2]   # far side {a, c} holds {1}


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 40), st.floats(0.05, 0.5), st.integers(0, 10**6))
def test_incremental_a_matches_reference(n, p, seed):
    g = generate(GenSpec("random-bipartite", n, seed, p=p))
    perm = order(g, OrderSpec("random", seed=seed))
    t = replay(OnlineInstance(g, perm), "a")
    view, ref = PrefixView(), {}
    for v in perm:
        view.reveal(v, [u for u in g.adj[v] if u in view])
        ref[v] = a_step(view, v, ref)
    assert [ref[v] for v in perm] == [s.color for s in t.steps]


@pytest.mark.parametrize("k", [3, 4, 5, 6, 7, 8])
def test_a_log_bound_stress(k):
    n = 2 ** k
    for seed in range(20):
        g = generate(GenSpec("random-bipartite", n, seed, p=min(1.0, 3 / n)))
        assert run(g, "a", seed=seed).colors_used <= 2 * k


def test_a_instance_rejects_odd_cycle():
    inst = _AInstance()
    inst.commit(0, [], 1)
    inst.commit(1, [0], 2)
    assert inst.propose([0, 1]) is None
    assert inst.propose([1]) == 1


def test_a_colorer_ceiling():
    assert AlgorithmA(10).ceiling() == 10 and FirstFit(0).ceiling() == 1


# -- B_{n,d} ------------------------------------------------------------------------

def test_bnd_c5_cycle_order():
    t = run(cycle(5), "bnd", d=1)
    assert {s.rule for s in t.steps} == {"step1"}
    assert t.colors_used <= 3


def test_bnd_step2_and_step3_rules():
    # K1 = 1: x takes color 1, z opens class 2 with W = {x}, v sits next to x
    g = Graph.from_edges(3, [(0, 1), (0, 2)])
    t = replay(OnlineInstance(g, (0, 1, 2)), "bnd", d=1, k1=1)
    assert [(s.color, s.rule) for s in t.steps] == [(1, "step1"), (2, "step3"), (2, "step2")]
    assert t.steps[1].info == {"W": [0]}


def test_bnd_step2_least_class():
    alg = Bnd(1, 2, k1=1)
    g = Graph.from_edges(6, [(0, 1), (2, 3), (5, 4), (5, 0), (5, 2)])
    view = PrefixView()
    colors = []
    for v in range(6):
        view.reveal(v, [u for u in g.adj[v] if u in view])
        colors.append(alg.step(view, v).color)
    # classes 2 (W={0}) and 3 (W={2}); vertex 5 touches both witness sets
    assert colors[1] == 2 and colors[3] == 3
    assert alg.W[0] == {0} and alg.W[1] == {2}
    assert colors[5] == 2


@pytest.mark.parametrize("seed", range(10))
def test_bnd_girth9_bound(seed):
    g = generate(GenSpec("random-girth-constrained", 150, seed, g_min=9, m=170))
    t = run(g, "bnd", seed=seed, d=2)
    assert is_proper(g, t.colors)[0]
    assert t.colors_used < 3 * g.n ** (1 / 3) + 3


@pytest.mark.parametrize("seed", range(10))
def test_bnd_d1_small_palette_stays_proper(seed):
    # at radius 1 two same-class neighbours close a cycle of length <= 5, whatever K1 is
    g = generate(GenSpec("random-girth-constrained", 120, seed, g_min=6, m=140))
    t = run(g, "bnd", seed=seed, d=1, k1=2)
    assert any(s.rule == "step2" for s in t.steps)
    rep = check_trace(t)
    assert rep.ok, rep.table()


def test_bnd_step2_conflict_on_c5():
    # girth exactly 5 is not enough at d = 1: x' and y' both feed z's witness set,
    # then x and y each sit next to a witness
    t = replay(OnlineInstance(cycle(5), (1, 4, 0, 2, 3)), "bnd", d=1, k1=1)
    assert t.colors == [2, 1, 2, 2, 1]
    assert is_proper(cycle(5), t.colors) == (False, (2, 3))


def test_bnd_step2_conflict_on_a_tree():
    # a-z, a-c, c-x, x-b with K1 = 1 and d = 2: c and x both reach a within two
    # steps along a tree path, so step 2 gives both the class color
    g = Graph.from_edges(5, [(0, 1), (0, 2), (2, 4), (4, 3)])
    t = replay(OnlineInstance(g, (0, 1, 2, 3, 4)), "bnd", d=2, k1=1)
    assert t.colors == [1, 2, 2, 1, 2]
    assert is_proper(g, t.colors) == (False, (2, 4))
    robust = replay(OnlineInstance(g, (0, 1, 2, 3, 4)), "bnd", d=2, k1=1, robust=True)
    assert is_proper(g, robust.colors)[0] and robust.steps[-1].rule == "overflow"


def test_bnd_rejects_bad_params():
    with pytest.raises(ValueError):
        make_colorer("bnd", 10)
    with pytest.raises(ValueError):
        Bnd(10, 0)
    with pytest.raises(ValueError):
        Bnd(10, 1, k1=0)


# -- BO_{n,d} -------------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(5))
def test_bo_bipartite_stays_in_first_class(seed):
    g = generate(GenSpec("random-bipartite", 256, seed, p=0.03))
    d = 256
    t = run(g, "bo", seed=seed, d=d)
    assert all(s.rule == "step1" and s.info["H"] == 1 for s in t.steps)
    assert t.colors_used <= bo_width(d)


def test_bo_c5_moves_to_second_class():
    t = run(cycle(5), "bo", d=2)
    assert [s.info.get("H") for s in t.steps] == [1, 1, 1, 1, 2]
    assert t.steps[4].color == 3


def test_bo_c5_opens_witness_class():
    t = run(cycle(5), "bo", d=2, r=1)
    last = t.steps[4]
    assert last.rule == "step3" and last.color == 3 and last.info["W"] == [0, 3]


def test_bo_requires_d_at_least_two():
    with pytest.raises(ValueError):
        BO(10, 1)


@pytest.mark.parametrize("seed", range(4))
def test_bo_subdivided_bound(seed):
    g = generate(GenSpec("subdivision", core="gnm:16:32", t=17, seed=seed))
    d = 4
    t = run(g, "bo", seed=seed, d=d)
    assert is_proper(g, t.colors)[0]
    assert t.colors_used <= bound_bo(g.n, d) + 2 * bo_width(d) + 2


@pytest.mark.parametrize("seed", range(6))
def test_bo_incremental_a_matches_scratch_replay(seed):
    g = generate(GenSpec("subdivision", core="gnm:12:30", t=9, seed=seed))
    d = 2
    perm = order(g, OrderSpec("random", seed=seed))
    t = replay(OnlineInstance(g, perm), "bo", d=d, r=2)
    block = bo_width(d)
    pos = {v: i for i, v in enumerate(perm)}
    classes = {}
    for s in t.steps:
        if s.rule == "step1":
            classes.setdefault(s.info["H"], []).append(s)
    for i, recs in classes.items():
        members = {s.v for s in recs}
        ref = {}
        for s in recs:
            # replay A from scratch on the class prefix, in reveal order
            sub = {u for u in members if pos[u] <= pos[s.v]}
            ref[s.v] = a_step(g, s.v, ref, sub)
            assert s.color == (i - 1) * block + ref[s.v]


# -- offline finish -----------------------------------------------------------------------

def test_offline_bipartite_two_colors():
    g = generate(GenSpec("random-bipartite", 60, 1, p=0.1))
    t = run(g, "bo-offline", seed=1, d=2)
    fin = offline_bipartite_finish(t)
    assert is_proper(g, fin)[0] and max(fin) <= 2


def test_offline_c9():
    d = 2
    g = cycle(4 * d + 1)
    t = run(g, "bo-offline", d=d)
    fin = offline_bipartite_finish(t)
    r = offline_classes(g.n, d)
    assert is_proper(g, fin)[0]
    assert max(fin) <= 2 * r + g.n / (r * d) + 2


@pytest.mark.parametrize("seed", range(3))
def test_offline_subdivided_d8(seed):
    d = 8
    g = generate(GenSpec("subdivision", core="gnm:24:42", t=33, seed=seed))
    assert 900 <= g.n <= 1400
    t = run(g, "bo-offline", seed=seed, d=d)
    fin = offline_bipartite_finish(t)
    assert is_proper(g, fin)[0]
    assert max(fin) <= bound_offline(g.n, d) + 4


def test_offline_finish_needs_offline_trace():
    with pytest.raises(ValueError):
        offline_bipartite_finish(run(cycle(5), "bo", d=2))


# -- wrappers ---------------------------------------------------------------------------

def test_phase_sizes_sqrt():
    sizes = phase_sizes(lambda n: 2 * math.sqrt(n))
    assert [next(sizes) for _ in range(6)] == [1, 4, 16, 64, 256, 1024]


def test_phase_sizes_linear():
    sizes = phase_sizes(float)
    assert [next(sizes) for _ in range(5)] == [1, 2, 4, 8, 16]


def test_unknown_n_ff_on_clique():
    g = complete(12)
    t = run(g, "ff", unknown_n=True)
    assert is_proper(g, t.colors)[0]
    assert [s.info["phase"] for s in t.steps] == [1, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 4]


@pytest.mark.parametrize("seed", range(8))
def test_unknown_n_bn_within_four_f(seed):
    g = generate(GenSpec("random-girth-constrained", 200, seed, g_min=5, m=260))
    t = run(g, "bnd", seed=seed, d=1, unknown_n=True)
    assert is_proper(g, t.colors)[0]
    assert t.colors_used <= 4 * 2 * math.sqrt(g.n)


def test_robust_triangle():
    t = run(cycle(3), "bnd-robust", d=2)
    assert is_proper(cycle(3), t.colors)[0]


@pytest.mark.parametrize("alg,params", [("bnd", {"d": 2}), ("bo", {"d": 2}), ("bnd", {"d": 1, "k1": 2})])
def test_robust_identical_on_conforming(alg, params):
    g = generate(GenSpec("subdivision", core="gnm:15:30", t=9, seed=3))
    plain = run(g, alg, seed=3, **params)
    robust = run(g, alg, seed=3, robust=True, **params)
    assert [s.to_dict() for s in plain.steps] == [s.to_dict() for s in robust.steps]


@pytest.mark.parametrize("seed", range(8))
def test_robust_gnp_proper_with_overflow(seed):
    g = generate(GenSpec("gnp", 80, seed, p=0.15))
    t = run(g, "bnd", seed=seed, d=3, robust=True, k1=2)
    assert is_proper(g, t.colors)[0]
    over = [s for s in t.steps if s.rule == "overflow"]
    assert over, "dense random graphs should force overflow with a tiny palette"
    ceiling = make_colorer("bnd", g.n, d=3, k1=2).ceiling()
    assert all(s.color > ceiling for s in over)


@pytest.mark.parametrize("seed", range(5))
def test_robust_a_and_bo_on_odd_cycles(seed):
    g = generate(GenSpec("gnp", 50, seed, p=0.2))
    for alg, params in (("a", {}), ("bo", {"d": 3})):
        t = run(g, alg, seed=seed, robust=True, **params)
        assert is_proper(g, t.colors)[0]
