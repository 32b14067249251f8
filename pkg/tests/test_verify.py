import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from faults import FAULTS, bnd_base, bo_base, traced
from oncolor.algorithms import a_step
from oncolor.engine import OnlineInstance, replay
from oncolor.generators import GenSpec, complete, cycle, generate, petersen
from oncolor.graph import Graph, bfs_distances
from oncolor.verify import (
    bound_a,
    bound_bnd,
    bound_bo,
    bound_offline,
    check_trace,
    expand,
    oracle_chromatic,
    oracle_cycles,
    precondition,
    replay_a,
    wsize_bnd,
)


# -- bounds -----------------------------------------------------------------------------

@pytest.mark.parametrize("n,d,want", [(100, 1, 20.0), (16, 3, 8.0), (1, 1, 2.0), (1, 4, 5.0), (8, 2, 6.0)])
def test_bound_bnd_examples(n, d, want):
    assert bound_bnd(n, d) == pytest.approx(want)


@pytest.mark.parametrize("n,d,want", [(32, 2, 16.0), (2, 2, 4.0), (128, 4, 32.0)])
def test_bound_bo_examples(n, d, want):
    assert bound_bo(n, d) == pytest.approx(want)


@pytest.mark.parametrize("n,want", [(64, 12.0), (2, 2.0), (1, 1.0), (1024, 20.0)])
def test_bound_a_examples(n, want):
    assert bound_a(n) == pytest.approx(want)


def test_bound_offline_example():
    assert bound_offline(1024, 8) == pytest.approx(32.0)


def test_bound_domain_errors():
    with pytest.raises(ValueError):
        bound_bo(10, 1)
    with pytest.raises(ValueError):
        bound_bnd(0, 1)
    with pytest.raises(ValueError):
        bound_a(0)


def test_bounds_monotone():
    for d in range(1, 7):
        seq = [bound_bnd(n, d) for n in range(1, 3000, 7)]
        assert seq == sorted(seq)
    for d in (2, 4, 8, 16):
        seq = [bound_bo(n, d) for n in range(1, 3000, 7)]
        assert seq == sorted(seq)
    # for fixed n, a larger radius never costs more colors once n is large enough
    for n in (10**4, 10**6):
        seq = [bound_bnd(n, d) for d in range(1, 6)]
        assert seq == sorted(seq, reverse=True)
        seq = [bound_bo(n, d) for d in (4, 8, 16, 32)]
        assert seq == sorted(seq, reverse=True)


def test_wsize_bnd():
    assert wsize_bnd(3, 1) == 3
    assert wsize_bnd(4, 2) == 4 + 6
    assert wsize_bnd(5, 3) == 5 + 10 + 10


# -- oracles ------------------------------------------------------------------------------

def test_oracle_chromatic():
    assert oracle_chromatic(cycle(5)) == 3
    assert oracle_chromatic(cycle(6)) == 2
    assert oracle_chromatic(petersen()) == 3
    assert oracle_chromatic(complete(5)) == 5
    assert oracle_chromatic(generate(GenSpec("tree", 9, 4))) == 2
    assert oracle_chromatic(Graph.from_edges(3, [])) == 1


def test_oracle_cycles():
    assert oracle_cycles(cycle(6)) == (6, None)
    assert oracle_cycles(complete(4)) == (3, 3)
    assert oracle_cycles(generate(GenSpec("tree", 8, 1))) == (None, None)
    with pytest.raises(ValueError):
        oracle_cycles(cycle(20))


def test_precondition():
    assert precondition(cycle(9), "bnd", 2)[0]
    assert not precondition(cycle(8), "bnd", 2)[0]
    assert precondition(cycle(8), "bo", 2)[0]
    assert not precondition(cycle(7), "bo", 2)[0]
    assert not precondition(cycle(5), "a", None)[0]
    assert precondition(complete(5), "ff", None)[0]


# -- independent Algorithm A replay ----------------------------------------------------

@settings(max_examples=80, deadline=None)
@given(st.integers(2, 60), st.floats(0.02, 0.4), st.integers(0, 10**6), st.data())
def test_replay_a_matches_reference(n, p, seed, data):
    g = generate(GenSpec("random-bipartite", n, seed, p=p))
    members = sorted(data.draw(st.sets(st.integers(0, n - 1), min_size=1)))
    ordered = list(data.draw(st.permutations(members)))
    ref = {}
    for v in ordered:
        ref[v] = a_step(g, v, ref, set(ref))
    assert replay_a(g, ordered) == ref


def test_replay_a_marks_odd_cycle():
    got = replay_a(cycle(5), [0, 1, 2, 3, 4])
    assert got[3] == 2 and got[4] == float("inf")


# -- conforming runs ------------------------------------------------------------------------

@pytest.fixture(scope="module")
def bnd_trace():
    return bnd_base()


@pytest.mark.parametrize("alg,params,family", [
    ("a", {}, GenSpec("random-bipartite", 60, 2, p=0.08)),
    ("bnd", {"d": 2}, GenSpec("random-girth-constrained", 200, 3, g_min=9, m=230)),
    ("bo", {"d": 4}, GenSpec("subdivision", core="gnm:14:30", t=17, seed=3)),
    ("bo-offline", {"d": 4}, GenSpec("subdivision", core="gnm:14:30", t=17, seed=3)),
    ("bnd", {"d": 1, "unknown_n": True}, GenSpec("random-girth-constrained", 200, 3, g_min=5, m=230)),
])
def test_conforming_runs_pass_every_check(alg, params, family):
    g = generate(family)
    rep = check_trace(traced(g, alg, 5, **params))
    assert rep.ok, rep.table()
    assert rep["precondition"].passed and rep["proper"].passed
    assert all(c.passed is not None for c in rep.checks if not c.advisory)


def test_a_local_side_sizes_are_advisory():
    # vertex 38 gets color 3 with a single opposite-side vertex within distance 2;
    # the component-wide count still holds
    g = generate(GenSpec("random-bipartite", 40, 1, p=0.15))
    rep = check_trace(traced(g, "a", 1))
    assert rep.ok and rep["side_size"].passed
    local = rep["side_size_local"]
    assert local.status == "warn" and local.detail == "v=38 k=3 sides=[4, 1]"
    assert rep.warnings == ["side_size_local"]
    assert "warn" in rep.table()


def test_a_local_side_sizes_hold_on_paths():
    t = traced(generate(GenSpec("path", 32)), "a", 3)
    assert check_trace(t)["side_size_local"].passed


def test_non_conforming_reports_na():
    t = traced(cycle(5), "bnd", 0, d=2)
    rep = check_trace(t)
    assert rep["precondition"].passed is None
    assert rep.ok


def test_robust_reports_overflow():
    g = generate(GenSpec("gnp", 60, 2, p=0.2))
    rep = check_trace(traced(g, "bnd", 2, d=2, robust=True, k1=2))
    assert rep.ok and rep["proper"].passed
    assert rep["overflow"].measured > 0
    assert rep.alg == "bnd-robust"


# -- injected faults ----------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(FAULTS))
def test_injected_fault_is_caught(name):
    build, expected, exact = FAULTS[name]
    failed = build()
    if exact:
        assert failed == [expected]
    else:
        assert expected in failed


def test_clean_bases_pass():
    assert check_trace(bnd_base()).ok and check_trace(bo_base()).ok


# -- report formatting ----------------------------------------------------------------------

def test_report_json_and_table(bnd_trace):
    rep = check_trace(bnd_trace)
    data = json.loads(rep.to_json())
    assert data["ok"] is True and data["alg"] == "bnd"
    assert [c["name"] for c in data["checks"]] == [c.name for c in rep.checks]
    table = rep.table()
    assert table.splitlines()[0].split()[:3] == ["check", "status", "measured"]
    assert table.endswith("overall: PASS")
    with pytest.raises(KeyError):
        rep["nonexistent"]


def test_prefix_distances_ignore_later_vertices():
    # C6 revealed 0..5: at vertex 2's step, 5 is not yet visible so 0 is two steps away
    t = replay(OnlineInstance(cycle(6), tuple(range(6))), "ff")
    st = expand(t)
    assert st.prefix_distances(2, 5) == {1: 1, 0: 2}
    assert bfs_distances(cycle(6), 2, 5)[5] == 3
