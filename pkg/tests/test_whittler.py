import networkx as nx
import pytest

from ftwhittle.braids import BraidWord, make_torus_braid
from ftwhittle.homology import signed_counts
from ftwhittle.states import PLUS, UNIT, EnhancedState, KauffmanState, differential_components, enumerate_enhanced, gradings
from ftwhittle.whittler import (
    G1,
    CycleDetected,
    UnsupportedBraid,
    WhittleError,
    WhittleGraph,
    build_graph,
    detect_iso_at,
    find_cycle,
    scan,
    select_distinguished,
    topological_order,
    whittle,
)

RANGE = [(2, k) for k in range(1, 7)] + [(3, k) for k in range(1, 5)] + [(4, k) for k in range(1, 4)]


def E(n, k, bars, marks=""):
    return EnhancedState(KauffmanState(make_torus_braid(n, k), bars), marks)


def test_detect_examples():
    iso = detect_iso_at(E(2, 2, "10"), 1, 2)
    assert iso.kind == G1 and iso.target == E(2, 2, "11", "-") and iso.active == 2
    assert detect_iso_at(E(2, 2, "11", PLUS), 1, 2) is None
    assert detect_iso_at(E(3, 3, "110000"), 1, 3) is None


def test_detect_preconditions():
    with pytest.raises(WhittleError):
        detect_iso_at(E(3, 3, "101000"), 1, 4)  # window length
    with pytest.raises(WhittleError):
        detect_iso_at(E(3, 3, "001000"), 1, 3)  # init not barred
    with pytest.raises(WhittleError):
        detect_iso_at(E(3, 3, "110000"), 2, 3)  # window too short and generators differ


def test_selection_examples():
    isos = select_distinguished(make_torus_braid(2, 2))
    assert [(i.source, i.target) for i in isos] == [(E(2, 2, "10"), E(2, 2, "11", "-"))]
    assert select_distinguished(make_torus_braid(2, 1)) == []


def test_golden_ft23():
    wc = whittle(make_torus_braid(2, 3))
    got = [(i.kind, i.source.bars, i.source.marks, i.target.bars, i.target.marks, i.init, i.fin) for i in wc.cancelled]
    assert got == [
        ("G1", "010", "", "011", "-", 2, 3),
        ("G1", "100", "", "110", "-", 1, 2),
        ("G1", "101", "+", "111", "-+", 1, 2),
        ("G1", "101", "-", "111", "--", 1, 2),
        ("G1", "110", "+", "111", "+-", 2, 3),
    ]
    assert {h: [str(e) for e in v] for h, v in wc.survivors.items()} == {
        0: ["(000, ø)"], 1: ["(001, ø)"], 2: ["(011, +)"], 3: ["(111, ++)"]}


def test_whittle_ft22_and_ft21():
    wc = whittle(make_torus_braid(2, 2))
    assert {h: [(e.bars, e.marks) for e in v] for h, v in wc.survivors.items()} == {
        0: [("00", "")], 1: [("01", "")], 2: [("11", "+")]}
    assert len(wc.cancelled) == 1 and wc.graph.edges == []
    wc = whittle(make_torus_braid(2, 1))
    assert wc.cancelled == [] and len(wc.all_survivors()) == 2


def test_non_torus_rejected():
    with pytest.raises(UnsupportedBraid):
        whittle(BraidWord(3, (2, 1)))


def test_toy_graphs():
    assert topological_order(WhittleGraph([None], [])) == [0]
    assert topological_order(WhittleGraph([None, None], [(0, 1, 1)])) == [0, 1]
    cyc = WhittleGraph([None, None], [(0, 1, 1), (1, 0, 1)])
    assert topological_order(cyc) is None
    assert find_cycle(cyc) == [0, 1, 0]
    assert topological_order(WhittleGraph([None] * 3, [(2, 0, 1), (1, 0, 1)])) == [1, 2, 0]


@pytest.mark.parametrize("n,k", RANGE)
def test_matching_and_graph_against_oracles(n, k, whittled):
    wc = whittled(n, k)
    isos = wc.graph.vertices
    ends = [e for i in isos for e in (i.source, i.target)]
    assert len(ends) == len(set(ends))
    for i in isos:
        assert gradings(i.target)[0] == gradings(i.source)[0] + 1
        assert gradings(i.target)[1] == gradings(i.source)[1]
        assert i.fin - i.init == n - 1
        assert any(c.target == i.target and c.coefficient == UNIT for c in differential_components(i.source))

    # edge oracle: test every ordered pair directly
    hits = [{c.target for c in differential_components(i.source)} for i in isos]
    pairs = {(u, v) for u in range(len(isos)) for v in range(len(isos)) if u != v and isos[v].target in hits[u]}
    assert {(u, v) for u, v, _ in wc.graph.edges} == pairs

    g = nx.DiGraph()
    g.add_nodes_from(range(len(isos)))
    g.add_edges_from(pairs)
    assert nx.is_directed_acyclic_graph(g)
    # the elimination order is a topological order of the oracle graph
    pos = {v: r for r, v in enumerate(wc.elimination_order)}
    assert all(pos[u] < pos[v] for u, v in pairs)


@pytest.mark.parametrize("n,k", RANGE)
def test_survivors_partition_and_euler(n, k, whittled):
    wc = whittled(n, k)
    every = list(enumerate_enhanced(make_torus_braid(n, k)))
    matched = {e for i in wc.cancelled for e in (i.source, i.target)}
    alive = wc.all_survivors()
    assert set(alive).isdisjoint(matched)
    assert len(alive) + len(matched) == len(every)
    assert signed_counts(every) == signed_counts(alive)


def test_graph_of_ft23_has_expected_edges():
    g = build_graph(select_distinguished(make_torus_braid(2, 3)))
    assert [(u, v) for u, v, _ in g.edges] == [(0, 1), (2, 4)]


def test_no_collisions_in_range(whittled):
    for n, k in RANGE:
        assert scan(make_torus_braid(n, k)).collisions == []


def test_cycle_detected_carries_witness():
    err = CycleDetected([3, 5, 3])
    assert err.cycle == [3, 5, 3] and "cycle" in str(err)
