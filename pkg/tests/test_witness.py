import pytest

from planarflows import INTEGERS
from planarflows.errors import NotPlanarMatching, PatternsBalanced
from planarflows.flows import enumerate_flows, fg_value
from planarflows.network import validate
from planarflows.patterns import (
    matching_from_parts,
    one_pattern,
    stock_pattern,
    two_pattern,
)
from planarflows.witness import (
    audit_witness,
    build_witness_network,
    demonstrate_violation,
    find_discriminating_matching,
)

from helpers import contexts_for, random_unbalanced_patterns


def test_find_discriminating_matching():
    a = one_pattern(3, 2, [{1, 3}])
    b = one_pattern(3, 2, [{1, 2}])
    matching, ca, cb = find_discriminating_matching(a, b)
    assert (ca, cb) == (1, 0)
    assert matching.lower_couples() == [(1, 2)]
    with pytest.raises(PatternsBalanced):
        find_discriminating_matching(*stock_pattern("p3"))


def test_dodgson_without_one_member():
    a0, b0 = stock_pattern("dodgson")
    b_smaller = two_pattern(2, 2, [({2}, {1})])  # drop the 12|12 member
    matching, ca, cb = find_discriminating_matching(a0, b_smaller)
    assert matching.verticals() == [(1, 1), (2, 2)]
    assert (ca, cb) == (1, 0)


def test_all_vertical_identity_matching():
    matching = matching_from_parts(vertical=[(1, 1), (2, 2), (3, 3)])
    wn = build_witness_network(set(), {1, 2, 3}, set(), {1, 2, 3}, matching)
    assert len(wn.network.edges) == 3
    assert all(cls == "v-edge" for cls in wn.edge_class.values())
    assert validate(wn.network)["ok"]


def test_drawn_seven_terminal_instance():
    matching = matching_from_parts(
        lower=[(1, 6), (2, 3), (4, 5)],
        upper=[(1, 2), (4, 7), (5, 6)],
        vertical=[(7, 3)],
    )
    Y = set(range(1, 8))
    wn = build_witness_network(set(), Y, set(), Y, matching)
    assert validate(wn.network)["ok"]
    # the long couple 16 subdivides into 5 interior vertices
    assert len(wn.couple_paths[((0, 1), (0, 6))]) == 7
    # one middle bridge per lower couple
    b_chains = {
        e[0]
        for e, cls in wn.edge_class.items()
        if cls == "b-edge" and e[0].startswith("L")
    }
    assert len(b_chains) == 3


def test_degree_law():
    matching = matching_from_parts(
        lower=[(1, 6), (2, 3), (4, 5)],
        upper=[(1, 2), (4, 7), (5, 6)],
        vertical=[(7, 3)],
    )
    Y = set(range(1, 8))
    wn = build_witness_network(set(), Y, set(), Y, matching)
    net = wn.network
    thick = {"lower-bridge", "upper-bridge", "b-edge"}
    incoming = {v: [] for v in net.vertices}
    outgoing = {v: [] for v in net.vertices}
    for e in net.edges:
        outgoing[e[0]].append(e)
        incoming[e[1]].append(e)
    terminals = set(net.sources) | set(net.sinks)
    for v in net.vertices:
        ins, outs = incoming[v], outgoing[v]
        if v in terminals:
            assert len(ins) + len(outs) == 1
            continue
        assert len(ins) + len(outs) == 3
        thick_in = [e for e in ins if wn.edge_class[e] in thick]
        thick_out = [e for e in outs if wn.edge_class[e] in thick]
        assert (len(ins), len(outs)) in ((2, 1), (1, 2))
        if len(ins) == 2:
            assert not thick_in and len(thick_out) == 1
        else:
            assert not thick_out and len(thick_in) == 1


def test_flag_counterexample_network():
    a = one_pattern(3, 2, [{1, 3}])
    b = one_pattern(3, 2, [{1, 2}])
    res = demonstrate_violation(a, b, set(), {1, 2, 3}, {1}, {2})
    assert (res["lhs"], res["rhs"]) == (1, 0)
    net = res["network"].network
    f = lambda I, Ip: fg_value(INTEGERS, net, I, Ip, size_cap=200)
    assert f([1, 3], [1, 2]) * f([2], [1]) == 1
    assert f([1, 2], [1, 2]) * f([3], [1]) == 0


def test_witness_with_shifted_ground_set():
    a = one_pattern(3, 2, [{1, 3}])
    b = one_pattern(3, 2, [{1, 2}])
    res = demonstrate_violation(a, b, {5}, {1, 2, 3}, {1, 3}, {2}, n=5, nprime=3)
    assert (res["lhs"], res["rhs"]) == (1, 0)
    assert res["network"].network.n_sources == 5
    aud = audit_witness(res["network"], {5}, {1, 2, 3}, {1, 3}, {2})
    assert aud["ok"]


def test_dodgson_minus_member_counts():
    a0, _ = stock_pattern("dodgson")
    b_smaller = two_pattern(2, 2, [({2}, {1})])
    res = demonstrate_violation(a0, b_smaller, set(), {1, 2}, set(), {1, 2})
    assert res["lhs"] - res["rhs"] == 1  # the dropped member's multiplicity
    assert audit_witness(res["network"], set(), {1, 2}, set(), {1, 2})["ok"]


def test_witness_audits_with_doubling():
    pairs = random_unbalanced_patterns(77, 12)
    from planarflows.patterns import _normalize_pattern

    for a, b in pairs:
        shape = _normalize_pattern(a)
        for X, Y, Xp, Yp in contexts_for(shape.m, shape.m_prime):
            res = demonstrate_violation(a, b, X, Y, Xp, Yp)
            assert res["lhs"] == res["count_a"]
            assert res["rhs"] == res["count_b"]
            assert res["lhs"] != res["rhs"]
            assert validate(res["network"].network)["ok"]
            assert audit_witness(res["network"], X, Y, Xp, Yp)["ok"]


def test_unit_weight_values_are_zero_or_one():
    # p = q = 2, so the two-sided form has an empty Y' and X' = {1, 2}
    a = one_pattern(4, 2, [{1, 3}])
    b = one_pattern(4, 2, [{1, 2}])
    res = demonstrate_violation(a, b, set(), {1, 2, 3, 4}, {1, 2}, set())
    net = res["network"].network
    from itertools import combinations

    for k in range(0, 3):
        for I in combinations(range(1, 5), k):
            for Ip in combinations(range(1, 3), k):
                count = len(enumerate_flows(net, I, Ip, size_cap=200))
                assert count in (0, 1)


def test_thin_components_are_couple_paths():
    matching = matching_from_parts(
        lower=[(1, 4), (2, 3)], upper=[(1, 2), (3, 4)]
    )
    wn = build_witness_network(set(), {1, 2, 3, 4}, set(), {1, 2, 3, 4}, matching)
    thin = {"thin", "v-edge", "extra"}
    seen = {}
    for e, cls in wn.edge_class.items():
        if cls in thin:
            seen.setdefault(e[0], set()).add(e)
            seen.setdefault(e[1], set()).add(e)
    for couple, path in wn.couple_paths.items():
        edges_on_path = set()
        for v in path:
            edges_on_path |= seen.get(v, set())
        for e in edges_on_path:
            assert e[0] in path and e[1] in path
    assert len(wn.processing_order) == len(wn.couple_paths)


def test_rejects_crossing_matching():
    bad = matching_from_parts(vertical=[(1, 2), (2, 1)])
    with pytest.raises(NotPlanarMatching):
        build_witness_network(set(), {1, 2}, set(), {1, 2}, bad)
    incomplete = matching_from_parts(vertical=[(1, 1)])
    with pytest.raises(NotPlanarMatching):
        build_witness_network(set(), {1, 2}, set(), {1, 2}, incomplete)
