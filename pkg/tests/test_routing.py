import random
from fractions import Fraction

import pytest

import oracles
from hdline.errors import CapacityLimitError, InvalidCNFError, InvalidValueError, PathError
from hdline.ext import INF
from hdline.routing import cnf as cnfmod
from hdline.routing import graph as rg
from hdline.routing import reduction as red

THREE_CLAUSES = cnfmod.Cnf.from_ints([[-1, 2, 3], [4, 1, -2], [-1, 3, -5]])


def random_graph(rng, n, p):
    g = rg.CapGraph()
    labels = ["S", "D"] + [str(i) for i in range(n)]
    for u in labels:
        for v in labels:
            if u != v and u != "D" and v != "S" and rng.random() < p:
                g.add_edge(u, v, rng.choice([Fraction(rng.randint(1, 9), rng.randint(1, 3)), INF]))
    return g


def test_path_capacity():
    g = rg.CapGraph.line([2, 2, 3, 1])
    assert rg.path_hd_capacity(["S", "1", "2", "3", "D"], g) == Fraction(3, 4)
    z = Fraction(5)
    assert rg.path_hd_capacity(["S", "1", "D"], rg.CapGraph.line([z, z])) == z / 2
    assert rg.path_hd_capacity(["S", "D"], rg.CapGraph.line([7])) == 7
    with pytest.raises(PathError):
        rg.path_hd_capacity(["S", "2"], g)
    with pytest.raises(PathError):
        rg.path_hd_capacity(["S"], g)


def test_line_decision():
    g = rg.CapGraph.line([2, 2, 3, 1])
    assert rg.hd_path_decision(g, Fraction(3, 4))
    assert not rg.hd_path_decision(g, 1)


def test_graph_editing_and_json():
    g = rg.CapGraph()
    g.add_edge("S", "a", 1)
    g.add_edge("S", "a", 3)
    assert g.capacity("S", "a") == 3
    with pytest.raises(InvalidValueError):
        g.add_edge("a", "a", 1)
    with pytest.raises(InvalidValueError):
        g.add_edge("a", "D", 0)
    g.add_edge("a", "D", "inf")
    back = rg.CapGraph.from_json(g.to_json())
    assert back.edges() == g.edges()
    with pytest.raises(InvalidValueError):
        rg.CapGraph.from_json({"source": "S"})
    g.remove_vertex("a")
    assert g.n_edges == 0 and rg.best_hd_path(g) is None


def test_size_bound():
    g = rg.CapGraph.line([1] * 30)
    with pytest.raises(CapacityLimitError):
        rg.best_hd_path(g)
    assert rg.best_hd_path(g, max_vertices=None)[0] == Fraction(1, 2)


def test_best_path_matches_networkx():
    pytest.importorskip("networkx")
    rng = random.Random(2)
    for _ in range(60):
        g = random_graph(rng, rng.randint(0, 6), 0.4)
        found = rg.best_hd_path(g)
        want = oracles.best_path_capacity(g.edges())
        if want is None:
            assert found is None
            continue
        assert found[0] == want
        assert rg.path_hd_capacity(found[1], g) == want
        assert rg.hd_path_decision(g, want)
        if want != INF:
            assert not rg.hd_path_decision(g, want + Fraction(1, 1000))


def test_dimacs_round_trip():
    text = "c demo\np cnf 5 3\n-1 2 3 0\n4 1 -2 0\n-1 3 -5 0\n"
    f = cnfmod.parse_dimacs(text)
    assert f == THREE_CLAUSES
    assert cnfmod.parse_dimacs(f.to_dimacs()) == f


@pytest.mark.parametrize("text", ["1 2 0\n", "p cnf 2 1\n1 3 0\n", "p cnf 2 2\n1 0\n",
                                  "p cnf 2 1\n1 x 0\n", "p cnf 2 1\n0\n",
                                  "p cnf 4 1\n1 2 3 4 0\n"])
def test_dimacs_rejects(text):
    with pytest.raises(InvalidCNFError):
        cnfmod.parse_dimacs(text)


def test_cnf_truth_table_matches_oracle():
    rng = random.Random(4)
    for _ in range(100):
        f = cnfmod.random_cnf(rng, rng.randint(1, 5), rng.randint(1, 6))
        assert f.is_satisfiable() == oracles.satisfiable(f.to_ints(), f.num_vars)


def test_gadget_chain_three_clauses():
    g, forbidden = red.build_gadget_chain(THREE_CLAUSES)
    assert forbidden == [("v11", "v22"), ("v12", "v23"), ("v22", "v31")]
    assert g.successors("S") == ["t1"]
    assert g.successors("t2") == ["v21", "v22", "v23"]
    assert g.successors("r3") == ["D"]


def test_expansion_three_clauses():
    g, forbidden = red.build_gadget_chain(THREE_CLAUSES)
    g_star, f_star = red.expand_forbidden(g, forbidden)
    # v22 has two partners and becomes a two-copy chain
    assert g_star.successors("t2") == ["a_22_11", "a_23_12", "v21"]
    assert g_star.successors("b_22_11") == ["a_22_31"]
    assert g_star.successors("b_22_31") == ["r2"]
    flat = [v for pair in f_star for v in pair]
    assert len(flat) == len(set(flat))


def test_merge_capacities():
    art = red.reduce_3sat(THREE_CLAUSES, 2)
    g = art.g_b_bullet
    f = "f_11_22"
    assert sorted((u, g.capacity(u, f)) for u in g.predecessors(f)) == [
        ("a_11_22", 2), ("a_22_11", INF)]
    assert sorted((v, g.capacity(f, v)) for v in g.successors(f)) == [
        ("b_11_22", INF), ("b_22_11", 2)]
    assert rg.path_hd_capacity(["a_11_22", f, "b_22_11"], g) == 1
    assert g.n_vertices <= red.polynomial_bound(THREE_CLAUSES)
    assert set(art.to_json()) >= {"g_b", "g_b_star", "g_b_bullet"}
    with pytest.raises(InvalidValueError):
        red.reduce_3sat(THREE_CLAUSES, 0)


@pytest.mark.parametrize("clauses, sat", [
    ([[-1, 2, 3], [4, 1, -2], [-1, 3, -5]], True),
    ([[1], [-1]], False),
    ([[1, 2], [-1], [-2]], False),
    ([[1, 2], [-1, 2], [1, -2], [-1, -2]], False),
])
def test_verify_reduction_fixed(clauses, sat):
    rep = red.verify_reduction(cnfmod.Cnf.from_ints(clauses))
    assert rep.satisfiable is sat and rep.ok
    if sat:
        assert rep.assignment_ok and rep.path_capacity >= 1


def test_verify_reduction_random():
    rng = random.Random(9)
    for _ in range(40):
        f = cnfmod.random_cnf(rng, rng.randint(1, 4), rng.randint(1, 4), rng.randint(1, 3))
        rep = red.verify_reduction(f, Fraction(3))
        assert rep.ok and rep.satisfiable == oracles.satisfiable(f.to_ints(), f.num_vars)


def test_verify_reduction_limits():
    big = cnfmod.Cnf.from_ints([[1, 2, 3]] * 7)
    with pytest.raises(CapacityLimitError):
        red.verify_reduction(big)
