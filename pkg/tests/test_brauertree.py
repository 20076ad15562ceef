import json
import shutil

import pytest

from pervlab.brauertree import (
    EXC,
    BrauerTree,
    FixtureError,
    TreeError,
    Vertex,
    available_fixtures,
    build_tree,
    canonical_pi,
    either_variants,
    fixture_rows,
    leaf_stripping,
    load_fixture,
    recompute_fixture,
    to_dot,
    tree_to_dict,
    verify_perverse_conditions,
)
from pervlab.unideg import block_characters


def line(pis):
    """exc -- v1 -- v2 -- ... with v1 nearest exc."""
    names = [f"v{i}" for i in range(1, len(pis) + 1)]
    verts = [Vertex(n, p) for n, p in zip(names, pis)]
    edges = [(EXC, names[0])] + list(zip(names, names[1:]))
    return BrauerTree.from_edges("line", verts, edges)


def star(pis):
    names = [f"s{i}" for i in range(len(pis))]
    return BrauerTree.from_edges("star", [Vertex(n, p) for n, p in zip(names, pis)], [(EXC, n) for n in names])


def test_canonical_pi_line_and_star():
    t = line([3, 2, 1, 0])
    pi0, off = canonical_pi(t)
    assert off == 0 and [pi0[f"v{i}"] for i in range(1, 5)] == [3, 2, 1, 0]
    s = star([1, 1, 1])
    pi0, off = canonical_pi(s)
    assert off == 1 and set(pi0.values()) == {1}
    assert canonical_pi(star([0, 0]), offset=0)[0] == {"s0": 0, "s1": 0}


def test_leaf_stripping_pairs_each_vertex_with_its_edge_toward_exc():
    t = line([3, 2, 1, 0])
    assert leaf_stripping(t) == [("v4", ("v4", "v3")), ("v3", ("v3", "v2")), ("v2", ("v2", "v1")), ("v1", ("v1", EXC))]


def test_conditions_accept_and_reject():
    assert verify_perverse_conditions(line([3, 2, 1, 0])).ok
    assert verify_perverse_conditions(line([5, 2, 1, 0])).ok
    # not increasing toward exc
    assert not verify_perverse_conditions(line([1, 2, 1, 0])).ok
    # odd offset from pi_0
    assert not verify_perverse_conditions(line([4, 2, 1, 0])).ok
    # a leaf below pi_0
    rep = verify_perverse_conditions(star([1, 1, -1]))
    assert not rep.ok


def test_not_a_tree():
    with pytest.raises(TreeError):
        BrauerTree.from_edges("bad", [Vertex("a"), Vertex("b")], [(EXC, "a"), ("a", "b"), ("b", EXC)])
    with pytest.raises(TreeError):
        BrauerTree.from_edges("bad", [Vertex("a")], [(EXC, "z")])


def test_2b2_8b():
    fx = load_fixture("2B2", "8b")
    (t,) = fx.trees
    assert sorted(t.pis.values()) == [0, 1, 1, 1]
    assert verify_perverse_conditions(t).ok
    assert recompute_fixture(fx).ok


def test_gu3_d6_tree():
    (b,) = block_characters("GU", 3, 6)
    t = build_tree(b)
    arms = sorted(len([v for v in t.characters if t.parents()[v] == n or v == n]) for n in t.adjacency[EXC])
    assert arms == [1, 2]
    assert t.pis == {"[1,1,1]": 1, "[3]": 0, "[2,1]": 1}
    assert verify_perverse_conditions(t).ok


def test_g2_d3_labels():
    (t,) = load_fixture("G2", 3).trees
    assert [p for _, p in sorted(t.pis.items(), key=lambda kv: list(t.vertices).index(kv[0]))] == [0, 3, 4, 4, 3, 3]
    dot = to_dot(t)
    assert dot.startswith('graph "G2 d=3 principal"')
    assert '"phi2,2 | 3 | 1"' in dot
    assert "fillcolor=black" in dot


def test_f4_d12_spurs():
    (t,) = load_fixture("F4", 12).trees
    spurs = [v for v in t.adjacency[EXC] if len(t.adjacency[v]) == 1]
    assert len(spurs) == 4 and all(t.pis[v] == 4 for v in spurs)


def test_unknown_groups():
    for g in ("E7", "E8"):
        with pytest.raises(FixtureError, match="tree unknown"):
            load_fixture(g, 7)
    with pytest.raises(FixtureError):
        load_fixture("G2", 5)


def test_every_fixture_loads_and_is_perverse():
    names = available_fixtures()
    assert len(names) >= 30
    for g, d in names:
        fx = load_fixture(g, d)
        assert recompute_fixture(fx).ok, (g, d)
        for t in fx.trees:
            assert all(verify_perverse_conditions(v).ok for v in either_variants(t)), t.name
        assert fixture_rows(fx)


def test_fixture_override(tmp_path, monkeypatch):
    src = load_fixture("G2", 3)
    from pervlab.brauertree import fixture_dir

    shutil.copy(str(fixture_dir() / "G2_d3.json"), tmp_path / "G2_d3.json")
    obj = json.loads((tmp_path / "G2_d3.json").read_text())
    obj["trees"][0]["vertices"][0]["pi"] = 7
    (tmp_path / "G2_d3.json").write_text(json.dumps(obj))
    monkeypatch.setenv("PERVLAB_FIXTURES", str(tmp_path))
    assert available_fixtures() == [("G2", "3")]
    fx = load_fixture("G2", 3)
    assert fx.trees[0].pis != src.trees[0].pis
    assert not verify_perverse_conditions(fx.trees[0]).ok


def test_tree_to_dict():
    (t,) = load_fixture("G2", 3).trees
    d = tree_to_dict(t)
    assert d["pi0_offset"] == 0 and len(d["edges"]) == 6
    json.dumps(d)


def test_either_variant_swaps_the_pair():
    for g, d in available_fixtures():
        for t in load_fixture(g, d).trees:
            vs = either_variants(t)
            if len(vs) == 2:
                a, b = vs
                assert sorted(a.characters) == sorted(b.characters)
                assert a.adjacency != b.adjacency
                return
    pytest.skip("no either-variant tree in the fixtures")
