"""Quiver construction, validation report, arrow pairs, topological order."""

import pytest

from nquiver.errors import CyclicQuiver, DanglingEndpoint, DuplicateId
from nquiver.quiver import Arrow, Quiver, arrow_pairs, topo_order, validate


def a2():
    return Quiver(["1", "2"], [("alpha", "1", "2")])


def star():
    return Quiver(
        ["1", "2", "3", "4"],
        [("b1", "1", "3"), ("b2", "2", "3"), ("b3", "4", "3")],
    )


class TestConstruction:
    def test_duplicate_vertex(self):
        with pytest.raises(DuplicateId):
            Quiver(["1", "1"])

    def test_duplicate_arrow(self):
        with pytest.raises(DuplicateId):
            Quiver(["1", "2"], [("a", "1", "2"), ("a", "2", "1")])

    def test_dangling(self):
        with pytest.raises(DanglingEndpoint):
            Quiver(["1"], [("a", "1", "2")])

    def test_parallel_arrows_ok(self):
        q = Quiver(["1", "2"], [("a", "1", "2"), ("b", "1", "2")])
        assert len(q.arrows) == 2

    def test_lookup(self):
        q = star()
        assert q.vertex_index("4") == 3
        assert q.arrow("b2") == Arrow("b2", "2", "3")
        assert q.has_vertex("1") and not q.has_vertex("9")

    def test_equality(self):
        assert a2() == a2()
        assert a2() != star()


class TestValidate:
    def test_single_vertex(self):
        assert validate(Quiver(["v"])) == validate(Quiver(["v"]))
        r = validate(Quiver(["v"]))
        assert r.finite and r.connected and r.acyclic

    def test_two_vertex_path(self):
        r = validate(a2())
        assert r.finite and r.connected and r.acyclic

    def test_two_cycle(self):
        q = Quiver(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])
        r = validate(q)
        assert r.connected and not r.acyclic

    def test_loop(self):
        q = Quiver(["1"], [("a", "1", "1")])
        assert not validate(q).acyclic

    def test_disconnected(self):
        q = Quiver(["1", "2"])
        r = validate(q)
        assert not r.connected and r.acyclic

    def test_empty(self):
        r = validate(Quiver([]))
        assert r.finite and r.connected and r.acyclic


class TestArrowPairs:
    def test_empty_side(self):
        assert arrow_pairs(Quiver(["1"]), a2()) == []

    def test_golden_counts(self):
        assert len(arrow_pairs(a2(), star())) == 3

    def test_order(self):
        q = Quiver(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])
        pairs = arrow_pairs(q, q)
        names = [(x.name, y.name) for x, y in pairs]
        assert names == [("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")]


class TestTopoOrder:
    def test_path(self):
        assert topo_order(a2()) == ["1", "2"]

    def test_star(self):
        assert topo_order(star()) == ["1", "2", "4", "3"]

    def test_single(self):
        assert topo_order(Quiver(["v"])) == ["v"]

    def test_cycle(self):
        q = Quiver(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])
        with pytest.raises(CyclicQuiver):
            topo_order(q)

    def test_declaration_tie_break(self):
        q = Quiver(["z", "a", "m"])
        assert topo_order(q) == ["z", "a", "m"]

    def test_arrows_go_forward(self):
        order = topo_order(star())
        pos = {v: i for i, v in enumerate(order)}
        for a in star().arrows:
            assert pos[a.source] < pos[a.target]
