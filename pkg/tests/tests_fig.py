"""A small branching network shared by flow and acceptance tests."""

from fractions import Fraction

from planarflows.network import PlanarNetwork


def diamond_network():
    F = Fraction
    verts = {
        "s1": (F(0), F(0)), "s2": (F(2), F(0)), "s3": (F(4), F(0)),
        "v1": (F(3), F(2)), "c": (F(2), F(3)), "d": (F(4), F(3)),
        "v2": (F(3), F(4)),
        "t1": (F(0), F(6)), "t2": (F(3), F(6)), "t3": (F(6), F(6)),
    }
    edges = (
        ("s2", "v1"), ("s3", "v1"), ("v1", "c"), ("v1", "d"),
        ("c", "v2"), ("d", "v2"), ("v2", "t1"), ("v2", "t2"), ("s1", "t1"),
    )
    return PlanarNetwork(
        verts, edges, ("s1", "s2", "s3"), ("t1", "t2", "t3"), "vertex",
        {v: 1 for v in verts},
    )
