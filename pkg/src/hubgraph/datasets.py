"""Bundled fixture graphs used by tests, demos, and the default service manifest."""

from __future__ import annotations

from .graph import AttributedGraph


def build_worked_example() -> AttributedGraph:
    """Small DAG with five hub vertices (vids 1..5) and three tag families.

    With hubs 1..5 (hub index = vid - 1) the tags come out as:
    A1 -> <0><1,2,3,4>, B1/B2 -> <0,1><2,3,4>, C1/C2/C3 -> <0,1,2><3,4>,
    and edge (C1, C3) carries <0,1,2><3,4> with cardinality 6.
    """
    vertices = [
        (1, 1, 10, "h1"), (2, 1, 20, "h2"), (3, 1, 30, "h3"),
        (4, 1, 40, "h4"), (5, 1, 50, "h5"),
        (6, 2, 7, "A1"),
        (7, 2, 11, "B1"), (8, 2, 13, "B2"),
        (9, 3, 2, "C1"), (10, 3, 3, "C2"), (11, 3, 5, "C3"),
    ]
    edges = [
        (1, 6, 1, 1), (6, 2, 1, 1),
        (2, 7, 1, 1), (2, 8, 1, 1),
        (7, 3, 2, 1), (8, 3, 2, 1),
        (3, 9, 2, 1), (3, 10, 2, 1),
        (9, 11, 3, 1), (10, 11, 3, 1),
        (11, 4, 3, 1), (11, 5, 3, 1),
    ]
    return AttributedGraph(vertices, edges)


_REL = {"friend": 1, "follows": 2, "relative": 3}

# undirected edges (u, v, label); stored as two directed rows each
_SOCIAL_EDGES = [
    (0, 2, "friend"),     # kristy - David
    (0, 4, "follows"),    # kristy - m1
    (0, 5, "follows"),    # kristy - m2
    (1, 2, "friend"),     # bingfish - David
    (1, 3, "friend"),     # bingfish - karlfun
    (1, 6, "follows"),    # bingfish - m3
    # David's circle
    (2, 7, "follows"), (2, 8, "friend"), (2, 9, "relative"), (2, 10, "follows"),
    (2, 11, "friend"), (2, 12, "follows"), (2, 13, "relative"), (2, 14, "follows"),
    (2, 15, "friend"),
    (2, 16, "follows"), (2, 17, "friend"), (2, 18, "follows"),
    (1, 16, "follows"), (1, 17, "follows"), (1, 18, "relative"),
    # karlfun's circle
    (3, 7, "follows"), (3, 8, "friend"), (3, 9, "follows"), (3, 10, "friend"),
    (3, 11, "follows"), (3, 12, "friend"), (3, 13, "follows"), (3, 14, "relative"),
    (3, 15, "follows"), (3, 16, "follows"), (3, 17, "friend"), (3, 18, "follows"),
    (4, 8, "follows"),    # m1 - m5
    (5, 9, "follows"),    # m2 - m6
    # periphery beyond the 4-hop neighborhood
    (4, 19, "follows"), (19, 20, "friend"), (20, 21, "follows"),
    (3, 22, "follows"), (22, 23, "friend"),
    (24, 25, "friend"), (25, 26, "follows"), (26, 27, "relative"),
    (17, 28, "follows"), (28, 29, "friend"),
]

_SOCIAL_NAMES = {0: "kristy", 1: "bingfish", 2: "David", 3: "karlfun"}


def build_social_sample() -> AttributedGraph:
    """A 30-user network sample where the 4-hop neighborhood between kristy
    and bingfish holds 19 users, David and karlfun are its two highest-degree
    members, and the shortest kristy->karlfun route is three friend edges."""
    vertices = []
    for vid in range(30):
        name = _SOCIAL_NAMES.get(vid, f"user{vid:02d}")
        vertices.append((vid, vid % 3, 10 + 3 * vid, name))
    edges = []
    for n, (u, v, label) in enumerate(_SOCIAL_EDGES):
        grp = _REL[label]
        mr = 1 + (7 * n) % 100  # deterministic contact frequency
        edges.append((u, v, grp, mr, label))
        edges.append((v, u, grp, mr, label))
    return AttributedGraph(vertices, edges)


def build_closeness_sample() -> AttributedGraph:
    """Fixture where seven vertices sit between u1 and u2 under plain
    reachability grouping but only u4 and u5 survive a 4-hop bound, and
    zooming into (u1, u2) finds its strongest tie between u4 and u5."""
    vertices = [
        (0, 0, 10, "u1"), (1, 0, 11, "u2"),
        (2, 1, 12, "u4"), (3, 1, 13, "u5"),
        (4, 2, 14, "w1"), (5, 2, 15, "w2"), (6, 2, 16, "w3"),
        (7, 2, 17, "w4"), (8, 2, 18, "w5"),
    ]
    edges = [
        (0, 2, 1, 5, "friend"), (2, 1, 1, 5, "friend"),
        (0, 3, 1, 5, "friend"), (3, 1, 1, 5, "friend"),
        (0, 4, 2, 1, "follows"), (4, 5, 2, 1, "follows"),
        (5, 6, 2, 1, "follows"), (6, 7, 2, 1, "follows"),
        (7, 8, 2, 1, "follows"), (8, 1, 2, 1, "follows"),
        # parallel friend edges make (u4, u5) the strongest pair
        (2, 3, 1, 9, "friend"), (2, 3, 1, 9, "friend"), (2, 3, 1, 9, "friend"),
    ]
    return AttributedGraph(vertices, edges)


def build_cycle_sample() -> AttributedGraph:
    """Fixture with a 2-cycle between hubs u1 and u2, so both condense into
    one super-vertex and their outgoing summary edges look identical."""
    vertices = [
        (0, 0, 10, "u1"), (1, 0, 11, "u2"),
        (2, 1, 7, "m1"), (3, 1, 9, "m2"), (4, 2, 20, "x"),
    ]
    edges = [
        (0, 1, 1, 2, "friend"), (1, 0, 1, 2, "friend"),
        (0, 2, 2, 3, "follows"), (2, 4, 2, 3, "follows"),
        (1, 3, 2, 4, "follows"), (3, 4, 2, 4, "follows"),
    ]
    return AttributedGraph(vertices, edges)


def write_social_sample(directory, delimiter: str = "\t") -> tuple:
    """Emit the sample as loader-format files; returns (vertex_path, edge_path)."""
    import os
    os.makedirs(directory, exist_ok=True)
    vp = os.path.join(directory, "vertices.tsv")
    ep = os.path.join(directory, "edges.tsv")
    build_social_sample().save(vp, ep, delimiter)
    return vp, ep
